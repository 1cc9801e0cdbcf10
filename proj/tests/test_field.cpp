#include <random>

#include "doctest.h"
#include "singclass/field.hpp"
#include "test_support.hpp"

using namespace singclass;
using singclass::testing::random_elem;

TEST_CASE("prime fields reduce integers and rationals") {
  const Field& f5 = Field::prime(5);
  CHECK(f5.from_int(7) == f5.from_int(2));
  CHECK(f5.from_int(-1) == f5.from_int(4));
  CHECK(f5.from_rational(1, 2) * f5.from_int(2) == f5.one());
  CHECK(f5.characteristic() == 5);
  CHECK(f5.size() == 5);
  CHECK_THROWS_AS(Field::prime(6), Error);
}

TEST_CASE("coefficient not in field") {
  try {
    Field::prime(2).from_rational(1, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoefficientNotInField);
  }
}

TEST_CASE("rationals are canonical") {
  const Field& q = Field::rationals();
  CHECK(q.from_rational(2, 4) == q.from_rational(-1, -2));
  CHECK(q.characteristic() == 0);
  CHECK((q.from_rational(1, 3) + q.from_rational(1, 6)).to_string() == "1/2");
}

TEST_CASE("extension modulus is verified irreducible") {
  CHECK_NOTHROW(Field::extension(2, std::vector<std::uint32_t>{1, 1, 1}));
  try {
    Field::extension(2, std::vector<std::uint32_t>{1, 0, 1});  // (X+1)^2
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReducibleModulus);
  }
  const Field& f8 = Field::extension(2, 3);
  CHECK(f8.size() == 8);
  CHECK(f8.degree() == 3);
  // the generator has multiplicative order 7
  FieldElem a = f8.generator();
  CHECK(a.pow(7).is_one());
  CHECK(!a.is_one());
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(11);
  for (const Field* f : singclass::testing::test_fields()) {
    for (int i = 0; i < 500; ++i) {
      FieldElem a = random_elem(*f, rng), b = random_elem(*f, rng), c = random_elem(*f, rng);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE(a + b == b + a);
      REQUIRE(a - a == f->zero());
      if (!a.is_zero()) REQUIRE(a * a.inverse() == f->one());
    }
  }
}

TEST_CASE("degree-1 extension agrees with the prime field") {
  const Field& f7 = Field::prime(7);
  const Field& e7 = Field::extension(7, std::vector<std::uint32_t>{3, 1});  // X + 3
  for (int a = 0; a < 7; ++a) {
    for (int b = 1; b < 7; ++b) {
      CHECK((f7.from_int(a) * f7.from_int(b)).residue() == (e7.from_int(a) * e7.from_int(b)).residues()[0]);
      CHECK((f7.from_int(a) / f7.from_int(b)).residue() == (e7.from_int(a) / e7.from_int(b)).residues()[0]);
    }
  }
}

TEST_CASE("field_root") {
  const Field& f7 = Field::prime(7);
  const Field& f5 = Field::prime(5);
  CHECK(field_root(f7.one(), 5) == f7.one());
  CHECK(field_root(Field::rationals().one(), 5) == Field::rationals().one());
  // oracle: exhaustive search over the prime field
  auto search = [](const Field& f, long a, int m) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t r = 0; r < f.characteristic(); ++r) {
      if (f.from_int(r).pow(m) == f.from_int(a)) out.push_back(r);
    }
    return out;
  };
  auto r72 = search(f7, 2, 2);
  REQUIRE(r72 == std::vector<std::uint32_t>{3, 4});
  FieldElem r = field_root(f7.from_int(2), 2);
  CHECK(r.pow(2) == f7.from_int(2));
  auto r53 = search(f5, 2, 3);
  REQUIRE(r53 == std::vector<std::uint32_t>{3});
  CHECK(field_root(f5.from_int(2), 3) == f5.from_int(3));
}

TEST_CASE("field_root builds the minimal extension") {
  const Field& f3 = Field::prime(3);
  // -1 is not a square in F_3, it is in F_9
  FieldElem r = field_root(f3.from_int(-1), 2);
  CHECK(r.field().size() == 9);
  CHECK(r.pow(2) == embed(f3.from_int(-1), r.field()));
  CHECK(root_extension_degree(f3.from_int(2), 2, 12) == 2);
  // 2 is not a cube in F_7 (cubes: 0, 1, 6); a cube root lives in F_{7^3}
  CHECK(root_extension_degree(Field::prime(7).from_int(2), 3, 12) == 3);
}

TEST_CASE("rational roots") {
  const Field& q = Field::rationals();
  CHECK(field_root(q.from_rational(4, 9), 2) == q.from_rational(2, 3));
  CHECK(field_root(q.from_int(-8), 3) == q.from_int(-2));
  try {
    field_root(q.from_int(2), 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRationalRoot);
  }
  CHECK(all_roots_in_field(q.from_int(9), 2).size() == 2);
}

TEST_CASE("extension bound") {
  try {
    field_root(Field::prime(7).from_int(2), 3, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ExtensionBoundExceeded);
  }
}
