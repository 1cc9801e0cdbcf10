#include <random>

#include "doctest.h"
#include "singclass/parametrization.hpp"
#include "test_support.hpp"

using namespace singclass;
using singclass::testing::random_elem;
using singclass::testing::random_series;
using singclass::testing::series_from;

namespace {

// Random left move with invertible linear part and terms up to degree 3.
LeftMove random_left(const Field& f, std::mt19937_64& rng) {
  while (true) {
    LeftMove m{BivarPoly(f), BivarPoly(f)};
    for (BivarPoly* p : {&m.X, &m.Y}) {
      for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
          if (a + b >= 1 && (a + b == 1 || rng() % 3 == 0)) p->add_term(a, b, random_elem(f, rng));
    }
    try {
      m.validate();
      return m;
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST_CASE("multiplicity") {
  const Field& q = Field::rationals();
  CHECK(multiplicity(Parametrization(Branch{series_from(q, {{2, 1}}, 10), series_from(q, {{3, 1}}, 10)})) == 2);
  CHECK(multiplicity(Parametrization(Branch{series_from(q, {{4, 1}}, 10), series_from(q, {{6, 1}, {7, 1}}, 10)})) == 4);
  Parametrization two(q, {Branch{series_from(q, {{3, 1}}, 10), series_from(q, {{1, 1}}, 10)},
                          Branch{series_from(q, {{5, 1}}, 10), series_from(q, {{1, 1}}, 10)}});
  CHECK(multiplicity(two) == 2);
}

TEST_CASE("constructor checks") {
  const Field& q = Field::rationals();
  try {
    Parametrization(Branch{series_from(q, {{0, 1}, {1, 1}}, 5), series_from(q, {{2, 1}}, 5)});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInMaximalIdeal);
  }
}

TEST_CASE("jets") {
  const Field& q = Field::rationals();
  Parametrization a(Branch{series_from(q, {{2, 1}}, 10), series_from(q, {{5, 1}}, 10)});
  Parametrization j = jet(a, {4});
  CHECK(j.branch(0).y.order() == std::nullopt);
  CHECK(j.truncation() == std::vector<int>{4});
  CHECK(jet(a, {10}).branch(0).x == a.branch(0).x);
  Parametrization b(Branch{series_from(q, {{3, 1}}, 10), series_from(q, {{4, 1}, {6, 1}}, 10)});
  CHECK(jet(b, {5}).branch(0).y == series_from(q, {{4, 1}}, 5));
  CHECK_THROWS_AS(jet(a, {11}), Error);
}

TEST_CASE("apply: swap and identity") {
  const Field& q = Field::rationals();
  Parametrization a(Branch{series_from(q, {{2, 1}}, 10), series_from(q, {{3, 1}}, 10)});
  Parametrization s = apply(a, RightMove::identity(q, 1, 10), LeftMove::swap(q));
  CHECK(s.branch(0).x == series_from(q, {{3, 1}}, 10));
  CHECK(s.branch(0).y == series_from(q, {{2, 1}}, 10));
  Parametrization i = apply(a, RightMove::identity(q, 1, 10), LeftMove::identity(q));
  CHECK(i.branch(0).x == a.branch(0).x);
  CHECK(i.branch(0).y == a.branch(0).y);
}

TEST_CASE("apply: first step of the W-sharp reduction, hand-expanded") {
  // phi(t) = t + c t^3 + c t^4, Phi = (x - 4 c y, y) on (t^4, t^6 + t^7 + b8 t^8 + b9 t^9).
  // Expanding (t + c t^3 + c t^4)^k: y gains 6c t^8 + (6c + 7c) t^9, while
  // x - 4cy cancels the 4c t^6 and 4c t^7 terms of x(phi).
  const Field& q = Field::rationals();
  const int N = 9;
  FieldElem b8 = q.from_int(2), b9 = q.from_int(5);
  FieldElem c = (b9 - b8) / q.from_int(7);
  TruncSeries x = series_from(q, {{4, 1}}, N);
  TruncSeries y = series_from(q, {{6, 1}, {7, 1}}, N).with_coeff(8, b8).with_coeff(9, b9);
  TruncSeries phi = series_from(q, {{1, 1}}, N).with_coeff(3, c).with_coeff(4, c);
  LeftMove left{BivarPoly::x(q) - (q.from_int(4) * c) * BivarPoly::y(q), BivarPoly::y(q)};
  Parametrization r = apply(Parametrization(Branch{x, y}), RightMove{{phi}}, left);
  const Branch& b = r.branch(0);
  CHECK(b.x.agrees_with(series_from(q, {{4, 1}}, 7)));
  CHECK(b.y[6] == q.one());
  CHECK(b.y[7] == q.one());
  CHECK(b.y[8] == b8 + q.from_int(6) * c);
  CHECK(b.y[9] == b9 + q.from_int(13) * c);
}

TEST_CASE("normal position examples") {
  const Field& q = Field::rationals();
  SUBCASE("equal orders") {
    NormalPosition np = normal_position(Branch{series_from(q, {{3, 1}, {4, 1}}, 20), series_from(q, {{3, 1}}, 20)});
    CHECK(np.m == 3);
    CHECK(np.n == 4);
    CHECK(np.branch.x.agrees_with(series_from(q, {{3, 1}}, 20)));
    CHECK(np.branch.y.order() == 4);
    CHECK(np.orientation == Orientation::XNormalized);
  }
  SUBCASE("subtract x^2") {
    NormalPosition np = normal_position(Branch{series_from(q, {{4, 1}}, 20), series_from(q, {{8, 1}, {9, 1}}, 20)});
    CHECK(np.m == 4);
    CHECK(np.n == 9);
    CHECK(np.branch.y.agrees_with(series_from(q, {{9, 1}}, 20)));
  }
  SUBCASE("characteristic 2 keeps the order-2 coordinate") {
    const Field& f2 = Field::prime(2);
    NormalPosition np = normal_position(Branch{series_from(f2, {{5, 1}}, 20), series_from(f2, {{2, 1}, {3, 1}}, 20)});
    CHECK(np.m == 2);
    CHECK(np.n == 5);
    CHECK(np.orientation == Orientation::YNormalized);
    CHECK(np.branch.x.agrees_with(series_from(f2, {{2, 1}, {3, 1}}, 20)));
    CHECK(np.branch.y.agrees_with(series_from(f2, {{5, 1}}, 20)));
  }
  SUBCASE("both orders divisible by p") {
    const Field& f2 = Field::prime(2);
    NormalPosition np = normal_position(Branch{series_from(f2, {{4, 1}}, 20), series_from(f2, {{6, 1}, {7, 1}}, 20)});
    CHECK(np.status == ErrorCode::BothOrdersDivisibleByP);
  }
  SUBCASE("not primitive") {
    try {
      normal_position(Branch{series_from(q, {{2, 1}}, 20), series_from(q, {{4, 1}}, 20)});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotPrimitive);
    }
  }
  SUBCASE("smooth") {
    NormalPosition np = normal_position(Branch{series_from(q, {{1, 2}, {2, 1}}, 20), series_from(q, {{2, 1}}, 20)});
    CHECK(np.m == 1);
    CHECK(np.branch.x.agrees_with(series_from(q, {{1, 1}}, 20)));
    CHECK(np.branch.y.order() == std::nullopt);
  }
}

TEST_CASE("property: normal position transcript replays") {
  std::mt19937_64 rng(17);
  for (const Field* f : singclass::testing::test_fields()) {
    for (int trial = 0; trial < 15; ++trial) {
      const int m = 2 + static_cast<int>(rng() % 3);
      Branch b{random_series(*f, rng, m, 12, 24), random_series(*f, rng, m + 1, 12, 24)};
      if (f->characteristic() && m % f->characteristic() == 0 && (m + 1) % f->characteristic() == 0) continue;
      b = apply(b, random_left(*f, rng));
      NormalPosition np = normal_position(b);
      Branch r = replay(jet(b, b.prec()), np.transcript);
      REQUIRE(r.x == np.branch.x);
      REQUIRE(r.y == np.branch.y);
      REQUIRE(np.m < np.n);
      REQUIRE(np.branch.x.order() == np.m);
      REQUIRE(np.branch.y.order() == np.n);
      if (np.orientation == Orientation::XNormalized) {
        REQUIRE(np.branch.x.agrees_with(TruncSeries::monomial(*f, np.m, f->one(), 24)));
      }
    }
  }
}

TEST_CASE("property: apply is a group action") {
  std::mt19937_64 rng(23);
  for (const Field* f : singclass::testing::test_fields()) {
    for (int trial = 0; trial < 20; ++trial) {
      const int N = 16;
      Branch b{random_series(*f, rng, 2, 8, N), random_series(*f, rng, 3, 8, N)};
      TruncSeries pg = random_series(*f, rng, 1, 6, N), ph = random_series(*f, rng, 1, 6, N);
      LeftMove lg = random_left(*f, rng), lh = random_left(*f, rng);
      Branch twice = apply(apply(b, pg, lg), ph, lh);
      Branch once = apply(b, series_compose(pg, ph), compose(lh, lg));
      REQUIRE(twice.x.agrees_with(once.x));
      REQUIRE(twice.y.agrees_with(once.y));
      REQUIRE(std::min(twice.prec(), once.prec()) >= 8);
    }
  }
}
