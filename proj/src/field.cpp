#include "singclass/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace singclass {

namespace {

using Poly = std::vector<std::uint32_t>;  // over F_p, low to high

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // a != 0 mod p, p prime
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    }
  }
  Poly out(acc.begin(), acc.end());
  trim(out);
  return out;
}

// remainder of a modulo g (g nonzero)
Poly poly_rem(Poly a, const Poly& g, std::uint32_t p) {
  trim(a);
  const std::size_t dg = g.size() - 1;
  const std::uint32_t lead_inv = inv_mod(g.back(), p);
  while (a.size() >= g.size()) {
    const std::uint64_t q = std::uint64_t(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - q * g[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_divrem(Poly a, const Poly& g, std::uint32_t p, Poly& rem) {
  trim(a);
  Poly q;
  if (a.size() >= g.size()) q.assign(a.size() - g.size() + 1, 0);
  const std::size_t dg = g.size() - 1;
  const std::uint32_t lead_inv = inv_mod(g.back(), p);
  while (a.size() >= g.size()) {
    const std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dg;
    q[shift] = static_cast<std::uint32_t>(c);
    for (std::size_t i = 0; i <= dg; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * g[i] % p) % p);
    }
    trim(a);
  }
  rem = a;
  trim(q);
  return q;
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& mod, std::uint32_t p) {
  Poly result{1};
  base = poly_rem(base, mod, p);
  while (e > 0) {
    if (e & 1) result = poly_rem(poly_mul(result, base, p), mod, p);
    base = poly_rem(poly_mul(base, base, p), mod, p);
    e >>= 1;
  }
  return result;
}

// Rabin's test.
bool poly_irreducible(const Poly& f, std::uint32_t p) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d <= 0) return false;
  if (d == 1) return true;
  std::vector<Poly> frob(d + 1);  // X^{p^i} mod f
  frob[0] = poly_rem(Poly{0, 1}, f, p);
  for (int i = 1; i <= d; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
  const Poly x = poly_rem(Poly{0, 1}, f, p);
  if (poly_sub(frob[d], x, p) != Poly{}) return false;
  for (int r = 2; r <= d; ++r) {
    if (d % r != 0 || !is_prime(r)) continue;
    Poly g = poly_gcd(f, poly_sub(frob[d / r], x, p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

std::uint64_t sat_pow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > UINT64_MAX / b) return UINT64_MAX;
    r *= b;
  }
  return r;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, Poly>, std::unique_ptr<Field>> by_modulus;
  std::map<std::pair<std::uint32_t, int>, const Field*> by_degree;
};

Registry& registry() {
  static Registry r;
  return r;
}

constexpr std::uint64_t kEnumerationLimit = std::uint64_t(1) << 22;

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(Kind kind, std::uint32_t p, std::vector<std::uint32_t> modulus)
    : kind_(kind), p_(p), degree_(1), size_(0), modulus_(std::move(modulus)) {
  if (kind_ != Kind::Rationals) {
    degree_ = static_cast<int>(modulus_.size()) - 1;
    size_ = sat_pow(p_, degree_);
  }
}

const Field& Field::rationals() {
  static const Field q(Kind::Rationals, 0, {});
  return q;
}

const Field& Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotAField, std::to_string(p) + " is not prime");
  return extension(p, Poly{0, 1});
}

const Field& Field::extension(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw Error(ErrorCode::NotAField, std::to_string(p) + " is not prime");
  for (auto& c : modulus) c %= p;
  trim(modulus);
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw Error(ErrorCode::InvalidArgument, "modulus must be monic of positive degree");
  }
  if (!poly_irreducible(modulus, p)) {
    throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over F_" + std::to_string(p));
  }
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  auto key = std::make_pair(p, modulus);
  auto it = reg.by_modulus.find(key);
  if (it != reg.by_modulus.end()) return *it->second;
  const Kind kind = modulus.size() == 2 ? Kind::Prime : Kind::Extension;
  auto field = std::unique_ptr<Field>(new Field(kind, p, modulus));
  const Field& ref = *field;
  reg.by_modulus.emplace(std::move(key), std::move(field));
  return ref;
}

const Field& Field::extension(std::uint32_t p, int degree) {
  if (!is_prime(p)) throw Error(ErrorCode::NotAField, std::to_string(p) + " is not prime");
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  if (degree == 1) return extension(p, Poly{0, 1});
  {
    auto& reg = registry();
    std::lock_guard lock(reg.mu);
    auto it = reg.by_degree.find({p, degree});
    if (it != reg.by_degree.end()) return *it->second;
  }
  // Brute-force search in lexicographic order of the lower coefficients.
  Poly f(degree + 1, 0);
  f[degree] = 1;
  while (true) {
    if (f[0] != 0 && poly_irreducible(f, p)) break;
    int i = 0;
    while (i < degree && ++f[i] == p) f[i++] = 0;
    if (i == degree) throw Error(ErrorCode::ReducibleModulus, "no irreducible polynomial found");
  }
  const Field& field = extension(p, f);
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  reg.by_degree.emplace(std::make_pair(p, degree), &field);
  return field;
}

const Field& Field::from_characteristic(std::uint32_t p, int degree) {
  if (p == 0) return rationals();
  return extension(p, degree);
}

FieldElem Field::zero() const { return from_int(0); }
FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(long long v) const {
  switch (kind_) {
    case Kind::Rationals: return FieldElem(this, mpq_class(static_cast<long>(v)));
    case Kind::Prime: {
      long long r = v % static_cast<long long>(p_);
      if (r < 0) r += p_;
      return FieldElem(this, static_cast<std::uint32_t>(r));
    }
    case Kind::Extension: {
      long long r = v % static_cast<long long>(p_);
      if (r < 0) r += p_;
      FieldElem::Ext e(degree_, 0);
      e[0] = static_cast<std::uint32_t>(r);
      return FieldElem(this, std::move(e));
    }
  }
  return {};
}

FieldElem Field::from_rational(const mpz_class& num, const mpz_class& den) const {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  if (kind_ == Kind::Rationals) {
    mpq_class q(num, den);
    q.canonicalize();
    return FieldElem(this, q);
  }
  mpz_class pm(p_);
  mpz_class n = num % pm, d = den % pm;
  if (n < 0) n += pm;
  if (d < 0) d += pm;
  if (d == 0) {
    throw Error(ErrorCode::CoefficientNotInField,
                num.get_str() + "/" + den.get_str() + " is not defined over " + name());
  }
  return from_int(n.get_si()) / from_int(d.get_si());
}

FieldElem Field::from_residues(std::vector<std::uint32_t> r) const {
  if (kind_ == Kind::Rationals) throw Error(ErrorCode::InvalidArgument, "residues over Q");
  r.resize(degree_, 0);
  for (auto& c : r) c %= p_;
  if (kind_ == Kind::Prime) return FieldElem(this, r[0]);
  return FieldElem(this, std::move(r));
}

FieldElem Field::generator() const {
  if (kind_ != Kind::Extension) throw Error(ErrorCode::InvalidArgument, "not an extension field");
  FieldElem::Ext e(degree_, 0);
  if (degree_ > 1) {
    e[1] = 1;
  }
  return FieldElem(this, std::move(e));
}

FieldElem Field::element_at(std::uint64_t index) const {
  if (kind_ == Kind::Rationals) return from_int(static_cast<long long>(index));
  std::vector<std::uint32_t> r(degree_, 0);
  for (int i = 0; i < degree_; ++i) {
    r[i] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return from_residues(std::move(r));
}

std::string Field::name() const {
  switch (kind_) {
    case Kind::Rationals: return "Q";
    case Kind::Prime: return "F_" + std::to_string(p_);
    case Kind::Extension: return "F_" + std::to_string(p_) + "^" + std::to_string(degree_);
  }
  return "?";
}

// --- FieldElem ------------------------------------------------------------

void FieldElem::check_same(const FieldElem& o) const {
  if (field_ != o.field_) {
    throw Error(ErrorCode::FieldMismatch, "operands live in different fields");
  }
}

bool FieldElem::is_zero() const {
  switch (field_->kind()) {
    case Field::Kind::Rationals: return std::get<mpq_class>(v_) == 0;
    case Field::Kind::Prime: return std::get<std::uint32_t>(v_) == 0;
    case Field::Kind::Extension: {
      const auto& e = std::get<Ext>(v_);
      return std::all_of(e.begin(), e.end(), [](std::uint32_t c) { return c == 0; });
    }
  }
  return false;
}

bool FieldElem::is_one() const { return *this == field_->one(); }

const mpq_class& FieldElem::rational() const { return std::get<mpq_class>(v_); }
std::uint32_t FieldElem::residue() const { return std::get<std::uint32_t>(v_); }

std::vector<std::uint32_t> FieldElem::residues() const {
  if (field_->kind() == Field::Kind::Prime) return {std::get<std::uint32_t>(v_)};
  return std::get<Ext>(v_);
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  const std::uint32_t p = field_->characteristic();
  switch (field_->kind()) {
    case Field::Kind::Rationals: std::get<mpq_class>(r.v_) = -std::get<mpq_class>(v_); break;
    case Field::Kind::Prime: {
      auto& c = std::get<std::uint32_t>(r.v_);
      c = c == 0 ? 0 : p - c;
      break;
    }
    case Field::Kind::Extension:
      for (auto& c : std::get<Ext>(r.v_)) c = c == 0 ? 0 : p - c;
      break;
  }
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  check_same(o);
  const std::uint32_t p = field_->characteristic();
  switch (field_->kind()) {
    case Field::Kind::Rationals: std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_); break;
    case Field::Kind::Prime: {
      auto& c = std::get<std::uint32_t>(v_);
      c = static_cast<std::uint32_t>((std::uint64_t(c) + std::get<std::uint32_t>(o.v_)) % p);
      break;
    }
    case Field::Kind::Extension: {
      auto& a = std::get<Ext>(v_);
      const auto& b = std::get<Ext>(o.v_);
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<std::uint32_t>((std::uint64_t(a[i]) + b[i]) % p);
      }
      break;
    }
  }
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) { return *this += -o; }

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  check_same(o);
  const std::uint32_t p = field_->characteristic();
  switch (field_->kind()) {
    case Field::Kind::Rationals: std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_); break;
    case Field::Kind::Prime: {
      auto& c = std::get<std::uint32_t>(v_);
      c = static_cast<std::uint32_t>(std::uint64_t(c) * std::get<std::uint32_t>(o.v_) % p);
      break;
    }
    case Field::Kind::Extension: {
      Poly prod = poly_mul(std::get<Ext>(v_), std::get<Ext>(o.v_), p);
      prod = poly_rem(std::move(prod), field_->modulus(), p);
      prod.resize(field_->degree(), 0);
      v_ = std::move(prod);
      break;
    }
  }
  return *this;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const std::uint32_t p = field_->characteristic();
  switch (field_->kind()) {
    case Field::Kind::Rationals: return FieldElem(field_, mpq_class(1) / std::get<mpq_class>(v_));
    case Field::Kind::Prime: return FieldElem(field_, inv_mod(std::get<std::uint32_t>(v_), p));
    case Field::Kind::Extension: {
      // Extended Euclid: s*a + t*m = g (a unit).
      Poly a = std::get<Ext>(v_);
      trim(a);
      Poly r0 = field_->modulus(), r1 = a;
      Poly s0{}, s1{1};
      while (!r1.empty()) {
        Poly rem;
        Poly q = poly_divrem(r0, r1, p, rem);
        Poly s2 = poly_sub(s0, poly_mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
      }
      // r0 is a nonzero constant
      const std::uint32_t c = inv_mod(r0[0], p);
      for (auto& x : s0) x = static_cast<std::uint32_t>(std::uint64_t(x) * c % p);
      s0 = poly_rem(s0, field_->modulus(), p);
      s0.resize(field_->degree(), 0);
      return FieldElem(field_, std::move(s0));
    }
  }
  return {};
}

FieldElem& FieldElem::operator/=(const FieldElem& o) { return *this *= o.inverse(); }

FieldElem FieldElem::pow(long long e) const {
  FieldElem base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  FieldElem result = field_->one();
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

FieldElem FieldElem::times(long long k) const { return *this * field_->from_int(k); }

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.field_ != b.field_) return false;
  return a.v_ == b.v_;
}

bool canonical_less(const FieldElem& a, const FieldElem& b) {
  a.check_same(b);
  if (a.field_->kind() == Field::Kind::Rationals) return a.rational() < b.rational();
  return a.residues() < b.residues();
}

std::string FieldElem::to_string() const {
  switch (field_->kind()) {
    case Field::Kind::Rationals: return std::get<mpq_class>(v_).get_str();
    case Field::Kind::Prime: return std::to_string(std::get<std::uint32_t>(v_));
    case Field::Kind::Extension: {
      const auto& e = std::get<Ext>(v_);
      std::ostringstream os;
      bool first = true;
      for (int i = static_cast<int>(e.size()) - 1; i >= 0; --i) {
        if (e[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || e[i] != 1) os << e[i];
        if (i > 0) os << (e[i] != 1 ? "*a" : "a");
        if (i > 1) os << "^" << i;
      }
      return first ? "0" : os.str();
    }
  }
  return "?";
}

// --- roots ---------------------------------------------------------------

int max_extension_degree() {
  if (const char* env = std::getenv("SINGCLASS_MAX_EXT")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 12;
}

namespace {

std::optional<mpz_class> exact_root(const mpz_class& n, int m) {
  if (n < 0) return std::nullopt;
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(m)) == 0) return std::nullopt;
  return r;
}

std::optional<FieldElem> rational_root(const FieldElem& a, int m) {
  const mpq_class& q = a.rational();
  const bool neg = q < 0;
  if (neg && m % 2 == 0) return std::nullopt;
  mpz_class num = q.get_num();
  if (neg) num = -num;
  auto rn = exact_root(num, m);
  auto rd = exact_root(q.get_den(), m);
  if (!rn || !rd) return std::nullopt;
  FieldElem r = a.field().from_rational(*rn, *rd);
  return neg ? -r : r;
}

// Frobenius-inverse and the coprime-exponent shortcut; nullopt means
// "undecided here", not "no root".
std::optional<FieldElem> finite_root_fast(const FieldElem& a, int m, bool& none) {
  none = false;
  const Field& f = a.field();
  const std::uint64_t q = f.size();
  const std::uint32_t p = f.characteristic();
  FieldElem b = a;
  int mm = m;
  while (mm % static_cast<int>(p) == 0) {
    // p-th root: a^{q/p}
    b = b.pow(static_cast<long long>(q / p));
    mm /= static_cast<int>(p);
  }
  if (mm == 1) return b;
  const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(mm), q - 1);
  if (!b.pow(static_cast<long long>((q - 1) / g)).is_one()) {
    none = true;
    return std::nullopt;
  }
  if (g == 1) {
    // inverse of mm modulo q-1
    mpz_class inv, mod(std::to_string(q - 1));
    mpz_invert(inv.get_mpz_t(), mpz_class(mm).get_mpz_t(), mod.get_mpz_t());
    return b.pow(std::stoll(inv.get_str()));
  }
  return std::nullopt;
}

}  // namespace

std::vector<FieldElem> all_roots_in_field(const FieldElem& a, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "root exponent must be positive");
  const Field& f = a.field();
  if (!f.is_finite()) {
    if (a.is_zero()) return {a};
    auto r = rational_root(a, m);
    if (!r) return {};
    if (m % 2 == 0) return {*r, -*r};
    return {*r};
  }
  if (f.size() > kEnumerationLimit) {
    throw Error(ErrorCode::ExtensionBoundExceeded, "field " + f.name() + " too large to enumerate");
  }
  std::vector<FieldElem> out;
  for (std::uint64_t i = 0; i < f.size(); ++i) {
    FieldElem x = f.element_at(i);
    if (x.pow(m) == a) out.push_back(std::move(x));
  }
  return out;
}

std::optional<FieldElem> root_in_field(const FieldElem& a, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "root exponent must be positive");
  if (a.is_zero()) return a;
  const Field& f = a.field();
  if (!f.is_finite()) return rational_root(a, m);
  bool none = false;
  if (auto r = finite_root_fast(a, m, none)) return r;
  if (none) return std::nullopt;
  auto roots = all_roots_in_field(a, m);
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

std::optional<int> root_extension_degree(const FieldElem& a, int m, int max_degree) {
  const Field& f = a.field();
  if (!f.is_finite()) throw Error(ErrorCode::InvalidArgument, "extensions exist only over F_p");
  if (a.is_zero()) return 1;
  const std::uint32_t p = f.characteristic();
  int mm = m;
  while (mm % static_cast<int>(p) == 0) mm /= static_cast<int>(p);
  // a lies in F_q; its m-th root lies in F_{q^k} iff a^{(q^k-1)/g} = 1, g = gcd(mm, q^k-1).
  const mpz_class q(std::to_string(f.size()));
  mpz_class qk = 1;
  for (int k = 1; k <= max_degree; ++k) {
    qk *= q;
    mpz_class order = qk - 1;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), mpz_class(mm).get_mpz_t(), order.get_mpz_t());
    mpz_class e = order / g;
    // reduce the exponent modulo q-1 (a^{q-1} = 1 in F_q)
    e %= (q - 1);
    if (a.pow(std::stoll(e.get_str())).is_one()) return k;
  }
  return std::nullopt;
}

FieldElem embed(const FieldElem& a, const Field& target) {
  const Field& src = a.field();
  if (&src == &target) return a;
  if (!src.is_finite() || !target.is_finite() || src.characteristic() != target.characteristic() ||
      target.degree() % src.degree() != 0) {
    throw Error(ErrorCode::FieldMismatch, "cannot embed " + src.name() + " into " + target.name());
  }
  const auto res = a.residues();
  if (src.degree() == 1) return target.from_int(res[0]);
  // Image of the generator: a root of the source modulus in the target.
  if (target.size() > kEnumerationLimit) {
    throw Error(ErrorCode::ExtensionBoundExceeded, "target field too large for embedding search");
  }
  const auto& mod = src.modulus();
  std::optional<FieldElem> gen;
  for (std::uint64_t i = 0; i < target.size() && !gen; ++i) {
    FieldElem x = target.element_at(i);
    FieldElem acc = target.zero();
    for (int j = static_cast<int>(mod.size()) - 1; j >= 0; --j) acc = acc * x + target.from_int(mod[j]);
    if (acc.is_zero()) gen = x;
  }
  FieldElem out = target.zero();
  FieldElem pw = target.one();
  for (std::uint32_t c : res) {
    out += pw.times(c);
    pw *= *gen;
  }
  return out;
}

FieldElem field_root(const FieldElem& a, int m, int max_ext) {
  if (a.is_zero()) throw Error(ErrorCode::InvalidArgument, "field_root of zero");
  if (auto r = root_in_field(a, m)) return *r;
  const Field& f = a.field();
  if (!f.is_finite()) {
    throw Error(ErrorCode::NoRationalRoot, a.to_string() + " has no rational " + std::to_string(m) + "-th root");
  }
  const int base_degree = f.degree();
  const int allowed = max_ext / base_degree;
  auto k = root_extension_degree(a, m, std::max(allowed, 1));
  if (!k || *k * base_degree > max_ext) {
    throw Error(ErrorCode::ExtensionBoundExceeded,
                "no " + std::to_string(m) + "-th root within degree " + std::to_string(max_ext));
  }
  const Field& big = Field::extension(f.characteristic(), *k * base_degree);
  FieldElem b = embed(a, big);
  auto r = root_in_field(b, m);
  if (!r) throw Error(ErrorCode::NoRootInField, "root search failed in " + big.name());
  return *r;
}

}  // namespace singclass
