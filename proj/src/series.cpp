#include "singclass/series.hpp"

#include <algorithm>
#include <sstream>

namespace singclass {

namespace {

using Coeffs = std::vector<FieldElem>;

// Product of two coefficient vectors, truncated at t^cap.
Coeffs raw_mul(const Coeffs& a, const Coeffs& b, int cap, const Field& f) {
  Coeffs out(cap + 1, f.zero());
  const int na = std::min<int>(static_cast<int>(a.size()) - 1, cap);
  for (int i = 0; i <= na; ++i) {
    if (a[i].is_zero()) continue;
    const int nb = std::min<int>(static_cast<int>(b.size()) - 1, cap - i);
    for (int j = 0; j <= nb; ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

int last_nonzero(const Coeffs& c) {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (!c[i].is_zero()) return i;
  }
  return -1;
}

// s(phi) truncated at t^cap, treating both as polynomials.
Coeffs raw_compose(const Coeffs& s, const Coeffs& phi, int cap, const Field& f) {
  const int deg = last_nonzero(s);
  Coeffs acc(cap + 1, f.zero());
  if (deg < 0) return acc;
  acc[0] = s[deg];
  for (int i = deg - 1; i >= 0; --i) {
    acc = raw_mul(acc, phi, cap, f);
    acc[0] += s[i];
  }
  return acc;
}

}  // namespace

TruncSeries::TruncSeries(const Field& f, int prec) : field_(&f), c_(std::max(prec, 0) + 1, f.zero()), prec_(prec) {
  if (prec < 0) throw Error(ErrorCode::InvalidArgument, "negative truncation order");
}

TruncSeries::TruncSeries(const Field& f, std::vector<FieldElem> coeffs, int prec) : TruncSeries(f, prec) {
  const int n = std::min<int>(static_cast<int>(coeffs.size()) - 1, prec);
  for (int i = 0; i <= n; ++i) {
    if (&coeffs[i].field() != field_) throw Error(ErrorCode::FieldMismatch, "series coefficient field");
    c_[i] = std::move(coeffs[i]);
  }
}

TruncSeries TruncSeries::monomial(const Field& f, int exponent, const FieldElem& c, int prec) {
  TruncSeries s(f, prec);
  if (exponent <= prec) s.c_[exponent] = c;
  return s;
}

const FieldElem& TruncSeries::operator[](int i) const {
  if (i < 0 || i > prec_) {
    throw Error(ErrorCode::TruncationTooSmall,
                "coefficient t^" + std::to_string(i) + " beyond truncation " + std::to_string(prec_));
  }
  return c_[i];
}

std::optional<int> TruncSeries::order() const {
  for (int i = 0; i <= prec_; ++i) {
    if (!c_[i].is_zero()) return i;
  }
  return std::nullopt;
}

int TruncSeries::order_bound() const { return order().value_or(prec_ + 1); }

int TruncSeries::degree() const { return last_nonzero(c_); }

TruncSeries TruncSeries::truncate(int n) const {
  if (n > prec_) {
    throw Error(ErrorCode::JetExceedsTruncation,
                "jet order " + std::to_string(n) + " exceeds truncation " + std::to_string(prec_));
  }
  return TruncSeries(*field_, Coeffs(c_.begin(), c_.begin() + n + 1), n);
}

TruncSeries TruncSeries::with_coeff(int i, const FieldElem& c) const {
  TruncSeries s = *this;
  if (i >= 0 && i <= prec_) s.c_[i] = c;
  return s;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries s = *this;
  for (auto& c : s.c_) c = -c;
  return s;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  if (field_ != o.field_) throw Error(ErrorCode::FieldMismatch, "series in different fields");
  const int n = std::min(prec_, o.prec_);
  c_.resize(n + 1);
  prec_ = n;
  for (int i = 0; i <= n; ++i) c_[i] += o.c_[i];
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) { return *this += -o; }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  if (a.field_ != b.field_) throw Error(ErrorCode::FieldMismatch, "series in different fields");
  const int prec = std::min(a.prec_ + b.order_bound(), b.prec_ + a.order_bound());
  TruncSeries out(*a.field_, prec);
  out.c_ = raw_mul(a.c_, b.c_, prec, *a.field_);
  return out;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b, int cap) {
  if (&a.field() != &b.field()) throw Error(ErrorCode::FieldMismatch, "series in different fields");
  const int prec = std::min({a.prec() + b.order_bound(), b.prec() + a.order_bound(), cap});
  return TruncSeries(a.field(), raw_mul(a.coeffs(), b.coeffs(), prec, a.field()), prec);
}

TruncSeries operator*(const FieldElem& c, const TruncSeries& s) {
  TruncSeries out = s;
  for (auto& x : out.c_) x = c * x;
  return out;
}

TruncSeries TruncSeries::shift_up(int k) const {
  TruncSeries out(*field_, prec_ + k);
  for (int i = 0; i <= prec_; ++i) out.c_[i + k] = c_[i];
  return out;
}

TruncSeries TruncSeries::shift_down(int k) const {
  for (int i = 0; i < k && i <= prec_; ++i) {
    if (!c_[i].is_zero()) throw Error(ErrorCode::InvalidArgument, "series not divisible by t^" + std::to_string(k));
  }
  if (k > prec_) throw Error(ErrorCode::TruncationTooSmall, "shift below truncation");
  TruncSeries out(*field_, prec_ - k);
  for (int i = k; i <= prec_; ++i) out.c_[i - k] = c_[i];
  return out;
}

TruncSeries TruncSeries::pow(int k) const {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
  TruncSeries result = monomial(*field_, 0, field_->one(), prec_);
  if (k == 0) return result;
  TruncSeries base = *this;
  bool first = true;
  while (k > 0) {
    if (k & 1) {
      result = first ? base : result * base;
      first = false;
    }
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

TruncSeries TruncSeries::derivative() const {
  if (prec_ == 0) return TruncSeries(*field_, 0);
  TruncSeries out(*field_, prec_ - 1);
  for (int i = 1; i <= prec_; ++i) out.c_[i - 1] = c_[i].times(i);
  return out;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  return a.field_ == b.field_ && a.prec_ == b.prec_ && a.c_ == b.c_;
}

bool TruncSeries::agrees_with(const TruncSeries& o, int n) const {
  int m = std::min(prec_, o.prec_);
  if (n >= 0) m = std::min(m, n);
  for (int i = 0; i <= m; ++i) {
    if (c_[i] != o.c_[i]) return false;
  }
  return true;
}

std::string TruncSeries::to_string(char var) const {
  std::ostringstream os;
  bool first = true;
  const bool finite = field_->is_finite();
  for (int i = 0; i <= prec_; ++i) {
    const FieldElem& c = c_[i];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool negative = !finite && c.rational() < 0;
    if (negative) cs = (-c).to_string();
    if (field_->kind() == Field::Kind::Extension && cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit_coeff = cs == "1";
    if (i == 0) {
      os << cs;
    } else {
      if (!unit_coeff) os << cs << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << (prec_ + 1) << ")";
  return os.str();
}

TruncSeries series_compose(const TruncSeries& s, const TruncSeries& phi) {
  if (&s.field() != &phi.field()) throw Error(ErrorCode::FieldMismatch, "compose across fields");
  auto e = phi.order();
  if (!e || *e < 1) {
    throw Error(ErrorCode::NotALocalReparametrization, "inner series must have order >= 1");
  }
  const int os = std::max(s.order_bound(), 1);
  const long long tail = static_cast<long long>(s.prec() + 1) * *e - 1;
  const long long inner = phi.prec() + static_cast<long long>(os - 1) * *e;
  const int prec = static_cast<int>(std::min(tail, inner));
  return TruncSeries(s.field(), raw_compose(s.coeffs(), phi.coeffs(), prec, s.field()), prec);
}

TruncSeries series_inverse(const TruncSeries& u) {
  if (!u.is_unit()) throw Error(ErrorCode::DivisionByZero, "series is not a unit");
  const Field& f = u.field();
  const int n = u.prec();
  std::vector<FieldElem> v(n + 1, f.zero());
  const FieldElem inv0 = u[0].inverse();
  v[0] = inv0;
  for (int k = 1; k <= n; ++k) {
    FieldElem acc = f.zero();
    for (int j = 1; j <= k; ++j) {
      if (!u[j].is_zero()) acc += u[j] * v[k - j];
    }
    v[k] = -(acc * inv0);
  }
  return TruncSeries(f, std::move(v), n);
}

TruncSeries series_root(const TruncSeries& u, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "root exponent must be positive");
  const Field& f = u.field();
  const std::uint32_t p = f.characteristic();
  if (p != 0 && m % static_cast<int>(p) == 0) {
    throw Error(ErrorCode::CharacteristicDividesM,
                "characteristic " + std::to_string(p) + " divides " + std::to_string(m));
  }
  if (!u.is_unit()) throw Error(ErrorCode::InvalidArgument, "series_root needs a unit");
  auto r0 = root_in_field(u[0], m);
  if (!r0) {
    std::string detail = u[0].to_string() + " has no " + std::to_string(m) + "-th root in " + f.name();
    if (f.is_finite()) {
      if (auto k = root_extension_degree(u[0], m, max_extension_degree())) {
        detail += "; minimal extension degree " + std::to_string(*k);
      }
    }
    throw Error(ErrorCode::NoRootInField, detail);
  }
  if (m == 1) return u;
  const int n = u.prec();
  const TruncSeries w = u[0].inverse() * u;  // w(0) = 1
  const FieldElem inv_m = f.from_int(m).inverse();
  // Newton step v <- v - (v^m - w) / (m v^{m-1}) at doubling precision.
  TruncSeries v = TruncSeries::monomial(f, 0, f.one(), 0);
  for (int k = 0; k < n;) {
    k = std::min(2 * k + 1, n);
    const TruncSeries vk(f, v.coeffs(), k);
    const TruncSeries vm1 = vk.pow(m - 1);
    const TruncSeries delta = (vk * vm1 - w.truncate(k)) * series_inverse(vm1);
    v = vk - inv_m * delta;
  }
  return *r0 * TruncSeries(f, v.coeffs(), n);
}

TruncSeries series_reverse(const TruncSeries& phi) {
  auto e = phi.order();
  if (!e || *e != 1) throw Error(ErrorCode::NotALocalReparametrization, "reversion needs order exactly 1");
  const Field& f = phi.field();
  const int n = phi.prec();
  const TruncSeries dphi = phi.derivative();
  // Newton on psi with phi(psi) = t, at doubling precision.  Raw arithmetic at
  // full length: reversion modulo t^{k+1} only depends on phi modulo t^{k+1}.
  TruncSeries psi = phi[1].inverse() * TruncSeries::identity(f, 1);
  for (int k = 1; k < n;) {
    k = std::min(2 * k, n);
    const Coeffs pk(phi.coeffs().begin(), phi.coeffs().begin() + k + 1);
    const Coeffs dk(dphi.coeffs().begin(), dphi.coeffs().begin() + k);
    const TruncSeries psik(f, psi.coeffs(), k);
    TruncSeries residual(f, raw_compose(pk, psik.coeffs(), k, f), k);
    residual -= TruncSeries::identity(f, k);
    const TruncSeries dpsi(f, raw_compose(dk, psik.coeffs(), k, f), k);
    psi = psik - TruncSeries(f, raw_mul(residual.coeffs(), series_inverse(dpsi).coeffs(), k, f), k);
  }
  return TruncSeries(f, psi.coeffs(), n);
}

}  // namespace singclass
