#include "singclass/bivar.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace singclass {

namespace {

constexpr int kExact = INT_MAX / 4;

int mult_bound(const BivarPoly& p) {
  if (auto m = p.multiplicity()) return *m;
  return p.trunc() ? *p.trunc() + 1 : kExact;
}

std::optional<int> min_trunc(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

BivarPoly::BivarPoly(const Field& f, std::optional<int> trunc) : field_(&f), trunc_(trunc) {}

BivarPoly BivarPoly::monomial(const Field& f, int a, int b, const FieldElem& c) {
  BivarPoly p(f);
  p.add_term(a, b, c);
  return p;
}

FieldElem BivarPoly::coeff(int a, int b) const {
  auto it = terms_.find({a, b});
  return it == terms_.end() ? field_->zero() : it->second;
}

void BivarPoly::add_term(int a, int b, const FieldElem& c) {
  if (a < 0 || b < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  if (trunc_ && a + b > *trunc_) return;
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<int> BivarPoly::multiplicity() const {
  if (terms_.empty()) return std::nullopt;
  int m = INT_MAX;
  for (const auto& [e, c] : terms_) m = std::min(m, e.first + e.second);
  return m;
}

int BivarPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

int BivarPoly::degree_x() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

int BivarPoly::degree_y() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.second);
  return d;
}

BivarPoly BivarPoly::truncated(int degree) const {
  BivarPoly out(*field_, trunc_ ? std::min(*trunc_, degree) : degree);
  for (const auto& [e, c] : terms_) out.add_term(e.first, e.second, c);
  return out;
}

BivarPoly BivarPoly::operator-() const {
  BivarPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
  if (field_ != o.field_) throw Error(ErrorCode::FieldMismatch, "polynomials in different fields");
  const auto t = min_trunc(trunc_, o.trunc_);
  if (t != trunc_) *this = truncated(*t);
  for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) { return *this += -o; }

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  if (a.field_ != b.field_) throw Error(ErrorCode::FieldMismatch, "polynomials in different fields");
  std::optional<int> t;
  if (a.trunc_) t = *a.trunc_ + mult_bound(b);
  if (b.trunc_) t = min_trunc(t, *b.trunc_ + mult_bound(a));
  BivarPoly out(*a.field_, t);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
  }
  return out;
}

BivarPoly operator*(const FieldElem& c, const BivarPoly& p) {
  BivarPoly out(*p.field_, p.trunc_);
  for (const auto& [e, v] : p.terms_) out.add_term(e.first, e.second, c * v);
  return out;
}

BivarPoly BivarPoly::pow(int k) const {
  BivarPoly result = constant(*field_, field_->one());
  BivarPoly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

BivarPoly BivarPoly::compose(const BivarPoly& X, const BivarPoly& Y) const {
  std::vector<BivarPoly> xp{constant(*field_, field_->one())}, yp{constant(*field_, field_->one())};
  BivarPoly out(*field_);
  for (const auto& [e, c] : terms_) {
    while (static_cast<int>(xp.size()) <= e.first) xp.push_back(xp.back() * X);
    while (static_cast<int>(yp.size()) <= e.second) yp.push_back(yp.back() * Y);
    out += c * (xp[e.first] * yp[e.second]);
  }
  if (trunc_) {
    const int mu = std::min(mult_bound(X), mult_bound(Y));
    if (mu < 1) throw Error(ErrorCode::InvalidArgument, "truncated composition needs X, Y in the maximal ideal");
    const long long bound = static_cast<long long>(*trunc_ + 1) * mu - 1;
    if (bound < kExact) out = out.truncated(static_cast<int>(bound));
  }
  return out;
}

std::string BivarPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  const bool finite = field_->is_finite();
  // Highest total degree first, then by descending x-degree.
  std::vector<std::pair<Exponent, FieldElem>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& l, const auto& r) {
    const int dl = l.first.first + l.first.second, dr = r.first.first + r.first.second;
    if (dl != dr) return dl > dr;
    return l.first.first > r.first.first;
  });
  for (const auto& [e, c] : items) {
    bool negative = !finite && c.rational() < 0;
    std::string cs = negative ? (-c).to_string() : c.to_string();
    if (field_->kind() == Field::Kind::Extension && cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    if (e.first > 0) mono += e.first > 1 ? "x^" + std::to_string(e.first) : "x";
    if (e.second > 0) {
      if (!mono.empty()) mono += "*";
      mono += e.second > 1 ? "y^" + std::to_string(e.second) : "y";
    }
    if (mono.empty()) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      os << mono;
    }
  }
  if (first) os << "0";
  if (trunc_) os << " + O(deg " << (*trunc_ + 1) << ")";
  return os.str();
}

TruncSeries bivar_substitute(const BivarPoly& g, const TruncSeries& x, const TruncSeries& y) {
  const Field& f = g.field();
  if (&x.field() != &f || &y.field() != &f) throw Error(ErrorCode::FieldMismatch, "substitute across fields");
  const long long ox = x.order_bound(), oy = y.order_bound();
  // Certified truncation of the sum: the least certified truncation of a term.
  long long target = static_cast<long long>(std::max(x.prec(), y.prec())) * std::max(1, g.total_degree()) + 1;
  for (const auto& [e, c] : g.terms()) {
    const auto [a, b] = e;
    if (a > 0) target = std::min(target, x.prec() + (a - 1) * ox + b * oy);
    if (b > 0) target = std::min(target, y.prec() + a * ox + (b - 1) * oy);
  }
  if (g.trunc()) {
    const int mu = static_cast<int>(std::min(ox, oy));
    if (mu < 1) throw Error(ErrorCode::InvalidArgument, "truncated polynomial needs series in the maximal ideal");
    target = std::min<long long>(target, static_cast<long long>(*g.trunc() + 1) * mu - 1);
  }
  const int cap = static_cast<int>(target);
  auto trunc_to = [cap](const TruncSeries& s) { return s.prec() > cap ? s.truncate(cap) : s; };
  std::vector<TruncSeries> xp{TruncSeries::monomial(f, 0, f.one(), cap)};
  std::vector<TruncSeries> yp{TruncSeries::monomial(f, 0, f.one(), cap)};
  TruncSeries out(f, cap);
  for (const auto& [e, c] : g.terms()) {
    while (static_cast<int>(xp.size()) <= e.first)
      xp.push_back(xp.size() == 1 ? trunc_to(x) : series_mul(xp.back(), x, cap));
    while (static_cast<int>(yp.size()) <= e.second)
      yp.push_back(yp.size() == 1 ? trunc_to(y) : series_mul(yp.back(), y, cap));
    out += c * series_mul(xp[e.first], yp[e.second], cap);
  }
  return out;
}

TPoly coordinate_eliminant(char var, const TruncSeries& s) {
  const Field& f = s.field();
  const int deg = std::max(s.degree(), 0);
  TPoly out(deg + 1, BivarPoly(f));
  for (int i = 0; i <= deg; ++i) out[i] = BivarPoly::constant(f, -s[i]);
  out[0] += var == 'x' ? BivarPoly::x(f) : BivarPoly::y(f);
  return out;
}

namespace {

int tdegree(const TPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (!p[i].is_zero()) return i;
  }
  return -1;
}

// Berkowitz: coefficients v[0..n] of det(lambda*I - A) = sum v[k] lambda^{n-k}.
std::vector<BivarPoly> berkowitz(const std::vector<std::vector<BivarPoly>>& a, const Field& f) {
  const int n = static_cast<int>(a.size());
  const BivarPoly one = BivarPoly::constant(f, f.one());
  std::vector<BivarPoly> v{one};
  for (int r = 0; r < n; ++r) {
    // Leading (r+1)x(r+1) block: M = a[0..r-1][0..r-1], R = a[r][0..r-1],
    // C = a[0..r-1][r], d = a[r][r].
    std::vector<BivarPoly> t;
    t.reserve(r + 2);
    t.push_back(one);
    t.push_back(-a[r][r]);
    std::vector<BivarPoly> col(r, BivarPoly(f));
    for (int i = 0; i < r; ++i) col[i] = a[i][r];
    for (int k = 0; k < r; ++k) {
      BivarPoly rc(f);
      for (int i = 0; i < r; ++i) rc += a[r][i] * col[i];
      t.push_back(-rc);
      if (k + 1 < r) {
        std::vector<BivarPoly> next(r, BivarPoly(f));
        for (int i = 0; i < r; ++i) {
          for (int j = 0; j < r; ++j) next[i] += a[i][j] * col[j];
        }
        col = std::move(next);
      }
    }
    std::vector<BivarPoly> nv(r + 2, BivarPoly(f));
    for (int i = 0; i < r + 2; ++i) {
      for (int j = 0; j <= std::min(i, r); ++j) nv[i] += t[i - j] * v[j];
    }
    v = std::move(nv);
  }
  return v;
}

}  // namespace

BivarPoly determinant(const std::vector<std::vector<BivarPoly>>& m) {
  if (m.empty()) throw Error(ErrorCode::InvalidArgument, "empty matrix");
  const Field& f = m[0][0].field();
  auto v = berkowitz(m, f);
  const int n = static_cast<int>(m.size());
  return n % 2 == 0 ? v[n] : -v[n];
}

BivarPoly resultant(const TPoly& f, const TPoly& g) {
  const int df = tdegree(f), dg = tdegree(g);
  if (df <= 0 || dg <= 0) throw Error(ErrorCode::ZeroDegreeInput, "resultant needs positive degree in t");
  const Field& fld = f[df].field();
  const int n = df + dg;
  std::vector<std::vector<BivarPoly>> syl(n, std::vector<BivarPoly>(n, BivarPoly(fld)));
  for (int i = 0; i < dg; ++i) {
    for (int k = 0; k <= df; ++k) syl[i][i + k] = f[df - k];
  }
  for (int i = 0; i < df; ++i) {
    for (int k = 0; k <= dg; ++k) syl[dg + i][i + k] = g[dg - k];
  }
  return determinant(syl);
}

BivarPoly coordinate_resultant(const TruncSeries& X, const TruncSeries& Y) {
  const Field& f = X.field();
  const int d = X.degree();
  const int e = Y.degree();
  if (d <= 0 || e <= 0) throw Error(ErrorCode::ZeroDegreeInput, "both coordinates need positive degree");
  const FieldElem lead_inv = X[d].inverse();
  // Coordinates of t^j * Y(t) reduced modulo X(t) - x, coefficients in K[x].
  auto reduce = [&](std::vector<BivarPoly> poly) {
    for (int k = static_cast<int>(poly.size()) - 1; k >= d; --k) {
      if (poly[k].is_zero()) continue;
      const BivarPoly c = poly[k];
      poly[k] = BivarPoly(f);
      poly[k - d] += lead_inv * (c * BivarPoly::x(f));
      for (int i = 0; i < d; ++i) {
        if (!X[i].is_zero()) poly[k - d + i] -= (lead_inv * X[i]) * c;
      }
    }
    poly.resize(d, BivarPoly(f));
    return poly;
  };
  std::vector<std::vector<BivarPoly>> m(d, std::vector<BivarPoly>(d, BivarPoly(f)));
  for (int j = 0; j < d; ++j) {
    std::vector<BivarPoly> poly(j + e + 1, BivarPoly(f));
    for (int i = 0; i <= e; ++i) poly[j + i] = BivarPoly::constant(f, Y[i]);
    auto red = reduce(std::move(poly));
    for (int i = 0; i < d; ++i) m[i][j] = red[i];
  }
  const auto v = berkowitz(m, f);  // det(lambda I - M), lambda -> y
  BivarPoly cp(f);
  const BivarPoly y = BivarPoly::y(f);
  for (int k = 0; k <= d; ++k) cp += v[k] * y.pow(d - k);
  const FieldElem scale = (-X[d]).pow(e);
  return scale * cp;
}

}  // namespace singclass
