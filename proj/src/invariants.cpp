#include "singclass/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace singclass {

namespace {

using Coeffs = std::vector<FieldElem>;

int first_nonzero(const Coeffs& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) return static_cast<int>(i);
  }
  return -1;
}

// Orders in [0, N] of the image of K[[x,y]], optionally with expressions.
struct Echelon {
  std::map<int, std::pair<Coeffs, BivarPoly>> rows;
};

Echelon build_echelon(const Branch& b, int N, bool track) {
  const Field& f = b.field();
  if (b.prec() < N) {
    throw Error(ErrorCode::TruncationTooSmall,
                "branch known to t^" + std::to_string(b.prec()) + ", need t^" + std::to_string(N));
  }
  const TruncSeries x = b.x.truncate(N), y = b.y.truncate(N);
  const int ox = x.order_bound(), oy = y.order_bound();
  std::vector<TruncSeries> xp{TruncSeries::monomial(f, 0, f.one(), N)}, yp{xp[0]};
  while (static_cast<int>(xp.size()) * ox <= N) xp.push_back((xp.back() * x).truncate(N));
  while (static_cast<int>(yp.size()) * oy <= N) yp.push_back((yp.back() * y).truncate(N));

  struct Mono {
    int order, a, b;
  };
  std::vector<Mono> monos;
  for (int a = 0; a < static_cast<int>(xp.size()); ++a) {
    for (int bb = 0; bb < static_cast<int>(yp.size()); ++bb) {
      if (a * ox + bb * oy <= N) monos.push_back({a * ox + bb * oy, a, bb});
    }
  }
  std::sort(monos.begin(), monos.end(),
            [](const Mono& l, const Mono& r) { return std::tie(l.order, l.b, l.a) < std::tie(r.order, r.b, r.a); });

  Echelon e;
  for (const Mono& mono : monos) {
    Coeffs v = (xp[mono.a] * yp[mono.b]).truncate(N).coeffs();
    BivarPoly expr = track ? BivarPoly::monomial(f, mono.a, mono.b, f.one()) : BivarPoly(f);
    int o = first_nonzero(v);
    while (o >= 0) {
      auto it = e.rows.find(o);
      if (it == e.rows.end()) break;
      const FieldElem c = v[o];
      const Coeffs& pv = it->second.first;
      for (int i = o; i <= N; ++i) {
        if (!pv[i].is_zero()) v[i] -= c * pv[i];
      }
      if (track) expr -= c * it->second.second;
      o = first_nonzero(v);
    }
    if (o < 0) continue;
    const FieldElem inv = v[o].inverse();
    for (int i = o; i <= N; ++i) v[i] *= inv;
    if (track) expr = inv * expr;
    e.rows.emplace(o, std::make_pair(std::move(v), std::move(expr)));
  }
  return e;
}

std::vector<int> echelon_orders(const Branch& b, int N) {
  std::vector<int> out;
  for (auto& [o, row] : build_echelon(b, N, false).rows) out.push_back(o);
  return out;
}

// Conductor from the orders in [0, N]: start of the first run whose length
// reaches the smallest positive order.
std::optional<int> find_conductor(const std::vector<int>& orders, int N) {
  int g1 = 0;
  for (int o : orders) {
    if (o > 0) {
      g1 = o;
      break;
    }
  }
  if (g1 == 0) return std::nullopt;
  std::vector<bool> in(N + 1, false);
  for (int o : orders) in[o] = true;
  int run = 0;
  for (int v = 0; v <= N; ++v) {
    run = in[v] ? run + 1 : 0;
    if (run == g1) return v - g1 + 1;
  }
  return std::nullopt;
}

}  // namespace

RingBasis::RingBasis(const Branch& b, int N, bool track_expressions) : N_(N) {
  const Field& f = b.field();
  for (auto& [o, row] : build_echelon(b, N, track_expressions).rows) {
    elements_.emplace(o, Element{TruncSeries(f, std::move(row.first), N), std::move(row.second)});
  }
}

std::vector<int> RingBasis::orders() const {
  std::vector<int> out;
  for (auto& [o, e] : elements_) out.push_back(o);
  return out;
}

TruncSeries RingBasis::reduce(TruncSeries s, BivarPoly* used) const {
  while (auto o = s.order()) {
    auto it = elements_.find(*o);
    if (it == elements_.end()) break;
    const FieldElem c = s[*o];
    s -= c * it->second.series;
    if (used) *used += c * it->second.expr;
  }
  return s;
}

bool ValueSemigroup::contains(int v) const {
  if (v >= conductor) return true;
  return std::binary_search(members.begin(), members.end(), v);
}

std::vector<int> ValueSemigroup::gaps() const {
  std::vector<int> out;
  for (int v = 0; v < conductor; ++v) {
    if (!contains(v)) out.push_back(v);
  }
  return out;
}

std::string ValueSemigroup::to_string() const {
  std::ostringstream os;
  os << "<";
  for (size_t i = 0; i < generators.size(); ++i) os << (i ? "," : "") << generators[i];
  os << "> c=" << conductor << " delta=" << delta;
  return os.str();
}

ValueSemigroup value_semigroup(const Branch& b, int n_hint) {
  const int prec = b.prec();
  int N = std::min(prec, std::max({n_hint, 16, b.x.order_bound() * b.y.order_bound()}));
  std::vector<int> orders;
  std::optional<int> c;
  while (true) {
    orders = echelon_orders(b, N);
    c = find_conductor(orders, N);
    if (c || N == prec) break;
    N = std::min(2 * N, prec);
  }
  if (!c) {
    int g = 0, ge = 0;
    for (int o : orders) g = std::gcd(g, o);
    for (const TruncSeries* s : {&b.x, &b.y}) {
      for (int i = 1; i <= s->prec(); ++i) {
        if (!(*s)[i].is_zero()) ge = std::gcd(ge, i);
      }
    }
    if (g > 1 && ge > 1) {
      throw Error(ErrorCode::NotPrimitive,
                  "every value up to t^" + std::to_string(N) + " is divisible by " + std::to_string(g));
    }
    throw Error(ErrorCode::TruncationTooSmall, "conductor not certified up to t^" + std::to_string(N) +
                                                   "; retry with truncation " + std::to_string(2 * prec));
  }
  // Recompute at doubled truncation when the branch is known that far.
  const int N2 = std::min(2 * N, prec);
  if (N2 > N) {
    std::vector<int> again = echelon_orders(b, N2);
    std::vector<int> low;
    for (int o : again) {
      if (o <= N) low.push_back(o);
    }
    if (low != orders || find_conductor(again, N2) != c) {
      throw Error(ErrorCode::TruncationTooSmall, "semigroup changed under doubled truncation");
    }
  }

  ValueSemigroup out;
  out.conductor = *c;
  out.truncation_used = N;
  for (int o : orders) {
    if (o <= *c) out.members.push_back(o);
  }
  out.delta = static_cast<int>(out.gaps().size());
  if (out.conductor != 2 * out.delta) {
    throw Error(ErrorCode::TruncationTooSmall, "conductor " + std::to_string(out.conductor) + " differs from 2*delta = " +
                                                   std::to_string(2 * out.delta));
  }
  int g1 = 1;
  while (!out.contains(g1)) ++g1;
  for (int v = 1; v <= out.conductor + g1; ++v) {
    if (!out.contains(v)) continue;
    bool decomposable = false;
    for (int u = 1; u <= v / 2 && !decomposable; ++u) decomposable = out.contains(u) && out.contains(v - u);
    if (!decomposable) out.generators.push_back(v);
  }
  return out;
}

namespace {

struct LocalEq {
  BivarPoly g;
  int valid_below;  // results below this order do not see the perturbation
};

TruncSeries polynomial_part(const TruncSeries& s) {
  const int d = std::max(s.degree(), 1);
  return TruncSeries(s.field(), std::vector<FieldElem>(s.coeffs().begin(), s.coeffs().begin() + std::min(d, s.prec()) + 1),
                     d);
}

LocalEq local_eq(const Branch& b, int keep_through) {
  const Field& f = b.field();
  if (!b.x.order() && !b.y.order()) throw Error(ErrorCode::TruncationTooSmall, "branch vanishes to its truncation");
  // a coordinate vanishing identically: the branch is an axis
  if (b.x.degree() < 0) return {BivarPoly::x(f), b.prec() + 1};
  if (b.y.degree() < 0) return {BivarPoly::y(f), b.prec() + 1};
  TruncSeries X = polynomial_part(b.x), Y = polynomial_part(b.y);
  const int m = b.multiplicity();
  BivarPoly g = coordinate_resultant(X, Y);
  if (g.multiplicity() == m) return {g, b.prec() + 1};
  // a fixed coefficient can keep hitting the origin elsewhere (over F_3,
  // x + t^K at t = 1 may vanish for every K), so vary it as well
  std::vector<FieldElem> coeffs{f.one()};
  std::vector<FieldElem> more{f.from_int(-1), f.from_int(2)};
  if (f.kind() == Field::Kind::Extension) more.push_back(f.generator());
  for (const FieldElem& c : more)
    if (!c.is_zero() && std::find(coeffs.begin(), coeffs.end(), c) == coeffs.end()) coeffs.push_back(c);
  int K = std::max({keep_through + 1, X.degree() + 1, Y.degree() + 1});
  for (int attempt = 0; attempt < 12; ++attempt, ++K) {
    for (const FieldElem& c : coeffs) {
      TruncSeries Xp = TruncSeries(f, X.coeffs(), K).with_coeff(K, c);
      g = coordinate_resultant(Xp, Y);
      if (g.multiplicity() == m) return {g, std::min(K, b.prec() + 1)};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "could not isolate the branch at the origin");
}

}  // namespace

BivarPoly local_equation(const Branch& b, int keep_through) { return local_eq(b, keep_through).g; }

int intersection_multiplicity(const Branch& a, const Branch& b) {
  if (&a.field() != &b.field()) throw Error(ErrorCode::FieldMismatch, "branches over different fields");
  // i(a, b) read as the order of b's equation along a, certified when it is
  // below the perturbation order of b's equation; then the same swapped.
  // The perturbation moves up while neither direction is certified.
  auto one_way = [](const Branch& along, const Branch& eq_of, int keep) -> std::pair<std::optional<int>, bool> {
    LocalEq e = local_eq(eq_of, keep);
    TruncSeries s = bivar_substitute(e.g, along.x, along.y);
    auto o = s.order();
    if (o && *o < e.valid_below) return {o, true};
    return {o, false};
  };
  const int top = std::min(a.prec(), b.prec());
  for (int keep = std::max(a.multiplicity(), b.multiplicity()) * 4;; keep *= 2) {
    auto [o1, ok1] = one_way(a, b, keep);
    auto [o2, ok2] = one_way(b, a, keep);
    if (ok1 && ok2 && *o1 != *o2) {
      throw Error(ErrorCode::TruncationTooSmall, "intersection numbers disagree: " + std::to_string(*o1) + " vs " +
                                                     std::to_string(*o2));
    }
    if (ok1) return *o1;
    if (ok2) return *o2;
    if (!o1 && !o2) throw Error(ErrorCode::BranchesCoincide, "branches agree to their truncation");
    if (keep >= top) break;
  }
  throw Error(ErrorCode::TruncationTooSmall, "intersection number exceeds certified truncation");
}

ConductorVector conductor_vector(const Parametrization& psi) {
  ConductorVector out;
  const size_t r = psi.size();
  std::vector<std::vector<int>> inter(r, std::vector<int>(r, 0));
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = i + 1; j < r; ++j) inter[i][j] = inter[j][i] = intersection_multiplicity(psi.branch(i), psi.branch(j));
  }
  for (size_t i = 0; i < r; ++i) {
    int ci = value_semigroup(psi.branch(i)).conductor;
    for (size_t j = 0; j < r; ++j) ci += inter[i][j];
    out.c.push_back(ci);
    out.total += ci;
  }
  out.delta = out.total / 2;
  return out;
}

int max_contact(const Parametrization& psi) {
  const ConductorVector cv = conductor_vector(psi);
  const int cap = *std::max_element(cv.c.begin(), cv.c.end()) + 1;
  int best = 0;
  for (int orient = 0; orient < 2; ++orient) {
    std::vector<TruncSeries> v, r;
    for (const auto& b : psi.branches()) {
      v.push_back(orient == 0 ? b.x : b.y);
      r.push_back(orient == 0 ? b.y : b.x);
    }
    auto minimum = [&](const std::vector<TruncSeries>& rs) {
      int mn = cap;
      for (const auto& s : rs) mn = std::min(mn, s.order_bound());
      return mn;
    };
    int mn = minimum(r);
    while (mn < cap) {
      std::optional<int> k;
      std::optional<FieldElem> c;
      bool consistent = true;
      for (size_t i = 0; i < r.size() && consistent; ++i) {
        if (r[i].order_bound() != mn) continue;
        auto ov = v[i].order();
        if (!ov || mn % *ov != 0) {
          consistent = false;
          break;
        }
        const int ki = mn / *ov;
        const FieldElem ci = r[i][mn] / v[i][*ov].pow(ki);
        if ((k && *k != ki) || (c && *c != ci)) consistent = false;
        k = ki;
        c = ci;
      }
      if (!consistent || !k) break;
      std::vector<TruncSeries> next;
      for (size_t i = 0; i < r.size(); ++i) next.push_back(r[i] - *c * v[i].pow(*k));
      const int nm = minimum(next);
      if (nm <= mn) break;
      r = std::move(next);
      mn = nm;
    }
    best = std::max(best, mn);
  }
  return std::min(best, cap);
}

DeterminacyBound determinacy_bound(const Parametrization& psi) {
  const int mt = multiplicity(psi);
  DeterminacyBound out;
  if (mt == 1) {
    out.tag = "mt1";
    out.d.assign(psi.size(), 1);
    return out;
  }
  const ConductorVector cv = conductor_vector(psi);
  int shift = -1;
  if (mt == 2 && psi.size() == 1) {
    out.tag = "mt2-r1";
    shift = 1;
  } else if (mt == 2) {
    out.tag = "mt2-r2";
    shift = 0;
  } else {
    out.tag = "mtBig";
  }
  for (int c : cv.c) out.d.push_back(c + shift);
  return out;
}

}  // namespace singclass
