#include "singclass/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace singclass {

std::string SingularityType::name() const {
  switch (tag) {
    case TypeTag::Smooth: return "Smooth";
    case TypeTag::A: return "A_" + std::to_string(index);
    case TypeTag::E: return "E_" + std::to_string(index);
    case TypeTag::W: return "W_" + std::to_string(index);
    case TypeTag::WSharp: return "W#_" + std::to_string(index);
    case TypeTag::NotSimple: return "NotSimple(" + condition + ")";
    case TypeTag::Unclassified: break;
  }
  return "Unclassified";
}

std::string SingularityType::params() const {
  std::string s;
  if (epsilon) s = "eps=" + std::to_string(*epsilon);
  if (q) s += (s.empty() ? "" : ",") + std::string("q=") + std::to_string(*q);
  return s;
}

std::optional<std::string> simpleness_gate(int m, int n, std::uint32_t p) {
  if (m > 4) return "i";
  if (m == 4 && p == 2) return "ii";
  if (m == 4 && n > 7) return "iii";
  if (m == 4 && n == 7 && p == 7) return "iv";
  if (m >= 3 && n >= 6 && p == 3) return "v";
  if (m == 3 && n >= 8 && p == 2) return "vi";
  return std::nullopt;
}

namespace {

// p divides v, with p = 0 dividing nothing.
bool divides(std::uint32_t p, int v) { return p != 0 && v % static_cast<int>(p) == 0; }

TruncSeries poly_series(const Field& f, std::initializer_list<std::pair<int, int>> terms, int prec) {
  for (auto [e, v] : terms) prec = std::max(prec, 2 * e);
  std::vector<FieldElem> c(prec + 1, f.zero());
  for (auto [e, v] : terms)
    if (v != 0) c.at(e) += f.from_int(v);
  return TruncSeries(f, std::move(c), prec);
}

std::string poly_text(const TruncSeries& s) {
  std::string out;
  for (int i = 0; i <= s.degree(); ++i) {
    if (s[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (!s[i].is_one()) out += s[i].to_string() + "*";
    out += i == 1 ? "t" : "t^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

BivarPoly mono(const Field& f, int a, int b) { return BivarPoly::monomial(f, a, b, f.one()); }

struct RowBuilder {
  const Field& f;
  std::uint32_t p;
  int prec;
  std::vector<CatalogRow> rows;

  void add(TypeTag tag, int index, std::optional<int> eps, std::optional<int> q,
           std::initializer_list<std::pair<int, int>> x, std::initializer_list<std::pair<int, int>> y,
           BivarPoly fixed, std::vector<BivarPoly> free_terms, std::string eq_text, int conductor) {
    SingularityType t;
    t.tag = tag;
    t.index = index;
    t.epsilon = eps;
    t.q = q;
    t.characteristic = p;
    Branch param{poly_series(f, x, prec), poly_series(f, y, prec)};
    std::string text = "(" + poly_text(param.x) + ", " + poly_text(param.y) + ")";
    CatalogRow r{t, std::move(param), std::move(text),
                 EquationTemplate{std::move(fixed), std::move(free_terms), std::move(eq_text)}, conductor};
    rows.push_back(std::move(r));
  }
};

std::string pw(const char* v, int e) { return e == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(e); }

void e_series(RowBuilder& rb, int k_max, int q_max) {
  const Field& f = rb.f;
  for (int k = 2; k <= k_max; ++k) {
    for (int shift : {1, 2}) {
      const int n = 3 * k + shift, c = 6 * k + 2 * (shift - 1), tail0 = shift == 1 ? 2 : 4;
      BivarPoly fixed = mono(f, 3, 0) + mono(f, 0, n);
      std::vector<BivarPoly> free;
      std::string ck = "c_" + std::to_string(k - 2) + "(y)";
      for (int i = 0; i <= k - 2; ++i) free.push_back(mono(f, 2, 2 * k + 1 + i));
      std::string eq = "x^3 + " + pw("y", n) + " + " + ck + "*x^2*" + pw("y", 2 * k + 1);
      rb.add(TypeTag::E, c, 0, std::nullopt, {{3, 1}}, {{n, 1}}, fixed, free, eq, c);
      for (int q = 0; q <= std::min(k - 1, q_max); ++q) {
        if (q == k - 1 && !divides(rb.p, n)) continue;
        const int e = 3 * (k + q) + tail0;
        rb.add(TypeTag::E, c, 1, q, {{3, 1}}, {{n, 1}, {e, 1}}, fixed, free, eq, c);
      }
    }
  }
}

}  // namespace

std::vector<CatalogRow> catalog(std::uint32_t p, int k_max, int q_max, int prec) {
  const Field& f = Field::from_characteristic(p);
  RowBuilder rb{f, p, prec, {}};
  const BivarPoly x3y4 = mono(f, 3, 0) + mono(f, 0, 4), x3y5 = mono(f, 3, 0) + mono(f, 0, 5);
  auto a_rows = [&](bool char2) {
    for (int k = 1; k <= k_max; ++k) {
      const int n = 2 * k + 1;
      BivarPoly fixed = mono(f, 2, 0) + mono(f, 0, n);
      std::string eq = "x^2 + " + pw("y", n);
      if (!char2) {
        rb.add(TypeTag::A, 2 * k, std::nullopt, std::nullopt, {{2, 1}}, {{n, 1}}, fixed, {}, eq, 2 * k);
        continue;
      }
      rb.add(TypeTag::A, 2 * k, 0, std::nullopt, {{n, 1}}, {{2, 1}}, fixed, {}, eq, 2 * k);
      for (int q = 1; q < k && q <= q_max; ++q)
        rb.add(TypeTag::A, 2 * k, 1, q, {{n, 1}}, {{2, 1}, {2 * q + 1, 1}}, fixed, {mono(f, 1, 2 * k - q)},
               eq + " + eps*x*" + pw("y", 2 * k - q), 2 * k);
    }
  };

  if (p == 2) {
    a_rows(true);
    const BivarPoly e6free = mono(f, 2, 2);
    rb.add(TypeTag::E, 6, 0, std::nullopt, {{4, 1}}, {{3, 1}}, x3y4, {}, "x^3 + y^4", 6);
    rb.add(TypeTag::E, 6, 1, std::nullopt, {{4, 1}, {5, 1}}, {{3, 1}}, x3y4, {e6free}, "x^3 + y^4 + eps*x^2*y^2", 6);
    rb.add(TypeTag::E, 8, std::nullopt, std::nullopt, {{5, 1}}, {{3, 1}}, x3y5, {}, "x^3 + y^5", 8);
    const BivarPoly x3y7 = mono(f, 3, 0) + mono(f, 0, 7);
    rb.add(TypeTag::E, 12, 0, std::nullopt, {{3, 1}}, {{7, 1}}, x3y7, {}, "x^3 + y^7", 12);
    rb.add(TypeTag::E, 12, 1, std::nullopt, {{3, 1}}, {{7, 1}, {8, 1}}, x3y7, {mono(f, 2, 5)},
           "x^3 + y^7 + eps*x^2*y^5", 12);
    return rb.rows;
  }
  const BivarPoly x4y5 = mono(f, 4, 0) + mono(f, 0, 5);
  const std::string w12eq = "x^4 + y^5 + a*x^2*y^3";
  if (p == 3) {
    a_rows(false);
    rb.add(TypeTag::E, 6, 0, std::nullopt, {{3, 1}}, {{4, 1}}, x3y4, {}, "x^3 + y^4", 6);
    rb.add(TypeTag::E, 6, 1, std::nullopt, {{3, 1}, {5, 1}}, {{4, 1}}, x3y4, {mono(f, 2, 2)},
           "x^3 + y^4 + eps*x^2*y^2", 6);
    rb.add(TypeTag::E, 8, 0, std::nullopt, {{3, 1}}, {{5, 1}}, x3y5, {}, "x^3 + y^5", 8);
    rb.add(TypeTag::E, 8, 1, std::nullopt, {{3, 1}, {4, 1}}, {{5, 1}}, x3y5, {}, "x^3 + y^5", 8);
    rb.add(TypeTag::W, 12, 0, std::nullopt, {{4, 1}}, {{5, 1}}, x4y5, {mono(f, 2, 3)}, w12eq, 12);
    for (int q : {7, 11})
      rb.add(TypeTag::W, 12, 1, q, {{4, 1}}, {{5, 1}, {q, 1}}, x4y5, {mono(f, 2, 3)}, w12eq, 12);
    return rb.rows;
  }

  a_rows(false);
  rb.add(TypeTag::E, 6, std::nullopt, std::nullopt, {{3, 1}}, {{4, 1}}, x3y4, {}, "x^3 + y^4", 6);
  if (p == 5) {
    rb.add(TypeTag::E, 8, 0, std::nullopt, {{3, 1}}, {{5, 1}}, x3y5, {}, "x^3 + y^5", 8);
    rb.add(TypeTag::E, 8, 1, std::nullopt, {{3, 1}}, {{5, 1}, {7, 1}}, x3y5, {mono(f, 1, 4)},
           "x^3 + y^5 + eps*x*y^4", 8);
  } else {
    rb.add(TypeTag::E, 8, std::nullopt, std::nullopt, {{3, 1}}, {{5, 1}}, x3y5, {}, "x^3 + y^5", 8);
  }
  e_series(rb, k_max, q_max);
  rb.add(TypeTag::W, 12, 0, std::nullopt, {{4, 1}}, {{5, 1}}, x4y5, {mono(f, 2, 3)}, w12eq, 12);
  for (int q : {6, 7, 11}) {
    if (q == 6 && (p == 0 || p > 5)) continue;
    rb.add(TypeTag::W, 12, 1, q, {{4, 1}}, {{5, 1}, {q, 1}}, x4y5, {mono(f, 2, 3)}, w12eq, 12);
  }
  if (p != 7) {
    const BivarPoly x4y7 = mono(f, 4, 0) + mono(f, 0, 7);
    const std::vector<BivarPoly> c1{mono(f, 2, 4), mono(f, 2, 5)};
    const std::string eq = "x^4 + y^7 + c_1(y)*x^2*y^4";
    rb.add(TypeTag::W, 18, 0, std::nullopt, {{4, 1}}, {{7, 1}}, x4y7, c1, eq, 18);
    for (int q : {9, 13}) rb.add(TypeTag::W, 18, 1, q, {{4, 1}}, {{7, 1}, {q, 1}}, x4y7, c1, eq, 18);
  }
  for (int q = 1; q <= q_max; ++q) {
    const BivarPoly sq = (mono(f, 2, 0) + mono(f, 0, 3)).pow(2);
    rb.add(TypeTag::WSharp, 2 * q - 1, std::nullopt, q, {{4, 1}}, {{6, 1}, {2 * q + 5, 1}}, sq,
           {mono(f, 1, q + 4), mono(f, 1, q + 5)}, "(x^2 + y^3)^2 + c_1(y)*x*" + pw("y", q + 4), 2 * q + 14);
  }
  return rb.rows;
}

BivarPoly implicitize(const Branch& b) {
  const Field& f = b.field();
  for (const TruncSeries* s : {&b.x, &b.y})
    if (s->degree() >= s->prec())
      throw Error(ErrorCode::NotPolynomial, "coefficients reach the truncation t^" + std::to_string(s->prec()));
  if (b.multiplicity() < 1 || b.x.order_bound() == 0 || b.y.order_bound() == 0)
    throw Error(ErrorCode::NotInMaximalIdeal, "branch does not pass through the origin");
  int g = 0;
  for (const TruncSeries* s : {&b.x, &b.y})
    for (int i = 0; i <= s->degree(); ++i)
      if (!(*s)[i].is_zero()) g = std::gcd(g, i);
  if (g > 1) throw Error(ErrorCode::NotPrimitive, "every exponent is divisible by " + std::to_string(g));
  if (b.x.degree() < 0) return BivarPoly::x(f);
  if (b.y.degree() < 0) return BivarPoly::y(f);
  BivarPoly r = coordinate_resultant(b.x, b.y);
  BivarPoly::Exponent lead{-1, -1};
  for (const auto& [e, c] : r.terms())
    if (std::make_pair(e.second, e.first) > std::make_pair(lead.second, lead.first)) lead = e;
  return r.coeff(lead.first, lead.second).inverse() * r;
}

namespace {

TruncSeries embed_series(const TruncSeries& s, const Field& k) {
  if (&s.field() == &k) return s;
  std::vector<FieldElem> c;
  c.reserve(s.coeffs().size());
  for (const FieldElem& v : s.coeffs()) c.push_back(embed(v, k));
  return TruncSeries(k, std::move(c), s.prec());
}

// Gaussian elimination fed one equation at a time.
class IncrementalSolver {
 public:
  IncrementalSolver(const Field& k, int unknowns) : k_(k), n_(unknowns) {}

  // row: coefficients of the unknowns followed by the right-hand side.
  bool add(std::vector<FieldElem> row) {
    for (const auto& [col, piv] : pivots_) {
      if (row[col].is_zero()) continue;
      const FieldElem factor = row[col];
      for (int j = 0; j <= n_; ++j) row[j] -= factor * piv[j];
    }
    for (int col = 0; col < n_; ++col) {
      if (row[col].is_zero()) continue;
      const FieldElem inv = row[col].inverse();
      for (FieldElem& v : row) v *= inv;
      for (auto& [c2, piv] : pivots_) {
        if (piv[col].is_zero()) continue;
        const FieldElem factor = piv[col];
        for (int j = 0; j <= n_; ++j) piv[j] -= factor * row[j];
      }
      pivots_.emplace_back(col, std::move(row));
      return true;
    }
    return row[n_].is_zero();
  }

  std::vector<FieldElem> solution() const {
    std::vector<FieldElem> x(n_, k_.zero());
    for (const auto& [col, piv] : pivots_) x[col] = piv[n_];
    return x;
  }

 private:
  const Field& k_;
  int n_;
  std::vector<std::pair<int, std::vector<FieldElem>>> pivots_;
};

std::vector<FieldElem> scalar_candidates(const Field& f) {
  std::vector<FieldElem> out;
  if (f.is_finite()) {
    for (std::uint64_t i = 1; i < f.size(); ++i) out.push_back(f.element_at(i));
    return out;
  }
  for (auto [num, den] : {std::pair{1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {-1, 2}})
    out.push_back(f.from_rational(num, den));
  return out;
}

struct Attempt {
  int order = 0;
  std::vector<FieldElem> solved;
};

Attempt try_scalars(const CatalogRow& row, const TruncSeries& u0, const TruncSeries& v0, const FieldElem& alpha,
                    const FieldElem& beta, int N) {
  const Field& k = alpha.field();
  const TruncSeries u = alpha * embed_series(u0, k), v = embed(beta, k) * embed_series(v0, k);
  auto eval = [&](const BivarPoly& g) {
    TruncSeries acc(k, N - 1);
    for (const auto& [e, c] : g.terms()) acc += embed(c, k) * series_mul(u.pow(e.first), v.pow(e.second), N - 1);
    return acc;
  };
  const TruncSeries e0 = eval(row.equation.fixed);
  std::vector<TruncSeries> ei;
  for (const BivarPoly& g : row.equation.free_terms) ei.push_back(eval(g));
  const int n = static_cast<int>(ei.size());
  IncrementalSolver solver(k, n);
  Attempt a;
  for (a.order = 0; a.order < N; ++a.order) {
    std::vector<FieldElem> r;
    for (const TruncSeries& s : ei) r.push_back(s[a.order]);
    r.push_back(-e0[a.order]);
    if (!solver.add(std::move(r))) break;
  }
  a.solved = solver.solution();
  return a;
}

// Values of alpha cancelling the lowest-order part of the fixed equation.
std::vector<FieldElem> alpha_candidates(const BivarPoly& fixed, const TruncSeries& u, const TruncSeries& v,
                                        const FieldElem& beta) {
  const Field& f = u.field();
  const int ou = u.order_bound(), ov = v.order_bound();
  int low = -1;
  for (const auto& [e, c] : fixed.terms()) {
    const int o = e.first * ou + e.second * ov;
    if (low < 0 || o < low) low = o;
  }
  std::map<int, FieldElem> poly;  // power of alpha -> coefficient
  for (const auto& [e, c] : fixed.terms()) {
    if (e.first * ou + e.second * ov != low) continue;
    FieldElem w = c * beta.pow(e.second) * u[ou].pow(e.first) * v[ov].pow(e.second);
    auto [it, fresh] = poly.emplace(e.first, w);
    if (!fresh) it->second += w;
  }
  std::erase_if(poly, [](const auto& kv) { return kv.second.is_zero(); });
  if (poly.size() < 2) return {};
  if (poly.size() == 2) {
    const auto& [a1, c1] = *poly.begin();
    const auto& [a2, c2] = *poly.rbegin();
    const FieldElem target = -c1 / c2;
    auto roots = all_roots_in_field(target, a2 - a1);
    if (!roots.empty()) return roots;
    try {
      return {field_root(target, a2 - a1)};
    } catch (const Error&) {
      return {};
    }
  }
  std::vector<FieldElem> out;
  for (const FieldElem& a : scalar_candidates(f)) {
    FieldElem val = f.zero();
    for (const auto& [pw, c] : poly) val += c * a.pow(pw);
    if (val.is_zero()) out.push_back(a);
  }
  return out;
}

}  // namespace

ConsistencyResult consistency_check(const CatalogRow& row, int N) {
  if (N <= 0) N = 2 * row.conductor;
  const Field& f = row.param.field();
  // the row's parametrization is polynomial, so it extends exactly
  const TruncSeries px(f, row.param.x.truncate(row.param.x.degree()).coeffs(), N);
  const TruncSeries py(f, row.param.y.truncate(row.param.y.degree()).coeffs(), N);
  ConsistencyResult best;
  for (bool swapped : {false, true}) {
    const TruncSeries& u = swapped ? py : px;
    const TruncSeries& v = swapped ? px : py;
    for (const FieldElem& beta : scalar_candidates(f)) {
      for (const FieldElem& alpha : alpha_candidates(row.equation.fixed, u, v, beta)) {
        Attempt a = try_scalars(row, u, v, alpha, beta, N);
        if (a.order <= best.vanishing_order) continue;
        best.vanishing_order = a.order;
        best.swapped = swapped;
        best.alpha = alpha;
        best.beta = embed(beta, alpha.field());
        best.solved = std::move(a.solved);
        if (best.vanishing_order >= N) {
          best.consistent = true;
          best.detail = "vanishes mod t^" + std::to_string(N);
          return best;
        }
      }
    }
  }
  best.detail = std::string(to_string(ErrorCode::NoScalarSolution)) + ": best vanishing order " +
                std::to_string(best.vanishing_order) + " of " + std::to_string(N);
  return best;
}

SingularityType assign_type(int m, int n, int c, const ReductionResult& r, std::uint32_t p) {
  SingularityType t;
  t.characteristic = p;
  if (r.has_modulus()) {
    t.tag = TypeTag::NotSimple;
    t.condition = "modulus-witness";
    return t;
  }
  const bool res = !r.residuals.empty();
  const int res_exp = res ? r.residuals[0].exponent : 0, eps = res ? 1 : 0;
  auto out_of_range = [&](const std::string& what) {
    return Error(ErrorCode::ConductorOutOfTableRange,
                 what + " with conductor " + std::to_string(c) + " in characteristic " + std::to_string(p));
  };
  t.index = c;
  if (m == 2) {
    t.tag = TypeTag::A;
    if (p == 2) {
      t.epsilon = eps;
      if (res) t.q = (res_exp - 1) / 2;
    }
    return t;
  }
  if (m == 3) {
    t.tag = TypeTag::E;
    const bool small = c == 6 || c == 8;
    if (p == 3 && !small) throw out_of_range("m = 3");
    if (p == 2 && !small && c != 12) throw out_of_range("m = 3");
    if (!small && (c < 12 || (c % 6 != 0 && c % 6 != 2))) throw out_of_range("m = 3");
    if (p == 2 || p == 3) {
      if (!(p == 2 && c == 8)) t.epsilon = eps;
    } else if (c == 8) {
      if (p == 5) t.epsilon = eps;
    } else if (c >= 12) {
      const int k = c / 6, tail0 = c % 6 == 0 ? 2 : 4;
      t.epsilon = eps;
      if (res) t.q = (res_exp - tail0) / 3 - k;
    }
    return t;
  }
  if (m == 4 && n != 6) {
    if (c != 12 && c != 18) throw out_of_range("m = 4, n = " + std::to_string(n));
    t.tag = TypeTag::W;
    t.epsilon = eps;
    if (res) t.q = res_exp;
    return t;
  }
  if (m == 4) {
    if (c < 16 || c % 2 != 0) throw out_of_range("m = 4, n = 6");
    t.tag = TypeTag::WSharp;
    t.q = (c - 14) / 2;
    t.index = 2 * *t.q - 1;
    return t;
  }
  throw Error(ErrorCode::GateFailed, "multiplicity " + std::to_string(m) + " has no table row");
}

namespace {

Branch embed_branch(const Branch& b, const Field& k) { return Branch{embed_series(b.x, k), embed_series(b.y, k)}; }

void match_catalog(const Branch& b, ClassificationReport& rep) {
  const Field& f = b.field();
  const std::uint32_t p = f.characteristic();
  const int c = rep.conductor.total;
  const int k_max = rep.type.tag == TypeTag::A ? c / 2 : c / 6 + 1;
  const int q_max = rep.type.tag == TypeTag::WSharp ? *rep.type.q : k_max;
  std::vector<CatalogRow> rows = catalog(p, k_max, q_max, std::max(64, b.prec()));
  std::vector<const CatalogRow*> same;
  for (const CatalogRow& row : rows)
    if (row.type.same_class_name(rep.type)) same.push_back(&row);
  std::stable_partition(same.begin(), same.end(), [&](const CatalogRow* row) { return row->type == rep.type; });
  for (const CatalogRow* row : same) {
    const Branch target = f.is_finite() ? embed_branch(row->param, f) : row->param;
    if (!are_equivalent(b, target).equivalent) continue;
    rep.catalog_key = row->key();
    rep.catalog_equivalent_over_base = true;
    if (!(row->type == rep.type)) rep.note = "matched a row with different parameters";
    return;
  }
  if (!same.empty() && same.front()->type == rep.type) {
    rep.catalog_key = same.front()->key();
    rep.note = "row reached only after a field extension";
  } else {
    rep.note = "no catalog row with these parameters";
  }
}

}  // namespace

ClassificationReport classify_full(const Parametrization& psi) {
  ClassificationReport rep;
  rep.branches = static_cast<int>(psi.size());
  rep.conductor = conductor_vector(psi);
  rep.determinacy = determinacy_bound(psi);
  const std::uint32_t p = psi.field().characteristic();
  rep.type.characteristic = p;
  if (psi.size() > 1) {
    rep.note = "several branches: invariants and determinacy only";
    return rep;
  }
  const Branch& b = psi.branch(0);
  rep.semigroup = value_semigroup(b);
  const std::vector<int>& g = rep.semigroup->members;
  rep.m = g.size() > 1 ? g[1] : 1;
  if (rep.m == 1) {
    rep.type.tag = TypeTag::Smooth;
    return rep;
  }
  // n = min(Gamma \ mZ); every integer from the conductor on is a value
  auto it = std::find_if(g.begin(), g.end(), [&](int v) { return v % rep.m != 0; });
  rep.n = it != g.end() ? *it : rep.semigroup->conductor + 1;
  if (auto cond = simpleness_gate(rep.m, rep.n, p)) {
    rep.type.tag = TypeTag::NotSimple;
    rep.type.condition = *cond;
    return rep;
  }
  rep.reduction = reduce(b);
  rep.type = assign_type(rep.m, rep.n, rep.semigroup->conductor, *rep.reduction, p);
  if (rep.type.tag == TypeTag::NotSimple) return rep;
  match_catalog(b, rep);
  return rep;
}

}  // namespace singclass
