#include "singclass/normalform.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace singclass {

namespace {

// State of a reduction: a branch whose fixed coordinate is t^e and whose free
// coordinate starts with t^f.
struct Engine {
  const Field& field;
  Branch cur;
  Transcript transcript;
  bool ynorm;
  int e, f;

  const TruncSeries& fixed() const { return ynorm ? cur.y : cur.x; }
  const TruncSeries& free() const { return ynorm ? cur.x : cur.y; }

  LeftMove move(const BivarPoly& add_fixed, const BivarPoly& add_free) const {
    const BivarPoly X = BivarPoly::x(field), Y = BivarPoly::y(field);
    return ynorm ? LeftMove{X + add_free, Y + add_fixed} : LeftMove{X + add_fixed, Y + add_free};
  }

  void step(std::string label, const TruncSeries& phi, const LeftMove& left) {
    cur = apply(cur, phi, left);
    transcript.push_back({std::move(label), phi, left});
  }

  void left_step(std::string label, const LeftMove& left) {
    step(std::move(label), TruncSeries::identity(field, cur.prec()), left);
  }

  // Reparametrize so that the fixed coordinate is t^e again.
  void renormalize() {
    const TruncSeries& F = fixed();
    if (F.agrees_with(TruncSeries::monomial(field, e, field.one(), F.prec()))) return;
    const TruncSeries u = F.shift_down(e);
    if (!u[0].is_one()) throw Error(ErrorCode::InvalidArgument, "fixed coordinate lost its leading coefficient");
    const TruncSeries w = series_root(u, e).shift_up(1);
    step("renormalize", series_reverse(w), LeftMove::identity(field));
  }

  // First-order change of the free coordinate caused by adding g to the fixed
  // coordinate and reparametrizing back: -(1/e) t^{1-e} V'(t) g(t).
  TruncSeries fixed_effect(const TruncSeries& g) const {
    const TruncSeries dv = free().derivative();
    const TruncSeries gs = g.shift_down(e - 1);
    return -(field.from_int(e).inverse()) * (dv * gs);
  }
};

struct Candidate {
  bool on_fixed;
  int gamma;
};

}  // namespace

namespace {

ReductionResult run_engine(const NormalPosition& np, const Branch& start, int N, ReductionResult out, int input_prec) {
  const Field& field = start.field();
  const bool ynorm = np.orientation == Orientation::YNormalized;
  Engine eng{field, start, np.transcript, ynorm, ynorm ? np.n : np.m, ynorm ? np.m : np.n};
  const int e = eng.e, f = eng.f;
  auto need = [&](int l) {
    if (eng.free().prec() < l || eng.fixed().prec() < l) {
      throw Error(ErrorCode::TruncationTooSmall,
                  "precision exhausted at t^" + std::to_string(l) + "; retry with truncation " +
                      std::to_string(2 * std::max(input_prec, N)));
    }
  };

  std::set<int> residual_orders;
  int attempts_here = 0, last_l = -1, total_steps = 0;
  for (int l = f + 1; l <= N;) {
    need(l);
    const TruncSeries& V = eng.free();
    if (V[l].is_zero() || residual_orders.count(l)) {
      ++l;
      continue;
    }
    if (++total_steps > 40 * N) {
      throw Error(ErrorCode::TruncationTooSmall, "reduction does not settle below t^" + std::to_string(N));
    }
    if (l == last_l) {
      if (++attempts_here > 12) {
        throw Error(ErrorCode::TruncationTooSmall, "reduction does not settle at t^" + std::to_string(l));
      }
    } else {
      last_l = l;
      attempts_here = 0;
    }
    const FieldElem b = V[l];
    // fixed moves of order up to l + e - f reach t^l
    const int reach = std::max(N, l + e - f);
    const RingBasis rb(eng.cur, std::min(reach, eng.cur.prec()), true);
    if (auto it = rb.elements().find(l); it != rb.elements().end()) {
      eng.left_step("free -= c*g_" + std::to_string(l), eng.move(BivarPoly(field), -b * it->second.expr));
      continue;
    }

    // A gap: look for a combination of first-order effects with leading order exactly l.
    std::vector<Candidate> cands;
    std::vector<std::vector<FieldElem>> effects;
    for (const auto& [gamma, el] : rb.elements()) {
      if (gamma > f && gamma < l) {
        cands.push_back({false, gamma});
        effects.push_back(el.series.truncate(l).coeffs());
      }
    }
    // Fixed moves of small shift gamma - e leave second-order terms at
    // f + 2(gamma - e), possibly below l; prefer the largest shifts.
    for (auto it = rb.elements().rbegin(); it != rb.elements().rend(); ++it) {
      const auto& [gamma, el] = *it;
      if (gamma < e + 1 || f + gamma - e > l) continue;
      TruncSeries d = eng.fixed_effect(el.series);
      if (d.prec() < l) continue;
      cands.push_back({true, gamma});
      effects.push_back(d.truncate(l).coeffs());
    }
    // Echelon with combination tracking.
    const size_t nc = cands.size();
    std::map<int, std::pair<std::vector<FieldElem>, std::vector<FieldElem>>> rows;
    std::optional<std::pair<std::vector<FieldElem>, std::vector<FieldElem>>> hit;
    for (size_t i = 0; i < nc && !hit; ++i) {
      std::vector<FieldElem> v = effects[i], comb(nc, field.zero());
      comb[i] = field.one();
      int o = 0;
      while (true) {
        while (o <= l && v[o].is_zero()) ++o;
        if (o > l) break;
        auto r = rows.find(o);
        if (r == rows.end()) break;
        const FieldElem c = v[o] / r->second.first[o];
        for (int j = o; j <= l; ++j) v[j] -= c * r->second.first[j];
        for (size_t j = 0; j < nc; ++j) comb[j] -= c * r->second.second[j];
      }
      if (o > l) continue;
      if (o == l) hit = std::make_pair(v, comb);
      rows.emplace(o, std::make_pair(std::move(v), std::move(comb)));
    }
    if (!hit) {
      if (eng.cur.prec() < reach) need(reach);
      residual_orders.insert(l);
      ++l;
      continue;
    }
    const FieldElem s = -b / hit->first[l];
    BivarPoly add_fixed(field), add_free(field);
    for (size_t i = 0; i < nc; ++i) {
      if (hit->second[i].is_zero()) continue;
      const BivarPoly& expr = rb.elements().at(cands[i].gamma).expr;
      (cands[i].on_fixed ? add_fixed : add_free) += (s * hit->second[i]) * expr;
    }
    eng.left_step("kill t^" + std::to_string(l), eng.move(add_fixed, add_free));
    eng.renormalize();
    l = f + 1;  // second-order terms may have touched lower orders
  }

  need(N);
  if (!eng.fixed().agrees_with(TruncSeries::monomial(field, e, field.one(), N), N)) {
    throw Error(ErrorCode::InvalidArgument, "fixed coordinate drifted during reduction");
  }
  std::vector<int> res;
  for (int l = f + 1; l <= N; ++l) {
    if (!eng.free()[l].is_zero()) res.push_back(l);
  }
  bool first_normalized = false;
  if (!res.empty()) {
    const FieldElem b = eng.free()[res[0]];
    if (b.is_one()) {
      first_normalized = true;
    } else if (auto lambda = root_in_field(b.inverse(), res[0] - f)) {
      const TruncSeries phi = TruncSeries::monomial(field, 1, *lambda, eng.cur.prec());
      eng.step("scale t", phi,
               eng.move(BivarPoly::monomial(field, ynorm ? 0 : 1, ynorm ? 1 : 0, lambda->pow(-e) - field.one()),
                        BivarPoly::monomial(field, ynorm ? 1 : 0, ynorm ? 0 : 1, lambda->pow(-f) - field.one())));
      first_normalized = true;
    }
  }
  out.truncation = N;
  out.normal_form = jet(eng.cur, N);
  out.transcript = std::move(eng.transcript);
  for (size_t i = 0; i < res.size(); ++i) {
    out.residuals.push_back({res[i], out.free()[res[i]], i == 0 && first_normalized});
  }
  return out;
}

}  // namespace

ReductionResult reduce(const Branch& input, int N) {
  if (N == 0) N = input.multiplicity() == 1 ? 2 : value_semigroup(input).conductor + 2;
  if (input.prec() < N) {
    throw Error(ErrorCode::TruncationTooSmall,
                "branch known to t^" + std::to_string(input.prec()) + ", need t^" + std::to_string(N));
  }
  // Work on a jet a little above N; renormalizing the fixed coordinate may
  // cost precision, so widen the margin on demand.
  for (int slack = 8;; slack *= 2) {
    const int work = std::min(input.prec(), N + slack);
    try {
      NormalPosition np = normal_position(jet(input, work));
      if (np.status) {
        throw Error(*np.status, "orders " + std::to_string(np.m) + " and " + std::to_string(np.n) +
                                    " are both divisible by the characteristic");
      }
      ReductionResult out{np.branch, {}, {}};
      out.m = np.m;
      out.n = np.n;
      out.orientation = np.orientation;
      if (np.m == 1) {
        out.truncation = N;
        out.normal_form = jet(np.branch, N);
        out.transcript = np.transcript;
        return out;
      }
      return run_engine(np, np.branch, N, out, input.prec());
    } catch (const Error& err) {
      if (err.code() != ErrorCode::TruncationTooSmall || work == input.prec()) throw;
    }
  }
}

namespace {

TranscriptStep scaling_step(const Field& field, const FieldElem& lambda, bool ynorm, int e, int f, int prec) {
  const BivarPoly X = BivarPoly::x(field), Y = BivarPoly::y(field);
  const FieldElem fixed_scale = lambda.pow(-e), free_scale = lambda.pow(-f);
  LeftMove left = ynorm ? LeftMove{free_scale * X, fixed_scale * Y} : LeftMove{fixed_scale * X, free_scale * Y};
  return {"scale t", TruncSeries::monomial(field, 1, lambda, prec), left};
}

}  // namespace

EquivalenceResult are_equivalent(const Branch& a, const Branch& b) {
  if (&a.field() != &b.field()) throw Error(ErrorCode::FieldMismatch, "branches over different fields");
  const Field& field = a.field();
  EquivalenceResult out;
  if (a.multiplicity() != b.multiplicity()) {
    out.reason = "multiplicities " + std::to_string(a.multiplicity()) + " and " + std::to_string(b.multiplicity()) + " differ";
    return out;
  }
  const ValueSemigroup ga = value_semigroup(a), gb = value_semigroup(b);
  if (ga.members != gb.members || ga.conductor != gb.conductor) {
    out.reason = "semigroup mismatch: " + ga.to_string() + " and " + gb.to_string() + " differ";
    return out;
  }
  const int d = determinacy_bound(Parametrization(a)).d.at(0);
  const int N = std::max(d + 1, ga.conductor + 2);
  const ReductionResult ra = reduce(a, N), rb = reduce(b, N);
  out.truncation = N;
  if (ra.orientation != rb.orientation || ra.m != rb.m || ra.n != rb.n) {
    out.reason = "normal positions differ";
    return out;
  }
  std::vector<int> ea, eb;
  for (const auto& r : ra.residuals) ea.push_back(r.exponent);
  for (const auto& r : rb.residuals) eb.push_back(r.exponent);
  if (ea != eb) {
    out.reason = "normal forms have different residual terms";
    return out;
  }
  const int e = ra.fixed_order(), f = ra.free_order();
  std::vector<FieldElem> lambdas{field.one()};
  if (!ea.empty()) lambdas = all_roots_in_field(rb.residuals[0].coefficient / ra.residuals[0].coefficient, ea[0] - f);
  for (const FieldElem& lambda : lambdas) {
    bool ok = true;
    for (size_t i = 0; i < ea.size() && ok; ++i) {
      ok = ra.residuals[i].coefficient * lambda.pow(ea[i] - f) == rb.residuals[i].coefficient;
    }
    if (!ok) continue;
    out.equivalent = true;
    out.first_moves = ra.transcript;
    if (!lambda.is_one()) {
      out.first_moves.push_back(
          scaling_step(field, lambda, ra.orientation == Orientation::YNormalized, e, f, ra.normal_form.prec()));
    }
    out.second_moves = rb.transcript;
    out.reason = "same normal form";
    if (!verify_certificate(a, b, out)) throw Error(ErrorCode::InvalidArgument, "equivalence certificate failed to replay");
    return out;
  }
  out.reason = "residual coefficients differ by no admissible scaling";
  return out;
}

bool verify_certificate(const Branch& a, const Branch& b, const EquivalenceResult& r) {
  if (!r.equivalent) return false;
  const Branch ra = replay(a, r.first_moves), rb = replay(b, r.second_moves);
  if (std::min(ra.prec(), rb.prec()) < r.truncation) return false;
  return ra.x.agrees_with(rb.x, r.truncation) && ra.y.agrees_with(rb.y, r.truncation);
}

namespace {

// k-jets over F_p as small integer vectors; deliberately separate from the
// series arithmetic used by the reduction engine.
using Jet = std::vector<int>;

struct JetOps {
  int p, k;

  Jet mul(const Jet& a, const Jet& b) const {
    Jet out(k + 1, 0);
    for (int i = 0; i <= k; ++i) {
      if (!a[i]) continue;
      for (int j = 0; i + j <= k; ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    return out;
  }
  Jet one() const {
    Jet o(k + 1, 0);
    o[0] = 1;
    return o;
  }
  Jet pow(const Jet& a, int e) const {
    Jet r = one();
    for (int i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  Jet compose(const Jet& s, const Jet& phi) const {
    Jet acc(k + 1, 0);
    for (int i = k; i >= 0; --i) {
      acc = mul(acc, phi);
      acc[0] = (acc[0] + s[i]) % p;
    }
    return acc;
  }
  Jet add_scaled(const Jet& a, const Jet& b, int c) const {
    Jet out(k + 1);
    for (int i = 0; i <= k; ++i) out[i] = (a[i] + c * b[i]) % p;
    return out;
  }
  int order(const Jet& a) const {
    for (int i = 0; i <= k; ++i) {
      if (a[i]) return i;
    }
    return k + 1;
  }
};

std::string encode(const Jet& x, const Jet& y) {
  std::string s(x.begin(), x.end());
  s.append(y.begin(), y.end());
  return s;
}

Jet to_jet(const TruncSeries& s, int k, int p) {
  Jet j(k + 1, 0);
  for (int i = 0; i <= k; ++i) j[i] = static_cast<int>(s[i].residue() % p);
  return j;
}

}  // namespace

bool brute_orbit_oracle(const Branch& a, const Branch& b, int k, std::uint64_t max_nodes) {
  const Field& field = a.field();
  if (field.kind() != Field::Kind::Prime) throw Error(ErrorCode::InvalidArgument, "orbit search needs a prime field");
  if (&b.field() != &field) throw Error(ErrorCode::FieldMismatch, "branches over different fields");
  const int p = static_cast<int>(field.characteristic());
  const JetOps ops{p, k};
  const Jet tx = to_jet(a.x, k, p), ty = to_jet(a.y, k, p);
  const std::string target = encode(to_jet(b.x, k, p), to_jet(b.y, k, p));

  std::vector<Jet> right;  // reparametrizations
  for (int c = 2; c < p; ++c) {
    Jet phi(k + 1, 0);
    phi[1] = c;
    right.push_back(phi);
  }
  for (int j = 2; j <= k; ++j) {
    for (int c = 1; c < p; ++c) {
      Jet phi(k + 1, 0);
      phi[1] = 1;
      phi[j] = c;
      right.push_back(phi);
    }
  }

  std::unordered_set<std::string> seen{encode(tx, ty)};
  std::deque<std::pair<Jet, Jet>> queue{{tx, ty}};
  auto visit = [&](Jet x, Jet y) {
    std::string key = encode(x, y);
    if (seen.insert(key).second) {
      if (seen.size() > max_nodes) {
        throw Error(ErrorCode::OrbitBudgetExceeded, "orbit exceeds " + std::to_string(max_nodes) + " jets");
      }
      queue.emplace_back(std::move(x), std::move(y));
    }
  };
  if (encode(tx, ty) == target) return true;
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (const Jet& phi : right) visit(ops.compose(x, phi), ops.compose(y, phi));
    visit(y, x);
    for (int c = 1; c < p; ++c) {
      if (c > 1) {
        visit(ops.add_scaled(Jet(k + 1, 0), x, c), y);
        visit(x, ops.add_scaled(Jet(k + 1, 0), y, c));
      }
      visit(ops.add_scaled(x, y, c), y);
      visit(x, ops.add_scaled(y, x, c));
      const int ox = ops.order(x), oy = ops.order(y);
      for (int al = 0; al * ox <= k; ++al) {
        for (int be = 0; al * ox + be * oy <= k; ++be) {
          if (al + be < 2) continue;
          const Jet mono = ops.mul(ops.pow(x, al), ops.pow(y, be));
          visit(ops.add_scaled(x, mono, c), y);
          visit(x, ops.add_scaled(y, mono, c));
        }
      }
    }
    if (seen.count(target)) return true;
  }
  return false;
}

}  // namespace singclass
