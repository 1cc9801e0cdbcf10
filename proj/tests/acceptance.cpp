// Acceptance run: one PASS/FAIL line per criterion, with a time budget each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "singclass/classify.hpp"
#include "singclass/invariants.hpp"
#include "singclass/normalform.hpp"
#include "singclass/verify.hpp"
#include "test_support.hpp"

using namespace singclass;
using singclass::testing::random_branch_series;
using singclass::testing::random_elem;
using singclass::testing::random_series;
using singclass::testing::series_from;

namespace {

// wall-clock budgets in seconds
constexpr double kAnchorBudget = 1.0;
constexpr double kSymmetryBudget = 60.0;
constexpr double kDeterminacyBudget = 120.0;
constexpr double kLemmaBudget = 60.0;
constexpr double kTablesBudget = 300.0;
constexpr double kGateBudget = 60.0;
constexpr double kOracleBudget = 600.0;
constexpr double kImplicitBudget = 10.0;

struct Outcome {
  bool ok = true;
  std::vector<std::string> lines;

  void fail(const std::string& why) {
    ok = false;
    lines.push_back("FAIL " + why);
  }
  void note(const std::string& s) { lines.push_back(s); }
  void expect(bool cond, const std::string& what) {
    if (cond)
      note("ok   " + what);
    else
      fail(what);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Branch br(const Field& f, std::initializer_list<std::pair<int, long>> x, std::initializer_list<std::pair<int, long>> y,
          int prec = 64) {
  return Branch{series_from(f, x, prec), series_from(f, y, prec)};
}

const std::vector<const Field*>& prime_fields() {
  static const std::vector<const Field*> fs{&Field::rationals(), &Field::prime(2), &Field::prime(3), &Field::prime(5),
                                            &Field::prime(7)};
  return fs;
}

Branch polynomial_jet(const Branch& b, int k) {
  return Branch{TruncSeries(b.field(), b.x.truncate(k).coeffs(), b.prec()),
                TruncSeries(b.field(), b.y.truncate(k).coeffs(), b.prec())};
}

// Gaps of a single branch from the rank of the monomial images in K[t]/t^P.
// No gap lies beyond a window of m consecutive values, m the multiplicity.
std::vector<int> gaps_by_rank(const Branch& b) {
  using singclass::testing::reduce_row;
  using singclass::testing::Vec;
  const int m = b.multiplicity();
  for (int P = 24;; P *= 2) {
    if (P > b.prec()) throw std::runtime_error("gap oracle ran past the truncation");
    std::map<int, Vec> rows;
    const TruncSeries x = b.x.truncate(P - 1), y = b.y.truncate(P - 1);
    for (int a = 0; a * m < P; ++a)
      for (int c = 0; (a + c) * m < P; ++c) {
        Vec v = (x.pow(a) * y.pow(c)).truncate(P - 1).coeffs();
        v.resize(P, b.field().zero());
        const int lead = reduce_row(v, rows);
        if (lead >= 0) rows.emplace(lead, v);
      }
    std::vector<int> gaps;
    int run = 0;
    for (int v = 0; v < P; ++v) {
      if (rows.count(v)) {
        if (++run == m) return gaps;
      } else {
        run = 0;
        gaps.push_back(v);
      }
    }
  }
}

// 1: conductor anchors

Outcome anchors() {
  Outcome o;
  const Field& q = Field::rationals();
  auto timed = [&](const std::string& what, const std::function<bool()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool ok = body();
    const double s = seconds_since(t0);
    std::ostringstream os;
    os << what << " (" << s << " s)";
    o.expect(ok && s < kAnchorBudget, os.str());
  };
  timed("(t^4, t^6+t^7): c = 16, delta = 8", [&] {
    ValueSemigroup g = value_semigroup(br(q, {{4, 1}}, {{6, 1}, {7, 1}}));
    return g.conductor == 16 && g.delta == 8;
  });
  timed("(t^2, t^5): c = 4", [&] { return value_semigroup(br(q, {{2, 1}}, {{5, 1}})).conductor == 4; });
  timed("(t^3, t) + (t^5, t): conductor vector (3, 3)", [&] {
    Parametrization psi(q, {br(q, {{3, 1}}, {{1, 1}}), br(q, {{5, 1}}, {{1, 1}})});
    return conductor_vector(psi).c == std::vector<int>{3, 3};
  });
  return o;
}

// 2: c = 2 delta

Outcome symmetry() {
  Outcome o;
  std::mt19937_64 rng(2002);
  int single = 0, multi = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Field& f = *prime_fields()[trial % 5];
    const int m = 1 + trial % 6;
    auto [x, y] = random_branch_series(f, rng, m, 14, 160, trial % 3 == 0);
    const Branch b{x, y};
    const ValueSemigroup g = value_semigroup(b);
    const std::vector<int> gaps = gaps_by_rank(b);
    const int delta = static_cast<int>(gaps.size());
    const int c = gaps.empty() ? 0 : gaps.back() + 1;
    if (g.conductor != c || g.delta != delta || c != 2 * delta) {
      o.fail(f.name() + " " + b.to_string() + ": c = " + std::to_string(g.conductor) +
             ", gaps by rank = " + std::to_string(delta));
      continue;
    }
    ++single;
  }
  o.expect(single == 200, std::to_string(single) + "/200 branches with c = 2 delta (delta by rank)");

  for (int trial = 0, drawn = 0; drawn < 50; ++trial) {
    const Field& f = *prime_fields()[trial % 5];
    const int r = 2 + static_cast<int>(rng() % 2);
    std::vector<Branch> bs;
    for (int i = 0; i < r; ++i) {
      const int m = 1 + static_cast<int>(rng() % 3);
      auto [x, y] = random_branch_series(f, rng, m, 6, 80, rng() % 2 == 0);
      bs.push_back(polynomial_jet(Branch{x, y}, 6));
    }
    const Parametrization psi(f, bs);
    ConductorVector cv;
    try {
      cv = conductor_vector(psi);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BranchesCoincide) continue;
      throw Error(e.code(), psi.to_string() + ": " + e.what());
    }
    ++drawn;
    const int delta = singclass::testing::multi_branch_delta(psi);
    if (cv.total != 2 * delta) {
      o.fail(f.name() + " " + psi.to_string() + ": |c| = " + std::to_string(cv.total) +
             ", delta by rank = " + std::to_string(delta));
      continue;
    }
    ++multi;
  }
  o.expect(multi == 50, std::to_string(multi) + "/50 configurations with |c| = 2 delta_total");
  return o;
}

// 3: determinacy

// All tails of two extra orders above (k1, k2) over F_3 on the pair of lines;
// two smooth branches are equivalent exactly when they meet with the same
// multiplicity, so the jet determines the germ iff every tail keeps i = 3.
struct JetExperiment {
  int total = 0, equivalent = 0;
  std::string witness;
};

JetExperiment pair_of_lines_jet(int k1, int k2) {
  const Field& f = Field::prime(3);
  const int prec = 12;
  const Branch base1 = br(f, {{3, 1}}, {{1, 1}}, prec), base2 = br(f, {{5, 1}}, {{1, 1}}, prec);
  JetExperiment out;
  bool finite_witness = false;
  for (int code = 0; code < 6561; ++code) {
    int c = code;
    auto digit = [&] {
      const int d = c % 3;
      c /= 3;
      return f.from_int(d);
    };
    auto tail = [&](const Branch& b, int k) {
      Branch t = polynomial_jet(b, k);
      for (int i = k + 1; i <= k + 2; ++i) {
        t.x = t.x.with_coeff(i, digit());
        t.y = t.y.with_coeff(i, digit());
      }
      return t;
    };
    const Branch a = tail(base1, k1), b = tail(base2, k2);
    ++out.total;
    int i = -1;
    try {
      i = intersection_multiplicity(a, b);
    } catch (const Error&) {
    }
    if (i == 3)
      ++out.equivalent;
    else if (out.witness.empty() || (finite_witness == false && i > 0)) {
      finite_witness = i > 0;
      out.witness = a.to_string() + " + " + b.to_string() + " meet with i = " + (i < 0 ? "inf" : std::to_string(i));
    }
  }
  return out;
}

Outcome determinacy() {
  Outcome o;
  std::mt19937_64 rng(3003);
  int checked = 0, attempts = 0;
  while (checked < 100 && attempts < 2000) {
    ++attempts;
    const Field& f = *prime_fields()[attempts % 5];
    const int m = 2 + static_cast<int>(rng() % 3);
    auto [x, y] = random_branch_series(f, rng, m, 10, 64, rng() % 2 == 0);
    const Branch a{x, y};
    int d;
    try {
      const ClassificationReport rep = classify_full(Parametrization(a));
      if (rep.type.tag == TypeTag::NotSimple || rep.type.tag == TypeTag::Unclassified) continue;
      d = rep.determinacy.d[0];
    } catch (const Error&) {
      continue;
    }
    Branch b1 = polynomial_jet(a, d), b2 = b1;
    for (int i = d + 1; i <= d + 6; ++i) {
      b1.x = b1.x.with_coeff(i, random_elem(f, rng));
      b1.y = b1.y.with_coeff(i, random_elem(f, rng));
      b2.x = b2.x.with_coeff(i, random_elem(f, rng));
      b2.y = b2.y.with_coeff(i, random_elem(f, rng));
    }
    const EquivalenceResult r = are_equivalent(b1, b2);
    if (!r.equivalent) o.fail(f.name() + " tails above d = " + std::to_string(d) + " differ: " + r.reason);
    ++checked;
  }
  o.expect(checked == 100, std::to_string(checked) + "/100 simple branches: tails above d are equivalent");

  const Field& q = Field::rationals();
  const Branch a5 = br(q, {{2, 1}}, {{5, 1}}), a7 = br(q, {{2, 1}}, {{7, 1}});
  o.expect(polynomial_jet(a5, 4).x == polynomial_jet(a7, 4).x && polynomial_jet(a5, 4).y == polynomial_jet(a7, 4).y &&
               !are_equivalent(a5, a7).equivalent,
           "(t^2, t^5) and (t^2, t^7) share the 4-jet and are inequivalent");

  const Parametrization lines(q, {br(q, {{3, 1}}, {{1, 1}}), br(q, {{5, 1}}, {{1, 1}})});
  o.expect(determinacy_bound(lines).d == std::vector<int>{3, 3}, "pair of lines: determinacy bound (3, 3)");
  struct Claim {
    int k1, k2;
    bool determined;
  };
  for (const Claim& cl : {Claim{3, 3, true}, Claim{3, 2, true}, Claim{2, 2, false}}) {
    const JetExperiment e = pair_of_lines_jet(cl.k1, cl.k2);
    const bool determined = e.equivalent == e.total;
    std::string what = "(" + std::to_string(cl.k1) + "," + std::to_string(cl.k2) + ")-jet " +
                       (cl.determined ? "determines" : "does not determine") + " the pair of lines: " +
                       std::to_string(e.equivalent) + "/" + std::to_string(e.total) + " tails over F_3 equivalent";
    if (!e.witness.empty()) what += "; e.g. " + e.witness;
    o.expect(determined == cl.determined, what);
  }
  // the other order of the branches, for the record
  const JetExperiment swapped = pair_of_lines_jet(2, 3);
  o.note("info (2,3)-jet: " + std::to_string(swapped.equivalent) + "/" + std::to_string(swapped.total) +
         " tails equivalent" + (swapped.witness.empty() ? "" : "; e.g. " + swapped.witness));
  return o;
}

// 4: maximal contact

Outcome lemmas() {
  Outcome o;
  std::mt19937_64 rng(4004);
  int smooth = 0, mt2 = 0, big = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Field& f = *prime_fields()[trial % 5];
    auto [x1, y1] = random_branch_series(f, rng, 1, 6, 40, true);
    auto [x2, y2] = random_branch_series(f, rng, 1, 6, 40, true);
    const int share = static_cast<int>(rng() % 6);
    for (int i = 0; i <= share; ++i) y2 = y2.with_coeff(i, y1[i]);
    const Branch a = polynomial_jet(Branch{x1, y1}, 6), b = polynomial_jet(Branch{x2, y2}, 6);
    if (a.y == b.y) {
      --trial;
      continue;
    }
    const int beta = max_contact(Parametrization(f, {a, b})), i = intersection_multiplicity(a, b);
    if (beta == i)
      ++smooth;
    else
      o.fail(f.name() + " " + a.to_string() + " + " + b.to_string() + ": beta = " + std::to_string(beta) +
             ", i = " + std::to_string(i));
  }
  o.expect(smooth == 100, std::to_string(smooth) + "/100 smooth pairs with beta_1 = i");

  for (int trial = 0; trial < 200; ++trial) {
    const Field& f = *prime_fields()[trial % 5];
    const int m = trial < 100 ? 2 : 3 + trial % 2;
    auto [x, y] = random_branch_series(f, rng, m, 10, 64, trial % 3 == 0);
    const Parametrization psi(Branch{x, y});
    const int c = value_semigroup(psi.branch(0)).conductor, beta = max_contact(psi);
    const bool ok = m == 2 ? c == beta - 1 : c > beta;
    if (!ok) {
      o.fail(f.name() + " " + psi.to_string() + ": c = " + std::to_string(c) + ", beta = " + std::to_string(beta));
      continue;
    }
    (m == 2 ? mt2 : big)++;
  }
  o.expect(mt2 == 100, std::to_string(mt2) + "/100 multiplicity 2 branches with c = beta_1 - 1");
  o.expect(big == 100, std::to_string(big) + "/100 multiplicity 3, 4 branches with c > beta_1");
  return o;
}

// 5: tables

Outcome tables() {
  Outcome o;
  VerifyOptions opt;
  opt.k_max = 6;
  opt.q_max = 6;
  const TablesReport rep = verify_tables({0, 2, 3, 5, 7, 11, 13}, opt);
  for (const CharacteristicReport& c : rep.characteristics) {
    std::vector<std::string> bad;
    for (const RowCheck& r : c.rows) {
      if (r.hard_ok()) continue;
      std::string why = r.key + " (";
      if (!r.conductor_ok) why += "conductor ";
      if (!r.round_trip_ok) why += "round trip -> " + r.round_trip_detail + " ";
      if (!r.consistent) why += "equation to O(t^" + std::to_string(r.vanishing_order) + ") ";
      why.back() = ')';
      bad.push_back(why);
    }
    bool gate_ok = true;
    for (const GateCheck& g : c.gate) gate_ok = gate_ok && g.ok;
    std::string line = "p = " + std::to_string(c.p) + ": " + std::to_string(c.rows.size() - bad.size()) + "/" +
                       std::to_string(c.rows.size()) + " rows pass";
    if (!gate_ok) line += ", gate sweep disagrees";
    o.expect(bad.empty() && gate_ok, line);
    for (const std::string& b : bad) o.note("       " + b);
    if (c.row_set_ok) {
      std::string rs = "p = " + std::to_string(c.p) + ": catalog row set equals the printed table";
      for (const auto& k : c.missing_rows) rs += "; missing " + k;
      for (const auto& k : c.extra_rows) rs += "; extra " + k;
      o.expect(*c.row_set_ok, rs);
    }
  }
  return o;
}

// 6: simpleness gate

Outcome gate() {
  Outcome o;
  struct Rep {
    std::string condition;
    int m, n;
    std::uint32_t p;
  };
  for (const Rep& r : {Rep{"i", 5, 6, 0}, Rep{"ii", 4, 5, 2}, Rep{"iii", 4, 9, 0}, Rep{"iv", 4, 7, 7},
                       Rep{"v", 3, 7, 3}, Rep{"vi", 3, 8, 2}}) {
    const Field& f = r.p ? Field::prime(r.p) : Field::rationals();
    const SingularityType t = classify_full(Parametrization(br(f, {{r.m, 1}}, {{r.n, 1}}))).type;
    o.expect(t.tag == TypeTag::NotSimple && t.condition == r.condition,
             "(t^" + std::to_string(r.m) + ", t^" + std::to_string(r.n) + ") over " + f.name() + " -> " + t.name());
  }
  std::mt19937_64 rng(6006);
  const Field& f7 = Field::prime(7);
  // with x = t^4 the coefficients a_9, a_10 of y survive every move up to
  // scaling, and a_10^2 / a_9^3 is the modulus; generic means a_9 a_10 != 0
  int moduli = 0, matched = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const bool generic = trial < 20;
    Branch b{TruncSeries::monomial(f7, 4, f7.one(), 64), random_series(f7, rng, 7, 20, 64)};
    b.y = b.y.with_coeff(7, f7.one());
    if (generic)
      for (int e : {9, 10}) b.y = b.y.with_coeff(e, random_elem(f7, rng, true));
    const ReductionResult red = reduce(b);
    const bool expect = !b.y[9].is_zero() && !b.y[10].is_zero();
    if (generic) {
      if (red.has_modulus())
        ++moduli;
      else
        o.note("       no modulus: " + b.to_string() + " -> " + red.normal_form.to_string());
    } else if (red.has_modulus() == expect) {
      ++matched;
    } else {
      o.note("       " + b.to_string() + " -> " + red.normal_form.to_string());
    }
  }
  o.expect(matched == 40, std::to_string(matched) + "/40 unconstrained tails: a modulus exactly when a_9 a_10 != 0");
  o.expect(moduli == 20, std::to_string(moduli) + "/20 random generic (t^4, t^7 + ...) over F_7 keep a residual modulus");
  return o;
}

// 7: orbit oracle

// Primitive polynomial branch of degree <= k over a prime field, determined
// by its k-jet and outside the case p | m, p | n.
std::optional<Branch> random_micro(const Field& f, std::mt19937_64& rng, int k) {
  const int p = static_cast<int>(f.characteristic());
  const int m = 2 + static_cast<int>(rng() % 2);
  const Branch b{TruncSeries(f, random_series(f, rng, m, k, k).coeffs(), 30),
                 TruncSeries(f, random_series(f, rng, m + 1, k, k).coeffs(), 30)};
  try {
    const NormalPosition np = normal_position(b);
    if (np.status || (np.m % p == 0 && np.n % p == 0)) return std::nullopt;
    if (determinacy_bound(Parametrization(b)).d[0] > k) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return b;
}

Outcome oracle() {
  Outcome o;
  std::mt19937_64 rng(7007);
  int agreed = 0, positives = 0, budget = 0;
  for (int trial = 0; agreed < 60 && trial < 4000; ++trial) {
    const Field& f = trial % 2 ? Field::prime(2) : Field::prime(3);
    const int k = 5 + static_cast<int>(rng() % 2);
    auto a = random_micro(f, rng, k);
    if (!a) continue;
    std::optional<Branch> b;
    if (rng() % 2) {
      b = polynomial_jet(singclass::testing::random_move(*a, rng), k);
      try {
        if (determinacy_bound(Parametrization(*b)).d[0] > k) continue;
      } catch (const Error&) {
        continue;
      }
    } else {
      b = random_micro(f, rng, k);
      if (!b) continue;
    }
    bool orbit, engine;
    try {
      orbit = brute_orbit_oracle(*a, *b, k);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OrbitBudgetExceeded) throw;
      ++budget;
      continue;
    }
    try {
      engine = are_equivalent(*a, *b).equivalent;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BothOrdersDivisibleByP) throw;
      continue;
    }
    if (engine != orbit)
      o.fail(f.name() + " k = " + std::to_string(k) + ": " + a->to_string() + " vs " + b->to_string() +
             (engine ? " engine equivalent, orbit not" : " orbit equivalent, engine not"));
    else
      ++agreed;
    positives += engine;
  }
  o.expect(agreed >= 50, std::to_string(agreed) + " micro-instances agree (" + std::to_string(positives) +
                             " equivalent, " + std::to_string(budget) + " over the node cap)");

  const Field& f2 = Field::prime(2);
  const Branch a = br(f2, {{2, 1}, {3, 1}}, {{5, 1}}, 30), b = br(f2, {{2, 1}}, {{5, 1}}, 30);
  const bool engine = are_equivalent(a, b).equivalent, orbit = brute_orbit_oracle(a, b, 6);
  o.expect(!engine && !orbit, "(t^2+t^3, t^5) vs (t^2, t^5) over F_2 inequivalent (engine and orbit search)");
  return o;
}

// 8: implicitization

Outcome implicitization() {
  Outcome o;
  const Field& q = Field::rationals();
  const BivarPoly x = BivarPoly::x(q), y = BivarPoly::y(q);
  o.expect(implicitize(br(q, {{2, 1}}, {{3, 1}})) == y.pow(2) - x.pow(3), "(t^2, t^3) -> y^2 - x^3");
  o.expect(implicitize(br(q, {{3, 1}}, {{4, 1}})) == y.pow(3) - x.pow(4), "(t^3, t^4) -> y^3 - x^4");
  int rows = 0, vanish = 0;
  for (std::uint32_t p : {0u, 2u, 3u, 5u, 7u, 11u, 13u}) {
    for (const CatalogRow& row : catalog(p, 6, 6)) {
      ++rows;
      const TruncSeries s = bivar_substitute(implicitize(row.param), row.param.x, row.param.y);
      if (!s.order())
        ++vanish;
      else
        o.fail("p = " + std::to_string(p) + " " + row.key() + ": equation has order " + std::to_string(*s.order()));
    }
  }
  o.expect(vanish == rows, std::to_string(vanish) + "/" + std::to_string(rows) +
                               " catalog equations vanish along the parametrization to its truncation");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  // anchors carry their own per-item budget; the line budget covers all three
  const std::vector<Criterion> criteria{
      {"conductor anchors", 3 * kAnchorBudget, anchors},
      {"c = 2 delta symmetry", kSymmetryBudget, symmetry},
      {"determinacy", kDeterminacyBudget, determinacy},
      {"maximal contact lemmas", kLemmaBudget, lemmas},
      {"table verification", kTablesBudget, tables},
      {"simpleness gate", kGateBudget, gate},
      {"orbit oracle agreement", kOracleBudget, oracle},
      {"implicitization", kImplicitBudget, implicitization},
  };
  // optional arguments select criteria by number
  std::set<size_t> only;
  for (int a = 1; a < argc; ++a) only.insert(std::stoul(argv[a]));
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    const Criterion& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("uncaught: ") + e.what());
    }
    const double s = seconds_since(t0);
    const bool in_time = s <= c.budget;
    const bool pass = out.ok && in_time;
    failed += !pass;
    std::printf("%s criterion %zu (%s): %.1f s of %.0f s%s\n", pass ? "PASS" : "FAIL", i + 1, c.name, s, c.budget,
                in_time ? "" : " (over budget)");
    for (const std::string& l : out.lines) std::printf("    %s\n", l.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}
