#include "singclass/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <thread>

#include "singclass/parse.hpp"

namespace singclass {

namespace {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) body(i);
  };
  if (threads == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

int conductor_from_name(const SingularityType& t) {
  return t.tag == TypeTag::WSharp ? 2 * *t.q + 14 : t.index;
}

std::string type_key(const ClassificationReport& rep) {
  if (rep.catalog_key) return *rep.catalog_key;
  return rep.type.name() + (rep.type.params().empty() ? "" : "[" + rep.type.params() + "]");
}

FieldElem random_elem(const Field& f, std::mt19937_64& rng) {
  if (f.is_finite()) return f.element_at(rng() % f.size());
  std::uniform_int_distribution<long> num(-3, 3), den(1, 2);
  return f.from_rational(num(rng), den(rng));
}

// t -> t + (random terms of order 2..4), then a random invertible left move
// of degree <= 2.
Branch random_move(const Branch& b, std::mt19937_64& rng) {
  const Field& f = b.field();
  TruncSeries phi = TruncSeries::identity(f, b.prec());
  for (int i = 2; i <= 4; ++i) phi = phi.with_coeff(i, random_elem(f, rng));
  for (;;) {
    LeftMove m{BivarPoly(f), BivarPoly(f)};
    for (BivarPoly* g : {&m.X, &m.Y})
      for (int a = 0; a <= 2; ++a)
        for (int c = 0; a + c <= 2; ++c)
          if (a + c >= 1) g->add_term(a, c, random_elem(f, rng));
    const FieldElem det = m.X.coeff(1, 0) * m.Y.coeff(0, 1) - m.X.coeff(0, 1) * m.Y.coeff(1, 0);
    if (!det.is_zero()) return apply(b, phi, m);
  }
}

std::uint64_t row_seed(std::uint64_t seed, std::uint32_t p, const std::string& key) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), p};
  for (unsigned char ch : key) words.push_back(ch);
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t parts[2];
  seq.generate(parts, parts + 2);
  return (static_cast<std::uint64_t>(parts[0]) << 32) | parts[1];
}

RowCheck check_row(const CatalogRow& row, const VerifyOptions& opt) {
  RowCheck rc;
  rc.p = row.type.characteristic;
  rc.key = row.key();
  rc.param = row.param_text;
  rc.equation = row.equation.text;
  rc.conductor = row.conductor;

  try {
    const int c = value_semigroup(row.param).conductor;
    const int named = conductor_from_name(row.type);
    rc.conductor_ok = c == row.conductor && c == named;
    rc.conductor_detail = "semigroup " + std::to_string(c) + ", row " + std::to_string(row.conductor) + ", name " +
                          std::to_string(named);
  } catch (const Error& e) {
    rc.conductor_detail = e.what();
  }

  try {
    ClassificationReport rep = classify_full(Parametrization(row.param));
    const std::string got = type_key(rep);
    rc.round_trip_ok = got == rc.key && rep.catalog_equivalent_over_base;
    rc.round_trip_detail = got + (rep.note.empty() ? "" : " (" + rep.note + ")");
  } catch (const Error& e) {
    rc.round_trip_detail = e.what();
  }

  try {
    ConsistencyResult cr = consistency_check(row);
    rc.consistent = cr.consistent;
    rc.vanishing_order = cr.vanishing_order;
    rc.required_order = 2 * row.conductor;
    rc.consistency_detail = cr.detail;
  } catch (const Error& e) {
    rc.consistency_detail = e.what();
  }

  if (opt.orbit_samples > 0) {
    std::mt19937_64 rng(row_seed(opt.seed, rc.p, rc.key));
    const Branch base = jet(row.param, std::min(row.param.prec(), std::max(40, 3 * row.conductor)));
    bool stable = true;
    for (int s = 0; s < opt.orbit_samples && stable; ++s) {
      const Branch moved = random_move(base, rng);
      try {
        const std::string got = type_key(classify_full(Parametrization(moved)));
        if (got != rc.key) {
          stable = false;
          rc.orbit_detail = format_branch(moved) + " classified as " + got;
        }
      } catch (const Error& e) {
        stable = false;
        rc.orbit_detail = format_branch(moved) + ": " + e.what();
      }
    }
    rc.orbit_stable = stable;
  }
  return rc;
}

std::pair<int, int> printed_orders(const CatalogRow& r) {
  const int a = *r.param.x.order(), b = *r.param.y.order();
  return {std::min(a, b), std::max(a, b)};
}

std::vector<GateCheck> gate_checks(std::uint32_t p) {
  // orders realized by the catalog; bounds cover every (m, n) below
  std::set<std::pair<int, int>> realized;
  for (const CatalogRow& r : catalog(p, 6, 6)) realized.insert(printed_orders(r));
  std::vector<GateCheck> out;
  const Field& f = Field::from_characteristic(p);
  for (int m = 2; m <= 5; ++m)
    for (int n = m + 1; n <= 9; ++n) {
      if (std::gcd(m, n) != 1) continue;
      GateCheck g;
      g.m = m;
      g.n = n;
      const auto cond = simpleness_gate(m, n, p);
      g.expected = cond ? "NotSimple(" + *cond + ")" : "simple";
      try {
        Branch b{TruncSeries::monomial(f, m, f.one(), 64), TruncSeries::monomial(f, n, f.one(), 64)};
        SingularityType t = classify_full(Parametrization(b)).type;
        g.got = t.name();
        const bool in_catalog = realized.count({m, n}) > 0;
        g.ok = cond ? (g.got == g.expected && !in_catalog) : (t.tag != TypeTag::NotSimple && in_catalog);
      } catch (const Error& e) {
        g.got = e.what();
      }
      out.push_back(std::move(g));
    }
  return out;
}

DistinctCheck distinct_pair(const CatalogRow& a, const CatalogRow& b, const VerifyOptions& opt) {
  DistinctCheck d;
  d.a = a.key();
  d.b = b.key();
  const std::uint32_t p = a.type.characteristic;
  if (p == 2) {
    // exhaustive orbit of the jet just past the conductor
    const int k = a.conductor + 1;
    d.method = "orbit k=" + std::to_string(k);
    try {
      d.distinct = !brute_orbit_oracle(jet(a.param, k), jet(b.param, k), k, opt.max_orbit_nodes);
    } catch (const Error& e) {
      d.detail = e.what();
    }
    if (d.distinct) return d;
  }
  d.method = "normal form";
  try {
    const EquivalenceResult r = are_equivalent(a.param, b.param);
    d.distinct = !r.equivalent;
    d.detail = r.reason;
  } catch (const Error& e) {
    d.detail = e.what();
  }
  return d;
}

}  // namespace

int TablesReport::hard_failures() const {
  int n = 0;
  for (const CharacteristicReport& c : characteristics) {
    for (const RowCheck& r : c.rows) n += !r.hard_ok();
    for (const GateCheck& g : c.gate) n += !g.ok;
    n += c.row_set_ok == false;
  }
  return n;
}

int TablesReport::soft_failures() const {
  int n = 0;
  for (const CharacteristicReport& c : characteristics) {
    for (const RowCheck& r : c.rows) n += r.orbit_stable == false;
    for (const DistinctCheck& d : c.distinctness) n += d.distinct != true;
  }
  return n;
}

std::set<std::string> printed_table_keys(std::uint32_t p, int k_max, int q_max) {
  std::set<std::string> out;
  const auto idx = [](const char* name, int i) { return std::string(name) + "_" + std::to_string(i); };
  if (p == 3) {
    for (int k = 1; k <= k_max; ++k) out.insert(idx("A", 2 * k));
    for (const char* e : {"E_6", "E_8"})
      for (int eps : {0, 1}) out.insert(std::string(e) + "[eps=" + std::to_string(eps) + "]");
    out.insert("W_12[eps=0]");
    for (int q : {7, 11}) out.insert("W_12[eps=1,q=" + std::to_string(q) + "]");
  } else if (p == 2) {
    for (int k = 1; k <= k_max; ++k) {
      out.insert(idx("A", 2 * k) + "[eps=0]");
      for (int q = 1; q < k && q <= q_max; ++q) out.insert(idx("A", 2 * k) + "[eps=1,q=" + std::to_string(q) + "]");
    }
    for (const char* e : {"E_6", "E_12"})
      for (int eps : {0, 1}) out.insert(std::string(e) + "[eps=" + std::to_string(eps) + "]");
    out.insert("E_8");
  }
  return out;
}

TablesReport verify_tables(const std::vector<std::uint32_t>& chars, const VerifyOptions& opt) {
  if (opt.k_max < 1 || opt.q_max < 1) throw Error(ErrorCode::InvalidArgument, "bounds must be at least 1");
  TablesReport rep;
  rep.k_max = opt.k_max;
  rep.q_max = opt.q_max;

  std::vector<std::vector<CatalogRow>> rows;
  for (std::uint32_t p : chars) {
    rows.push_back(catalog(p, opt.k_max, opt.q_max));
    CharacteristicReport cr;
    cr.p = p;
    cr.rows.resize(rows.back().size());
    if (p == 2 || p == 3) {
      const std::set<std::string> want = printed_table_keys(p, opt.k_max, opt.q_max);
      std::set<std::string> have;
      for (const CatalogRow& r : rows.back()) have.insert(r.key());
      std::set_difference(want.begin(), want.end(), have.begin(), have.end(), std::back_inserter(cr.missing_rows));
      std::set_difference(have.begin(), have.end(), want.begin(), want.end(), std::back_inserter(cr.extra_rows));
      cr.row_set_ok = cr.missing_rows.empty() && cr.extra_rows.empty();
    }
    rep.characteristics.push_back(std::move(cr));
  }

  // one task per row, per same-name pair and per characteristic's gate sweep
  struct Task {
    std::size_t ci;
    std::size_t a;
    std::size_t b;  // == a: row check; npos: gate sweep; otherwise a pair
  };
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<Task> tasks;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(chars.size());
  for (std::size_t ci = 0; ci < chars.size(); ++ci) {
    tasks.push_back({ci, 0, npos});
    for (std::size_t a = 0; a < rows[ci].size(); ++a) {
      tasks.push_back({ci, a, a});
      for (std::size_t b = a + 1; b < rows[ci].size(); ++b)
        if (rows[ci][a].type.same_class_name(rows[ci][b].type)) pairs[ci].push_back({a, b});
    }
    rep.characteristics[ci].distinctness.resize(pairs[ci].size());
    for (std::size_t i = 0; i < pairs[ci].size(); ++i) tasks.push_back({ci, i, npos - 1});
  }

  parallel_for(tasks.size(), opt.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    CharacteristicReport& cr = rep.characteristics[t.ci];
    if (t.b == npos) {
      cr.gate = gate_checks(chars[t.ci]);
    } else if (t.b == npos - 1) {
      const auto [a, b] = pairs[t.ci][t.a];
      cr.distinctness[t.a] = distinct_pair(rows[t.ci][a], rows[t.ci][b], opt);
    } else {
      cr.rows[t.a] = check_row(rows[t.ci][t.a], opt);
    }
  });
  return rep;
}

}  // namespace singclass
