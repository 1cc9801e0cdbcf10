#include "singclass/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "singclass/classify.hpp"
#include "singclass/parse.hpp"
#include "singclass/verify.hpp"

namespace singclass {

using json = nlohmann::ordered_json;

namespace {

const char* tag_name(TypeTag t) {
  switch (t) {
    case TypeTag::Smooth: return "Smooth";
    case TypeTag::A: return "A";
    case TypeTag::E: return "E";
    case TypeTag::W: return "W";
    case TypeTag::WSharp: return "W#";
    case TypeTag::NotSimple: return "NotSimple";
    case TypeTag::Unclassified: break;
  }
  return "Unclassified";
}

json skeleton(const std::string& command, const CliOptions& opt) {
  json r;
  r["command"] = command;
  r["status"] = "ok";
  r["input"] = nullptr;
  r["field"] = json{{"char", opt.characteristic}, {"ext", opt.ext_degree}};
  r["invariants"] = nullptr;
  r["determinacy"] = nullptr;
  r["type"] = nullptr;
  r["normal_form"] = nullptr;
  r["transcript_digest"] = nullptr;
  r["result"] = nullptr;
  r["error"] = nullptr;
  r["timings"] = json::object();
  return r;
}

struct Context {
  const CliOptions& opt;
  json& report;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  const Field& field() const {
    if (opt.characteristic == 0 && opt.ext_degree != 1)
      throw Error(ErrorCode::InvalidArgument, "--ext-degree needs a positive characteristic");
    if (opt.ext_degree < 1) throw Error(ErrorCode::InvalidArgument, "--ext-degree must be at least 1");
    return Field::from_characteristic(opt.characteristic, opt.ext_degree);
  }

  Parametrization read(const std::string& text, const char* flag) const {
    if (text.empty()) throw Error(ErrorCode::InvalidArgument, std::string(flag) + " is required");
    const int prec = opt.trunc ? *opt.trunc : std::max(64, written_degree(text) + 1);
    if (prec < 1) throw Error(ErrorCode::InvalidArgument, "--trunc must be positive");
    return parse_parametrization(text, field(), prec);
  }

  Branch single(const Parametrization& psi, const char* what) const {
    if (psi.size() != 1)
      throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs a single branch, got " +
                                                  std::to_string(psi.size()));
    return psi.branch(0);
  }

  void finish_timings() {
    if (!opt.timings) return;
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timings"]["total_ms"] = ms;
  }
};

// m = min(Gamma \ 0), n = min(Gamma \ mZ); n = 0 for a smooth branch.
std::pair<int, int> orders(const ValueSemigroup& g) {
  const int m = g.members.size() > 1 ? g.members[1] : 1;
  if (m == 1) return {1, 0};
  auto it = std::find_if(g.members.begin(), g.members.end(), [&](int v) { return v % m != 0; });
  return {m, it != g.members.end() ? *it : g.conductor + 1};
}

json invariants_json(const Parametrization& psi, const ConductorVector& cv, const ValueSemigroup* sg) {
  json inv;
  inv["branches"] = psi.size();
  if (sg) {
    const auto [m, n] = orders(*sg);
    inv["m"] = m;
    inv["n"] = n == 0 ? json(nullptr) : json(n);
    std::string text;
    for (int g : sg->generators) text += (text.empty() ? "<" : ",") + std::to_string(g);
    inv["semigroup"] = json{{"text", text + ">"}, {"generators", sg->generators}, {"gaps", sg->gaps()}};
  } else {
    inv["m"] = multiplicity(psi);
    inv["n"] = nullptr;
    inv["semigroup"] = nullptr;
  }
  inv["conductor"] = cv.total;
  inv["delta"] = cv.delta;
  inv["conductor_vector"] = cv.c;
  return inv;
}

json determinacy_json(const DeterminacyBound& d) {
  return json{{"d", *std::max_element(d.d.begin(), d.d.end())}, {"per_branch", d.d}, {"case", d.tag}};
}

json type_json(const SingularityType& t) {
  json params = json::object();
  if (t.epsilon) params["eps"] = *t.epsilon;
  if (t.q) params["q"] = *t.q;
  return json{{"tag", tag_name(t.tag)},
              {"name", t.name()},
              {"params", params},
              {"condition", t.condition.empty() ? json(nullptr) : json(t.condition)}};
}

json residuals_json(const ReductionResult& r) {
  json out = json::array();
  for (const Residual& x : r.residuals)
    out.push_back(json{{"exponent", x.exponent}, {"coefficient", x.coefficient.to_string()}, {"normalized", x.normalized}});
  return out;
}

int fill_invariants(Context& cx, const Parametrization& psi) {
  std::optional<ValueSemigroup> sg;
  if (psi.size() == 1) sg = value_semigroup(psi.branch(0));
  cx.report["invariants"] = invariants_json(psi, conductor_vector(psi), sg ? &*sg : nullptr);
  cx.report["determinacy"] = determinacy_json(determinacy_bound(psi));
  return 0;
}

int cmd_invariants(Context& cx) {
  const Parametrization psi = cx.read(cx.opt.param, "--param");
  fill_invariants(cx, psi);
  cx.report["result"] = json{{"max_contact", max_contact(psi)}, {"truncation", psi.truncation()}};
  return 0;
}

int cmd_determinacy(Context& cx) {
  const Parametrization psi = cx.read(cx.opt.param, "--param");
  fill_invariants(cx, psi);
  return 0;
}

int cmd_classify(Context& cx) {
  const Parametrization psi = cx.read(cx.opt.param, "--param");
  const ClassificationReport cr = classify_full(psi);
  json& r = cx.report;
  r["invariants"] = invariants_json(psi, cr.conductor, cr.semigroup ? &*cr.semigroup : nullptr);
  r["determinacy"] = determinacy_json(cr.determinacy);
  if (cr.branches > 1) throw Error(ErrorCode::InvalidArgument, "classification needs a single branch; " + cr.note);
  r["type"] = type_json(cr.type);
  if (cr.reduction) {
    r["normal_form"] = format_branch(cr.reduction->normal_form);
    r["transcript_digest"] = transcript_digest(cr.reduction->transcript);
  }
  r["result"] = json{{"catalog_row", cr.catalog_key ? json(*cr.catalog_key) : json(nullptr)},
                     {"catalog_equivalent_over_base", cr.catalog_equivalent_over_base},
                     {"residuals", cr.reduction ? residuals_json(*cr.reduction) : json::array()},
                     {"note", cr.note}};
  return cr.type.tag == TypeTag::NotSimple ? 1 : 0;
}

int cmd_normal_form(Context& cx) {
  const Parametrization psi = cx.read(cx.opt.param, "--param");
  const Branch b = cx.single(psi, "normal-form");
  fill_invariants(cx, psi);
  const ReductionResult red = reduce(b);
  cx.report["normal_form"] = format_branch(red.normal_form);
  cx.report["transcript_digest"] = transcript_digest(red.transcript);
  json steps = json::array();
  for (const TranscriptStep& s : red.transcript) steps.push_back(s.label);
  cx.report["result"] = json{{"residuals", residuals_json(red)},
                             {"moduli", red.has_modulus()},
                             {"truncation", red.truncation},
                             {"steps", steps}};
  return 0;
}

int cmd_equivalent(Context& cx) {
  const Branch a = cx.single(cx.read(cx.opt.param, "--param"), "equivalent");
  const Branch b = cx.single(cx.read(cx.opt.param2, "--param2"), "equivalent");
  const EquivalenceResult r = are_equivalent(a, b);
  const bool verified = r.equivalent && verify_certificate(a, b, r);
  cx.report["result"] = json{{"equivalent", r.equivalent},
                             {"reason", r.reason},
                             {"certificate_verified", verified},
                             {"truncation", r.truncation}};
  if (r.equivalent) {
    Transcript both = r.first_moves;
    both.insert(both.end(), r.second_moves.begin(), r.second_moves.end());
    cx.report["transcript_digest"] = transcript_digest(both);
  }
  return r.equivalent ? 0 : 1;
}

int cmd_implicitize(Context& cx) {
  const Parametrization psi = cx.read(cx.opt.param, "--param");
  const Field& f = psi.field();
  BivarPoly g = BivarPoly::constant(f, f.one());
  json per = json::array();
  int vanish = -1;
  for (const Branch& b : psi.branches()) {
    const BivarPoly gi = implicitize(b);
    per.push_back(format_polynomial(gi));
    g = g * gi;
  }
  bool to_truncation = true;
  for (const Branch& b : psi.branches()) {
    const TruncSeries s = bivar_substitute(g, b.x, b.y);
    vanish = vanish < 0 ? s.order_bound() : std::min(vanish, s.order_bound());
    to_truncation = to_truncation && !s.order();
  }
  cx.report["result"] = json{{"equation", format_polynomial(g)},
                             {"per_branch", per},
                             {"vanishing_order", vanish},
                             {"vanishes_to_truncation", to_truncation}};
  return 0;
}

json tables_json(const TablesReport& t) {
  json chars = json::array();
  for (const CharacteristicReport& c : t.characteristics) {
    json rows = json::array();
    for (const RowCheck& r : c.rows) {
      rows.push_back(json{
          {"row", r.key},
          {"param", r.param},
          {"equation", r.equation},
          {"conductor", r.conductor},
          {"hard_ok", r.hard_ok()},
          {"conductor_check", {{"ok", r.conductor_ok}, {"detail", r.conductor_detail}}},
          {"round_trip", {{"ok", r.round_trip_ok}, {"detail", r.round_trip_detail}}},
          {"consistency",
           {{"ok", r.consistent},
            {"vanishing_order", r.vanishing_order},
            {"required_order", r.required_order},
            {"detail", r.consistency_detail}}},
          {"orbit", {{"ok", r.orbit_stable ? json(*r.orbit_stable) : json(nullptr)}, {"detail", r.orbit_detail}}}});
    }
    json gate = json::array();
    for (const GateCheck& g : c.gate)
      gate.push_back(json{{"m", g.m}, {"n", g.n}, {"expected", g.expected}, {"got", g.got}, {"ok", g.ok}});
    json dist = json::array();
    for (const DistinctCheck& d : c.distinctness)
      dist.push_back(json{{"a", d.a},
                          {"b", d.b},
                          {"method", d.method},
                          {"distinct", d.distinct ? json(*d.distinct) : json(nullptr)},
                          {"detail", d.detail}});
    json row_set = nullptr;
    if (c.row_set_ok)
      row_set = json{{"ok", *c.row_set_ok}, {"missing", c.missing_rows}, {"extra", c.extra_rows}};
    chars.push_back(
        json{{"char", c.p}, {"rows", rows}, {"gate", gate}, {"distinctness", dist}, {"row_set", row_set}});
  }
  return json{{"k_max", t.k_max},
              {"q_max", t.q_max},
              {"hard_failures", t.hard_failures()},
              {"soft_failures", t.soft_failures()},
              {"characteristics", chars}};
}

int cmd_verify_tables(Context& cx) {
  cx.report["field"] = nullptr;
  VerifyOptions vo;
  vo.k_max = cx.opt.k_max;
  vo.q_max = cx.opt.q_max;
  vo.threads = cx.opt.threads;
  vo.seed = cx.opt.seed;
  vo.orbit_samples = cx.opt.orbit_samples;
  vo.max_orbit_nodes = cx.opt.max_orbit_nodes;
  cx.report["input"] = json{{"chars", cx.opt.chars}, {"k_max", vo.k_max}, {"q_max", vo.q_max}, {"seed", vo.seed},
                            {"orbit_samples", vo.orbit_samples}};
  const TablesReport t = verify_tables(cx.opt.chars, vo);
  cx.report["result"] = tables_json(t);
  return t.hard_failures() > 0 ? 1 : 0;
}

std::string line(const std::string& key, const std::string& value) { return key + ": " + value + "\n"; }

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string render_tables(const json& res) {
  std::ostringstream os;
  for (const json& c : res["characteristics"]) {
    int rows = 0, bad = 0, gate_bad = 0, dist_bad = 0;
    for (const json& r : c["rows"]) rows++, bad += !r["hard_ok"].get<bool>();
    for (const json& g : c["gate"]) gate_bad += !g["ok"].get<bool>();
    for (const json& d : c["distinctness"]) dist_bad += d["distinct"] != true;
    os << "p=" << c["char"].get<unsigned>() << ": " << rows << " rows, " << bad << " failing; gate " << gate_bad
       << " failing; distinctness " << dist_bad << " unresolved";
    if (!c["row_set"].is_null()) os << "; printed row set " << (c["row_set"]["ok"].get<bool>() ? "matches" : "differs");
    os << "\n";
    for (const json& r : c["rows"]) {
      if (r["hard_ok"].get<bool>()) continue;
      os << "  " << r["row"].get<std::string>() << " " << r["param"].get<std::string>() << ":";
      if (!r["conductor_check"]["ok"].get<bool>()) os << " conductor (" << scalar(r["conductor_check"]["detail"]) << ")";
      if (!r["round_trip"]["ok"].get<bool>()) os << " round trip -> " << scalar(r["round_trip"]["detail"]);
      if (!r["consistency"]["ok"].get<bool>())
        os << " equation vanishes to t^" << r["consistency"]["vanishing_order"].get<int>() << " of t^"
           << r["consistency"]["required_order"].get<int>();
      os << "\n";
    }
    for (const json& g : c["gate"])
      if (!g["ok"].get<bool>())
        os << "  gate (" << g["m"].get<int>() << "," << g["n"].get<int>() << "): expected "
           << g["expected"].get<std::string>() << ", got " << g["got"].get<std::string>() << "\n";
    for (const json& r : c["rows"])
      if (r["orbit"]["ok"] == false) os << "  orbit sample of " << r["row"].get<std::string>() << ": " << scalar(r["orbit"]["detail"]) << "\n";
  }
  os << "hard failures: " << res["hard_failures"].get<int>() << ", soft: " << res["soft_failures"].get<int>() << "\n";
  return os.str();
}

std::string render(const json& r) {
  std::string out;
  if (!r["error"].is_null()) out += line("error", r["error"]["message"].get<std::string>());
  if (r["command"] == "verify-tables" && !r["result"].is_null()) return out + render_tables(r["result"]);
  if (!r["field"].is_null()) {
    const unsigned p = r["field"]["char"], k = r["field"]["ext"];
    out += line("field", p == 0 ? "Q" : "F_" + std::to_string(p) + (k > 1 ? "^" + std::to_string(k) : ""));
  }
  if (const json& inv = r["invariants"]; !inv.is_null()) {
    std::string s = "branches " + scalar(inv["branches"]) + ", m " + scalar(inv["m"]);
    if (!inv["n"].is_null()) s += ", n " + scalar(inv["n"]);
    if (!inv["semigroup"].is_null()) s += ", semigroup " + inv["semigroup"]["text"].get<std::string>();
    s += ", conductor " + scalar(inv["conductor"]) + ", delta " + scalar(inv["delta"]);
    if (inv["branches"].get<int>() > 1) s += ", conductor vector " + inv["conductor_vector"].dump();
    out += line("invariants", s);
  }
  if (const json& d = r["determinacy"]; !d.is_null())
    out += line("determinacy", "d = " + scalar(d["d"]) + " (" + d["case"].get<std::string>() + ")");
  if (const json& t = r["type"]; !t.is_null()) {
    std::string s = t["name"].get<std::string>();
    std::string params;
    for (const auto& [k, v] : t["params"].items()) params += (params.empty() ? "" : ", ") + k + "=" + v.dump();
    if (!params.empty()) s += " (" + params + ")";
    out += line("type", s);
  }
  if (!r["normal_form"].is_null()) out += line("normal form", r["normal_form"].get<std::string>());
  if (const json& res = r["result"]; res.is_object())
    for (const auto& [k, v] : res.items())
      if (v != "") out += line(k, scalar(v));
  return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"invariants",  "classify",    "normal-form",  "equivalent",
                                              "determinacy", "implicitize", "verify-tables"};
  return names;
}

std::string transcript_digest(const Transcript& tr) {
  std::string text;
  for (const TranscriptStep& s : tr)
    text += s.label + "|" + format_series(s.phi) + "|" + format_polynomial(s.left.X) + "|" +
            format_polynomial(s.left.Y) + "\n";
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::InvalidArgument, "digest computation failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

CommandResult run_command(const std::string& command, const CliOptions& opt) {
  CommandResult out;
  out.report = skeleton(command, opt);
  Context cx{opt, out.report};
  if (command != "verify-tables")
    out.report["input"] = json{{"param", opt.param.empty() ? json(nullptr) : json(opt.param)},
                               {"param2", opt.param2.empty() ? json(nullptr) : json(opt.param2)}};
  auto fail = [&](const std::string& code, const std::string& message) {
    out.exit_code = 2;
    out.report["status"] = "error";
    out.report["error"] = json{{"code", code}, {"message", message}, {"position", nullptr}, {"expected", nullptr}};
  };
  try {
    if (command == "invariants")
      out.exit_code = cmd_invariants(cx);
    else if (command == "classify")
      out.exit_code = cmd_classify(cx);
    else if (command == "normal-form")
      out.exit_code = cmd_normal_form(cx);
    else if (command == "equivalent")
      out.exit_code = cmd_equivalent(cx);
    else if (command == "determinacy")
      out.exit_code = cmd_determinacy(cx);
    else if (command == "implicitize")
      out.exit_code = cmd_implicitize(cx);
    else if (command == "verify-tables")
      out.exit_code = cmd_verify_tables(cx);
    else
      throw Error(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
    if (out.exit_code == 1) out.report["status"] = "negative";
  } catch (const ParseError& e) {
    fail(std::string(to_string(e.code())), e.what());
    out.report["error"]["position"] = e.position();
    out.report["error"]["expected"] = e.expected();
  } catch (const Error& e) {
    fail(std::string(to_string(e.code())), e.what());
  } catch (const std::exception& e) {
    fail("InternalError", e.what());
  }
  cx.finish_timings();
  out.text = render(out.report);
  return out;
}

}  // namespace singclass
