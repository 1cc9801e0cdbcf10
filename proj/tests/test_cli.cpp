#include "doctest.h"
#include "singclass/cli.hpp"

using namespace singclass;

namespace {

CliOptions with(std::uint32_t p, std::string param, std::string param2 = "") {
  CliOptions o;
  o.characteristic = p;
  o.param = std::move(param);
  o.param2 = std::move(param2);
  return o;
}

CliOptions tables(std::vector<std::uint32_t> chars, int k, int q) {
  CliOptions o;
  o.chars = std::move(chars);
  o.k_max = k;
  o.q_max = q;
  return o;
}

const nlohmann::ordered_json* find_row(const nlohmann::ordered_json& c, const std::string& key) {
  for (const auto& r : c["rows"])
    if (r["row"] == key) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("classify E_8 with eps = 1 in characteristic 5") {
  CommandResult r = run_command("classify", with(5, "(t^3, t^5+t^7)"));
  CHECK(r.exit_code == 0);
  CHECK(r.report["type"]["name"] == "E_8");
  CHECK(r.report["type"]["params"]["eps"] == 1);
  CHECK(r.report["invariants"]["conductor"] == 8);
  CHECK(r.report["invariants"]["delta"] == 4);
  CHECK(r.report["result"]["catalog_row"] == "E_8[eps=1]");
  CHECK(r.report["transcript_digest"].get<std::string>().size() == 64);
  CHECK(r.text.find("type: E_8 (eps=1)") != std::string::npos);
}

TEST_CASE("determinacy of the A_4 cusp") {
  CommandResult r = run_command("determinacy", with(0, "(t^2,t^5)"));
  CHECK(r.exit_code == 0);
  CHECK(r.report["determinacy"]["d"] == 5);
  CHECK(r.report["determinacy"]["case"] == "mt2-r1");
}

TEST_CASE("equivalence exit codes") {
  CommandResult no = run_command("equivalent", with(0, "(t^2,t^5)", "(t^2,t^7)"));
  CHECK(no.exit_code == 1);
  CHECK(no.report["status"] == "negative");
  CHECK(no.report["result"]["reason"].get<std::string>().find("semigroup mismatch") == 0);

  CommandResult yes = run_command("equivalent", with(0, "(t^2 + t^3, t^5)", "(t^2, t^5)"));
  CHECK(yes.exit_code == 0);
  CHECK(yes.report["result"]["certificate_verified"] == true);
  // over F_2 no reparametrization takes t^2 + t^3 to t^2: square roots need p != 2
  CHECK(run_command("equivalent", with(2, "(t^2 + t^3, t^5)", "(t^2, t^5)")).exit_code == 1);
}

TEST_CASE("not simple is a mathematical negative") {
  CommandResult r = run_command("classify", with(7, "(t^4,t^7)"));
  CHECK(r.exit_code == 1);
  CHECK(r.report["type"]["name"] == "NotSimple(iv)");
  CHECK(r.report["type"]["condition"] == "iv");
}

TEST_CASE("usage and input errors exit with 2") {
  CommandResult syn = run_command("classify", with(0, "(t^3, t^5 +* t)"));
  CHECK(syn.exit_code == 2);
  CHECK(syn.report["status"] == "error");
  CHECK(syn.report["error"]["code"] == "SyntaxError");
  CHECK(syn.report["error"]["position"] == 11);
  CHECK(syn.report["error"]["expected"].size() == 3);

  CommandResult coef = run_command("classify", with(2, "(1/2*t^3, t^5)"));
  CHECK(coef.exit_code == 2);
  CHECK(coef.report["error"]["code"] == "CoefficientNotInField");

  CHECK(run_command("classify", with(0, "")).exit_code == 2);
  CHECK(run_command("frobnicate", with(0, "(t^2,t^3)")).exit_code == 2);
  CHECK(run_command("classify", with(4, "(t^2,t^3)")).report["error"]["code"] == "NotAField");
  CHECK(run_command("classify", with(0, "(1 + t, t^2)")).report["error"]["code"] == "NotInMaximalIdeal");
  CHECK(run_command("equivalent", with(0, "(t^2,t^3)")).exit_code == 2);

  CliOptions ext = with(0, "(t^2,t^3)");
  ext.ext_degree = 2;
  CHECK(run_command("invariants", ext).exit_code == 2);
}

TEST_CASE("several branches") {
  CommandResult inv = run_command("invariants", with(0, "(t^3, t); (t^5, t)"));
  CHECK(inv.exit_code == 0);
  CHECK(inv.report["invariants"]["conductor_vector"] == nlohmann::ordered_json::array({3, 3}));
  CHECK(inv.report["invariants"]["semigroup"].is_null());
  CHECK(inv.report["invariants"]["m"] == 2);

  CommandResult cl = run_command("classify", with(0, "(t^3, t); (t^5, t)"));
  CHECK(cl.exit_code == 2);
  CHECK(cl.report["invariants"]["conductor"] == 6);
  CHECK(cl.report["type"].is_null());

  // two lines: x*y up to the normalization of the leading term
  CommandResult eq = run_command("implicitize", with(0, "(t, 0); (0, t)"));
  CHECK(eq.report["result"]["equation"] == "x*y");
}

TEST_CASE("implicitize and normal form") {
  CommandResult cusp = run_command("implicitize", with(0, "(t^2, t^3)"));
  CHECK(cusp.report["result"]["equation"] == "y^2 - x^3");
  CHECK(cusp.report["result"]["vanishes_to_truncation"] == true);
  CHECK(run_command("implicitize", with(0, "(t^3, t^4)")).report["result"]["equation"] == "y^3 - x^4");

  CliOptions short_jet = with(0, "(t^2, t^3 + t^9)");
  short_jet.trunc = 9;  // t^9 is stored at the truncation, so the jet is not a polynomial
  CHECK(run_command("implicitize", short_jet).report["error"]["code"] == "NotPolynomial");

  CommandResult nf = run_command("normal-form", with(0, "(t^4, t^6 + t^7 + t^9)"));
  CHECK(nf.exit_code == 0);
  CHECK(nf.report["normal_form"] == "(t^4, t^6 + t^7)");
  CHECK(nf.report["result"]["moduli"] == false);
}

TEST_CASE("reports are deterministic and untimed by default") {
  for (const char* cmd : {"classify", "normal-form", "invariants"}) {
    const CommandResult a = run_command(cmd, with(3, "(t^3 + t^5, t^4 + 2*t^7)"));
    const CommandResult b = run_command(cmd, with(3, "(t^3 + t^5, t^4 + 2*t^7)"));
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.text == b.text);
    CHECK(a.report["timings"].empty());
  }
  CliOptions timed = with(0, "(t^2,t^3)");
  timed.timings = true;
  CHECK(run_command("classify", timed).report["timings"].contains("total_ms"));
}

TEST_CASE("verify-tables in characteristic 3") {
  CommandResult r = run_command("verify-tables", tables({3}, 4, 4));
  const auto& c = r.report["result"]["characteristics"][0];
  CHECK(c["row_set"]["ok"] == true);
  for (const auto& row : c["rows"]) {
    INFO(row["row"].get<std::string>());
    // the top gap t^11 of W_12 is removable unless p = 5, so that row
    // classifies as W_12[eps=0]
    const bool collapses = row["row"] == "W_12[eps=1,q=11]";
    CHECK(row["hard_ok"] == !collapses);
    if (collapses) CHECK(row["round_trip"]["detail"] == "W_12[eps=0]");
  }
  CHECK(r.report["result"]["hard_failures"] == 1);
  CHECK(r.exit_code == 1);
}

TEST_CASE("verify-tables in characteristic 7") {
  CommandResult r = run_command("verify-tables", tables({7}, 2, 2));
  const auto& c = r.report["result"]["characteristics"][0];
  CHECK(find_row(c, "W_18[eps=0]") == nullptr);
  CHECK(find_row(c, "W_12[eps=0]") != nullptr);
  bool seen = false;
  for (const auto& g : c["gate"])
    if (g["m"] == 4 && g["n"] == 7) {
      seen = true;
      CHECK(g["got"] == "NotSimple(iv)");
      CHECK(g["ok"] == true);
    }
  CHECK(seen);
}

TEST_CASE("verify-tables in characteristic 2 separates the A rows by orbit search") {
  CommandResult r = run_command("verify-tables", tables({2}, 3, 3));
  const auto& c = r.report["result"]["characteristics"][0];
  CHECK(c["row_set"]["ok"] == true);
  int a_pairs = 0;
  for (const auto& d : c["distinctness"]) {
    if (d["a"].get<std::string>().rfind("A_", 0) != 0) continue;
    INFO(d["a"].get<std::string>(), " vs ", d["b"].get<std::string>());
    CHECK(d["method"].get<std::string>().rfind("orbit", 0) == 0);
    CHECK(d["distinct"] == true);
    ++a_pairs;
  }
  CHECK(a_pairs == 4);  // A_4: one pair, A_6: three pairs
}

TEST_CASE("verify-tables output does not depend on the thread count") {
  CliOptions one = tables({3, 5}, 2, 2), many = tables({3, 5}, 2, 2);
  one.threads = 1;
  many.threads = 4;
  CHECK(run_command("verify-tables", one).report.dump() == run_command("verify-tables", many).report.dump());
}
