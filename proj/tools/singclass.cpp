#include <iostream>

#include "CLI11.hpp"
#include "singclass/cli.hpp"

int main(int argc, char** argv) {
  singclass::CliOptions opt;
  bool as_json = false;
  int trunc = 0;

  CLI::App app{"Classification of irreducible plane curve singularities given by parametrizations"};
  app.require_subcommand(1);
  const std::map<std::string, std::string> help{
      {"invariants", "value semigroup, conductor, delta, multiplicity and maximal contact"},
      {"classify", "simpleness gate, type and catalog row"},
      {"normal-form", "left-right normal form with residual terms"},
      {"equivalent", "decide equivalence of --param and --param2"},
      {"determinacy", "parametrization determinacy bound"},
      {"implicitize", "polynomial equation of a polynomial parametrization"},
      {"verify-tables", "check every catalog row in the given characteristics"}};
  for (const std::string& name : singclass::command_names()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--char", opt.characteristic, "characteristic, 0 for the rationals");
    sub->add_option("--ext-degree", opt.ext_degree, "degree of the coefficient field over F_p");
    sub->add_option("--trunc", trunc, "truncation order of the input series (default max(64, degree + 1))");
    sub->add_option("--seed", opt.seed, "seed for randomized checks");
    sub->add_option("--max-orbit-nodes", opt.max_orbit_nodes, "budget of the exhaustive orbit search");
    sub->add_flag("--json", as_json, "print the JSON report");
    sub->add_flag("--timings", opt.timings, "record wall-clock timings in the report");
    if (name == "verify-tables") {
      sub->add_option("--chars", opt.chars, "characteristics to verify")->delimiter(',');
      sub->add_option("--k-max", opt.k_max, "largest series index k");
      sub->add_option("--q-max", opt.q_max, "largest tail index q");
      sub->add_option("--threads", opt.threads, "worker threads (0: one per core)");
      sub->add_option("--orbit-samples", opt.orbit_samples, "random left-right moves re-classified per row");
    } else {
      sub->add_option("--param", opt.param, "parametrization \"(x(t), y(t))\", branches separated by ';'");
      if (name == "equivalent") sub->add_option("--param2", opt.param2, "second parametrization");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (trunc != 0) opt.trunc = trunc;

  const std::string command = app.get_subcommands().front()->get_name();
  const singclass::CommandResult r = singclass::run_command(command, opt);
  if (as_json)
    std::cout << r.report.dump(2) << "\n";
  else
    (r.exit_code == 2 ? std::cerr : std::cout) << r.text;
  return r.exit_code;
}
