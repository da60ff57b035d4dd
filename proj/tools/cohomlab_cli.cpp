// cohomlab: compute cohomology reports for matrix groups and run the named
// experiments. Exit codes: 0 pass, 1 property violation, 2 input error,
// 3 cap or budget exhausted.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cohomlab/json_io.hpp"

namespace {

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot write " << out << "\n";
    return 2;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace cohomlab;
  CLI::App app{"Cohomology of subgroups of GL_2(Z/p^nZ) and the experiments built on it"};
  app.require_subcommand(1);

  std::string spec_path, out, format = "json", name;
  bool local = false, conditions = false, serial = false;
  ExperimentOptions opts;
  std::size_t cap = 0;

  auto* compute = app.add_subcommand("compute", "H^1 and H^1_loc for the group in a JSON spec file");
  compute->add_option("spec", spec_path, "group spec: {\"p\", \"n\", \"generators\"}")->required();
  compute->add_flag("--local", local, "also compute H^1_loc through restriction maps");
  compute->add_flag("--conditions", conditions, "append the condition report (needs n >= 2)");
  compute->add_option("--cap", cap, "closure cap (default 5000 or COHOMLAB_CAP)");
  compute->add_option("--out", out, "write to a file instead of stdout");

  auto* experiment = app.add_subcommand("experiment", "run a named experiment and print its verdict");
  experiment->add_option("name", name, "example6, diagonal, shape-lemma, structure-props, main-theorem, oracle")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  experiment->add_option("--p", opts.p, "prime");
  experiment->add_option("--n", opts.n, "exponent");
  experiment->add_option("--m", opts.m, "nonsquare used by the example group");
  experiment->add_option("--cap", cap, "closure cap");
  experiment->add_option("--budget-ms", opts.budget_ms, "wall-clock budget for searches");
  experiment->add_option("--seed", opts.seed, "seed for sampled searches");
  experiment->add_option("--out", out, "write to a file instead of stdout");
  experiment->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  experiment->add_flag("--serial", serial, "disable OpenMP loops");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*compute) {
      std::ifstream in(spec_path);
      if (!in) throw InvalidInput("cannot read " + spec_path);
      Json doc;
      try {
        doc = Json::parse(in);
      } catch (const Json::exception& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
      }
      MatGroup g = parse_group_spec(doc, cap ? cap : default_closure_cap());
      CohomologyReport report = h1_loc(g);
      Json result = to_json(report);
      int status = 0;
      if (local) {
        std::vector<std::int64_t> via = h1_loc_via_restrictions(g);
        result["h1locViaRestrictions"] = via;
        if (via != report.h1loc) status = 1;
      }
      if (conditions) result["conditions"] = to_json(evaluate_main_theorem_conditions(g));
      int written = emit(result.dump(2) + "\n", out);
      return written ? written : status;
    }

    opts.cap = cap;
    opts.exec = serial ? Execution::serial : Execution::parallel;
    ExperimentVerdict v = run_experiment(name, opts);
    std::string text = format == "csv" ? to_csv(v) : to_json(v).dump(2) + "\n";
    int written = emit(text, out);
    if (written) return written;
    return v.passed() ? 0 : 1;
  } catch (const CapExceeded& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
