// Command-line front end: parse a quadratic form file, run the requested
// analysis, emit a JSON report. Exit codes: 0 success, 1 input error,
// 2 violated mathematical invariant (a bug, not an input problem),
// 3 resource cap.

#include "cliffib/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"cliffib - exact Clifford/Koszul analysis of quadratic forms"};
  app.require_subcommand(1);

  std::string form_file;
  std::string out_path;
  cliffib::Config config;
  long sections = 0;

  const std::vector<std::string> commands = {"clifford", "strata", "dual",   "koszul",
                                             "modules",  "mf",     "sod",    "analyze"};
  std::vector<CLI::App*> subs;
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("form_file", form_file, "quadratic form JSON file")->required();
    sub->add_option("--degree", config.degree_cap, "degree cap for graded computations");
    sub->add_option("--trials", config.trials, "specialization trials for parameterized forms");
    sub->add_option("--bound", config.random_bound, "specialization points drawn from [-bound, bound]");
    sub->add_option("--seed", config.seed, "seed for all randomized choices");
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_flag("--pretty", config.pretty, "indent the JSON output");
    if (name == "sod" || name == "analyze")
      sub->add_option("--sections", sections, "linear-section count r for intersection numerology");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (config.degree_cap < 0 || config.trials < 1 || config.random_bound < 1)
      throw cliffib::input_error("BAD_CONFIG", "caps and trials must be positive");
    std::string command = app.get_subcommands().front()->get_name();
    cliffib::QuadraticForm form = cliffib::load_form(form_file);
    cliffib::Json report = cliffib::run_command(command, form, config, form_file,
                                                static_cast<cliffib::Index>(sections));
    std::string text = config.pretty ? report.dump(2) : report.dump();
    text += "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) throw cliffib::input_error("NO_FILE", "cannot write: " + out_path);
      out << text;
    }
    return 0;
  } catch (const std::exception& e) {
    int code = cliffib::exit_code_for_current_exception();
    std::cerr << "error: " << e.what() << "\n";
    return code;
  }
}
