#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "toepker/catalogue.hpp"
#include "toepker/errors.hpp"
#include "toepker/scenario.hpp"
#include "toepker/serialize.hpp"

namespace {

using toepker::json;

struct Flags {
  std::optional<int> truncation;
  std::optional<std::uint64_t> seed;
  std::string json_out;
  bool stabilize = true;
  bool timings = false;
  std::string file;
};

void add_common(CLI::App* cmd, Flags& f, bool needs_file) {
  if (needs_file) cmd->add_option("file", f.file, "scenario JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--truncation", f.truncation, "override the truncation order N")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "override the scenario seed");
  cmd->add_option("--json-out", f.json_out, "write the JSON report to this path");
  cmd->add_flag("--stabilize,!--no-stabilize", f.stabilize, "re-run at 2N (default on)");
  cmd->add_flag("--timings", f.timings, "include wall-clock seconds in JSON reports");
}

toepker::RunOptions run_options(const Flags& f) {
  toepker::RunOptions o;
  o.truncation = f.truncation;
  o.seed = f.seed;
  o.stabilize = f.stabilize;
  o.timings = f.timings;
  return o;
}

void write_json(const Flags& f, const json& j) {
  if (f.json_out.empty()) return;
  std::ofstream out(f.json_out);
  if (!out) throw toepker::InputError("cannot write \"" + f.json_out + "\"");
  out << j.dump(2) << "\n";
}

int report_suite(const Flags& f, const toepker::SuiteReport& suite) {
  std::cout << toepker::format_table(suite);
  for (const auto& s : suite.scenarios) {
    for (const auto& msg : s.failures) std::cerr << s.id << " [" << s.anchor << "]: " << msg << "\n";
  }
  write_json(f, to_json(suite, f.timings));
  return suite.pass() ? 0 : 1;
}

int cmd_run(const Flags& f) {
  toepker::SuiteReport suite;
  for (const auto& s : toepker::load_scenarios(f.file)) {
    suite.scenarios.push_back(toepker::run_scenario(s, run_options(f)));
  }
  return report_suite(f, suite);
}

int cmd_verify_paper(const Flags& f) { return report_suite(f, toepker::run_catalogue(run_options(f))); }

int cmd_defect(const Flags& f) {
  json out = json::array();
  bool pass = true;
  for (auto s : toepker::load_scenarios(f.file)) {
    if (f.seed) s.seed = *f.seed;
    const int n = f.truncation.value_or(s.truncation);
    s.check_headroom(n);
    const toepker::Instance inst = s.materialize(n);
    inst.perturbation.validate(n);
    const auto dc = toepker::defect_case_of(inst.symbol);
    toepker::DefectTolerances tols;
    tols.rank = s.tolerances.rank;
    const auto rep = toepker::verify_defect_theorem(dc, inst.perturbation, n, tols);
    pass = pass && rep.pass;
    out.push_back({{"id", s.id}, {"truncation", n}, {"report", to_json(rep)}});
  }
  std::cout << out.dump(2) << "\n";
  write_json(f, out);
  return pass ? 0 : 1;
}

int cmd_kernel(const Flags& f) {
  json out = json::array();
  for (auto s : toepker::load_scenarios(f.file)) {
    if (f.seed) s.seed = *f.seed;
    const int n = f.truncation.value_or(s.truncation);
    s.check_headroom(n);
    const toepker::Instance inst = s.materialize(n);
    inst.perturbation.validate(n);
    const auto r = toepker::perturbed_matrix(toepker::toeplitz_matrix(inst.symbol, n), inst.perturbation);
    out.push_back({{"id", s.id}, {"kernel", to_json(toepker::kernel_subspace(r, s.tolerances.rank))}});
  }
  std::cout << out.dump(2) << "\n";
  write_json(f, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernels of finite-rank perturbations of Toeplitz operators"};
  app.require_subcommand(1);
  Flags flags;
  auto* run = app.add_subcommand("run", "run the checks of a scenario file");
  add_common(run, flags, true);
  auto* paper = app.add_subcommand("verify-paper", "run the built-in catalogue");
  add_common(paper, flags, false);
  auto* defect = app.add_subcommand("defect", "defect report for a scenario file");
  add_common(defect, flags, true);
  auto* kernel = app.add_subcommand("kernel", "dump the kernel frame of a scenario file");
  add_common(kernel, flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(flags);
    if (paper->parsed()) return cmd_verify_paper(flags);
    if (defect->parsed()) return cmd_defect(flags);
    if (kernel->parsed()) return cmd_kernel(flags);
  } catch (const toepker::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
