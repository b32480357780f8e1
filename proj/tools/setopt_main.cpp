#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "setopt/setopt.hpp"

/**
 * Command-line front end.
 *
 *   setopt solve PROBLEM [--out FILE] [--no-skip-rule] [--gc] [--verify] [--log-lps]
 *   setopt relax PROBLEM [--out FILE]
 *   setopt check PROBLEM --candidate FILE [--out FILE]
 *
 * Exit codes: 0 solved / valid candidate, 2 infeasible, 3 unbounded,
 * 4 candidate rejected by check, 1 I/O or validation error.
 */

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUnbounded = 3;
constexpr int kExitInvalid = 4;

void emit(const setopt::Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw setopt::InputError("cannot open output file '" + out_path + "'");
  out << j.dump(2) << "\n";
}

int status_code(setopt::SolveStatus s) {
  switch (s) {
    case setopt::SolveStatus::Solved: return kExitOk;
    case setopt::SolveStatus::Infeasible: return kExitInfeasible;
    case setopt::SolveStatus::Unbounded: return kExitUnbounded;
  }
  return kExitError;
}

int run_solve(const std::string& path, const std::string& out_path, bool no_skip,
              bool gc, bool verify, bool log_lps) {
  const auto inst = setopt::load_problem(path);
  setopt::SolveOptions options;
  options.skip_rule = !no_skip;
  options.gc_values = gc;
  options.verify = verify;
  if (log_lps) {
    options.lp_observer = [](const setopt::LpLogEntry& e) {
      std::cerr << setopt::lp_log_to_json(e).dump() << "\n";
    };
  }
  const auto report = setopt::setopt_solve(inst, options);
  emit(setopt::report_to_json(report), out_path);
  return status_code(report.status);
}

int run_relax(const std::string& path, const std::string& out_path) {
  const auto inst = setopt::load_problem(path);
  if (!setopt::is_feasible(inst)) {
    setopt::Json j;
    j["status"] = "Infeasible";
    j["certificate"] = setopt::vector_to_json(setopt::detail::farkas_certificate(inst));
    emit(j, out_path);
    return kExitInfeasible;
  }
  const auto ui = setopt::upper_image(inst);
  const auto bounded = setopt::check_bounded(ui, inst.cone);
  if (!bounded.bounded) {
    setopt::Json j;
    j["status"] = "Unbounded";
    j["certificate"] = setopt::vector_to_json(bounded.violating_direction);
    emit(j, out_path);
    return kExitUnbounded;
  }
  const auto pre = setopt::extract_presolution(inst, ui);
  emit(setopt::relax_to_json(pre, ui), out_path);
  return kExitOk;
}

int run_check(const std::string& path, const std::string& candidate_path,
              const std::string& out_path) {
  const auto inst = setopt::load_problem(path);
  const auto candidate = setopt::load_candidate(candidate_path, inst.n());
  if (!setopt::is_feasible(inst))
    throw setopt::InputError("check: the problem instance is infeasible");
  const auto ui = setopt::upper_image(inst);
  if (!setopt::check_bounded(ui, inst.cone).bounded)
    throw setopt::InputError("check: the problem instance is unbounded");
  const auto verdict = setopt::check_solution(inst, candidate);
  emit(setopt::verdict_to_json(verdict), out_path);
  return verdict.is_solution ? kExitOk : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for set optimization over polyhedral convex graphs"};
  app.require_subcommand(1);

  std::string path, out_path, candidate_path;
  bool no_skip = false, gc = false, verify = false, log_lps = false;

  auto* solve = app.add_subcommand("solve", "Solve a problem file end to end");
  solve->add_option("problem", path, "problem JSON file")->required();
  solve->add_option("--out", out_path, "write the report here instead of stdout");
  solve->add_flag("--no-skip-rule", no_skip, "process every pre-solution point");
  solve->add_flag("--gc", gc, "assert F(x) = F(x) + C and use the reduced programs");
  solve->add_flag("--verify", verify, "independently re-certify the output");
  solve->add_flag("--log-lps", log_lps, "stream solved scalar programs as JSON lines on stderr");

  auto* relax = app.add_subcommand("relax", "Phase one only: pre-solution and upper image");
  relax->add_option("problem", path, "problem JSON file")->required();
  relax->add_option("--out", out_path, "write the report here instead of stdout");

  auto* check = app.add_subcommand("check", "Validate a candidate solution");
  check->add_option("problem", path, "problem JSON file")->required();
  check->add_option("--candidate", candidate_path, "JSON array of x-vectors")->required();
  check->add_option("--out", out_path, "write the verdict here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(path, out_path, no_skip, gc, verify, log_lps);
    if (relax->parsed()) return run_relax(path, out_path);
    if (check->parsed()) return run_check(path, candidate_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
