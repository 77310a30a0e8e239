// Command-line front end: problem-file ingestion, pipeline orchestration
// (solve -> filter -> table -> poles) and CSV emission, plus the two built-in
// benchmark problems with closed-form solutions.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "taupade/pipeline.hpp"

namespace {

using namespace taupade;

struct CommonArgs {
  std::string out_dir = ".";
  int grid = 201;
  std::optional<int> n_override;
  std::optional<std::string> basis_override;
  std::optional<int> pmax;
  std::optional<int> qmax;
  std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--out", args.out_dir, "Output directory for CSV files")
      ->default_val(".");
  cmd->add_option("--grid", args.grid, "Evaluation grid for error curves")
      ->default_val(201);
  cmd->add_option("--pmax", args.pmax, "Froissart table width override");
  cmd->add_option("--qmax", args.qmax, "Froissart table height override");
  cmd->add_option("--tol", args.tol, "Froissart doublet tolerance (default 1e-5)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open problem file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void apply_overrides(ProblemSpec& spec, const CommonArgs& args) {
  if (args.n_override) spec.n = *args.n_override;
  if (args.basis_override) spec.basis = make_basis(*args.basis_override).kind();
  if (args.pmax || args.qmax || args.tol) {
    FilterSpec f = spec.filter.value_or(FilterSpec{});
    if (args.pmax) f.pmax = *args.pmax;
    if (args.qmax) f.qmax = *args.qmax;
    if (args.tol) f.tol = *args.tol;
    spec.filter = f;
  }
}

int finish(const RunReport& report, const CommonArgs& args) {
  write_report_files(report, args.out_dir);
  std::printf("basis=%s n=%d condition_estimate=%.3e\n", to_string(report.basis).c_str(),
              report.n, report.condition_estimate);
  if (report.selected_filter)
    std::printf("selected filter: (%d,%d)\n", report.selected_filter->first,
                report.selected_filter->second);
  for (const auto& [stage, seconds] : report.timings)
    std::printf("stage %-15s %8.3f s\n", stage.c_str(), seconds);
  for (const std::string& err : report.stage_errors)
    std::printf("stage failure: %s\n", err.c_str());
  std::printf("wrote CSV files to %s\n", args.out_dir.c_str());
  return 0;
}

int run_file_command(const std::string& path, const CommonArgs& args, RunOptions opt) {
  ProblemSpec spec;
  try {
    spec = parse_problem(read_file(path));
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s (line %d, column %d)\n", e.what(), e.line(), e.column());
    return 1;
  } catch (const SpecError& e) {
    std::fprintf(stderr, "error: %s (at %s)\n", e.what(), e.path().c_str());
    return 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  apply_overrides(spec, args);
  opt.grid = args.grid;
  const std::optional<OracleHooks> oracle = detect_oracle(spec);
  const RunReport report = run_pipeline(spec, opt, oracle ? &*oracle : nullptr);
  return finish(report, args);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for linear ODEs with rational filtering and "
               "singularity estimation"};
  app.require_subcommand(1);

  CommonArgs solve_args, table_args, filter_args, poles_args, ex1_args, ex2_args;
  std::string solve_file, table_file, filter_file, poles_file;

  CLI::App* solve = app.add_subcommand("solve", "Solve a problem file (spectral stage only)");
  solve->add_option("file", solve_file, "Problem file (JSON)")->required();
  solve->add_option("--n", solve_args.n_override, "Override truncation degree");
  solve->add_option("--basis", solve_args.basis_override, "Override basis (chebyshev|legendre)");
  add_common(solve, solve_args);

  CLI::App* table = app.add_subcommand("table", "Solve, then emit the Froissart table");
  table->add_option("file", table_file, "Problem file (JSON)")->required();
  table->add_option("--n", table_args.n_override, "Override truncation degree");
  table->add_option("--basis", table_args.basis_override, "Override basis");
  add_common(table, table_args);

  CLI::App* filter = app.add_subcommand(
      "filter", "Solve, build the Froissart table, select and emit a filter");
  filter->add_option("file", filter_file, "Problem file (JSON)")->required();
  filter->add_option("--n", filter_args.n_override, "Override truncation degree");
  filter->add_option("--basis", filter_args.basis_override, "Override basis");
  add_common(filter, filter_args);

  CLI::App* poles = app.add_subcommand(
      "poles", "Solve, then sweep closed-form pole estimates for q in {1,2}");
  poles->add_option("file", poles_file, "Problem file (JSON)")->required();
  poles->add_option("--n", poles_args.n_override, "Override truncation degree");
  poles->add_option("--basis", poles_args.basis_override, "Override basis");
  add_common(poles, poles_args);

  int ex1_n = 150;
  CLI::App* ex1 = app.add_subcommand("example1", "Built-in branch-point problem "
                                                 "(t+1)y' - y/2 = 0, Chebyshev basis");
  ex1->add_option("--n", ex1_n, "Truncation degree")->default_val(150);
  ex1->add_option("--basis", ex1_args.basis_override,
                  "Basis (must be chebyshev for the built-in)");
  add_common(ex1, ex1_args);

  int ex2_n = 150;
  double ex2_alpha = 0.9;
  CLI::App* ex2 = app.add_subcommand("example2", "Built-in boundary-value family "
                                                 "(1+a^2-2at)^2 y'' - 15 a^2 y = 0, Legendre");
  ex2->add_option("--alpha", ex2_alpha, "Family parameter, 0 < |alpha| < 1")->default_val(0.9);
  ex2->add_option("--n", ex2_n, "Truncation degree")->default_val(150);
  ex2->add_option("--basis", ex2_args.basis_override,
                  "Basis (must be legendre for the built-in)");
  add_common(ex2, ex2_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return run_file_command(solve_file, solve_args, RunOptions{false, false, false});
    if (table->parsed())
      return run_file_command(table_file, table_args, RunOptions{true, false, false});
    if (filter->parsed())
      return run_file_command(filter_file, filter_args, RunOptions{true, true, false});
    if (poles->parsed())
      return run_file_command(poles_file, poles_args, RunOptions{false, false, true});

    if (ex1->parsed()) {
      if (ex1_args.basis_override && *ex1_args.basis_override != "chebyshev") {
        std::fprintf(stderr, "error: example1 is defined on the chebyshev basis\n");
        return 1;
      }
      FilterSpec f;
      if (ex1_args.pmax) f.pmax = *ex1_args.pmax;
      if (ex1_args.qmax) f.qmax = *ex1_args.qmax;
      if (ex1_args.tol) f.tol = *ex1_args.tol;
      const ProblemSpec spec = example1_spec(ex1_n, f);
      RunOptions opt{true, true, true};
      opt.grid = ex1_args.grid;
      const std::optional<OracleHooks> oracle = detect_oracle(spec);
      return finish(run_pipeline(spec, opt, oracle ? &*oracle : nullptr), ex1_args);
    }
    if (ex2->parsed()) {
      if (ex2_args.basis_override && *ex2_args.basis_override != "legendre") {
        std::fprintf(stderr, "error: example2 is defined on the legendre basis\n");
        return 1;
      }
      FilterSpec f;
      if (ex2_args.pmax) f.pmax = *ex2_args.pmax;
      if (ex2_args.qmax) f.qmax = *ex2_args.qmax;
      if (ex2_args.tol) f.tol = *ex2_args.tol;
      const ProblemSpec spec = example2_spec(ex2_alpha, ex2_n, f);
      RunOptions opt{true, true, true};
      opt.grid = ex2_args.grid;
      const std::optional<OracleHooks> oracle = detect_oracle(spec);
      return finish(run_pipeline(spec, opt, oracle ? &*oracle : nullptr), ex2_args);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
