#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "taupade/builtin_problems.hpp"
#include "taupade/csv.hpp"
#include "taupade/froissart.hpp"
#include "taupade/problem_io.hpp"

namespace taupade {

/// Hooks a closed-form solution provides to the pipeline.  Reports gain error
/// columns only when hooks are attached.
struct OracleHooks {
  std::function<double(double)> y;            ///< exact solution value
  std::function<double(int)> error_norm;      ///< ||y - y_k||_w for arbitrary degree k
  std::vector<int> error_sweep;               ///< degrees to tabulate in the report
};

struct RunOptions {
  bool with_table = false;
  bool with_filter = false;
  bool with_poles = false;
  int grid = 201;          ///< evaluation grid for error curves
  unsigned threads = 0;    ///< 0 = automatic
};

struct RunReport {
  BasisKind basis = BasisKind::chebyshev;
  int n = 0;
  std::vector<double> tau_coeffs;
  double condition_estimate = 0.0;
  std::vector<double> condition_residuals;

  struct ErrorRow {
    int n;
    double norm;
    double ratio;  ///< ||e_{next}|| / ||e_n|| within the sweep
  };
  std::vector<ErrorRow> error_table;  ///< only when an oracle is attached

  std::optional<FroissartTable> table;
  std::optional<std::pair<int, int>> selected_filter;
  std::optional<RationalApproximant> filter;

  struct PoleRow {
    int p;
    int q;
    std::complex<double> value;
    bool ok;  ///< false marks a degenerate cell (emitted as FAIL)
  };
  std::vector<PoleRow> pole_estimates;

  struct CurveRow {
    double t;
    double tau_err;
    double filter_err;
    bool filter_ok;
  };
  std::vector<CurveRow> error_curve;  ///< only when an oracle is attached

  std::vector<std::pair<std::string, double>> timings;  ///< (stage, seconds)
  std::vector<std::string> stage_errors;
};

namespace detail {

class StageClock {
public:
  explicit StageClock(RunReport& report, std::string name)
      : report_(report), name_(std::move(name)),
        start_(std::chrono::steady_clock::now()) {}
  ~StageClock() {
    const auto stop = std::chrono::steady_clock::now();
    report_.timings.emplace_back(
        name_, std::chrono::duration<double>(stop - start_).count());
  }

private:
  RunReport& report_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// Attaches the matching built-in oracle when the parsed problem is one of the
/// shipped families (fields compared to 1e-12 relative).
inline std::optional<OracleHooks> detect_oracle(const ProblemSpec& spec) {
  const auto near = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  const auto poly_near = [&](const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!near(a[i], b[i])) return false;
    return true;
  };
  const auto rhs_zero = [&](const std::vector<double>& r) {
    for (double v : r)
      if (v != 0.0) return false;
    return true;
  };
  const auto single_point_condition = [&](const Condition& c, double point, double value) {
    return c.terms.size() == 1 && c.terms[0].order == 0 && near(c.terms[0].weight, 1.0) &&
           near(c.terms[0].point, point) && near(c.value, value);
  };

  if (spec.basis == BasisKind::chebyshev && spec.nu == 1 && spec.p.size() == 2 &&
      rhs_zero(spec.rhs) && poly_near(spec.p[0], {-0.5}) && poly_near(spec.p[1], {1.0, 1.0}) &&
      spec.conditions.size() == 1 &&
      single_point_condition(spec.conditions[0], 0.0,
                             std::numbers::pi * std::numbers::sqrt2 / 4.0)) {
    OracleHooks hooks;
    const Example1Oracle o = example1_oracle(std::max(2, spec.n));
    hooks.y = [o](double t) { return o.y(t); };
    hooks.error_norm = [](int k) { return example1_error_norm(k); };
    for (int k = 2; k <= spec.n; ++k) hooks.error_sweep.push_back(k);
    return hooks;
  }

  if (spec.basis == BasisKind::legendre && spec.nu == 2 && spec.p.size() == 3 &&
      rhs_zero(spec.rhs) && spec.p[0].size() == 1 && spec.p[0][0] < 0.0 &&
      spec.conditions.size() == 2) {
    const double alpha2 = -spec.p[0][0] / 15.0;
    if (alpha2 > 0.0 && alpha2 < 1.0) {
      // sign of alpha from the linear coefficient of p_2: -4 alpha (1 + alpha^2)
      double alpha = std::sqrt(alpha2);
      if (spec.p[2].size() == 3 && spec.p[2][1] > 0.0) alpha = -alpha;
      const Example2Oracle o = example2_oracle(alpha);
      const double s = 1.0 + alpha * alpha;
      if (poly_near(spec.p[2], {s * s, -4.0 * alpha * s, 4.0 * alpha * alpha}) &&
          rhs_zero(spec.p[1]) &&
          single_point_condition(spec.conditions[0], -1.0, o.y_left) &&
          single_point_condition(spec.conditions[1], 1.0, o.y_right)) {
        OracleHooks hooks;
        hooks.y = [o](double t) { return o.y(t); };
        const ProblemSpec base = spec;
        hooks.error_norm = [o, base](int k) {
          const TauSolution s2 = tau_solve(base.to_operator(), OrthoBasis(base.basis), k);
          return example2_error_norm(o, s2.coeffs);
        };
        for (int k = 10; k < spec.n; k += std::max(1, spec.n / 10))
          hooks.error_sweep.push_back(k);
        hooks.error_sweep.push_back(spec.n);
        return hooks;
      }
    }
  }
  return std::nullopt;
}

/// Executes solve -> (optional) Froissart table -> filter selection ->
/// approximant construction -> direct pole sweep, assembling a RunReport.
/// Stage failures are recorded in-report and never abort the run.
inline RunReport run_pipeline(const ProblemSpec& spec, const RunOptions& opt,
                              const OracleHooks* oracle = nullptr) {
  RunReport report;
  report.basis = spec.basis;
  report.n = spec.n;
  const OrthoBasis basis(spec.basis);
  const PolyOperator op = spec.to_operator();

  std::optional<TauSolution> sol;
  {
    detail::StageClock clock(report, "solve");
    try {
      sol = tau_solve(op, basis, spec.n);
      report.tau_coeffs = sol->coeffs.coeffs;
      report.condition_estimate = sol->system_condition_estimate;
      report.condition_residuals = sol->condition_residuals;
    } catch (const Error& e) {
      report.stage_errors.push_back(std::string("solve: ") + e.what());
    }
  }
  if (!sol) return report;

  if (oracle && oracle->error_norm) {
    detail::StageClock clock(report, "error_table");
    for (size_t i = 0; i < oracle->error_sweep.size(); ++i) {
      const int k = oracle->error_sweep[i];
      const double norm = oracle->error_norm(k);
      const int k_next = i + 1 < oracle->error_sweep.size()
                             ? oracle->error_sweep[i + 1]
                             : oracle->error_sweep[i] + 1;
      const double ratio = oracle->error_norm(k_next) / norm;
      report.error_table.push_back({k, norm, ratio});
    }
  }

  const FilterSpec fs = spec.filter.value_or(FilterSpec{});
  if (opt.with_table || opt.with_filter) {
    detail::StageClock clock(report, "froissart_table");
    try {
      report.table = froissart_table(basis, sol->coeffs, fs.pmax, fs.qmax, fs.tol, opt.threads);
    } catch (const Error& e) {
      report.stage_errors.push_back(std::string("froissart_table: ") + e.what());
    }
  }

  if (opt.with_filter && report.table) {
    detail::StageClock clock(report, "filter");
    report.selected_filter = select_filter(*report.table, fs.strategy);
    if (report.selected_filter) {
      try {
        report.filter = frobenius_pade(basis, sol->coeffs, report.selected_filter->first,
                                       report.selected_filter->second);
      } catch (const Error& e) {
        report.stage_errors.push_back(std::string("filter: ") + e.what());
      }
    } else {
      report.stage_errors.push_back("filter: no clean diagonal cell in the table");
    }
  }

  if (opt.with_poles) {
    detail::StageClock clock(report, "poles");
    for (int q = 1; q <= 2; ++q) {
      for (int p = 1; p <= spec.n - 2 * q; ++p) {
        try {
          for (const std::complex<double>& pole :
               direct_poles(spec.basis, sol->coeffs, p, q))
            report.pole_estimates.push_back({p, q, pole, true});
        } catch (const Error&) {
          report.pole_estimates.push_back({p, q, {0.0, 0.0}, false});
        }
      }
    }
  }

  if (oracle && oracle->y && opt.grid >= 2) {
    detail::StageClock clock(report, "error_curve");
    for (int i = 0; i < opt.grid; ++i) {
      const double t = -1.0 + 2.0 * i / (opt.grid - 1);
      RunReport::CurveRow row{t, 0.0, 0.0, false};
      row.tau_err = std::abs(oracle->y(t) - eval_series(sol->coeffs, t));
      if (report.filter) {
        try {
          row.filter_err = std::abs(oracle->y(t) - eval_rational(*report.filter, t));
          row.filter_ok = true;
        } catch (const PoleProximityError&) {
          row.filter_ok = false;
        }
      }
      report.error_curve.push_back(row);
    }
  }
  return report;
}

/// Writes the report's CSV artifacts into out_dir.  Cell values are finite
/// numbers or the literal token FAIL; files are byte-identical across runs on
/// the same inputs.
inline void write_report_files(const RunReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

  {
    CsvWriter csv(path("tau_coeffs.csv"));
    csv.row({"k", "c"});
    for (size_t k = 0; k < report.tau_coeffs.size(); ++k)
      csv.row({std::to_string(k), format_double(report.tau_coeffs[k])});
  }
  {
    CsvWriter csv(path("report.csv"));
    if (!report.error_table.empty()) {
      csv.row({"n", "e_norm", "ratio"});
      for (const auto& r : report.error_table)
        csv.row({std::to_string(r.n), format_double(r.norm), format_double(r.ratio)});
    } else {
      csv.row({"n", "system_condition_estimate"});
      csv.row({std::to_string(report.n), format_double(report.condition_estimate)});
    }
  }
  if (report.table) {
    CsvWriter csv(path("froissart.csv"));
    csv.row({"p", "q", "count"});
    for (int p = 1; p <= report.table->pmax; ++p)
      for (int q = 1; q <= report.table->qmax; ++q)
        csv.row({std::to_string(p), std::to_string(q),
                 report.table->failed(p, q) ? "FAIL"
                                            : std::to_string(report.table->count(p, q))});
  }
  if (!report.pole_estimates.empty()) {
    CsvWriter csv(path("poles.csv"));
    csv.row({"p", "q", "re", "im"});
    for (const auto& r : report.pole_estimates) {
      if (r.ok)
        csv.row({std::to_string(r.p), std::to_string(r.q), format_double(r.value.real()),
                 format_double(r.value.imag())});
      else
        csv.row({std::to_string(r.p), std::to_string(r.q), "FAIL", "FAIL"});
    }
  }
  if (report.filter) {
    CsvWriter csv(path("filter_coeffs.csv"));
    csv.row({"part", "i", "coeff"});
    for (size_t i = 0; i < report.filter->numerator.coeffs.size(); ++i)
      csv.row({"numerator", std::to_string(i),
               format_double(report.filter->numerator.coeffs[i])});
    for (size_t i = 0; i < report.filter->denominator.coeffs.size(); ++i)
      csv.row({"denominator", std::to_string(i),
               format_double(report.filter->denominator.coeffs[i])});
  }
  if (!report.error_curve.empty()) {
    CsvWriter csv(path("error_curve.csv"));
    const bool with_filter = report.filter.has_value();
    if (with_filter) {
      csv.row({"t", "tau_abs_error", "filter_abs_error"});
      for (const auto& r : report.error_curve)
        csv.row({format_double(r.t), format_double(r.tau_err),
                 r.filter_ok ? format_double(r.filter_err) : "FAIL"});
    } else {
      csv.row({"t", "tau_abs_error"});
      for (const auto& r : report.error_curve)
        csv.row({format_double(r.t), format_double(r.tau_err)});
    }
  }
}

/// Problem specs of the built-in examples, as the CLI materializes them.
inline ProblemSpec example1_spec(int n, std::optional<FilterSpec> filter) {
  ProblemSpec spec;
  spec.basis = BasisKind::chebyshev;
  spec.n = n;
  spec.nu = 1;
  spec.p = {{-0.5}, {1.0, 1.0}};
  spec.rhs = {0.0};
  spec.conditions = example1_problem().conditions;
  spec.filter = filter;
  return spec;
}

inline ProblemSpec example2_spec(double alpha, int n, std::optional<FilterSpec> filter) {
  const PolyOperator op = example2_problem(alpha);
  ProblemSpec spec;
  spec.basis = BasisKind::legendre;
  spec.n = n;
  spec.nu = 2;
  spec.p = op.p;
  spec.rhs = {0.0};
  spec.conditions = op.conditions;
  spec.filter = filter;
  return spec;
}

}  // namespace taupade
