#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "taupade/fpade.hpp"
#include "taupade/roots.hpp"

namespace taupade {

/// Zeros and poles of a rational approximant of type (p,q).  Constant
/// numerators/denominators (after trailing trim) contribute empty sets, so
/// |zeros| and |poles| are the numeric degrees.
struct ZeroPoleSet {
  std::vector<std::complex<double>> zeros;
  std::vector<std::complex<double>> poles;
  int p = 0;
  int q = 0;
};

inline ZeroPoleSet zeros_poles(const RationalApproximant& r) {
  ZeroPoleSet out;
  out.p = r.p;
  out.q = r.q;
  const CoeffSeries num = trimmed(r.numerator);
  if (num.degree() >= 1) out.zeros = basis_roots(num);
  const CoeffSeries den = trimmed(r.denominator);
  if (den.degree() >= 1) out.poles = basis_roots(den);
  return out;
}

/// Number of pole/zero pairs closer than tol, under globally greedy matching:
/// repeatedly pair the currently closest (pole, zero) couple with distance
/// below tol, remove both, repeat.  Each zero is consumable at most once, so
/// two poles crowding one zero count as a single doublet.  Ties are broken by
/// value, which makes the count independent of input ordering.
inline int count_doublets(const ZeroPoleSet& zp, double tol) {
  if (!(tol > 0.0)) throw ConfigError("count_doublets: tol must be positive");
  struct Pair {
    double dist;
    std::complex<double> pole, zero;
    size_t pi, zi;
  };
  std::vector<Pair> pairs;
  for (size_t i = 0; i < zp.poles.size(); ++i)
    for (size_t j = 0; j < zp.zeros.size(); ++j) {
      const double d = std::abs(zp.poles[i] - zp.zeros[j]);
      if (d < tol) pairs.push_back({d, zp.poles[i], zp.zeros[j], i, j});
    }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.pole.real() != b.pole.real()) return a.pole.real() < b.pole.real();
    if (a.pole.imag() != b.pole.imag()) return a.pole.imag() < b.pole.imag();
    if (a.zero.real() != b.zero.real()) return a.zero.real() < b.zero.real();
    return a.zero.imag() < b.zero.imag();
  });
  std::vector<char> pole_used(zp.poles.size(), 0), zero_used(zp.zeros.size(), 0);
  int count = 0;
  for (const Pair& pr : pairs) {
    if (pole_used[pr.pi] || zero_used[pr.zi]) continue;
    pole_used[pr.pi] = zero_used[pr.zi] = 1;
    ++count;
  }
  return count;
}

/// Grid of doublet counts n_{p,q} for 1 <= p <= pmax, 1 <= q <= qmax at a
/// fixed tolerance.  Cells whose approximant could not be built (insufficient
/// coefficients, singular system) are first-class failure states and carry no
/// count.
struct FroissartTable {
  double tol = 1e-5;
  int pmax = 0;
  int qmax = 0;
  std::vector<int> cells;  ///< row-major (p-1)*qmax + (q-1); -1 marks failure

  bool failed(int p, int q) const { return cell(p, q) < 0; }
  int count(int p, int q) const {
    const int v = cell(p, q);
    if (v < 0) throw ConfigError("froissart table: cell (" + std::to_string(p) + "," +
                                 std::to_string(q) + ") failed and carries no count");
    return v;
  }
  std::vector<std::pair<int, int>> failures() const {
    std::vector<std::pair<int, int>> f;
    for (int p = 1; p <= pmax; ++p)
      for (int q = 1; q <= qmax; ++q)
        if (failed(p, q)) f.emplace_back(p, q);
    return f;
  }

private:
  int cell(int p, int q) const {
    if (p < 1 || p > pmax || q < 1 || q > qmax)
      throw ConfigError("froissart table: cell index out of range");
    return cells[static_cast<size_t>(p - 1) * static_cast<size_t>(qmax) +
                 static_cast<size_t>(q - 1)];
  }
};

/// Default doublet tolerance.
inline constexpr double kDefaultFroissartTol = 1e-5;

/// Builds the tol-Froissart table of the series.  All cells share one
/// read-only h-table; cells are evaluated concurrently (work-stealing over the
/// flattened grid) and assembled by (p,q) slot, so the result is independent
/// of scheduling and thread count.  Construction failures never abort the
/// table.
inline FroissartTable froissart_table(const OrthoBasis& basis, const CoeffSeries& c,
                                      int pmax, int qmax,
                                      double tol = kDefaultFroissartTol,
                                      unsigned threads = 0) {
  if (pmax < 1 || qmax < 1) throw ConfigError("froissart_table: need pmax, qmax >= 1");
  if (!(tol > 0.0)) throw ConfigError("froissart_table: tol must be positive");
  FroissartTable table;
  table.tol = tol;
  table.pmax = pmax;
  table.qmax = qmax;
  table.cells.assign(static_cast<size_t>(pmax) * static_cast<size_t>(qmax), -1);

  const HTable shared =
      detail::h_table_partial(basis, c, pmax + qmax + 3, qmax, HTableRule::specialized);

  const int total = pmax * qmax;
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
      const int p = idx / qmax + 1;
      const int q = idx % qmax + 1;
      try {
        const RationalApproximant r = frobenius_pade(shared, p, q);
        table.cells[static_cast<size_t>(idx)] = count_doublets(zeros_poles(r), tol);
      } catch (const Error&) {
        // failure recorded as data (-1)
      }
    }
  };

  unsigned nthreads = threads != 0 ? threads : std::thread::hardware_concurrency();
  nthreads = std::clamp(nthreads, 1u, 8u);
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(total));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return table;
}

enum class FilterStrategy { max_clean_diagonal };

/// Picks a trustworthy filter from the table.  max_clean_diagonal returns the
/// largest p with n_{p,p} = 0 (cell not failed), or nothing when no diagonal
/// cell is clean.
inline std::optional<std::pair<int, int>> select_filter(const FroissartTable& table,
                                                        FilterStrategy strategy) {
  if (strategy != FilterStrategy::max_clean_diagonal)
    throw ConfigError("select_filter: unknown strategy");
  if (table.pmax < 1 || table.qmax < 1) throw ConfigError("select_filter: empty table");
  for (int p = std::min(table.pmax, table.qmax); p >= 1; --p)
    if (!table.failed(p, p) && table.count(p, p) == 0) return std::make_pair(p, p);
  return std::nullopt;
}

inline std::string to_string(FilterStrategy s) {
  (void)s;
  return "max_clean_diagonal";
}

inline FilterStrategy filter_strategy_from_string(std::string_view name) {
  if (name == "max_clean_diagonal") return FilterStrategy::max_clean_diagonal;
  throw ConfigError("unknown filter strategy \"" + std::string(name) + "\"");
}

}  // namespace taupade
