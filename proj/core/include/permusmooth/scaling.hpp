#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace permusmooth {

/// Timing grid cell: mean/std of the per-iteration wall time (cache build +
/// pair scan + W-step, no I/O) over repeats.
struct BenchCell {
  std::size_t instances = 0;  // T
  std::size_t dims = 0;       // D
  double mean_seconds = 0;
  double std_seconds = 0;
  std::vector<double> repeat_seconds;
};

/// OLS slope on log-log points with a 95% confidence interval.
struct SlopeFit {
  double slope = 0;
  double ci_low = 0;
  double ci_high = 0;
  double intercept = 0;
  std::size_t points = 0;
};

struct BenchReport {
  std::vector<BenchCell> dim_sweep;   // fixed T, varying D
  std::vector<BenchCell> size_sweep;  // fixed D, varying T
  SlopeFit slope_dims;                // expected ~1 (linear in D)
  SlopeFit slope_instances;           // expected ~2 (quadratic in T)
  std::size_t fixed_instances = 0;
  std::size_t fixed_dims = 0;
  std::size_t repeats = 0;
};

/// Mean wall time of one descent iteration at the given size, measured on
/// seeded uniform data; one entry per repeat.
std::vector<double> measure_iteration_seconds(std::size_t instances, std::size_t dims,
                                              std::size_t repeats, double epsilon = 1.0,
                                              std::uint64_t seed = 0);

/// OLS of log(y) on log(x); the interval uses the two-sided 95% Student-t
/// quantile at n-2 degrees of freedom.
SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

BenchReport run_scaling_grid(std::size_t fixed_instances, const std::vector<std::size_t>& dim_grid,
                             std::size_t fixed_dims, const std::vector<std::size_t>& instance_grid,
                             std::size_t repeats, std::uint64_t seed = 0);

void save_bench_report(const BenchReport& report, const std::string& path);

}  // namespace permusmooth
