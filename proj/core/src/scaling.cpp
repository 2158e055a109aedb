#include "permusmooth/scaling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>

#include <json.hpp>

#include "permusmooth/errors.hpp"
#include "permusmooth/optimizer.hpp"
#include "permusmooth/pair_cost.hpp"
#include "permusmooth/rng.hpp"

namespace permusmooth {

namespace {

using Clock = std::chrono::steady_clock;

// Two-sided 95% Student-t quantiles by degrees of freedom.
double t_quantile_95(std::size_t dof) {
  static constexpr double kTable[30] = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (dof == 0) return kTable[0];
  if (dof <= 30) return kTable[dof - 1];
  if (dof <= 40) return 2.021;
  if (dof <= 60) return 2.000;
  if (dof <= 120) return 1.980;
  return 1.960;
}

// Steady-state descent iteration: cache build + pair scan + W-step, no I/O.
struct IterationState {
  std::size_t t_count;
  std::size_t d_count;
  double epsilon;
  std::vector<double> xp;
  FeatureWeights w;
  PermutationVector identity;
  std::vector<double> s;
  std::optional<PairCostCache> cache;

  IterationState(std::size_t t, std::size_t d, double eps, std::uint64_t seed)
      : t_count(t),
        d_count(d),
        epsilon(eps),
        xp(t * d),
        w(FeatureWeights::uniform(d)),
        identity(PermutationVector::identity(t)),
        s(d) {
    Rng rng(seed);
    for (double& v : xp) v = rng.next_double();
  }

  void run_one() {
    cache = cache ? PairCostCache::build(t_count, d_count, xp.data(), w, std::move(*cache))
                  : PairCostCache::build(t_count, d_count, xp.data(), w);
    SwapChoice choice = p_step(*cache, identity);
    if (choice.improving()) {
      std::swap_ranges(xp.begin() + static_cast<std::ptrdiff_t>(choice.i * d_count),
                       xp.begin() + static_cast<std::ptrdiff_t>((choice.i + 1) * d_count),
                       xp.begin() + static_cast<std::ptrdiff_t>(choice.j * d_count));
    }
    std::fill(s.begin(), s.end(), 0.0);
    for (std::size_t t = 0; t < t_count; ++t) {
      const double* row_a = xp.data() + t * d_count;
      const double* row_b = xp.data() + ((t + 1) % t_count) * d_count;
      for (std::size_t d = 0; d < d_count; ++d) {
        const double diff = row_b[d] - row_a[d];
        s[d] += diff * diff;
      }
    }
    w = w_step(s, epsilon);
  }
};

BenchCell measure_cell(std::size_t t, std::size_t d, std::size_t repeats, double epsilon,
                       std::uint64_t seed) {
  IterationState state(t, d, epsilon, seed);
  state.run_one();  // warm up caches and the allocator

  // batch iterations so each repeat spans a reliably measurable time
  auto t0 = Clock::now();
  state.run_one();
  double one = std::chrono::duration<double>(Clock::now() - t0).count();
  const std::size_t batch = std::clamp<std::size_t>(
      static_cast<std::size_t>(0.02 / std::max(one, 1e-9)), 1, 2000);

  BenchCell cell;
  cell.instances = t;
  cell.dims = d;
  cell.repeat_seconds.reserve(repeats);
  for (std::size_t rep = 0; rep < repeats; ++rep) {
    auto begin = Clock::now();
    for (std::size_t k = 0; k < batch; ++k) state.run_one();
    const double elapsed = std::chrono::duration<double>(Clock::now() - begin).count();
    cell.repeat_seconds.push_back(elapsed / static_cast<double>(batch));
  }
  double mean = 0;
  for (double v : cell.repeat_seconds) mean += v;
  mean /= static_cast<double>(repeats);
  double var = 0;
  for (double v : cell.repeat_seconds) var += (v - mean) * (v - mean);
  cell.mean_seconds = mean;
  cell.std_seconds = repeats > 1 ? std::sqrt(var / static_cast<double>(repeats - 1)) : 0.0;
  return cell;
}

}  // namespace

std::vector<double> measure_iteration_seconds(std::size_t instances, std::size_t dims,
                                              std::size_t repeats, double epsilon,
                                              std::uint64_t seed) {
  if (instances < 3 || dims < 1) throw ParameterError("benchmark size too small");
  if (repeats < 1) throw ParameterError("repeats must be at least 1");
  return measure_cell(instances, dims, repeats, epsilon, seed).repeat_seconds;
}

SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw ParameterError("slope fit needs at least 3 points");
  const std::size_t n = points.size();
  double sx = 0, sy = 0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(points[k].first > 0) || !(points[k].second > 0)) {
      throw ParameterError("log-log slope fit needs positive points");
    }
    lx[k] = std::log(points[k].first);
    ly[k] = std::log(points[k].second);
    sx += lx[k];
    sy += ly[k];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (!(sxx > 0)) throw ParameterError("log-log slope fit needs at least two distinct x values");

  SlopeFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = ly[k] - (fit.intercept + fit.slope * lx[k]);
    rss += r * r;
  }
  const double se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  const double half_width = t_quantile_95(n - 2) * se;
  fit.ci_low = fit.slope - half_width;
  fit.ci_high = fit.slope + half_width;
  return fit;
}

BenchReport run_scaling_grid(std::size_t fixed_instances, const std::vector<std::size_t>& dim_grid,
                             std::size_t fixed_dims, const std::vector<std::size_t>& instance_grid,
                             std::size_t repeats, std::uint64_t seed) {
  if (repeats < 5) throw ParameterError("scaling grid needs at least 5 repeats per cell");
  if (dim_grid.size() < 3 || instance_grid.size() < 3) {
    throw ParameterError("scaling grid needs at least 3 sizes per sweep");
  }
  BenchReport report;
  report.fixed_instances = fixed_instances;
  report.fixed_dims = fixed_dims;
  report.repeats = repeats;

  std::vector<std::pair<double, double>> dim_points;
  for (std::size_t d : dim_grid) {
    BenchCell cell = measure_cell(fixed_instances, d, repeats, 1.0, seed);
    for (double v : cell.repeat_seconds) dim_points.emplace_back(static_cast<double>(d), v);
    report.dim_sweep.push_back(std::move(cell));
  }
  std::vector<std::pair<double, double>> size_points;
  for (std::size_t t : instance_grid) {
    BenchCell cell = measure_cell(t, fixed_dims, repeats, 1.0, seed);
    for (double v : cell.repeat_seconds) size_points.emplace_back(static_cast<double>(t), v);
    report.size_sweep.push_back(std::move(cell));
  }
  report.slope_dims = fit_loglog_slope(dim_points);
  report.slope_instances = fit_loglog_slope(size_points);
  return report;
}

void save_bench_report(const BenchReport& report, const std::string& path) {
  using Json = nlohmann::ordered_json;
  auto cells_to_json = [](const std::vector<BenchCell>& cells) {
    Json arr = Json::array();
    for (const auto& c : cells) {
      arr.push_back(Json{{"instances", c.instances},
                         {"dims", c.dims},
                         {"mean_seconds", c.mean_seconds},
                         {"std_seconds", c.std_seconds},
                         {"repeat_seconds", c.repeat_seconds}});
    }
    return arr;
  };
  auto slope_to_json = [](const SlopeFit& s) {
    return Json{{"slope", s.slope},
                {"ci_low", s.ci_low},
                {"ci_high", s.ci_high},
                {"intercept", s.intercept},
                {"points", s.points}};
  };
  Json j;
  j["schema_version"] = 1;
  j["fixed_instances"] = report.fixed_instances;
  j["fixed_dims"] = report.fixed_dims;
  j["repeats"] = report.repeats;
  j["dim_sweep"] = cells_to_json(report.dim_sweep);
  j["size_sweep"] = cells_to_json(report.size_sweep);
  j["slope_dims"] = slope_to_json(report.slope_dims);
  j["slope_instances"] = slope_to_json(report.slope_instances);

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + path + "'");
  file << j.dump(2) << '\n';
  if (!file) throw IoError("failed while writing '" + path + "'");
}

}  // namespace permusmooth
