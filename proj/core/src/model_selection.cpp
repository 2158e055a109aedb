#include "permusmooth/model_selection.hpp"

#include <algorithm>
#include <cmath>

#include "permusmooth/errors.hpp"

namespace permusmooth {

std::size_t find_elbow(const std::vector<std::pair<double, double>>& points) {
  const std::size_t n = points.size();
  if (n < 3) throw ParameterError("elbow detection needs at least 3 points");

  double x_min = points[0].first, x_max = points[0].first;
  double y_min = points[0].second, y_max = points[0].second;
  for (const auto& [x, y] : points) {
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }
  const double x_range = x_max - x_min;
  const double y_range = y_max - y_min;
  auto norm = [&](const std::pair<double, double>& p) {
    return std::pair<double, double>{x_range > 0 ? (p.first - x_min) / x_range : 0.0,
                                     y_range > 0 ? (p.second - y_min) / y_range : 0.0};
  };
  const auto [ax, ay] = norm(points.front());
  const auto [bx, by] = norm(points.back());
  const double vx = bx - ax;
  const double vy = by - ay;
  const double chord = std::hypot(vx, vy);
  if (chord == 0.0) return 0;

  std::size_t best = 0;
  double best_dist = -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto [px, py] = norm(points[k]);
    const double dist = std::abs((px - ax) * vy - (py - ay) * vx) / chord;
    if (dist > best_dist) {
      best_dist = dist;
      best = k;
    }
  }
  return best;
}

SweepResult sweep(const DataMatrix& x, std::vector<double> epsilons, const FitConfig& base_config) {
  if (epsilons.size() < 3) {
    throw ParameterError("epsilon sweep needs at least 3 values for elbow detection");
  }
  for (double e : epsilons) {
    if (!(e > 0) || !std::isfinite(e)) throw ParameterError("epsilon grid values must be positive");
  }
  std::sort(epsilons.begin(), epsilons.end());

  SweepResult out;
  out.entries.reserve(epsilons.size());
  for (double eps : epsilons) {
    FitConfig config = base_config;  // same seeds across epsilons for comparability
    config.epsilon = eps;
    SweepEntry entry;
    entry.epsilon = eps;
    entry.result = fit(x, config);
    entry.expected_nonsmoothness = entry.result.breakdown.expected_nonsmoothness;
    entry.entropy_term = entry.result.breakdown.entropy_term;
    out.entries.push_back(std::move(entry));
  }

  std::vector<std::pair<double, double>> points;
  points.reserve(out.entries.size());
  for (const auto& e : out.entries) {
    points.emplace_back(e.entropy_term, e.expected_nonsmoothness);
  }
  out.elbow_index = find_elbow(points);
  return out;
}

std::vector<double> default_epsilon_grid(const DataMatrix& x, const RingDiffSpec& spec,
                                         std::size_t count) {
  if (count < 3) throw ParameterError("epsilon grid needs at least 3 values");
  std::vector<double> s = per_dim_nonsmoothness(x, PermutationVector::identity(x.rows()), spec);
  std::sort(s.begin(), s.end());
  double median = s.size() % 2 == 1 ? s[s.size() / 2]
                                    : 0.5 * (s[s.size() / 2 - 1] + s[s.size() / 2]);
  if (!(median > 0)) median = 1.0;
  const double lo = std::log(1e-3 * median);
  const double hi = std::log(1e3 * median);
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) {
    grid[k] = std::exp(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  return grid;
}

}  // namespace permusmooth
