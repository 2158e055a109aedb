#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "permusmooth/errors.hpp"
#include "permusmooth/model_selection.hpp"
#include "permusmooth/synthetic.hpp"
#include "test_util.hpp"

using namespace permusmooth;

namespace {

// Independent elbow oracle: largest turning angle between consecutive
// segments on min-max-normalized coordinates.
std::size_t curvature_elbow(const std::vector<std::pair<double, double>>& pts) {
  double x_min = pts[0].first, x_max = pts[0].first;
  double y_min = pts[0].second, y_max = pts[0].second;
  for (const auto& [x, y] : pts) {
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }
  auto nx = [&](double x) { return x_max > x_min ? (x - x_min) / (x_max - x_min) : 0.0; };
  auto ny = [&](double y) { return y_max > y_min ? (y - y_min) / (y_max - y_min) : 0.0; };
  std::size_t best = 0;
  double best_angle = -1;
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    const double ax = nx(pts[k].first) - nx(pts[k - 1].first);
    const double ay = ny(pts[k].second) - ny(pts[k - 1].second);
    const double bx = nx(pts[k + 1].first) - nx(pts[k].first);
    const double by = ny(pts[k + 1].second) - ny(pts[k].second);
    const double cosv = (ax * bx + ay * by) / (std::hypot(ax, ay) * std::hypot(bx, by) + 1e-30);
    const double angle = std::acos(std::clamp(cosv, -1.0, 1.0));
    if (angle > best_angle) {
      best_angle = angle;
      best = k;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("find_elbow basics") {
  SUBCASE("collinear points tie to index 0") {
    CHECK(find_elbow({{0, 0}, {0.5, 0.5}, {1, 1}}) == 0);
  }

  SUBCASE("right angle picks the middle point") {
    CHECK(find_elbow({{0, 1}, {0, 0}, {1, 0}}) == 1);
  }

  SUBCASE("degenerate chord returns 0") {
    CHECK(find_elbow({{1, 1}, {5, 3}, {1, 1}}) == 0);
  }

  SUBCASE("fewer than three points is a parameter error") {
    CHECK_THROWS_AS(find_elbow({{0, 0}, {1, 1}}), ParameterError);
  }
}

TEST_CASE("find_elbow agrees with a curvature-based oracle on corner curves") {
  Rng rng(179);
  int agree = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t n = 8 + rng.next_below(10);
    const std::size_t corner = 2 + rng.next_below(n - 4);
    const double steep = 3.0 + 7.0 * rng.next_double();
    const double shallow = 0.05 + 0.15 * rng.next_double();
    std::vector<std::pair<double, double>> pts;
    double y = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double x = static_cast<double>(k) / static_cast<double>(n - 1);
      if (k > 0) {
        const double dx = 1.0 / static_cast<double>(n - 1);
        y -= (k <= corner ? steep : shallow) * dx;
      }
      const double jitter = 1e-3 * (rng.next_double() - 0.5);
      pts.emplace_back(x, y + jitter);
    }
    if (find_elbow(pts) == curvature_elbow(pts)) ++agree;
  }
  CHECK(agree >= 80);
}

TEST_CASE("sweep on single-dimension data degenerates cleanly") {
  Rng rng(181);
  DataMatrix x = testutil::random_matrix(12, 1, rng);
  FitConfig base;
  base.seed = 5;
  SweepResult result = sweep(x, {0.1, 1.0, 10.0}, base);
  REQUIRE(result.entries.size() == 3);
  for (const auto& e : result.entries) {
    CHECK(e.entropy_term == 0.0);  // point-mass weights
  }
  CHECK(result.elbow_index == 0);  // degenerate curve ties to the smallest epsilon
  CHECK(result.entries[0].epsilon == 0.1);
  CHECK(result.entries[2].epsilon == 10.0);
}

TEST_CASE("sweep entries match re-evaluation through the objective") {
  SyntheticSpec spec;
  spec.instances = 16;
  spec.dims = 6;
  spec.scramble_seed = 2;
  SyntheticData data = generate_synthetic(spec);
  FitConfig base;
  base.restarts = 4;
  base.init_mode = InitMode::kColumnSorted;
  SweepResult result = sweep(data.scrambled, {0.05, 0.2, 1.0, 5.0}, base);
  for (const auto& e : result.entries) {
    auto again = objective(data.scrambled, e.result.sigma, e.result.w, e.epsilon);
    CHECK(e.expected_nonsmoothness ==
          doctest::Approx(again.expected_nonsmoothness).epsilon(1e-9));
    CHECK(e.entropy_term == doctest::Approx(again.entropy_term).epsilon(1e-9));
  }
}

TEST_CASE("Shannon entropy of the fitted weights grows with epsilon") {
  SyntheticSpec spec;
  spec.instances = 24;
  spec.dims = 8;
  spec.scramble_seed = 7;
  SyntheticData data = generate_synthetic(spec);
  FitConfig base;
  base.restarts = 10;
  base.init_mode = InitMode::kColumnSorted;
  base.seed = 11;  // shared initialization across the grid
  std::vector<double> grid = default_epsilon_grid(data.scrambled, {}, 8);
  SweepResult result = sweep(data.scrambled, grid, base);
  const double h_small = -result.entries.front().entropy_term;
  const double h_large = -result.entries.back().entropy_term;
  CHECK(h_large >= h_small - 1e-6);
}

TEST_CASE("L-curve shape sanity over six decades") {
  SyntheticSpec spec;
  spec.instances = 24;
  spec.dims = 8;
  spec.scramble_seed = 3;
  SyntheticData data = generate_synthetic(spec);
  FitConfig base;
  base.restarts = 10;
  base.init_mode = InitMode::kColumnSorted;
  SweepResult result = sweep(data.scrambled, default_epsilon_grid(data.scrambled, {}, 12), base);

  // expected non-smoothness falls as the entropy term rises (weights
  // concentrate); allow slack for restart noise between near-equal fits
  auto entries = result.entries;
  std::sort(entries.begin(), entries.end(),
            [](const SweepEntry& a, const SweepEntry& b) { return a.entropy_term < b.entropy_term; });
  double y_max = 0;
  for (const auto& e : entries) y_max = std::max(y_max, e.expected_nonsmoothness);
  for (std::size_t k = 1; k < entries.size(); ++k) {
    CHECK(entries[k].expected_nonsmoothness <=
          entries[k - 1].expected_nonsmoothness + 0.02 * y_max);
  }
}

TEST_CASE("sweep validation") {
  Rng rng(191);
  DataMatrix x = testutil::random_matrix(8, 2, rng);
  FitConfig base;
  CHECK_THROWS_AS(sweep(x, {0.1, 1.0}, base), ParameterError);
  CHECK_THROWS_AS(sweep(x, {0.1, 1.0, -2.0}, base), ParameterError);
}

TEST_CASE("default epsilon grid is scale aware") {
  Rng rng(193);
  DataMatrix x = testutil::random_matrix(10, 4, rng);
  std::vector<double> v = x.values();
  for (double& q : v) q *= 10.0;  // scales every S_d by 100
  DataMatrix x10(10, 4, v);

  auto grid = default_epsilon_grid(x);
  auto grid10 = default_epsilon_grid(x10);
  REQUIRE(grid.size() == 16);
  REQUIRE(grid10.size() == 16);
  CHECK(grid10.front() == doctest::Approx(100.0 * grid.front()).epsilon(1e-9));
  CHECK(grid10.back() == doctest::Approx(100.0 * grid.back()).epsilon(1e-9));
  CHECK(grid.back() / grid.front() == doctest::Approx(1e6).epsilon(1e-9));
}
