#include <doctest.h>

#include <cmath>

#include "permusmooth/errors.hpp"
#include "permusmooth/scaling.hpp"

using namespace permusmooth;

TEST_CASE("fit_loglog_slope recovers exact power laws") {
  std::vector<std::pair<double, double>> quadratic;
  for (double x : {16.0, 32.0, 64.0, 128.0}) quadratic.emplace_back(x, 3.0 * x * x);
  SlopeFit fit = fit_loglog_slope(quadratic);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fit.ci_low <= 2.0);
  CHECK(fit.ci_high >= 2.0);

  std::vector<std::pair<double, double>> linear;
  for (double x : {10.0, 20.0, 40.0, 80.0, 160.0}) linear.emplace_back(x, 0.5 * x);
  fit = fit_loglog_slope(linear);
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fit_loglog_slope widens the interval under noise") {
  std::vector<std::pair<double, double>> pts;
  double wobble = 1.0;
  for (double x : {8.0, 16.0, 32.0, 64.0, 128.0, 256.0}) {
    wobble = -wobble;
    pts.emplace_back(x, x * (1.0 + 0.2 * wobble));
  }
  SlopeFit fit = fit_loglog_slope(pts);
  CHECK(fit.ci_high - fit.ci_low > 0.01);
  CHECK(fit.ci_low <= 1.0);
  CHECK(fit.ci_high >= 1.0);
}

TEST_CASE("fit_loglog_slope validation") {
  CHECK_THROWS_AS(fit_loglog_slope({{1.0, 1.0}, {2.0, 2.0}}), ParameterError);
  CHECK_THROWS_AS(fit_loglog_slope({{1.0, 1.0}, {2.0, -2.0}, {3.0, 1.0}}), ParameterError);
  CHECK_THROWS_AS(fit_loglog_slope({{1.0, 1.0}, {1.0, 2.0}, {1.0, 3.0}}), ParameterError);
}

TEST_CASE("measure_iteration_seconds returns one positive time per repeat") {
  auto times = measure_iteration_seconds(24, 4, 3);
  REQUIRE(times.size() == 3);
  for (double t : times) CHECK(t > 0.0);
  CHECK_THROWS_AS(measure_iteration_seconds(2, 4, 3), ParameterError);
  CHECK_THROWS_AS(measure_iteration_seconds(24, 4, 0), ParameterError);
}
