#include "permusmooth/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "permusmooth/errors.hpp"
#include "permusmooth/rng.hpp"

namespace permusmooth {

namespace {

double population_variance(const std::vector<double>& v) {
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0;
  for (double x : v) var += (x - mean) * (x - mean);
  return var / static_cast<double>(v.size());
}

}  // namespace

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  const std::size_t t_count = spec.instances;
  const std::size_t d_count = spec.dims;
  if (t_count < 3) throw ParameterError("synthetic data needs at least 3 instances");
  if (d_count < 3) throw ParameterError("synthetic data needs at least 3 dimensions");

  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> signal[2];
  for (int k = 0; k < 2; ++k) {
    signal[k].resize(t_count);
    for (std::size_t t = 0; t < t_count; ++t) {
      const double angle =
          two_pi * spec.signal_periods[k] * static_cast<double>(t) / static_cast<double>(t_count) +
          spec.signal_phases[k];
      signal[k][t] = k == 0 ? std::sin(angle) : std::cos(angle);
    }
  }
  const double target_var = 0.5 * (population_variance(signal[0]) + population_variance(signal[1]));

  std::vector<double> values(t_count * d_count);
  std::vector<std::string> names(d_count);
  names[0] = "signal_sin";
  names[1] = "signal_cos";
  for (std::size_t t = 0; t < t_count; ++t) {
    values[t * d_count + 0] = signal[0][t];
    values[t * d_count + 1] = signal[1][t];
  }

  Rng rng(spec.scramble_seed);
  std::vector<double> column(t_count);
  for (std::size_t d = 2; d < d_count; ++d) {
    names[d] = "noise_" + std::to_string(d - 1);
    double mean = 0;
    for (std::size_t t = 0; t < t_count; ++t) {
      column[t] = rng.next_double();
      mean += column[t];
    }
    mean /= static_cast<double>(t_count);
    double var = 0;
    for (std::size_t t = 0; t < t_count; ++t) {
      column[t] -= mean;
      var += column[t] * column[t];
    }
    var /= static_cast<double>(t_count);
    if (!(var > 0)) throw Error("degenerate noise column draw");
    // rescale so the empirical variance matches the signals exactly
    const double scale = std::sqrt(target_var / var);
    for (std::size_t t = 0; t < t_count; ++t) {
      values[t * d_count + d] = column[t] * scale;
    }
  }

  DataMatrix smooth(t_count, d_count, std::move(values), std::move(names));
  PermutationVector true_sigma = PermutationVector::random(t_count, rng);
  DataMatrix scrambled = smooth.permuted_rows(true_sigma);
  return SyntheticData{std::move(smooth), std::move(scrambled), std::move(true_sigma)};
}

}  // namespace permusmooth
