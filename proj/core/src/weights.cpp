#include "permusmooth/weights.hpp"

#include <cmath>
#include <string>

#include "permusmooth/errors.hpp"
#include "permusmooth/rng.hpp"

namespace permusmooth {

namespace {
constexpr double kSimplexTol = 1e-9;
}

FeatureWeights::FeatureWeights(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw InputError("weights must not be empty");
  double sum = 0;
  for (double v : w_) {
    if (!std::isfinite(v) || v < -kSimplexTol) {
      throw InputError("weights must be non-negative and finite");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTol) {
    throw InputError("weights must sum to 1, got " + std::to_string(sum));
  }
  for (double& v : w_) {
    if (v < 0) v = 0;
  }
}

FeatureWeights FeatureWeights::uniform(std::size_t dims) {
  if (dims == 0) throw InputError("weights must not be empty");
  return weights_unchecked(std::vector<double>(dims, 1.0 / static_cast<double>(dims)));
}

FeatureWeights FeatureWeights::random(std::size_t dims, Rng& rng) {
  if (dims == 0) throw InputError("weights must not be empty");
  std::vector<double> v(dims);
  double sum = 0;
  for (double& x : v) {
    // Exp(1) draws normalized to the simplex give a flat Dirichlet
    x = -std::log(1.0 - rng.next_double());
    sum += x;
  }
  for (double& x : v) x /= sum;
  return weights_unchecked(std::move(v));
}

double FeatureWeights::entropy_term() const {
  double h = 0;
  for (double v : w_) {
    if (v > 0) h += v * std::log(v);
  }
  return h;
}

FeatureWeights weights_unchecked(std::vector<double> w) {
  return FeatureWeights(std::move(w), FeatureWeights::unchecked_tag{});
}

}  // namespace permusmooth
