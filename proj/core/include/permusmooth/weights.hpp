#pragma once

#include <cstddef>
#include <vector>

namespace permusmooth {

class Rng;

/// Length-D probability vector W on the simplex.
class FeatureWeights {
 public:
  /// Validates w >= 0 and sum(w) == 1 within 1e-9.
  explicit FeatureWeights(std::vector<double> w);

  static FeatureWeights uniform(std::size_t dims);
  /// Flat Dirichlet draw (used by the random-W init mode).
  static FeatureWeights random(std::size_t dims, Rng& rng);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t d) const { return w_[d]; }
  const std::vector<double>& values() const { return w_; }

  /// Sum of w_d log w_d with the 0 log 0 = 0 convention; lies in [-log D, 0].
  double entropy_term() const;

  bool operator==(const FeatureWeights& other) const { return w_ == other.w_; }

 private:
  struct unchecked_tag {};
  FeatureWeights(std::vector<double> w, unchecked_tag) : w_(std::move(w)) {}
  friend FeatureWeights weights_unchecked(std::vector<double> w);

  std::vector<double> w_;
};

/// Internal factory for values already known to lie on the simplex
/// (closed-form W-step output).
FeatureWeights weights_unchecked(std::vector<double> w);

}  // namespace permusmooth
