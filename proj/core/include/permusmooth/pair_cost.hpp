#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "permusmooth/matrix.hpp"
#include "permusmooth/objective.hpp"
#include "permusmooth/permutation.hpp"
#include "permusmooth/weights.hpp"

namespace permusmooth {

/// T x T symmetric matrix of weighted squared row distances
/// c(a,b) = sum_d w_d (X[a,d] - X[b,d])^2. Regrouping the expected
/// non-smoothness by ring edges makes every candidate swap's objective
/// change an O(1) lookup. Built in Theta(D T^2) whenever W changes; the
/// finished cache is immutable apart from the one-way staleness latch.
class PairCostCache {
 public:
  static PairCostCache build(const DataMatrix& x, const FeatureWeights& w);
  /// Raw-buffer variant for callers that maintain a permuted working copy.
  static PairCostCache build(std::size_t rows, std::size_t cols, const double* values,
                             const FeatureWeights& w);
  /// Recycles the storage of a dead cache (a rebuild after the W-step).
  static PairCostCache build(std::size_t rows, std::size_t cols, const double* values,
                             const FeatureWeights& w, PairCostCache&& recycle);

  std::size_t size() const { return size_; }
  double at(std::size_t a, std::size_t b) const { return cost_[a * size_ + b]; }
  const double* data() const { return cost_.get(); }
  const FeatureWeights& weights() const { return weights_; }

  bool stale() const { return stale_; }
  /// One-way latch; call when the weights this cache was built for change.
  void mark_stale() { stale_ = true; }

  /// sum_t c(sigma(t), sigma(t+1)) over ring edges; equals sum_d w_d S_d.
  double tour_cost(const PermutationVector& sigma, const RingDiffSpec& spec = {}) const;

  /// F_expected(swap(i,j) applied to sigma) - F_expected(sigma), from the at
  /// most four ring edges incident to positions i and j. O(1).
  /// Throws StaleCacheError when the cache is stale.
  double swap_delta(const PermutationVector& sigma, std::size_t i, std::size_t j,
                    const RingDiffSpec& spec = {}) const;

 private:
  PairCostCache(std::size_t size, std::unique_ptr<double[]> cost, FeatureWeights w)
      : size_(size), cost_(std::move(cost)), weights_(std::move(w)) {}

  std::size_t size_;
  std::unique_ptr<double[]> cost_;
  FeatureWeights weights_;
  bool stale_ = false;
};

}  // namespace permusmooth
