#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "permusmooth/matrix.hpp"
#include "permusmooth/optimizer.hpp"

namespace permusmooth {

enum class SortDirection { kAscending, kDescending };

/// Config of the simplified monotonic-ordering objective, whose P-step is a
/// sort of the weighted aggregate column (O(T log T + D T) per iteration).
struct MonotonicConfig {
  double epsilon = 1.0;
  SortDirection direction = SortDirection::kAscending;
  /// Reference sequence; empty means (1, 2, ..., T). Must be strictly monotone.
  std::vector<double> tbar;
  std::optional<double> tol;
  std::optional<std::size_t> max_iters;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  std::size_t workers = 1;
};

/// B = sum_d w_d X[:, d].
std::vector<double> aggregate(const DataMatrix& x, const FeatureWeights& w);

/// Returns sigma maximizing tbar' (P B), i.e. B rearranged to match tbar's
/// order (rearrangement inequality). Stable: equal values keep index order.
PermutationVector sort_step(const std::vector<double>& b, const std::vector<double>& tbar);

/// Alternates sort_step with the closed-form W update on the per-dimension
/// linear scores b_d = -tbar' P X[:, d]. The FitResult breakdown reuses
/// s_per_dim for the b_d scores and f_total for the monotonicity objective M.
FitResult fit_monotonic(const DataMatrix& x, const MonotonicConfig& config);

}  // namespace permusmooth
