#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "permusmooth/objective.hpp"
#include "permusmooth/pair_cost.hpp"

namespace permusmooth {

enum class InitMode {
  kIdentity,       // restart 0: identity sigma; later restarts: seeded-random sigma
  kRandomSigma,    // every restart: seeded-random sigma, uniform w
  kRandomSigmaRandomW,  // seeded-random sigma and random simplex w
  kColumnSorted,   // restart k < D: ring-fold ordering of column k; then random
};

struct PinnedWeight {
  std::size_t dim = 0;  // index r of the pinned dimension
  double value = 0.1;   // W_0, must lie in (0, 1)
};

struct FitConfig {
  double epsilon = 1.0;
  /// Absolute objective-decrease threshold. Unset means
  /// max(1e-9 * |F at initialization|, 1e-12), fixed per restart.
  std::optional<double> tol;
  /// Unset means 10 * T^2.
  std::optional<std::size_t> max_iters;
  InitMode init_mode = InitMode::kIdentity;
  std::optional<PinnedWeight> pinned;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  RingDiffSpec ring{};
  /// Worker threads: parallelizes restarts (and independent sweep fits).
  /// Results are identical for any worker count.
  std::size_t workers = 1;
  /// Overrides the restart-0 initial ordering (used by equivariance checks).
  std::optional<PermutationVector> initial_sigma;
};

struct PhaseTimings {
  double cache_build_seconds = 0;
  double pair_scan_seconds = 0;
  double w_step_seconds = 0;
  double total_seconds = 0;
};

struct FitResult {
  PermutationVector sigma{std::vector<std::size_t>{0}};
  FeatureWeights w{std::vector<double>{1.0}};
  std::vector<double> trace;  // f_total per iteration, starting at the initial point
  ObjectiveBreakdown breakdown;
  std::size_t iterations = 0;
  bool converged = false;
  std::size_t restart_index = 0;
  PhaseTimings timings;
};

/// Closed-form W-step: w_d proportional to exp(-(S_d - min S)/epsilon);
/// the min-shift is algebraically neutral and prevents underflow. Strictly
/// positive, sums to 1.
FeatureWeights w_step(const std::vector<double>& s_per_dim, double epsilon);

/// Constrained variant with w_r = w0 fixed; the free dimensions share the
/// remaining 1 - w0 by the same softmax rule.
FeatureWeights w_step_pinned(const std::vector<double>& s_per_dim, double epsilon, std::size_t r,
                             double w0);

struct SwapChoice {
  std::size_t i = 0;
  std::size_t j = 0;
  double delta = 0.0;  // 0 with i == j means: no improving swap exists
  bool improving() const { return delta < 0.0; }
};

/// Scans all T(T-1)/2 unordered position pairs and returns the most negative
/// swap delta; exact ties resolve to the lexicographically smallest (i, j).
/// The reduction is deterministic for any worker count.
SwapChoice p_step(const PairCostCache& cache, const PermutationVector& sigma,
                  const RingDiffSpec& spec = {}, std::size_t workers = 1);

/// Alternating descent: best pairwise swap, then closed-form W update,
/// rebuilding the pair-cost cache after each W change. Monotone
/// non-increasing trace; stops when the objective decrease falls to tol
/// (which bounds both the swap gain and the W-step gain) or at max_iters.
/// With restarts > 1 the result with the smallest final f_total wins,
/// ties to the lowest restart index.
FitResult fit(const DataMatrix& x, const FitConfig& config);

/// Ring-fold ("zigzag") ordering of one column: ascending through the
/// even-ranked values and back down through the odd-ranked ones; a 1D
/// seriation seed whose single-column non-smoothness is near-minimal.
PermutationVector ring_fold_order(const DataMatrix& x, std::size_t dim);

}  // namespace permusmooth
