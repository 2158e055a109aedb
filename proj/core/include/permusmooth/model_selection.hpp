#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "permusmooth/matrix.hpp"
#include "permusmooth/optimizer.hpp"

namespace permusmooth {

struct SweepEntry {
  double epsilon = 0;
  double expected_nonsmoothness = 0;
  double entropy_term = 0;
  FitResult result;
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // sorted by epsilon ascending
  std::size_t elbow_index = 0;
};

/// Index of the point with maximum perpendicular distance to the chord
/// joining the first and last points, after min-max normalization of both
/// axes. Ties resolve to the smaller index; a degenerate chord returns 0.
std::size_t find_elbow(const std::vector<std::pair<double, double>>& points);

/// One fit (with restarts, shared seeds) per epsilon; assembles the L-curve
/// of (expected non-smoothness, entropy) pairs and selects the elbow.
SweepResult sweep(const DataMatrix& x, std::vector<double> epsilons, const FitConfig& base_config);

/// 16 logarithmically spaced values spanning [1e-3, 1e3] x median(S_d at the
/// identity ordering); scale-aware so data units do not break the sweep.
std::vector<double> default_epsilon_grid(const DataMatrix& x, const RingDiffSpec& spec = {},
                                         std::size_t count = 16);

}  // namespace permusmooth
