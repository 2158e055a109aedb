#pragma once

#include <vector>

#include "permusmooth/matrix.hpp"
#include "permusmooth/permutation.hpp"
#include "permusmooth/weights.hpp"

namespace permusmooth {

/// Boundary convention of the differencing operator. When periodic the
/// implied Gram matrix is the Laplacian of the T-node ring graph; when not,
/// the wrap edge between positions T-1 and 0 is dropped.
struct RingDiffSpec {
  bool periodic = true;
};

/// Exact evaluation of the entropy-regularized objective at one (sigma, w).
struct ObjectiveBreakdown {
  std::vector<double> s_per_dim;     // S_d, one per dimension
  double expected_nonsmoothness{};   // sum_d w_d S_d
  double entropy_term{};             // sum_d w_d log w_d (natural log)
  double f_total{};                  // expected_nonsmoothness + epsilon * entropy_term
  double epsilon{};
};

/// S_d = sum_t (X[sigma(t+1), d] - X[sigma(t), d])^2 with ring successor
/// (the wrap term is dropped when not periodic).
std::vector<double> per_dim_nonsmoothness(const DataMatrix& x, const PermutationVector& sigma,
                                          const RingDiffSpec& spec = {});

/// Full objective F = sum_d w_d S_d + epsilon sum_d w_d log w_d.
ObjectiveBreakdown objective(const DataMatrix& x, const PermutationVector& sigma,
                             const FeatureWeights& w, double epsilon,
                             const RingDiffSpec& spec = {});

/// Breakdown from already-computed S_d values.
ObjectiveBreakdown objective_from_s(std::vector<double> s_per_dim, const FeatureWeights& w,
                                    double epsilon);

}  // namespace permusmooth
