#pragma once

// Shared test helpers: random instances and the independent oracles the
// expected values are frozen from (exhaustive enumeration, a numeric
// simplex-constrained minimizer, Sinkhorn-style doubly-stochastic samples).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "permusmooth/matrix.hpp"
#include "permusmooth/objective.hpp"
#include "permusmooth/optimizer.hpp"
#include "permusmooth/permutation.hpp"
#include "permusmooth/rng.hpp"
#include "permusmooth/weights.hpp"

namespace testutil {

using permusmooth::DataMatrix;
using permusmooth::FeatureWeights;
using permusmooth::PermutationVector;
using permusmooth::RingDiffSpec;
using permusmooth::Rng;

inline DataMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double lo = -1.0,
                                double hi = 1.0) {
  std::vector<double> v(rows * cols);
  for (double& x : v) x = lo + (hi - lo) * rng.next_double();
  return DataMatrix(rows, cols, std::move(v));
}

inline FeatureWeights random_weights(std::size_t dims, Rng& rng) {
  return FeatureWeights::random(dims, rng);
}

/// Direct evaluation of S_d from the definition (independent of the
/// library's row-pair loop ordering).
inline std::vector<double> naive_s(const DataMatrix& x, const PermutationVector& sigma,
                                   bool periodic = true) {
  std::vector<double> s(x.cols(), 0.0);
  const std::size_t n = x.rows();
  const std::size_t last = periodic ? n : n - 1;
  for (std::size_t d = 0; d < x.cols(); ++d) {
    for (std::size_t t = 0; t < last; ++t) {
      const double diff = x(sigma((t + 1) % n), d) - x(sigma(t), d);
      s[d] += diff * diff;
    }
  }
  return s;
}

inline double weighted_tour(const DataMatrix& x, const PermutationVector& sigma,
                            const FeatureWeights& w, bool periodic = true) {
  const auto s = naive_s(x, sigma, periodic);
  double total = 0;
  for (std::size_t d = 0; d < s.size(); ++d) total += w[d] * s[d];
  return total;
}

/// Visits every permutation of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_permutation(std::size_t n, Fn&& fn) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    fn(PermutationVector(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

struct SimplexProblem {
  std::vector<double> scores;  // linear term
  double epsilon;
  // pinned coordinate (index, value); negative index means unconstrained
  long pinned_index = -1;
  double pinned_value = 0;
};

/// Projection of v onto {x >= 0, sum x = mass} (Duchi et al.).
inline std::vector<double> project_simplex(std::vector<double> v, double mass) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0;
  double theta = 0;
  std::size_t rho = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cum += u[k];
    const double candidate = (cum - mass) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0) {
      rho = k + 1;
      theta = candidate;
    }
  }
  (void)rho;
  for (double& x : v) x = std::max(0.0, x - theta);
  return v;
}

/// Numeric simplex-constrained minimizer of w.s + eps * sum w log w:
/// projected gradient with backtracking line search. Independent of the
/// closed-form softmax solution it is used to check.
inline std::vector<double> numeric_simplex_minimizer(const SimplexProblem& prob,
                                                     std::size_t iters = 60000) {
  const std::size_t dims = prob.scores.size();
  const double eps = prob.epsilon;
  std::vector<std::size_t> free_idx;
  for (std::size_t d = 0; d < dims; ++d) {
    if (prob.pinned_index < 0 || d != static_cast<std::size_t>(prob.pinned_index)) {
      free_idx.push_back(d);
    }
  }
  const double mass = prob.pinned_index < 0 ? 1.0 : 1.0 - prob.pinned_value;

  auto value = [&](const std::vector<double>& wf) {
    double f = 0;
    for (std::size_t k = 0; k < free_idx.size(); ++k) {
      const double w = wf[k];
      f += w * prob.scores[free_idx[k]];
      if (w > 0) f += eps * w * std::log(w);
    }
    return f;
  };

  std::vector<double> w(free_idx.size(), mass / static_cast<double>(free_idx.size()));
  double fw = value(w);
  double step = 1.0 / (1.0 + eps);
  std::vector<double> grad(free_idx.size()), trial;
  std::size_t stalled = 0;
  for (std::size_t it = 0; it < iters && stalled < 3; ++it) {
    for (std::size_t k = 0; k < free_idx.size(); ++k) {
      grad[k] = prob.scores[free_idx[k]] + eps * (1.0 + std::log(std::max(w[k], 1e-300)));
    }
    bool improved = false;
    for (int bt = 0; bt < 80 && !improved; ++bt) {
      trial = w;
      for (std::size_t k = 0; k < trial.size(); ++k) trial[k] -= step * grad[k];
      trial = project_simplex(std::move(trial), mass);
      if (value(trial) < fw) {
        double move = 0;
        for (std::size_t k = 0; k < trial.size(); ++k) move = std::max(move, std::abs(trial[k] - w[k]));
        w = trial;
        fw = value(w);
        step = std::min(step * 2.0, 1e6);
        improved = true;
        if (move < 1e-14) ++stalled;
      } else {
        step *= 0.5;
      }
    }
    if (!improved) {
      // stationary at line-search resolution; retry from a fresh step
      step = 1.0 / (1.0 + eps);
      ++stalled;
    }
  }

  // Second, independent route: mirror descent (exponentiated gradient) on
  // the same problem; immune to the Euclidean conditioning that slows the
  // projected-gradient phase when the optimum sits near the boundary.
  std::vector<double> mirror(free_idx.size(), mass / static_cast<double>(free_idx.size()));
  const double rate = 1.0 / (2.0 * eps);
  for (std::size_t it = 0; it < 600; ++it) {
    double norm = 0;
    for (std::size_t k = 0; k < mirror.size(); ++k) {
      const double g = prob.scores[free_idx[k]] + eps * (1.0 + std::log(std::max(mirror[k], 1e-300)));
      mirror[k] = std::max(mirror[k], 1e-300) * std::exp(-rate * g);
      norm += mirror[k];
    }
    for (double& v : mirror) v *= mass / norm;
  }
  if (value(mirror) < fw) w = mirror;

  std::vector<double> out(dims, 0.0);
  for (std::size_t k = 0; k < free_idx.size(); ++k) out[free_idx[k]] = w[k];
  if (prob.pinned_index >= 0) out[static_cast<std::size_t>(prob.pinned_index)] = prob.pinned_value;
  return out;
}

/// Positive random matrix balanced to doubly-stochastic by alternating
/// row/column normalization.
inline std::vector<double> sinkhorn_doubly_stochastic(std::size_t n, Rng& rng,
                                                      std::size_t sweeps = 300) {
  std::vector<double> m(n * n);
  for (double& v : m) v = 0.05 + rng.next_double();
  for (std::size_t s = 0; s < sweeps; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0;
      for (std::size_t j = 0; j < n; ++j) sum += m[i * n + j];
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] /= sum;
    }
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0;
      for (std::size_t i = 0; i < n; ++i) sum += m[i * n + j];
      for (std::size_t i = 0; i < n; ++i) m[i * n + j] /= sum;
    }
  }
  return m;
}

/// x' P' L P x for the ring Laplacian L = Delta' Delta, evaluated directly.
inline double ring_quadform(const std::vector<double>& p, const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> px(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) px[i] += p[i * n + j] * x[j];
  }
  double q = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double diff = px[(t + 1) % n] - px[t];
    q += diff * diff;
  }
  return q;
}

}  // namespace testutil
