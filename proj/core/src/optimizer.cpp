#include "permusmooth/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "permusmooth/errors.hpp"
#include "permusmooth/parallel.hpp"
#include "permusmooth/rng.hpp"

namespace permusmooth {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_finite_scores(const std::vector<double>& s) {
  if (s.empty()) throw InputError("score vector must not be empty");
  for (double v : s) {
    if (!std::isfinite(v)) throw InputError("scores must be finite");
  }
}

std::vector<double> softmax_neg_shifted(const std::vector<double>& s, double epsilon,
                                        double shift) {
  std::vector<double> out(s.size());
  double denom = 0;
  for (std::size_t d = 0; d < s.size(); ++d) {
    out[d] = std::exp(-(s[d] - shift) / epsilon);
    denom += out[d];
  }
  for (double& v : out) v /= denom;
  return out;
}

struct ScanBest {
  double delta = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  bool found = false;

  void consider(double d, std::size_t ci, std::size_t cj) {
    if (d >= 0.0) return;
    if (!found || d < delta || (d == delta && (ci < i || (ci == i && cj < j)))) {
      delta = d;
      i = ci;
      j = cj;
      found = true;
    }
  }

  void merge(const ScanBest& other) {
    if (other.found) consider(other.delta, other.i, other.j);
  }
};

// Fills deltas[j] for j in (i, n) against the permuted cost matrix c
// (row-major, n x n) and the ring-edge costs e, then accounts the row into
// best. The general expression handles every non-ring-adjacent pair, shared
// neighbors included; the two ring-adjacent cases are overwritten with their
// own formulas afterwards. Each delta is grouped as per-edge (new - old)
// differences: with the mirrored cost matrix the degenerate cases (T=3
// rings, opposite positions on a 4-ring, equal rows) then cancel to an exact
// 0.0 instead of rounding noise that would masquerade as an improving swap.
void scan_row_periodic(const double* c, const double* e, std::size_t n, std::size_t i,
                       std::vector<double>& deltas, ScanBest& best) {
  const std::size_t im = (i + n - 1) % n;
  const double* row_im = c + im * n;
  const double* row_ip = c + (i + 1) * n;
  const double* row_i = c + i * n;
  const double e_im = e[im];
  const double e_i = e[i];

  for (std::size_t j = i + 1; j + 1 < n; ++j) {
    deltas[j] = ((row_im[j] - e_im) + (row_i[j + 1] - e[j])) +
                ((row_ip[j] - e_i) + (row_i[j - 1] - e[j - 1]));
  }
  if (i + 1 < n) {
    const std::size_t j = n - 1;
    deltas[j] = ((row_im[j] - e_im) + (row_i[0] - e[j])) +
                ((row_ip[j] - e_i) + (row_i[j - 1] - e[j - 1]));
  }
  // adjacent pair (i, i+1): the middle edge keeps its cost
  {
    const std::size_t j = i + 1;
    deltas[j] = (row_im[j] - e_im) + (row_i[(i + 2) % n] - e[j]);
  }
  // wrap-adjacent pair (0, n-1): position n-1 precedes position 0 on the ring
  if (i == 0) {
    const std::size_t j = n - 1;
    deltas[j] = (c[(j - 1) * n + 0] - e[j - 1]) + (c[j * n + 1] - e[0]);
  }

  auto first = deltas.begin() + static_cast<std::ptrdiff_t>(i + 1);
  auto min_it = std::min_element(first, deltas.end());
  if (min_it != deltas.end()) {
    best.consider(*min_it, i, static_cast<std::size_t>(min_it - deltas.begin()));
  }
}

}  // namespace

FeatureWeights w_step(const std::vector<double>& s_per_dim, double epsilon) {
  if (!(epsilon > 0)) throw ParameterError("epsilon must be positive");
  check_finite_scores(s_per_dim);
  const double shift = *std::min_element(s_per_dim.begin(), s_per_dim.end());
  return weights_unchecked(softmax_neg_shifted(s_per_dim, epsilon, shift));
}

FeatureWeights w_step_pinned(const std::vector<double>& s_per_dim, double epsilon, std::size_t r,
                             double w0) {
  if (!(epsilon > 0)) throw ParameterError("epsilon must be positive");
  check_finite_scores(s_per_dim);
  const std::size_t dims = s_per_dim.size();
  if (dims < 2) throw ParameterError("pinning needs at least 2 dimensions (no free mass left)");
  if (r >= dims) throw ParameterError("pinned dimension index out of range");
  if (!(w0 > 0.0 && w0 < 1.0)) {
    throw ParameterError("pinned weight must lie strictly between 0 and 1");
  }
  double shift = std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < dims; ++d) {
    if (d != r) shift = std::min(shift, s_per_dim[d]);
  }
  std::vector<double> out(dims);
  double denom = 0;
  for (std::size_t d = 0; d < dims; ++d) {
    if (d == r) continue;
    out[d] = std::exp(-(s_per_dim[d] - shift) / epsilon);
    denom += out[d];
  }
  const double free_mass = 1.0 - w0;
  for (std::size_t d = 0; d < dims; ++d) {
    if (d == r) continue;
    out[d] = free_mass * (out[d] / denom);
  }
  out[r] = w0;
  return weights_unchecked(std::move(out));
}

SwapChoice p_step(const PairCostCache& cache, const PermutationVector& sigma,
                  const RingDiffSpec& spec, std::size_t workers) {
  if (cache.stale()) {
    throw StaleCacheError("pair-cost cache is stale; rebuild it after the W-step");
  }
  const std::size_t n = cache.size();
  if (sigma.size() != n) throw InputError("permutation length does not match cache size");
  if (n <= 2) return SwapChoice{};

  if (!spec.periodic) {
    // boundary edges may be missing; the generic O(1) delta covers all cases
    ScanBest best;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        best.consider(cache.swap_delta(sigma, i, j, spec), i, j);
      }
    }
    if (!best.found) return SwapChoice{};
    return SwapChoice{best.i, best.j, best.delta};
  }

  // Work against the cost matrix indexed by ring position.
  std::vector<double> permuted;
  const double* c = cache.data();
  if (!sigma.is_identity()) {
    permuted.resize(n * n);
    for (std::size_t p = 0; p < n; ++p) {
      const double* src = cache.data() + sigma(p) * n;
      double* dst = permuted.data() + p * n;
      for (std::size_t q = 0; q < n; ++q) dst[q] = src[sigma(q)];
    }
    c = permuted.data();
  }
  std::vector<double> edge(n);
  for (std::size_t p = 0; p < n; ++p) edge[p] = c[p * n + (p + 1) % n];

  const std::size_t rows = n - 1;
  const std::size_t blocks = std::max<std::size_t>(1, std::min(workers, rows));
  std::vector<ScanBest> block_best(blocks);
  parallel_for_index(blocks, blocks, [&](std::size_t b) {
    std::vector<double> deltas(n);
    ScanBest local;
    // round-robin rows across blocks to balance the shrinking inner loop
    for (std::size_t i = b; i < rows; i += blocks) {
      scan_row_periodic(c, edge.data(), n, i, deltas, local);
    }
    block_best[b] = local;
  });
  ScanBest best;
  for (const ScanBest& b : block_best) best.merge(b);
  if (!best.found) return SwapChoice{};
  return SwapChoice{best.i, best.j, best.delta};
}

PermutationVector ring_fold_order(const DataMatrix& x, std::size_t dim) {
  if (dim >= x.cols()) throw InputError("fold dimension out of range");
  const std::size_t n = x.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x(a, dim) < x(b, dim); });
  std::vector<std::size_t> fold;
  fold.reserve(n);
  for (std::size_t k = 0; k < n; k += 2) fold.push_back(order[k]);
  if (n >= 2) {
    for (std::size_t k = (n % 2 == 0) ? n - 1 : n - 2; k >= 1; k -= 2) {
      fold.push_back(order[k]);
      if (k == 1) break;
    }
  }
  return PermutationVector(std::move(fold));
}

namespace {

// One restart of the alternating descent. Maintains the row-permuted copy of
// the data so the pair scan runs against the identity ordering (no gathers).
FitResult run_restart(const DataMatrix& x, const FitConfig& config, std::size_t restart,
                      std::size_t scan_workers) {
  const std::size_t t_count = x.rows();
  const std::size_t d_count = x.cols();
  Rng rng(derive_seed(config.seed, restart));

  PermutationVector sigma = [&] {
    if (restart == 0 && config.initial_sigma) return *config.initial_sigma;
    switch (config.init_mode) {
      case InitMode::kIdentity:
        return restart == 0 ? PermutationVector::identity(t_count)
                            : PermutationVector::random(t_count, rng);
      case InitMode::kRandomSigma:
      case InitMode::kRandomSigmaRandomW:
        return PermutationVector::random(t_count, rng);
      case InitMode::kColumnSorted:
        return restart < d_count ? ring_fold_order(x, restart)
                                 : PermutationVector::random(t_count, rng);
    }
    return PermutationVector::identity(t_count);
  }();

  FeatureWeights w = [&] {
    if (config.pinned) {
      const double w0 = config.pinned->value;
      std::vector<double> v(d_count, (1.0 - w0) / static_cast<double>(d_count - 1));
      v[config.pinned->dim] = w0;
      return weights_unchecked(std::move(v));
    }
    if (config.init_mode == InitMode::kRandomSigmaRandomW) {
      return FeatureWeights::random(d_count, rng);
    }
    return FeatureWeights::uniform(d_count);
  }();

  // row-permuted working copy; row t holds original row sig[t]
  std::vector<std::size_t> sig(sigma.indices());
  std::vector<double> xp(t_count * d_count);
  for (std::size_t t = 0; t < t_count; ++t) {
    std::copy_n(x.values().data() + sig[t] * d_count, d_count, xp.data() + t * d_count);
  }

  const bool periodic = config.ring.periodic;
  auto recompute_s = [&](std::vector<double>& s) {
    std::fill(s.begin(), s.end(), 0.0);
    const std::size_t last = periodic ? t_count : t_count - 1;
    for (std::size_t t = 0; t < last; ++t) {
      const double* row_a = xp.data() + t * d_count;
      const double* row_b = xp.data() + ((t + 1) % t_count) * d_count;
      for (std::size_t d = 0; d < d_count; ++d) {
        const double diff = row_b[d] - row_a[d];
        s[d] += diff * diff;
      }
    }
  };

  auto next_weights = [&](const std::vector<double>& s) {
    return config.pinned ? w_step_pinned(s, config.epsilon, config.pinned->dim,
                                         config.pinned->value)
                         : w_step(s, config.epsilon);
  };

  const PermutationVector identity = PermutationVector::identity(t_count);
  std::vector<double> s(d_count);
  recompute_s(s);
  ObjectiveBreakdown breakdown = objective_from_s(s, w, config.epsilon);
  double f_current = breakdown.f_total;
  const double tol = config.tol.value_or(std::max(1e-9 * std::abs(f_current), 1e-12));
  const std::size_t max_iters = config.max_iters.value_or(10 * t_count * t_count);

  FitResult result;
  result.trace.reserve(std::min<std::size_t>(max_iters + 1, 4096));
  result.trace.push_back(f_current);
  result.restart_index = restart;

  const auto start = Clock::now();
  std::optional<PairCostCache> cache;
  for (std::size_t iter = 1; iter <= max_iters; ++iter) {
    auto t0 = Clock::now();
    cache = cache ? PairCostCache::build(t_count, d_count, xp.data(), w, std::move(*cache))
                  : PairCostCache::build(t_count, d_count, xp.data(), w);
    auto t1 = Clock::now();
    SwapChoice choice = p_step(*cache, identity, config.ring, scan_workers);
    auto t2 = Clock::now();
    if (choice.improving()) {
      std::swap_ranges(xp.begin() + static_cast<std::ptrdiff_t>(choice.i * d_count),
                       xp.begin() + static_cast<std::ptrdiff_t>((choice.i + 1) * d_count),
                       xp.begin() + static_cast<std::ptrdiff_t>(choice.j * d_count));
      std::swap(sig[choice.i], sig[choice.j]);
    }
    recompute_s(s);
    w = next_weights(s);
    breakdown = objective_from_s(s, w, config.epsilon);
    auto t3 = Clock::now();

    result.timings.cache_build_seconds += std::chrono::duration<double>(t1 - t0).count();
    result.timings.pair_scan_seconds += std::chrono::duration<double>(t2 - t1).count();
    result.timings.w_step_seconds += std::chrono::duration<double>(t3 - t2).count();

    result.trace.push_back(breakdown.f_total);
    result.iterations = iter;
    const double decrease = f_current - breakdown.f_total;
    f_current = breakdown.f_total;
    if (decrease <= tol) {
      result.converged = true;
      break;
    }
  }
  result.timings.total_seconds = seconds_since(start);
  result.sigma = PermutationVector(std::move(sig));
  result.w = w;
  result.breakdown = std::move(breakdown);
  return result;
}

}  // namespace

FitResult fit(const DataMatrix& x, const FitConfig& config) {
  if (x.rows() < 3) {
    throw InputError("ring ordering needs at least 3 instances, got " + std::to_string(x.rows()));
  }
  if (!(config.epsilon > 0)) throw ParameterError("epsilon must be positive");
  if (config.restarts < 1) throw ParameterError("restarts must be at least 1");
  if (config.pinned) {
    if (x.cols() < 2) {
      throw ParameterError("pinning needs at least 2 dimensions (no free mass left)");
    }
    if (config.pinned->dim >= x.cols()) throw ParameterError("pinned dimension index out of range");
    if (!(config.pinned->value > 0.0 && config.pinned->value < 1.0)) {
      throw ParameterError("pinned weight must lie strictly between 0 and 1");
    }
  }
  if (config.initial_sigma && config.initial_sigma->size() != x.rows()) {
    throw InputError("initial sigma length does not match instance count");
  }
  if (config.tol && !(*config.tol >= 0)) throw ParameterError("tol must be non-negative");

  const std::size_t workers = std::max<std::size_t>(1, config.workers);
  const std::size_t scan_workers = config.restarts == 1 ? workers : 1;

  const auto start = Clock::now();
  std::vector<FitResult> results(config.restarts);
  parallel_for_index(config.restarts, workers,
                     [&](std::size_t r) { results[r] = run_restart(x, config, r, scan_workers); });

  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].breakdown.f_total < results[best].breakdown.f_total) best = r;
  }
  FitResult winner = std::move(results[best]);
  PhaseTimings total;
  for (std::size_t r = 0; r < results.size(); ++r) {
    const PhaseTimings& t = r == best ? winner.timings : results[r].timings;
    total.cache_build_seconds += t.cache_build_seconds;
    total.pair_scan_seconds += t.pair_scan_seconds;
    total.w_step_seconds += t.w_step_seconds;
  }
  total.total_seconds = seconds_since(start);
  winner.timings = total;
  return winner;
}

}  // namespace permusmooth
