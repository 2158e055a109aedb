#include "permusmooth/monotonic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "permusmooth/errors.hpp"
#include "permusmooth/parallel.hpp"
#include "permusmooth/rng.hpp"

namespace permusmooth {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<double> default_tbar(std::size_t n) {
  std::vector<double> t(n);
  std::iota(t.begin(), t.end(), 1.0);
  return t;
}

void check_strictly_monotone(const std::vector<double>& t) {
  if (t.size() < 2) return;
  const bool increasing = t[1] > t[0];
  for (std::size_t k = 1; k < t.size(); ++k) {
    const bool step_up = t[k] > t[k - 1];
    if (t[k] == t[k - 1] || step_up != increasing) {
      throw ParameterError("tbar must be strictly monotone");
    }
  }
}

std::vector<std::size_t> stable_argsort(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  return order;
}

/// b_d = -tbar' P X[:, d]
std::vector<double> linear_scores(const DataMatrix& x, const PermutationVector& sigma,
                                  const std::vector<double>& tbar) {
  std::vector<double> b(x.cols(), 0.0);
  for (std::size_t t = 0; t < x.rows(); ++t) {
    const auto row = x.row(sigma(t));
    const double a = tbar[t];
    for (std::size_t d = 0; d < x.cols(); ++d) b[d] -= a * row[d];
  }
  return b;
}

FitResult run_restart(const DataMatrix& x, const MonotonicConfig& config,
                      const std::vector<double>& tbar, std::size_t restart) {
  const std::size_t d_count = x.cols();
  Rng rng(derive_seed(config.seed, restart));
  FeatureWeights w =
      restart == 0 ? FeatureWeights::uniform(d_count) : FeatureWeights::random(d_count, rng);

  PermutationVector sigma = PermutationVector::identity(x.rows());
  std::vector<double> b = linear_scores(x, sigma, tbar);
  ObjectiveBreakdown breakdown = objective_from_s(b, w, config.epsilon);
  double m_current = breakdown.f_total;
  const double tol = config.tol.value_or(std::max(1e-9 * std::abs(m_current), 1e-12));
  const std::size_t max_iters = config.max_iters.value_or(10 * x.rows() * x.rows());

  FitResult result;
  result.trace.push_back(m_current);
  result.restart_index = restart;

  const auto start = Clock::now();
  for (std::size_t iter = 1; iter <= max_iters; ++iter) {
    auto t0 = Clock::now();
    sigma = sort_step(aggregate(x, w), tbar);
    b = linear_scores(x, sigma, tbar);
    auto t1 = Clock::now();
    w = w_step(b, config.epsilon);
    breakdown = objective_from_s(b, w, config.epsilon);
    auto t2 = Clock::now();
    result.timings.pair_scan_seconds += std::chrono::duration<double>(t1 - t0).count();
    result.timings.w_step_seconds += std::chrono::duration<double>(t2 - t1).count();

    result.trace.push_back(breakdown.f_total);
    result.iterations = iter;
    const double decrease = m_current - breakdown.f_total;
    m_current = breakdown.f_total;
    if (decrease <= tol) {
      result.converged = true;
      break;
    }
  }
  result.timings.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  result.sigma = sigma;
  result.w = w;
  result.breakdown = std::move(breakdown);
  return result;
}

}  // namespace

std::vector<double> aggregate(const DataMatrix& x, const FeatureWeights& w) {
  if (w.size() != x.cols()) throw InputError("weight count does not match dimension count");
  std::vector<double> b(x.rows(), 0.0);
  for (std::size_t t = 0; t < x.rows(); ++t) {
    const auto row = x.row(t);
    double acc = 0;
    for (std::size_t d = 0; d < x.cols(); ++d) acc += w[d] * row[d];
    b[t] = acc;
  }
  return b;
}

PermutationVector sort_step(const std::vector<double>& b, const std::vector<double>& tbar) {
  if (b.size() != tbar.size()) throw InputError("aggregate and tbar lengths differ");
  if (b.empty()) throw InputError("aggregate must not be empty");
  for (double v : b) {
    if (!std::isfinite(v)) throw InputError("aggregate must be finite");
  }
  check_strictly_monotone(tbar);
  // rearrangement inequality: k-th smallest tbar position takes the k-th
  // smallest aggregate value
  std::vector<std::size_t> order_b = stable_argsort(b);
  std::vector<std::size_t> order_pos = stable_argsort(tbar);
  std::vector<std::size_t> sigma(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) sigma[order_pos[k]] = order_b[k];
  return PermutationVector(std::move(sigma));
}

FitResult fit_monotonic(const DataMatrix& x, const MonotonicConfig& config) {
  if (!(config.epsilon > 0)) throw ParameterError("epsilon must be positive");
  if (config.restarts < 1) throw ParameterError("restarts must be at least 1");
  std::vector<double> tbar = config.tbar.empty() ? default_tbar(x.rows()) : config.tbar;
  if (tbar.size() != x.rows()) throw InputError("tbar length does not match instance count");
  check_strictly_monotone(tbar);
  if (config.direction == SortDirection::kDescending) {
    std::reverse(tbar.begin(), tbar.end());
  }

  std::vector<FitResult> results(config.restarts);
  parallel_for_index(config.restarts, std::max<std::size_t>(1, config.workers),
                     [&](std::size_t r) { results[r] = run_restart(x, config, tbar, r); });
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].breakdown.f_total < results[best].breakdown.f_total) best = r;
  }
  return std::move(results[best]);
}

}  // namespace permusmooth
