#include "permusmooth/pair_cost.hpp"

#include <algorithm>
#include <string>

#include "permusmooth/errors.hpp"

namespace permusmooth {

namespace {

// Row blocking keeps a band of rows resident while the pair loop runs, so
// the build stays compute-bound at large D instead of re-streaming the
// data matrix from memory for every row.
constexpr std::size_t kTile = 16;

void fill_costs(double* cost, std::size_t t_count, std::size_t d_count, const double* values,
                const double* wv) {
  for (std::size_t a0 = 0; a0 < t_count; a0 += kTile) {
    const std::size_t a1 = std::min(a0 + kTile, t_count);
    for (std::size_t b0 = a0; b0 < t_count; b0 += kTile) {
      const std::size_t b1 = std::min(b0 + kTile, t_count);
      for (std::size_t a = a0; a < a1; ++a) {
        const double* row_a = values + a * d_count;
        for (std::size_t b = std::max(b0, a + 1); b < b1; ++b) {
          const double* row_b = values + b * d_count;
          double c = 0;
          for (std::size_t d = 0; d < d_count; ++d) {
            const double diff = row_a[d] - row_b[d];
            c += wv[d] * diff * diff;
          }
          cost[a * t_count + b] = c;
        }
      }
      // mirror the freshly computed block while it is still cache-resident
      for (std::size_t a = a0; a < a1; ++a) {
        for (std::size_t b = std::max(b0, a + 1); b < b1; ++b) {
          cost[b * t_count + a] = cost[a * t_count + b];
        }
      }
    }
    for (std::size_t a = a0; a < a1; ++a) cost[a * t_count + a] = 0.0;
  }
}

}  // namespace

PairCostCache PairCostCache::build(const DataMatrix& x, const FeatureWeights& w) {
  return build(x.rows(), x.cols(), x.values().data(), w);
}

PairCostCache PairCostCache::build(std::size_t t_count, std::size_t d_count, const double* values,
                                   const FeatureWeights& w) {
  if (w.size() != d_count) {
    throw InputError("weight count does not match dimension count");
  }
  std::unique_ptr<double[]> cost(new double[t_count * t_count]);
  fill_costs(cost.get(), t_count, d_count, values, w.values().data());
  return PairCostCache(t_count, std::move(cost), w);
}

PairCostCache PairCostCache::build(std::size_t t_count, std::size_t d_count, const double* values,
                                   const FeatureWeights& w, PairCostCache&& recycle) {
  if (w.size() != d_count) {
    throw InputError("weight count does not match dimension count");
  }
  std::unique_ptr<double[]> cost = recycle.size_ == t_count
                                       ? std::move(recycle.cost_)
                                       : std::unique_ptr<double[]>(new double[t_count * t_count]);
  fill_costs(cost.get(), t_count, d_count, values, w.values().data());
  return PairCostCache(t_count, std::move(cost), w);
}

double PairCostCache::tour_cost(const PermutationVector& sigma, const RingDiffSpec& spec) const {
  if (sigma.size() != size_) {
    throw InputError("permutation length does not match cache size");
  }
  double total = 0;
  const std::size_t last = spec.periodic ? size_ : size_ - 1;
  for (std::size_t t = 0; t < last; ++t) {
    total += at(sigma(t), sigma((t + 1) % size_));
  }
  return total;
}

double PairCostCache::swap_delta(const PermutationVector& sigma, std::size_t i, std::size_t j,
                                 const RingDiffSpec& spec) const {
  if (stale_) {
    throw StaleCacheError("pair-cost cache is stale; rebuild it after the W-step");
  }
  const std::size_t n = size_;
  if (sigma.size() != n) {
    throw InputError("permutation length does not match cache size");
  }
  if (i >= n || j >= n) {
    throw InputError("swap positions out of range");
  }
  if (i == j) return 0.0;

  // Affected ring edges, keyed by their left position p (the edge joins
  // positions p and p+1 mod T). Keying and deduplicating handles the
  // adjacent, wrap-adjacent and shared-neighbor cases exactly: an edge
  // whose both endpoints move (i adjacent to j) contributes the same cost
  // before and after, and an edge touched from both sides appears once.
  const std::size_t pred_i = (i + n - 1) % n;
  const std::size_t pred_j = (j + n - 1) % n;
  std::size_t keys[4] = {pred_i, i, pred_j, j};
  std::sort(std::begin(keys), std::end(keys));
  std::size_t unique_count = std::unique(std::begin(keys), std::end(keys)) - std::begin(keys);

  auto value_after = [&](std::size_t p) {
    if (p == i) return sigma(j);
    if (p == j) return sigma(i);
    return sigma(p);
  };

  double delta = 0;
  for (std::size_t k = 0; k < unique_count; ++k) {
    const std::size_t p = keys[k];
    if (!spec.periodic && p == n - 1) continue;  // the wrap edge does not exist
    const std::size_t q = (p + 1) % n;
    delta += at(value_after(p), value_after(q)) - at(sigma(p), sigma(q));
  }
  return delta;
}

}  // namespace permusmooth
