#include <doctest.h>

#include <cstring>

#include "permusmooth/errors.hpp"
#include "permusmooth/pair_cost.hpp"
#include "test_util.hpp"

using namespace permusmooth;
using testutil::random_matrix;
using testutil::random_weights;

TEST_CASE("build: hand values") {
  SUBCASE("identical rows cost zero") {
    DataMatrix x(3, 2, {1.0, 2.0, 1.0, 2.0, 4.0, 0.0});
    auto cache = PairCostCache::build(x, FeatureWeights::uniform(2));
    CHECK(cache.at(0, 1) == 0.0);
    CHECK(cache.at(0, 0) == 0.0);
    CHECK(cache.at(1, 1) == 0.0);
  }

  SUBCASE("T=2, D=1, rows 0 and 3") {
    DataMatrix x(2, 1, {0.0, 3.0});
    auto cache = PairCostCache::build(x, FeatureWeights::uniform(1));
    CHECK(cache.at(0, 1) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(cache.at(1, 0) == doctest::Approx(9.0).epsilon(1e-15));
  }

  SUBCASE("uniform weights, all-ones row difference") {
    for (std::size_t d_count : {2, 5, 8}) {
      std::vector<double> v(2 * d_count, 0.0);
      for (std::size_t d = 0; d < d_count; ++d) v[d_count + d] = 1.0;
      DataMatrix x(2, d_count, std::move(v));
      auto cache = PairCostCache::build(x, FeatureWeights::uniform(d_count));
      CHECK(cache.at(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("edge-sum identity: tour cost equals expected non-smoothness") {
  Rng rng(41);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t t = 3 + rng.next_below(30);
    const std::size_t d = 1 + rng.next_below(16);
    DataMatrix x = random_matrix(t, d, rng, -3, 3);
    auto w = random_weights(d, rng);
    auto sigma = PermutationVector::random(t, rng);
    auto cache = PairCostCache::build(x, w);
    const double via_cache = cache.tour_cost(sigma);
    const double via_core = testutil::weighted_tour(x, sigma, w);
    CHECK(via_cache == doctest::Approx(via_core).epsilon(1e-9));
  }
}

TEST_CASE("swap_delta") {
  SUBCASE("i == j is the identity move") {
    Rng rng(43);
    DataMatrix x = random_matrix(5, 2, rng);
    auto cache = PairCostCache::build(x, FeatureWeights::uniform(2));
    auto sigma = PermutationVector::random(5, rng);
    for (std::size_t i = 0; i < 5; ++i) CHECK(cache.swap_delta(sigma, i, i) == 0.0);
  }

  SUBCASE("exhaustive oracle at T <= 8, periodic and open") {
    Rng rng(47);
    for (bool periodic : {true, false}) {
      RingDiffSpec spec{periodic};
      for (std::size_t t = 3; t <= 8; ++t) {
        for (int inst = 0; inst < 8; ++inst) {
          const std::size_t d = 1 + rng.next_below(4);
          DataMatrix x = random_matrix(t, d, rng, -2, 2);
          auto w = random_weights(d, rng);
          auto sigma = PermutationVector::random(t, rng);
          auto cache = PairCostCache::build(x, w);
          const double base = testutil::weighted_tour(x, sigma, w, periodic);
          for (std::size_t i = 0; i < t; ++i) {
            for (std::size_t j = 0; j < t; ++j) {
              const double incremental = cache.swap_delta(sigma, i, j, spec);
              const double full =
                  testutil::weighted_tour(x, sigma.with_swapped(i, j), w, periodic) - base;
              CHECK(incremental ==
                    doctest::Approx(full).epsilon(1e-9).scale(std::max(1.0, std::abs(base))));
            }
          }
        }
      }
    }
  }

  SUBCASE("swapping identical rows changes nothing") {
    DataMatrix x(4, 2, {1, 2, 5, 5, 1, 2, 0, 7});
    auto cache = PairCostCache::build(x, FeatureWeights::uniform(2));
    auto sigma = PermutationVector::identity(4);
    CHECK(cache.swap_delta(sigma, 0, 2) == doctest::Approx(0.0).epsilon(1e-15));
  }

  SUBCASE("symmetry in (i, j)") {
    Rng rng(53);
    DataMatrix x = random_matrix(9, 3, rng);
    auto cache = PairCostCache::build(x, random_weights(3, rng));
    auto sigma = PermutationVector::random(9, rng);
    for (std::size_t i = 0; i < 9; ++i) {
      for (std::size_t j = 0; j < 9; ++j) {
        CHECK(cache.swap_delta(sigma, i, j) == cache.swap_delta(sigma, j, i));
      }
    }
  }
}

TEST_CASE("rebuild idempotence is bitwise") {
  Rng rng(59);
  DataMatrix x = random_matrix(12, 5, rng);
  auto w = random_weights(5, rng);
  auto a = PairCostCache::build(x, w);
  auto b = PairCostCache::build(x, w);
  CHECK(std::memcmp(a.data(), b.data(), 12 * 12 * sizeof(double)) == 0);
}

TEST_CASE("staleness latch") {
  Rng rng(61);
  DataMatrix x = random_matrix(6, 2, rng);
  auto cache = PairCostCache::build(x, FeatureWeights::uniform(2));
  auto sigma = PermutationVector::identity(6);
  CHECK_NOTHROW(cache.swap_delta(sigma, 0, 3));
  cache.mark_stale();
  CHECK(cache.stale());
  CHECK_THROWS_AS(cache.swap_delta(sigma, 0, 3), StaleCacheError);
}
