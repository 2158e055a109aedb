#include <doctest.h>

#include <cmath>

#include "permusmooth/errors.hpp"
#include "permusmooth/objective.hpp"
#include "test_util.hpp"

using namespace permusmooth;
using testutil::random_matrix;

TEST_CASE("constant column has zero non-smoothness") {
  DataMatrix x(4, 2, {5.0, 1.0, 5.0, 2.0, 5.0, 3.0, 5.0, 4.0});
  Rng rng(1);
  for (int k = 0; k < 5; ++k) {
    auto s = per_dim_nonsmoothness(x, PermutationVector::random(4, rng));
    CHECK(s[0] == 0.0);
    CHECK(s[1] > 0.0);
  }
}

TEST_CASE("T=3 single column 0,1,2") {
  DataMatrix x(3, 1, {0.0, 1.0, 2.0});
  auto s = per_dim_nonsmoothness(x, PermutationVector::identity(3));
  CHECK(s[0] == doctest::Approx(6.0).epsilon(1e-15));  // 1 + 1 + 4

  // the 3-ring is the complete graph on 3 nodes: every ordering sums the
  // same three pairwise gaps
  testutil::for_each_permutation(3, [&](const PermutationVector& p) {
    CHECK(per_dim_nonsmoothness(x, p)[0] == doctest::Approx(6.0).epsilon(1e-15));
  });

  SUBCASE("non-periodic drops the wrap edge") {
    auto open = per_dim_nonsmoothness(x, PermutationVector::identity(3), RingDiffSpec{false});
    CHECK(open[0] == doctest::Approx(2.0).epsilon(1e-15));
  }
}

TEST_CASE("non-smoothness is non-negative") {
  Rng rng(7);
  for (int k = 0; k < 30; ++k) {
    const std::size_t t = 3 + rng.next_below(12);
    const std::size_t d = 1 + rng.next_below(6);
    DataMatrix x = random_matrix(t, d, rng, -10, 10);
    auto s = per_dim_nonsmoothness(x, PermutationVector::random(t, rng));
    for (double v : s) CHECK(v >= 0.0);
  }
}

TEST_CASE("shape errors") {
  DataMatrix x(3, 1, {0.0, 1.0, 2.0});
  CHECK_THROWS_AS(per_dim_nonsmoothness(x, PermutationVector::identity(4)), InputError);
  CHECK_THROWS_AS(DataMatrix(2, 2, {1.0, 2.0, 3.0}), InputError);
  CHECK_THROWS_AS(DataMatrix(2, 2, {1.0, 2.0, 3.0, std::nan("")}), InputError);
  CHECK_THROWS_AS(PermutationVector({0, 0, 1}), InputError);
}

TEST_CASE("objective breakdown") {
  SUBCASE("D=1 degenerates to S_1") {
    DataMatrix x(3, 1, {0.0, 1.0, 2.0});
    auto b = objective(x, PermutationVector::identity(3), FeatureWeights::uniform(1), 2.5);
    CHECK(b.f_total == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(b.entropy_term == 0.0);
  }

  SUBCASE("uniform w on two S=6 columns") {
    DataMatrix x(3, 2, {0, 0, 1, 1, 2, 2});
    auto b = objective(x, PermutationVector::identity(3), FeatureWeights::uniform(2), 1.0);
    CHECK(b.expected_nonsmoothness == doctest::Approx(6.0).epsilon(1e-12));
    // 6 + log(1/2)
    CHECK(b.f_total == doctest::Approx(5.3068528194400546).epsilon(1e-12));
  }

  SUBCASE("stored fields are consistent") {
    Rng rng(3);
    DataMatrix x = random_matrix(6, 4, rng);
    auto w = testutil::random_weights(4, rng);
    auto b = objective(x, PermutationVector::random(6, rng), w, 0.7);
    double expected = 0;
    for (std::size_t d = 0; d < 4; ++d) expected += w[d] * b.s_per_dim[d];
    CHECK(b.expected_nonsmoothness == doctest::Approx(expected).epsilon(1e-14));
    CHECK(b.f_total == b.expected_nonsmoothness + 0.7 * b.entropy_term);
  }

  SUBCASE("parameter and input errors") {
    DataMatrix x(3, 2, {0, 0, 1, 1, 2, 2});
    CHECK_THROWS_AS(objective(x, PermutationVector::identity(3), FeatureWeights::uniform(2), 0.0),
                    ParameterError);
    CHECK_THROWS_AS(objective(x, PermutationVector::identity(3), FeatureWeights::uniform(2), -1.0),
                    ParameterError);
    CHECK_THROWS_AS(FeatureWeights({0.6, 0.6}), InputError);
    CHECK_THROWS_AS(FeatureWeights({1.2, -0.2}), InputError);
  }
}

TEST_CASE("ring invariance under cyclic shifts and reversal") {
  Rng rng(11);
  for (int k = 0; k < 10; ++k) {
    const std::size_t t = 3 + rng.next_below(10);
    DataMatrix x = random_matrix(t, 3, rng);
    PermutationVector sigma = PermutationVector::random(t, rng);
    auto s0 = per_dim_nonsmoothness(x, sigma);
    for (std::size_t shift = 1; shift < t; ++shift) {
      auto s = per_dim_nonsmoothness(x, sigma.cyclic_shift(shift));
      for (std::size_t d = 0; d < 3; ++d) {
        CHECK(s[d] == doctest::Approx(s0[d]).epsilon(1e-12));
      }
    }
    auto s_rev = per_dim_nonsmoothness(x, sigma.reversed());
    for (std::size_t d = 0; d < 3; ++d) {
      CHECK(s_rev[d] == doctest::Approx(s0[d]).epsilon(1e-12));
    }
  }
}

TEST_CASE("objective identical under cyclic shift of sigma") {
  Rng rng(13);
  DataMatrix x = random_matrix(8, 3, rng);
  auto w = testutil::random_weights(3, rng);
  PermutationVector sigma = PermutationVector::random(8, rng);
  auto b0 = objective(x, sigma, w, 0.9);
  auto b1 = objective(x, sigma.cyclic_shift(3), w, 0.9);
  CHECK(b1.f_total == doctest::Approx(b0.f_total).epsilon(1e-12));
  CHECK(b1.expected_nonsmoothness == doctest::Approx(b0.expected_nonsmoothness).epsilon(1e-12));
}

TEST_CASE("data-permutation equivariance") {
  // evaluating on row-permuted data with the composed ordering reproduces
  // the exact S_d values
  Rng rng(17);
  for (int k = 0; k < 10; ++k) {
    const std::size_t t = 3 + rng.next_below(10);
    DataMatrix x = random_matrix(t, 4, rng);
    PermutationVector sigma = PermutationVector::random(t, rng);
    PermutationVector q = PermutationVector::random(t, rng);
    DataMatrix qx = x.permuted_rows(q);
    PermutationVector composed = q.inverse().compose(sigma);
    auto s0 = per_dim_nonsmoothness(x, sigma);
    auto s1 = per_dim_nonsmoothness(qx, composed);
    for (std::size_t d = 0; d < 4; ++d) CHECK(s1[d] == s0[d]);
  }
}

TEST_CASE("midpoint convexity on doubly-stochastic samples") {
  Rng rng(23);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 3 + rng.next_below(10);
    auto p0 = testutil::sinkhorn_doubly_stochastic(n, rng);
    auto p1 = testutil::sinkhorn_doubly_stochastic(n, rng);
    std::vector<double> x(n);
    for (double& v : x) v = 2.0 * rng.next_double() - 1.0;
    std::vector<double> mid(n * n);
    for (std::size_t i = 0; i < n * n; ++i) mid[i] = 0.5 * (p0[i] + p1[i]);
    const double lhs = testutil::ring_quadform(mid, x);
    const double rhs =
        0.5 * (testutil::ring_quadform(p0, x) + testutil::ring_quadform(p1, x));
    CHECK(lhs <= rhs + 1e-12);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("entropy bounds") {
  CHECK(FeatureWeights::uniform(8).entropy_term() ==
        doctest::Approx(-std::log(8.0)).epsilon(1e-14));
  FeatureWeights point({0.0, 1.0, 0.0});
  CHECK(point.entropy_term() == 0.0);
  Rng rng(29);
  for (int k = 0; k < 50; ++k) {
    const std::size_t d = 2 + rng.next_below(12);
    const double h = testutil::random_weights(d, rng).entropy_term();
    CHECK(h <= 0.0);
    CHECK(h >= -std::log(static_cast<double>(d)) - 1e-12);
  }
}
