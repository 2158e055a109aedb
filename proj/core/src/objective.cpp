#include "permusmooth/objective.hpp"

#include <cmath>
#include <string>

#include "permusmooth/errors.hpp"

namespace permusmooth {

std::vector<double> per_dim_nonsmoothness(const DataMatrix& x, const PermutationVector& sigma,
                                          const RingDiffSpec& spec) {
  const std::size_t t_count = x.rows();
  const std::size_t d_count = x.cols();
  if (sigma.size() != t_count) {
    throw InputError("permutation length " + std::to_string(sigma.size()) +
                     " does not match instance count " + std::to_string(t_count));
  }
  if (t_count < 3) {
    throw InputError("ring non-smoothness needs at least 3 instances, got " +
                     std::to_string(t_count));
  }
  std::vector<double> s(d_count, 0.0);
  const std::size_t last = spec.periodic ? t_count : t_count - 1;
  for (std::size_t t = 0; t < last; ++t) {
    const std::size_t a = sigma(t);
    const std::size_t b = sigma((t + 1) % t_count);
    const auto row_a = x.row(a);
    const auto row_b = x.row(b);
    for (std::size_t d = 0; d < d_count; ++d) {
      const double diff = row_b[d] - row_a[d];
      s[d] += diff * diff;
    }
  }
  return s;
}

ObjectiveBreakdown objective_from_s(std::vector<double> s_per_dim, const FeatureWeights& w,
                                    double epsilon) {
  if (!(epsilon > 0)) throw ParameterError("epsilon must be positive");
  if (w.size() != s_per_dim.size()) {
    throw InputError("weight count does not match dimension count");
  }
  ObjectiveBreakdown out;
  out.epsilon = epsilon;
  out.s_per_dim = std::move(s_per_dim);
  double expected = 0;
  for (std::size_t d = 0; d < out.s_per_dim.size(); ++d) {
    expected += w[d] * out.s_per_dim[d];
  }
  out.expected_nonsmoothness = expected;
  out.entropy_term = w.entropy_term();
  out.f_total = out.expected_nonsmoothness + epsilon * out.entropy_term;
  return out;
}

ObjectiveBreakdown objective(const DataMatrix& x, const PermutationVector& sigma,
                             const FeatureWeights& w, double epsilon, const RingDiffSpec& spec) {
  return objective_from_s(per_dim_nonsmoothness(x, sigma, spec), w, epsilon);
}

}  // namespace permusmooth
