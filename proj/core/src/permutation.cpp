#include "permusmooth/permutation.hpp"

#include <numeric>

#include "permusmooth/errors.hpp"

namespace permusmooth {

PermutationVector::PermutationVector(std::vector<std::size_t> sigma) : sigma_(std::move(sigma)) {
  if (sigma_.empty()) throw InputError("permutation must not be empty");
  std::vector<bool> seen(sigma_.size(), false);
  for (std::size_t v : sigma_) {
    if (v >= sigma_.size() || seen[v]) {
      throw InputError("permutation is not a bijection on {1.." + std::to_string(sigma_.size()) +
                       "}");
    }
    seen[v] = true;
  }
}

PermutationVector PermutationVector::identity(std::size_t size) {
  std::vector<std::size_t> v(size);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return PermutationVector(std::move(v), unchecked_tag{});
}

PermutationVector PermutationVector::random(std::size_t size, Rng& rng) {
  std::vector<std::size_t> v(size);
  std::iota(v.begin(), v.end(), std::size_t{0});
  rng.shuffle(v);
  return PermutationVector(std::move(v), unchecked_tag{});
}

bool PermutationVector::is_identity() const {
  for (std::size_t t = 0; t < sigma_.size(); ++t) {
    if (sigma_[t] != t) return false;
  }
  return true;
}

PermutationVector PermutationVector::with_swapped(std::size_t i, std::size_t j) const {
  std::vector<std::size_t> v = sigma_;
  std::swap(v.at(i), v.at(j));
  return PermutationVector(std::move(v), unchecked_tag{});
}

PermutationVector PermutationVector::inverse() const {
  std::vector<std::size_t> v(sigma_.size());
  for (std::size_t t = 0; t < sigma_.size(); ++t) v[sigma_[t]] = t;
  return PermutationVector(std::move(v), unchecked_tag{});
}

PermutationVector PermutationVector::compose(const PermutationVector& other) const {
  if (other.size() != size()) throw InputError("cannot compose permutations of different size");
  std::vector<std::size_t> v(sigma_.size());
  for (std::size_t t = 0; t < sigma_.size(); ++t) v[t] = sigma_[other(t)];
  return PermutationVector(std::move(v), unchecked_tag{});
}

PermutationVector PermutationVector::cyclic_shift(std::size_t shift) const {
  const std::size_t n = sigma_.size();
  std::vector<std::size_t> v(n);
  for (std::size_t t = 0; t < n; ++t) v[t] = sigma_[(t + shift) % n];
  return PermutationVector(std::move(v), unchecked_tag{});
}

PermutationVector PermutationVector::reversed() const {
  std::vector<std::size_t> v(sigma_.rbegin(), sigma_.rend());
  return PermutationVector(std::move(v), unchecked_tag{});
}

bool PermutationVector::is_ring_symmetry() const {
  const std::size_t n = sigma_.size();
  const std::size_t k = sigma_[0];
  bool shift = true;
  bool flip = true;
  for (std::size_t t = 0; t < n; ++t) {
    if (sigma_[t] != (k + t) % n) shift = false;
    if (sigma_[t] != (k + n - t % n) % n) flip = false;
    if (!shift && !flip) return false;
  }
  return true;
}

}  // namespace permusmooth
