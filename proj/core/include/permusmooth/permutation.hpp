#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "permusmooth/rng.hpp"

namespace permusmooth {

/// Length-T bijection sigma stored 0-based. Position t of the reordered
/// sequence holds original row sigma(t), matching P_{t,sigma(t)} = 1 for the
/// crisp permutation matrix P.
class PermutationVector {
 public:
  /// Validates that indices form a bijection on {0..T-1}.
  explicit PermutationVector(std::vector<std::size_t> sigma);

  static PermutationVector identity(std::size_t size);
  static PermutationVector random(std::size_t size, Rng& rng);

  std::size_t size() const { return sigma_.size(); }
  std::size_t operator()(std::size_t t) const { return sigma_[t]; }
  const std::vector<std::size_t>& indices() const { return sigma_; }

  bool is_identity() const;

  /// sigma with the entries at positions i and j exchanged (the pairwise move).
  PermutationVector with_swapped(std::size_t i, std::size_t j) const;

  PermutationVector inverse() const;

  /// Function composition: result(t) = (*this)(other(t)).
  PermutationVector compose(const PermutationVector& other) const;

  /// result(t) = sigma((t + shift) mod T); relabels ring positions only.
  PermutationVector cyclic_shift(std::size_t shift) const;

  /// result(t) = sigma(T - 1 - t).
  PermutationVector reversed() const;

  /// True when this permutation is a pure cyclic translation or an
  /// order-inverting map composed with one (the ring symmetry group).
  bool is_ring_symmetry() const;

  bool operator==(const PermutationVector& other) const { return sigma_ == other.sigma_; }

 private:
  struct unchecked_tag {};
  PermutationVector(std::vector<std::size_t> sigma, unchecked_tag) : sigma_(std::move(sigma)) {}

  std::vector<std::size_t> sigma_;
};

}  // namespace permusmooth
