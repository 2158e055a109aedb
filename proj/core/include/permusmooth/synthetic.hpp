#pragma once

#include <cstddef>
#include <cstdint>

#include "permusmooth/matrix.hpp"
#include "permusmooth/permutation.hpp"

namespace permusmooth {

/// The synthetic benchmark: two periodic signals hidden among uniform-noise
/// dimensions of matched variance, with rows scrambled by a seeded
/// permutation. Defaults give a sine with one full period and a cosine with
/// two, phases 0.3*pi and 0.1*pi (chosen so no two rows coincide in the
/// signal plane on the default grid).
struct SyntheticSpec {
  std::size_t instances = 50;  // T
  std::size_t dims = 52;       // D >= 3; dimensions 3..D are noise
  double signal_periods[2] = {1.0, 2.0};
  double signal_phases[2] = {0.9424777960769379, 0.3141592653589793};
  std::uint64_t scramble_seed = 0;
};

struct SyntheticData {
  DataMatrix smooth;     // signals in columns 0..1, noise in 2..D-1
  DataMatrix scrambled;  // rows of smooth reordered by true_sigma
  PermutationVector true_sigma;
};

/// smooth rows sampled on a uniform grid; scrambled(t, :) = smooth(true_sigma(t), :);
/// every noise column is rescaled to exactly the pooled signal variance.
SyntheticData generate_synthetic(const SyntheticSpec& spec);

}  // namespace permusmooth
