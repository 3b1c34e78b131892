// Copyright 2026 The qdet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QDET_RANDOM_HPP_
#define QDET_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "qdet/povm.hpp"

namespace qdet {

/// mt19937_64 wrapper that can spawn deterministic substreams. stream(a, b)
/// depends only on the constructing seed and the indices, never on how much
/// randomness was already consumed, so per-trial results are reproducible
/// under any scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng stream(std::uint64_t a, std::uint64_t b = 0) const;

  double uniform(double lo = 0.0, double hi = 1.0);
  int uniform_int(int lo, int hi);  // inclusive bounds
  double normal();
  Complex normal_complex();  // standard complex normal, variance 1 per axis

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Haar-distributed unitary via QR of a Ginibre matrix with the standard
/// phase fix on the R diagonal.
Eigen::MatrixXcd haar_unitary(int dim, Rng& rng);

/// Random density matrix of the given rank (Wishart, trace-normalized).
Eigen::MatrixXcd random_density_matrix(int dim, int rank, Rng& rng);

/// Random POVM with PSD elements summing to identity exactly up to rounding:
/// Wishart draws W_i whitened by the inverse square root of their sum.
Povm random_povm(const MultiModeBasis& basis, int outcome_count, Rng& rng);

/// Projective coarse-graining of the photon-number measurement: levels
/// 0..n_max are assigned to `cell_count` groups, at least two of them
/// nonempty. Elements are 0/1 diagonal projectors.
DiagonalPovm random_partition_povm(int n_max, int cell_count, Rng& rng);

}  // namespace qdet

#endif  // QDET_RANDOM_HPP_
