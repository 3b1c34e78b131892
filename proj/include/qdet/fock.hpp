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

#ifndef QDET_FOCK_HPP_
#define QDET_FOCK_HPP_

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qdet {

using Complex = std::complex<double>;

inline constexpr double kDefaultHermiticityTol = 1e-9;

/// Cutoff for a single optical mode: photon numbers 0..n_max, dimension
/// n_max + 1.
struct SingleModeCutoff {
  int n_max = 0;
  int dimension() const { return n_max + 1; }
};

/// Truncated multimode Fock basis. States are occupation tuples
/// (n_1, ..., n_M) with n_1 + ... + n_M <= total_cutoff.
///
/// Indices are ordered by total photon number, then lexicographically
/// descending within each block. Consequences relied on elsewhere:
///   - the vacuum has index 0,
///   - for a single mode the index equals the photon number,
///   - the one-photon block is contiguous and ordered mode 1, mode 2, ...
///
/// The basis dimension is binomial(total_cutoff + M, M). Copies are cheap
/// (shared immutable table).
class MultiModeBasis {
 public:
  MultiModeBasis(int mode_count, int total_cutoff);
  MultiModeBasis(SingleModeCutoff cutoff) : MultiModeBasis(1, cutoff.n_max) {}

  int mode_count() const;
  int total_cutoff() const;
  int dimension() const;

  /// Occupation tuple of the basis state at `index`.
  const std::vector<int>& occupation(int index) const;

  /// Index of an occupation tuple. Throws std::out_of_range if the tuple is
  /// not in the basis (wrong length, negative entry, or above the cutoff).
  int index_of(std::span<const int> occupation) const;

  /// First index of the block with the given total photon number.
  int block_begin(int total_photons) const;

  bool operator==(const MultiModeBasis& other) const;
  bool operator!=(const MultiModeBasis& other) const { return !(*this == other); }

 private:
  struct Table;
  std::shared_ptr<const Table> table_;
};

/// Dense Hermitian matrix tied to a basis. Carrier for density operators,
/// POVM elements and channel outputs. Construction rejects matrices whose
/// max entrywise asymmetry |A(i,j) - conj(A(j,i))| exceeds hermiticity_tol.
class HermitianOperator {
 public:
  HermitianOperator(MultiModeBasis basis, Eigen::MatrixXcd entries,
                    double hermiticity_tol = kDefaultHermiticityTol);

  const MultiModeBasis& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  double hermiticity_tol() const { return hermiticity_tol_; }

  std::complex<double> trace() const { return entries_.trace(); }

 private:
  MultiModeBasis basis_;
  Eigen::MatrixXcd entries_;
  double hermiticity_tol_;
};

/// Annihilation operator in the truncated basis; for multimode bases `mode`
/// selects which occupation slot it acts on (0-based).
Eigen::MatrixXcd lowering_operator(const MultiModeBasis& basis, int mode = 0);

/// Tensor product of two operators, projected onto the requested joint total
/// cutoff. Entries between states whose concatenated occupations exceed the
/// cutoff are dropped, so inputs with large supports can be clipped; choose
/// `total_cutoff >= Na + Nb` to avoid that.
Eigen::MatrixXcd tensor_matrix(const Eigen::MatrixXcd& a, const MultiModeBasis& basis_a,
                               const Eigen::MatrixXcd& b, const MultiModeBasis& basis_b,
                               const MultiModeBasis& joint);

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b,
                         int total_cutoff);

/// Tensor with the never-clipping cutoff Na + Nb.
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

/// Partial trace onto `keep_modes` (0-based, nonempty, strictly increasing).
/// The result keeps the same total cutoff. Trace-preserving on all inputs.
Eigen::MatrixXcd partial_trace_matrix(const Eigen::MatrixXcd& m, const MultiModeBasis& basis,
                                      std::span<const int> keep_modes,
                                      const MultiModeBasis& reduced);

HermitianOperator partial_trace(const HermitianOperator& op, std::span<const int> keep_modes);

/// Smallest eigenvalue of (m + m')/2. Throws on non-finite entries or when
/// the asymmetry exceeds `hermiticity_tol`.
double min_eigenvalue(const Eigen::MatrixXcd& m,
                      double hermiticity_tol = kDefaultHermiticityTol);

double min_eigenvalue(const HermitianOperator& op);

/// Exact binomial coefficient as a double. Valid for n <= 56 (the result
/// stays below 2^53); larger n throws.
double binomial(int n, int k);

/// b^e for integer e >= 0, by repeated multiplication (safe for negative b).
double ipow(double base, int exponent);

}  // namespace qdet

#endif  // QDET_FOCK_HPP_
