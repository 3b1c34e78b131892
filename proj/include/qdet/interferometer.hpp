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

#ifndef QDET_INTERFEROMETER_HPP_
#define QDET_INTERFEROMETER_HPP_

#include <vector>

#include "qdet/fock.hpp"

namespace qdet {

inline constexpr double kDefaultUnitarityTol = 1e-10;

/// Mode-space unitary W of a passive M-port interferometer. The convention
/// contract for the whole library: the one-photon block of lift(W) equals W,
/// i.e. lift(W)|e_j> = sum_i W_ij |e_i> with |e_i> a single photon in mode i.
class InterferometerSpec {
 public:
  explicit InterferometerSpec(Eigen::MatrixXcd matrix,
                              double unitarity_tol = kDefaultUnitarityTol);

  int mode_count() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXcd matrix_;
};

/// One element of a rectangular mesh: a real beamsplitter on a mode pair or a
/// phase on a single mode. Mode-space matrices:
///   beamsplitter(theta) on (a,b): rows/cols (a,b) = [[cos, sin], [-sin, cos]]
///   phase(phi) on a:              entry (a,a) = exp(i phi)
struct TwoModeElement {
  enum class Kind { kBeamsplitter, kPhase };
  Kind kind;
  int mode_a;        // phase target, or first mode of the pair
  int mode_b;        // second mode of the pair; ignored for phases
  double parameter;  // theta in [0, pi/2] or phi in [0, 2*pi)

  static TwoModeElement beamsplitter(double theta, int a, int b) {
    return {Kind::kBeamsplitter, a, b, theta};
  }
  static TwoModeElement phase(double phi, int a) {
    return {Kind::kPhase, a, -1, phi};
  }
};

/// Mesh form of a unitary: W = diag(exp(i*output_phases)) * elements[0] *
/// elements[1] * ... as mode-space matrices. A diagonal W therefore has an
/// empty element list and all of its content in the phase layer.
struct Decomposition {
  std::vector<TwoModeElement> elements;
  Eigen::VectorXd output_phases;
};

/// Rectangular-mesh (nulling) decomposition into beamsplitters and phases.
Decomposition decompose(const InterferometerSpec& spec);

/// Mode-space matrix of a single element on `mode_count` modes.
Eigen::MatrixXcd element_matrix(const TwoModeElement& element, int mode_count);

/// Multiplies the mesh back together; used to round-trip decompose().
Eigen::MatrixXcd recompose(const Decomposition& decomposition, int mode_count);

/// Fock-space unitary induced by W on the truncated basis. Block-diagonal in
/// total photon number by construction (every element lift conserves it), so
/// the result is exact on each block; unitary to ~1e-14.
Eigen::MatrixXcd lift(const InterferometerSpec& spec, const MultiModeBasis& basis);

/// Extracts the n_total = 1 block of a lifted unitary, in mode order. The
/// convention contract says this returns the original W.
Eigen::MatrixXcd single_photon_block(const Eigen::MatrixXcd& lifted,
                                     const MultiModeBasis& basis);

}  // namespace qdet

#endif  // QDET_INTERFEROMETER_HPP_
