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

#ifndef QDET_POVM_HPP_
#define QDET_POVM_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qdet/fock.hpp"

namespace qdet {

inline constexpr double kDefaultPositivityTol = 1e-9;
inline constexpr double kDefaultCompletenessTol = 1e-9;

/// Labeled list of Hermitian operators on a shared basis. A Povm is a data
/// holder: structural invariants (at least one outcome, shared basis) are
/// enforced on construction, while positivity and completeness are checked by
/// validate(). Operations that require a physically valid POVM say so and
/// call validate() themselves. This split is deliberate: formally inverted
/// POVMs carry negative eigenvalues on purpose.
class Povm {
 public:
  struct Outcome {
    std::string label;
    HermitianOperator element;
  };

  Povm(std::vector<Outcome> outcomes,
       double positivity_tol = kDefaultPositivityTol,
       double completeness_tol = kDefaultCompletenessTol);

  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  int outcome_count() const { return static_cast<int>(outcomes_.size()); }
  const MultiModeBasis& basis() const { return outcomes_.front().element.basis(); }
  double positivity_tol() const { return positivity_tol_; }
  double completeness_tol() const { return completeness_tol_; }

 private:
  std::vector<Outcome> outcomes_;
  double positivity_tol_;
  double completeness_tol_;
};

/// POVM whose elements are all diagonal in the photon-number basis, stored
/// as real vectors over 0..n_max. Kept as a distinct type so the diagonal
/// loss map can be chosen statically; conversion to a dense Povm is explicit.
class DiagonalPovm {
 public:
  struct Outcome {
    std::string label;
    Eigen::VectorXd diagonal;
  };

  DiagonalPovm(SingleModeCutoff cutoff, std::vector<Outcome> outcomes,
               double positivity_tol = kDefaultPositivityTol,
               double completeness_tol = kDefaultCompletenessTol);

  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  int outcome_count() const { return static_cast<int>(outcomes_.size()); }
  SingleModeCutoff cutoff() const { return cutoff_; }
  double positivity_tol() const { return positivity_tol_; }
  double completeness_tol() const { return completeness_tol_; }

  Povm to_dense() const;

 private:
  SingleModeCutoff cutoff_;
  std::vector<Outcome> outcomes_;
  double positivity_tol_;
  double completeness_tol_;
};

/// Per-invariant diagnostic produced by validate(). Never thrown from.
struct ValidationReport {
  struct ElementReport {
    std::string label;
    double min_eigenvalue;
  };
  std::vector<ElementReport> elements;
  double completeness_residual = 0.0;  // max-abs entrywise deviation from I
  bool positivity_ok = false;
  bool completeness_ok = false;
  bool pass() const { return positivity_ok && completeness_ok; }
};

ValidationReport validate(const Povm& povm);
ValidationReport validate(const DiagonalPovm& povm);

/// Two-outcome on/off detector of efficiency eta: the off element has
/// diagonal (1-eta)^n, the on element is its complement. Requires
/// 0 <= eta <= 1.
DiagonalPovm click_detector(double eta, int n_max);

/// Photon-number-resolving detector of efficiency eta: outcome k has
/// diagonal entries binomial(n,k) eta^k (1-eta)^(n-k). Requires 0 < eta <= 1.
DiagonalPovm pnr_detector(double eta, int n_max);

/// Single-outcome POVM {I}: discards its input, efficiency zero.
Povm discard_detector(int n_max);

/// Merge outcomes by summing grouped elements. `grouping` must map every
/// existing label; outcomes of the result appear in first-seen order.
Povm coarse_grain(const Povm& povm, const std::map<std::string, std::string>& grouping);

/// Corner truncation of a single-mode POVM to a smaller cutoff. Positivity
/// and completeness survive (principal submatrices of positive operators,
/// corner of I is I), so the result is a POVM whenever the input is. Used to
/// study how efficiency estimates converge as the cutoff grows.
Povm truncate_povm(const Povm& povm, int n_max);
DiagonalPovm truncate_povm(const DiagonalPovm& povm, int n_max);

}  // namespace qdet

#endif  // QDET_POVM_HPP_
