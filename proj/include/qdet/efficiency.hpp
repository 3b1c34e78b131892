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

#ifndef QDET_EFFICIENCY_HPP_
#define QDET_EFFICIENCY_HPP_

#include <utility>
#include <vector>

#include "qdet/povm.hpp"

namespace qdet {

inline constexpr double kDefaultBisectionTol = 1e-6;

struct FeasibilityResult {
  bool feasible;
  double min_eigenvalue;  // over all elements of the loss-inverted POVM
};

/// Whether the detector is equivalent to some POVM preceded by loss eta:
/// inverts the loss formally and checks that every element stays positive
/// within pos_tol. The inverse always sums to identity, so positivity is the
/// entire test. Monotone in eta: feasible at eta implies feasible above.
FeasibilityResult is_feasible(const Povm& povm, double eta,
                              double pos_tol = kDefaultPositivityTol);

struct EfficiencyEstimate {
  double lower = 0.0;  // largest probed infeasible eta (0 if none)
  double upper = 1.0;  // smallest probed feasible eta
  SingleModeCutoff cutoff;
  double bisection_tol = kDefaultBisectionTol;
  // (eta, min eigenvalue) for every probe, in probe order.
  std::vector<std::pair<double, double>> feasibility_trace;
};

/// Generalized efficiency: the infimum transmissivity whose formal inverse
/// keeps the POVM physical, found by bisection over the monotone feasibility
/// predicate. On return is_feasible(upper) holds, is_feasible(lower) fails
/// (lower = 0 when every probe was feasible), and upper - lower is at most
/// bisection_tol. Throws std::invalid_argument if the POVM is infeasible
/// even at eta = 1, which only an invalid POVM can be.
EfficiencyEstimate estimate_efficiency(const Povm& povm,
                                       double bisection_tol = kDefaultBisectionTol,
                                       double pos_tol = kDefaultPositivityTol);

EfficiencyEstimate estimate_efficiency(const DiagonalPovm& povm,
                                       double bisection_tol = kDefaultBisectionTol,
                                       double pos_tol = kDefaultPositivityTol);

}  // namespace qdet

#endif  // QDET_EFFICIENCY_HPP_
