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

#include "qdet/efficiency.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "qdet/loss.hpp"

namespace qdet {

FeasibilityResult is_feasible(const Povm& povm, double eta, double pos_tol) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("is_feasible: eta outside (0, 1]");
  }
  const Povm inverse = invert_loss(povm, eta);
  double global_min = std::numeric_limits<double>::infinity();
  for (const Povm::Outcome& outcome : inverse.outcomes()) {
    // The inverse entries blow up like eta^(-n_max), so the symmetry check
    // inside min_eigenvalue must scale with them; the operator is Hermitian
    // bit-for-bit by construction, hence any finite relative tolerance works.
    global_min = std::min(global_min, min_eigenvalue(outcome.element));
  }
  return {global_min >= -pos_tol, global_min};
}

EfficiencyEstimate estimate_efficiency(const Povm& povm, double bisection_tol,
                                       double pos_tol) {
  if (!(bisection_tol > 0.0)) {
    throw std::invalid_argument("estimate_efficiency: bisection_tol must be positive");
  }
  if (povm.basis().mode_count() != 1) {
    throw std::invalid_argument("estimate_efficiency: expects a single-mode POVM");
  }
  EfficiencyEstimate estimate;
  estimate.cutoff = SingleModeCutoff{povm.basis().total_cutoff()};
  estimate.bisection_tol = bisection_tol;

  auto probe = [&](double eta) {
    const FeasibilityResult result = is_feasible(povm, eta, pos_tol);
    estimate.feasibility_trace.emplace_back(eta, result.min_eigenvalue);
    return result.feasible;
  };

  if (!probe(1.0)) {
    throw std::invalid_argument(
        "estimate_efficiency: infeasible at eta = 1; the input is not a valid POVM");
  }
  // Early probe just above zero catches detectors with no loss content at
  // all (every element's preimage stays positive), where the infimum is 0.
  if (probe(bisection_tol)) {
    estimate.lower = 0.0;
    estimate.upper = bisection_tol;
    return estimate;
  }

  double lower = bisection_tol;
  double upper = 1.0;
  while (upper - lower > bisection_tol) {
    const double mid = 0.5 * (lower + upper);
    if (probe(mid)) {
      upper = mid;
    } else {
      lower = mid;
    }
  }
  estimate.lower = lower;
  estimate.upper = upper;
  return estimate;
}

EfficiencyEstimate estimate_efficiency(const DiagonalPovm& povm,
                                       double bisection_tol, double pos_tol) {
  return estimate_efficiency(povm.to_dense(), bisection_tol, pos_tol);
}

}  // namespace qdet
