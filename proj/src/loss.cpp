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

#include "qdet/loss.hpp"

#include <cmath>
#include <stdexcept>

#include "qdet/interferometer.hpp"

namespace qdet {
namespace {

void check_single_mode(const MultiModeBasis& basis, const char* where) {
  if (basis.mode_count() != 1) {
    throw std::invalid_argument(std::string(where) + ": expects a single-mode operator");
  }
}

void check_eta_positive(double eta, const char* where) {
  if (!(eta > 0.0)) {
    throw std::invalid_argument(std::string(where) + ": eta must be positive");
  }
}

}  // namespace

Eigen::MatrixXcd apply_loss_matrix(const Eigen::MatrixXcd& element, double eta) {
  check_eta_positive(eta, "apply_loss_matrix");
  const int dim = static_cast<int>(element.rows());
  const double lost = 1.0 - eta;
  Eigen::MatrixXcd out(dim, dim);
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m < dim; ++m) {
      Complex sum = 0.0;
      for (int k = 0; k <= std::min(n, m); ++k) {
        const double weight = std::sqrt(binomial(m, k) * binomial(n, k)) *
                              ipow(lost, k) *
                              std::pow(eta, 0.5 * (m + n) - k);
        sum += weight * element(n - k, m - k);
      }
      out(n, m) = sum;
    }
  }
  return out;
}

Povm apply_loss_to_povm(const Povm& povm, double eta) {
  check_eta_positive(eta, "apply_loss_to_povm");
  check_single_mode(povm.basis(), "apply_loss_to_povm");
  std::vector<Povm::Outcome> outcomes;
  outcomes.reserve(povm.outcomes().size());
  for (const Povm::Outcome& outcome : povm.outcomes()) {
    // Symmetrize first: the map's weights reach eta^(-n_max) for eta > 1,
    // which would otherwise amplify stored sub-tolerance asymmetry past the
    // constructor check. A symmetrized input keeps the output Hermitian
    // bit-for-bit at any scale.
    const Eigen::MatrixXcd sym =
        0.5 * (outcome.element.matrix() + outcome.element.matrix().adjoint());
    outcomes.push_back(
        {outcome.label, HermitianOperator(povm.basis(), apply_loss_matrix(sym, eta),
                                          outcome.element.hermiticity_tol())});
  }
  return Povm(std::move(outcomes), povm.positivity_tol(), povm.completeness_tol());
}

DiagonalPovm apply_loss_to_diagonal(const DiagonalPovm& povm, double eta) {
  check_eta_positive(eta, "apply_loss_to_diagonal");
  const int dim = povm.cutoff().dimension();
  const double lost = 1.0 - eta;
  std::vector<DiagonalPovm::Outcome> outcomes;
  outcomes.reserve(povm.outcomes().size());
  for (const DiagonalPovm::Outcome& outcome : povm.outcomes()) {
    Eigen::VectorXd diag(dim);
    for (int n = 0; n < dim; ++n) {
      double sum = 0.0;
      for (int k = 0; k <= n; ++k) {
        sum += binomial(n, k) * ipow(lost, n - k) * ipow(eta, k) * outcome.diagonal[k];
      }
      diag[n] = sum;
    }
    outcomes.push_back({outcome.label, std::move(diag)});
  }
  return DiagonalPovm(povm.cutoff(), std::move(outcomes), povm.positivity_tol(),
                      povm.completeness_tol());
}

HermitianOperator apply_loss_to_state(const HermitianOperator& rho, double eta,
                                      bool require_density) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("apply_loss_to_state: eta outside [0, 1]");
  }
  check_single_mode(rho.basis(), "apply_loss_to_state");
  if (require_density) {
    if (std::abs(rho.trace() - 1.0) > kDefaultCompletenessTol) {
      throw std::invalid_argument("apply_loss_to_state: trace differs from 1");
    }
    if (min_eigenvalue(rho) < -kDefaultPositivityTol) {
      throw std::invalid_argument("apply_loss_to_state: state is not positive");
    }
  }
  const int dim = rho.basis().dimension();
  const double lost = 1.0 - eta;
  const Eigen::MatrixXcd& in = rho.matrix();
  Eigen::MatrixXcd out(dim, dim);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      Complex sum = 0.0;
      const int k_max = dim - 1 - std::max(m, n);
      for (int k = 0; k <= k_max; ++k) {
        const double weight = std::sqrt(binomial(m + k, k) * binomial(n + k, k)) *
                              ipow(lost, k) *
                              std::pow(eta, 0.5 * (m + n));
        sum += weight * in(m + k, n + k);
      }
      out(m, n) = sum;
    }
  }
  return HermitianOperator(rho.basis(), std::move(out), rho.hermiticity_tol());
}

Povm invert_loss(const Povm& povm, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("invert_loss: eta outside (0, 1]");
  }
  // F maps compose as F_a after F_b = F_ab and only look downward in photon
  // number, so the formal map at 1/eta inverts F_eta exactly on the
  // truncated space.
  return apply_loss_to_povm(povm, 1.0 / eta);
}

DiagonalPovm invert_loss(const DiagonalPovm& povm, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("invert_loss: eta outside (0, 1]");
  }
  return apply_loss_to_diagonal(povm, 1.0 / eta);
}

std::vector<Eigen::MatrixXcd> kraus_oracle(double eta, SingleModeCutoff cutoff) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("kraus_oracle: eta outside (0, 1]");
  }
  const int n_max = cutoff.n_max;
  const double t = std::sqrt(eta);
  const double r = std::sqrt(1.0 - eta);
  Eigen::MatrixXcd w(2, 2);
  w << t, r, -r, t;
  MultiModeBasis pair(2, n_max);
  const Eigen::MatrixXcd u = lift(InterferometerSpec(w), pair);

  std::vector<Eigen::MatrixXcd> kraus;
  std::vector<int> occ(2);
  for (int k = 0; k <= n_max; ++k) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    for (int n = k; n <= n_max; ++n) {
      for (int m = 0; m + k <= n_max; ++m) {
        occ[0] = m;
        occ[1] = k;
        const int row = pair.index_of(occ);
        occ[0] = n;
        occ[1] = 0;
        a(m, n) = u(row, pair.index_of(occ));
      }
    }
    if (a.cwiseAbs().maxCoeff() > 0.0) kraus.push_back(std::move(a));
  }
  return kraus;
}

}  // namespace qdet
