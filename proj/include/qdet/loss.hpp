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

#ifndef QDET_LOSS_HPP_
#define QDET_LOSS_HPP_

#include <vector>

#include "qdet/povm.hpp"

namespace qdet {

// Bernoulli (pure loss) channel of transmissivity eta on one mode, in both
// pictures. Schroedinger picture E_eta acts on states; its adjoint F_eta acts
// on POVM elements. Both maps only reference matrix entries at or below the
// indices they produce, so they are exact on any truncated basis: no
// amplitude ever leaks in from above the cutoff.

/// Heisenberg-picture loss map applied entrywise to a matrix:
///   <n|F(P)|m> = sum_k sqrt(C(m,k) C(n,k)) (1-eta)^k eta^((m+n)/2 - k) <n-k|P|m-k>.
/// Admits eta > 1 as the formal inverse of the channel (see invert_loss).
/// The output is Hermitian bit-for-bit whenever the input is.
Eigen::MatrixXcd apply_loss_matrix(const Eigen::MatrixXcd& element, double eta);

/// F_eta on every element of a POVM. Completeness is preserved identically
/// (F_eta(I) = I by the binomial theorem). Requires eta > 0; for eta <= 1 the
/// result is again a valid POVM, for eta > 1 positivity can fail and the
/// result is the formal preimage used by the efficiency estimator.
Povm apply_loss_to_povm(const Povm& povm, double eta);

/// Diagonal fast path: <n|F(P)|n> = sum_k C(n,k) (1-eta)^(n-k) eta^k <k|P|k>.
/// Agrees with the dense map on diagonal inputs.
DiagonalPovm apply_loss_to_diagonal(const DiagonalPovm& povm, double eta);

/// Schroedinger-picture loss on a state, 0 <= eta <= 1:
///   <m|E(rho)|n> = sum_k <m+k|rho|n+k> sqrt(C(m+k,k) C(n+k,k)) (1-eta)^k eta^((m+n)/2).
/// Adjoint to F_eta: Tr[rho F(P)] = Tr[E(rho) P] on the truncated space.
/// Trace-preserving (photon number only decreases, nothing is clipped).
/// With `require_density` the input must be a density operator (unit trace,
/// positive within tolerance); pass false to transform any Hermitian matrix.
HermitianOperator apply_loss_to_state(const HermitianOperator& rho, double eta,
                                      bool require_density = true);

/// Exact preimage under F_eta on the truncated space, 0 < eta <= 1: returns
/// the element list P with apply_loss_to_povm(P, eta) = input. Elements sum
/// to identity but may carry negative eigenvalues; that negativity is exactly
/// the infeasibility witness the efficiency estimator looks for.
Povm invert_loss(const Povm& povm, double eta);

/// Diagonal counterpart; entries may go negative for the same reason.
DiagonalPovm invert_loss(const DiagonalPovm& povm, double eta);

/// Kraus operators {A_k} of the loss channel, built independently of the
/// closed-form maps above: a beamsplitter of transmissivity eta is lifted to
/// the two-mode Fock space with a vacuum ancilla and read out per ancilla
/// photon count, A_k = <k|_anc U |0>_anc. Verification oracle for both maps:
/// sum_k A_k rho A_k' = E_eta(rho) and sum_k A_k' P A_k = F_eta(P).
/// All-zero operators are dropped, so eta = 1 yields just the identity.
std::vector<Eigen::MatrixXcd> kraus_oracle(double eta, SingleModeCutoff cutoff);

}  // namespace qdet

#endif  // QDET_LOSS_HPP_
