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

#include "qdet/virtual_detector.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "qdet/loss.hpp"

namespace qdet {
namespace {

// Slots indexed by mode, with coverage and cutoff checks.
std::vector<const PhysicalDetectorSlot*> ordered_slots(
    const std::vector<PhysicalDetectorSlot>& slots, int mode_count, int total_cutoff) {
  if (static_cast<int>(slots.size()) != mode_count) {
    throw std::invalid_argument("virtual detector: need exactly one slot per mode");
  }
  std::vector<const PhysicalDetectorSlot*> by_mode(mode_count, nullptr);
  for (const PhysicalDetectorSlot& slot : slots) {
    if (slot.mode < 0 || slot.mode >= mode_count) {
      throw std::invalid_argument("virtual detector: slot mode out of range");
    }
    if (by_mode[slot.mode] != nullptr) {
      throw std::invalid_argument("virtual detector: duplicate slot for a mode");
    }
    if (slot.povm.basis().mode_count() != 1) {
      throw std::invalid_argument("virtual detector: slot POVMs must be single-mode");
    }
    if (slot.povm.basis().total_cutoff() < total_cutoff) {
      throw std::invalid_argument(
          "virtual detector: slot POVM cutoff is below the joint total cutoff");
    }
    by_mode[slot.mode] = &slot;
  }
  return by_mode;
}

void check_ancilla(const std::optional<HermitianOperator>& ancilla, int mode_count) {
  if (mode_count == 1) {
    if (ancilla.has_value()) {
      throw std::invalid_argument("virtual detector: no ancilla modes to hold a state");
    }
    return;
  }
  if (!ancilla.has_value()) {
    throw std::invalid_argument("virtual detector: ancilla state required");
  }
  if (ancilla->basis().mode_count() != mode_count - 1) {
    throw std::invalid_argument("virtual detector: ancilla must cover modes 1..M-1");
  }
  if (std::abs(ancilla->trace() - 1.0) > kDefaultCompletenessTol) {
    throw std::invalid_argument("virtual detector: ancilla trace differs from 1");
  }
  if (min_eigenvalue(*ancilla) < -kDefaultPositivityTol) {
    throw std::invalid_argument("virtual detector: ancilla is not positive");
  }
}

// Largest total photon number carried by the ancilla. The effective POVM is
// exact on signal photon numbers up to total_cutoff minus this.
int ancilla_photon_support(const HermitianOperator& ancilla) {
  const Eigen::MatrixXcd& m = ancilla.matrix();
  const MultiModeBasis& basis = ancilla.basis();
  int support = 0;
  for (int i = 0; i < basis.dimension(); ++i) {
    bool occupied = false;
    for (int j = 0; j < basis.dimension() && !occupied; ++j) {
      occupied = m(i, j) != 0.0 || m(j, i) != 0.0;
    }
    if (!occupied) continue;
    int total = 0;
    for (int n : basis.occupation(i)) total += n;
    support = std::max(support, total);
  }
  return support;
}

int signal_cutoff_for(const std::optional<HermitianOperator>& ancilla, int total_cutoff) {
  const int support = ancilla.has_value() ? ancilla_photon_support(*ancilla) : 0;
  if (support >= total_cutoff) {
    throw std::invalid_argument(
        "virtual detector: ancilla photon support leaves no room for the signal");
  }
  return total_cutoff - support;
}

// (I_signal x rho_anc) embedded in the joint basis.
Eigen::MatrixXcd ancilla_weight(const HermitianOperator& ancilla,
                                const MultiModeBasis& joint) {
  const int dim1 = joint.total_cutoff() + 1;
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(dim1, dim1);
  return tensor_matrix(eye, MultiModeBasis(1, joint.total_cutoff()), ancilla.matrix(),
                       ancilla.basis(), joint);
}

// x_j combo[j] over modes 0..M-1 on the joint total-cutoff basis, built by
// iterated tensor; slot POVMs may have larger cutoffs, the tensor projects.
Eigen::MatrixXcd joint_outcome_element(const std::vector<const Eigen::MatrixXcd*>& combo,
                                       const std::vector<const MultiModeBasis*>& bases,
                                       int total_cutoff) {
  const int dim1 = total_cutoff + 1;
  Eigen::MatrixXcd cur = combo[0]->topLeftCorner(dim1, dim1);
  MultiModeBasis cur_basis(1, total_cutoff);
  for (std::size_t j = 1; j < combo.size(); ++j) {
    MultiModeBasis next(static_cast<int>(j) + 1, total_cutoff);
    cur = tensor_matrix(cur, cur_basis, *combo[j], *bases[j], next);
    cur_basis = next;
  }
  return cur;
}

HermitianOperator to_signal_operator(const Eigen::MatrixXcd& reduced,
                                     const MultiModeBasis& out_basis) {
  Eigen::MatrixXcd sig =
      reduced.topLeftCorner(out_basis.dimension(), out_basis.dimension());
  sig = 0.5 * (sig + sig.adjoint().eval());
  return HermitianOperator(out_basis, std::move(sig));
}

}  // namespace

PhysicalDetectorSlot detector_slot(int mode, Povm povm,
                                   std::optional<double> nominal_efficiency) {
  return {mode, std::move(povm), nominal_efficiency};
}

PhysicalDetectorSlot detector_slot(int mode, const DiagonalPovm& povm,
                                   std::optional<double> nominal_efficiency) {
  return {mode, povm.to_dense(), nominal_efficiency};
}

PhysicalDetectorSlot discard_slot(int mode, int n_max) {
  return {mode, discard_detector(n_max), 0.0};
}

std::string joint_label(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += '|';
    out += parts[i];
  }
  return out;
}

Povm effective_povm(const VirtualDetectorSpec& spec, int total_cutoff) {
  if (total_cutoff < 1) {
    throw std::invalid_argument("effective_povm: total_cutoff must be at least 1");
  }
  const int m = spec.interferometer.mode_count();
  const std::vector<const PhysicalDetectorSlot*> slots =
      ordered_slots(spec.slots, m, total_cutoff);
  check_ancilla(spec.ancilla, m);
  const int signal_cutoff = signal_cutoff_for(spec.ancilla, total_cutoff);

  const MultiModeBasis joint(m, total_cutoff);
  const Eigen::MatrixXcd u = lift(spec.interferometer, joint);
  Eigen::MatrixXcd weight;
  if (m > 1) weight = ancilla_weight(*spec.ancilla, joint);

  const MultiModeBasis out_basis(1, signal_cutoff);
  const MultiModeBasis signal_full(1, total_cutoff);
  const std::vector<int> keep = {0};

  std::vector<Povm::Outcome> outcomes;
  std::vector<int> idx(m, 0);
  while (true) {
    std::vector<const Eigen::MatrixXcd*> combo(m);
    std::vector<const MultiModeBasis*> bases(m);
    std::vector<std::string> parts(m);
    for (int j = 0; j < m; ++j) {
      const Povm::Outcome& outcome = slots[j]->povm.outcomes()[idx[j]];
      combo[j] = &outcome.element.matrix();
      bases[j] = &slots[j]->povm.basis();
      parts[j] = outcome.label;
    }
    const Eigen::MatrixXcd p = joint_outcome_element(combo, bases, total_cutoff);
    const Eigen::MatrixXcd x = u.adjoint() * p * u;
    const Eigen::MatrixXcd reduced =
        m > 1 ? partial_trace_matrix(weight * x, joint, keep, signal_full) : x;
    outcomes.push_back({joint_label(parts), to_signal_operator(reduced, out_basis)});

    int j = m - 1;
    while (j >= 0 && ++idx[j] == slots[j]->povm.outcome_count()) {
      idx[j] = 0;
      --j;
    }
    if (j < 0) break;
  }

  Povm result(std::move(outcomes));
  if (!spec.grouping.empty()) result = coarse_grain(result, spec.grouping);
  return result;
}

Povm effective_povm_adaptive(const AdaptiveDetectorSpec& spec, int total_cutoff) {
  if (total_cutoff < 1) {
    throw std::invalid_argument("effective_povm_adaptive: total_cutoff must be at least 1");
  }
  const int m = spec.policy.mode_count;
  if (m < 1) {
    throw std::invalid_argument("effective_povm_adaptive: mode_count must be at least 1");
  }
  if (!spec.policy.choose) {
    throw std::invalid_argument("effective_povm_adaptive: policy has no chooser");
  }
  const std::vector<const PhysicalDetectorSlot*> slots =
      ordered_slots(spec.slots, m, total_cutoff);
  check_ancilla(spec.ancilla, m);
  const int signal_cutoff = signal_cutoff_for(spec.ancilla, total_cutoff);

  std::vector<MultiModeBasis> bases;  // bases[k]: modes 0..k at the joint cutoff
  bases.reserve(m);
  for (int k = 0; k < m; ++k) bases.emplace_back(k + 1, total_cutoff);
  const MultiModeBasis& joint = bases[m - 1];

  Eigen::MatrixXcd weight;
  if (m > 1) weight = ancilla_weight(*spec.ancilla, joint);

  const MultiModeBasis out_basis(1, signal_cutoff);
  const MultiModeBasis signal_full(1, total_cutoff);
  const std::vector<int> keep = {0};
  const int dim1 = total_cutoff + 1;

  auto lift_step = [&](int k, const std::vector<std::string>& history) {
    const InterferometerSpec w = spec.policy.choose(k, history);
    if (w.mode_count() != k + 1) {
      throw std::invalid_argument(
          "effective_povm_adaptive: policy returned an interferometer on the wrong "
          "number of modes");
    }
    return lift(w, bases[k]);
  };

  // Outcome histories in measurement order: position j holds mode m-1-j.
  std::vector<Povm::Outcome> outcomes;
  std::vector<int> idx(m, 0);
  std::vector<std::string> history(m);
  while (true) {
    for (int j = 0; j < m; ++j) {
      history[j] = slots[m - 1 - j]->povm.outcomes()[idx[j]].label;
    }

    std::vector<std::string> prefix(history.begin(), history.end() - 1);
    const Eigen::MatrixXcd u0 = lift_step(0, prefix);
    const Povm::Outcome& first =
        slots[0]->povm.outcomes()[idx[m - 1]];  // mode 0 is measured last
    Eigen::MatrixXcd a = u0.adjoint() *
                         first.element.matrix().topLeftCorner(dim1, dim1) * u0;
    for (int k = 1; k < m; ++k) {
      prefix.assign(history.begin(), history.begin() + (m - 1 - k));
      const Eigen::MatrixXcd uk = lift_step(k, prefix);
      const Povm::Outcome& outcome = slots[k]->povm.outcomes()[idx[m - 1 - k]];
      a = uk.adjoint() *
          tensor_matrix(a, bases[k - 1], outcome.element.matrix(),
                        slots[k]->povm.basis(), bases[k]) *
          uk;
    }

    const Eigen::MatrixXcd reduced =
        m > 1 ? partial_trace_matrix(weight * a, joint, keep, signal_full) : a;
    std::vector<std::string> parts(m);
    for (int j = 0; j < m; ++j) parts[j] = history[m - 1 - j];
    outcomes.push_back({joint_label(parts), to_signal_operator(reduced, out_basis)});

    // Carry from the mode-(m-1) position so outcomes appear in the same
    // mode-0-major order as effective_povm.
    int j = 0;
    while (j < m && ++idx[j] == slots[m - 1 - j]->povm.outcome_count()) {
      idx[j] = 0;
      ++j;
    }
    if (j >= m) break;
  }

  Povm result(std::move(outcomes));
  if (!spec.grouping.empty()) result = coarse_grain(result, spec.grouping);
  return result;
}

double commutation_check(const InterferometerSpec& spec, double eta,
                         const MultiModeBasis& basis) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("commutation_check: eta outside (0, 1]");
  }
  if (spec.mode_count() != basis.mode_count()) {
    throw std::invalid_argument("commutation_check: mode counts differ");
  }
  const int n = basis.total_cutoff();
  const int m = basis.mode_count();
  const Eigen::MatrixXcd u = lift(spec, basis);
  const std::vector<Eigen::MatrixXcd> single = kraus_oracle(eta, SingleModeCutoff{n});

  // Per-mode loss Kraus operators: tensor products with a joint photon
  // removal of at most the cutoff (all other combinations vanish).
  std::vector<std::pair<Eigen::MatrixXcd, int>> acc;
  for (int k = 0; k < static_cast<int>(single.size()) && k <= n; ++k) {
    acc.emplace_back(single[k], k);
  }
  for (int mode = 1; mode < m; ++mode) {
    const MultiModeBasis prev(mode, n);
    const MultiModeBasis next(mode + 1, n);
    const MultiModeBasis one(1, n);
    std::vector<std::pair<Eigen::MatrixXcd, int>> grown;
    for (const auto& [mat, used] : acc) {
      for (int k = 0; k < static_cast<int>(single.size()) && used + k <= n; ++k) {
        grown.emplace_back(tensor_matrix(mat, prev, single[k], one, next), used + k);
      }
    }
    acc = std::move(grown);
  }

  const int dim = basis.dimension();
  Eigen::MatrixXcd v1(dim * dim, static_cast<int>(acc.size()));
  Eigen::MatrixXcd v2(dim * dim, static_cast<int>(acc.size()));
  for (int i = 0; i < static_cast<int>(acc.size()); ++i) {
    const Eigen::MatrixXcd after = acc[i].first * u;   // lift first, then lose
    const Eigen::MatrixXcd before = u * acc[i].first;  // lose first, then lift
    v1.col(i) = Eigen::Map<const Eigen::VectorXcd>(after.data(), dim * dim);
    v2.col(i) = Eigen::Map<const Eigen::VectorXcd>(before.data(), dim * dim);
  }
  // Channels are equal iff their Kraus Gram accumulations agree; comparing
  // these sidesteps the non-uniqueness of Kraus decompositions.
  const Eigen::MatrixXcd c1 = v1 * v1.adjoint();
  const Eigen::MatrixXcd c2 = v2 * v2.adjoint();
  return (c1 - c2).cwiseAbs().maxCoeff();
}

}  // namespace qdet
