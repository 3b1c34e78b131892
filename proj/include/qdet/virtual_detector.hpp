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

#ifndef QDET_VIRTUAL_DETECTOR_HPP_
#define QDET_VIRTUAL_DETECTOR_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdet/interferometer.hpp"
#include "qdet/povm.hpp"

namespace qdet {

/// Physical detector placed on one interferometer output. Every output mode
/// needs exactly one slot; a discard is just the single-outcome POVM {I}.
/// The slot POVM must be single-mode with a cutoff at least the joint total
/// cutoff, so that no reachable matrix element is missing.
struct PhysicalDetectorSlot {
  int mode;
  Povm povm;
  std::optional<double> nominal_efficiency;  // reporting metadata only
};

PhysicalDetectorSlot detector_slot(int mode, Povm povm,
                                   std::optional<double> nominal_efficiency = {});
PhysicalDetectorSlot detector_slot(int mode, const DiagonalPovm& povm,
                                   std::optional<double> nominal_efficiency = {});
PhysicalDetectorSlot discard_slot(int mode, int n_max);

/// Canonical name of a joint outcome: per-mode labels joined with '|' in
/// mode order. Grouping maps and adaptive policy tables key off this form.
std::string joint_label(const std::vector<std::string>& parts);

/// A measurement of mode 0 assembled from an interferometer, ancillary light
/// on modes 1..M-1 and one physical detector per output mode.
struct VirtualDetectorSpec {
  InterferometerSpec interferometer;          // M modes, mode 0 is the signal
  std::optional<HermitianOperator> ancilla;   // required iff M > 1
  std::vector<PhysicalDetectorSlot> slots;    // one per mode
  // joint label -> virtual outcome label; empty map keeps joint outcomes.
  std::map<std::string, std::string> grouping;
};

/// Single-mode POVM equivalent to the whole apparatus:
///   element(outcome) = Tr_{1..M-1}[ (I x rho_anc) U' (x_j slot_j) U ].
/// Returned on the signal cutoff N_tot - K, where K is the ancilla's photon
/// support: on that domain the truncated computation agrees exactly with the
/// untruncated apparatus, because the lift conserves total photon number and
/// detection only removes photons. The result sums to identity identically.
Povm effective_povm(const VirtualDetectorSpec& spec, int total_cutoff);

/// Measurement cascade with feedforward: modes are measured from M-1 down to
/// 0, and before measuring mode k an interferometer W_k acting on modes 0..k
/// is chosen from the outcomes already observed. `history` passes those
/// labels in measurement order (mode M-1 first).
struct AdaptivePolicy {
  int mode_count;
  std::function<InterferometerSpec(int mode, const std::vector<std::string>& history)>
      choose;
};

struct AdaptiveDetectorSpec {
  AdaptivePolicy policy;
  std::optional<HermitianOperator> ancilla;  // modes 1..M-1, required iff M > 1
  std::vector<PhysicalDetectorSlot> slots;
  std::map<std::string, std::string> grouping;
};

/// Effective POVM of the adaptive cascade by exhaustive branch enumeration.
/// For each outcome history the elements accumulate in the Heisenberg
/// picture, A_k = U_k' (A_{k-1} x slot_k) U_k, and histories mapped to the
/// same virtual outcome are summed. A history-independent policy reproduces
/// effective_povm exactly.
Povm effective_povm_adaptive(const AdaptiveDetectorSpec& spec, int total_cutoff);

/// Max entrywise deviation between the channels "lift W, then lose eta on
/// every mode" and "lose eta on every mode, then lift W", compared through
/// their Choi matrices. Passive linear optics commutes with uniform loss, so
/// this is zero up to roundoff; anything above ~1e-8 signals a bug.
double commutation_check(const InterferometerSpec& spec, double eta,
                         const MultiModeBasis& basis);

}  // namespace qdet

#endif  // QDET_VIRTUAL_DETECTOR_HPP_
