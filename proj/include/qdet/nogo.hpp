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

#ifndef QDET_NOGO_HPP_
#define QDET_NOGO_HPP_

#include <cstdint>
#include <vector>

#include "qdet/efficiency.hpp"

namespace qdet {

// Monte-Carlo harness for the bound "sorted virtual efficiencies never exceed
// sorted physical efficiency bounds". Each physical detector is built by
// pushing a known loss eta through an ideal (efficiency <= 1) detector, so
// eta is an upper bound on its efficiency by construction and the reported
// margins need no second estimation pass.

/// One virtual detector per pool; pools never share physical detectors.
struct NogoPool {
  int mode_count = 3;
  /// Transmissivities actually applied to the pool's detectors; empty means
  /// drawn uniformly from [eta_min, eta_max] each trial.
  std::vector<double> etas;
  /// Bounds reported to the checker; defaults to the actual values. Setting
  /// these lower than the actual transmissivities mislabels the pool and
  /// must make the experiment fail (harness sensitivity).
  std::vector<double> nominal_etas;
  double eta_min = 0.2;
  double eta_max = 0.95;
  bool adaptive = false;
  /// Replace the random interferometer(s) with the identity.
  bool identity_interferometer = false;
  /// Use the on/off partition {0 | 1..n} as the ideal detector instead of a
  /// random partition; its efficiency is exactly 1, making bounds tight.
  bool ideal_click = false;
};

struct NogoConfig {
  int trials = 200;
  std::uint64_t seed = 1;
  int total_cutoff = 4;
  int ancilla_photons = 2;   // max total photons in the random ancilla states
  int partition_cells = 2;   // cells of the random ideal detectors
  double bisection_tol = kDefaultBisectionTol;
  double pos_tol = kDefaultPositivityTol;
  std::vector<NogoPool> pools;
};

struct NogoTrial {
  int trial = 0;
  std::vector<double> bounds_sorted;         // pool bounds, non-increasing
  std::vector<double> virtual_lower_sorted;  // estimate brackets, sorted with
  std::vector<double> virtual_upper_sorted;  // the uppers non-increasing
  double worst_margin = 0.0;  // min over i of bounds[i] - virtual_upper[i]
  bool violation = false;     // worst_margin < -slack
};

struct NogoReport {
  double slack = 0.0;  // 2 * bisection_tol + 1e-6
  int violation_count = 0;
  double worst_margin = 0.0;
  std::vector<NogoTrial> trials;
};

/// Runs the experiment. Deterministic for a fixed config: every trial/pool
/// pair derives its own random stream from (seed, trial, pool).
NogoReport run_nogo(const NogoConfig& config);

/// Canned mislabeled-pool configuration: an identity-routed detector of
/// actual transmissivity 0.9 reported as 0.5. run_nogo on it must flag a
/// violation in every trial; this is the proof that the harness can fail.
NogoConfig nogo_sensitivity_config();

}  // namespace qdet

#endif  // QDET_NOGO_HPP_
