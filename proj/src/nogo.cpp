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

#include "qdet/nogo.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

#include "qdet/loss.hpp"
#include "qdet/random.hpp"
#include "qdet/virtual_detector.hpp"

namespace qdet {
namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

DiagonalPovm on_off_partition(int n_max) {
  Eigen::VectorXd off = Eigen::VectorXd::Zero(n_max + 1);
  off[0] = 1.0;
  Eigen::VectorXd on = Eigen::VectorXd::Ones(n_max + 1) - off;
  return DiagonalPovm(SingleModeCutoff{n_max}, {{"off", off}, {"on", on}});
}

struct PoolOutcome {
  double bound;
  double lower;
  double upper;
};

PoolOutcome run_pool(const NogoConfig& config, const NogoPool& pool, Rng rng) {
  const int m = pool.mode_count;
  if (m < 1) {
    throw std::invalid_argument("run_nogo: pool mode_count must be at least 1");
  }
  if (!pool.etas.empty() && static_cast<int>(pool.etas.size()) != m) {
    throw std::invalid_argument("run_nogo: pool etas must list one value per mode");
  }
  if (!pool.nominal_etas.empty() && static_cast<int>(pool.nominal_etas.size()) != m) {
    throw std::invalid_argument("run_nogo: pool nominal_etas must list one value per mode");
  }

  std::vector<double> etas(m);
  for (int j = 0; j < m; ++j) {
    etas[j] = pool.etas.empty() ? rng.uniform(pool.eta_min, pool.eta_max) : pool.etas[j];
    if (!(etas[j] > 0.0 && etas[j] <= 1.0)) {
      throw std::invalid_argument("run_nogo: pool eta outside (0, 1]");
    }
  }
  const std::vector<double>& nominal = pool.nominal_etas.empty() ? etas : pool.nominal_etas;

  // Physical detectors: known loss applied to an ideal projective detector,
  // so nominal-by-construction bounds hold whenever nominal >= actual.
  std::vector<PhysicalDetectorSlot> slots;
  slots.reserve(m);
  for (int j = 0; j < m; ++j) {
    const DiagonalPovm ideal =
        pool.ideal_click
            ? on_off_partition(config.total_cutoff)
            : random_partition_povm(config.total_cutoff, config.partition_cells, rng);
    slots.push_back(detector_slot(j, apply_loss_to_diagonal(ideal, etas[j]), nominal[j]));
  }

  std::optional<HermitianOperator> ancilla;
  if (m > 1) {
    const MultiModeBasis anc_basis(m - 1, config.ancilla_photons);
    ancilla.emplace(anc_basis,
                    random_density_matrix(anc_basis.dimension(), anc_basis.dimension(), rng));
  }

  std::optional<Povm> effective;
  if (!pool.adaptive) {
    const Eigen::MatrixXcd w = pool.identity_interferometer
                                   ? Eigen::MatrixXcd::Identity(m, m)
                                   : haar_unitary(m, rng);
    effective = effective_povm({InterferometerSpec(w), ancilla, slots, {}},
                               config.total_cutoff);
  } else {
    // Interferometer choices keyed by (step, history) on a stream derived
    // from the pool's seed, so the policy is a deterministic total function.
    const Rng policy_root = rng.stream(0x9e1c);
    const bool identity = pool.identity_interferometer;
    AdaptivePolicy policy{
        m, [policy_root, identity](int k, const std::vector<std::string>& history) {
          if (identity || k == 0) {
            return InterferometerSpec(Eigen::MatrixXcd::Identity(k + 1, k + 1));
          }
          Rng r = policy_root.stream(static_cast<std::uint64_t>(k),
                                     fnv1a(joint_label(history)));
          return InterferometerSpec(haar_unitary(k + 1, r));
        }};
    effective = effective_povm_adaptive({policy, ancilla, slots, {}}, config.total_cutoff);
  }

  const EfficiencyEstimate estimate =
      estimate_efficiency(*effective, config.bisection_tol, config.pos_tol);
  return {*std::max_element(nominal.begin(), nominal.end()), estimate.lower,
          estimate.upper};
}

}  // namespace

NogoReport run_nogo(const NogoConfig& config) {
  if (config.trials < 1) {
    throw std::invalid_argument("run_nogo: trials must be at least 1");
  }
  if (config.pools.empty()) {
    throw std::invalid_argument("run_nogo: at least one detector pool required");
  }
  NogoReport report;
  report.slack = 2.0 * config.bisection_tol + 1e-6;
  report.worst_margin = std::numeric_limits<double>::infinity();

  const Rng root(config.seed);
  for (int trial = 0; trial < config.trials; ++trial) {
    std::vector<PoolOutcome> outcomes;
    outcomes.reserve(config.pools.size());
    for (std::size_t p = 0; p < config.pools.size(); ++p) {
      outcomes.push_back(run_pool(config, config.pools[p],
                                  root.stream(trial + 1, p + 1)));
    }

    NogoTrial record;
    record.trial = trial;
    for (const PoolOutcome& outcome : outcomes) record.bounds_sorted.push_back(outcome.bound);
    std::sort(record.bounds_sorted.rbegin(), record.bounds_sorted.rend());
    std::sort(outcomes.begin(), outcomes.end(),
              [](const PoolOutcome& a, const PoolOutcome& b) { return a.upper > b.upper; });
    record.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      record.virtual_lower_sorted.push_back(outcomes[i].lower);
      record.virtual_upper_sorted.push_back(outcomes[i].upper);
      record.worst_margin =
          std::min(record.worst_margin, record.bounds_sorted[i] - outcomes[i].upper);
    }
    record.violation = record.worst_margin < -report.slack;

    report.worst_margin = std::min(report.worst_margin, record.worst_margin);
    if (record.violation) ++report.violation_count;
    report.trials.push_back(std::move(record));
  }
  return report;
}

NogoConfig nogo_sensitivity_config() {
  NogoConfig config;
  config.trials = 3;
  config.seed = 20260814;
  config.total_cutoff = 4;
  NogoPool pool;
  pool.mode_count = 1;
  pool.etas = {0.9};
  pool.nominal_etas = {0.5};
  pool.identity_interferometer = true;
  pool.ideal_click = true;
  config.pools = {pool};
  return config;
}

}  // namespace qdet
