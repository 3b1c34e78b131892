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

// Release gate for the library: eight end-to-end properties, one line each.
// Exits nonzero if any of them fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "qdet/efficiency.hpp"
#include "qdet/io.hpp"
#include "qdet/loss.hpp"
#include "qdet/nogo.hpp"
#include "qdet/povm.hpp"
#include "qdet/random.hpp"
#include "qdet/virtual_detector.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Gate {
  int failures = 0;

  void report(int number, bool pass, const std::string& what) {
    std::printf("criterion %d: %s  %s\n", number, pass ? "PASS" : "FAIL",
                what.c_str());
    if (!pass) ++failures;
  }
};

// 1: the efficiency estimate recovers the click detector's own transmissivity.
void criterion_click_efficiency(Gate& gate) {
  bool pass = true;
  double slowest = 0.0;
  for (double eta : {0.3, 0.5, 0.6, 0.9}) {
    const auto start = Clock::now();
    const qdet::EfficiencyEstimate est =
        qdet::estimate_efficiency(qdet::click_detector(eta, 10));
    const double elapsed = seconds_since(start);
    slowest = std::max(slowest, elapsed);
    pass = pass && est.lower <= eta && est.upper >= eta - 1e-12 &&
           est.upper - est.lower <= 1e-6 * (1.0 + 1e-9) && elapsed < 1.0;
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "click detectors bracket their own transmissivity "
                "(slowest case %.3f s)",
                slowest);
  gate.report(1, pass, detail);
}

// 2: pushing a click detector through loss multiplies the transmissivities,
// and over-inverting exposes the expected negative weight at n = 1.
void criterion_loss_composition(Gate& gate) {
  const int n_max = 8;
  const std::vector<double> grid{0.15, 0.3, 0.5, 0.75, 0.95};
  bool pass = true;
  for (double eta : grid) {
    for (double eta_prime : grid) {
      const qdet::Povm pushed = qdet::apply_loss_to_povm(
          qdet::click_detector(eta, n_max).to_dense(), eta_prime);
      const qdet::Povm direct =
          qdet::click_detector(eta * eta_prime, n_max).to_dense();
      for (int i = 0; i < 2; ++i) {
        const double err = (pushed.outcomes()[i].element.matrix() -
                            direct.outcomes()[i].element.matrix())
                               .cwiseAbs()
                               .maxCoeff();
        pass = pass && err <= 1e-12;
      }
      if (eta_prime < eta) {
        const qdet::DiagonalPovm inverted =
            qdet::invert_loss(qdet::click_detector(eta, n_max), eta_prime);
        const double entry = inverted.outcomes()[0].diagonal[1];
        pass = pass && std::abs(entry - (1.0 - eta / eta_prime)) <= 1e-12 &&
               entry < 0.0;
      }
    }
  }
  gate.report(2, pass,
              "loss on a click detector composes multiplicatively; "
              "over-inversion goes negative at n = 1");
}

// 3: the state-side and element-side loss maps give the same statistics.
void criterion_adjointness(Gate& gate) {
  qdet::Rng rng(101);
  const qdet::MultiModeBasis basis(1, 8);
  const int dim = basis.dimension();
  bool pass = true;
  int triples = 0;
  double worst = 0.0;
  while (triples < 200) {
    const qdet::Povm povm = qdet::random_povm(basis, 4, rng);
    const qdet::HermitianOperator rho(
        basis, qdet::random_density_matrix(dim, 1 + triples % dim, rng));
    const double eta = rng.uniform(1e-3, 1.0);
    for (const auto& outcome : povm.outcomes()) {
      const std::complex<double> lhs =
          (rho.matrix() * qdet::apply_loss_matrix(outcome.element.matrix(), eta))
              .trace();
      const std::complex<double> rhs =
          (qdet::apply_loss_to_state(rho, eta).matrix() * outcome.element.matrix())
              .trace();
      worst = std::max(worst, std::abs(lhs - rhs));
      ++triples;
    }
  }
  pass = worst <= 1e-10;
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "state picture and element picture agree on %d triples "
                "(worst %.2e)",
                triples, worst);
  gate.report(3, pass, detail);
}

// 4: the entrywise loss formula matches the beamsplitter Kraus construction,
// and the diagonal fast path matches the dense path.
void criterion_kraus_oracle(Gate& gate) {
  qdet::Rng rng(102);
  const qdet::MultiModeBasis basis(1, 7);
  bool pass = true;
  int elements = 0;
  double worst_dense = 0.0;
  while (elements < 50) {
    const double eta = rng.uniform(0.05, 1.0);
    const auto kraus = qdet::kraus_oracle(eta, qdet::SingleModeCutoff{7});
    const qdet::Povm povm = qdet::random_povm(basis, 5, rng);
    for (const auto& outcome : povm.outcomes()) {
      Eigen::MatrixXcd via_kraus = Eigen::MatrixXcd::Zero(8, 8);
      for (const auto& a : kraus) {
        via_kraus += a.adjoint() * outcome.element.matrix() * a;
      }
      const double err =
          (via_kraus - qdet::apply_loss_matrix(outcome.element.matrix(), eta))
              .cwiseAbs()
              .maxCoeff();
      worst_dense = std::max(worst_dense, err);
      ++elements;
    }
  }
  pass = worst_dense <= 1e-10;

  double worst_diag = 0.0;
  for (double eta : {0.9, 0.55, 0.21}) {
    for (const qdet::DiagonalPovm& detector :
         {qdet::click_detector(0.37, 8), qdet::pnr_detector(0.66, 8)}) {
      const qdet::DiagonalPovm fast = qdet::apply_loss_to_diagonal(detector, eta);
      const qdet::Povm dense = qdet::apply_loss_to_povm(detector.to_dense(), eta);
      for (int i = 0; i < fast.outcome_count(); ++i) {
        const double err =
            (fast.outcomes()[i].diagonal -
             dense.outcomes()[i].element.matrix().diagonal().real())
                .cwiseAbs()
                .maxCoeff();
        worst_diag = std::max(worst_diag, err);
      }
    }
  }
  pass = pass && worst_diag <= 1e-12;
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "Kraus oracle matches on %d elements (worst %.2e); diagonal "
                "path worst %.2e",
                elements, worst_dense, worst_diag);
  gate.report(4, pass, detail);
}

// 5: uniform loss on every mode commutes with any passive interferometer.
void criterion_commutation(Gate& gate) {
  qdet::Rng rng(103);
  const qdet::MultiModeBasis basis(3, 4);
  const auto start = Clock::now();
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const qdet::InterferometerSpec w(qdet::haar_unitary(3, rng));
    const double eta = rng.uniform(0.05, 1.0);
    worst = std::max(worst, qdet::commutation_check(w, eta, basis));
  }
  const double elapsed = seconds_since(start);
  const bool pass = worst <= 1e-8 && elapsed < 30.0;
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "loss commutes with 20 random interferometers "
                "(worst %.2e, %.1f s)",
                worst, elapsed);
  gate.report(5, pass, detail);
}

// 6: no linear-optical wrapper beats the best detector inside it, and the
// harness does catch a pool whose claimed efficiencies are wrong.
void criterion_nogo(Gate& gate) {
  qdet::NogoConfig config;
  config.trials = 200;
  config.seed = 20260814;
  config.total_cutoff = 4;
  config.pools = {qdet::NogoPool{}};  // M = 3, random etas, random partitions
  const qdet::NogoReport report = qdet::run_nogo(config);

  const qdet::NogoReport mislabeled = qdet::run_nogo(qdet::nogo_sensitivity_config());
  const bool pass = report.violation_count == 0 && mislabeled.violation_count > 0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "no efficiency gain in 200 trials (worst margin %.2e); "
                "mislabeled pool is flagged (margin %.2e)",
                report.worst_margin, mislabeled.worst_margin);
  gate.report(6, pass, detail);
}

// 7: feedforward does not help either, and a history-blind policy collapses
// to the fixed-interferometer computation.
void criterion_adaptive_nogo(Gate& gate) {
  qdet::NogoConfig config;
  config.trials = 50;
  config.seed = 20260815;
  config.total_cutoff = 4;
  qdet::NogoPool pool;
  pool.adaptive = true;  // outcome-dependent optics before each measurement
  config.pools = {pool};
  const qdet::NogoReport report = qdet::run_nogo(config);
  bool pass = report.violation_count == 0;

  qdet::Rng rng(104);
  const int total_cutoff = 4;
  const Eigen::MatrixXcd w = qdet::haar_unitary(3, rng);
  const qdet::HermitianOperator ancilla(
      qdet::MultiModeBasis(2, 2),
      qdet::random_density_matrix(qdet::MultiModeBasis(2, 2).dimension(), 3, rng));
  const std::vector<qdet::PhysicalDetectorSlot> slots{
      qdet::detector_slot(0, qdet::click_detector(0.8, total_cutoff)),
      qdet::detector_slot(1, qdet::pnr_detector(0.7, total_cutoff)),
      qdet::detector_slot(2, qdet::click_detector(0.9, total_cutoff))};
  const qdet::Povm fixed = qdet::effective_povm(
      qdet::VirtualDetectorSpec{qdet::InterferometerSpec(w), ancilla, slots, {}},
      total_cutoff);
  const qdet::AdaptivePolicy constant{
      3, [&w](int mode, const std::vector<std::string>&) {
        if (mode == 2) return qdet::InterferometerSpec(w);
        return qdet::InterferometerSpec(
            Eigen::MatrixXcd::Identity(mode + 1, mode + 1));
      }};
  const qdet::Povm collapsed = qdet::effective_povm_adaptive(
      qdet::AdaptiveDetectorSpec{constant, ancilla, slots, {}}, total_cutoff);
  double diff = 0.0;
  for (int i = 0; i < fixed.outcome_count(); ++i) {
    diff = std::max(diff, (fixed.outcomes()[i].element.matrix() -
                           collapsed.outcomes()[i].element.matrix())
                              .cwiseAbs()
                              .maxCoeff());
  }
  pass = pass && diff <= 1e-10;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "no gain from feedforward in 50 trials (worst margin %.2e); "
                "history-blind policy collapses (diff %.2e)",
                report.worst_margin, diff);
  gate.report(7, pass, detail);
}

// 8: a beamsplitter tap with a perfect click detector is exactly a lossy
// click detector of the tap's transmissivity.
void criterion_loss_model_closure(Gate& gate) {
  const int total_cutoff = 6;
  bool pass = true;
  double worst = 0.0;
  for (double t : {0.25, 0.5, 0.75}) {
    const double theta = std::atan2(std::sqrt(1.0 - t), std::sqrt(t));
    Eigen::MatrixXcd w(2, 2);
    w << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    const qdet::HermitianOperator vacuum(qdet::MultiModeBasis(1, 0),
                                         Eigen::MatrixXcd::Identity(1, 1));
    const qdet::VirtualDetectorSpec spec{
        qdet::InterferometerSpec(w),
        vacuum,
        {qdet::detector_slot(0, qdet::click_detector(1.0, total_cutoff)),
         qdet::discard_slot(1, total_cutoff)},
        {{"off|discard", "off"}, {"on|discard", "on"}}};
    const qdet::Povm effective = qdet::effective_povm(spec, total_cutoff);
    const qdet::Povm expected = qdet::click_detector(t, total_cutoff).to_dense();
    for (int i = 0; i < 2; ++i) {
      const double err = (effective.outcomes()[i].element.matrix() -
                          expected.outcomes()[i].element.matrix())
                             .cwiseAbs()
                             .maxCoeff();
      worst = std::max(worst, err);
      pass = pass && err <= 1e-10;
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "beamsplitter tap + ideal click detector = lossy click "
                "detector (worst %.2e)",
                worst);
  gate.report(8, pass, detail);
}

}  // namespace

int main() {
  Gate gate;
  criterion_click_efficiency(gate);
  criterion_loss_composition(gate);
  criterion_adjointness(gate);
  criterion_kraus_oracle(gate);
  criterion_commutation(gate);
  criterion_nogo(gate);
  criterion_adaptive_nogo(gate);
  criterion_loss_model_closure(gate);
  if (gate.failures > 0) {
    std::printf("%d of 8 criteria failed\n", gate.failures);
    return 1;
  }
  std::printf("all 8 criteria passed\n");
  return 0;
}
