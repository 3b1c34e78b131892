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

// Python surface. POVMs cross the boundary as lists of (label, matrix)
// pairs on a single mode; the cutoff is implied by the matrix dimension.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdet/efficiency.hpp"
#include "qdet/fock.hpp"
#include "qdet/interferometer.hpp"
#include "qdet/loss.hpp"
#include "qdet/povm.hpp"
#include "qdet/virtual_detector.hpp"

namespace py = pybind11;

namespace {

using LabeledMatrices = std::vector<std::pair<std::string, Eigen::MatrixXcd>>;
using LabeledVectors = std::vector<std::pair<std::string, Eigen::VectorXd>>;

qdet::Povm povm_from_pairs(const LabeledMatrices& pairs) {
  if (pairs.empty()) {
    throw std::invalid_argument("a POVM needs at least one outcome");
  }
  const Eigen::Index dim = pairs.front().second.rows();
  if (dim < 1) throw std::invalid_argument("POVM elements must be non-empty");
  const qdet::MultiModeBasis basis(1, static_cast<int>(dim) - 1);
  std::vector<qdet::Povm::Outcome> outcomes;
  outcomes.reserve(pairs.size());
  for (const auto& [label, matrix] : pairs) {
    outcomes.push_back({label, qdet::HermitianOperator(basis, matrix)});
  }
  return qdet::Povm(std::move(outcomes));
}

LabeledMatrices pairs_from_povm(const qdet::Povm& povm) {
  LabeledMatrices out;
  out.reserve(povm.outcomes().size());
  for (const auto& outcome : povm.outcomes()) {
    out.emplace_back(outcome.label, outcome.element.matrix());
  }
  return out;
}

LabeledVectors pairs_from_diagonal(const qdet::DiagonalPovm& povm) {
  LabeledVectors out;
  out.reserve(povm.outcomes().size());
  for (const auto& outcome : povm.outcomes()) {
    out.emplace_back(outcome.label, outcome.diagonal);
  }
  return out;
}

qdet::MultiModeBasis basis_for_dimension(int mode_count, Eigen::Index dim) {
  for (int cutoff = 0; cutoff <= 64; ++cutoff) {
    const qdet::MultiModeBasis basis(mode_count, cutoff);
    if (basis.dimension() == dim) return basis;
    if (basis.dimension() > dim) break;
  }
  throw std::invalid_argument(
      "matrix dimension does not match any total cutoff for " +
      std::to_string(mode_count) + " mode(s)");
}

py::dict estimate_to_dict(const qdet::EfficiencyEstimate& estimate) {
  py::dict out;
  out["lower"] = estimate.lower;
  out["upper"] = estimate.upper;
  out["cutoff"] = estimate.cutoff.n_max;
  out["bisection_tol"] = estimate.bisection_tol;
  out["feasibility_trace"] = estimate.feasibility_trace;
  return out;
}

py::dict report_to_dict(const qdet::ValidationReport& report) {
  py::list elements;
  for (const auto& element : report.elements) {
    elements.append(py::make_tuple(element.label, element.min_eigenvalue));
  }
  py::dict out;
  out["pass"] = report.pass();
  out["positivity_ok"] = report.positivity_ok;
  out["completeness_ok"] = report.completeness_ok;
  out["completeness_residual"] = report.completeness_residual;
  out["min_eigenvalues"] = elements;
  return out;
}

py::dict decomposition_to_dict(const qdet::Decomposition& mesh) {
  py::list elements;
  for (const qdet::TwoModeElement& element : mesh.elements) {
    py::dict e;
    if (element.kind == qdet::TwoModeElement::Kind::kBeamsplitter) {
      e["kind"] = "beamsplitter";
      e["modes"] = py::make_tuple(element.mode_a, element.mode_b);
      e["theta"] = element.parameter;
    } else {
      e["kind"] = "phase";
      e["mode"] = element.mode_a;
      e["phi"] = element.parameter;
    }
    elements.append(e);
  }
  py::dict out;
  out["elements"] = elements;
  out["output_phases"] = mesh.output_phases;
  return out;
}

qdet::Decomposition decomposition_from_dict(const py::dict& d) {
  qdet::Decomposition mesh;
  for (const auto& item : d["elements"]) {
    const py::dict e = py::cast<py::dict>(item);
    const std::string kind = py::cast<std::string>(e["kind"]);
    if (kind == "beamsplitter") {
      const auto modes = py::cast<std::pair<int, int>>(e["modes"]);
      mesh.elements.push_back(qdet::TwoModeElement::beamsplitter(
          py::cast<double>(e["theta"]), modes.first, modes.second));
    } else if (kind == "phase") {
      mesh.elements.push_back(qdet::TwoModeElement::phase(
          py::cast<double>(e["phi"]), py::cast<int>(e["mode"])));
    } else {
      throw std::invalid_argument("unknown mesh element kind '" + kind + "'");
    }
  }
  mesh.output_phases = py::cast<Eigen::VectorXd>(d["output_phases"]);
  return mesh;
}

}  // namespace

PYBIND11_MODULE(_qdet, m) {
  m.doc() =
      "Detectors as POVMs on truncated Fock spaces: loss maps, generalized "
      "efficiency, interferometer lifts and virtual-detector assembly.";

  m.def(
      "basis_occupations",
      [](int mode_count, int total_cutoff) {
        const qdet::MultiModeBasis basis(mode_count, total_cutoff);
        std::vector<std::vector<int>> occupations;
        occupations.reserve(basis.dimension());
        for (int i = 0; i < basis.dimension(); ++i) {
          occupations.push_back(basis.occupation(i));
        }
        return occupations;
      },
      py::arg("mode_count"), py::arg("total_cutoff"),
      "Occupation vectors of the truncated basis, in index order.");

  m.def(
      "click_detector",
      [](double eta, int n_max) {
        return pairs_from_diagonal(qdet::click_detector(eta, n_max));
      },
      py::arg("eta"), py::arg("n_max"),
      "On/off detector of efficiency eta as (label, diagonal) pairs.");

  m.def(
      "pnr_detector",
      [](double eta, int n_max) {
        return pairs_from_diagonal(qdet::pnr_detector(eta, n_max));
      },
      py::arg("eta"), py::arg("n_max"),
      "Photon-number-resolving detector of efficiency eta.");

  m.def(
      "apply_loss",
      [](const LabeledMatrices& povm, double eta) {
        return pairs_from_povm(qdet::apply_loss_to_povm(povm_from_pairs(povm), eta));
      },
      py::arg("povm"), py::arg("eta"),
      "Push a POVM through the transmissivity-eta loss map.");

  m.def(
      "invert_loss",
      [](const LabeledMatrices& povm, double eta) {
        return pairs_from_povm(qdet::invert_loss(povm_from_pairs(povm), eta));
      },
      py::arg("povm"), py::arg("eta"),
      "Exact preimage under the loss map; may carry negative eigenvalues.");

  m.def(
      "loss_kraus",
      [](double eta, int n_max) {
        return qdet::kraus_oracle(eta, qdet::SingleModeCutoff{n_max});
      },
      py::arg("eta"), py::arg("n_max"),
      "Kraus operators of the loss channel on the truncated space.");

  m.def(
      "validate_povm",
      [](const LabeledMatrices& povm) {
        return report_to_dict(qdet::validate(povm_from_pairs(povm)));
      },
      py::arg("povm"), "Positivity and completeness diagnostics.");

  m.def(
      "estimate_efficiency",
      [](const LabeledMatrices& povm, double bisection_tol, double pos_tol) {
        return estimate_to_dict(qdet::estimate_efficiency(povm_from_pairs(povm),
                                                          bisection_tol, pos_tol));
      },
      py::arg("povm"), py::arg("bisection_tol") = qdet::kDefaultBisectionTol,
      py::arg("pos_tol") = qdet::kDefaultPositivityTol,
      "Generalized efficiency bracket [lower, upper] by feasibility bisection.");

  m.def(
      "decompose",
      [](const Eigen::MatrixXcd& w) {
        return decomposition_to_dict(qdet::decompose(qdet::InterferometerSpec(w)));
      },
      py::arg("matrix"),
      "Rectangular-mesh decomposition into beamsplitters and phases.");

  m.def(
      "recompose",
      [](const py::dict& mesh, int mode_count) {
        return qdet::recompose(decomposition_from_dict(mesh), mode_count);
      },
      py::arg("mesh"), py::arg("mode_count"),
      "Multiply a mesh back into a mode-space unitary.");

  m.def(
      "lift",
      [](const Eigen::MatrixXcd& w, int total_cutoff) {
        const qdet::MultiModeBasis basis(static_cast<int>(w.rows()), total_cutoff);
        return qdet::lift(qdet::InterferometerSpec(w), basis);
      },
      py::arg("matrix"), py::arg("total_cutoff"),
      "Fock-space unitary induced by a mode-space unitary.");

  m.def(
      "single_photon_block",
      [](const Eigen::MatrixXcd& lifted, int mode_count, int total_cutoff) {
        return qdet::single_photon_block(lifted,
                                         qdet::MultiModeBasis(mode_count, total_cutoff));
      },
      py::arg("lifted"), py::arg("mode_count"), py::arg("total_cutoff"),
      "Extract the one-photon block of a lifted unitary (returns the mode matrix).");

  m.def(
      "effective_povm",
      [](const Eigen::MatrixXcd& w, const std::optional<Eigen::MatrixXcd>& ancilla,
         const std::vector<std::pair<int, LabeledMatrices>>& slots, int total_cutoff,
         const std::map<std::string, std::string>& grouping) {
        const int modes = static_cast<int>(w.rows());
        std::optional<qdet::HermitianOperator> rho;
        if (ancilla) {
          rho.emplace(basis_for_dimension(modes - 1, ancilla->rows()), *ancilla);
        }
        std::vector<qdet::PhysicalDetectorSlot> detector_slots;
        detector_slots.reserve(slots.size());
        for (const auto& [mode, povm] : slots) {
          detector_slots.push_back(qdet::detector_slot(mode, povm_from_pairs(povm)));
        }
        return pairs_from_povm(qdet::effective_povm(
            {qdet::InterferometerSpec(w), std::move(rho), std::move(detector_slots),
             grouping},
            total_cutoff));
      },
      py::arg("matrix"), py::arg("ancilla"), py::arg("slots"), py::arg("total_cutoff"),
      py::arg("grouping") = std::map<std::string, std::string>{},
      "Single-mode POVM equivalent to interferometer + ancilla + detectors.\n"
      "`ancilla` is a joint density matrix on modes 1..M-1 (None when M = 1);\n"
      "`slots` is a list of (mode, povm) pairs covering every mode.");

  m.def(
      "commutation_check",
      [](const Eigen::MatrixXcd& w, double eta, int total_cutoff) {
        const qdet::MultiModeBasis basis(static_cast<int>(w.rows()), total_cutoff);
        return qdet::commutation_check(qdet::InterferometerSpec(w), eta, basis);
      },
      py::arg("matrix"), py::arg("eta"), py::arg("total_cutoff"),
      "Max deviation between loss-then-interferometer and the reverse order.");
}
