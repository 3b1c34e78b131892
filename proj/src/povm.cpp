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

#include "qdet/povm.hpp"

#include <set>
#include <stdexcept>

namespace qdet {

Povm::Povm(std::vector<Outcome> outcomes, double positivity_tol,
           double completeness_tol)
    : outcomes_(std::move(outcomes)),
      positivity_tol_(positivity_tol),
      completeness_tol_(completeness_tol) {
  if (outcomes_.empty()) {
    throw std::invalid_argument("Povm: needs at least one outcome");
  }
  std::set<std::string> labels;
  const MultiModeBasis& common = outcomes_.front().element.basis();
  for (const Outcome& outcome : outcomes_) {
    if (!(outcome.element.basis() == common)) {
      throw std::invalid_argument("Povm: outcomes live on different bases");
    }
    if (outcome.label.empty()) {
      throw std::invalid_argument("Povm: outcome labels must be non-empty");
    }
    if (!labels.insert(outcome.label).second) {
      throw std::invalid_argument("Povm: duplicate outcome label '" +
                                  outcome.label + "'");
    }
  }
}

DiagonalPovm::DiagonalPovm(SingleModeCutoff cutoff,
                           std::vector<Outcome> outcomes, double positivity_tol,
                           double completeness_tol)
    : cutoff_(cutoff),
      outcomes_(std::move(outcomes)),
      positivity_tol_(positivity_tol),
      completeness_tol_(completeness_tol) {
  if (cutoff_.n_max < 0) {
    throw std::invalid_argument("DiagonalPovm: negative cutoff");
  }
  if (outcomes_.empty()) {
    throw std::invalid_argument("DiagonalPovm: needs at least one outcome");
  }
  std::set<std::string> labels;
  for (const Outcome& outcome : outcomes_) {
    if (outcome.diagonal.size() != cutoff_.dimension()) {
      throw std::invalid_argument("DiagonalPovm: diagonal length mismatch");
    }
    if (outcome.label.empty()) {
      throw std::invalid_argument("DiagonalPovm: outcome labels must be non-empty");
    }
    if (!labels.insert(outcome.label).second) {
      throw std::invalid_argument("DiagonalPovm: duplicate outcome label '" +
                                  outcome.label + "'");
    }
  }
}

Povm DiagonalPovm::to_dense() const {
  MultiModeBasis basis(cutoff_);
  std::vector<Povm::Outcome> dense;
  dense.reserve(outcomes_.size());
  for (const Outcome& outcome : outcomes_) {
    Eigen::MatrixXcd m = outcome.diagonal.cast<Complex>().asDiagonal();
    dense.push_back({outcome.label, HermitianOperator(basis, std::move(m))});
  }
  return Povm(std::move(dense), positivity_tol_, completeness_tol_);
}

ValidationReport validate(const Povm& povm) {
  ValidationReport report;
  const int dim = povm.basis().dimension();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  report.positivity_ok = true;
  for (const Povm::Outcome& outcome : povm.outcomes()) {
    const double lambda_min = min_eigenvalue(outcome.element);
    report.elements.push_back({outcome.label, lambda_min});
    if (lambda_min < -povm.positivity_tol()) report.positivity_ok = false;
    sum += outcome.element.matrix();
  }
  sum -= Eigen::MatrixXcd::Identity(dim, dim);
  report.completeness_residual = sum.cwiseAbs().maxCoeff();
  report.completeness_ok = report.completeness_residual <= povm.completeness_tol();
  return report;
}

ValidationReport validate(const DiagonalPovm& povm) {
  ValidationReport report;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(povm.cutoff().dimension());
  report.positivity_ok = true;
  for (const DiagonalPovm::Outcome& outcome : povm.outcomes()) {
    const double lambda_min = outcome.diagonal.minCoeff();
    report.elements.push_back({outcome.label, lambda_min});
    if (lambda_min < -povm.positivity_tol()) report.positivity_ok = false;
    sum += outcome.diagonal;
  }
  report.completeness_residual =
      (sum - Eigen::VectorXd::Ones(sum.size())).cwiseAbs().maxCoeff();
  report.completeness_ok = report.completeness_residual <= povm.completeness_tol();
  return report;
}

DiagonalPovm click_detector(double eta, int n_max) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("click_detector: eta outside [0, 1]");
  }
  SingleModeCutoff cutoff{n_max};
  Eigen::VectorXd off(cutoff.dimension());
  for (int n = 0; n <= n_max; ++n) off[n] = ipow(1.0 - eta, n);
  Eigen::VectorXd on = Eigen::VectorXd::Ones(cutoff.dimension()) - off;
  return DiagonalPovm(cutoff, {{"off", off}, {"on", on}});
}

DiagonalPovm pnr_detector(double eta, int n_max) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("pnr_detector: eta outside (0, 1]");
  }
  SingleModeCutoff cutoff{n_max};
  std::vector<DiagonalPovm::Outcome> outcomes;
  outcomes.reserve(cutoff.dimension());
  for (int k = 0; k <= n_max; ++k) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(cutoff.dimension());
    for (int n = k; n <= n_max; ++n) {
      diag[n] = binomial(n, k) * ipow(eta, k) * ipow(1.0 - eta, n - k);
    }
    outcomes.push_back({std::to_string(k), std::move(diag)});
  }
  return DiagonalPovm(cutoff, std::move(outcomes));
}

Povm discard_detector(int n_max) {
  MultiModeBasis basis(SingleModeCutoff{n_max});
  Eigen::MatrixXcd identity =
      Eigen::MatrixXcd::Identity(basis.dimension(), basis.dimension());
  std::vector<Povm::Outcome> outcomes;
  outcomes.push_back({"discard", HermitianOperator(basis, std::move(identity))});
  return Povm(std::move(outcomes));
}

Povm coarse_grain(const Povm& povm,
                  const std::map<std::string, std::string>& grouping) {
  const int dim = povm.basis().dimension();
  std::vector<std::string> order;
  std::map<std::string, Eigen::MatrixXcd> sums;
  for (const Povm::Outcome& outcome : povm.outcomes()) {
    auto it = grouping.find(outcome.label);
    if (it == grouping.end()) {
      throw std::invalid_argument("coarse_grain: no group for label '" +
                                  outcome.label + "'");
    }
    auto [pos, inserted] =
        sums.try_emplace(it->second, Eigen::MatrixXcd::Zero(dim, dim));
    if (inserted) order.push_back(it->second);
    pos->second += outcome.element.matrix();
  }
  std::vector<Povm::Outcome> merged;
  merged.reserve(order.size());
  for (const std::string& label : order) {
    merged.push_back(
        {label, HermitianOperator(povm.basis(), std::move(sums.at(label)))});
  }
  return Povm(std::move(merged), povm.positivity_tol(), povm.completeness_tol());
}

Povm truncate_povm(const Povm& povm, int n_max) {
  if (povm.basis().mode_count() != 1) {
    throw std::invalid_argument("truncate_povm: single-mode POVM required");
  }
  if (n_max < 0 || n_max > povm.basis().total_cutoff()) {
    throw std::invalid_argument("truncate_povm: cutoff out of range");
  }
  const MultiModeBasis basis(1, n_max);
  std::vector<Povm::Outcome> outcomes;
  outcomes.reserve(povm.outcomes().size());
  for (const Povm::Outcome& outcome : povm.outcomes()) {
    outcomes.push_back(
        {outcome.label,
         HermitianOperator(basis,
                           outcome.element.matrix().topLeftCorner(n_max + 1, n_max + 1),
                           outcome.element.hermiticity_tol())});
  }
  return Povm(std::move(outcomes), povm.positivity_tol(), povm.completeness_tol());
}

DiagonalPovm truncate_povm(const DiagonalPovm& povm, int n_max) {
  if (n_max < 0 || n_max > povm.cutoff().n_max) {
    throw std::invalid_argument("truncate_povm: cutoff out of range");
  }
  std::vector<DiagonalPovm::Outcome> outcomes;
  outcomes.reserve(povm.outcomes().size());
  for (const DiagonalPovm::Outcome& outcome : povm.outcomes()) {
    outcomes.push_back({outcome.label, outcome.diagonal.head(n_max + 1)});
  }
  return DiagonalPovm(SingleModeCutoff{n_max}, std::move(outcomes),
                      povm.positivity_tol(), povm.completeness_tol());
}

}  // namespace qdet
