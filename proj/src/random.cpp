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

#include "qdet/random.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qdet {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::stream(std::uint64_t a, std::uint64_t b) const {
  return Rng(splitmix64(seed_ ^ splitmix64(a ^ splitmix64(b))));
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int Rng::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex Rng::normal_complex() { return {normal(), normal()}; }

Eigen::MatrixXcd haar_unitary(int dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = rng.normal_complex();
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const Complex phase = std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

Eigen::MatrixXcd random_density_matrix(int dim, int rank, Rng& rng) {
  if (rank < 1 || rank > dim) {
    throw std::invalid_argument("random_density_matrix: rank outside [1, dim]");
  }
  Eigen::MatrixXcd g(dim, rank);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < rank; ++j) g(i, j) = rng.normal_complex();
  }
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

Povm random_povm(const MultiModeBasis& basis, int outcome_count, Rng& rng) {
  if (outcome_count < 1) {
    throw std::invalid_argument("random_povm: needs at least one outcome");
  }
  const int dim = basis.dimension();
  std::vector<Eigen::MatrixXcd> wishart;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < outcome_count; ++i) {
    Eigen::MatrixXcd g(dim, dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) g(r, c) = rng.normal_complex();
    }
    wishart.push_back(g * g.adjoint());
    sum += wishart.back();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sum);
  const Eigen::MatrixXcd whiten = es.operatorInverseSqrt();
  std::vector<Povm::Outcome> outcomes;
  for (int i = 0; i < outcome_count; ++i) {
    Eigen::MatrixXcd element = whiten * wishart[i] * whiten;
    element = 0.5 * (element + element.adjoint());
    outcomes.push_back({std::to_string(i), HermitianOperator(basis, std::move(element))});
  }
  return Povm(std::move(outcomes));
}

DiagonalPovm random_partition_povm(int n_max, int cell_count, Rng& rng) {
  if (cell_count < 2) {
    throw std::invalid_argument("random_partition_povm: needs at least two cells");
  }
  if (n_max < 1) {
    throw std::invalid_argument("random_partition_povm: needs n_max >= 1");
  }
  std::vector<int> assignment(n_max + 1);
  int used = 0;
  while (used < 2) {
    std::vector<bool> seen(cell_count, false);
    for (int n = 0; n <= n_max; ++n) {
      assignment[n] = rng.uniform_int(0, cell_count - 1);
      seen[assignment[n]] = true;
    }
    used = 0;
    for (bool s : seen) used += s ? 1 : 0;
  }
  std::vector<DiagonalPovm::Outcome> outcomes;
  for (int cell = 0; cell < cell_count; ++cell) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n_max + 1);
    bool nonempty = false;
    for (int n = 0; n <= n_max; ++n) {
      if (assignment[n] == cell) {
        diag[n] = 1.0;
        nonempty = true;
      }
    }
    if (nonempty) outcomes.push_back({"c" + std::to_string(cell), std::move(diag)});
  }
  return DiagonalPovm(SingleModeCutoff{n_max}, std::move(outcomes));
}

}  // namespace qdet
