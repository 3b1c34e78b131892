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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qdet/random.hpp"

namespace {

using qdet::DiagonalPovm;
using qdet::Povm;

Eigen::MatrixXcd random_hermitian(int dim, qdet::Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) g(r, c) = rng.normal_complex();
  }
  return 0.5 * (g + g.adjoint());
}

TEST_CASE("loss maps compose like transmissivities multiply") {
  const DiagonalPovm once =
      qdet::apply_loss_to_diagonal(qdet::click_detector(0.8, 6), 0.5);
  const DiagonalPovm direct = qdet::click_detector(0.4, 6);
  for (int i = 0; i < 2; ++i) {
    CHECK((once.outcomes()[i].diagonal - direct.outcomes()[i].diagonal)
              .cwiseAbs()
              .maxCoeff() < 1e-14);
  }

  qdet::Rng rng(21);
  const Povm random = qdet::random_povm(qdet::MultiModeBasis(1, 5), 3, rng);
  const Povm chained =
      qdet::apply_loss_to_povm(qdet::apply_loss_to_povm(random, 0.7), 0.6);
  const Povm direct_dense = qdet::apply_loss_to_povm(random, 0.42);
  for (int i = 0; i < 3; ++i) {
    CHECK((chained.outcomes()[i].element.matrix() -
           direct_dense.outcomes()[i].element.matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("unit transmissivity is the identity map, bit for bit") {
  qdet::Rng rng(22);
  const Eigen::MatrixXcd p = random_hermitian(6, rng);
  const Eigen::MatrixXcd out = qdet::apply_loss_matrix(p, 1.0);
  CHECK((out - p).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("diagonal fast path agrees with the dense map") {
  const DiagonalPovm pnr = qdet::pnr_detector(0.55, 6);
  const DiagonalPovm fast = qdet::apply_loss_to_diagonal(pnr, 0.37);
  const Povm dense = qdet::apply_loss_to_povm(pnr.to_dense(), 0.37);
  for (int i = 0; i < fast.outcome_count(); ++i) {
    const Eigen::VectorXd dense_diag =
        dense.outcomes()[i].element.matrix().diagonal().real();
    CHECK((fast.outcomes()[i].diagonal - dense_diag).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(dense.outcomes()[i].element.matrix().cwiseAbs().sum() ==
          doctest::Approx(dense_diag.cwiseAbs().sum()));  // stays diagonal
  }
}

TEST_CASE("completeness is preserved identically") {
  qdet::Rng rng(23);
  const Povm random = qdet::random_povm(qdet::MultiModeBasis(1, 6), 4, rng);
  for (double eta : {0.9, 0.4, 1e-3}) {
    const Povm lossy = qdet::apply_loss_to_povm(random, eta);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(7, 7);
    for (const auto& outcome : lossy.outcomes()) sum += outcome.element.matrix();
    CHECK((sum - Eigen::MatrixXcd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Kraus operators: completeness and the closed-form diagonal") {
  for (double eta : {1.0, 0.73, 0.2}) {
    const auto kraus = qdet::kraus_oracle(eta, qdet::SingleModeCutoff{6});
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(7, 7);
    for (const auto& a : kraus) sum += a.adjoint() * a;
    CHECK((sum - Eigen::MatrixXcd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
    // the no-loss operator damps |n> by eta^(n/2)
    for (int n = 0; n <= 6; ++n) {
      CHECK(std::abs(kraus[0](n, n) - std::pow(eta, 0.5 * n)) < 1e-12);
    }
  }
  CHECK(qdet::kraus_oracle(1.0, qdet::SingleModeCutoff{4}).size() == 1);
}

TEST_CASE("closed-form maps match the Kraus representation") {
  qdet::Rng rng(24);
  const int dim = 7;
  for (int trial = 0; trial < 10; ++trial) {
    const double eta = rng.uniform(0.05, 1.0);
    const auto kraus = qdet::kraus_oracle(eta, qdet::SingleModeCutoff{dim - 1});
    const Eigen::MatrixXcd p = random_hermitian(dim, rng);

    Eigen::MatrixXcd heisenberg = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& a : kraus) heisenberg += a.adjoint() * p * a;
    CHECK((heisenberg - qdet::apply_loss_matrix(p, eta)).cwiseAbs().maxCoeff() <
          1e-11);

    const Eigen::MatrixXcd rho = qdet::random_density_matrix(dim, dim, rng);
    Eigen::MatrixXcd schroedinger = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& a : kraus) schroedinger += a * rho * a.adjoint();
    const qdet::HermitianOperator lossy = qdet::apply_loss_to_state(
        qdet::HermitianOperator(qdet::MultiModeBasis(1, dim - 1), rho), eta);
    CHECK((schroedinger - lossy.matrix()).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("state and element maps are adjoint under the trace pairing") {
  qdet::Rng rng(25);
  const qdet::MultiModeBasis basis(1, 6);
  for (int trial = 0; trial < 25; ++trial) {
    const double eta = rng.uniform(0.01, 1.0);
    const qdet::HermitianOperator rho(
        basis, qdet::random_density_matrix(7, 1 + trial % 7, rng));
    const Eigen::MatrixXcd p = random_hermitian(7, rng);
    const std::complex<double> lhs =
        (rho.matrix() * qdet::apply_loss_matrix(p, eta)).trace();
    const std::complex<double> rhs =
        (qdet::apply_loss_to_state(rho, eta).matrix() * p).trace();
    CHECK(std::abs(lhs - rhs) < 1e-11);
  }
}

TEST_CASE("state loss preserves trace and positivity, fixes the vacuum") {
  qdet::Rng rng(26);
  const qdet::MultiModeBasis basis(1, 5);
  Eigen::MatrixXcd vac = Eigen::MatrixXcd::Zero(6, 6);
  vac(0, 0) = 1.0;
  CHECK((qdet::apply_loss_to_state(qdet::HermitianOperator(basis, vac), 0.3).matrix() -
         vac)
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  for (double eta : {0.0, 0.35, 1.0}) {
    const qdet::HermitianOperator rho(basis,
                                      qdet::random_density_matrix(6, 4, rng));
    const qdet::HermitianOperator out = qdet::apply_loss_to_state(rho, eta);
    CHECK(std::abs(out.trace() - std::complex<double>(1.0)) < 1e-12);
    CHECK(qdet::min_eigenvalue(out) > -1e-12);
  }

  // eta = 0 sends everything to the vacuum
  const qdet::HermitianOperator rho(basis, qdet::random_density_matrix(6, 6, rng));
  const Eigen::MatrixXcd dark = qdet::apply_loss_to_state(rho, 0.0).matrix();
  CHECK(std::abs(dark(0, 0) - std::complex<double>(1.0)) < 1e-12);
  CHECK(dark.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("apply_loss_to_state can reject non-density inputs") {
  const qdet::MultiModeBasis basis(1, 2);
  const qdet::HermitianOperator not_normalized(
      basis, 2.0 * Eigen::MatrixXcd::Identity(3, 3));
  CHECK_THROWS((void)qdet::apply_loss_to_state(not_normalized, 0.5));
  CHECK_NOTHROW((void)qdet::apply_loss_to_state(not_normalized, 0.5, false));
}

TEST_CASE("invert_loss is the exact preimage on the truncated space") {
  qdet::Rng rng(27);
  const Povm random = qdet::random_povm(qdet::MultiModeBasis(1, 5), 3, rng);
  const Povm inverted = qdet::invert_loss(random, 0.6);
  const Povm round_trip = qdet::apply_loss_to_povm(inverted, 0.6);
  for (int i = 0; i < 3; ++i) {
    CHECK((round_trip.outcomes()[i].element.matrix() -
           random.outcomes()[i].element.matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }

  const DiagonalPovm click = qdet::click_detector(0.35, 5);
  const DiagonalPovm up = qdet::invert_loss(click, 0.35);
  // fully undoing the detector's own loss leaves the ideal click detector
  for (int i = 0; i < 2; ++i) {
    CHECK((up.outcomes()[i].diagonal -
           qdet::click_detector(1.0, 5).outcomes()[i].diagonal)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("inverting past the detector's transmissivity leaves negative weight") {
  const DiagonalPovm inverted = qdet::invert_loss(qdet::click_detector(0.6, 4), 0.5);
  CHECK(inverted.outcomes()[0].diagonal[1] == doctest::Approx(1.0 - 0.6 / 0.5));
  CHECK(inverted.outcomes()[0].diagonal[1] < 0.0);
}

TEST_CASE("eta range checks") {
  const Povm click = qdet::click_detector(0.5, 3).to_dense();
  CHECK_THROWS((void)qdet::apply_loss_to_povm(click, 0.0));
  CHECK_THROWS((void)qdet::apply_loss_to_povm(click, -0.2));
  CHECK_THROWS((void)qdet::invert_loss(click, 1.2));
  CHECK_THROWS((void)qdet::apply_loss_to_state(
      qdet::HermitianOperator(qdet::MultiModeBasis(1, 3),
                              Eigen::MatrixXcd::Identity(4, 4) / 4.0),
      1.5));
  CHECK_THROWS((void)qdet::kraus_oracle(0.0, qdet::SingleModeCutoff{3}));
}

}  // namespace
