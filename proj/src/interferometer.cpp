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

#include "qdet/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdet {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

double wrap_angle(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  return phi;
}

// T(theta, phi) on the adjacent pair (mode, mode + 1): a phase phi on the
// first mode followed by a beamsplitter, block [[e^{i phi} c, s],
// [-e^{i phi} s, c]]. The mesh algorithm nulls matrix entries with these.
struct TForm {
  double theta;
  double phi;
  int mode;
};

Eigen::MatrixXcd t_form_matrix(const TForm& t, int mode_count) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(mode_count, mode_count);
  const int p = t.mode;
  const int q = t.mode + 1;
  const double c = std::cos(t.theta);
  const double s = std::sin(t.theta);
  const Complex phase = std::polar(1.0, t.phi);
  m(p, p) = phase * c;
  m(p, q) = s;
  m(q, p) = -phase * s;
  m(q, q) = c;
  return m;
}

// Parameters nulling (U T†)(row, p) via columns (p, p + 1).
TForm solve_right(const Eigen::MatrixXcd& u, int row, int p) {
  const Complex a = u(row, p);
  const Complex b = u(row, p + 1);
  if (std::abs(a) == 0.0) return {0.0, 0.0, p};
  if (std::abs(b) == 0.0) return {kHalfPi, 0.0, p};
  return {std::atan2(std::abs(a), std::abs(b)), wrap_angle(std::arg(a / (-b))), p};
}

// Parameters nulling (T U)(p + 1, col) via rows (p, p + 1).
TForm solve_left(const Eigen::MatrixXcd& u, int p, int col) {
  const Complex a = u(p + 1, col);
  const Complex b = u(p, col);
  if (std::abs(a) == 0.0) return {0.0, 0.0, p};
  if (std::abs(b) == 0.0) return {kHalfPi, 0.0, p};
  return {std::atan2(std::abs(a), std::abs(b)), wrap_angle(std::arg(a / b)), p};
}

void append_elements(const TForm& t, std::vector<TwoModeElement>& out) {
  if (t.theta != 0.0) {
    out.push_back(TwoModeElement::beamsplitter(t.theta, t.mode, t.mode + 1));
  }
  if (t.phi != 0.0) {
    out.push_back(TwoModeElement::phase(t.phi, t.mode));
  }
}

// exp(theta K_t) on the pair block with t photons, indexed by the photon
// count of the first mode; K_t is the matrix of a†b - ab† there. Built from
// the eigensystem of the Hermitian i K_t, so the result is orthogonal to
// machine precision.
Eigen::MatrixXd pair_block(double theta, int t) {
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(t + 1, t + 1);
  for (int j = 0; j < t; ++j) {
    const double c = std::sqrt(double(j + 1) * double(t - j));
    k(j + 1, j) = c;
    k(j, j + 1) = -c;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Complex(0.0, 1.0) * k);
  Eigen::VectorXcd phases(t + 1);
  for (int j = 0; j <= t; ++j) {
    phases[j] = std::polar(1.0, -theta * es.eigenvalues()[j]);
  }
  Eigen::MatrixXcd b =
      es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return b.real();
}

Eigen::MatrixXcd lift_beamsplitter(double theta, int p, int q,
                                   const MultiModeBasis& basis) {
  const int dim = basis.dimension();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Eigen::MatrixXd> blocks(basis.total_cutoff() + 1);
  for (int t = 0; t <= basis.total_cutoff(); ++t) blocks[t] = pair_block(theta, t);
  std::vector<int> occ;
  std::vector<int> group;
  for (int i = 0; i < dim; ++i) {
    const std::vector<int>& o = basis.occupation(i);
    const int t = o[p] + o[q];
    if (o[p] != t) continue;  // visit each pair-photon group exactly once
    occ.assign(o.begin(), o.end());
    group.resize(t + 1);
    for (int k = 0; k <= t; ++k) {
      occ[p] = k;
      occ[q] = t - k;
      group[k] = basis.index_of(occ);
    }
    const Eigen::MatrixXd& b = blocks[t];
    for (int r = 0; r <= t; ++r) {
      for (int c = 0; c <= t; ++c) u(group[r], group[c]) = b(r, c);
    }
  }
  return u;
}

Eigen::VectorXcd phase_diagonal(double phi, int mode, const MultiModeBasis& basis) {
  Eigen::VectorXcd d(basis.dimension());
  for (int i = 0; i < basis.dimension(); ++i) {
    d[i] = std::polar(1.0, phi * basis.occupation(i)[mode]);
  }
  return d;
}

}  // namespace

InterferometerSpec::InterferometerSpec(Eigen::MatrixXcd matrix, double unitarity_tol)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("InterferometerSpec: matrix must be square and nonempty");
  }
  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  const double deviation =
      (gram - Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (!(deviation <= unitarity_tol)) {
    throw std::invalid_argument("InterferometerSpec: matrix is not unitary (W†W deviates from I by " +
                                std::to_string(deviation) + ")");
  }
}

Decomposition decompose(const InterferometerSpec& spec) {
  const int m = spec.mode_count();
  Eigen::MatrixXcd u = spec.matrix();

  // Null the lower triangle diagonal by diagonal, alternating right
  // multiplications by T† and left multiplications by T.
  std::vector<TForm> right_ops;
  std::vector<TForm> left_ops;
  for (int i = 1; i < m; ++i) {
    if (i % 2 == 1) {
      for (int j = 0; j < i; ++j) {
        const TForm t = solve_right(u, m - 1 - j, i - 1 - j);
        u = u * t_form_matrix(t, m).adjoint();
        right_ops.push_back(t);
      }
    } else {
      for (int j = 1; j <= i; ++j) {
        const TForm t = solve_left(u, m + j - i - 2, j - 1);
        u = t_form_matrix(t, m) * u;
        left_ops.push_back(t);
      }
    }
  }

  // Now T_lk ... T_l1 W T_r1† ... T_rm† = D, so W = T_l1† ... T_lk† D T_rm ... T_r1.
  // Push D leftward through each T†: T(θ,φ)† D = D' T(θ,φ') with d'_m = -e^{-iφ} d_n,
  // d'_n = d_n, e^{iφ'} = -d_m / d_n; a θ = 0 form is diagonal and folds into D.
  Eigen::VectorXcd d = u.diagonal();
  std::vector<TForm> pushed;
  for (auto it = left_ops.rbegin(); it != left_ops.rend(); ++it) {
    const int a = it->mode;
    const int b = it->mode + 1;
    if (it->theta == 0.0) {
      d[a] *= std::polar(1.0, -it->phi);
      continue;
    }
    const double phi_new = wrap_angle(std::arg(-d[a] / d[b]));
    d[a] = -std::polar(1.0, -it->phi) * d[b];
    pushed.push_back({it->theta, phi_new, a});
  }

  Decomposition result;
  for (auto it = pushed.rbegin(); it != pushed.rend(); ++it) {
    append_elements(*it, result.elements);
  }
  for (auto it = right_ops.rbegin(); it != right_ops.rend(); ++it) {
    append_elements(*it, result.elements);
  }
  result.output_phases.resize(m);
  for (int i = 0; i < m; ++i) result.output_phases[i] = wrap_angle(std::arg(d[i]));
  return result;
}

Eigen::MatrixXcd element_matrix(const TwoModeElement& element, int mode_count) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(mode_count, mode_count);
  if (element.kind == TwoModeElement::Kind::kBeamsplitter) {
    const double c = std::cos(element.parameter);
    const double s = std::sin(element.parameter);
    m(element.mode_a, element.mode_a) = c;
    m(element.mode_a, element.mode_b) = s;
    m(element.mode_b, element.mode_a) = -s;
    m(element.mode_b, element.mode_b) = c;
  } else {
    m(element.mode_a, element.mode_a) = std::polar(1.0, element.parameter);
  }
  return m;
}

Eigen::MatrixXcd recompose(const Decomposition& decomposition, int mode_count) {
  Eigen::VectorXcd phases(mode_count);
  for (int i = 0; i < mode_count; ++i) {
    phases[i] = std::polar(1.0, decomposition.output_phases[i]);
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd(phases.asDiagonal());
  for (const TwoModeElement& e : decomposition.elements) {
    u = u * element_matrix(e, mode_count);
  }
  return u;
}

Eigen::MatrixXcd lift(const InterferometerSpec& spec, const MultiModeBasis& basis) {
  if (spec.mode_count() != basis.mode_count()) {
    throw std::invalid_argument("lift: interferometer and basis mode counts differ");
  }
  const Decomposition d = decompose(spec);
  Eigen::VectorXcd layer(basis.dimension());
  for (int i = 0; i < basis.dimension(); ++i) {
    double phi = 0.0;
    const std::vector<int>& occ = basis.occupation(i);
    for (int p = 0; p < basis.mode_count(); ++p) phi += d.output_phases[p] * occ[p];
    layer[i] = std::polar(1.0, phi);
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd(layer.asDiagonal());
  for (const TwoModeElement& e : d.elements) {
    if (e.kind == TwoModeElement::Kind::kBeamsplitter) {
      u = u * lift_beamsplitter(e.parameter, e.mode_a, e.mode_b, basis);
    } else {
      u = u * Eigen::MatrixXcd(phase_diagonal(e.parameter, e.mode_a, basis).asDiagonal());
    }
  }
  return u;
}

Eigen::MatrixXcd single_photon_block(const Eigen::MatrixXcd& lifted,
                                     const MultiModeBasis& basis) {
  if (basis.total_cutoff() < 1) {
    throw std::invalid_argument("single_photon_block: basis has no one-photon sector");
  }
  const int begin = basis.block_begin(1);
  return lifted.block(begin, begin, basis.mode_count(), basis.mode_count());
}

}  // namespace qdet
