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

#include "qdet/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace qdet {

namespace {

// Positional key for an occupation tuple, base (total_cutoff + 1).
std::uint64_t occupation_key(std::span<const int> occ, int total_cutoff) {
  std::uint64_t key = 0;
  const std::uint64_t base = static_cast<std::uint64_t>(total_cutoff) + 1;
  for (int n : occ) key = key * base + static_cast<std::uint64_t>(n);
  return key;
}

}  // namespace

struct MultiModeBasis::Table {
  int mode_count;
  int total_cutoff;
  std::vector<std::vector<int>> states;
  std::unordered_map<std::uint64_t, int> index;
  std::vector<int> block_begin;  // block_begin[t] = first index with total t
};

MultiModeBasis::MultiModeBasis(int mode_count, int total_cutoff) {
  if (mode_count < 1) throw std::invalid_argument("mode_count must be >= 1");
  if (total_cutoff < 0) throw std::invalid_argument("total_cutoff must be >= 0");

  auto table = std::make_shared<Table>();
  table->mode_count = mode_count;
  table->total_cutoff = total_cutoff;
  table->block_begin.resize(total_cutoff + 2, 0);

  // Enumerate occupation tuples block by block; within a block,
  // lexicographically descending so that (1,0,...) precedes (0,1,...).
  std::vector<int> occ(mode_count, 0);
  for (int total = 0; total <= total_cutoff; ++total) {
    table->block_begin[total] = static_cast<int>(table->states.size());
    std::fill(occ.begin(), occ.end(), 0);
    occ[0] = total;
    while (true) {
      table->index.emplace(occupation_key(occ, total_cutoff),
                           static_cast<int>(table->states.size()));
      table->states.push_back(occ);
      // Next composition of `total` in lexicographically descending order:
      // find the rightmost position before the last with a nonzero entry,
      // decrement it, and dump everything after it into the next slot.
      int pos = mode_count - 2;
      while (pos >= 0 && occ[pos] == 0) --pos;
      if (pos < 0) break;
      int tail = occ[mode_count - 1];
      occ[pos] -= 1;
      occ[mode_count - 1] = 0;
      occ[pos + 1] = tail + 1;
      // Entries between pos+1 and the end are already zero except pos+1.
      for (int j = pos + 2; j < mode_count; ++j) {
        occ[pos + 1] += occ[j];
        occ[j] = 0;
      }
    }
  }
  table->block_begin[total_cutoff + 1] = static_cast<int>(table->states.size());
  table_ = std::move(table);
}

int MultiModeBasis::mode_count() const { return table_->mode_count; }
int MultiModeBasis::total_cutoff() const { return table_->total_cutoff; }
int MultiModeBasis::dimension() const { return static_cast<int>(table_->states.size()); }

const std::vector<int>& MultiModeBasis::occupation(int index) const {
  return table_->states.at(static_cast<std::size_t>(index));
}

int MultiModeBasis::index_of(std::span<const int> occupation) const {
  if (static_cast<int>(occupation.size()) != table_->mode_count)
    throw std::out_of_range("occupation tuple has wrong mode count");
  int total = 0;
  for (int n : occupation) {
    if (n < 0) throw std::out_of_range("negative occupation");
    total += n;
  }
  if (total > table_->total_cutoff)
    throw std::out_of_range("occupation exceeds total cutoff");
  return table_->index.at(occupation_key(occupation, table_->total_cutoff));
}

int MultiModeBasis::block_begin(int total_photons) const {
  if (total_photons < 0 || total_photons > table_->total_cutoff + 1)
    throw std::out_of_range("total photon number outside basis");
  return table_->block_begin[total_photons];
}

bool MultiModeBasis::operator==(const MultiModeBasis& other) const {
  return table_->mode_count == other.table_->mode_count &&
         table_->total_cutoff == other.table_->total_cutoff;
}

HermitianOperator::HermitianOperator(MultiModeBasis basis, Eigen::MatrixXcd entries,
                                     double hermiticity_tol)
    : basis_(std::move(basis)), entries_(std::move(entries)),
      hermiticity_tol_(hermiticity_tol) {
  if (entries_.rows() != entries_.cols())
    throw std::invalid_argument("operator matrix must be square");
  if (entries_.rows() != basis_.dimension())
    throw std::invalid_argument("operator dimension does not match basis");
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= hermiticity_tol_))
    throw std::invalid_argument("matrix is not Hermitian within tolerance");
}

Eigen::MatrixXcd lowering_operator(const MultiModeBasis& basis, int mode) {
  if (mode < 0 || mode >= basis.mode_count())
    throw std::invalid_argument("mode index out of range");
  const int d = basis.dimension();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  std::vector<int> lowered;
  for (int j = 0; j < d; ++j) {
    const auto& occ = basis.occupation(j);
    const int n = occ[mode];
    if (n == 0) continue;
    lowered = occ;
    lowered[mode] = n - 1;
    a(basis.index_of(lowered), j) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

Eigen::MatrixXcd tensor_matrix(const Eigen::MatrixXcd& a, const MultiModeBasis& basis_a,
                               const Eigen::MatrixXcd& b, const MultiModeBasis& basis_b,
                               const MultiModeBasis& joint) {
  if (a.rows() != basis_a.dimension() || b.rows() != basis_b.dimension())
    throw std::invalid_argument("tensor: operator does not match its basis");
  if (joint.mode_count() != basis_a.mode_count() + basis_b.mode_count())
    throw std::invalid_argument("tensor: joint basis has wrong mode count");

  const int d = joint.dimension();
  const int ma = basis_a.mode_count();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  // Row/column index split: every joint occupation factors uniquely.
  std::vector<int> row_a(d), row_b(d);
  {
    std::vector<int> head, tail;
    for (int i = 0; i < d; ++i) {
      const auto& occ = joint.occupation(i);
      head.assign(occ.begin(), occ.begin() + ma);
      tail.assign(occ.begin() + ma, occ.end());
      int ta = 0, tb = 0;
      for (int n : head) ta += n;
      for (int n : tail) tb += n;
      row_a[i] = (ta <= basis_a.total_cutoff()) ? basis_a.index_of(head) : -1;
      row_b[i] = (tb <= basis_b.total_cutoff()) ? basis_b.index_of(tail) : -1;
    }
  }
  for (int i = 0; i < d; ++i) {
    if (row_a[i] < 0 || row_b[i] < 0) continue;
    for (int j = 0; j < d; ++j) {
      if (row_a[j] < 0 || row_b[j] < 0) continue;
      out(i, j) = a(row_a[i], row_a[j]) * b(row_b[i], row_b[j]);
    }
  }
  return out;
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b,
                         int total_cutoff) {
  MultiModeBasis joint(a.basis().mode_count() + b.basis().mode_count(), total_cutoff);
  Eigen::MatrixXcd m = tensor_matrix(a.matrix(), a.basis(), b.matrix(), b.basis(), joint);
  const double tol = std::max(a.hermiticity_tol(), b.hermiticity_tol());
  return HermitianOperator(std::move(joint), std::move(m), tol);
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return tensor(a, b, a.basis().total_cutoff() + b.basis().total_cutoff());
}

Eigen::MatrixXcd partial_trace_matrix(const Eigen::MatrixXcd& m, const MultiModeBasis& basis,
                                      std::span<const int> keep_modes,
                                      const MultiModeBasis& reduced) {
  if (keep_modes.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  for (std::size_t i = 0; i < keep_modes.size(); ++i) {
    if (keep_modes[i] < 0 || keep_modes[i] >= basis.mode_count())
      throw std::invalid_argument("partial_trace: mode index out of range");
    if (i > 0 && keep_modes[i] <= keep_modes[i - 1])
      throw std::invalid_argument("partial_trace: keep modes must be strictly increasing");
  }
  if (m.rows() != basis.dimension())
    throw std::invalid_argument("partial_trace: operator does not match basis");
  if (reduced.mode_count() != static_cast<int>(keep_modes.size()))
    throw std::invalid_argument("partial_trace: reduced basis has wrong mode count");

  std::vector<bool> keep(basis.mode_count(), false);
  for (int k : keep_modes) keep[k] = true;

  // Group full-basis indices by their traced-out part.
  const int d = basis.dimension();
  std::vector<int> kept_index(d);
  std::vector<std::uint64_t> traced_key(d);
  std::vector<int> kept_occ;
  std::vector<int> traced_occ;
  for (int i = 0; i < d; ++i) {
    const auto& occ = basis.occupation(i);
    kept_occ.clear();
    traced_occ.clear();
    for (int mode = 0; mode < basis.mode_count(); ++mode) {
      (keep[mode] ? kept_occ : traced_occ).push_back(occ[mode]);
    }
    kept_index[i] = reduced.index_of(kept_occ);
    traced_key[i] = occupation_key(traced_occ, basis.total_cutoff());
  }

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(reduced.dimension(), reduced.dimension());
  // Sum entries whose traced parts match.
  std::unordered_map<std::uint64_t, std::vector<int>> by_traced;
  for (int i = 0; i < d; ++i) by_traced[traced_key[i]].push_back(i);
  for (const auto& [key, members] : by_traced) {
    (void)key;
    for (int i : members)
      for (int j : members) out(kept_index[i], kept_index[j]) += m(i, j);
  }
  return out;
}

HermitianOperator partial_trace(const HermitianOperator& op, std::span<const int> keep_modes) {
  MultiModeBasis reduced(static_cast<int>(keep_modes.size()), op.basis().total_cutoff());
  Eigen::MatrixXcd m = partial_trace_matrix(op.matrix(), op.basis(), keep_modes, reduced);
  return HermitianOperator(std::move(reduced), std::move(m), op.hermiticity_tol());
}

double min_eigenvalue(const Eigen::MatrixXcd& m, double hermiticity_tol) {
  if (!m.allFinite()) throw std::invalid_argument("min_eigenvalue: non-finite entries");
  if (m.rows() != m.cols()) throw std::invalid_argument("min_eigenvalue: matrix not square");
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!(asym <= hermiticity_tol * scale))
    throw std::invalid_argument("min_eigenvalue: matrix not Hermitian within tolerance");
  Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("min_eigenvalue: eigensolver failed");
  return solver.eigenvalues()(0);
}

double min_eigenvalue(const HermitianOperator& op) {
  return min_eigenvalue(op.matrix(), op.hermiticity_tol());
}

double binomial(int n, int k) {
  static constexpr int kMaxN = 56;
  static const auto pascal = [] {
    std::vector<std::vector<double>> rows(kMaxN + 1);
    for (int i = 0; i <= kMaxN; ++i) {
      rows[i].resize(i + 1, 1.0);
      for (int j = 1; j < i; ++j) rows[i][j] = rows[i - 1][j - 1] + rows[i - 1][j];
    }
    return rows;
  }();
  if (n < 0 || n > kMaxN) throw std::invalid_argument("binomial: n out of supported range");
  if (k < 0 || k > n) return 0.0;
  return pascal[n][k];
}

double ipow(double base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("ipow: negative exponent");
  double result = 1.0;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace qdet
