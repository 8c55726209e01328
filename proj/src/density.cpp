// Copyright 2026 The ctcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctcsim/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "ctcsim/error.hpp"

namespace ctcsim {

namespace {

std::string fmt_err(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

void check_same_dim(const DensityMatrix& a, const DensityMatrix& b,
                    const char* op) {
  if (a.dim() != b.dim())
    throw DimensionError(std::string(op) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
}

// Bit of qubit `q` in basis index `x` of an n-qubit register (qubit 0 = MSB).
inline int bit_of(Index x, int q, int n) {
  return static_cast<int>((x >> (n - 1 - q)) & 1);
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

DensityMatrix::DensityMatrix(Matrix entries) : mat_(std::move(entries)) {
  if (mat_.rows() != mat_.cols() || !is_power_of_two(mat_.rows()))
    throw DimensionError("density matrix must be square with dim 2^k");
  if (mat_.rows() > (Index{1} << 12))
    throw DimensionError("register exceeds the 12-qubit dense cap");
  if (!mat_.allFinite())
    throw DomainError("density matrix has non-finite entries");
  const double asym = hermiticity_defect(mat_);
  if (asym > kSymmetrizeTol)
    throw DomainError("density matrix asymmetry " + fmt_err(asym) +
                      " exceeds 1e-10; refusing to symmetrize");
  if (asym > 0.0) mat_ = hermitize(mat_);
  const double trace_defect = std::abs(mat_.trace() - Complex(1.0));
  if (trace_defect > kUnitTraceTol)
    throw DomainError("density matrix trace deviates from 1 by " +
                      fmt_err(trace_defect));
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kPsdEigTol)
    throw DomainError("density matrix has eigenvalue " + fmt_err(min_eig) +
                      " below -1e-10");
}

DensityMatrix DensityMatrix::pure(const Vector& state) {
  const double nrm = state.norm();
  if (std::abs(nrm - 1.0) > 1e-9)
    throw DomainError("pure state vector is not normalized");
  return DensityMatrix((state / nrm) * (state / nrm).adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Unitary::Unitary(Matrix entries) : mat_(std::move(entries)) {
  if (mat_.rows() != mat_.cols())
    throw DimensionError("unitary must be square");
  if (!mat_.allFinite()) throw DomainError("unitary has non-finite entries");
  const double defect = max_abs(
      (mat_.adjoint() * mat_ - Matrix::Identity(mat_.rows(), mat_.cols()))
          .eval());
  if (defect > kUnitaryTol)
    throw DomainError("matrix is not unitary: max|U^dag U - I| = " +
                      fmt_err(defect));
}

DensityMatrix bloch_to_density(const BlochVector& n) {
  if (n.norm() > 1.0 + 1e-12)
    throw DomainError("Bloch vector norm " + fmt_err(n.norm()) +
                      " exceeds 1: non-physical state");
  Matrix m(2, 2);
  m << Complex(1.0 + n.z, 0.0), Complex(n.x, -n.y), Complex(n.x, n.y),
      Complex(1.0 - n.z, 0.0);
  return DensityMatrix(0.5 * m);
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2)
    throw DimensionError("density_to_bloch requires a single-qubit state");
  const Matrix& m = rho.matrix();
  const Complex nx = (m * pauli_x()).trace();
  const Complex ny = (m * pauli_y()).trace();
  const Complex nz = (m * pauli_z()).trace();
  const double im = std::max({std::abs(nx.imag()), std::abs(ny.imag()),
                              std::abs(nz.imag())});
  if (im > 1e-12)
    throw InternalError("Bloch components have imaginary part " +
                        fmt_err(im));
  return BlochVector{nx.real(), ny.real(), nz.real()};
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const int> keep) {
  const int n = rho.qubits();
  if (keep.empty()) throw DomainError("partial_trace: empty keep selector");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  for (size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] < 0 || kept[i] >= n)
      throw DomainError("partial_trace: unknown qubit label " +
                        std::to_string(kept[i]));
    if (i > 0 && kept[i] == kept[i - 1])
      throw DomainError("partial_trace: duplicate qubit label " +
                        std::to_string(kept[i]));
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());
  const Index dk = Index{1} << nk;
  const Index dt = Index{1} << nt;

  // Full basis index from a kept sub-index and a traced sub-index, both
  // read MSB-first within their own label lists.
  auto full_index = [&](Index k_idx, Index t_idx) {
    Index x = 0;
    for (int i = 0; i < nk; ++i)
      x |= ((k_idx >> (nk - 1 - i)) & 1) << (n - 1 - kept[i]);
    for (int i = 0; i < nt; ++i)
      x |= ((t_idx >> (nt - 1 - i)) & 1) << (n - 1 - traced[i]);
    return x;
  };

  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(dk, dk);
  for (Index i = 0; i < dk; ++i)
    for (Index j = 0; j < dk; ++j) {
      Complex sum = 0.0;
      for (Index t = 0; t < dt; ++t)
        sum += m(full_index(i, t), full_index(j, t));
      out(i, j) = sum;
    }
  return DensityMatrix(std::move(out));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  check_same_dim(a, b, "trace_distance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix() - b.matrix(),
                                           Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(),
                                           Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lambda = es.eigenvalues()(i);
    if (lambda < 0.0) lambda = 0.0;  // clamp window [-1e-10, 0)
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

std::pair<double, double> measure_z_probability(const DensityMatrix& rho,
                                                int qubit) {
  const int n = rho.qubits();
  if (qubit < 0 || qubit >= n)
    throw DomainError("measure_z_probability: unknown qubit label " +
                      std::to_string(qubit));
  double p_plus = 0.0;
  for (Index x = 0; x < rho.dim(); ++x)
    if (bit_of(x, qubit, n) == 0) p_plus += rho.matrix()(x, x).real();
  p_plus = std::clamp(p_plus, 0.0, 1.0);
  return {p_plus, 1.0 - p_plus};
}

}  // namespace ctcsim
