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

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ctcsim/linalg.hpp"
#include "ctcsim/types.hpp"

namespace ctcsim {

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

/// Hermitian, unit-trace, positive-semidefinite matrix on a 2^k-dimensional
/// qubit register. Construction validates all three invariants; asymmetry
/// below 1e-10 is repaired by symmetrization, anything larger is rejected.
/// Immutable after construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);

  static DensityMatrix pure(const Vector& state);
  static DensityMatrix maximally_mixed(Index dim);

  const Matrix& matrix() const { return mat_; }
  Index dim() const { return mat_.rows(); }
  int qubits() const { return qubit_count(mat_.rows()); }

 private:
  Matrix mat_;
};

/// dim x dim matrix with max|U^dag U - I| <= 1e-12, validated on construction.
class Unitary {
 public:
  explicit Unitary(Matrix entries);

  const Matrix& matrix() const { return mat_; }
  Index dim() const { return mat_.rows(); }
  int qubits() const { return qubit_count(mat_.rows()); }

 private:
  Matrix mat_;
};

/// rho = (I + n.sigma)/2; rejects |n| > 1 + 1e-12.
DensityMatrix bloch_to_density(const BlochVector& n);

/// n_i = Tr(rho sigma_i); single-qubit states only.
BlochVector density_to_bloch(const DensityMatrix& rho);

/// Kronecker product, first argument on the high-order qubits.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on the kept qubit labels (ascending order preserved).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const int> keep);

/// D(a, b) = Tr|a - b| / 2 via the eigenvalues of the difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// -Tr[rho ln rho], natural log, 0 ln 0 := 0; eigenvalues in [-1e-10, 0)
/// are clamped to 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// (p_plus, p_minus) for a projective sigma_z measurement of one qubit.
std::pair<double, double> measure_z_probability(const DensityMatrix& rho,
                                                int qubit);

}  // namespace ctcsim
