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

#include <cstdint>

#include "ctcsim/error.hpp"
#include "ctcsim/types.hpp"

namespace ctcsim {

/// Kronecker product with the first factor on the high-order (leftmost)
/// qubits, matching the |ab> basis convention.
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a,
            const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Complex(a(i, j)) * b;
  return out;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

/// Column-stacking vectorization; vec(A X B) = (B^T (x) A) vec(X).
inline Vector vectorize(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvectorize(const Vector& v, Index dim) {
  if (v.size() != dim * dim)
    throw DimensionError("unvectorize: size is not dim*dim");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

inline double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint().eval());
}

inline Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

inline bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

/// log2 of a power-of-two dimension (qubit count of a 2^k-dim space).
inline int qubit_count(Index dim) {
  if (!is_power_of_two(dim)) throw DimensionError("dimension is not 2^k");
  int k = 0;
  while ((Index{1} << k) < dim) ++k;
  return k;
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace ctcsim
