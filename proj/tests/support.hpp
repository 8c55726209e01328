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

#include <random>

#include "ctcsim/cnf.hpp"
#include "ctcsim/density.hpp"

namespace ctcsim::testing {

inline Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  const double re = d(rng);
  const double im = d(rng);
  return {re, im};
}

inline Matrix ginibre(Index dim, std::mt19937_64& rng) {
  Matrix g(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) g(i, j) = gaussian(rng);
  return g;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
/// phases folded into Q.
inline Unitary random_unitary(Index dim, std::mt19937_64& rng) {
  const Matrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0);
  }
  return Unitary(std::move(q));
}

inline DensityMatrix random_density(Index dim, std::mt19937_64& rng) {
  const Matrix g = ginibre(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(std::move(rho));
}

/// Uniform over the closed unit ball (rejection sampling).
inline BlochVector random_bloch(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (true) {
    BlochVector n{u(rng), u(rng), u(rng)};
    if (n.norm() <= 1.0) return n;
  }
}

inline CnfFormula random_cnf(int n_vars, int n_clauses, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> var(1, n_vars);
  std::uniform_int_distribution<int> width(1, 3);
  std::uniform_int_distribution<int> sign(0, 1);
  CnfFormula f;
  f.n_vars = n_vars;
  for (int c = 0; c < n_clauses; ++c) {
    std::vector<int> clause;
    const int w = width(rng);
    for (int l = 0; l < w; ++l) {
      const int v = var(rng);
      clause.push_back(sign(rng) ? v : -v);
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace ctcsim::testing
