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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctcsim/circuit.hpp"
#include "ctcsim/density.hpp"
#include "ctcsim/types.hpp"

namespace ctcsim {

/// Numerical knobs shared by every solver entry point.
struct EngineConfig {
  double fixed_point_tol = 1e-9;  // |lambda - 1| window for the fixed space
  double psd_tol = 1e-9;          // complete-positivity / explicit-point slack
  double cesaro_tol = 1e-10;      // successive-average convergence (policy)
  std::int64_t cesaro_max_iters = 1'000'000;
};

/// The induced linear map F(rho) = Tr_A[U (rho_in (x) rho) U^dag] on the CTC
/// subsystem, stored as a (dim_b^2 x dim_b^2) matrix acting on column-stacked
/// rho. Construction verifies trace preservation on a full operator basis
/// and positive semidefiniteness of the Choi matrix.
class Superoperator {
 public:
  Superoperator(Index dim_b, Matrix liouville);

  Index dim_b() const { return dim_b_; }
  const Matrix& liouville() const { return liouville_; }

  Matrix apply(const Matrix& rho) const;
  Matrix choi() const;
  double trace_preservation_defect() const;
  double choi_min_eigenvalue() const;

 private:
  Index dim_b_;
  Matrix liouville_;
};

Superoperator induced_map(const Unitary& u, const DensityMatrix& rho_in,
                          const QubitRegister& reg);

/// Affine parameterization of every density-matrix solution of the
/// self-consistency condition: base + sum_i x_i * directions[i], with each
/// direction traceless Hermitian, fixed by the map, mutually orthogonal, and
/// scaled to spectral norm 1/2 (so for a single CTC qubit the coefficients
/// are Bloch coordinates). box_bounds is a conservative per-coefficient box
/// inside which every combination stays positive semidefinite.
struct FixedPointSet {
  DensityMatrix base;
  std::vector<Matrix> directions;
  std::vector<std::pair<double, double>> box_bounds;
  Matrix liouville;  // generating map, kept for Cesaro re-evaluation

  int multiplicity() const { return static_cast<int>(directions.size()); }
};

FixedPointSet fixed_point_set(const Superoperator& f,
                              const EngineConfig& cfg = {});

enum class SelectionPolicy {
  MaxEntropy,  // unique maximizer of -Tr[rho ln rho] over the set
  Cesaro,      // limit of running averages of iterates from I/d
  Explicit,    // base + sum x_i * directions[i] for caller-supplied x
};

std::string policy_name(SelectionPolicy policy);

DensityMatrix select_fixed_point(const FixedPointSet& set,
                                 SelectionPolicy policy,
                                 std::span<const double> coords = {},
                                 const EngineConfig& cfg = {});

struct CtcResult {
  DensityMatrix rho_out;  // chronology-respecting output, Tr_B[U(...)U^dag]
  DensityMatrix rho_ctc;  // the selected self-consistent CTC state
  int multiplicity = 0;
  std::string policy_used;
  bool output_ambiguous = false;  // distinct fixed points change rho_out
};

CtcResult ctc_evolve(const CtcCircuit& c, const DensityMatrix& rho_in,
                     SelectionPolicy policy, std::span<const double> coords = {},
                     const EngineConfig& cfg = {});

enum class SBackend {
  ClosedForm,  // (I + n_z^2 sigma_z)/2 directly
  FullSolve,   // generic solver on the CNOT+SWAP circuit
};

/// The nonlinear map n_z -> n_z^2. Throws AmbiguousStateError when the
/// Bloch x-component is 1 within 1e-9.
DensityMatrix apply_s(const DensityMatrix& rho, SBackend backend,
                      const EngineConfig& cfg = {});

struct TemporalOriginReport {
  double output_deviation = 0.0;  // max entrywise |rho_out_1 - rho_out_2|
  // max entrywise |rho_2 - V2^dag rho_1 V2|; NaN unless both placements
  // have a unique fixed point.
  double basis_relation_deviation = 0.0;
  int multiplicity_first = 0;
  int multiplicity_shifted = 0;
  bool unique = false;
  bool selections_disagree = false;  // max-entropy picks differ beyond 1e-9
};

/// Places the consistency condition before (I (x) V2 V1) U0 and at the
/// shifted origin (I (x) V1) U0 (I (x) V2), and compares the two
/// chronology-respecting outputs. V1 and V2 act on the CTC subsystem only.
TemporalOriginReport temporal_origin_check(const Unitary& u0, const Unitary& v1,
                                           const Unitary& v2,
                                           const DensityMatrix& rho_in,
                                           const QubitRegister& reg,
                                           const EngineConfig& cfg = {});

}  // namespace ctcsim
