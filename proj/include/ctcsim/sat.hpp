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
#include <limits>
#include <random>
#include <vector>

#include "ctcsim/cnf.hpp"
#include "ctcsim/density.hpp"

namespace ctcsim {

/// The (n+1)-qubit oracle permutation flipping the trailing ancilla exactly
/// on satisfying index states; n_vars <= 6 (dense cap).
Unitary build_oracle_unitary(const CnfFormula& f);

enum class OracleBackend {
  ClosedForm,  // count s, then (I + (1 - s/2^(n-1)) sigma_z)/2
  FullSim,     // uniform superposition, oracle, partial trace (n_vars <= 6)
};

DensityMatrix oracle_reduced_state(const CnfFormula& f, OracleBackend backend);

/// sigma_z component after p amplification steps:
/// gamma_p = (1 - s/2^(n-1))^(2^p), by repeated squaring; p = 0 gives
/// gamma_0 itself.
double gamma_after(int p, std::uint64_t s, int n);

/// Probability of misreporting a satisfiable instance as unsatisfiable,
/// P_fail = ((1 + gamma_p) / 2)^q. Defined only for 0 < s < 2^n.
double p_fail(int p, int q, std::uint64_t s, int n);

enum class SatDecision { Sat, Unsat };
enum class SatMode { MonteCarlo, Exact };

struct SatRunResult {
  SatDecision decision = SatDecision::Unsat;
  std::uint64_t s_true = 0;  // brute-force satisfying-assignment count

  // gamma_0..gamma_p by repeated squaring (gamma_0 keeps its sign), plus the
  // same trace as ln|gamma_k| so near-1 tails survive in log space.
  std::vector<double> gamma_trace;
  std::vector<double> log_abs_gamma_trace;

  double p_minus_prob = std::numeric_limits<double>::quiet_NaN();
  double p_sat_exact = std::numeric_limits<double>::quiet_NaN();
  double p_fail_exact = std::numeric_limits<double>::quiet_NaN();

  std::vector<bool> minus_one_seen;  // per run (Monte Carlo mode)
  std::uint64_t seed = 0;
  int p = 0;
  int q = 0;
  double mu = 0.0;
  std::uint64_t oracle_queries = 0;  // one preparation per run
  bool short_circuit_sat = false;    // s = 2^n random-query pre-pass fired
};

/// The q-run measurement protocol: prepare gamma_0, square it p times,
/// measure sigma_z; answer SAT iff any run observes -1. MonteCarlo samples
/// the measurements from streams derived from (seed, run index); Exact
/// reports the closed-form statistics without sampling.
SatRunResult run_sat(const CnfFormula& f, int p, int q, std::uint64_t seed,
                     SatMode mode);

namespace detail {

/// Shared protocol core; `mu` rescales gamma_0 by (1 - mu) before
/// amplification (the state-preparation noise model).
SatRunResult run_protocol(const CnfFormula& f, double mu, int p, int q,
                          std::uint64_t seed, SatMode mode);

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index);
double uniform01(std::mt19937_64& rng);

}  // namespace detail

}  // namespace ctcsim
