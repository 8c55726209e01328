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
#include <vector>

#include "ctcsim/cnf.hpp"
#include "ctcsim/sat.hpp"

namespace ctcsim {

/// State-preparation perturbation (I + (1-mu) sigma_z)/2 plus the threshold
/// constants of the robustness condition mu ~ b / 2^(n^c).
struct NoiseParams {
  double mu = 0.0;
  double b = 1.0;
  double c = 2.0;

  void validate() const;
};

/// (1 - mu)^(2^p), evaluated as exp(2^p log1p(-mu)) so tails near 1 survive.
double perturbed_gamma(double mu, int p);

/// One mu sample of the robustness chain
///   (1-mu)^(2^n) >= exp(-2^n mu/(1-mu)) >= 1 - 2^n mu/(1-mu),
/// all quantities carried as base-2 logs. Margins are the log-domain gaps
/// of the two inequalities, reported as log2(margin) so samples far below
/// double range stay meaningful; both are nonnegative when the chain holds.
struct BoundSample {
  double log2_mu = 0.0;
  double log2_x = 0.0;  // x = 2^n mu/(1-mu), the amplified perturbation
  double margin_first_log2 = 0.0;
  double margin_second_log2 = 0.0;
  bool pass = false;
};

struct BoundCheckReport {
  int n = 0;
  double b = 0.0;
  double c = 0.0;
  std::vector<BoundSample> samples;
  bool all_pass = false;
  double worst_margin_log2 = 0.0;
};

/// Verifies the chain for `samples` values of mu log-spaced over
/// (b/2^(n^c), 2b/2^(n^c)]. Requires c > 1 and n >= 2.
BoundCheckReport bound_check(int n, double b, double c, int samples = 100);

/// epsilon = 2^-n, the distinguishability the error correction must keep;
/// equals the trace distance between the s=0 and s=1 prepared states.
double required_accuracy(int n);

/// run_sat with gamma_0 scaled by (1 - mu) before amplification; identical
/// to run_sat for mu = 0 and equal seeds.
SatRunResult perturbed_run(const CnfFormula& f, double mu, int p, int q,
                           std::uint64_t seed);

}  // namespace ctcsim
