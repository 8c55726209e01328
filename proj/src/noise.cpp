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

#include "ctcsim/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctcsim/error.hpp"

namespace ctcsim {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// ln(1-mu) + mu/(1-mu) = sum_{k>=2} (1 - 1/k) mu^k, the slack of
// ln(1-mu) >= -mu/(1-mu); series below the cancellation region.
double margin_small_mu_factor(double mu) {
  return 0.5 + mu * (2.0 / 3.0 + mu * (0.75 + mu * 0.8));
}

// -x - ln(1-x) = sum_{k>=2} x^k/k, the slack of exp(-x) >= 1-x.
double margin_small_x_factor(double x) {
  return 0.5 + x * (1.0 / 3.0 + x * (0.25 + x * 0.2));
}

}  // namespace

void NoiseParams::validate() const {
  if (mu < 0.0 || mu > 1.0) throw DomainError("mu must lie in [0, 1]");
  if (b <= 0.0) throw DomainError("threshold constant b must be positive");
  if (c <= 0.0) throw DomainError("threshold constant c must be positive");
}

double perturbed_gamma(double mu, int p) {
  if (mu < 0.0 || mu > 1.0) throw DomainError("mu must lie in [0, 1]");
  if (p < 0) throw DomainError("perturbed_gamma requires p >= 0");
  return std::exp(std::ldexp(std::log1p(-mu), p));
}

BoundCheckReport bound_check(int n, double b, double c, int samples) {
  if (c <= 1.0)
    throw DomainError("bound_check requires c > 1 (got c = " +
                      std::to_string(c) + ")");
  if (n < 2) throw DomainError("bound_check requires n >= 2");
  if (b <= 0.0) throw DomainError("bound_check requires b > 0");
  if (samples < 1) throw DomainError("bound_check requires samples >= 1");

  BoundCheckReport report;
  report.n = n;
  report.b = b;
  report.c = c;
  report.all_pass = true;
  report.worst_margin_log2 = std::numeric_limits<double>::infinity();

  const double n_pow_c = std::pow(static_cast<double>(n), c);
  for (int i = 0; i < samples; ++i) {
    BoundSample sample;
    // log-uniform over (b/2^(n^c), 2b/2^(n^c)]
    sample.log2_mu =
        std::log2(b) - n_pow_c + static_cast<double>(i + 1) / samples;
    // mu itself may underflow double; every margin below is carried as a
    // base-2 log built from log2_mu instead.
    const double mu = std::exp2(sample.log2_mu);
    const double log2_one_minus_mu = std::log1p(-mu) / kLn2;
    sample.log2_x = n + sample.log2_mu - log2_one_minus_mu;
    const double x = std::exp2(sample.log2_x);

    double margin1_log2;
    if (mu >= 1e-4) {
      const double m1 = std::log1p(-mu) + mu / (1.0 - mu);
      sample.pass = m1 >= 0.0;
      margin1_log2 = n + std::log2(m1);
    } else {
      sample.pass = true;  // series of positive terms
      margin1_log2 =
          n + 2.0 * sample.log2_mu + std::log2(margin_small_mu_factor(mu));
    }
    sample.margin_first_log2 = margin1_log2;

    double margin2_log2;
    if (x >= 1.0) {
      // 1 - x is nonpositive; report the linear gap exp(-x) - (1 - x).
      margin2_log2 = std::log2(std::exp(-x) - (1.0 - x));
      sample.pass = sample.pass && true;
    } else if (x >= 1e-4) {
      const double m2 = -x - std::log1p(-x);
      sample.pass = sample.pass && m2 >= 0.0;
      margin2_log2 = std::log2(m2);
    } else {
      margin2_log2 =
          2.0 * sample.log2_x + std::log2(margin_small_x_factor(x));
    }
    sample.margin_second_log2 = margin2_log2;

    report.all_pass = report.all_pass && sample.pass;
    report.worst_margin_log2 =
        std::min({report.worst_margin_log2, sample.margin_first_log2,
                  sample.margin_second_log2});
    report.samples.push_back(sample);
  }
  return report;
}

double required_accuracy(int n) {
  if (n < 1) throw DomainError("required_accuracy needs n >= 1");
  return std::ldexp(1.0, -n);
}

SatRunResult perturbed_run(const CnfFormula& f, double mu, int p, int q,
                           std::uint64_t seed) {
  return detail::run_protocol(f, mu, p, q, seed, SatMode::MonteCarlo);
}

}  // namespace ctcsim
