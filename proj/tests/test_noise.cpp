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

#include <doctest.h>

#include <cmath>
#include <string>

#include "ctcsim/density.hpp"
#include "ctcsim/error.hpp"
#include "ctcsim/noise.hpp"
#include "support.hpp"

using namespace ctcsim;

namespace {

const CnfFormula kContradiction = parse_dimacs("p cnf 1 2\n1 0\n-1 0").formula;

}  // namespace

TEST_CASE("perturbed_gamma reference points") {
  CHECK(perturbed_gamma(0.0, 0) == 1.0);
  CHECK(perturbed_gamma(0.0, 17) == 1.0);
  CHECK(perturbed_gamma(0.5, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(perturbed_gamma(1.0, 3) == 0.0);
  CHECK_THROWS_AS(perturbed_gamma(-0.1, 1), DomainError);
  CHECK_THROWS_AS(perturbed_gamma(1.5, 1), DomainError);
}

TEST_CASE("perturbed_gamma keeps the tiny-mu tail in log space") {
  const double mu = std::ldexp(1.0, -100);
  const int p = 10;
  // (1-mu)^(2^p) >= 1 - 2^p/(2^100 + 1); compare in log space, where the
  // left side is 2^p log1p(-mu).
  const double log_gamma = std::ldexp(std::log1p(-mu), p);
  const double log_bound =
      std::log1p(-std::ldexp(1.0, p) / (std::ldexp(1.0, 100) + 1.0));
  CHECK(log_gamma >= log_bound - 1e-300);
  CHECK(perturbed_gamma(mu, p) >=
        1.0 - std::ldexp(1.0, p) / (std::ldexp(1.0, 100) + 1.0));
  // the linear value saturates at 1; the tail is only visible in the log
  CHECK(perturbed_gamma(mu, p) == 1.0);
  CHECK(log_gamma < 0.0);
}

TEST_CASE("perturbed_gamma is monotone decreasing in mu and p") {
  for (int p : {0, 1, 3, 6}) {
    double prev = 1.0;
    for (double mu : {0.0, 1e-6, 1e-3, 0.1, 0.5, 0.9, 1.0}) {
      const double g = perturbed_gamma(mu, p);
      CHECK(g <= prev + 1e-15);
      prev = g;
    }
  }
  for (double mu : {1e-6, 0.2, 0.7}) {
    double prev = 1.0;
    for (int p = 0; p <= 12; ++p) {
      const double g = perturbed_gamma(mu, p);
      CHECK(g <= prev + 1e-15);
      prev = g;
    }
  }
}

TEST_CASE("bound_check verifies the robustness chain") {
  SUBCASE("documented example grids") {
    const auto r1 = bound_check(10, 1.0, 2.0, 100);
    CHECK(r1.all_pass);
    CHECK(r1.samples.size() == 100);
    for (const auto& s : r1.samples) CHECK(s.pass);

    const auto r2 = bound_check(4, 1.0, 1.5, 100);
    CHECK(r2.all_pass);
    CHECK(std::isfinite(r2.worst_margin_log2));
  }
  SUBCASE("c <= 1 is rejected") {
    CHECK_THROWS_WITH_AS(bound_check(10, 1.0, 1.0, 100),
                         doctest::Contains("requires c > 1"), DomainError);
  }
  SUBCASE("extreme exponents stay finite in log2 space") {
    const auto r = bound_check(20, 2.0, 3.0, 50);  // mu ~ 2^-8000
    CHECK(r.all_pass);
    for (const auto& s : r.samples) {
      CHECK(std::isfinite(s.log2_mu));
      CHECK(std::isfinite(s.margin_first_log2));
      CHECK(std::isfinite(s.margin_second_log2));
      CHECK(s.log2_mu < -7000.0);
    }
  }
}

TEST_CASE("required_accuracy is 2^-n and matches the trace distance") {
  CHECK(required_accuracy(2) == 0.25);
  CHECK(required_accuracy(1) == 0.5);
  CHECK_THROWS_AS(required_accuracy(0), DomainError);
  for (int n = 2; n <= 8; ++n) {
    const double eps = required_accuracy(n);
    const auto s0 = bloch_to_density({0, 0, 1});
    const auto s1 = bloch_to_density({0, 0, 1.0 - std::ldexp(1.0, 1 - n)});
    CHECK(trace_distance(s0, s1) == doctest::Approx(eps).epsilon(1e-12));
  }
}

TEST_CASE("perturbed_run with mu = 0 is bitwise identical to run_sat") {
  const auto f = parse_dimacs("p cnf 3 2\n1 2 0\n-1 3 0").formula;
  for (std::uint64_t seed : {0ull, 7ull, 12345ull}) {
    const auto plain = run_sat(f, 3, 5, seed, SatMode::MonteCarlo);
    const auto noisy = perturbed_run(f, 0.0, 3, 5, seed);
    CHECK(plain.decision == noisy.decision);
    CHECK(plain.minus_one_seen == noisy.minus_one_seen);
    REQUIRE(plain.gamma_trace.size() == noisy.gamma_trace.size());
    for (size_t k = 0; k < plain.gamma_trace.size(); ++k) {
      CHECK(plain.gamma_trace[k] == noisy.gamma_trace[k]);
      CHECK(plain.log_abs_gamma_trace[k] == noisy.log_abs_gamma_trace[k]);
    }
    CHECK(plain.p_minus_prob == noisy.p_minus_prob);
    CHECK(plain.p_sat_exact == noisy.p_sat_exact);
  }
}

TEST_CASE("perturbed_run false-SAT statistics on unsatisfiable input") {
  SUBCASE("large mu makes misidentification near certain") {
    const double mu = 0.5;
    const int p = 5, q = 10;
    const double gamma_p = perturbed_gamma(mu, p);
    const double expect = 1.0 - std::pow((1.0 + gamma_p) / 2.0, q);
    CHECK(expect == doctest::Approx(0.999).epsilon(1e-3));

    const auto one = perturbed_run(kContradiction, mu, p, q, 3);
    CHECK(one.p_sat_exact == doctest::Approx(expect).epsilon(1e-12));

    const int trials = 3000;
    int false_sat = 0;
    for (int t = 0; t < trials; ++t) {
      const auto r = perturbed_run(kContradiction, mu, p, q,
                                   detail::derive_stream(5, t));
      false_sat += (r.decision == SatDecision::Sat);
    }
    const double rate = static_cast<double>(false_sat) / trials;
    const double sigma = std::sqrt(expect * (1.0 - expect) / trials);
    CHECK(std::abs(rate - expect) <= 4.0 * sigma + 1e-12);
  }
  SUBCASE("tiny mu keeps the false-SAT rate near zero") {
    const double mu = std::ldexp(1.0, -20);
    const auto r = perturbed_run(kContradiction, mu, 5, 10, 3);
    CHECK(r.p_sat_exact < 2e-4);
    CHECK(r.p_sat_exact > 0.0);
    int false_sat = 0;
    for (int t = 0; t < 2000; ++t)
      false_sat += (perturbed_run(kContradiction, mu, 5, 10,
                                  detail::derive_stream(17, t))
                        .decision == SatDecision::Sat);
    CHECK(false_sat <= 4);
  }
}

TEST_CASE("threshold dichotomy in log space for n in 4..20") {
  for (int n = 4; n <= 20; ++n) {
    // mu >= 2^(-n/2): gamma_n <= exp(-2^(n/2))
    const double mu_big = std::exp2(-n / 2.0);
    const double log_gamma_big = std::ldexp(std::log1p(-mu_big), n);
    CHECK(log_gamma_big <= -std::exp2(n / 2.0));
    // mu <= 2^(-2n): gamma_n >= 1 - 2^-n
    const double mu_small = std::ldexp(1.0, -2 * n);
    const double log_gamma_small = std::ldexp(std::log1p(-mu_small), n);
    CHECK(log_gamma_small >= std::log1p(-std::ldexp(1.0, -n)));
  }
}

TEST_CASE("perturbed_run exposes the dichotomy through its gamma trace") {
  for (int n = 4; n <= 10; ++n) {
    CnfFormula f = kContradiction;
    f.n_vars = n;
    const double mu_big = std::exp2(-n / 2.0);
    const auto big = perturbed_run(f, mu_big, n, 1, 0);
    CHECK(big.log_abs_gamma_trace.back() <= -std::exp2(n / 2.0));
    const double mu_small = std::ldexp(1.0, -2 * n);
    const auto small = perturbed_run(f, mu_small, n, 1, 0);
    CHECK(small.log_abs_gamma_trace.back() >=
          std::log1p(-std::ldexp(1.0, -n)));
  }
}

TEST_CASE("noise parameter validation") {
  NoiseParams good{0.5, 1.0, 2.0};
  CHECK_NOTHROW(good.validate());
  CHECK_THROWS_AS((NoiseParams{-0.1, 1.0, 2.0}.validate()), DomainError);
  CHECK_THROWS_AS((NoiseParams{0.5, 0.0, 2.0}.validate()), DomainError);
  CHECK_THROWS_AS((NoiseParams{0.5, 1.0, 0.0}.validate()),DomainError);
  CHECK_THROWS_AS(perturbed_run(kContradiction, 1.5, 1, 1, 0), DomainError);
}
