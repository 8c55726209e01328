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

#include "ctcsim/sat.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

#include "ctcsim/engine.hpp"
#include "ctcsim/error.hpp"

namespace ctcsim {

namespace {

constexpr int kOracleDenseCap = 6;
constexpr int kClosedFormCap = 24;

double gamma_zero(std::uint64_t s, int n) {
  // 1 - s/2^(n-1); exact in double for the supported range.
  return 1.0 - std::ldexp(static_cast<double>(s), 1 - n);
}

void check_protocol_range(const CnfFormula& f) {
  if (f.n_vars < 0) throw DomainError("negative variable count");
  if (f.n_vars > kClosedFormCap)
    throw DomainError("formula exceeds the " +
                      std::to_string(kClosedFormCap) + "-variable cap");
}

// The closed-form amplification and the generic fixed-point solver compute
// the same trajectory for a given (s, n, p, mu); verify once per distinct
// key instead of per seeded trial.
void cross_check_against_engine(std::uint64_t s, int n, int p, double mu) {
  struct Key {
    std::uint64_t s;
    int n;
    int p;
    std::uint64_t mu_bits;
    bool operator<(const Key& o) const {
      return std::tie(s, n, p, mu_bits) < std::tie(o.s, o.n, o.p, o.mu_bits);
    }
  };
  static std::map<Key, bool> done;
  static std::mutex mutex;
  std::uint64_t mu_bits;
  static_assert(sizeof(mu_bits) == sizeof(mu));
  std::memcpy(&mu_bits, &mu, sizeof(mu));
  {
    std::lock_guard lock(mutex);
    if (done.contains({s, n, p, mu_bits})) return;
  }

  double gamma = (1.0 - mu) * gamma_zero(s, n);
  DensityMatrix state = bloch_to_density({0.0, 0.0, gamma});
  for (int k = 1; k <= p; ++k) {
    const BlochVector b = density_to_bloch(state);
    if (std::abs(b.x) > 1e-12)
      throw InternalError("protocol state acquired a sigma_x component");
    const DensityMatrix full = apply_s(state, SBackend::FullSolve);
    gamma *= gamma;
    if (std::abs(density_to_bloch(full).z - gamma) > 1e-9)
      throw InternalError(
          "closed-form amplification disagrees with the full solver at "
          "step " +
          std::to_string(k));
    state = bloch_to_density({0.0, 0.0, gamma});
  }

  std::lock_guard lock(mutex);
  done[{s, n, p, mu_bits}] = true;
}

}  // namespace

namespace detail {

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  };
  return splitmix(splitmix(seed) + 0x9E3779B97F4A7C15ull * (index + 1));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SatRunResult run_protocol(const CnfFormula& f, double mu, int p, int q,
                          std::uint64_t seed, SatMode mode) {
  check_protocol_range(f);
  if (p < 1) throw DomainError("protocol requires p >= 1");
  if (q < 1) throw DomainError("protocol requires q >= 1");
  if (mu < 0.0 || mu > 1.0)
    throw DomainError("perturbation mu must lie in [0, 1]");

  SatRunResult result;
  result.seed = seed;
  result.p = p;
  result.q = q;
  result.mu = mu;
  result.s_true = count_satisfying(f);

  const std::uint64_t total = std::uint64_t{1} << f.n_vars;
  if (result.s_true == total) {
    // Every assignment satisfies, so one random query settles the instance.
    std::mt19937_64 rng(derive_stream(seed, 0));
    std::vector<std::uint8_t> assignment(f.n_vars);
    for (auto& bit : assignment) bit = (rng() & 1u) != 0;
    if (!eval_cnf(f, assignment))
      throw InternalError("random query failed although s = 2^n");
    result.decision = SatDecision::Sat;
    result.short_circuit_sat = true;
    result.oracle_queries = 1;
    return result;
  }

  const double g0 = gamma_zero(result.s_true, f.n_vars);
  const double signed_g0 = (1.0 - mu) * g0;
  // ln|gamma_0| with the (1 - mu) factor kept in log space; doubling the
  // log is the exact image of squaring the value.
  const double log_g0 = std::log1p(-mu) + std::log(std::abs(g0));

  result.gamma_trace.resize(p + 1);
  result.log_abs_gamma_trace.resize(p + 1);
  result.gamma_trace[0] = signed_g0;
  result.log_abs_gamma_trace[0] = log_g0;
  for (int k = 1; k <= p; ++k) {
    result.gamma_trace[k] = result.gamma_trace[k - 1] * result.gamma_trace[k - 1];
    result.log_abs_gamma_trace[k] = std::ldexp(log_g0, k);
  }

  const double log_gp = result.log_abs_gamma_trace[p];
  result.p_minus_prob = -std::expm1(log_gp) / 2.0;
  // ((1 + gamma_p)/2)^q in log space: log((1+g)/2) = log1p((g-1)/2).
  const double log_all_plus = q * std::log1p(std::expm1(log_gp) / 2.0);
  result.p_sat_exact = -std::expm1(log_all_plus);
  if (result.s_true > 0 && result.s_true < total)
    result.p_fail_exact = std::exp(log_all_plus);

  if (mode == SatMode::MonteCarlo) {
    if (f.n_vars <= kOracleDenseCap)
      cross_check_against_engine(result.s_true, f.n_vars, p, mu);
    result.minus_one_seen.resize(q);
    bool any_minus = false;
    for (int run = 0; run < q; ++run) {
      std::mt19937_64 rng(derive_stream(seed, run + 1));
      const bool minus = uniform01(rng) < result.p_minus_prob;
      result.minus_one_seen[run] = minus;
      any_minus = any_minus || minus;
    }
    result.decision = any_minus ? SatDecision::Sat : SatDecision::Unsat;
  } else {
    result.decision =
        result.s_true > 0 ? SatDecision::Sat : SatDecision::Unsat;
  }
  result.oracle_queries = q;
  return result;
}

}  // namespace detail

Unitary build_oracle_unitary(const CnfFormula& f) {
  if (f.n_vars < 0 || f.n_vars > kOracleDenseCap)
    throw DomainError("oracle materialization capped at " +
                      std::to_string(kOracleDenseCap) + " variables");
  const Index d = Index{1} << (f.n_vars + 1);
  Matrix u = Matrix::Zero(d, d);
  for (Index i = 0; i < d / 2; ++i) {
    const Index flip = eval_cnf_index(f, static_cast<std::uint32_t>(i)) ? 1 : 0;
    u(i * 2 + flip, i * 2) = 1.0;
    u(i * 2 + (flip ^ 1), i * 2 + 1) = 1.0;
  }
  return Unitary(std::move(u));
}

DensityMatrix oracle_reduced_state(const CnfFormula& f,
                                   OracleBackend backend) {
  if (backend == OracleBackend::ClosedForm) {
    check_protocol_range(f);
    const double gamma = gamma_zero(count_satisfying(f), f.n_vars);
    return bloch_to_density({0.0, 0.0, gamma});
  }
  const Unitary u = build_oracle_unitary(f);
  const Index d = u.dim();
  Vector psi = Vector::Zero(d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d / 2));
  for (Index i = 0; i < d / 2; ++i) psi(i * 2) = amp;
  psi = u.matrix() * psi;
  const int ancilla = f.n_vars;  // trailing label of the n+1 register
  return partial_trace(DensityMatrix::pure(psi),
                       std::vector<int>{ancilla});
}

double gamma_after(int p, std::uint64_t s, int n) {
  if (p < 0) throw DomainError("gamma_after requires p >= 0");
  if (n < 0 || n > kClosedFormCap)
    throw DomainError("gamma_after supports 0 <= n <= " +
                      std::to_string(kClosedFormCap));
  if (s > (std::uint64_t{1} << n))
    throw DomainError("satisfying count exceeds 2^n");
  double gamma = gamma_zero(s, n);
  for (int k = 0; k < p; ++k) gamma *= gamma;
  return gamma;
}

double p_fail(int p, int q, std::uint64_t s, int n) {
  if (q < 1) throw DomainError("p_fail requires q >= 1");
  if (n < 0 || n > kClosedFormCap)
    throw DomainError("p_fail supports 0 <= n <= " +
                      std::to_string(kClosedFormCap));
  if (s == 0)
    throw DomainError("P_fail is undefined for s = 0: the protocol is always "
                      "correct on unsatisfiable instances");
  if (s >= (std::uint64_t{1} << n))
    throw DomainError("P_fail is undefined for s = 2^n: that case is decided "
                      "by a single random query");
  return std::pow((1.0 + gamma_after(p, s, n)) / 2.0, q);
}

SatRunResult run_sat(const CnfFormula& f, int p, int q, std::uint64_t seed,
                     SatMode mode) {
  return detail::run_protocol(f, 0.0, p, q, seed, mode);
}

}  // namespace ctcsim
