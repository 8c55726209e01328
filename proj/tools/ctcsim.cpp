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

#include <clocale>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctcsim/circuit.hpp"
#include "ctcsim/engine.hpp"
#include "ctcsim/error.hpp"
#include "ctcsim/noise.hpp"
#include "ctcsim/sat.hpp"

namespace {

using namespace ctcsim;

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DensityMatrix parse_rho_spec(const std::string& spec, Index expected_dim) {
  std::istringstream in(spec);
  std::string kind;
  if (!(in >> kind)) throw DomainError("empty rho-in spec");
  if (kind == "bloch") {
    double x, y, z;
    if (!(in >> x >> y >> z))
      throw DomainError("rho-in spec: expected 'bloch <nx> <ny> <nz>'");
    if (expected_dim != 2)
      throw DomainError("bloch rho-in needs a single chronology-respecting "
                        "qubit");
    return bloch_to_density({x, y, z});
  }
  if (kind == "basis") {
    std::string bits;
    if (!(in >> bits))
      throw DomainError("rho-in spec: expected 'basis <bitstring>'");
    Index index = 0;
    for (char c : bits) {
      if (c != '0' && c != '1')
        throw DomainError("basis bitstring must contain only 0 and 1");
      index = index * 2 + (c - '0');
    }
    if ((Index{1} << bits.size()) != expected_dim)
      throw DomainError("basis bitstring length does not match the register");
    Vector v = Vector::Zero(expected_dim);
    v(index) = 1.0;
    return DensityMatrix::pure(v);
  }
  if (kind == "file") {
    std::string path;
    if (!(in >> path))
      throw DomainError("rho-in spec: expected 'file <path>'");
    std::istringstream data(read_file(path));
    Index dim = 0;
    if (!(data >> dim) || dim < 1)
      throw DomainError("rho-in file must start with the matrix dimension");
    if (dim != expected_dim)
      throw DomainError("rho-in file dimension " + std::to_string(dim) +
                        " does not match the register (" +
                        std::to_string(expected_dim) + ")");
    Matrix m(dim, dim);
    std::string tok;
    for (Index r = 0; r < dim; ++r)
      for (Index c = 0; c < dim; ++c) {
        if (!(data >> tok))
          throw DomainError("rho-in file needs " + std::to_string(dim * dim) +
                            " entries");
        m(r, c) = parse_complex_literal(tok);
      }
    return DensityMatrix(std::move(m));
  }
  throw DomainError("unknown rho-in spec '" + kind +
                    "'; use bloch|basis|file");
}

struct Row {
  std::ostream& out;
  template <typename... Parts>
  void operator()(const Parts&... parts) {
    bool first = true;
    ((out << (first ? "" : "\t") << parts, first = false), ...);
    out << "\n";
  }
};

// ---------------------------------------------------------------------------
// examples

struct ExampleExpect {
  BlochVector fixed;
  BlochVector output;
  int multiplicity;
  bool ambiguous;
};

ExampleExpect cphase_swap_expect(const BlochVector& n) {
  return {{n.x * n.z, n.y * n.z, n.z},
          {n.z * n.z * n.x, n.z * n.z * n.y, n.z},
          0,
          false};
}

ExampleExpect crot_expect(const BlochVector& n) {
  // max-entropy selection sits at m_z = 0; output ambiguity needs a
  // transverse input component.
  const bool top = n.z == 1.0;
  const double mz = 0.0;
  return {{0.0, 0.0, 0.0},
          {n.x * (1.0 + mz) / 2.0 + n.y * (-1.0 + mz) / 2.0,
           n.x * (1.0 - mz) / 2.0 + n.y * (1.0 + mz) / 2.0, n.z},
          top ? 3 : 1,
          !top && (n.x != 0.0 || n.y != 0.0)};
}

ExampleExpect s_gate_expect(const BlochVector& n) {
  return {{0.0, 0.0, n.z}, {0.0, 0.0, n.z * n.z}, 0, false};
}

int cmd_examples(std::ostream& out, const EngineConfig& cfg) {
  Row row{out};
  row("# circuit", "nx", "ny", "nz", "mx", "my", "mz", "out_x", "out_y",
      "out_z", "multiplicity", "ambiguous", "status");

  const std::vector<BlochVector> cphase_grid = {
      {0, 0, 1},   {0, 0, -1}, {0, 0, 0},          {1, 0, 0},
      {0, 1, 0},   {0.3, 0.4, 0.5}, {-0.5, 0.25, -0.75}, {0.6, -0.6, 0.3},
      {0.2, 0.3, -0.4}};
  const std::vector<BlochVector> crot_grid = {
      {1, 0, 0}, {0, 1, 0}, {0.3, 0.4, 0.5}, {0, 0, 1}, {0, 0, -1},
      {0, 0, 0}};
  const std::vector<double> s_grid = {1.0, 0.9, 0.5, 0.0, -0.5, -1.0};

  bool all_pass = true;
  auto run_one = [&](const char* name, ExampleCircuit which,
                     const BlochVector& n, const ExampleExpect& expect) {
    const auto result = ctc_evolve(example_circuit(which), bloch_to_density(n),
                                   SelectionPolicy::MaxEntropy, {}, cfg);
    const BlochVector m = density_to_bloch(result.rho_ctc);
    const BlochVector o = density_to_bloch(result.rho_out);
    const double tol = 1e-9;
    const bool pass = std::abs(m.x - expect.fixed.x) <= tol &&
                      std::abs(m.y - expect.fixed.y) <= tol &&
                      std::abs(m.z - expect.fixed.z) <= tol &&
                      std::abs(o.x - expect.output.x) <= tol &&
                      std::abs(o.y - expect.output.y) <= tol &&
                      std::abs(o.z - expect.output.z) <= tol &&
                      result.multiplicity == expect.multiplicity &&
                      result.output_ambiguous == expect.ambiguous;
    all_pass = all_pass && pass;
    row(name, fmt12(n.x), fmt12(n.y), fmt12(n.z), fmt12(m.x), fmt12(m.y),
        fmt12(m.z), fmt12(o.x), fmt12(o.y), fmt12(o.z), result.multiplicity,
        result.output_ambiguous ? 1 : 0, pass ? "PASS" : "FAIL");
  };

  for (const auto& n : cphase_grid)
    run_one("cphase_swap", ExampleCircuit::CphaseSwap, n, cphase_swap_expect(n));
  for (const auto& n : crot_grid) {
    ExampleExpect e = crot_expect(n);
    e.fixed = {0.0, 0.0, 0.0};  // max entropy: origin in every free direction
    run_one("crot", ExampleCircuit::Crot, n, e);
  }
  for (double g : s_grid)
    run_one("s_gate", ExampleCircuit::SGate, {0, 0, g},
            s_gate_expect({0, 0, g}));

  row("# all_pass", all_pass ? 1 : 0);
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// evolve / fixedpoint

void print_matrix(Row& row, const char* key, const Matrix& m) {
  row(std::string("# ") + key + "_dim", m.rows());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      row(key, r, c, format_complex_literal(m(r, c)));
}

int cmd_evolve(const std::string& circuit_path, const std::string& rho_spec,
               const std::string& policy_str,
               const std::optional<std::string>& explicit_coords,
               bool print_set, std::ostream& out, const EngineConfig& cfg) {
  const CtcCircuit circuit = parse_circuit(read_file(circuit_path));
  const DensityMatrix rho_in =
      parse_rho_spec(rho_spec, circuit.reg.dim_cr());

  SelectionPolicy policy;
  if (policy_str == "max-entropy") {
    policy = SelectionPolicy::MaxEntropy;
  } else if (policy_str == "cesaro") {
    policy = SelectionPolicy::Cesaro;
  } else if (policy_str == "explicit") {
    policy = SelectionPolicy::Explicit;
  } else {
    throw CLI::ValidationError("--policy",
                               "unknown policy '" + policy_str + "'");
  }
  std::vector<double> coords;
  if (policy == SelectionPolicy::Explicit) {
    if (!explicit_coords)
      throw CLI::ValidationError(
          "--policy", "explicit policy requires --explicit <x1,x2,...>");
    std::istringstream in(*explicit_coords);
    std::string tok;
    while (std::getline(in, tok, ',')) coords.push_back(std::stod(tok));
  }

  const CtcResult result = ctc_evolve(circuit, rho_in, policy, coords, cfg);

  Row row{out};
  row("# ctcsim", print_set ? "fixedpoint" : "evolve");
  row("circuit", circuit_path);
  row("policy", result.policy_used);
  row("multiplicity", result.multiplicity);
  row("output_ambiguous", result.output_ambiguous ? 1 : 0);
  print_matrix(row, "rho_out", result.rho_out.matrix());
  print_matrix(row, "rho_ctc", result.rho_ctc.matrix());
  if (result.rho_out.dim() == 2) {
    const auto b = density_to_bloch(result.rho_out);
    row("rho_out_bloch", fmt17(b.x), fmt17(b.y), fmt17(b.z));
  }
  if (result.rho_ctc.dim() == 2) {
    const auto b = density_to_bloch(result.rho_ctc);
    row("rho_ctc_bloch", fmt17(b.x), fmt17(b.y), fmt17(b.z));
  }

  if (print_set) {
    const FixedPointSet set = fixed_point_set(
        induced_map(circuit_unitary(circuit), rho_in, circuit.reg), cfg);
    print_matrix(row, "base", set.base.matrix());
    for (int i = 0; i < set.multiplicity(); ++i) {
      for (Index r = 0; r < set.directions[i].rows(); ++r)
        for (Index c = 0; c < set.directions[i].cols(); ++c)
          row("direction", i, r, c,
              format_complex_literal(set.directions[i](r, c)));
      row("box", i, fmt17(set.box_bounds[i].first),
          fmt17(set.box_bounds[i].second));
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sat

int cmd_sat(const std::string& cnf_path, int p, int q, std::uint64_t seed,
            const std::string& mode_str, int trials, bool strict,
            std::ostream& out) {
  const DimacsResult parsed = parse_dimacs(read_file(cnf_path), strict);
  for (const auto& w : parsed.warnings)
    std::cerr << "warning: " << w << "\n";
  const CnfFormula& f = parsed.formula;

  SatMode mode;
  if (mode_str == "exact") {
    mode = SatMode::Exact;
  } else if (mode_str == "mc") {
    mode = SatMode::MonteCarlo;
  } else {
    throw CLI::ValidationError("--mode", "unknown mode '" + mode_str + "'");
  }

  const SatRunResult r = run_sat(f, p, q, seed, mode);

  Row row{out};
  row("# ctcsim", "sat");
  row("cnf", cnf_path);
  row("n_vars", f.n_vars);
  row("n_clauses", f.clauses.size());
  row("s", r.s_true);
  row("p", r.p);
  row("q", r.q);
  row("seed", r.seed);
  row("mode", mode_str);
  row("decision", r.decision == SatDecision::Sat ? "SAT" : "UNSAT");
  row("short_circuit", r.short_circuit_sat ? 1 : 0);
  row("oracle_queries", r.oracle_queries);
  for (size_t k = 0; k < r.gamma_trace.size(); ++k)
    row("gamma", k, fmt12(r.gamma_trace[k]),
        fmt12(r.log_abs_gamma_trace[k]));
  if (std::isnan(r.p_fail_exact)) {
    row("p_fail", r.s_true == 0 ? "n/a (s=0)" : "n/a (s=2^n)");
  } else {
    row("p_fail", fmt12(r.p_fail_exact));
  }
  if (!std::isnan(r.p_sat_exact)) row("p_sat_exact", fmt12(r.p_sat_exact));
  for (size_t k = 0; k < r.minus_one_seen.size(); ++k)
    row("minus_one", k, r.minus_one_seen[k] ? 1 : 0);

  if (mode == SatMode::MonteCarlo && trials > 0) {
    int wrong = 0;
    for (int t = 0; t < trials; ++t) {
      const auto rt =
          run_sat(f, p, q, detail::derive_stream(seed, t), SatMode::MonteCarlo);
      const bool truth_sat = rt.s_true > 0;
      wrong += ((rt.decision == SatDecision::Sat) != truth_sat);
    }
    const double expected =
        (r.s_true > 0 && r.s_true < (std::uint64_t{1} << f.n_vars))
            ? r.p_fail_exact
            : 0.0;
    const double rate = static_cast<double>(wrong) / trials;
    const double sigma =
        std::sqrt(std::max(expected * (1.0 - expected), 0.0) / trials);
    row("trials", trials);
    row("wrong_decisions", wrong);
    row("empirical_fail_rate", fmt12(rate));
    row("expected_fail_rate", fmt12(expected));
    row("binomial_3sigma", fmt12(3.0 * sigma));
    row("within_3sigma", std::abs(rate - expected) <= 3.0 * sigma ? 1 : 0);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// noise

int cmd_noise(const std::optional<double>& mu, const std::optional<int>& n,
              const std::optional<int>& p,
              const std::optional<std::string>& bound, int samples,
              const std::optional<std::string>& cnf_path, int q, int trials,
              std::uint64_t seed, std::ostream& out) {
  Row row{out};
  row("# ctcsim", "noise");
  if (mu && p) {
    NoiseParams params{*mu, 1.0, 2.0};
    params.validate();
    row("mu", fmt12(*mu));
    row("p", *p);
    const double g = perturbed_gamma(*mu, *p);
    row("perturbed_gamma", fmt12(g));
    row("log1p_neg_mu_scaled", fmt12(std::ldexp(std::log1p(-*mu), *p)));
  }
  if (n) {
    row("n", *n);
    row("required_accuracy", fmt12(required_accuracy(*n)));
    // fault-tolerance overheads; asymptotic expressions, not evaluated
    row("overhead_accuracy_2^-n", "O(log(p(n) 2^n) p(n)) gates");
    row("overhead_accuracy_2^-n^c", "O(log(p(n)) n^c p(n)) gates");
  }
  if (bound) {
    double b, c;
    char comma;
    std::istringstream in(*bound);
    if (!(in >> b >> comma >> c) || comma != ',')
      throw CLI::ValidationError("--bound", "expected '--bound b,c'");
    if (!n)
      throw CLI::ValidationError("--bound", "bound check requires --n");
    const BoundCheckReport report = bound_check(*n, b, c, samples);
    row("bound_b", fmt12(b));
    row("bound_c", fmt12(c));
    row("bound_samples", samples);
    row("# bound_sample", "i", "log2_mu", "log2_x", "margin1_log2",
        "margin2_log2", "pass");
    for (size_t i = 0; i < report.samples.size(); ++i) {
      const auto& s = report.samples[i];
      row("bound_sample", i, fmt12(s.log2_mu), fmt12(s.log2_x),
          fmt12(s.margin_first_log2), fmt12(s.margin_second_log2),
          s.pass ? 1 : 0);
    }
    row("bound_all_pass", report.all_pass ? 1 : 0);
    row("bound_worst_margin_log2", fmt12(report.worst_margin_log2));
    int failed = 0;
    for (const auto& s : report.samples) failed += !s.pass;
    if (report.all_pass) {
      row("bound_summary",
          "all " + std::to_string(samples) + " samples pass");
    } else {
      row("bound_summary", std::to_string(failed) + " of " +
                               std::to_string(samples) + " samples fail");
    }
  }
  if (cnf_path) {
    if (!mu || !p)
      throw CLI::ValidationError("--cnf", "perturbed runs need --mu and --p");
    const DimacsResult parsed = parse_dimacs(read_file(*cnf_path));
    for (const auto& w : parsed.warnings)
      std::cerr << "warning: " << w << "\n";
    const auto one = perturbed_run(parsed.formula, *mu, *p, q, seed);
    row("cnf", *cnf_path);
    row("s", one.s_true);
    row("q", q);
    row("p_sat_exact", fmt12(one.p_sat_exact));
    if (trials > 0) {
      int sat_decisions = 0;
      for (int t = 0; t < trials; ++t)
        sat_decisions += (perturbed_run(parsed.formula, *mu, *p, q,
                                        detail::derive_stream(seed, t))
                              .decision == SatDecision::Sat);
      row("perturbed_trials", trials);
      row("sat_decision_rate",
          fmt12(static_cast<double>(sat_decisions) / trials));
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");

  CLI::App app{"Simulator and analysis toolkit for quantum circuits with "
               "closed-timelike-curve qubits"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed_flag;
  std::string out_path;
  EngineConfig cfg;
  app.add_option("--seed", seed_flag,
                 "RNG seed (overrides CTC_SIM_SEED; default 0)");
  app.add_option("--out", out_path, "write output to a file instead of stdout");
  app.add_option("--tol-fixed-point", cfg.fixed_point_tol,
                 "eigenvalue-1 tolerance (default 1e-9)");
  app.add_option("--tol-psd", cfg.psd_tol,
                 "positive-semidefiniteness tolerance (default 1e-9)");
  app.add_option("--cesaro-max-iters", cfg.cesaro_max_iters,
                 "Cesaro averaging iteration budget (default 1e6)");

  auto* examples = app.add_subcommand(
      "examples", "run the built-in example circuits against closed forms");
  examples->fallthrough();

  std::string circuit_path, rho_spec, policy = "max-entropy";
  std::optional<std::string> explicit_coords;
  auto add_evolve_opts = [&](CLI::App* sub) {
    sub->add_option("--circuit", circuit_path, "circuit file")->required();
    sub->add_option("--rho-in", rho_spec,
                    "input state: 'bloch <nx> <ny> <nz>' | 'basis <bits>' | "
                    "'file <path>'")
        ->required();
    sub->add_option("--policy", policy, "max-entropy | cesaro | explicit");
    sub->add_option("--explicit", explicit_coords,
                    "comma-separated coordinates for the explicit policy");
  };
  auto* evolve = app.add_subcommand(
      "evolve", "solve the consistency condition and print the output state");
  evolve->fallthrough();
  add_evolve_opts(evolve);
  auto* fixedpoint = app.add_subcommand(
      "fixedpoint", "like evolve, also printing the full fixed-point set");
  fixedpoint->fallthrough();
  add_evolve_opts(fixedpoint);

  std::string cnf_path, sat_mode = "exact";
  int sat_p = 1, sat_q = 1, sat_trials = 0;
  bool strict_dimacs = false;
  auto* sat = app.add_subcommand("sat", "run the CTC-assisted SAT protocol");
  sat->fallthrough();
  sat->add_option("--cnf", cnf_path, "DIMACS CNF file")->required();
  sat->add_option("--p", sat_p, "amplification steps per run (>= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  sat->add_option("--q", sat_q, "number of runs (>= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  sat->add_option("--mode", sat_mode, "exact | mc");
  sat->add_option("--trials", sat_trials,
                  "Monte Carlo trials for the empirical failure rate");
  sat->add_flag("--strict", strict_dimacs,
                "treat DIMACS clause-count mismatch as an error");

  std::optional<double> noise_mu;
  std::optional<int> noise_n, noise_p;
  std::optional<std::string> noise_bound, noise_cnf;
  int noise_samples = 100, noise_q = 1, noise_trials = 0;
  auto* noise =
      app.add_subcommand("noise", "state-preparation noise analysis");
  noise->fallthrough();
  noise->add_option("--mu", noise_mu, "perturbation strength in [0, 1]");
  noise->add_option("--n", noise_n, "problem size for accuracy/bound rows");
  noise->add_option("--p", noise_p, "amplification steps");
  noise->add_option("--bound", noise_bound,
                    "verify the robustness chain for 'b,c' (requires c > 1)");
  noise->add_option("--samples", noise_samples,
                    "mu samples for the bound check (default 100)");
  noise->add_option("--cnf", noise_cnf,
                    "DIMACS file for perturbed protocol runs");
  noise->add_option("--q", noise_q, "runs per perturbed protocol instance");
  noise->add_option("--trials", noise_trials,
                    "perturbed Monte Carlo trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::uint64_t seed = 0;
  if (const char* env = std::getenv("CTC_SIM_SEED"))
    seed = std::strtoull(env, nullptr, 10);
  if (seed_flag) seed = *seed_flag;

  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    out_file.open(out_path);
    if (!out_file) {
      std::cerr << "error: cannot open output file '" << out_path << "'\n";
      return 2;
    }
    out = &out_file;
  }

  try {
    if (examples->parsed()) return cmd_examples(*out, cfg);
    if (evolve->parsed())
      return cmd_evolve(circuit_path, rho_spec, policy, explicit_coords,
                        false, *out, cfg);
    if (fixedpoint->parsed())
      return cmd_evolve(circuit_path, rho_spec, policy, explicit_coords,
                        true, *out, cfg);
    if (sat->parsed())
      return cmd_sat(cnf_path, sat_p, sat_q, seed, sat_mode, sat_trials,
                     strict_dimacs, *out);
    if (noise->parsed())
      return cmd_noise(noise_mu, noise_n, noise_p, noise_bound, noise_samples,
                       noise_cnf, noise_q, noise_trials, seed, *out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
