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

#include <string>

#include "ctcsim/circuit.hpp"
#include "ctcsim/error.hpp"
#include "support.hpp"

using namespace ctcsim;

namespace {

Matrix cphase_swap_matrix() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = 1.0;   // |00><00|
  u(1, 2) = 1.0;   // |01><10|
  u(2, 1) = 1.0;   // |10><01|
  u(3, 3) = -1.0;  // -|11><11|
  return u;
}

Matrix cnot_swap_matrix() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = 1.0;  // |00><00|
  u(2, 1) = 1.0;  // |10><01|
  u(3, 2) = 1.0;  // |11><10|
  u(1, 3) = 1.0;  // |01><11|
  return u;
}

bool structurally_equal(const CtcCircuit& a, const CtcCircuit& b) {
  if (a.reg.n_total != b.reg.n_total || a.reg.n_ctc != b.reg.n_ctc)
    return false;
  if (a.gates.size() != b.gates.size()) return false;
  for (size_t i = 0; i < a.gates.size(); ++i) {
    if (a.gates[i].name != b.gates[i].name) return false;
    if (a.gates[i].targets != b.gates[i].targets) return false;
    if ((a.gates[i].matrix.array() != b.gates[i].matrix.array()).any())
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parse_circuit builds the documented circuits") {
  const auto c = parse_circuit("qubits 2 ctc 1\ngate CNOT 0 1\ngate SWAP 0 1");
  CHECK(c.reg.n_total == 2);
  CHECK(c.reg.n_ctc == 1);
  CHECK(c.gates.size() == 2);

  const auto builtin =
      parse_circuit("qubits 2 ctc 1\ngate CPHASE 0 1\ngate SWAP 0 1");
  CHECK(max_abs(
            (circuit_unitary(builtin).matrix() - cphase_swap_matrix()).eval()) <
        1e-14);
}

TEST_CASE("parse_circuit diagnostics carry line numbers") {
  CHECK_THROWS_AS(parse_circuit("qubits 1 ctc 2"), ParseError);
  CHECK_THROWS_AS(parse_circuit("gate CNOT 0 1"), ParseError);  // no header
  CHECK_THROWS_AS(parse_circuit("qubits 2 ctc 1\ngate BOGUS 0"), ParseError);
  CHECK_THROWS_AS(parse_circuit("qubits 2 ctc 1\ngate CNOT 0"), ParseError);
  CHECK_THROWS_AS(parse_circuit("qubits 2 ctc 1\ngate CNOT 0 2"), ParseError);
  CHECK_THROWS_AS(parse_circuit("qubits 2 ctc 1\ngate SWAP 1 1"), ParseError);
  CHECK_THROWS_AS(parse_circuit(""), ParseError);
  try {
    parse_circuit("qubits 2 ctc 1\n# fine\ngate NOPE 0");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("NOPE") != std::string::npos);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  const auto c = parse_circuit(
      "# header comment\n"
      "qubits 2 ctc 1  # trailing\n"
      "\n"
      "gate CNOT 0 1\n");
  CHECK(c.gates.size() == 1);
}

TEST_CASE("PHASE and raw gates parse") {
  const auto c = parse_circuit(
      "qubits 2 ctc 0\n"
      "gate PHASE(1.5707963267948966) 0\n"
      "raw 1 1 0.70710678118654757+0j 0.70710678118654757+0j "
      "0.70710678118654757+0j -0.70710678118654757-0j\n");
  CHECK(c.gates.size() == 2);
  CHECK(std::abs(c.gates[0].matrix(1, 1) - Complex(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(c.gates[1].matrix(0, 0).real() - 1.0 / std::sqrt(2.0)) <
        1e-12);
  CHECK_THROWS_AS(
      parse_circuit("qubits 1 ctc 0\nraw 1 0 1+0j 0+0j 0+0j"),  // 3 entries
      ParseError);
  CHECK_THROWS_AS(
      parse_circuit("qubits 1 ctc 0\nraw 1 0 1+0j 1+0j 1+0j 1+0j"),
      ParseError);  // not unitary
}

TEST_CASE("circuit_unitary composes gates in temporal order") {
  const auto empty = parse_circuit("qubits 2 ctc 1");
  CHECK(max_abs(
            (circuit_unitary(empty).matrix() - Matrix::Identity(4, 4)).eval()) ==
        0.0);

  const auto cnot_swap =
      parse_circuit("qubits 2 ctc 1\ngate CNOT 0 1\ngate SWAP 0 1");
  CHECK(max_abs((circuit_unitary(cnot_swap).matrix() - cnot_swap_matrix())
                    .eval()) < 1e-14);

  CtcCircuit big;
  big.reg = {13, 1};
  CHECK_THROWS_AS(circuit_unitary(big), DimensionError);
}

TEST_CASE("built-in example circuits match their matrices") {
  CHECK(max_abs((circuit_unitary(example_circuit(ExampleCircuit::Crot)).matrix() -
                 Matrix(Eigen::Vector4cd(1, 1, 1, Complex(0, 1)).asDiagonal()))
                    .eval()) < 1e-15);
  CHECK(max_abs(
            (circuit_unitary(example_circuit(ExampleCircuit::CphaseSwap)).matrix() -
             cphase_swap_matrix())
                .eval()) < 1e-15);
  CHECK(max_abs(
            (circuit_unitary(example_circuit(ExampleCircuit::SGate)).matrix() -
             cnot_swap_matrix())
                .eval()) < 1e-15);
  for (auto which : {ExampleCircuit::CphaseSwap, ExampleCircuit::Crot,
                     ExampleCircuit::SGate}) {
    const auto c = example_circuit(which);
    CHECK(c.reg.n_total == 2);
    CHECK(c.reg.n_ctc == 1);
  }
}

TEST_CASE("CNOT+SWAP equals two alternating CNOTs") {
  const auto a = example_circuit(ExampleCircuit::SGate);
  const auto b =
      parse_circuit("qubits 2 ctc 1\ngate CNOT 1 0\ngate CNOT 0 1");
  CHECK(max_abs((circuit_unitary(a).matrix() - circuit_unitary(b).matrix())
                    .eval()) < 1e-14);
}

TEST_CASE("circuit_unitary output is unitary for random circuits") {
  std::mt19937_64 rng(23);
  const std::vector<std::string> names = {"I", "X",    "Y",      "Z",   "H",
                                          "S", "T",    "CNOT",   "SWAP",
                                          "CPHASE",    "CROT"};
  for (int trial = 0; trial < 40; ++trial) {
    CtcCircuit c;
    const int n = 2 + static_cast<int>(rng() % 3);
    c.reg = {n, 1};
    const int count = 1 + static_cast<int>(rng() % 6);
    for (int g = 0; g < count; ++g) {
      Gate gate;
      gate.name = names[rng() % names.size()];
      gate.matrix = gate_matrix(gate.name);
      const int arity = qubit_count(gate.matrix.rows());
      while (static_cast<int>(gate.targets.size()) < arity) {
        const int t = static_cast<int>(rng() % n);
        bool dup = false;
        for (int existing : gate.targets) dup = dup || existing == t;
        if (!dup) gate.targets.push_back(t);
      }
      c.gates.push_back(std::move(gate));
    }
    const Unitary u = circuit_unitary(c);  // constructor checks unitarity
    CHECK(u.dim() == (Index{1} << n));
  }
}

TEST_CASE("serialize then parse is the identity on random circuits") {
  std::mt19937_64 rng(29);
  const std::vector<std::string> names = {"X", "H", "CNOT", "SWAP", "CROT"};
  for (int trial = 0; trial < 50; ++trial) {
    CtcCircuit c;
    const int n = 1 + static_cast<int>(rng() % 3);
    c.reg = {n, static_cast<int>(rng() % (n + 1))};
    const int count = static_cast<int>(rng() % 5);
    for (int g = 0; g < count; ++g) {
      Gate gate;
      switch (rng() % 3) {
        case 0: {
          gate.name = names[rng() % names.size()];
          gate.matrix = gate_matrix(gate.name);
          break;
        }
        case 1: {
          std::uniform_real_distribution<double> angle(-3.2, 3.2);
          const double theta = angle(rng);
          char buf[64];
          std::snprintf(buf, sizeof(buf), "PHASE(%.17g)", theta);
          gate.name = buf;
          gate.matrix = phase_gate(theta);
          break;
        }
        default: {
          gate.name = "RAW";
          const int k = 1 + static_cast<int>(rng() % 2);
          gate.matrix = testing::random_unitary(Index{1} << k, rng).matrix();
          break;
        }
      }
      const int arity = qubit_count(gate.matrix.rows());
      if (arity > n) continue;
      while (static_cast<int>(gate.targets.size()) < arity) {
        const int t = static_cast<int>(rng() % n);
        bool dup = false;
        for (int existing : gate.targets) dup = dup || existing == t;
        if (!dup) gate.targets.push_back(t);
      }
      c.gates.push_back(std::move(gate));
    }
    const CtcCircuit round = parse_circuit(serialize_circuit(c));
    CHECK(structurally_equal(c, round));
  }
}

TEST_CASE("programmatic circuits are validated like parsed ones") {
  CtcCircuit c;
  c.reg = {2, 1};
  Gate g{"SWAP", {1, 1}, gate_matrix("SWAP")};
  c.gates.push_back(g);
  CHECK_THROWS_AS(circuit_unitary(c), DomainError);
  c.gates[0].targets = {0, 3};
  CHECK_THROWS_AS(circuit_unitary(c), DomainError);
}
