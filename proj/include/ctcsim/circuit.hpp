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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctcsim/density.hpp"
#include "ctcsim/types.hpp"

namespace ctcsim {

/// Register of n_total qubits whose trailing n_ctc labels traverse the
/// closed timelike curve; the leading labels are chronology respecting.
struct QubitRegister {
  int n_total = 1;
  int n_ctc = 0;

  int n_cr() const { return n_total - n_ctc; }
  Index dim_total() const { return Index{1} << n_total; }
  Index dim_cr() const { return Index{1} << n_cr(); }
  Index dim_ctc() const { return Index{1} << n_ctc; }
  void validate() const;
};

struct Gate {
  std::string name;          // library name, PHASE(<theta>), or RAW
  std::vector<int> targets;  // distinct labels, first target = high-order bit
  Matrix matrix;             // 2^|targets| square
};

struct CtcCircuit {
  QubitRegister reg;
  std::vector<Gate> gates;
};

/// Library matrix for a fixed-arity gate name (I, X, Y, Z, H, S, T, CNOT,
/// CPHASE, SWAP, CROT). Throws DomainError for unknown names.
Matrix gate_matrix(const std::string& name);

/// The RAW-gate complex literal: "re+imj" / "re-imj", or a bare real.
/// Throws DomainError on malformed tokens.
Complex parse_complex_literal(const std::string& token);

/// Canonical round-trip form of the literal (%.17g parts, trailing j).
std::string format_complex_literal(Complex z);

Matrix phase_gate(double theta);

/// Embeds a k-qubit gate on the given target labels into the 2^n_total space.
Matrix embed_gate(const Matrix& g, std::span<const int> targets, int n_total);

/// Parses the line-oriented circuit format:
///   qubits <n_total> ctc <n_ctc>
///   gate <NAME> <label>...
///   gate PHASE(<theta>) <label>
///   raw <k> <label>... <4^k complex entries, row-major, re+imj literals>
/// '#' starts a comment; blank lines are ignored. Errors carry line numbers.
CtcCircuit parse_circuit(std::string_view text);

/// Inverse of parse_circuit up to whitespace; RAW entries and PHASE angles
/// are printed with round-trip precision.
std::string serialize_circuit(const CtcCircuit& c);

/// Ordered product of the embedded gate matrices; the first gate in the
/// file acts first (rightmost factor). Registers above 12 qubits are
/// rejected (dense materialization cap).
Unitary circuit_unitary(const CtcCircuit& c);

enum class ExampleCircuit {
  CphaseSwap,  // controlled-phase then exchange; unique fixed point
  Crot,        // diag(1,1,1,i); CTC qubit unconstrained
  SGate,       // CNOT then exchange; realizes n_z -> n_z^2
};

/// The three built-in two-qubit example circuits (qubit 0 chronology
/// respecting, qubit 1 on the CTC).
CtcCircuit example_circuit(ExampleCircuit which);

}  // namespace ctcsim
