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

#include "ctcsim/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "ctcsim/error.hpp"

namespace ctcsim {

namespace {

constexpr int kMaxRegisterQubits = 12;

int gate_arity(const std::string& name) {
  static const std::map<std::string, int> arities = {
      {"I", 1},    {"X", 1},     {"Y", 1},    {"Z", 1},
      {"H", 1},    {"S", 1},     {"T", 1},    {"CNOT", 2},
      {"CPHASE", 2}, {"SWAP", 2}, {"CROT", 2},
  };
  auto it = arities.find(name);
  return it == arities.end() ? -1 : it->second;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Complex parse_complex(const std::string& tok, int line) {
  try {
    return parse_complex_literal(tok);
  } catch (const DomainError& e) {
    throw ParseError(line, e.what());
  }
}

int parse_label(const std::string& tok, const QubitRegister& reg, int line) {
  size_t pos = 0;
  int label;
  try {
    label = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "expected qubit label, got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(line, "expected qubit label, got '" + tok + "'");
  if (label < 0 || label >= reg.n_total)
    throw ParseError(line, "qubit label " + tok + " out of range for " +
                               std::to_string(reg.n_total) + "-qubit register");
  return label;
}

}  // namespace

void QubitRegister::validate() const {
  if (n_total < 1)
    throw DomainError("register must contain at least one qubit");
  if (n_ctc < 0 || n_ctc > n_total)
    throw DomainError("CTC qubit count " + std::to_string(n_ctc) +
                      " outside [0, " + std::to_string(n_total) + "]");
}

Complex parse_complex_literal(const std::string& tok) {
  std::string s = tok;
  bool has_j = !s.empty() && (s.back() == 'j' || s.back() == 'J');
  if (has_j) s.pop_back();
  if (s.empty()) throw DomainError("bad complex literal '" + tok + "'");

  // Split at the last '+'/'-' that is not an exponent sign or leading sign.
  size_t split = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }

  auto to_double = [&](const std::string& part) {
    size_t pos = 0;
    double v;
    try {
      v = std::stod(part, &pos);
    } catch (const std::exception&) {
      throw DomainError("bad complex literal '" + tok + "'");
    }
    if (pos != part.size())
      throw DomainError("bad complex literal '" + tok + "'");
    return v;
  };

  if (split == std::string::npos) {
    double v = to_double(s);
    return has_j ? Complex(0.0, v) : Complex(v, 0.0);
  }
  if (!has_j)
    throw DomainError("complex literal '" + tok + "' missing trailing j");
  double re = to_double(s.substr(0, split));
  std::string im_part = s.substr(split);
  if (im_part == "+" || im_part == "-") im_part += "1";
  return Complex(re, to_double(im_part));
}

std::string format_complex_literal(Complex z) {
  std::string s = fmt_double(z.real());
  s += std::signbit(z.imag()) ? "-" : "+";
  s += fmt_double(std::abs(z.imag()));
  s += "j";
  return s;
}

Matrix gate_matrix(const std::string& name) {
  const Complex i(0.0, 1.0);
  if (name == "I") return Matrix::Identity(2, 2);
  if (name == "X") return pauli_x();
  if (name == "Y") return pauli_y();
  if (name == "Z") return pauli_z();
  if (name == "H") {
    Matrix m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
  }
  if (name == "S") return Eigen::Vector2cd(1.0, i).asDiagonal();
  if (name == "T")
    return Eigen::Vector2cd(1.0, std::exp(i * (M_PI / 4.0))).asDiagonal();
  if (name == "CNOT") {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
  }
  if (name == "CPHASE")
    return Eigen::Vector4cd(1.0, 1.0, 1.0, -1.0).asDiagonal();
  if (name == "SWAP") {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    return m;
  }
  if (name == "CROT") return Eigen::Vector4cd(1.0, 1.0, 1.0, i).asDiagonal();
  throw DomainError("unknown gate '" + name + "'");
}

Matrix phase_gate(double theta) {
  return Eigen::Vector2cd(1.0, std::exp(Complex(0.0, theta))).asDiagonal();
}

Matrix embed_gate(const Matrix& g, std::span<const int> targets, int n_total) {
  const int k = static_cast<int>(targets.size());
  if (g.rows() != (Index{1} << k) || g.cols() != g.rows())
    throw DimensionError("gate matrix does not match target count");
  for (int a = 0; a < k; ++a) {
    if (targets[a] < 0 || targets[a] >= n_total)
      throw DomainError("gate target " + std::to_string(targets[a]) +
                        " outside register");
    for (int b = a + 1; b < k; ++b)
      if (targets[a] == targets[b])
        throw DomainError("duplicate gate target " +
                          std::to_string(targets[a]));
  }
  const Index dim = Index{1} << n_total;
  Matrix out = Matrix::Zero(dim, dim);
  const Index rest_mask = [&] {
    Index m = dim - 1;
    for (int t : targets) m &= ~(Index{1} << (n_total - 1 - t));
    return m;
  }();
  for (Index col = 0; col < dim; ++col) {
    Index gcol = 0;
    for (int b = 0; b < k; ++b)
      gcol |= ((col >> (n_total - 1 - targets[b])) & 1) << (k - 1 - b);
    const Index rest = col & rest_mask;
    for (Index grow = 0; grow < (Index{1} << k); ++grow) {
      const Complex v = g(grow, gcol);
      if (v == Complex(0.0)) continue;
      Index row = rest;
      for (int b = 0; b < k; ++b)
        row |= ((grow >> (k - 1 - b)) & 1) << (n_total - 1 - targets[b]);
      out(row, col) += v;
    }
  }
  return out;
}

CtcCircuit parse_circuit(std::string_view text) {
  CtcCircuit circuit;
  bool have_header = false;
  std::istringstream in{std::string(text)};
  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    if (auto hash = raw_line.find('#'); hash != std::string::npos)
      raw_line.erase(hash);
    std::istringstream line(raw_line);
    std::string head;
    if (!(line >> head)) continue;  // blank

    if (!have_header) {
      if (head != "qubits")
        throw ParseError(line_no,
                         "missing header 'qubits <n_total> ctc <n_ctc>'");
      std::string ctc_kw;
      int n_total = 0, n_ctc = 0;
      if (!(line >> n_total >> ctc_kw >> n_ctc) || ctc_kw != "ctc")
        throw ParseError(line_no, "malformed header; expected "
                                  "'qubits <n_total> ctc <n_ctc>'");
      circuit.reg = QubitRegister{n_total, n_ctc};
      try {
        circuit.reg.validate();
      } catch (const DomainError& e) {
        throw ParseError(line_no, e.what());
      }
      std::string extra;
      if (line >> extra)
        throw ParseError(line_no, "unexpected token '" + extra + "' in header");
      have_header = true;
      continue;
    }

    if (head == "gate") {
      std::string name;
      if (!(line >> name)) throw ParseError(line_no, "gate line missing name");
      Gate gate;
      if (name.rfind("PHASE(", 0) == 0) {
        if (name.back() != ')')
          throw ParseError(line_no, "malformed PHASE gate '" + name + "'");
        std::string arg = name.substr(6, name.size() - 7);
        size_t pos = 0;
        double theta;
        try {
          theta = std::stod(arg, &pos);
        } catch (const std::exception&) {
          throw ParseError(line_no, "bad PHASE angle '" + arg + "'");
        }
        if (pos != arg.size())
          throw ParseError(line_no, "bad PHASE angle '" + arg + "'");
        gate.name = "PHASE(" + fmt_double(theta) + ")";
        gate.matrix = phase_gate(theta);
      } else {
        if (gate_arity(name) < 0)
          throw ParseError(line_no, "unknown gate '" + name + "'");
        gate.name = name;
        gate.matrix = gate_matrix(name);
      }
      const int arity = qubit_count(gate.matrix.rows());
      std::string tok;
      while (line >> tok)
        gate.targets.push_back(parse_label(tok, circuit.reg, line_no));
      if (static_cast<int>(gate.targets.size()) != arity)
        throw ParseError(line_no, "gate " + gate.name + " takes " +
                                      std::to_string(arity) + " target(s), got " +
                                      std::to_string(gate.targets.size()));
      for (size_t a = 0; a < gate.targets.size(); ++a)
        for (size_t b = a + 1; b < gate.targets.size(); ++b)
          if (gate.targets[a] == gate.targets[b])
            throw ParseError(line_no, "duplicate target label " +
                                          std::to_string(gate.targets[a]));
      circuit.gates.push_back(std::move(gate));
      continue;
    }

    if (head == "raw") {
      int k = 0;
      if (!(line >> k) || k < 1 || k > 3)
        throw ParseError(line_no, "raw gate arity must be 1, 2, or 3");
      Gate gate;
      gate.name = "RAW";
      std::string tok;
      for (int t = 0; t < k; ++t) {
        if (!(line >> tok))
          throw ParseError(line_no, "raw gate missing target label");
        gate.targets.push_back(parse_label(tok, circuit.reg, line_no));
      }
      for (size_t a = 0; a < gate.targets.size(); ++a)
        for (size_t b = a + 1; b < gate.targets.size(); ++b)
          if (gate.targets[a] == gate.targets[b])
            throw ParseError(line_no, "duplicate target label " +
                                          std::to_string(gate.targets[a]));
      const Index d = Index{1} << k;
      gate.matrix.resize(d, d);
      for (Index r = 0; r < d; ++r)
        for (Index c = 0; c < d; ++c) {
          if (!(line >> tok))
            throw ParseError(line_no, "raw gate needs " + std::to_string(d * d) +
                                          " entries");
          gate.matrix(r, c) = parse_complex(tok, line_no);
        }
      if (line >> tok)
        throw ParseError(line_no, "unexpected trailing token '" + tok + "'");
      try {
        Unitary check(gate.matrix);
      } catch (const Error&) {
        throw ParseError(line_no, "raw gate matrix is not unitary");
      }
      circuit.gates.push_back(std::move(gate));
      continue;
    }

    throw ParseError(line_no, "unknown directive '" + head + "'");
  }
  if (!have_header)
    throw ParseError(line_no, "missing header 'qubits <n_total> ctc <n_ctc>'");
  return circuit;
}

std::string serialize_circuit(const CtcCircuit& c) {
  std::string out = "qubits " + std::to_string(c.reg.n_total) + " ctc " +
                    std::to_string(c.reg.n_ctc) + "\n";
  for (const Gate& g : c.gates) {
    if (g.name == "RAW") {
      out += "raw " + std::to_string(g.targets.size());
      for (int t : g.targets) out += " " + std::to_string(t);
      for (Index r = 0; r < g.matrix.rows(); ++r)
        for (Index col = 0; col < g.matrix.cols(); ++col)
          out += " " + format_complex_literal(g.matrix(r, col));
    } else {
      out += "gate " + g.name;
      for (int t : g.targets) out += " " + std::to_string(t);
    }
    out += "\n";
  }
  return out;
}

Unitary circuit_unitary(const CtcCircuit& c) {
  c.reg.validate();
  if (c.reg.n_total > kMaxRegisterQubits)
    throw DimensionError("register of " + std::to_string(c.reg.n_total) +
                         " qubits exceeds the dense materialization cap of " +
                         std::to_string(kMaxRegisterQubits));
  const Index dim = c.reg.dim_total();
  Matrix u = Matrix::Identity(dim, dim);
  for (const Gate& g : c.gates) {
    if (g.targets.empty() || g.targets.size() > 3)
      throw DomainError("gate " + g.name + " must target 1 to 3 qubits");
    u = embed_gate(g.matrix, g.targets, c.reg.n_total) * u;
  }
  return Unitary(std::move(u));
}

CtcCircuit example_circuit(ExampleCircuit which) {
  const char* text = nullptr;
  switch (which) {
    case ExampleCircuit::CphaseSwap:
      text = "qubits 2 ctc 1\ngate CPHASE 0 1\ngate SWAP 0 1\n";
      break;
    case ExampleCircuit::Crot:
      text = "qubits 2 ctc 1\ngate CROT 0 1\n";
      break;
    case ExampleCircuit::SGate:
      text = "qubits 2 ctc 1\ngate CNOT 0 1\ngate SWAP 0 1\n";
      break;
  }
  return parse_circuit(text);
}

}  // namespace ctcsim
