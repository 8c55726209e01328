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

#include "ctcsim/cnf.hpp"

#include <cstdlib>
#include <sstream>

#include "ctcsim/error.hpp"

namespace ctcsim {

namespace {

constexpr int kBruteForceCap = 24;

void check_literal(int lit, int n_vars, int line) {
  const int var = std::abs(lit);
  if (lit == 0 || var < 1 || var > n_vars)
    throw ParseError(line, "literal " + std::to_string(lit) +
                               " out of range for " + std::to_string(n_vars) +
                               " variables");
}

}  // namespace

DimacsResult parse_dimacs(std::string_view text, bool strict) {
  DimacsResult result;
  bool have_header = false;
  int declared_clauses = 0;
  std::vector<int> current;

  std::istringstream in{std::string(text)};
  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::istringstream line(raw_line);
    std::string tok;
    if (!(line >> tok)) continue;
    if (tok == "c") continue;
    if (tok.size() > 1 && tok[0] == 'c') continue;  // "c..." comment, no space

    if (tok == "p") {
      if (have_header) throw ParseError(line_no, "duplicate 'p cnf' header");
      std::string fmt;
      int n_vars = 0;
      if (!(line >> fmt >> n_vars >> declared_clauses) || fmt != "cnf")
        throw ParseError(line_no, "malformed header; expected "
                                  "'p cnf <vars> <clauses>'");
      if (n_vars < 0 || declared_clauses < 0)
        throw ParseError(line_no, "negative counts in header");
      result.formula.n_vars = n_vars;
      have_header = true;
      continue;
    }

    if (!have_header)
      throw ParseError(line_no, "missing 'p cnf <vars> <clauses>' header");

    // Clause tokens; the first token was already consumed.
    do {
      int lit;
      try {
        size_t pos = 0;
        lit = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(line_no, "expected literal, got '" + tok + "'");
      }
      if (lit == 0) {
        if (current.empty())
          throw ParseError(line_no, "empty clause");
        result.formula.clauses.push_back(current);
        current.clear();
      } else {
        check_literal(lit, result.formula.n_vars, line_no);
        current.push_back(lit);
      }
    } while (line >> tok);
  }

  if (!have_header)
    throw ParseError(line_no, "missing 'p cnf <vars> <clauses>' header");
  if (!current.empty())
    throw ParseError(line_no, "last clause is not 0-terminated");
  if (static_cast<int>(result.formula.clauses.size()) != declared_clauses) {
    const std::string msg =
        "header declares " + std::to_string(declared_clauses) +
        " clause(s) but " + std::to_string(result.formula.clauses.size()) +
        " were read";
    if (strict) throw ParseError(line_no, msg);
    result.warnings.push_back(msg);
  }
  return result;
}

bool eval_cnf(const CnfFormula& f, std::span<const std::uint8_t> assignment) {
  if (static_cast<int>(assignment.size()) != f.n_vars)
    throw DomainError("assignment length " + std::to_string(assignment.size()) +
                      " does not match " + std::to_string(f.n_vars) +
                      " variables");
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      const bool value = assignment[static_cast<size_t>(std::abs(lit)) - 1];
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

bool eval_cnf_index(const CnfFormula& f, std::uint32_t index) {
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      const int var = std::abs(lit);
      const bool value = (index >> (f.n_vars - var)) & 1u;
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::uint64_t count_satisfying(const CnfFormula& f) {
  if (f.n_vars > kBruteForceCap)
    throw DomainError("count_satisfying capped at " +
                      std::to_string(kBruteForceCap) + " variables");
  // Clause -> (positive, negative) variable masks in index-bit order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
  masks.reserve(f.clauses.size());
  for (const auto& clause : f.clauses) {
    std::uint32_t pos = 0, neg = 0;
    for (int lit : clause) {
      const std::uint32_t bit = 1u << (f.n_vars - std::abs(lit));
      (lit > 0 ? pos : neg) |= bit;
    }
    masks.emplace_back(pos, neg);
  }
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << f.n_vars;
  for (std::uint64_t x = 0; x < total; ++x) {
    bool all = true;
    for (const auto& [pos, neg] : masks) {
      if ((x & pos) == 0 && ((~x) & neg) == 0) {
        all = false;
        break;
      }
    }
    count += all;
  }
  return count;
}

}  // namespace ctcsim
