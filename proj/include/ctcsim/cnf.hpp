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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctcsim {

/// CNF formula over variables 1..n_vars; a clause is a list of nonzero
/// signed indices (negative = negated). Clauses are never empty.
struct CnfFormula {
  int n_vars = 0;
  std::vector<std::vector<int>> clauses;
};

struct DimacsResult {
  CnfFormula formula;
  std::vector<std::string> warnings;
};

/// DIMACS CNF: 'c' comment lines, one 'p cnf <vars> <clauses>' header,
/// 0-terminated clauses (may span lines). A clause-count mismatch is a
/// warning unless `strict` is set.
DimacsResult parse_dimacs(std::string_view text, bool strict = false);

/// 1 iff every clause contains a true literal; assignment[i] is the value
/// of variable i+1. An empty clause list is vacuously satisfied.
bool eval_cnf(const CnfFormula& f, std::span<const std::uint8_t> assignment);

/// Evaluation at a basis-index assignment: variable j is bit n_vars-j of
/// `index` (variable 1 = most significant bit).
bool eval_cnf_index(const CnfFormula& f, std::uint32_t index);

/// Exact satisfying-assignment count by exhaustive enumeration; n_vars <= 24.
std::uint64_t count_satisfying(const CnfFormula& f);

}  // namespace ctcsim
