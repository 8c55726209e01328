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
#include <vector>

#include "ctcsim/cnf.hpp"
#include "ctcsim/error.hpp"
#include "support.hpp"

using namespace ctcsim;

TEST_CASE("parse_dimacs reads well-formed input") {
  const auto r = parse_dimacs("p cnf 2 1\n1 2 0");
  CHECK(r.formula.n_vars == 2);
  REQUIRE(r.formula.clauses.size() == 1);
  CHECK(r.formula.clauses[0] == std::vector<int>{1, 2});
  CHECK(r.warnings.empty());

  const auto unsat = parse_dimacs("p cnf 1 2\n1 0\n-1 0");
  CHECK(unsat.formula.clauses.size() == 2);
  CHECK(count_satisfying(unsat.formula) == 0);
}

TEST_CASE("parse_dimacs handles comments and split clauses") {
  const auto r = parse_dimacs(
      "c a comment\n"
      "c another\n"
      "p cnf 3 2\n"
      "1 -2\n"
      "3 0\n"
      "2 0\n");
  CHECK(r.formula.n_vars == 3);
  REQUIRE(r.formula.clauses.size() == 2);
  CHECK(r.formula.clauses[0] == std::vector<int>{1, -2, 3});
}

TEST_CASE("parse_dimacs diagnostics") {
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n3 0"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n-3 0"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("1 2 0"), ParseError);  // missing header
  CHECK_THROWS_AS(parse_dimacs(""), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2"), ParseError);  // no 0
  SUBCASE("clause count mismatch is a warning, or an error when strict") {
    const auto lax = parse_dimacs("p cnf 2 2\n1 0");
    CHECK(lax.warnings.size() == 1);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0", /*strict=*/true),
                    ParseError);
  }
}

TEST_CASE("eval_cnf follows clause semantics") {
  const auto f = parse_dimacs("p cnf 2 1\n1 2 0").formula;
  CHECK_FALSE(eval_cnf(f, std::vector<std::uint8_t>{0, 0}));
  CHECK(eval_cnf(f, std::vector<std::uint8_t>{1, 0}));
  CHECK(eval_cnf(f, std::vector<std::uint8_t>{0, 1}));

  CnfFormula empty;
  empty.n_vars = 2;
  CHECK(eval_cnf(empty, std::vector<std::uint8_t>{0, 0}));  // vacuous

  CHECK_THROWS_AS(eval_cnf(f, std::vector<std::uint8_t>{0}), DomainError);
}

TEST_CASE("eval_cnf_index uses variable 1 as the leading index bit") {
  const auto f = parse_dimacs("p cnf 2 1\n1 2 0").formula;
  CHECK_FALSE(eval_cnf_index(f, 0));  // x1=0, x2=0
  CHECK(eval_cnf_index(f, 1));        // x1=0, x2=1
  CHECK(eval_cnf_index(f, 2));        // x1=1, x2=0
  CHECK(eval_cnf_index(f, 3));
}

TEST_CASE("count_satisfying reference values") {
  CHECK(count_satisfying(parse_dimacs("p cnf 2 1\n1 2 0").formula) == 3);
  CHECK(count_satisfying(parse_dimacs("p cnf 1 2\n1 0\n-1 0").formula) == 0);
  CnfFormula empty;
  empty.n_vars = 3;
  CHECK(count_satisfying(empty) == 8);
  CnfFormula big;
  big.n_vars = 25;
  CHECK_THROWS_AS(count_satisfying(big), DomainError);
}

TEST_CASE("count_satisfying agrees with per-assignment evaluation") {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const auto f = testing::random_cnf(n, 1 + rng() % 6, rng);
    std::uint64_t direct = 0;
    for (std::uint32_t x = 0; x < (1u << n); ++x)
      direct += eval_cnf_index(f, x);
    CHECK(count_satisfying(f) == direct);
  }
}
