// Copyright 2026 The Authors.
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

#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "vldsrc/errors.hpp"
#include "vldsrc/fixtures.hpp"
#include "vldsrc/guessing.hpp"

using namespace vldsrc;

TEST_CASE("three-symbol strategy") {
  const JointSource t = fixture("triple").source;
  const auto s = build_strategy(t, 1, vldsrc::testing::ratio(1, 6), Criterion::kAvg, 2.5);
  CHECK(s.give_up(1, 0) == 0);
  CHECK(s.give_up(2, 0) == 0);
  CHECK(s.give_up(3, 0) == 1);
  const StrategyValue v = evaluate_strategy(s, t);
  CHECK(v.error_probability == vldsrc::testing::ratio(1, 6));
  CHECK(v.expected_log_guess == doctest::Approx(1.0 / 3.0 + std::log2(2.5) / 6.0).epsilon(1e-14));
}

TEST_CASE("error cost validation") {
  CHECK_THROWS_AS(check_cost(2.0), ValidationError);
  CHECK_THROWS_AS(check_cost(0.0), ValidationError);
  CHECK_THROWS_AS(check_cost(-1.5), ValidationError);
  CHECK_NOTHROW(check_cost(0.5));
}

TEST_CASE("strategies spend exactly the error budget") {
  std::mt19937_64 rng(51);
  for (int s = 0; s < 40; ++s) {
    const JointSource src = vldsrc::testing::random_rational_source(rng, 2 + s % 4, 1 + s % 3);
    for (unsigned n : {1u, 2u}) {
      for (const Rational& eps : {Rational(0), vldsrc::testing::ratio(1, 7), vldsrc::testing::ratio(1, 2)}) {
        for (Criterion c : {Criterion::kMax, Criterion::kAvg}) {
          const auto strategy = build_strategy(src, n, eps, c, 1.5);
          CHECK(evaluate_strategy(strategy, src).error_probability == eps);
          CHECK(bracket_check(src, n, eps, c, 10.5).holds);
        }
      }
    }
  }
}

TEST_CASE("rank logarithm sums") {
  for (unsigned long first : {1ul, 3ul, 1000ul}) {
    for (unsigned long count : {1ul, 17ul, 70000ul}) {
      double want = 0.0;
      for (unsigned long r = first; r < first + count; ++r) want += std::log2(static_cast<double>(r));
      CHECK(log2_rank_sum(first, count) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("simulation agrees with the analytic value") {
  struct Case {
    const char* name;
    unsigned n;
    Rational eps;
    Criterion criterion;
  };
  const std::vector<Case> cases = {{"triple", 1, vldsrc::testing::ratio(1, 6), Criterion::kAvg},
                                   {"source-b", 1, vldsrc::testing::ratio(1, 4), Criterion::kMax},
                                   {"binary-pair", 3, vldsrc::testing::ratio(1, 10), Criterion::kAvg},
                                   {"dispersion-pair", 2, vldsrc::testing::ratio(1, 5), Criterion::kMax}};
  for (const auto& c : cases) {
    const JointSource src = fixture(c.name).source;
    const auto strategy = build_strategy(src, c.n, c.eps, c.criterion, 2.5);
    const StrategyValue v = evaluate_strategy(strategy, src);
    const SimulationStats st = simulate_guessing(strategy, src, 200000, 5);
    INFO(c.name);
    // Means within 3 standard errors; the error rates, checked alongside, within 4.
    CHECK(std::abs(st.mean - v.expected_log_guess) <= 3 * st.mean_stderr);
    CHECK(std::abs(st.error_rate - to_double(v.error_probability)) <= 4 * st.error_stderr);
    const SimulationStats code = simulate_code(src, strategy.plan, 200000, 6);
    CHECK(std::abs(code.mean - to_double(strategy.plan.expected_length)) <= 3 * code.mean_stderr);
    CHECK(std::abs(code.error_rate - to_double(strategy.plan.error_probability)) <=
          4 * code.error_stderr);
  }
}

TEST_CASE("simulations are reproducible") {
  const JointSource src = fixture("binary-pair").source;
  const auto strategy = build_strategy(src, 2, vldsrc::testing::ratio(1, 10), Criterion::kAvg, 2.5);
  const auto a = simulate_guessing(strategy, src, 20000, 9, 1);
  const auto b = simulate_guessing(strategy, src, 20000, 9, 3);
  CHECK(a.mean == b.mean);
  CHECK(a.error_rate == b.error_rate);
  CHECK_THROWS_AS(simulate_guessing(strategy, src, 0, 9), ValidationError);
}
