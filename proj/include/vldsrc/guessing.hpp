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

// Guessing X^n given Y^n with the option to give up.
//
// Before guess k the guesser gives up with probability pi(k | y^n); giving
// up costs c_e. Otherwise it asks "is X^n the k-th most likely sequence?".
// G is the number of guesses on success and c_e on failure. The strategy
// built here guesses in rank order, never gives up before rank kappa + 1,
// gives up there with probability 1 - gamma / P(rank kappa + 1), and always
// gives up after that, which makes the failure probability exactly eps.

#pragma once

#include <cstdint>

#include "vldsrc/coding.hpp"
#include "vldsrc/sampling.hpp"

namespace vldsrc {

struct GivingUpStrategy {
  // Guess order and thresholds, shared with the optimal code.
  CodePlan plan;
  double cost = 2.5;

  // pi(k | y-type), exact.
  Rational give_up(const BigInt& k, std::size_t type_index) const;
};

// Throws ValidationError unless cost is positive and not an integer.
void check_cost(double cost);

GivingUpStrategy build_strategy(const JointSource& src, unsigned n, const Rational& eps,
                                Criterion criterion, double cost,
                                const LiftOptions& options = {});

struct StrategyValue {
  double expected_log_guess = 0.0;  // E[log2 G], bits
  Rational error_probability;
};

StrategyValue evaluate_strategy(const GivingUpStrategy& strategy, const JointSource& src,
                                const LiftOptions& options = {});

struct BracketResult {
  double achieved = 0.0;
  double lstar = 0.0;
  double bound = 0.0;  // 1 + |log2 c_e|
  bool holds = false;
};

// holds iff lstar - |log2 c_e| <= achieved <= lstar + 1 + |log2 c_e|.
BracketResult bracket_check(const JointSource& src, unsigned n, const Rational& eps,
                            Criterion criterion, double cost, const LiftOptions& options = {});

// Monte Carlo of the guessing loop; `mean` is the mean of log2 G.
SimulationStats simulate_guessing(const GivingUpStrategy& strategy, const JointSource& src,
                                  std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

// sum of log2 r over ranks r in [first, first + count).
double log2_rank_sum(const BigInt& first, const BigInt& count);

}  // namespace vldsrc
