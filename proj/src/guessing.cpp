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

#include "vldsrc/guessing.hpp"

#include <cmath>
#include <numbers>

#include "plan_walk.hpp"
#include "vldsrc/errors.hpp"

namespace vldsrc {

void check_cost(double cost) {
  if (!std::isfinite(cost) || cost <= 0.0) {
    throw ValidationError("cost: error cost must be positive");
  }
  if (cost == std::floor(cost)) {
    throw ValidationError("cost: error cost must not be an integer");
  }
}

Rational GivingUpStrategy::give_up(const BigInt& k, std::size_t type_index) const {
  const KeepRule& rule = plan.rule_for(type_index);
  if (k <= rule.kappa) return 0;
  if (k == rule.kappa + 1) return 1 - rule.boundary_keep;
  return 1;
}

GivingUpStrategy build_strategy(const JointSource& src, unsigned n, const Rational& eps,
                                Criterion criterion, double cost, const LiftOptions& options) {
  check_cost(cost);
  GivingUpStrategy s;
  s.plan = build_code(src, n, eps, criterion, options);
  s.cost = cost;
  return s;
}

double log2_rank_sum(const BigInt& first, const BigInt& count) {
  if (count <= 0) return 0.0;
  if (count <= 65536 && first < BigInt("9007199254740992")) {
    double base = first.get_d();
    double total = 0.0;
    const unsigned long c = count.get_ui();
    for (unsigned long i = 0; i < c; ++i) total += std::log2(base + static_cast<double>(i));
    return total;
  }
  // log2 of (first + count - 1)! / (first - 1)!.
  const double a = first.get_d();
  const double b = a + count.get_d();
  return (std::lgamma(b) - std::lgamma(a)) * std::numbers::log2e;
}

StrategyValue evaluate_strategy(const GivingUpStrategy& strategy, const JointSource& src,
                                const LiftOptions& options) {
  const CodePlan& plan = strategy.plan;
  double log_sum = 0.0;
  Rational succeeded = 0;
  std::size_t t = 0;
  for_each_y_type<Rational>(src, plan.n, options, [&](const YTypeBlock<Rational>& b) {
    const KeepRule& rule = plan.rule_for(t++);
    BigInt start = 1;
    for (const auto& c : b.classes) {
      if (start > rule.kappa) break;
      BigInt take = rule.kappa - start + 1;
      if (take > c.count) take = c.count;
      const Rational mass = b.probability * c.key * Rational(take);
      succeeded += mass;
      log_sum += to_double(mass) * (log2_rank_sum(start, take) / take.get_d());
      start += c.count;
    }
    const BigInt boundary = rule.kappa + 1;
    const Rational at_boundary = b.probability * likelihood_at(b.classes, boundary) *
                                 rule.boundary_keep;
    if (sgn(at_boundary) > 0) {
      succeeded += at_boundary;
      log_sum += to_double(at_boundary) * log2_bigint(boundary);
    }
  });
  StrategyValue v;
  v.error_probability = 1 - succeeded;
  v.expected_log_guess = log_sum + to_double(v.error_probability) * std::log2(strategy.cost);
  return v;
}

BracketResult bracket_check(const JointSource& src, unsigned n, const Rational& eps,
                            Criterion criterion, double cost, const LiftOptions& options) {
  GivingUpStrategy s = build_strategy(src, n, eps, criterion, cost, options);
  BracketResult r;
  r.achieved = evaluate_strategy(s, src, options).expected_log_guess;
  r.lstar = lstar(src, n, eps, criterion, options).value;
  const double slack = std::abs(std::log2(cost));
  r.bound = 1.0 + slack;
  constexpr double kTolerance = 1e-12;
  r.holds = r.lstar - slack - kTolerance <= r.achieved &&
            r.achieved <= r.lstar + 1.0 + slack + kTolerance;
  return r;
}

SimulationStats simulate_guessing(const GivingUpStrategy& strategy, const JointSource& src,
                                  std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  check_cost(strategy.cost);
  const CodePlan& plan = strategy.plan;
  const double log_cost = std::log2(strategy.cost);
  JointSampler sampler(src);
  if (plan.n == 1) {
    // Per (x, y): the guess that would hit, and the survival probability at
    // the boundary step.
    const std::size_t nx = src.x_size();
    struct Entry {
      double log_rank = 0.0;
      double survive = 0.0;  // 1 when no give-up step precedes the hit
      bool reachable = false;
    };
    std::vector<Entry> table(nx * src.y_size());
    for (const auto& [x, y] : joint_support(src)) {
      const BigInt rank = plan.ranks->rank({x}, {y});
      const KeepRule& rule = plan.rule_for(plan.type_index({y}));
      Entry& e = table[y * nx + x];
      e.log_rank = log2_bigint(rank);
      if (rank <= rule.kappa) {
        e.reachable = true;
        e.survive = 1.0;
      } else if (rank == rule.kappa + 1) {
        e.reachable = true;
        e.survive = to_double(rule.boundary_keep);
      }
    }
    return run_trials(trials, seed, workers, [&](Rng& rng) {
      auto [x, y] = sampler.draw(rng);
      const Entry& e = table[y * nx + x];
      bool hit = e.reachable && (e.survive >= 1.0 || rng.uniform() < e.survive);
      return TrialOutcome{hit ? e.log_rank : log_cost, !hit};
    });
  }
  return run_trials(trials, seed, workers, [&](Rng& rng) {
    std::vector<std::size_t> xs(plan.n), ys(plan.n);
    for (unsigned i = 0; i < plan.n; ++i) std::tie(xs[i], ys[i]) = sampler.draw(rng);
    const BigInt target = plan.ranks->rank(xs, ys);
    const std::size_t t = plan.criterion == Criterion::kMax ? plan.type_index(ys) : 0;
    const KeepRule& rule = plan.rule_for(t);
    // Steps before kappa + 1 never give up and steps after it always do, so
    // only the boundary step needs a draw.
    if (target <= rule.kappa) return TrialOutcome{log2_bigint(target), false};
    const bool survives = Rational(rng.uniform()) < rule.boundary_keep;
    if (target == rule.kappa + 1 && survives) return TrialOutcome{log2_bigint(target), false};
    return TrialOutcome{log_cost, true};
  });
}

}  // namespace vldsrc
