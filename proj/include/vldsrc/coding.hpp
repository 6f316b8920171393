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

// Optimal variable-length codes with side information and an allowed error
// probability eps.
//
// Codewords are all finite binary strings in the order
//   b_1 = "", b_2 = "0", b_3 = "1", b_4 = "00", ...
// so len(b_i) = floor(log2 i). Given y^n, the optimal encoder sends the
// rank of x^n (by decreasing conditional likelihood) as b_rank, keeping the
// most likely sequences up to a total mass of 1 - eps and sending the empty
// string otherwise. Under the maximum criterion the threshold is set for
// every y^n; under the average criterion it is shared.

#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vldsrc/numeric.hpp"
#include "vldsrc/product_lift.hpp"
#include "vldsrc/sampling.hpp"
#include "vldsrc/source.hpp"

namespace vldsrc {

enum class Criterion { kMax, kAvg };

std::string_view criterion_name(Criterion c);
// Accepts "max" or "avg".
Criterion parse_criterion(std::string_view text);

// Minimal expected codeword length over codes with error at most eps, in
// bits. `exact` is set for rational sources.
Quantity lstar(const JointSource& src, unsigned n, const Rational& eps, Criterion criterion,
               const LiftOptions& options = {});

struct LstarPair {
  Quantity max;
  Quantity avg;
};

// Both criteria for every eps in one pass over the y-types.
std::vector<LstarPair> lstar_grid(const JointSource& src, unsigned n,
                                  const std::vector<Rational>& eps_list,
                                  const LiftOptions& options = {});

struct OneShotBounds {
  double lower = 0.0;
  Quantity exact;
  double upper = 0.0;
};

// upper: the matching n-letter cutoff entropy (conditional for max,
// unconditional for avg); lower: upper - log2(n H + 1) - log2 e.
OneShotBounds one_shot_bounds(const JointSource& src, unsigned n, const Rational& eps,
                              Criterion criterion, const LiftOptions& options = {});

// Codeword helpers.
std::string codeword(const BigInt& index);
BigInt codeword_index(std::string_view word);
unsigned codeword_length(const BigInt& index);

// Ranks x-sequences given a y-sequence: rank 1 is the most likely; equal
// likelihoods are ordered lexicographically by x index.
class RankIndex {
 public:
  RankIndex(const JointSource& src, unsigned n);
  ~RankIndex();

  unsigned n() const { return n_; }
  BigInt rank(const std::vector<std::size_t>& xs, const std::vector<std::size_t>& ys) const;
  std::vector<std::size_t> unrank(const BigInt& rank, const std::vector<std::size_t>& ys) const;

 private:
  struct TypeTable;
  const TypeTable& table_for(const std::vector<unsigned>& y_counts) const;

  // Exact source copy; the index outlives the caller's source.
  std::shared_ptr<const JointSource> src_;
  unsigned n_;
  // Single-letter fast path: rank_of_[y][x] (0 when outside the support).
  std::vector<std::vector<std::uint64_t>> rank_of_;
  std::vector<ConditionalRow<Rational>> rows_;
  mutable std::mutex mutex_;
  mutable std::vector<std::pair<std::vector<unsigned>, std::unique_ptr<TypeTable>>> tables_;
};

// Keep rule for one y-type (maximum criterion) or for all (average).
struct KeepRule {
  BigInt kappa;            // ranks 1..kappa are always kept
  Rational gamma;          // mass kept at rank kappa + 1
  Rational boundary_mass;  // P{rank = kappa + 1} under the rule's law
  Rational boundary_keep;  // gamma / boundary_mass, 0 if no boundary rank
};

struct CodePlan {
  Criterion criterion = Criterion::kAvg;
  unsigned n = 1;
  Rational eps;
  std::vector<std::vector<unsigned>> y_types;
  // One rule per y-type (maximum criterion) or a single shared rule.
  std::vector<KeepRule> rules;
  // Analytic performance.
  Rational expected_length;
  Rational drop_probability;   // probability the encoder declares a drop
  Rational error_probability;  // probability the decoder output is wrong
  std::shared_ptr<const RankIndex> ranks;

  const KeepRule& rule_for(std::size_t type_index) const {
    return criterion == Criterion::kMax ? rules[type_index] : rules.front();
  }
  std::size_t type_index(const std::vector<std::size_t>& ys) const;
};

// Builds the optimal code. The plan is always exact: float sources are
// evaluated on the exact binary values of their masses. Requires eps < 1.
CodePlan build_code(const JointSource& src, unsigned n, const Rational& eps, Criterion criterion,
                    const LiftOptions& options = {});

struct EncodeResult {
  std::string codeword;
  bool dropped = false;
  std::vector<std::size_t> decoded;
  bool error = false;
};

// `u` is the uniform draw used for the boundary rank.
EncodeResult encode_decode(const CodePlan& plan, const std::vector<std::size_t>& xs,
                           const std::vector<std::size_t>& ys, double u);

std::vector<std::size_t> decode(const CodePlan& plan, std::string_view word,
                                const std::vector<std::size_t>& ys);

// Mean codeword length (bits) and decoding error rate over `trials` draws.
SimulationStats simulate_code(const JointSource& src, const CodePlan& plan, std::uint64_t trials,
                              std::uint64_t seed, unsigned workers = 1);

}  // namespace vldsrc
