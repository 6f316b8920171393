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

// Keep-threshold search over ranked laws, shared by codes and guessing.

#pragma once

#include <utility>
#include <vector>

#include "vldsrc/coding.hpp"
#include "vldsrc/product_lift.hpp"

namespace vldsrc {

// A run of consecutive ranks that all carry the same mass.
struct Segment {
  BigInt length;
  Rational mass;
};

std::vector<Segment> class_segments(const std::vector<RankClass<Rational>>& classes);

// Records where the per-rank mass of one y-type changes, weighted by the
// probability of the y-type.
void append_pooled_events(const YTypeBlock<Rational>& block,
                          std::vector<std::pair<BigInt, Rational>>& events);

// Per-rank mass of the pooled law P{rank = r}, as segments from rank 1.
std::vector<Segment> pooled_segments(std::vector<std::pair<BigInt, Rational>> events);

// Largest kappa whose top-kappa mass is at most `budget`, and the remainder
// gamma = budget - (top-kappa mass), carried by rank kappa + 1.
KeepRule walk_threshold(const std::vector<Segment>& segments, const Rational& budget);

struct PrefixSums {
  Rational mass;    // sum over ranks r <= limit of P(r)
  Rational length;  // sum over ranks r <= limit of P(r) floor(log2 r)
};

PrefixSums prefix_sums(const std::vector<RankClass<Rational>>& classes, const BigInt& limit);

// Likelihood of the sequence at `rank`, zero past the end of the law.
Rational likelihood_at(const std::vector<RankClass<Rational>>& classes, const BigInt& rank);

}  // namespace vldsrc
