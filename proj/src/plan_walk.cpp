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

#include "plan_walk.hpp"

#include <algorithm>

namespace vldsrc {

std::vector<Segment> class_segments(const std::vector<RankClass<Rational>>& classes) {
  std::vector<Segment> out;
  out.reserve(classes.size());
  for (const auto& c : classes) out.push_back({c.count, c.key});
  return out;
}

void append_pooled_events(const YTypeBlock<Rational>& block,
                          std::vector<std::pair<BigInt, Rational>>& events) {
  BigInt start = 1;
  Rational previous = 0;
  for (const auto& c : block.classes) {
    events.emplace_back(start, block.probability * (c.key - previous));
    previous = c.key;
    start += c.count;
  }
  events.emplace_back(start, -block.probability * previous);
}

std::vector<Segment> pooled_segments(std::vector<std::pair<BigInt, Rational>> events) {
  std::sort(events.begin(), events.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Segment> out;
  Rational level = 0;
  BigInt position = 1;
  for (std::size_t i = 0; i < events.size();) {
    const BigInt& at = events[i].first;
    if (at > position) {
      out.push_back({at - position, level});
      position = at;
    }
    for (; i < events.size() && events[i].first == at; ++i) level += events[i].second;
  }
  return out;
}

KeepRule walk_threshold(const std::vector<Segment>& segments, const Rational& budget) {
  KeepRule rule;
  rule.kappa = 0;
  Rational cum = 0;
  for (const auto& seg : segments) {
    if (sgn(seg.mass) == 0) continue;
    Rational total = seg.mass * Rational(seg.length);
    if (cum + total <= budget) {
      cum += total;
      rule.kappa += seg.length;
      continue;
    }
    Rational room = (budget - cum) / seg.mass;
    BigInt extra;
    mpz_fdiv_q(extra.get_mpz_t(), room.get_num_mpz_t(), room.get_den_mpz_t());
    rule.kappa += extra;
    cum += seg.mass * Rational(extra);
    rule.boundary_mass = seg.mass;
    rule.gamma = budget - cum;
    rule.boundary_keep = rule.gamma / rule.boundary_mass;
    return rule;
  }
  rule.gamma = budget - cum;
  rule.boundary_mass = 0;
  rule.boundary_keep = 0;
  return rule;
}

PrefixSums prefix_sums(const std::vector<RankClass<Rational>>& classes, const BigInt& limit) {
  PrefixSums s;
  BigInt start = 1;
  for (const auto& c : classes) {
    if (start > limit) break;
    BigInt take = limit - start + 1;
    if (take > c.count) take = c.count;
    s.mass += c.key * Rational(take);
    s.length += c.key * Rational(floor_log2_range_sum<Rational>(start, take));
    start += c.count;
  }
  return s;
}

Rational likelihood_at(const std::vector<RankClass<Rational>>& classes, const BigInt& rank) {
  BigInt end = 1;
  for (const auto& c : classes) {
    end += c.count;
    if (rank < end) return c.key;
  }
  return 0;
}

}  // namespace vldsrc
