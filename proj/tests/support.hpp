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


// Random source generators and brute-force oracles shared by the tests.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "vldsrc/numeric.hpp"
#include "vldsrc/source.hpp"

namespace vldsrc::testing {

// Canonical a / b.
inline Rational ratio(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline std::vector<std::string> labels(std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(std::to_string(i));
  return out;
}

// Integer weights in [0, max_weight], normalised. Every y column keeps at
// least one positive entry. With allow_zero false all weights are positive.
inline JointSource random_rational_source(std::mt19937_64& rng, std::size_t nx, std::size_t ny,
                                          unsigned max_weight = 12, bool allow_zero = true) {
  std::uniform_int_distribution<unsigned> w(allow_zero ? 0 : 1, max_weight);
  std::vector<std::vector<unsigned>> weights(nx, std::vector<unsigned>(ny));
  unsigned long total = 0;
  for (std::size_t y = 0; y < ny; ++y) {
    unsigned column = 0;
    for (std::size_t x = 0; x < nx; ++x) {
      weights[x][y] = w(rng);
      column += weights[x][y];
    }
    if (column == 0) {
      weights[std::uniform_int_distribution<std::size_t>(0, nx - 1)(rng)][y] = 1;
      column = 1;
    }
    total += column;
  }
  std::vector<std::vector<Rational>> pmf(nx, std::vector<Rational>(ny));
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      pmf[x][y] = Rational(weights[x][y], total);
      pmf[x][y].canonicalize();
    }
  }
  return JointSource::from_rational(labels(nx), labels(ny), pmf);
}

// P_X x P_Y with random integer weights.
inline JointSource random_independent_source(std::mt19937_64& rng, std::size_t nx,
                                             std::size_t ny) {
  std::uniform_int_distribution<unsigned> w(1, 9);
  std::vector<unsigned> a(nx), b(ny);
  unsigned sa = 0, sb = 0;
  for (auto& v : a) sa += v = w(rng);
  for (auto& v : b) sb += v = w(rng);
  std::vector<std::vector<Rational>> pmf(nx, std::vector<Rational>(ny));
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      pmf[x][y] = Rational(a[x] * b[y], sa * sb);
      pmf[x][y].canonicalize();
    }
  }
  return JointSource::from_rational(labels(nx), labels(ny), pmf);
}

inline unsigned floor_log2_u64(std::uint64_t v) {
  unsigned r = 0;
  while (v >>= 1) ++r;
  return r;
}

// Every x^n for a fixed y^n, with its conditional probability, by direct
// product over letters. Zero-probability sequences are omitted.
inline std::vector<Rational> naive_conditional_masses(const JointSource& src,
                                                      const std::vector<std::size_t>& ys) {
  const auto& cond = src.exact().conditional;
  const std::size_t nx = src.x_size(), ny = src.y_size();
  std::vector<Rational> out;
  std::vector<std::size_t> xs(ys.size(), 0);
  for (;;) {
    Rational p = 1;
    for (std::size_t i = 0; i < ys.size(); ++i) p *= cond[xs[i] * ny + ys[i]];
    if (p > 0) out.push_back(p);
    std::size_t i = 0;
    while (i < xs.size() && ++xs[i] == nx) xs[i++] = 0;
    if (i == xs.size()) break;
  }
  return out;
}

// Floor-log2-rank spectrum of a conditional law given as a list of masses.
// Ties are broken arbitrarily; the spectrum does not depend on it.
inline std::map<unsigned, Rational> naive_rank_spectrum(std::vector<Rational> masses,
                                                       const Rational& weight = 1) {
  std::sort(masses.begin(), masses.end(), [](const Rational& a, const Rational& b) { return a > b; });
  std::map<unsigned, Rational> out;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    out[floor_log2_u64(i + 1)] += weight * masses[i];
  }
  return out;
}

// Brute-force single-letter optimum. For each y every ordered list of fully
// kept symbols (which receive codewords of ranks 1, 2, ... in list order) is
// tried together with an optional fractionally kept symbol at the next rank.
// Dropped symbols are errors. The fractional keep probabilities solve the
// remaining linear program exactly.
struct LetterConfig {
  Rational cost;       // sum of P(x|y) * codeword length over the kept list
  Rational dropped;    // P(x|y) mass outside the kept list
  Rational frac_mass;  // 0 when there is no fractional symbol
  Rational frac_cost;  // frac_mass * codeword length at the next rank
};

inline std::vector<LetterConfig> letter_configs(const JointSource& src, std::size_t y) {
  const auto& cond = src.exact().conditional;
  const std::size_t ny = src.y_size();
  std::vector<std::size_t> support;
  for (std::size_t x = 0; x < src.x_size(); ++x) {
    if (cond[x * ny + y] > 0) support.push_back(x);
  }
  std::vector<LetterConfig> out;
  std::vector<std::size_t> list;
  std::vector<bool> used(src.x_size(), false);
  auto emit = [&] {
    Rational cost = 0, kept = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Rational& p = cond[list[i] * ny + y];
      cost += p * floor_log2_u64(i + 1);
      kept += p;
    }
    out.push_back({cost, 1 - kept, 0, 0});
    const unsigned next_len = floor_log2_u64(list.size() + 1);
    for (std::size_t f : support) {
      if (used[f]) continue;
      const Rational& p = cond[f * ny + y];
      out.push_back({cost, 1 - kept, p, p * next_len});
    }
  };
  std::function<void()> rec = [&] {
    emit();
    for (std::size_t x : support) {
      if (used[x]) continue;
      used[x] = true;
      list.push_back(x);
      rec();
      list.pop_back();
      used[x] = false;
    }
  };
  rec();
  return out;
}

// Minimum added cost to bring the dropped mass from `dropped` down to `eps`
// with fractional items (benefit, cost), each usable in [0, 1]. Returns
// false when infeasible.
inline bool fractional_fill(Rational dropped, const Rational& eps,
                            std::vector<std::pair<Rational, Rational>> items, Rational& cost) {
  cost = 0;
  if (dropped <= eps) return true;
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return a.second * b.first < b.second * a.first;
  });
  for (const auto& [benefit, c] : items) {
    if (benefit == 0) continue;
    const Rational need = dropped - eps;
    if (benefit >= need) {
      cost += c * need / benefit;
      return true;
    }
    cost += c;
    dropped -= benefit;
  }
  return false;
}

inline Rational brute_force_lstar_max(const JointSource& src, const Rational& eps) {
  Rational total = 0;
  for (std::size_t y = 0; y < src.y_size(); ++y) {
    bool found = false;
    Rational best;
    for (const auto& c : letter_configs(src, y)) {
      Rational extra;
      if (!fractional_fill(c.dropped, eps, {{c.frac_mass, c.frac_cost}}, extra)) continue;
      const Rational v = c.cost + extra;
      if (!found || v < best) best = v, found = true;
    }
    total += src.exact().marginal_y[y] * best;
  }
  return total;
}

inline Rational brute_force_lstar_avg(const JointSource& src, const Rational& eps) {
  const std::size_t ny = src.y_size();
  const auto& py = src.exact().marginal_y;
  std::vector<std::vector<LetterConfig>> configs;
  for (std::size_t y = 0; y < ny; ++y) configs.push_back(letter_configs(src, y));
  std::vector<std::size_t> pick(ny, 0);
  bool found = false;
  Rational best;
  std::vector<std::pair<Rational, Rational>> items(ny);
  for (;;) {
    Rational cost = 0, dropped = 0;
    for (std::size_t y = 0; y < ny; ++y) {
      const LetterConfig& c = configs[y][pick[y]];
      cost += py[y] * c.cost;
      dropped += py[y] * c.dropped;
      items[y] = {py[y] * c.frac_mass, py[y] * c.frac_cost};
    }
    Rational extra;
    if (fractional_fill(dropped, eps, items, extra)) {
      cost += extra;
      if (!found || cost < best) best = cost, found = true;
    }
    std::size_t y = 0;
    while (y < ny && ++pick[y] == configs[y].size()) pick[y++] = 0;
    if (y == ny) break;
  }
  return best;
}

}  // namespace vldsrc::testing
