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

// Exact n-letter spectra of an i.i.d. source by the method of types.
//
// Given a side-information sequence y^n, the conditional law of X^n only
// depends on the y-type (how often each y occurs). Sequences x^n sharing a
// conditional type have the same likelihood, so the ranked conditional law
// is a short list of (likelihood, count) classes. All n-letter quantities
// are sums over y-types of per-class terms.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "vldsrc/cutoff.hpp"
#include "vldsrc/numeric.hpp"
#include "vldsrc/source.hpp"

namespace vldsrc {

inline constexpr std::uint64_t kDefaultMaxTypes = 100000000ULL;

// The VLDSRC_MAX_TYPES environment variable when set, else 10^8.
std::uint64_t default_max_types();

struct LiftOptions {
  std::uint64_t max_types = default_max_types();
  // Worker threads used for per-y-type work; 0 picks the hardware count.
  unsigned workers = 1;
};

// Number of compositions of n into `parts` nonnegative parts.
BigInt count_compositions(unsigned n, std::size_t parts);

// Number of joint type classes of length-n sequences over the joint support.
BigInt joint_type_count(const JointSource& src, unsigned n);

// Throws BudgetExceeded when the joint type count exceeds options.max_types.
void check_type_budget(const JointSource& src, unsigned n, const LiftOptions& options);

// Visits every composition of k into `parts` nonnegative parts, starting
// from (k, 0, ..., 0) and ending at (0, ..., 0, k).
template <class Fn>
void for_each_composition(unsigned k, std::size_t parts, Fn&& fn) {
  std::vector<unsigned> c(parts, 0);
  if (parts == 0) return;
  c[0] = k;
  for (;;) {
    fn(static_cast<const std::vector<unsigned>&>(c));
    const unsigned last = c[parts - 1];
    c[parts - 1] = 0;
    std::size_t i = parts - 1;
    while (i > 0 && c[i - 1] == 0) --i;
    if (i == 0) return;
    --c[i - 1];
    c[i] = last + 1;
  }
}

// (x, y) pairs with positive joint mass, x-major.
std::vector<std::pair<std::size_t, std::size_t>> joint_support(const JointSource& src);

template <class Num>
struct TypeClass {
  std::vector<unsigned> counts;          // parallel to joint_support(src)
  typename Arith<Num>::Count weight;     // n! / prod counts!
  typename Arith<Num>::Key likelihood;   // prod P(x, y)^count (log2 in float mode)
};

// Streams every joint type class of blocklength n exactly once.
template <class Num>
void enumerate_joint_types(const JointSource& src, unsigned n, const LiftOptions& options,
                           const std::function<void(const TypeClass<Num>&)>& fn);

// One likelihood class of the ranked conditional law given a y-sequence.
template <class Num>
struct RankClass {
  typename Arith<Num>::Key key;       // conditional likelihood (log2 in float mode)
  typename Arith<Num>::Count count;   // number of x-sequences in the class
};

template <class Num>
struct YTypeBlock {
  std::vector<unsigned> y_counts;     // occurrences of each y symbol
  Num probability = Num(0);           // P{type(Y^n) = y_counts}
  // Strictly decreasing likelihood.
  std::vector<RankClass<Num>> classes;
};

// All y-types of blocklength n in enumeration order.
std::vector<std::vector<unsigned>> y_types(const JointSource& src, unsigned n);

// Ranked conditional law given any y-sequence with the given y-type.
template <class Num>
std::vector<RankClass<Num>> rank_classes(const JointSource& src,
                                         const std::vector<unsigned>& y_counts);

// Calls fn once per y-type, in y_types() order, after checking the budget.
// Class lists are computed on `options.workers` threads; fn runs on the
// calling thread.
template <class Num>
void for_each_y_type(const JointSource& src, unsigned n, const LiftOptions& options,
                     const std::function<void(const YTypeBlock<Num>&)>& fn);

// Law of the n-letter information density, unconditional (mixture over y).
template <class Num>
ValueSpectrum<Num> iota_spectrum_n(const JointSource& src, unsigned n,
                                   const LiftOptions& options = {});

// Law of the n-letter information density given a y-sequence of type y_counts.
template <class Num>
ValueSpectrum<Num> iota_spectrum_n(const JointSource& src, const std::vector<unsigned>& y_counts,
                                   const LiftOptions& options = {});

// Law of floor(log2 rank) for a ranked conditional law. The rank interval
// [s, s + c) of every class is split at powers of two.
template <class Num>
ValueSpectrum<Num> floor_log_rank_spectrum(const std::vector<RankClass<Num>>& classes);

template <class Num>
ValueSpectrum<Num> floor_log_rank_spectrum(const JointSource& src,
                                           const std::vector<unsigned>& y_counts);

// Law of floor(log2 rank) with the rank taken given Y^n and then mixed over Y^n.
template <class Num>
ValueSpectrum<Num> pooled_floor_log_rank_spectrum(const JointSource& src, unsigned n,
                                                  const LiftOptions& options = {});

// sum over ranks r in [first, first + count) of floor(log2 r).
template <class Num>
typename Arith<Num>::Count floor_log2_range_sum(const typename Arith<Num>::Count& first,
                                                const typename Arith<Num>::Count& count);

struct CutoffEntropyPair {
  double conditional = 0.0;
  double unconditional = 0.0;
};

// Both n-letter cutoff entropies for every eps, in the source's arithmetic.
std::vector<CutoffEntropyPair> cutoff_entropies(const JointSource& src, unsigned n,
                                                const std::vector<Rational>& eps_list,
                                                const LiftOptions& options = {});

}  // namespace vldsrc
