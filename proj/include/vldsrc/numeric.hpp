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

// Number types shared by every module.
//
// Two arithmetic back-ends exist: exact rationals (GMP) and float64. Most
// algorithms are templates over the probability type `Num`; `Arith<Num>`
// supplies the handful of operations whose behaviour differs between the
// two (equality of likelihoods, multinomial counts, logarithms).

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vldsrc {

using Rational = mpq_class;
using BigInt = mpz_class;

// Float-mode values closer than this are treated as the same atom.
inline constexpr double kMergeTolerance = 1e-12;
// Denominator bound used when an inexact probability is snapped to a rational.
inline constexpr long kMaxProbabilityDenominator = 1000000000L;

// Parses "p/q", an integer, or a decimal ("0.125", "1e-3") exactly.
// Throws ValidationError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

// Like parse_rational, but decimals whose exact denominator exceeds 1e9 are
// replaced by their best rational approximation with denominator <= 1e9.
// The result must lie in [0, 1].
Rational parse_probability(std::string_view text);

// Best rational approximation with denominator <= max_den (continued fractions).
Rational best_rational(const Rational& x, long max_den);
Rational best_rational(double x, long max_den);

std::string format_rational(const Rational& q);

// log2 of a positive rational, accurate even when numerator and denominator
// are far outside the double range.
double log2_rational(const Rational& q);
double log2_bigint(const BigInt& z);
double to_double(const Rational& q);

// A scalar result that is exact whenever the inputs were rational.
struct Quantity {
  double value = 0.0;
  std::optional<Rational> exact;
};

template <class Num>
struct Arith;

template <>
struct Arith<double> {
  using Count = double;
  // Likelihood keys are stored as log2 likelihoods.
  using Key = double;
  static constexpr bool kExact = false;

  static double from_rational(const Rational& q) { return vldsrc::to_double(q); }
  static double from_value(double v) { return v; }
  static double to_double(double v) { return v; }
  static bool same_value(double a, double b) {
    return std::abs(a - b) <= kMergeTolerance;
  }

  static Key key_of(double p) { return std::log2(p); }
  static Key key_unit() { return 0.0; }
  static Key key_times(Key a, Key b) { return a + b; }
  static Key key_pow(Key a, unsigned k) { return k == 0 ? 0.0 : a * k; }
  static bool key_greater(Key a, Key b) { return a > b; }
  static bool key_same(Key a, Key b) { return std::abs(a - b) <= kMergeTolerance; }
  static double likelihood(Key k) { return std::exp2(k); }
  static double iota(Key k) { return k == 0.0 ? 0.0 : -k; }

  static Count count(std::uint64_t c) { return static_cast<double>(c); }
  static double count_to_num(Count c) { return c; }
  static double count_to_double(Count c) { return c; }
  static int floor_log2(Count c) { return std::ilogb(c); }
  static Count pow2(int j) { return std::ldexp(1.0, j); }
  static Count binomial(unsigned n, unsigned k);
  // Mass of `count` sequences of likelihood `key`, evaluated in the log domain.
  static double class_mass(Key key, Count count) {
    return std::exp2(key + std::log2(count));
  }
};

template <>
struct Arith<Rational> {
  using Count = BigInt;
  using Key = Rational;
  static constexpr bool kExact = true;

  static Rational from_rational(const Rational& q) { return q; }
  static Rational from_value(double v) { return Rational(v); }
  static double to_double(const Rational& q) { return vldsrc::to_double(q); }
  static bool same_value(const Rational& a, const Rational& b) { return a == b; }

  static Key key_of(const Rational& p) { return p; }
  static Key key_unit() { return Rational(1); }
  static Key key_times(const Key& a, const Key& b) { return a * b; }
  static Key key_pow(const Key& a, unsigned k);
  static bool key_greater(const Key& a, const Key& b) { return a > b; }
  static bool key_same(const Key& a, const Key& b) { return a == b; }
  static Rational likelihood(const Key& k) { return k; }
  static double iota(const Key& k) { return -log2_rational(k); }

  static Count count(std::uint64_t c) { return BigInt(static_cast<unsigned long>(c)); }
  static Rational count_to_num(const Count& c) { return Rational(c); }
  static double count_to_double(const Count& c) { return c.get_d(); }
  static int floor_log2(const Count& c) {
    return static_cast<int>(mpz_sizeinbase(c.get_mpz_t(), 2)) - 1;
  }
  static Count pow2(int j) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(j));
    return r;
  }
  static Count binomial(unsigned n, unsigned k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
  }
  static Rational class_mass(const Key& key, const Count& count) {
    return key * Rational(count);
  }
};

// Sum of weight * value over (value, weight) terms. Terms with identical
// values are merged first so that weights summing exactly to one (rational
// mode) leave a constant value untouched.
template <class Num>
double grouped_sum(std::vector<std::pair<double, Num>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double total = 0.0;
  for (std::size_t i = 0; i < terms.size();) {
    Num weight = terms[i].second;
    std::size_t j = i + 1;
    for (; j < terms.size() && terms[j].first == terms[i].first; ++j) {
      weight += terms[j].second;
    }
    total += Arith<Num>::to_double(weight) * terms[i].first;
    i = j;
  }
  return total;
}

}  // namespace vldsrc
