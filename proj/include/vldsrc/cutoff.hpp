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

// The epsilon-cutoff transformation of a nonnegative discrete random
// variable Z and the cutoff entropies built on it.
//
// For 0 <= eps < 1 the cutoff keeps Z below a cutoff point eta, keeps the
// atom at eta with probability 1 - beta, and zeroes everything above, where
//
//   P{Z > eta} + beta * P{Z = eta} = eps,   0 <= beta < 1.
//
// At eps = 1 the whole variable is zeroed.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vldsrc/numeric.hpp"

namespace vldsrc {

class JointSource;

template <class Num>
struct Atom {
  double value = 0.0;
  Num mass = Num(0);
};

// Law of a nonnegative discrete random variable, atoms sorted by value.
template <class Num>
class ValueSpectrum {
 public:
  using Key = typename Arith<Num>::Key;

  ValueSpectrum() = default;

  // Sorts by value and merges equal values (exactly in rational mode, within
  // 1e-12 in float mode). Zero-mass atoms are dropped; negative values or
  // masses throw ValidationError.
  static ValueSpectrum from_atoms(std::vector<Atom<Num>> atoms);

  // Atoms keyed by an exact likelihood; the value of an atom is -log2(key).
  // Equal keys are merged exactly (rational) or within 1e-12 (float).
  static ValueSpectrum from_keyed(std::vector<std::pair<Key, Num>> keyed);

  const std::vector<Atom<Num>>& atoms() const { return atoms_; }
  // Present only for spectra built from likelihood keys; parallel to atoms().
  const std::vector<Key>& keys() const { return keys_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  Num total_mass() const;
  Num mean() const;
  double variance() const;

  // Throws InvariantViolation unless the masses sum to one.
  void check_normalized() const;

  std::string to_csv() const;

 private:
  std::vector<Atom<Num>> atoms_;
  std::vector<Key> keys_;
};

template <class Num>
struct CutoffSpec {
  double eta = 0.0;
  std::size_t eta_index = 0;
  Num beta = Num(0);
  Num eps = Num(0);
};

// Solves the cutoff equation: eta is the smallest atom value whose strict
// tail mass is at most eps. Requires 0 <= eps < 1 (DomainError otherwise).
template <class Num>
CutoffSpec<Num> cutoff_spec(const ValueSpectrum<Num>& spectrum, const Num& eps);

// E[<Z>_eps] by direct summation over the kept atoms; 0 at eps = 1.
template <class Num>
Num expected_cutoff(const ValueSpectrum<Num>& spectrum, const Num& eps);

// Same quantity through the integrated tail:
//   (1 - eps) E[Z] - int_eta^inf P{Z > t} dt - eps (eta - E[Z]).
template <class Num>
Num expected_cutoff_integral(const ValueSpectrum<Num>& spectrum, const Num& eps);

// Greedy fractional knapsack: minimise E[(1 - d(Z)) Z] over drop maps d with
// E[d(Z)] <= eps by dropping the largest values first.
template <class Num>
Num min_kept_oracle(const ValueSpectrum<Num>& spectrum, const Num& eps);

struct LiftOptions;

// Conditional cutoff entropy of the n-letter source: the cutoff is applied
// to the information density separately for every side-information value.
double cond_cutoff_entropy(const JointSource& src, const Rational& eps, unsigned n = 1);
double cond_cutoff_entropy(const JointSource& src, const Rational& eps, unsigned n,
                           const LiftOptions& options);

// Unconditional cutoff entropy: the cutoff is applied to the mixture law.
double uncond_cutoff_entropy(const JointSource& src, const Rational& eps, unsigned n = 1);
double uncond_cutoff_entropy(const JointSource& src, const Rational& eps, unsigned n,
                             const LiftOptions& options);

}  // namespace vldsrc
