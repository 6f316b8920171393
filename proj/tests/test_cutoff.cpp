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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "vldsrc/cutoff.hpp"
#include "vldsrc/errors.hpp"
#include "vldsrc/fixtures.hpp"

using namespace vldsrc;

namespace {

ValueSpectrum<Rational> small_spectrum() {
  return ValueSpectrum<Rational>::from_atoms(
      {{1.0, vldsrc::testing::ratio(1, 2)}, {2.0, vldsrc::testing::ratio(1, 4)}, {3.0, vldsrc::testing::ratio(1, 4)}});
}

// Drops eps of mass from the top by direct subtraction.
double drop_from_top(std::vector<Atom<double>> atoms, double eps) {
  std::sort(atoms.begin(), atoms.end(), [](auto& a, auto& b) { return a.value > b.value; });
  double total = 0.0;
  for (auto& a : atoms) {
    const double take = std::min(eps, a.mass);
    eps -= take;
    total += a.value * (a.mass - take);
  }
  return total;
}

}  // namespace

TEST_CASE("hand-computed cutoffs") {
  const auto s = small_spectrum();
  const auto spec = cutoff_spec(s, vldsrc::testing::ratio(1, 4));
  CHECK(spec.eta == 2.0);
  CHECK(spec.beta == 0);
  CHECK(expected_cutoff(s, vldsrc::testing::ratio(1, 4)) == 1);
  CHECK(expected_cutoff(s, vldsrc::testing::ratio(3, 8)) == vldsrc::testing::ratio(3, 4));
  CHECK(cutoff_spec(s, vldsrc::testing::ratio(3, 8)).beta == vldsrc::testing::ratio(1, 2));
  CHECK(expected_cutoff(s, Rational(0)) == s.mean());
  CHECK(s.mean() == vldsrc::testing::ratio(7, 4));
  CHECK(expected_cutoff(s, Rational(1)) == 0);
  CHECK_THROWS_AS(cutoff_spec(s, Rational(1)), DomainError);
  CHECK_THROWS_AS(expected_cutoff(s, vldsrc::testing::ratio(-1, 2)), DomainError);
}

TEST_CASE("spectrum construction") {
  const auto s = ValueSpectrum<Rational>::from_atoms(
      {{2.0, vldsrc::testing::ratio(1, 4)}, {1.0, vldsrc::testing::ratio(1, 4)}, {2.0, vldsrc::testing::ratio(1, 2)}, {5.0, 0}});
  REQUIRE(s.size() == 2);
  CHECK(s.atoms()[0].value == 1.0);
  CHECK(s.atoms()[1].mass == vldsrc::testing::ratio(3, 4));
  CHECK_NOTHROW(s.check_normalized());
  CHECK_THROWS_AS(ValueSpectrum<Rational>::from_atoms({{1.0, vldsrc::testing::ratio(1, 2)}}).check_normalized(),
                  InvariantViolation);
  CHECK_THROWS_AS(ValueSpectrum<double>::from_atoms({{-1.0, 1.0}}), ValidationError);
  CHECK(s.to_csv().rfind("value,mass\n", 0) == 0);
}

TEST_CASE("oracle and dual forms agree with direct subtraction") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 500; ++s) {
    std::vector<Atom<double>> atoms(1 + s % 20);
    double total = 0.0;
    for (auto& a : atoms) total += a.mass = u(rng), a.value = 10 * u(rng);
    for (auto& a : atoms) a.mass /= total;
    const auto spec = ValueSpectrum<double>::from_atoms(atoms);
    for (double eps : {0.0, 0.05, 0.3, 0.5, 0.77, 0.99}) {
      const double want = drop_from_top(atoms, eps);
      CHECK(std::abs(expected_cutoff(spec, eps) - want) <= 1e-12);
      CHECK(std::abs(expected_cutoff_integral(spec, eps) - want) <= 1e-12);
      CHECK(std::abs(min_kept_oracle(spec, eps) - want) <= 1e-12);
    }
  }
}

TEST_CASE("rational and float cutoffs agree") {
  const auto s = small_spectrum();
  std::vector<Atom<double>> atoms;
  for (const auto& a : s.atoms()) atoms.push_back({a.value, to_double(a.mass)});
  const auto f = ValueSpectrum<double>::from_atoms(atoms);
  for (int k = 0; k < 20; ++k) {
    CHECK(to_double(expected_cutoff(s, vldsrc::testing::ratio(k, 20))) ==
          doctest::Approx(expected_cutoff(f, k / 20.0)).epsilon(1e-14));
    CHECK(expected_cutoff_integral(s, vldsrc::testing::ratio(k, 20)) == expected_cutoff(s, vldsrc::testing::ratio(k, 20)));
  }
}

TEST_CASE("monotone in eps and under stochastic dominance") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 200; ++s) {
    std::vector<Atom<double>> lo(8), hi(8);
    double total = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i].value = 5 * u(rng);
      hi[i].value = lo[i].value + u(rng);  // shifted up atom by atom
      total += lo[i].mass = hi[i].mass = u(rng);
    }
    for (std::size_t i = 0; i < lo.size(); ++i) lo[i].mass /= total, hi[i].mass /= total;
    const auto a = ValueSpectrum<double>::from_atoms(lo), b = ValueSpectrum<double>::from_atoms(hi);
    double prev = expected_cutoff(a, 0.0);
    for (int k = 1; k <= 20; ++k) {
      const double eps = k / 20.0;
      const double cur = expected_cutoff(a, eps);
      CHECK(cur <= prev + 1e-15);
      CHECK(expected_cutoff(b, eps) >= cur - 1e-12);
      prev = cur;
    }
    CHECK(prev == 0.0);
  }
}

TEST_CASE("conditioning increases the cutoff entropy") {
  std::mt19937_64 rng(23);
  for (int s = 0; s < 200; ++s) {
    const JointSource src = vldsrc::testing::random_rational_source(rng, 2 + s % 4, 1 + s % 3);
    for (int k = 0; k <= 10; ++k) {
      const Rational eps = vldsrc::testing::ratio(k, 10);
      CHECK(uncond_cutoff_entropy(src, eps) <= cond_cutoff_entropy(src, eps) + 1e-12);
    }
  }
  // Source B: conditional 3/2 (1 - eps), unconditional 3/2 - 3 eps for eps <= 1/2.
  const JointSource b = fixture("source-b").source;
  CHECK(cond_cutoff_entropy(b, vldsrc::testing::ratio(1, 4)) == doctest::Approx(1.125));
  CHECK(cond_cutoff_entropy(b, Rational(0)) == doctest::Approx(1.5));
  CHECK(uncond_cutoff_entropy(b, vldsrc::testing::ratio(1, 4)) == doctest::Approx(0.75));
}
