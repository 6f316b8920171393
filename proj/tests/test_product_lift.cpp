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

#include <cmath>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "vldsrc/errors.hpp"
#include "vldsrc/fixtures.hpp"
#include "vldsrc/product_lift.hpp"

using namespace vldsrc;

TEST_CASE("composition counts") {
  CHECK(count_compositions(4, 3) == 15);
  CHECK(count_compositions(0, 3) == 1);
  std::size_t seen = 0;
  for_each_composition(5, 4, [&](const std::vector<unsigned>& c) {
    unsigned sum = 0;
    for (unsigned v : c) sum += v;
    CHECK(sum == 5);
    ++seen;
  });
  CHECK(BigInt(static_cast<unsigned long>(seen)) == count_compositions(5, 4));
  CHECK(joint_type_count(fixture("triple").source, 4) == 15);
  // Source B has 9 support pairs.
  CHECK(joint_type_count(fixture("source-b").source, 2) == 45);
}

TEST_CASE("type budget") {
  const JointSource src = fixture("binary-pair").source;
  LiftOptions small;
  small.max_types = 10;
  CHECK_THROWS_AS(check_type_budget(src, 8, small), BudgetExceeded);
  CHECK_NOTHROW(check_type_budget(src, 1, small));
  CHECK_THROWS_AS(iota_spectrum_n<Rational>(src, 8, small), BudgetExceeded);
  ::setenv("VLDSRC_MAX_TYPES", "1234", 1);
  CHECK(LiftOptions{}.max_types == 1234);
  ::setenv("VLDSRC_MAX_TYPES", "lots", 1);
  CHECK_THROWS_AS(default_max_types(), ValidationError);
  ::unsetenv("VLDSRC_MAX_TYPES");
  CHECK(default_max_types() == kDefaultMaxTypes);
}

TEST_CASE("joint types cover the product measure") {
  const JointSource src = fixture("source-b").source;
  Rational total = 0;
  std::size_t classes = 0;
  enumerate_joint_types<Rational>(src, 3, {}, [&](const TypeClass<Rational>& t) {
    total += Rational(t.weight) * t.likelihood;
    ++classes;
  });
  CHECK(total == 1);
  CHECK(BigInt(static_cast<unsigned long>(classes)) == joint_type_count(src, 3));
}

TEST_CASE("information-density spectrum moments are additive") {
  std::mt19937_64 rng(31);
  for (int s = 0; s < 30; ++s) {
    const JointSource src = vldsrc::testing::random_rational_source(rng, 2 + s % 3, 1 + s % 2);
    const MeasureSet m = measures(src);
    for (unsigned n : {1u, 3u, 5u}) {
      const auto exact = iota_spectrum_n<Rational>(src, n);
      CHECK_NOTHROW(exact.check_normalized());
      CHECK(std::abs(to_double(exact.mean()) - n * m.H) <= 1e-9);
      CHECK(std::abs(exact.variance() - n * m.V_u) <= 1e-9);
      const auto approx = iota_spectrum_n<double>(src.as_float(), n);
      CHECK(std::abs(approx.mean() - n * m.H) <= 1e-9);
      CHECK(std::abs(approx.variance() - n * m.V_u) <= 1e-9);
    }
  }
}

TEST_CASE("rank spectra are dominated by information density") {
  std::mt19937_64 rng(32);
  for (int s = 0; s < 30; ++s) {
    const JointSource src = vldsrc::testing::random_rational_source(rng, 3, 2);
    for (const auto& t : y_types(src, 4)) {
      const auto rank = floor_log_rank_spectrum<Rational>(src, t);
      const auto iota = iota_spectrum_n<Rational>(src, t);
      CHECK(rank.total_mass() == 1);
      CHECK(iota.total_mass() == 1);
      for (int k = 0; k < 10; ++k) {
        const Rational eps = vldsrc::testing::ratio(k, 10);
        CHECK(expected_cutoff(rank, eps) <= expected_cutoff(iota, eps));
      }
    }
  }
}

TEST_CASE("rank-interval splitting") {
  using A = Arith<Rational>;
  for (unsigned long first : {1ul, 2ul, 3ul, 7ul, 100ul}) {
    for (unsigned long count : {1ul, 5ul, 64ul, 1000ul}) {
      BigInt want = 0;
      for (unsigned long r = first; r < first + count; ++r) want += vldsrc::testing::floor_log2_u64(r);
      CHECK(floor_log2_range_sum<Rational>(A::Count(first), A::Count(count)) == want);
    }
  }
  // Overlaps of a class with the dyadic intervals add back to its size.
  const std::vector<RankClass<Rational>> classes = {{vldsrc::testing::ratio(1, 10), 3}, {vldsrc::testing::ratio(1, 20), 10},
                                                    {vldsrc::testing::ratio(1, 100), 5}};
  const auto spec = floor_log_rank_spectrum<Rational>(classes);
  CHECK(spec.total_mass() == vldsrc::testing::ratio(3, 10) + vldsrc::testing::ratio(10, 20) + vldsrc::testing::ratio(5, 100));
}

TEST_CASE("worker count does not change results") {
  const JointSource src = fixture("binary-pair").source;
  LiftOptions one, four;
  four.workers = 4;
  const auto a = pooled_floor_log_rank_spectrum<Rational>(src, 12, one);
  const auto b = pooled_floor_log_rank_spectrum<Rational>(src, 12, four);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.atoms()[i].mass == b.atoms()[i].mass);
  const auto e1 = cutoff_entropies(src, 12, {vldsrc::testing::ratio(1, 10)}, one);
  const auto e4 = cutoff_entropies(src, 12, {vldsrc::testing::ratio(1, 10)}, four);
  CHECK(e1[0].conditional == e4[0].conditional);
  CHECK(e1[0].unconditional == e4[0].unconditional);
}
