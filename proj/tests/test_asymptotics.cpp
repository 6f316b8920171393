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

#include "doctest.h"
#include "support.hpp"
#include "vldsrc/asymptotics.hpp"
#include "vldsrc/errors.hpp"
#include "vldsrc/fixtures.hpp"
#include "vldsrc/gaussian.hpp"

using vldsrc::testing::ratio;

using namespace vldsrc;

TEST_CASE("gaussian functions") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
  for (int k = -6; k <= 6; ++k) {
    for (double p : {std::pow(10.0, -std::abs(k)), 0.5 + k / 13.0}) {
      if (p < 1e-6 || p > 1 - 1e-6) continue;
      CHECK(std::abs(normal_cdf(normal_quantile(p)) - p) <= 1e-9);
      CHECK(std::abs(normal_cdf(normal_quantile(1 - p)) - (1 - p)) <= 1e-9);
    }
  }
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
  const double peak = 1.0 / std::sqrt(2.0 * M_PI);
  CHECK(gaussian_f(0.5) == doctest::Approx(peak).epsilon(1e-15));
  for (int k = 1; k < 100; ++k) CHECK(gaussian_f(k / 100.0) <= peak + 1e-16);
  CHECK(gaussian_f(0.0) == 0.0);
  CHECK(gaussian_f(1.0) == 0.0);
  CHECK(gaussian_f(0.1) == doctest::Approx(gaussian_f(0.9)).epsilon(1e-14));
}

TEST_CASE("second-order estimate") {
  const JointSource src = fixture("dispersion-pair").source;
  const MeasureSet m = measures(src);
  for (int k = 1; k < 10; ++k) {
    const Rational eps = vldsrc::testing::ratio(k, 10);
    const auto mx = second_order(src, 100, eps, Criterion::kMax);
    const auto av = second_order(src, 100, eps, Criterion::kAvg);
    CHECK(m.V_u > m.V_c);
    CHECK(av.approx <= mx.approx);
    CHECK(mx.first_order == doctest::Approx(100 * (1 - k / 10.0) * m.H));
    CHECK(mx.dispersion_term == doctest::Approx(std::sqrt(100 * m.V_c) * gaussian_f(k / 10.0)));
  }
  const auto b = second_order(fixture("source-b").source, 100, ratio(1, 10), Criterion::kAvg);
  CHECK(b.approx == doctest::Approx(135.0 - 15.0 * gaussian_f(0.1)));
  CHECK(gaussian_f(0.1) == doctest::Approx(0.175498).epsilon(1e-6));
  CHECK(exact_dispersion_mean(fixture("source-b").source, 4) == 0.0);
  CHECK(second_order(fixture("source-b").source, 10, vldsrc::testing::ratio(1, 4), Criterion::kMax).warnings.size() == 1);
  CHECK(second_order(fixture("source-b").source, 10, vldsrc::testing::ratio(1, 4), Criterion::kAvg).warnings.empty());
  CHECK_THROWS_AS(second_order(src, 10, vldsrc::testing::ratio(3, 2), Criterion::kAvg), DomainError);
}

TEST_CASE("dispersion mean over side-information types") {
  const JointSource src = fixture("dispersion-pair").source;
  CHECK(exact_dispersion_mean(src, 1) == doctest::Approx(0.75).epsilon(1e-15));
  const double two = (std::sqrt(0.5) + 2 * std::sqrt(1.25) + std::sqrt(2.0)) / 4;
  CHECK(exact_dispersion_mean(src, 2) == doctest::Approx(two).epsilon(1e-15));
  for (unsigned n : {1u, 4u, 50u}) {
    CHECK(exact_dispersion_mean(src, n) < std::sqrt(n * measures(src).V_c));
  }
  LiftOptions tiny;
  tiny.max_types = 5;
  CHECK_THROWS_AS(exact_dispersion_mean(src, 10, tiny), BudgetExceeded);
}

TEST_CASE("point mass has zero residuals") {
  const ResidualReport r = residual_scan(fixture("point-mass").source, {ratio(1, 2)},
                                         {Criterion::kMax, Criterion::kAvg}, {4, 8, 16});
  REQUIRE(r.rows.size() == 6);
  for (const auto& row : r.rows) {
    CHECK(row.computed);
    CHECK(row.residual == 0.0);
  }
}

TEST_CASE("residual scan") {
  const JointSource src = fixture("binary-pair").source;
  LiftOptions options;
  options.max_types = 500;
  const ResidualReport r = residual_scan(src, {vldsrc::testing::ratio(1, 2), vldsrc::testing::ratio(1, 10)},
                                         {Criterion::kAvg, Criterion::kMax}, {64, 4, 8}, 0.01,
                                         options);
  REQUIRE(r.rows.size() == 12);
  CHECK(r.rows.front().n == 4);
  CHECK(r.rows.front().eps == 0.1);
  CHECK(r.rows.front().criterion == Criterion::kMax);
  CHECK(r.any_flagged);
  const ResidualRow& last = r.rows.back();
  CHECK(last.n == 64);
  CHECK_FALSE(last.computed);
  CHECK(last.note.find("--max-types") != std::string::npos);
  const ResidualRow& row = r.rows[2];
  CHECK(row.computed);
  CHECK(row.residual == doctest::Approx(row.exact.value - row.approx));
  CHECK(row.residual_per_log_n == doctest::Approx(row.residual / 2));
}
