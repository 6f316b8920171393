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
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "vldsrc/errors.hpp"
#include "vldsrc/fixtures.hpp"
#include "vldsrc/source.hpp"

using namespace vldsrc;
using vldsrc::testing::random_rational_source;

TEST_CASE("source documents round-trip") {
  for (const auto& name : fixture_names()) {
    if (name == "geometric-zeta") continue;
    const JointSource src = fixture(name).source;
    const JointSource back = load_source(dump_source(src));
    CHECK(back.exact().joint == src.exact().joint);
    CHECK(back.x_alphabet() == src.x_alphabet());
    CHECK(back.y_alphabet() == src.y_alphabet());
  }
  const JointSource f = load_source(
      R"({"mode":"float","x_alphabet":["a","b"],"y_alphabet":["u"],"pmf":[[0.25],[0.75]]})");
  CHECK_FALSE(f.is_exact());
  CHECK(f.approx().joint[1] == 0.75);
}

TEST_CASE("invalid source documents") {
  CHECK_THROWS_AS(load_source("{"), ValidationError);
  CHECK_THROWS_AS(load_source(R"({"mode":"rational"})"), ValidationError);
  CHECK_THROWS_AS(
      load_source(R"({"mode":"rational","x_alphabet":["a"],"y_alphabet":["u"],"pmf":[["1/2"]]})"),
      ValidationError);
  CHECK_THROWS_AS(
      load_source(R"({"mode":"rational","x_alphabet":["a","a"],"y_alphabet":["u"],"pmf":[["1/2"],["1/2"]]})"),
      ValidationError);
  CHECK_THROWS_AS(
      load_source(R"({"mode":"float","x_alphabet":["a","b"],"y_alphabet":["u"],"pmf":[[-0.5],[1.5]]})"),
      ValidationError);
  CHECK_THROWS_AS(
      load_source(R"({"mode":"exact","x_alphabet":["a"],"y_alphabet":["u"],"pmf":[["1"]]})"),
      ValidationError);
}

TEST_CASE("zero-marginal side information is dropped") {
  const JointSource src = JointSource::from_rational(
      {"a", "b"}, {"u", "v"}, {{Rational(1, 2), 0}, {Rational(1, 2), 0}});
  CHECK(src.y_size() == 1);
  CHECK(src.y_alphabet().front() == "u");
}

TEST_CASE("information density") {
  const JointSource b = fixture("source-b").source;
  CHECK(info_density(b, "0", "0") == 0.0);
  CHECK(info_density(b, "5", "1") == doctest::Approx(3.0));
  CHECK_THROWS_AS(info_density(b, "5", "0"), DomainError);
}

TEST_CASE("sorted rows") {
  const JointSource src = JointSource::from_rational(
      {"a", "b", "c"}, {"u"}, {{Rational(1, 4)}, {Rational(1, 2)}, {Rational(1, 4)}});
  const auto rows = sorted_rows<Rational>(src);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].perm == std::vector<std::size_t>{1, 0, 2});
  // Sorting an already sorted source changes nothing.
  const JointSource sorted = JointSource::from_rational(
      {"b", "a", "c"}, {"u"}, {{Rational(1, 2)}, {Rational(1, 4)}, {Rational(1, 4)}});
  const auto again = sorted_rows<Rational>(sorted);
  CHECK(again[0].perm == std::vector<std::size_t>{0, 1, 2});
  CHECK(again[0].probs_sorted == rows[0].probs_sorted);
}

TEST_CASE("measures on reference sources") {
  const MeasureSet b = measures(fixture("source-b").source);
  CHECK(b.H == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(std::abs(b.V_c) < 1e-12);
  CHECK(b.V_u == doctest::Approx(2.25).epsilon(1e-14));
  const MeasureSet d = measures(fixture("dispersion-pair").source);
  CHECK(d.per_y[0].variance == doctest::Approx(0.25));
  CHECK(d.per_y[1].variance == doctest::Approx(1.0));
  CHECK(d.V_c == doctest::Approx(0.625));
  const MeasureSet p = measures(fixture("point-mass").source);
  CHECK(p.H == 0.0);
  CHECK(p.V_u == 0.0);
}

TEST_CASE("measures are label-permutation invariant and mode independent") {
  std::mt19937_64 rng(11);
  for (int s = 0; s < 200; ++s) {
    const JointSource src = random_rational_source(rng, 2 + s % 4, 1 + s % 3);
    const MeasureSet m = measures(src);
    // Reverse the side-information labels.
    std::vector<std::vector<Rational>> pmf(src.x_size());
    const std::size_t ny = src.y_size();
    for (std::size_t x = 0; x < src.x_size(); ++x) {
      for (std::size_t y = 0; y < ny; ++y) pmf[x].push_back(src.exact().joint[x * ny + ny - 1 - y]);
    }
    std::vector<std::string> ys(src.y_alphabet().rbegin(), src.y_alphabet().rend());
    const MeasureSet r = measures(JointSource::from_rational(src.x_alphabet(), ys, pmf));
    CHECK(std::abs(r.H - m.H) <= 1e-12);
    CHECK(std::abs(r.V_c - m.V_c) <= 1e-12);
    CHECK(std::abs(r.V_u - m.V_u) <= 1e-12);
    const MeasureSet f = measures(src.as_float());
    CHECK(std::abs(f.H - m.H) <= 1e-10);
    CHECK(std::abs(f.V_c - m.V_c) <= 1e-10);
    CHECK(std::abs(f.V_u - m.V_u) <= 1e-10);
    CHECK(std::abs(f.T_u - m.T_u) <= 1e-10);
  }
}

TEST_CASE("geometric-zeta truncation") {
  const JointSource g = truncated_geometric_zeta(5, 1e-6);
  CHECK(g.y_size() == 5);
  // Row y = 1 is a point mass at x = 1.
  CHECK(g.support(0).size() == 1);
  CHECK(measures(g).H > 0.0);
  // y = 1 alone is a point mass.
  CHECK(measures(truncated_geometric_zeta(1, 1e-9)).H == 0.0);
  // Geometric(1/2): varentropy 2 up to truncation.
  CHECK(measures(truncated_geometric_zeta(3, 1e-9)).per_y[1].variance == doctest::Approx(2.0).epsilon(1e-6));
  const MeasureSet wide = measures(truncated_geometric_zeta(50, 1e-9));
  CHECK(std::isfinite(wide.T_u));
  CHECK(wide.per_y[49].variance > wide.per_y[9].variance);
  CHECK_THROWS_AS(truncated_geometric_zeta(0, 1e-6), ValidationError);
  CHECK_THROWS_AS(truncated_geometric_zeta(5, 0.0), ValidationError);
}
