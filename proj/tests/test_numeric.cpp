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
#include "vldsrc/errors.hpp"
#include "vldsrc/numeric.hpp"

using namespace vldsrc;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("3") == 3);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
  CHECK_THROWS_AS(parse_rational(""), ValidationError);
}

TEST_CASE("probability parsing snaps decimals") {
  CHECK(parse_probability("0.1") == Rational(1, 10));
  CHECK(parse_probability("1/6") == Rational(1, 6));
  CHECK(parse_probability("0") == 0);
  CHECK(parse_probability("1") == 1);
  CHECK_THROWS_AS(parse_probability("-0.1"), ValidationError);
  CHECK_THROWS_AS(parse_probability("3/2"), ValidationError);
}

TEST_CASE("formatting round-trips") {
  for (const char* text : {"0", "1", "1/3", "13/36", "123456789/987654320"}) {
    CHECK(format_rational(parse_rational(text)) == text);
  }
}

TEST_CASE("conversion to double rounds to nearest") {
  CHECK(to_double(Rational(1, 10)) == 0.1);
  CHECK(to_double(Rational(-1, 10)) == -0.1);
  CHECK(to_double(Rational(2, 3)) == 2.0 / 3.0);
  CHECK(to_double(Rational(1, 3)) == 1.0 / 3.0);
  CHECK(to_double(Rational(7)) == 7.0);
}

TEST_CASE("exact logarithms") {
  CHECK(log2_rational(Rational(1, 8)) == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(log2_rational(Rational(5, 2)) == doctest::Approx(std::log2(2.5)).epsilon(1e-15));
  BigInt big = 1;
  big <<= 4000;
  CHECK(log2_bigint(big) == doctest::Approx(4000.0).epsilon(1e-15));
  CHECK(log2_bigint(big * 3) == doctest::Approx(4000.0 + std::log2(3.0)).epsilon(1e-15));
}

TEST_CASE("grouped sums are exact for equal values") {
  std::vector<std::pair<double, Rational>> terms = {
      {0.7, Rational(1, 3)}, {0.7, Rational(1, 3)}, {0.7, Rational(1, 3)}};
  CHECK(grouped_sum(terms) == 0.7);
}

TEST_CASE("floating arithmetic helpers") {
  using A = Arith<double>;
  CHECK(A::floor_log2(1.0) == 0);
  CHECK(A::floor_log2(7.0) == 2);
  CHECK(A::floor_log2(8.0) == 3);
  CHECK(A::binomial(10, 3) == 120.0);
  CHECK(A::binomial(60, 30) == 118264581564861424.0);
  CHECK(Arith<Rational>::binomial(60, 30) == BigInt("118264581564861424"));
}
