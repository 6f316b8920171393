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

#include "vldsrc/fixtures.hpp"

#include <cmath>

#include "vldsrc/errors.hpp"

namespace vldsrc {

namespace {

Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::vector<std::string> labels(std::size_t count, std::size_t first = 0) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(std::to_string(first + i));
  return out;
}

JointSource triple() {
  return JointSource::from_rational({"1", "2", "3"}, {"0"}, {{q(1, 2)}, {q(1, 3)}, {q(1, 6)}});
}

// Y uniform on {0, 1}; X = 0 given Y = 0; X uniform on eight symbols given Y = 1.
JointSource source_b() {
  std::vector<std::vector<Rational>> pmf(8, {q(0, 1), q(1, 16)});
  pmf[0][0] = q(1, 2);
  return JointSource::from_rational(labels(8), {"0", "1"}, pmf);
}

JointSource independent_binary() {
  return JointSource::from_rational({"0", "1"}, {"0", "1"},
                                    {{q(1, 4), q(1, 4)}, {q(1, 4), q(1, 4)}});
}

JointSource point_mass() { return JointSource::from_rational({"0"}, {"0"}, {{q(1, 1)}}); }

// Y uniform; X | 0 = (1/2, 1/4, 1/4, 0, 0) and X | 1 = (1/2, 1/8, 1/8, 1/8, 1/8),
// with varentropies 1/4 and 1.
JointSource dispersion_pair() {
  return JointSource::from_rational(labels(5), {"0", "1"},
                                    {{q(1, 4), q(1, 4)},
                                     {q(1, 8), q(1, 16)},
                                     {q(1, 8), q(1, 16)},
                                     {q(0, 1), q(1, 16)},
                                     {q(0, 1), q(1, 16)}});
}

// Y uniform; X | 0 = (7/8, 1/8) and X | 1 = (2/3, 1/3).
JointSource binary_pair() {
  return JointSource::from_rational({"0", "1"}, {"0", "1"},
                                    {{q(7, 16), q(1, 3)}, {q(1, 16), q(1, 6)}});
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"triple",    "source-b",        "independent-binary", "point-mass",
          "dispersion-pair", "binary-pair", "geometric-zeta"};
}

bool has_fixture(std::string_view name) {
  if (name == "appendix-i") return true;
  for (const auto& n : fixture_names()) {
    if (n == name) return true;
  }
  return false;
}

Fixture fixture(std::string_view name) {
  if (name == "triple" || name == "appendix-i") {
    return {"triple", "P = (1/2, 1/3, 1/6) without side information", triple()};
  }
  if (name == "source-b") {
    return {"source-b", "Y uniform on {0,1}; X degenerate given 0, uniform on 8 given 1",
            source_b()};
  }
  if (name == "independent-binary") {
    return {"independent-binary", "X and Y independent uniform bits", independent_binary()};
  }
  if (name == "point-mass") return {"point-mass", "single outcome", point_mass()};
  if (name == "dispersion-pair") {
    return {"dispersion-pair", "Y uniform; per-y varentropies 1/4 and 1", dispersion_pair()};
  }
  if (name == "binary-pair") {
    return {"binary-pair", "Y uniform; X|0 = (7/8, 1/8), X|1 = (2/3, 1/3)", binary_pair()};
  }
  if (name == "geometric-zeta") {
    return {"geometric-zeta",
            "Y ~ 6/(pi^2 y^2) on 1..50, X|y ~ Geometric(1/y), rows cut at tail 1e-9",
            truncated_geometric_zeta(50, 1e-9)};
  }
  throw ValidationError("unknown fixture '" + std::string(name) + "'");
}

JointSource truncated_geometric_zeta(unsigned y_max, double tail_tol) {
  if (y_max < 1) throw ValidationError("y_max: must be at least 1");
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw ValidationError("tail_tol: must lie in (0, 1)");
  }
  // Row lengths: smallest K with (1 - 1/y)^K <= tail_tol.
  std::vector<std::size_t> length(y_max + 1, 1);
  std::size_t nx = 1;
  for (unsigned y = 2; y <= y_max; ++y) {
    const double stay = 1.0 - 1.0 / y;
    length[y] = static_cast<std::size_t>(std::ceil(std::log(tail_tol) / std::log(stay)));
    while (length[y] > 1 && std::pow(stay, static_cast<double>(length[y] - 1)) <= tail_tol) {
      --length[y];
    }
    nx = std::max(nx, length[y]);
  }
  double zeta = 0.0;
  for (unsigned y = 1; y <= y_max; ++y) zeta += 1.0 / (static_cast<double>(y) * y);
  std::vector<std::vector<double>> pmf(nx, std::vector<double>(y_max, 0.0));
  for (unsigned y = 1; y <= y_max; ++y) {
    const double py = 1.0 / (static_cast<double>(y) * y) / zeta;
    const double p = 1.0 / y;
    double kept = 0.0;
    std::vector<double> row(length[y]);
    for (std::size_t x = 0; x < length[y]; ++x) {
      row[x] = p * std::pow(1.0 - p, static_cast<double>(x));
      kept += row[x];
    }
    for (std::size_t x = 0; x < length[y]; ++x) pmf[x][y - 1] = py * row[x] / kept;
  }
  double total = 0.0;
  for (const auto& r : pmf) {
    for (double v : r) total += v;
  }
  for (auto& r : pmf) {
    for (double& v : r) v /= total;
  }
  return JointSource::from_float(labels(nx, 1), labels(y_max, 1), pmf);
}

}  // namespace vldsrc
