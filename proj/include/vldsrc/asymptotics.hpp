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

// Second-order (dispersion) approximations of the optimal length,
//
//   L*(n, eps) ~ n (1 - eps) H(X|Y) - sqrt(n V) f_G(eps),
//
// with V the conditional varentropy under the maximum criterion and the
// unconditional one under the average criterion, plus residual scans that
// compare the approximation with exact values.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vldsrc/coding.hpp"
#include "vldsrc/product_lift.hpp"
#include "vldsrc/source.hpp"

namespace vldsrc {

struct SecondOrderEstimate {
  unsigned n = 1;
  double eps = 0.0;
  Criterion criterion = Criterion::kAvg;
  double variance = 0.0;         // V_c or V_u
  double first_order = 0.0;      // n (1 - eps) H
  double dispersion_term = 0.0;  // sqrt(n V) f_G(eps)
  double approx = 0.0;
  std::vector<std::string> warnings;
};

SecondOrderEstimate second_order(const JointSource& src, unsigned n, const Rational& eps,
                                 Criterion criterion);

// E[sqrt(sum_i V(X | Y_i))] over Y^n, summed exactly over y-types.
double exact_dispersion_mean(const JointSource& src, unsigned n, const LiftOptions& options = {});

struct ResidualRow {
  unsigned n = 0;
  double eps = 0.0;
  Criterion criterion = Criterion::kAvg;
  bool computed = false;  // false when n exceeded the type budget
  std::string note;
  Quantity exact;
  double first_order = 0.0;
  double dispersion_term = 0.0;
  double approx = 0.0;
  double residual = 0.0;  // exact - approx
  double residual_per_log_n = 0.0;
  double residual_per_sqrt_n = 0.0;
  // Cutoff entropy against its own expansion, whose dispersion term uses
  // exact_dispersion_mean (maximum) or sqrt(n V_u) (average).
  double cutoff_entropy = 0.0;
  double cutoff_approx = 0.0;
  double cutoff_residual = 0.0;
  bool flagged = false;  // |residual| / log2 n above the threshold
};

struct ResidualReport {
  std::vector<ResidualRow> rows;
  std::optional<double> threshold;
  bool any_flagged = false;
};

// Rows ordered by (n, eps, criterion). Cutoff entropies are evaluated in
// float arithmetic for speed; L* uses the source's own arithmetic unless
// `float_lstar` is set.
ResidualReport residual_scan(const JointSource& src, const std::vector<Rational>& eps_list,
                             const std::vector<Criterion>& criteria,
                             const std::vector<unsigned>& n_list,
                             std::optional<double> threshold = std::nullopt,
                             const LiftOptions& options = {}, bool float_lstar = false);

}  // namespace vldsrc
