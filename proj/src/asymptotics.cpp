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

#include "vldsrc/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "vldsrc/errors.hpp"
#include "vldsrc/gaussian.hpp"

namespace vldsrc {

SecondOrderEstimate second_order(const JointSource& src, unsigned n, const Rational& eps,
                                 Criterion criterion) {
  if (n == 0) throw ValidationError("n: blocklength must be positive");
  if (eps < 0 || eps > 1) throw DomainError("eps = " + format_rational(eps) + " outside [0, 1]");
  const MeasureSet m = measures(src);
  SecondOrderEstimate e;
  e.n = n;
  e.eps = to_double(eps);
  e.criterion = criterion;
  e.variance = criterion == Criterion::kMax ? m.V_c : m.V_u;
  e.first_order = n * (1.0 - e.eps) * m.H;
  e.dispersion_term = std::sqrt(n * std::max(0.0, e.variance)) * gaussian_f(e.eps);
  e.approx = e.first_order - e.dispersion_term;
  if (criterion == Criterion::kMax) {
    for (std::size_t y = 0; y < m.per_y.size(); ++y) {
      if (m.per_y[y].variance <= 0.0) {
        e.warnings.push_back("V(X|y) = 0 at y = " + src.y_alphabet()[y] +
                             "; the varentropy is not bounded away from zero");
        break;
      }
    }
  }
  return e;
}

double exact_dispersion_mean(const JointSource& src, unsigned n, const LiftOptions& options) {
  if (n == 0) throw ValidationError("n: blocklength must be positive");
  const std::size_t ny = src.y_size();
  BigInt types = count_compositions(n, ny);
  if (types > BigInt(std::to_string(options.max_types))) {
    throw BudgetExceeded("blocklength " + std::to_string(n) + " needs " + types.get_str() +
                         " side-information types, over the budget of " +
                         std::to_string(options.max_types));
  }
  const MeasureSet m = measures(src);
  const auto& py = src.exact().marginal_y;
  std::vector<BigInt> fact(n + 1);
  fact[0] = 1;
  for (unsigned i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  // Symbols with equal varentropy are counted together, so a constant
  // varentropy gives exactly n * V inside the root.
  std::vector<double> levels;
  std::vector<std::size_t> level_of(ny);
  for (std::size_t y = 0; y < ny; ++y) {
    auto it = std::find(levels.begin(), levels.end(), m.per_y[y].variance);
    level_of[y] = static_cast<std::size_t>(it - levels.begin());
    if (it == levels.end()) levels.push_back(m.per_y[y].variance);
  }
  std::vector<std::pair<double, Rational>> terms;
  std::vector<unsigned> per_level(levels.size());
  for_each_composition(n, ny, [&](const std::vector<unsigned>& t) {
    BigInt den = 1;
    Rational weight = 1;
    std::fill(per_level.begin(), per_level.end(), 0u);
    for (std::size_t y = 0; y < ny; ++y) {
      den *= fact[t[y]];
      weight *= Arith<Rational>::key_pow(py[y], t[y]);
      per_level[level_of[y]] += t[y];
    }
    double v = 0.0;
    for (std::size_t l = 0; l < levels.size(); ++l) v += per_level[l] * levels[l];
    BigInt multi;
    mpz_divexact(multi.get_mpz_t(), fact[n].get_mpz_t(), den.get_mpz_t());
    terms.emplace_back(std::sqrt(std::max(0.0, v)), weight * Rational(multi));
  });
  // Equal roots share one exact weight before the float sum.
  return grouped_sum(std::move(terms));
}

ResidualReport residual_scan(const JointSource& src, const std::vector<Rational>& eps_list,
                             const std::vector<Criterion>& criteria,
                             const std::vector<unsigned>& n_list, std::optional<double> threshold,
                             const LiftOptions& options, bool float_lstar) {
  ResidualReport report;
  report.threshold = threshold;
  std::vector<unsigned> ns = n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::vector<Rational> eps_sorted = eps_list;
  std::sort(eps_sorted.begin(), eps_sorted.end());
  eps_sorted.erase(std::unique(eps_sorted.begin(), eps_sorted.end()), eps_sorted.end());
  std::vector<Criterion> crits = criteria;
  std::sort(crits.begin(), crits.end());
  crits.erase(std::unique(crits.begin(), crits.end()), crits.end());
  const MeasureSet m = measures(src);
  const JointSource float_src = src.as_float();

  for (unsigned n : ns) {
    std::vector<LstarPair> lstars;
    std::vector<CutoffEntropyPair> entropies;
    double dispersion_mean = 0.0;
    std::string note;
    bool ok = true;
    try {
      lstars = lstar_grid(float_lstar ? float_src : src, n, eps_sorted, options);
      entropies = cutoff_entropies(float_src, n, eps_sorted, options);
      dispersion_mean = exact_dispersion_mean(src, n, options);
    } catch (const BudgetExceeded& e) {
      ok = false;
      note = e.what();
    }
    for (std::size_t k = 0; k < eps_sorted.size(); ++k) {
      for (Criterion c : crits) {
        ResidualRow row;
        row.n = n;
        row.eps = to_double(eps_sorted[k]);
        row.criterion = c;
        row.computed = ok;
        row.note = note;
        if (ok) {
          const SecondOrderEstimate est = second_order(src, n, eps_sorted[k], c);
          row.exact = c == Criterion::kMax ? lstars[k].max : lstars[k].avg;
          row.first_order = est.first_order;
          row.dispersion_term = est.dispersion_term;
          row.approx = est.approx;
          row.residual = row.exact.value - row.approx;
          const double log_n = std::log2(static_cast<double>(n));
          row.residual_per_log_n = n > 1 ? row.residual / log_n : std::nan("");
          row.residual_per_sqrt_n = row.residual / std::sqrt(static_cast<double>(n));
          const double fg = gaussian_f(row.eps);
          if (c == Criterion::kMax) {
            row.cutoff_entropy = entropies[k].conditional;
            row.cutoff_approx = est.first_order - dispersion_mean * fg;
          } else {
            row.cutoff_entropy = entropies[k].unconditional;
            row.cutoff_approx = est.first_order - std::sqrt(n * m.V_u) * fg;
          }
          row.cutoff_residual = row.cutoff_entropy - row.cutoff_approx;
          if (threshold && n > 1 && std::abs(row.residual_per_log_n) > *threshold) {
            row.flagged = true;
            report.any_flagged = true;
          }
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

}  // namespace vldsrc
