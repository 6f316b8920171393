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

// Finite correlated sources (X, Y) and their single-letter information
// measures.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vldsrc/numeric.hpp"

namespace vldsrc {

enum class ProbabilityMode { kRational, kFloat };

std::string_view mode_name(ProbabilityMode mode);

// Probability tables of a source in one arithmetic. Indexing is x-major:
// joint[x * y_size + y].
template <class Num>
struct SourceTables {
  std::vector<Num> joint;
  std::vector<Num> marginal_y;
  std::vector<Num> conditional;  // P(x | y)
};

// Finite joint pmf of (X, Y). Immutable after construction.
//
// Side-information symbols with zero marginal mass are dropped on
// construction. Zero-mass x symbols stay in the alphabet but are excluded
// from every conditional support.
class JointSource {
 public:
  // pmf[i][j] = P(X = x_i, Y = y_j). The total must be exactly one.
  static JointSource from_rational(std::vector<std::string> x_alphabet,
                                   std::vector<std::string> y_alphabet,
                                   const std::vector<std::vector<Rational>>& pmf);
  // The total must be within 1e-12 of one; masses are renormalised.
  static JointSource from_float(std::vector<std::string> x_alphabet,
                                std::vector<std::string> y_alphabet,
                                const std::vector<std::vector<double>>& pmf);

  ProbabilityMode mode() const { return mode_; }
  bool is_exact() const { return mode_ == ProbabilityMode::kRational; }
  const std::vector<std::string>& x_alphabet() const { return x_alphabet_; }
  const std::vector<std::string>& y_alphabet() const { return y_alphabet_; }
  std::size_t x_size() const { return x_alphabet_.size(); }
  std::size_t y_size() const { return y_alphabet_.size(); }

  std::size_t x_index(std::string_view label) const;
  std::size_t y_index(std::string_view label) const;

  // Exact tables exist in both modes; in float mode they hold the exact
  // binary values of the normalised input.
  const SourceTables<Rational>& exact() const { return exact_; }
  const SourceTables<double>& approx() const { return approx_; }

  template <class Num>
  const SourceTables<Num>& tables() const;

  // x indices with positive conditional mass given y, ascending.
  const std::vector<std::size_t>& support(std::size_t y) const { return support_[y]; }
  std::size_t joint_support_size() const;

  // Same source evaluated in float64 arithmetic.
  JointSource as_float() const;

 private:
  JointSource() = default;
  void finish(const std::vector<Rational>& joint);

  ProbabilityMode mode_ = ProbabilityMode::kRational;
  std::vector<std::string> x_alphabet_;
  std::vector<std::string> y_alphabet_;
  SourceTables<Rational> exact_;
  SourceTables<double> approx_;
  std::vector<std::vector<std::size_t>> support_;
};

template <>
inline const SourceTables<Rational>& JointSource::tables<Rational>() const {
  return exact_;
}
template <>
inline const SourceTables<double>& JointSource::tables<double>() const {
  return approx_;
}

// Parses the JSON source document:
//   {"mode": "rational"|"float", "x_alphabet": [...], "y_alphabet": [...],
//    "pmf": [[row per x, column per y]]}
// Rational entries are strings "p/q"; float entries are numbers.
JointSource load_source(std::string_view document);
JointSource load_source_file(const std::string& path);
std::string dump_source(const JointSource& src);

// -log2 P(x | y) in bits. Throws DomainError when P(x | y) = 0.
double info_density(const JointSource& src, std::size_t x, std::size_t y);
double info_density(const JointSource& src, std::string_view x, std::string_view y);

template <class Num>
struct ConditionalRow {
  std::size_t y = 0;
  std::vector<Num> probs_sorted;   // non-increasing
  std::vector<std::size_t> perm;   // rank (0-based) -> x index
};

// One row per side-information symbol. Masses in non-increasing order; ties
// keep ascending x index.
template <class Num>
std::vector<ConditionalRow<Num>> sorted_rows(const JointSource& src);

struct PerSymbolMeasures {
  double entropy = 0.0;        // H(X | y)
  double variance = 0.0;       // V(X | y)
  double third_moment = 0.0;   // T(X | y)
};

struct MeasureSet {
  double H = 0.0;
  double V_c = 0.0;
  double V_u = 0.0;
  double T_u = 0.0;
  std::vector<PerSymbolMeasures> per_y;
};

// All measures in bits. Uses the source's own arithmetic for the weights.
MeasureSet measures(const JointSource& src);

}  // namespace vldsrc
