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

#include "vldsrc/flawed_trace.hpp"

#include "vldsrc/coding.hpp"
#include "vldsrc/errors.hpp"

namespace vldsrc {

namespace {

void check_code(const StochasticCode& code, const std::vector<Rational>& pmf) {
  if (code.encoder.size() != pmf.size()) {
    throw ValidationError("code: encoder must have one row per source symbol");
  }
  for (std::size_t m = 0; m < code.encoder.size(); ++m) {
    Rational total = 0;
    for (const auto& [w, p] : code.encoder[m]) {
      codeword_index(w);
      if (p < 0) throw ValidationError("code: negative encoder probability");
      total += p;
    }
    if (total != 1) {
      throw ValidationError("code: encoder row " + std::to_string(m) + " does not sum to 1");
    }
  }
}

// Adds probability to a codeword, keeping rows free of duplicates.
void add_to(std::vector<std::pair<std::string, Rational>>& row, const std::string& w,
            const Rational& p) {
  for (auto& [word, q] : row) {
    if (word == w) {
      q += p;
      return;
    }
  }
  row.emplace_back(w, p);
}

TraceStep snapshot(std::string label, const StochasticCode& code, const std::vector<Rational>& pmf,
                   const Rational& eps) {
  TraceStep s;
  s.label = std::move(label);
  s.code = code;
  s.mean_length = mean_length(code, pmf);
  s.error = error_probability(code, pmf);
  s.violates = s.error > eps;
  return s;
}

}  // namespace

Rational mean_length(const StochasticCode& code, const std::vector<Rational>& pmf) {
  Rational total = 0;
  for (std::size_t m = 0; m < pmf.size(); ++m) {
    for (const auto& [w, p] : code.encoder[m]) {
      total += pmf[m] * p * static_cast<unsigned long>(w.size());
    }
  }
  return total;
}

Rational error_probability(const StochasticCode& code, const std::vector<Rational>& pmf) {
  Rational total = 0;
  for (std::size_t m = 0; m < pmf.size(); ++m) {
    for (const auto& [w, p] : code.encoder[m]) {
      auto it = code.decoder.find(w);
      if (it == code.decoder.end() || it->second != m) total += pmf[m] * p;
    }
  }
  return total;
}

std::vector<TraceStep> flawed_procedure_trace(const std::vector<Rational>& pmf,
                                              const Rational& eps,
                                              const StochasticCode& initial) {
  if (eps < 0 || eps >= 1) throw DomainError("eps = " + format_rational(eps) + " outside [0, 1)");
  Rational total = 0;
  for (std::size_t m = 0; m < pmf.size(); ++m) {
    if (pmf[m] < 0) throw ValidationError("pmf: negative mass");
    if (m > 0 && pmf[m] > pmf[m - 1]) throw ValidationError("pmf: masses must be non-increasing");
    total += pmf[m];
  }
  if (total != 1) throw ValidationError("pmf: non-unit total");
  check_code(initial, pmf);

  std::size_t big_m = 0;
  Rational top = 0;
  while (big_m < pmf.size() && top + pmf[big_m] <= 1 - eps) top += pmf[big_m++];

  std::vector<TraceStep> trace;
  StochasticCode code = initial;
  trace.push_back(snapshot("initial", code, pmf, eps));

  for (std::size_t m = 0; m < code.encoder.size(); ++m) {
    std::vector<std::pair<std::string, Rational>> row;
    for (const auto& [w, p] : code.encoder[m]) {
      auto it = code.decoder.find(w);
      const bool mismatch = it == code.decoder.end() || it->second != m;
      add_to(row, (!w.empty() && mismatch) ? std::string() : w, p);
    }
    code.encoder[m] = std::move(row);
  }
  trace.push_back(snapshot("prune", code, pmf, eps));

  for (std::size_t i = 0; i < big_m; ++i) {
    auto it = code.decoder.find(codeword(BigInt(static_cast<unsigned long>(i + 1))));
    if (it == code.decoder.end()) continue;
    const std::size_t m0 = it->second;
    if (m0 == i) continue;
    std::swap(code.encoder[m0], code.encoder[i]);
    for (auto& [w, target] : code.decoder) {
      if (target == m0) {
        target = i;
      } else if (target == i) {
        target = m0;
      }
    }
  }
  trace.push_back(snapshot("interchange", code, pmf, eps));

  for (std::size_t m = big_m; m < code.encoder.size(); ++m) {
    code.encoder[m] = {{std::string(), Rational(1)}};
  }
  trace.push_back(snapshot("assign-remaining", code, pmf, eps));
  return trace;
}

StochasticCode counterexample_code() {
  StochasticCode code;
  code.encoder = {
      {{"0", Rational(5, 6)}, {"1", Rational(1, 6)}},
      {{"", Rational(1)}},
      {{"0", Rational(1, 2)}, {"1", Rational(1, 2)}},
  };
  code.decoder = {{"0", 0}, {"", 1}, {"1", 2}};
  return code;
}

}  // namespace vldsrc
