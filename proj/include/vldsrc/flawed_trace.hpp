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

// Replays a well-known but flawed argument that the deterministic
// "keep the top-M symbols" code is optimal without side information. The
// argument transforms an arbitrary stochastic code in three steps; on the
// three-symbol counterexample the final code breaks the error constraint.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vldsrc/numeric.hpp"

namespace vldsrc {

// Symbols are 0-based indices into a non-increasing pmf. Codewords are
// binary strings; the empty string is the empty codeword.
struct StochasticCode {
  // encoder[m] lists (codeword, probability) pairs.
  std::vector<std::vector<std::pair<std::string, Rational>>> encoder;
  // Codewords absent from the map decode to an arbitrary (wrong) symbol.
  std::map<std::string, std::size_t> decoder;
};

Rational mean_length(const StochasticCode& code, const std::vector<Rational>& pmf);
Rational error_probability(const StochasticCode& code, const std::vector<Rational>& pmf);

struct TraceStep {
  std::string label;
  StochasticCode code;
  Rational mean_length;
  Rational error;
  bool violates = false;  // error > eps
};

// Steps: "initial"; "prune" (mismatched non-empty codewords move to the
// empty codeword); "interchange" (for i = 1..M swap symbol i with the symbol
// decoded from b_i); "assign-remaining" (symbols past M always send the
// empty codeword). M is the largest k with top-k mass <= 1 - eps.
std::vector<TraceStep> flawed_procedure_trace(const std::vector<Rational>& pmf,
                                              const Rational& eps,
                                              const StochasticCode& initial);

// The stochastic code used as the starting point for the (1/2, 1/3, 1/6)
// counterexample at eps = 1/6.
StochasticCode counterexample_code();

}  // namespace vldsrc
