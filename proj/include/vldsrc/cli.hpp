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

// Command-line front end. Exit codes: 0 success, 2 invalid input,
// 3 type budget exceeded, 4 internal invariant violation.

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "vldsrc/numeric.hpp"
#include "vldsrc/source.hpp"

namespace vldsrc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInvariant = 4;

// args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "p/q" or a decimal; decimals are snapped to denominators <= 1e9.
Rational parse_eps(std::string_view text);
// Comma-separated eps values.
std::vector<Rational> parse_eps_list(std::string_view text);

// Blocklength lists: "8", "4,8,16", or "a:b" for a, 2a, 4a, ... up to b.
std::vector<unsigned> parse_n_list(std::string_view text);

// A fixture name or a path to a source document.
JointSource resolve_source(const std::string& spec);

}  // namespace vldsrc
