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

// Named reference sources.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vldsrc/source.hpp"

namespace vldsrc {

struct Fixture {
  std::string name;
  std::string note;
  JointSource source;
};

// Canonical fixture names.
std::vector<std::string> fixture_names();

bool has_fixture(std::string_view name);

// Throws ValidationError for unknown names. "appendix-i" is accepted as an
// alias of "triple".
Fixture fixture(std::string_view name);

// Y ~ 6 / (pi^2 y^2) on {1, ..., y_max} (renormalised) and, given Y = y,
// X ~ Geometric(1/y) on {1, 2, ...}. Every row is cut at the first x whose
// remaining tail is at most tail_tol and then renormalised. Float mode.
JointSource truncated_geometric_zeta(unsigned y_max, double tail_tol);

}  // namespace vldsrc
