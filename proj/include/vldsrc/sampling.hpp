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

// Seeded Monte Carlo with worker-count independent results.
//
// Trials are cut into fixed-size blocks. Block b draws from its own
// generator seeded by mixing (seed, b), and block totals are combined in
// block order, so the output depends only on (seed, trials).

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "vldsrc/source.hpp"

namespace vldsrc {

inline constexpr std::uint64_t kTrialsPerBlock = 4096;

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct TrialOutcome {
  double value = 0.0;
  bool error = false;
};

struct SimulationStats {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double mean_stderr = 0.0;
  double error_rate = 0.0;
  double error_stderr = 0.0;
};

// Runs `trials` independent trials. `trial` must only use the Rng it is
// handed; it may be called concurrently from several threads.
SimulationStats run_trials(std::uint64_t trials, std::uint64_t seed, unsigned workers,
                           const std::function<TrialOutcome(Rng&)>& trial);

// Draws (x, y) pairs from the joint pmf.
class JointSampler {
 public:
  explicit JointSampler(const JointSource& src);
  std::pair<std::size_t, std::size_t> draw(Rng& rng) const;

 private:
  std::vector<double> cumulative_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

}  // namespace vldsrc
