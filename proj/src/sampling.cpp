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

#include "vldsrc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "vldsrc/errors.hpp"
#include "vldsrc/product_lift.hpp"

namespace vldsrc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  engine_.seed(seq);
}

namespace {

struct BlockTotals {
  std::uint64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t errors = 0;
};

}  // namespace

SimulationStats run_trials(std::uint64_t trials, std::uint64_t seed, unsigned workers,
                           const std::function<TrialOutcome(Rng&)>& trial) {
  if (trials == 0) throw ValidationError("trials: must be at least 1");
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<BlockTotals> totals(blocks);
  auto work = [&](unsigned w) {
    for (std::uint64_t b = w; b < blocks; b += workers) {
      Rng rng(seed, b);
      const std::uint64_t first = b * kTrialsPerBlock;
      const std::uint64_t count = std::min(kTrialsPerBlock, trials - first);
      BlockTotals& t = totals[b];
      for (std::uint64_t i = 0; i < count; ++i) {
        TrialOutcome o = trial(rng);
        t.sum += o.value;
        t.sum_sq += o.value * o.value;
        t.errors += o.error ? 1 : 0;
      }
      t.count = count;
    }
  };
  if (workers == 1 || blocks == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  BlockTotals all;
  for (const auto& t : totals) {
    all.count += t.count;
    all.sum += t.sum;
    all.sum_sq += t.sum_sq;
    all.errors += t.errors;
  }
  SimulationStats s;
  const double n = static_cast<double>(all.count);
  s.trials = all.count;
  s.mean = all.sum / n;
  s.error_rate = static_cast<double>(all.errors) / n;
  if (all.count > 1) {
    double var = std::max(0.0, (all.sum_sq - n * s.mean * s.mean) / (n - 1.0));
    s.mean_stderr = std::sqrt(var / n);
    double p = s.error_rate;
    s.error_stderr = std::sqrt(p * (1.0 - p) * n / (n - 1.0) / n);
  }
  return s;
}

JointSampler::JointSampler(const JointSource& src) {
  pairs_ = joint_support(src);
  const std::size_t ny = src.y_size();
  double acc = 0.0;
  for (const auto& [x, y] : pairs_) {
    acc += src.approx().joint[x * ny + y];
    cumulative_.push_back(acc);
  }
}

std::pair<std::size_t, std::size_t> JointSampler::draw(Rng& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
  if (i >= pairs_.size()) i = pairs_.size() - 1;
  return pairs_[i];
}

}  // namespace vldsrc
