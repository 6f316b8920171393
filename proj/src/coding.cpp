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

#include "vldsrc/coding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vldsrc/cutoff.hpp"
#include "vldsrc/errors.hpp"
#include "plan_walk.hpp"

namespace vldsrc {

std::string_view criterion_name(Criterion c) { return c == Criterion::kMax ? "max" : "avg"; }

Criterion parse_criterion(std::string_view text) {
  if (text == "max") return Criterion::kMax;
  if (text == "avg") return Criterion::kAvg;
  throw ValidationError("criterion: expected \"max\" or \"avg\", got \"" + std::string(text) + "\"");
}

namespace {

void check_eps_closed(const Rational& eps) {
  if (eps < 0 || eps > 1) throw DomainError("eps = " + format_rational(eps) + " outside [0, 1]");
}

template <class Num>
Quantity make_quantity(const Num& v) {
  Quantity q;
  q.value = Arith<Num>::to_double(v);
  if constexpr (Arith<Num>::kExact) q.exact = v;
  return q;
}

template <class Num>
std::vector<LstarPair> lstar_grid_impl(const JointSource& src, unsigned n,
                                       const std::vector<Rational>& eps_list,
                                       const LiftOptions& options) {
  std::vector<Num> eps;
  for (const auto& e : eps_list) {
    check_eps_closed(e);
    eps.push_back(Arith<Num>::from_rational(e));
  }
  std::vector<Num> max_acc(eps.size(), Num(0));
  std::vector<Num> pooled;
  for_each_y_type<Num>(src, n, options, [&](const YTypeBlock<Num>& b) {
    auto spectrum = floor_log_rank_spectrum(b.classes);
    for (std::size_t e = 0; e < eps.size(); ++e) {
      max_acc[e] += b.probability * expected_cutoff(spectrum, eps[e]);
    }
    for (const auto& a : spectrum.atoms()) {
      const auto j = static_cast<std::size_t>(a.value);
      if (pooled.size() <= j) pooled.resize(j + 1, Num(0));
      pooled[j] += b.probability * a.mass;
    }
  });
  std::vector<Atom<Num>> atoms;
  for (std::size_t j = 0; j < pooled.size(); ++j) atoms.push_back({static_cast<double>(j), pooled[j]});
  auto pooled_spectrum = ValueSpectrum<Num>::from_atoms(std::move(atoms));
  std::vector<LstarPair> out(eps.size());
  for (std::size_t e = 0; e < eps.size(); ++e) {
    out[e].max = make_quantity<Num>(max_acc[e]);
    out[e].avg = make_quantity<Num>(expected_cutoff(pooled_spectrum, eps[e]));
  }
  return out;
}

}  // namespace

std::vector<LstarPair> lstar_grid(const JointSource& src, unsigned n,
                                  const std::vector<Rational>& eps_list,
                                  const LiftOptions& options) {
  return src.is_exact() ? lstar_grid_impl<Rational>(src, n, eps_list, options)
                        : lstar_grid_impl<double>(src, n, eps_list, options);
}

Quantity lstar(const JointSource& src, unsigned n, const Rational& eps, Criterion criterion,
               const LiftOptions& options) {
  auto pair = lstar_grid(src, n, {eps}, options).front();
  return criterion == Criterion::kMax ? pair.max : pair.avg;
}

OneShotBounds one_shot_bounds(const JointSource& src, unsigned n, const Rational& eps,
                              Criterion criterion, const LiftOptions& options) {
  OneShotBounds b;
  b.exact = lstar(src, n, eps, criterion, options);
  auto entropies = cutoff_entropies(src, n, {eps}, options).front();
  b.upper = criterion == Criterion::kMax ? entropies.conditional : entropies.unconditional;
  const double nh = static_cast<double>(n) * measures(src).H;
  b.lower = b.upper - std::log2(nh + 1.0) - std::numbers::log2e;
  return b;
}

std::string codeword(const BigInt& index) {
  if (index < 1) throw ValidationError("codeword index must be positive");
  return index.get_str(2).substr(1);
}

BigInt codeword_index(std::string_view word) {
  std::string bits = "1";
  for (char c : word) {
    if (c != '0' && c != '1') throw ValidationError("codeword: expected a binary string");
    bits.push_back(c);
  }
  return BigInt(bits, 2);
}

unsigned codeword_length(const BigInt& index) {
  if (index < 1) throw ValidationError("codeword index must be positive");
  return static_cast<unsigned>(mpz_sizeinbase(index.get_mpz_t(), 2) - 1);
}

// ---------------------------------------------------------------------------
// RankIndex

struct RankIndex::TypeTable {
  struct Class {
    Rational key;
    BigInt count;
    BigInt before;  // ranks taken by more likely classes
    // Conditional types, flattened as counts[y * x_size + x].
    std::vector<std::vector<unsigned>> types;
  };
  std::vector<Class> classes;
};

RankIndex::RankIndex(const JointSource& src, unsigned n)
    : src_(std::make_shared<const JointSource>(src)), n_(n) {
  if (n == 0) throw ValidationError("n: blocklength must be positive");
  rows_ = sorted_rows<Rational>(src);
  rank_of_.assign(src.y_size(), std::vector<std::uint64_t>(src.x_size(), 0));
  for (const auto& row : rows_) {
    for (std::size_t k = 0; k < row.perm.size(); ++k) rank_of_[row.y][row.perm[k]] = k + 1;
  }
}

RankIndex::~RankIndex() = default;

namespace {

class Factorials {
 public:
  explicit Factorials(unsigned n) : f_(n + 1) {
    f_[0] = 1;
    for (unsigned i = 1; i <= n; ++i) f_[i] = f_[i - 1] * i;
  }
  const BigInt& operator[](unsigned i) const { return f_[i]; }

 private:
  std::vector<BigInt> f_;
};

// Number of ways to fill the remaining positions so that the totals become
// `type`, given the counts already used by a prefix. Zero when the prefix
// already exceeds the type.
BigInt completions(const std::vector<unsigned>& type, const std::vector<unsigned>& used,
                   std::size_t nx, std::size_t ny, const Factorials& fact) {
  BigInt total = 1;
  for (std::size_t y = 0; y < ny; ++y) {
    unsigned row = 0;
    BigInt den = 1;
    for (std::size_t x = 0; x < nx; ++x) {
      const std::size_t k = y * nx + x;
      if (used[k] > type[k]) return 0;
      const unsigned r = type[k] - used[k];
      row += r;
      den *= fact[r];
    }
    BigInt term;
    mpz_divexact(term.get_mpz_t(), fact[row].get_mpz_t(), den.get_mpz_t());
    total *= term;
  }
  return total;
}

}  // namespace

const RankIndex::TypeTable& RankIndex::table_for(const std::vector<unsigned>& y_counts) const {
  std::lock_guard<std::mutex> lock(mutex_);
  for (const auto& [counts, table] : tables_) {
    if (counts == y_counts) return *table;
  }
  const JointSource& src = *src_;
  const std::size_t nx = src.x_size(), ny = src.y_size();
  const auto& cond = src.exact().conditional;
  Factorials fact(n_);
  // Cartesian product of per-y compositions, carrying the likelihood key.
  std::vector<std::pair<Rational, std::vector<unsigned>>> acc{{Rational(1),
                                                               std::vector<unsigned>(nx * ny, 0)}};
  for (std::size_t y = 0; y < ny; ++y) {
    if (y_counts[y] == 0) continue;
    const auto& supp = src.support(y);
    std::vector<std::pair<Rational, std::vector<unsigned>>> next;
    for_each_composition(y_counts[y], supp.size(), [&](const std::vector<unsigned>& c) {
      Rational key = 1;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] > 0) key *= Arith<Rational>::key_pow(cond[supp[i] * ny + y], c[i]);
      }
      for (const auto& [k, t] : acc) {
        auto type = t;
        for (std::size_t i = 0; i < c.size(); ++i) type[y * nx + supp[i]] = c[i];
        next.emplace_back(k * key, std::move(type));
      }
    });
    acc = std::move(next);
  }
  std::stable_sort(acc.begin(), acc.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  auto table = std::make_unique<TypeTable>();
  const std::vector<unsigned> none(nx * ny, 0);
  BigInt before = 0;
  for (auto& [key, type] : acc) {
    if (table->classes.empty() || table->classes.back().key != key) {
      if (!table->classes.empty()) before += table->classes.back().count;
      table->classes.push_back({key, 0, before, {}});
    }
    auto& cls = table->classes.back();
    cls.count += completions(type, none, nx, ny, fact);
    cls.types.push_back(std::move(type));
  }
  tables_.emplace_back(y_counts, std::move(table));
  return *tables_.back().second;
}

namespace {

void check_sequences(const JointSource& src, unsigned n, const std::vector<std::size_t>* xs,
                     const std::vector<std::size_t>& ys) {
  if (ys.size() != n || (xs != nullptr && xs->size() != n)) {
    throw ValidationError("sequence length differs from the blocklength " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (ys[i] >= src.y_size()) throw ValidationError("y symbol index out of range");
    if (xs != nullptr) {
      if ((*xs)[i] >= src.x_size()) throw ValidationError("x symbol index out of range");
      if (sgn(src.exact().conditional[(*xs)[i] * src.y_size() + ys[i]]) == 0) {
        throw DomainError("sequence has zero probability");
      }
    }
  }
}

}  // namespace

BigInt RankIndex::rank(const std::vector<std::size_t>& xs,
                       const std::vector<std::size_t>& ys) const {
  const JointSource& src = *src_;
  check_sequences(src, n_, &xs, ys);
  if (n_ == 1) return BigInt(static_cast<unsigned long>(rank_of_[ys[0]][xs[0]]));
  const std::size_t nx = src.x_size(), ny = src.y_size();
  std::vector<unsigned> y_counts(ny, 0), type(nx * ny, 0);
  Rational key = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    ++y_counts[ys[i]];
    ++type[ys[i] * nx + xs[i]];
    key *= src.exact().conditional[xs[i] * ny + ys[i]];
  }
  const TypeTable& table = table_for(y_counts);
  auto it = std::lower_bound(table.classes.begin(), table.classes.end(), key,
                             [](const TypeTable::Class& c, const Rational& k) { return c.key > k; });
  if (it == table.classes.end() || it->key != key) {
    throw InvariantViolation("rank: sequence likelihood missing from its type table");
  }
  Factorials fact(n_);
  std::vector<unsigned> used(nx * ny, 0);
  BigInt index = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t y = ys[i];
    for (std::size_t x : src.support(y)) {
      if (x >= xs[i]) break;
      ++used[y * nx + x];
      for (const auto& t : it->types) index += completions(t, used, nx, ny, fact);
      --used[y * nx + x];
    }
    ++used[y * nx + xs[i]];
  }
  return it->before + index + 1;
}

std::vector<std::size_t> RankIndex::unrank(const BigInt& rank,
                                           const std::vector<std::size_t>& ys) const {
  const JointSource& src = *src_;
  check_sequences(src, n_, nullptr, ys);
  if (n_ == 1) {
    const auto& perm = rows_[ys[0]].perm;
    if (rank < 1 || rank > static_cast<unsigned long>(perm.size())) {
      throw ValidationError("rank " + rank.get_str() + " out of range");
    }
    return {perm[rank.get_ui() - 1]};
  }
  const std::size_t nx = src.x_size(), ny = src.y_size();
  std::vector<unsigned> y_counts(ny, 0);
  for (std::size_t y : ys) ++y_counts[y];
  const TypeTable& table = table_for(y_counts);
  auto it = std::upper_bound(table.classes.begin(), table.classes.end(), rank,
                             [](const BigInt& r, const TypeTable::Class& c) { return r <= c.before; });
  if (rank < 1 || it == table.classes.begin()) {
    throw ValidationError("rank " + rank.get_str() + " out of range");
  }
  --it;
  if (rank > it->before + it->count) throw ValidationError("rank " + rank.get_str() + " out of range");
  Factorials fact(n_);
  BigInt index = rank - it->before - 1;
  std::vector<unsigned> used(nx * ny, 0);
  std::vector<std::size_t> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t y = ys[i];
    bool placed = false;
    for (std::size_t x : src.support(y)) {
      ++used[y * nx + x];
      BigInt c = 0;
      for (const auto& t : it->types) c += completions(t, used, nx, ny, fact);
      if (index < c) {
        xs[i] = x;
        placed = true;
        break;
      }
      index -= c;
      --used[y * nx + x];
    }
    if (!placed) throw InvariantViolation("unrank: ran past the class");
  }
  return xs;
}

// ---------------------------------------------------------------------------
// Plans

std::size_t CodePlan::type_index(const std::vector<std::size_t>& ys) const {
  if (y_types.empty()) throw InvariantViolation("code plan without y-types");
  std::vector<unsigned> counts(y_types.front().size(), 0);
  for (std::size_t y : ys) {
    if (y >= counts.size()) throw ValidationError("y symbol index out of range");
    ++counts[y];
  }
  // y_types is in lexicographically decreasing order.
  auto it = std::lower_bound(y_types.begin(), y_types.end(), counts,
                             [](const auto& a, const auto& b) { return a > b; });
  if (it == y_types.end() || *it != counts) throw ValidationError("y-sequence of wrong length");
  return static_cast<std::size_t>(it - y_types.begin());
}

CodePlan build_code(const JointSource& src, unsigned n, const Rational& eps, Criterion criterion,
                    const LiftOptions& options) {
  if (eps < 0 || eps >= 1) {
    throw DomainError("build-code: eps = " + format_rational(eps) + " outside [0, 1)");
  }
  CodePlan plan;
  plan.criterion = criterion;
  plan.n = n;
  plan.eps = eps;
  plan.y_types = y_types(src, n);
  const Rational budget = 1 - eps;
  Rational length = 0, kept = 0, correct = 0;

  if (criterion == Criterion::kMax) {
    for_each_y_type<Rational>(src, n, options, [&](const YTypeBlock<Rational>& b) {
      KeepRule rule = walk_threshold(class_segments(b.classes), budget);
      PrefixSums s = prefix_sums(b.classes, rule.kappa);
      length += b.probability * (s.length + rule.gamma * codeword_length(rule.kappa + 1));
      kept += b.probability * (s.mass + rule.gamma);
      correct += b.probability * (rule.kappa == 0 ? b.classes.front().key : s.mass + rule.gamma);
      plan.rules.push_back(std::move(rule));
    });
  } else {
    std::vector<std::pair<BigInt, Rational>> events;
    for_each_y_type<Rational>(src, n, options, [&](const YTypeBlock<Rational>& b) {
      append_pooled_events(b, events);
    });
    KeepRule rule = walk_threshold(pooled_segments(std::move(events)), budget);
    Rational top = 0;
    for_each_y_type<Rational>(src, n, options, [&](const YTypeBlock<Rational>& b) {
      PrefixSums s = prefix_sums(b.classes, rule.kappa);
      length += b.probability * s.length;
      kept += b.probability * s.mass;
      top += b.probability * b.classes.front().key;
    });
    length += rule.gamma * codeword_length(rule.kappa + 1);
    correct = rule.kappa == 0 ? top : kept + rule.gamma;
    kept += rule.gamma;
    plan.rules.push_back(std::move(rule));
  }
  plan.expected_length = length;
  plan.drop_probability = 1 - kept;
  plan.error_probability = 1 - correct;
  plan.ranks = std::make_shared<const RankIndex>(src, n);
  return plan;
}

namespace {

bool keeps(const KeepRule& rule, const BigInt& rank, double u) {
  if (rank <= rule.kappa) return true;
  if (rank == rule.kappa + 1) return Rational(u) < rule.boundary_keep;
  return false;
}

}  // namespace

std::vector<std::size_t> decode(const CodePlan& plan, std::string_view word,
                                const std::vector<std::size_t>& ys) {
  return plan.ranks->unrank(codeword_index(word), ys);
}

EncodeResult encode_decode(const CodePlan& plan, const std::vector<std::size_t>& xs,
                           const std::vector<std::size_t>& ys, double u) {
  const BigInt rank = plan.ranks->rank(xs, ys);
  const std::size_t t = plan.criterion == Criterion::kMax ? plan.type_index(ys) : 0;
  EncodeResult r;
  r.dropped = !keeps(plan.rule_for(t), rank, u);
  r.codeword = r.dropped ? std::string() : codeword(rank);
  r.decoded = decode(plan, r.codeword, ys);
  r.error = r.decoded != xs;
  return r;
}

SimulationStats simulate_code(const JointSource& src, const CodePlan& plan, std::uint64_t trials,
                              std::uint64_t seed, unsigned workers) {
  JointSampler sampler(src);
  if (plan.n == 1) {
    // Single-letter fast path: everything is a table lookup.
    const std::size_t nx = src.x_size();
    struct Entry {
      unsigned length = 0;
      double keep = 0.0;  // 1 always, 0 never, else the boundary probability
      bool rank_one = false;
    };
    std::vector<Entry> table(nx * src.y_size());
    for (const auto& [x, y] : joint_support(src)) {
      const BigInt rank = plan.ranks->rank({x}, {y});
      const KeepRule& rule = plan.rule_for(plan.type_index({y}));
      Entry& e = table[y * nx + x];
      e.length = codeword_length(rank);
      e.rank_one = rank == 1;
      if (rank <= rule.kappa) {
        e.keep = 1.0;
      } else if (rank == rule.kappa + 1) {
        e.keep = to_double(rule.boundary_keep);
      }
    }
    return run_trials(trials, seed, workers, [&](Rng& rng) {
      auto [x, y] = sampler.draw(rng);
      const Entry& e = table[y * nx + x];
      bool kept = e.keep >= 1.0 || (e.keep > 0.0 && rng.uniform() < e.keep);
      TrialOutcome o;
      o.value = kept ? e.length : 0.0;
      o.error = !kept && !e.rank_one;
      return o;
    });
  }
  return run_trials(trials, seed, workers, [&](Rng& rng) {
    std::vector<std::size_t> xs(plan.n), ys(plan.n);
    for (unsigned i = 0; i < plan.n; ++i) std::tie(xs[i], ys[i]) = sampler.draw(rng);
    EncodeResult r = encode_decode(plan, xs, ys, rng.uniform());
    return TrialOutcome{static_cast<double>(r.codeword.size()), r.error};
  });
}

}  // namespace vldsrc
