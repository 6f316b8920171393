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

#include "vldsrc/product_lift.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>

#include "vldsrc/errors.hpp"

namespace vldsrc {

namespace {

// Multinomial coefficients and y-type probabilities in either arithmetic.
template <class Num>
class Combinatorics;

template <>
class Combinatorics<Rational> {
 public:
  explicit Combinatorics(unsigned n) : fact_(n + 1) {
    fact_[0] = 1;
    for (unsigned i = 1; i <= n; ++i) fact_[i] = fact_[i - 1] * i;
  }
  BigInt multinomial(unsigned k, const std::vector<unsigned>& parts) const {
    BigInt den = 1;
    for (unsigned c : parts) den *= fact_[c];
    BigInt r;
    mpz_divexact(r.get_mpz_t(), fact_[k].get_mpz_t(), den.get_mpz_t());
    return r;
  }
  Rational type_probability(const std::vector<unsigned>& t, const std::vector<Rational>& p) const {
    unsigned k = 0;
    Rational r = 1;
    for (std::size_t i = 0; i < t.size(); ++i) {
      k += t[i];
      r *= Arith<Rational>::key_pow(p[i], t[i]);
    }
    return r * Rational(multinomial(k, t));
  }

 private:
  std::vector<BigInt> fact_;
};

template <>
class Combinatorics<double> {
 public:
  explicit Combinatorics(unsigned n) : log_fact_(n + 1) {
    for (unsigned i = 0; i <= n; ++i) log_fact_[i] = std::lgamma(static_cast<double>(i) + 1.0);
  }
  double log_multinomial(unsigned k, const std::vector<unsigned>& parts) const {
    double r = log_fact_[k];
    for (unsigned c : parts) r -= log_fact_[c];
    return r;
  }
  double multinomial(unsigned k, const std::vector<unsigned>& parts) const {
    double r = std::exp(log_multinomial(k, parts));
    return r < 9007199254740992.0 ? std::round(r) : r;
  }
  double type_probability(const std::vector<unsigned>& t, const std::vector<double>& p) const {
    unsigned k = 0;
    double log_p = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      k += t[i];
      if (t[i] > 0) log_p += t[i] * std::log(p[i]);
    }
    return std::exp(log_multinomial(k, t) + log_p);
  }

 private:
  std::vector<double> log_fact_;
};

template <class Num>
void sort_and_merge(std::vector<RankClass<Num>>& classes) {
  using A = Arith<Num>;
  std::sort(classes.begin(), classes.end(),
            [](const RankClass<Num>& a, const RankClass<Num>& b) {
              return A::key_greater(a.key, b.key);
            });
  std::size_t out = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (out > 0 && A::key_same(classes[out - 1].key, classes[i].key)) {
      classes[out - 1].count += classes[i].count;
    } else {
      if (out != i) classes[out] = std::move(classes[i]);
      ++out;
    }
  }
  classes.resize(out);
}

// Ranked law of X^k given k copies of one y symbol.
template <class Num>
std::vector<RankClass<Num>> single_symbol_classes(const JointSource& src, std::size_t y,
                                                  unsigned k,
                                                  const Combinatorics<Num>& comb) {
  using A = Arith<Num>;
  const auto& t = src.tables<Num>();
  const auto& supp = src.support(y);
  const std::size_t ny = src.y_size();
  std::vector<std::vector<typename A::Key>> powers(supp.size());
  for (std::size_t i = 0; i < supp.size(); ++i) {
    typename A::Key base = A::key_of(t.conditional[supp[i] * ny + y]);
    powers[i].reserve(k + 1);
    for (unsigned c = 0; c <= k; ++c) powers[i].push_back(A::key_pow(base, c));
  }
  std::vector<RankClass<Num>> out;
  for_each_composition(k, supp.size(), [&](const std::vector<unsigned>& c) {
    typename A::Key key = A::key_unit();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] > 0) key = A::key_times(key, powers[i][c[i]]);
    }
    out.push_back({std::move(key), comb.multinomial(k, c)});
  });
  sort_and_merge(out);
  return out;
}

template <class Num>
std::vector<RankClass<Num>> combine(const std::vector<RankClass<Num>>& a,
                                    const std::vector<RankClass<Num>>& b) {
  using A = Arith<Num>;
  std::vector<RankClass<Num>> out;
  out.reserve(a.size() * b.size());
  for (const auto& u : a) {
    for (const auto& v : b) {
      out.push_back({A::key_times(u.key, v.key), u.count * v.count});
    }
  }
  sort_and_merge(out);
  return out;
}

// Per-(y, k) class lists shared by every y-type of one blocklength.
template <class Num>
class ClassTable {
 public:
  ClassTable(const JointSource& src, unsigned n, const Combinatorics<Num>& comb)
      : lists_(src.y_size()) {
    const std::size_t ny = src.y_size();
    for (std::size_t y = 0; y < ny; ++y) {
      lists_[y].resize(n + 1);
      if (ny == 1) {
        lists_[y][n] = single_symbol_classes<Num>(src, y, n, comb);
      } else {
        for (unsigned k = 0; k <= n; ++k) lists_[y][k] = single_symbol_classes<Num>(src, y, k, comb);
      }
    }
  }

  std::vector<RankClass<Num>> classes(const std::vector<unsigned>& y_counts) const {
    std::vector<RankClass<Num>> acc{{Arith<Num>::key_unit(), Arith<Num>::count(1)}};
    for (std::size_t y = 0; y < y_counts.size(); ++y) {
      if (y_counts[y] == 0) continue;
      acc = combine(acc, lists_[y][y_counts[y]]);
    }
    return acc;
  }

 private:
  std::vector<std::vector<std::vector<RankClass<Num>>>> lists_;
};

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

template <class Num>
void add_mass(std::vector<Num>& by_index, std::size_t j, const Num& mass) {
  if (by_index.size() <= j) by_index.resize(j + 1, Num(0));
  by_index[j] += mass;
}

template <class Num>
ValueSpectrum<Num> spectrum_from_indexed(const std::vector<Num>& by_index) {
  std::vector<Atom<Num>> atoms;
  for (std::size_t j = 0; j < by_index.size(); ++j) {
    atoms.push_back({static_cast<double>(j), by_index[j]});
  }
  return ValueSpectrum<Num>::from_atoms(std::move(atoms));
}

template <class Num>
void accumulate_floor_log(const std::vector<RankClass<Num>>& classes, const Num& weight,
                          std::vector<Num>& by_index) {
  using A = Arith<Num>;
  typename A::Count start = A::count(1);
  for (const auto& cls : classes) {
    typename A::Count end = start + cls.count;
    int j = A::floor_log2(start);
    for (;;) {
      typename A::Count lo = A::pow2(j);
      typename A::Count hi = A::pow2(j + 1);
      if (lo < start) lo = start;
      bool last = !(hi < end);
      if (last) hi = end;
      if (lo < hi) {
        add_mass(by_index, static_cast<std::size_t>(j), Num(weight * A::class_mass(cls.key, typename A::Count(hi - lo))));
      }
      if (last) break;
      ++j;
    }
    start = end;
  }
}

}  // namespace

std::uint64_t default_max_types() {
  const char* env = std::getenv("VLDSRC_MAX_TYPES");
  if (env == nullptr || *env == '\0') return kDefaultMaxTypes;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size() || v == 0) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("VLDSRC_MAX_TYPES: expected a positive integer, got '" +
                          std::string(env) + "'");
  }
}

BigInt count_compositions(unsigned n, std::size_t parts) {
  if (parts == 0) return n == 0 ? 1 : 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n + parts - 1, parts - 1);
  return r;
}

std::vector<std::pair<std::size_t, std::size_t>> joint_support(const JointSource& src) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t ny = src.y_size();
  for (std::size_t x = 0; x < src.x_size(); ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      if (sgn(src.exact().joint[x * ny + y]) > 0) out.emplace_back(x, y);
    }
  }
  return out;
}

BigInt joint_type_count(const JointSource& src, unsigned n) {
  return count_compositions(n, src.joint_support_size());
}

void check_type_budget(const JointSource& src, unsigned n, const LiftOptions& options) {
  if (n == 0) throw ValidationError("n: blocklength must be positive");
  BigInt types = joint_type_count(src, n);
  if (types > BigInt(std::to_string(options.max_types))) {
    throw BudgetExceeded("blocklength " + std::to_string(n) + " needs " + types.get_str() +
                         " type classes, over the budget of " +
                         std::to_string(options.max_types) +
                         " (raise with --max-types or VLDSRC_MAX_TYPES)");
  }
}

template <class Num>
void enumerate_joint_types(const JointSource& src, unsigned n, const LiftOptions& options,
                           const std::function<void(const TypeClass<Num>&)>& fn) {
  using A = Arith<Num>;
  check_type_budget(src, n, options);
  const auto pairs = joint_support(src);
  const auto& t = src.tables<Num>();
  const std::size_t ny = src.y_size();
  Combinatorics<Num> comb(n);
  std::vector<std::vector<typename A::Key>> powers(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    typename A::Key base = A::key_of(t.joint[pairs[i].first * ny + pairs[i].second]);
    for (unsigned c = 0; c <= n; ++c) powers[i].push_back(A::key_pow(base, c));
  }
  TypeClass<Num> tc;
  for_each_composition(n, pairs.size(), [&](const std::vector<unsigned>& c) {
    tc.counts = c;
    tc.weight = comb.multinomial(n, c);
    tc.likelihood = A::key_unit();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] > 0) tc.likelihood = A::key_times(tc.likelihood, powers[i][c[i]]);
    }
    fn(tc);
  });
}

std::vector<std::vector<unsigned>> y_types(const JointSource& src, unsigned n) {
  std::vector<std::vector<unsigned>> out;
  for_each_composition(n, src.y_size(), [&](const std::vector<unsigned>& c) { out.push_back(c); });
  return out;
}

template <class Num>
std::vector<RankClass<Num>> rank_classes(const JointSource& src,
                                         const std::vector<unsigned>& y_counts) {
  if (y_counts.size() != src.y_size()) throw ValidationError("y-type: wrong number of counts");
  unsigned n = 0;
  for (unsigned c : y_counts) n += c;
  Combinatorics<Num> comb(n);
  std::vector<RankClass<Num>> acc{{Arith<Num>::key_unit(), Arith<Num>::count(1)}};
  for (std::size_t y = 0; y < y_counts.size(); ++y) {
    if (y_counts[y] == 0) continue;
    acc = combine(acc, single_symbol_classes<Num>(src, y, y_counts[y], comb));
  }
  return acc;
}

template <class Num>
void for_each_y_type(const JointSource& src, unsigned n, const LiftOptions& options,
                     const std::function<void(const YTypeBlock<Num>&)>& fn) {
  check_type_budget(src, n, options);
  Combinatorics<Num> comb(n);
  ClassTable<Num> table(src, n, comb);
  const auto& marginal = src.tables<Num>().marginal_y;
  const auto types = y_types(src, n);
  const unsigned workers = resolve_workers(options.workers);
  const std::size_t chunk = std::max<std::size_t>(1, 4 * static_cast<std::size_t>(workers));
  std::vector<YTypeBlock<Num>> blocks;
  for (std::size_t begin = 0; begin < types.size(); begin += chunk) {
    const std::size_t end = std::min(types.size(), begin + chunk);
    blocks.assign(end - begin, {});
    auto work = [&](std::size_t w) {
      for (std::size_t i = begin + w; i < end; i += workers) {
        auto& b = blocks[i - begin];
        b.y_counts = types[i];
        b.probability = comb.type_probability(types[i], marginal);
        b.classes = table.classes(types[i]);
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }
    for (const auto& b : blocks) fn(b);
  }
}

template <class Num>
ValueSpectrum<Num> iota_spectrum_n(const JointSource& src, unsigned n,
                                   const LiftOptions& options) {
  using A = Arith<Num>;
  std::vector<std::pair<typename A::Key, Num>> keyed;
  for_each_y_type<Num>(src, n, options, [&](const YTypeBlock<Num>& b) {
    for (const auto& cls : b.classes) {
      keyed.emplace_back(cls.key, b.probability * A::class_mass(cls.key, cls.count));
    }
  });
  return ValueSpectrum<Num>::from_keyed(std::move(keyed));
}

template <class Num>
ValueSpectrum<Num> iota_spectrum_n(const JointSource& src, const std::vector<unsigned>& y_counts,
                                   const LiftOptions& options) {
  using A = Arith<Num>;
  unsigned n = 0;
  for (unsigned c : y_counts) n += c;
  check_type_budget(src, n, options);
  std::vector<std::pair<typename A::Key, Num>> keyed;
  for (const auto& cls : rank_classes<Num>(src, y_counts)) {
    keyed.emplace_back(cls.key, A::class_mass(cls.key, cls.count));
  }
  return ValueSpectrum<Num>::from_keyed(std::move(keyed));
}

template <class Num>
ValueSpectrum<Num> floor_log_rank_spectrum(const std::vector<RankClass<Num>>& classes) {
  std::vector<Num> by_index;
  accumulate_floor_log(classes, Num(1), by_index);
  return spectrum_from_indexed(by_index);
}

template <class Num>
ValueSpectrum<Num> floor_log_rank_spectrum(const JointSource& src,
                                           const std::vector<unsigned>& y_counts) {
  return floor_log_rank_spectrum(rank_classes<Num>(src, y_counts));
}

template <class Num>
ValueSpectrum<Num> pooled_floor_log_rank_spectrum(const JointSource& src, unsigned n,
                                                  const LiftOptions& options) {
  std::vector<Num> by_index;
  for_each_y_type<Num>(src, n, options, [&](const YTypeBlock<Num>& b) {
    accumulate_floor_log(b.classes, b.probability, by_index);
  });
  return spectrum_from_indexed(by_index);
}

template <class Num>
typename Arith<Num>::Count floor_log2_range_sum(const typename Arith<Num>::Count& first,
                                                const typename Arith<Num>::Count& count) {
  using A = Arith<Num>;
  typename A::Count total = A::count(0);
  if (!(A::count(0) < count)) return total;
  const typename A::Count end = first + count;
  int j = A::floor_log2(first);
  for (;;) {
    typename A::Count lo = A::pow2(j);
    typename A::Count hi = A::pow2(j + 1);
    if (lo < first) lo = first;
    bool last = !(hi < end);
    if (last) hi = end;
    if (lo < hi) total += A::count(static_cast<std::uint64_t>(j)) * (hi - lo);
    if (last) break;
    ++j;
  }
  return total;
}

namespace {

template <class Num>
std::vector<CutoffEntropyPair> cutoff_entropies_impl(const JointSource& src, unsigned n,
                                                     const std::vector<Rational>& eps_list,
                                                     const LiftOptions& options) {
  using A = Arith<Num>;
  std::vector<Num> eps;
  for (const auto& e : eps_list) {
    if (e < 0 || e > 1) throw DomainError("eps = " + format_rational(e) + " outside [0, 1]");
    eps.push_back(A::from_rational(e));
  }
  std::vector<Num> cond(eps.size(), Num(0));
  std::vector<std::pair<typename A::Key, Num>> keyed;
  for_each_y_type<Num>(src, n, options, [&](const YTypeBlock<Num>& b) {
    std::vector<std::pair<typename A::Key, Num>> local;
    for (const auto& cls : b.classes) {
      local.emplace_back(cls.key, A::class_mass(cls.key, cls.count));
      keyed.emplace_back(cls.key, b.probability * local.back().second);
    }
    auto spectrum = ValueSpectrum<Num>::from_keyed(std::move(local));
    for (std::size_t e = 0; e < eps.size(); ++e) {
      cond[e] += b.probability * expected_cutoff(spectrum, eps[e]);
    }
  });
  auto pooled = ValueSpectrum<Num>::from_keyed(std::move(keyed));
  std::vector<CutoffEntropyPair> out(eps.size());
  for (std::size_t e = 0; e < eps.size(); ++e) {
    out[e].conditional = A::to_double(cond[e]);
    out[e].unconditional = A::to_double(expected_cutoff(pooled, eps[e]));
  }
  return out;
}

}  // namespace

std::vector<CutoffEntropyPair> cutoff_entropies(const JointSource& src, unsigned n,
                                                const std::vector<Rational>& eps_list,
                                                const LiftOptions& options) {
  return src.is_exact() ? cutoff_entropies_impl<Rational>(src, n, eps_list, options)
                        : cutoff_entropies_impl<double>(src, n, eps_list, options);
}

#define VLDSRC_INSTANTIATE(Num)                                                          \
  template void enumerate_joint_types<Num>(const JointSource&, unsigned,                 \
                                           const LiftOptions&,                           \
                                           const std::function<void(const TypeClass<Num>&)>&); \
  template std::vector<RankClass<Num>> rank_classes<Num>(const JointSource&,             \
                                                         const std::vector<unsigned>&);  \
  template void for_each_y_type<Num>(const JointSource&, unsigned, const LiftOptions&,   \
                                     const std::function<void(const YTypeBlock<Num>&)>&); \
  template ValueSpectrum<Num> iota_spectrum_n<Num>(const JointSource&, unsigned,         \
                                                   const LiftOptions&);                  \
  template ValueSpectrum<Num> iota_spectrum_n<Num>(const JointSource&,                   \
                                                   const std::vector<unsigned>&,         \
                                                   const LiftOptions&);                  \
  template ValueSpectrum<Num> floor_log_rank_spectrum<Num>(                              \
      const std::vector<RankClass<Num>>&);                                               \
  template ValueSpectrum<Num> floor_log_rank_spectrum<Num>(const JointSource&,           \
                                                           const std::vector<unsigned>&); \
  template ValueSpectrum<Num> pooled_floor_log_rank_spectrum<Num>(                       \
      const JointSource&, unsigned, const LiftOptions&);                                 \
  template Arith<Num>::Count floor_log2_range_sum<Num>(const Arith<Num>::Count&,         \
                                                       const Arith<Num>::Count&);

VLDSRC_INSTANTIATE(double)
VLDSRC_INSTANTIATE(Rational)

#undef VLDSRC_INSTANTIATE

}  // namespace vldsrc
