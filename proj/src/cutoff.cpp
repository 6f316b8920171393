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

#include "vldsrc/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vldsrc/errors.hpp"
#include "vldsrc/product_lift.hpp"
#include "vldsrc/source.hpp"

namespace vldsrc {

namespace {

template <class Num>
bool is_zero(const Num& x) {
  if constexpr (Arith<Num>::kExact) {
    return sgn(x) == 0;
  } else {
    return x == 0.0;
  }
}

template <class Num>
bool is_negative(const Num& x) {
  if constexpr (Arith<Num>::kExact) {
    return sgn(x) < 0;
  } else {
    return x < 0.0;
  }
}

template <class Num>
void check_eps(const Num& eps, bool allow_one) {
  if (is_negative(eps) || eps > Num(1) || (!allow_one && eps == Num(1))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "eps = " << Arith<Num>::to_double(eps) << " outside "
        << (allow_one ? "[0, 1]" : "[0, 1)");
    throw DomainError(msg.str());
  }
}

}  // namespace

template <class Num>
ValueSpectrum<Num> ValueSpectrum<Num>::from_atoms(std::vector<Atom<Num>> atoms) {
  for (const auto& a : atoms) {
    if (!std::isfinite(a.value) || a.value < 0.0) {
      throw ValidationError("spectrum: atom value must be finite and nonnegative");
    }
    if (is_negative(a.mass)) throw ValidationError("spectrum: negative atom mass");
  }
  std::erase_if(atoms, [](const Atom<Num>& a) { return is_zero(a.mass); });
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom<Num>& a, const Atom<Num>& b) { return a.value < b.value; });
  ValueSpectrum out;
  for (auto& a : atoms) {
    if (!out.atoms_.empty() && Arith<Num>::same_value(out.atoms_.back().value, a.value)) {
      out.atoms_.back().mass += a.mass;
    } else {
      out.atoms_.push_back(std::move(a));
    }
  }
  return out;
}

template <class Num>
ValueSpectrum<Num> ValueSpectrum<Num>::from_keyed(std::vector<std::pair<Key, Num>> keyed) {
  std::erase_if(keyed, [](const auto& p) { return is_zero(p.second); });
  // Larger likelihood means smaller information density.
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return Arith<Num>::key_greater(a.first, b.first);
  });
  ValueSpectrum out;
  for (auto& [key, mass] : keyed) {
    if (is_negative(mass)) throw ValidationError("spectrum: negative atom mass");
    if (!out.keys_.empty() && Arith<Num>::key_same(out.keys_.back(), key)) {
      out.atoms_.back().mass += mass;
      continue;
    }
    out.atoms_.push_back({std::max(0.0, Arith<Num>::iota(key)), std::move(mass)});
    out.keys_.push_back(std::move(key));
  }
  return out;
}

template <class Num>
Num ValueSpectrum<Num>::total_mass() const {
  Num total(0);
  for (const auto& a : atoms_) total += a.mass;
  return total;
}

template <class Num>
Num ValueSpectrum<Num>::mean() const {
  Num total(0);
  for (const auto& a : atoms_) total += Arith<Num>::from_value(a.value) * a.mass;
  return total;
}

template <class Num>
double ValueSpectrum<Num>::variance() const {
  const double mu = Arith<Num>::to_double(mean());
  double v = 0.0;
  for (const auto& a : atoms_) {
    v += Arith<Num>::to_double(a.mass) * (a.value - mu) * (a.value - mu);
  }
  return v;
}

template <class Num>
void ValueSpectrum<Num>::check_normalized() const {
  Num total = total_mass();
  bool ok;
  if constexpr (Arith<Num>::kExact) {
    ok = total == 1;
  } else {
    ok = std::abs(total - 1.0) <= 1e-12;
  }
  if (!ok) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "spectrum masses sum to " << Arith<Num>::to_double(total) << ", not 1";
    throw InvariantViolation(msg.str());
  }
}

template <class Num>
std::string ValueSpectrum<Num>::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "value,mass\n";
  for (const auto& a : atoms_) {
    out << a.value << ',';
    if constexpr (Arith<Num>::kExact) {
      out << format_rational(a.mass);
    } else {
      out << a.mass;
    }
    out << '\n';
  }
  return out.str();
}

template <class Num>
CutoffSpec<Num> cutoff_spec(const ValueSpectrum<Num>& spectrum, const Num& eps) {
  check_eps(eps, /*allow_one=*/false);
  const auto& atoms = spectrum.atoms();
  if (atoms.empty()) throw ValidationError("spectrum: no atoms");
  CutoffSpec<Num> spec;
  spec.eps = eps;
  Num tail(0);
  for (std::size_t i = atoms.size(); i-- > 0;) {
    // Atom i becomes the cutoff point once adding it to the tail would
    // overshoot eps. The first atom is the fallback when rounding in float
    // mode lets the whole tail fit.
    if (i == 0 || tail + atoms[i].mass > eps) {
      spec.eta = atoms[i].value;
      spec.eta_index = i;
      spec.beta = (eps - tail) / atoms[i].mass;
      if constexpr (!Arith<Num>::kExact) spec.beta = std::clamp(spec.beta, 0.0, 1.0);
      return spec;
    }
    tail += atoms[i].mass;
  }
  return spec;
}

template <class Num>
Num expected_cutoff(const ValueSpectrum<Num>& spectrum, const Num& eps) {
  check_eps(eps, /*allow_one=*/true);
  if (eps == Num(1)) return Num(0);
  CutoffSpec<Num> spec = cutoff_spec(spectrum, eps);
  const auto& atoms = spectrum.atoms();
  Num total(0);
  for (std::size_t i = 0; i < spec.eta_index; ++i) {
    total += Arith<Num>::from_value(atoms[i].value) * atoms[i].mass;
  }
  total += (Num(1) - spec.beta) * Arith<Num>::from_value(spec.eta) * atoms[spec.eta_index].mass;
  return total;
}

template <class Num>
Num expected_cutoff_integral(const ValueSpectrum<Num>& spectrum, const Num& eps) {
  check_eps(eps, /*allow_one=*/true);
  if (eps == Num(1)) return Num(0);
  CutoffSpec<Num> spec = cutoff_spec(spectrum, eps);
  const auto& atoms = spectrum.atoms();
  const Num mean = spectrum.mean();
  const Num eta = Arith<Num>::from_value(spec.eta);
  // For a discrete law the integrated tail above eta is sum (v - eta) m.
  Num tail_integral(0);
  for (std::size_t i = spec.eta_index + 1; i < atoms.size(); ++i) {
    tail_integral += (Arith<Num>::from_value(atoms[i].value) - eta) * atoms[i].mass;
  }
  return (Num(1) - eps) * mean - tail_integral - eps * (eta - mean);
}

template <class Num>
Num min_kept_oracle(const ValueSpectrum<Num>& spectrum, const Num& eps) {
  check_eps(eps, /*allow_one=*/true);
  const auto& atoms = spectrum.atoms();
  Num budget = eps;
  Num kept(0);
  for (std::size_t i = atoms.size(); i-- > 0;) {
    const Num value = Arith<Num>::from_value(atoms[i].value);
    Num drop = std::min(budget, atoms[i].mass);
    budget -= drop;
    kept += value * (atoms[i].mass - drop);
  }
  return kept;
}

#define VLDSRC_INSTANTIATE(Num)                                                    \
  template class ValueSpectrum<Num>;                                               \
  template CutoffSpec<Num> cutoff_spec(const ValueSpectrum<Num>&, const Num&);     \
  template Num expected_cutoff(const ValueSpectrum<Num>&, const Num&);             \
  template Num expected_cutoff_integral(const ValueSpectrum<Num>&, const Num&);    \
  template Num min_kept_oracle(const ValueSpectrum<Num>&, const Num&);

VLDSRC_INSTANTIATE(double)
VLDSRC_INSTANTIATE(Rational)

#undef VLDSRC_INSTANTIATE

double cond_cutoff_entropy(const JointSource& src, const Rational& eps, unsigned n) {
  return cond_cutoff_entropy(src, eps, n, LiftOptions{});
}

double cond_cutoff_entropy(const JointSource& src, const Rational& eps, unsigned n,
                           const LiftOptions& options) {
  return cutoff_entropies(src, n, {eps}, options).front().conditional;
}

double uncond_cutoff_entropy(const JointSource& src, const Rational& eps, unsigned n) {
  return uncond_cutoff_entropy(src, eps, n, LiftOptions{});
}

double uncond_cutoff_entropy(const JointSource& src, const Rational& eps, unsigned n,
                             const LiftOptions& options) {
  return cutoff_entropies(src, n, {eps}, options).front().unconditional;
}

}  // namespace vldsrc
