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

#include "vldsrc/numeric.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>

#include "vldsrc/errors.hpp"

namespace vldsrc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw ValidationError("malformed rational '" + std::string(whole) + "'");
  }
  BigInt z(std::string(s), 10);
  return negative ? BigInt(-z) : z;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    BigInt exp_value = parse_integer(exp_text, whole);
    if (!exp_value.fits_slong_p() || abs(exp_value) > 4096) {
      throw ValidationError("exponent out of range in '" + std::string(whole) + "'");
    }
    exponent = exp_value.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  long fraction_digits = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw ValidationError("malformed decimal '" + std::string(whole) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    fraction_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) {
      throw ValidationError("malformed number '" + std::string(whole) + "'");
    }
    digits = std::string(s);
  }
  Rational q(BigInt(digits, 10));
  long shift = exponent - fraction_digits;
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift < 0) {
    q /= Rational(scale);
  } else {
    q *= Rational(scale);
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ValidationError("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(s.substr(0, slash), text);
    BigInt den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) {
      throw ValidationError("zero denominator in '" + std::string(text) + "'");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  return parse_decimal(s, text);
}

Rational parse_probability(std::string_view text) {
  Rational q = parse_rational(text);
  if (text.find('/') == std::string_view::npos &&
      q.get_den() > kMaxProbabilityDenominator) {
    q = best_rational(q, kMaxProbabilityDenominator);
  }
  if (q < 0 || q > 1) {
    throw ValidationError("probability '" + std::string(text) + "' outside [0, 1]");
  }
  return q;
}

Rational best_rational(const Rational& x, long max_den) {
  if (x.get_den() <= max_den) return x;
  // Convergents h/k of the continued fraction of x; the best approximation
  // is either the last convergent within the bound or a semiconvergent.
  BigInt h_prev = 0, h = 1, k_prev = 1, k = 0;
  BigInt num = x.get_num(), den = x.get_den();
  BigInt bound(max_den);
  while (den != 0) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    BigInt k_next = a * k + k_prev;
    if (k_next > bound) {
      BigInt t = (bound - k_prev) / k;
      Rational semi(t * h + h_prev, t * k + k_prev);
      Rational conv(h, k);
      semi.canonicalize();
      conv.canonicalize();
      Rational d_semi = abs(semi - x), d_conv = abs(conv - x);
      return d_semi < d_conv ? semi : conv;
    }
    BigInt h_next = a * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    BigInt r = num - a * den;
    num = den;
    den = r;
  }
  Rational q(h, k);
  q.canonicalize();
  return q;
}

Rational best_rational(double x, long max_den) {
  if (!std::isfinite(x)) throw ValidationError("non-finite value");
  return best_rational(Rational(x), max_den);
}

std::string format_rational(const Rational& q) { return q.get_str(); }

double log2_bigint(const BigInt& z) {
  long exp = 0;
  double mantissa = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(mantissa) + static_cast<double>(exp);
}

double log2_rational(const Rational& q) {
  if (sgn(q) <= 0) throw DomainError("log2 of a non-positive number");
  double d = q.get_d();
  if (d >= std::numeric_limits<double>::min() && std::isfinite(d)) {
    return std::log2(d);
  }
  return log2_bigint(q.get_num()) - log2_bigint(q.get_den());
}

// mpq_get_d truncates; step one ulp away from zero when that is closer.
double to_double(const Rational& q) {
  const double t = q.get_d();
  if (!std::isfinite(t)) return t;
  const double away = std::nextafter(t, sgn(q) < 0 ? -HUGE_VAL : HUGE_VAL);
  if (!std::isfinite(away)) return t;
  const Rational dt = abs(Rational(t) - q), da = abs(Rational(away) - q);
  if (da < dt) return away;
  if (dt < da) return t;
  // Halfway: keep the even significand.
  return (std::bit_cast<std::uint64_t>(t) & 1u) == 0 ? t : away;
}

double Arith<double>::binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r < 9007199254740992.0 ? std::round(r) : r;
}

Rational Arith<Rational>::key_pow(const Rational& a, unsigned k) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), a.get_num_mpz_t(), k);
  mpz_pow_ui(r.get_den_mpz_t(), a.get_den_mpz_t(), k);
  return r;
}

}  // namespace vldsrc
