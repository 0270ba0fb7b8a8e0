/*
 * Copyright 2026 The larg-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "larg_lab/scalar.hpp"

#include "larg_lab/error.hpp"

#include <cctype>
#include <cmath>

namespace larg {
namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) fail(ErrorCode::Parse, "empty integer in '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      fail(ErrorCode::Parse, "bad digit in '" + std::string(whole) + "'");
    }
  }
  return BigInt(std::string(digits));
}

BigInt pow10(long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string exp_text(text.substr(e + 1));
    try {
      std::size_t used = 0;
      exponent = std::stol(exp_text, &used);
      if (used != exp_text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      fail(ErrorCode::Parse, "bad exponent in '" + std::string(whole) + "'");
    }
    text = text.substr(0, e);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    frac_digits = static_cast<long>(text.size() - dot - 1);
  } else {
    digits = std::string(text);
  }
  Rational value(parse_integer(digits, whole));
  long scale = exponent - frac_digits;
  if (scale >= 0) {
    value *= Rational(pow10(scale));
  } else {
    value /= Rational(pow10(-scale));
  }
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail(ErrorCode::Parse, "empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash), whole);
    Rational den = parse_decimal(text.substr(slash + 1), whole);
    if (den == 0) fail(ErrorCode::Parse, "zero denominator in '" + std::string(whole) + "'");
    return num / den;
  }
  return parse_decimal(text, whole);
}

std::string format_rational(const Rational& q) {
  BigInt den = boost::multiprecision::denominator(q);
  std::string out = boost::multiprecision::numerator(q).str();
  if (den != 1) out += "/" + den.str();
  return out;
}

Rational rational_approximant(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "cannot approximate a non-finite value");
  // Convergents h/k of the continued fraction of x; stop before k exceeds max_den.
  Rational exact(x);
  BigInt h_prev = 1, h = 0, k_prev = 0, k = 1;
  Rational rest = exact;
  for (int guard = 0; guard < 128; ++guard) {
    BigInt a = boost::multiprecision::numerator(floor_of(rest));
    BigInt h_next = a * h_prev + h;
    BigInt k_next = a * k_prev + k;
    if (k_next > max_den) break;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    Rational frac = rest - floor_of(rest);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  if (k_prev == 0) return floor_of(exact);
  return Rational(h_prev) / Rational(k_prev);
}

}  // namespace larg
