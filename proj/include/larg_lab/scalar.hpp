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

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

namespace larg {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/// The two numeric modes. Rational is exact; double is for Monte Carlo speed.
template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

enum class NumericMode { Float, Rational };

template <Scalar T>
constexpr NumericMode mode_of() {
  return is_exact_v<T> ? NumericMode::Rational : NumericMode::Float;
}

/// Distances closer than this to an integer are "boundary-ambiguous" in
/// floating mode; floor semantics are not trusted there.
inline constexpr double kBoundaryTolerance = 1e-9;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Exact conversion of a finite double into the requested scalar.
template <Scalar T>
T from_double(double x) {
  return T(x);
}

inline Rational abs_of(const Rational& q) { return boost::multiprecision::abs(q); }
inline double abs_of(double x) { return std::fabs(x); }

inline Rational floor_of(const Rational& q) {
  BigInt result;
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  mpz_fdiv_q(result.backend().data(), num.backend().data(), den.backend().data());
  return Rational(result);
}
inline double floor_of(double x) { return std::floor(x); }

template <Scalar T>
T frac_of(const T& x) {
  return x - floor_of(x);
}

inline std::int64_t to_int64(const Rational& integral) {
  return boost::multiprecision::numerator(integral).convert_to<std::int64_t>();
}
inline std::int64_t to_int64(double integral) {
  return static_cast<std::int64_t>(integral);
}

inline int sign_of(const Rational& q) { return q.sign(); }
inline int sign_of(double x) { return (x > 0) - (x < 0); }

/// Parses "num/den", an integer, or a decimal literal ("0.25" -> 1/4, exact).
Rational parse_rational(std::string_view text);

/// "num/den", or "num" when the denominator is one.
std::string format_rational(const Rational& q);

/// Best rational approximation of x with denominator at most max_den, via
/// continued-fraction convergents.
Rational rational_approximant(double x, std::int64_t max_den);

}  // namespace larg
