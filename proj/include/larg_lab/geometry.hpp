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

#include "larg_lab/error.hpp"
#include "larg_lab/scalar.hpp"

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace larg {

template <Scalar T>
struct Vec2 {
  T x{};
  T y{};

  /// Validating constructor for values arriving from outside the library.
  static Vec2 checked(T x, T y) {
    if constexpr (!is_exact_v<T>) {
      if (!std::isfinite(x) || !std::isfinite(y)) {
        fail(ErrorCode::InvalidArgument, "non-finite coordinate");
      }
    }
    return Vec2{std::move(x), std::move(y)};
  }

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(const T& s, const Vec2& a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

template <Scalar T>
T dot(const Vec2<T>& a, const Vec2<T>& b) {
  return a.x * b.x + a.y * b.y;
}

/// z-component of the planar cross product; zero iff a and b are parallel.
template <Scalar T>
T cross(const Vec2<T>& a, const Vec2<T>& b) {
  return a.x * b.y - a.y * b.x;
}

template <Scalar T>
bool is_zero(const Vec2<T>& a) {
  return a.x == 0 && a.y == 0;
}

template <Scalar T>
Vec2<double> to_double(const Vec2<T>& v) {
  return {to_double(v.x), to_double(v.y)};
}

template <Scalar T>
Vec2<T> convert_vec(const Vec2<double>& v) {
  return {from_double<T>(v.x), from_double<T>(v.y)};
}

/// Linear dependence test. Exact for rationals; relative tolerance for doubles.
template <Scalar T>
bool parallel(const Vec2<T>& a, const Vec2<T>& b) {
  if constexpr (is_exact_v<T>) {
    return cross(a, b) == 0;
  } else {
    double scale = std::hypot(a.x, a.y) * std::hypot(b.x, b.y);
    return std::fabs(cross(a, b)) <= 1e-12 * scale;
  }
}

/// Row-major 2x2 matrix.
template <Scalar T>
struct Mat2 {
  T a{}, b{}, c{}, d{};

  static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
  static Mat2 from_rows(const Vec2<T>& r0, const Vec2<T>& r1) { return {r0.x, r0.y, r1.x, r1.y}; }
  static Mat2 from_columns(const Vec2<T>& c0, const Vec2<T>& c1) { return {c0.x, c1.x, c0.y, c1.y}; }

  T determinant() const { return a * d - b * c; }
  Mat2 transpose() const { return {a, c, b, d}; }
  Mat2 inverse() const {
    T det = determinant();
    if (det == 0) fail(ErrorCode::Inconsistent, "singular 2x2 matrix");
    return {d / det, -b / det, -c / det, a / det};
  }
  Vec2<T> operator*(const Vec2<T>& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Mat2 operator*(const Mat2& m) const {
    return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Solves n0 . x = r0, n1 . x = r1. Returns nullopt when the normals are parallel.
template <Scalar T>
std::optional<Vec2<T>> solve_lines(const Vec2<T>& n0, const T& r0, const Vec2<T>& n1, const T& r1) {
  T det = cross(n0, n1);
  if (det == 0) return std::nullopt;
  return Vec2<T>{(r0 * n1.y - r1 * n0.y) / det, (n0.x * r1 - n1.x * r0) / det};
}

/// The line {x : normal . x = offset}.
template <Scalar T>
class Line {
 public:
  Line(Vec2<T> normal, T offset) : normal_(std::move(normal)), offset_(std::move(offset)) {
    if (is_zero(normal_)) fail(ErrorCode::InvalidArgument, "line normal must be non-zero");
  }

  const Vec2<T>& normal() const { return normal_; }
  const T& offset() const { return offset_; }

  /// -1, 0 or +1 according to the sign of normal . v - offset.
  int side(const Vec2<T>& v) const { return sign_of(dot(normal_, v) - offset_); }

  bool parallel_to(const Line& other) const { return parallel(normal_, other.normal_); }

  /// The parallel line shifted by `shift` in offset units.
  Line shifted(const T& shift) const { return Line(normal_, offset_ + shift); }

 private:
  Vec2<T> normal_;
  T offset_;
};

enum class ShapeKind { Polygonal, SmoothLp };

/// A generator together with the sign under which it achieves a norm value.
struct SignedGenerator {
  std::size_t index = 0;
  int sign = 1;
  friend bool operator==(const SignedGenerator&, const SignedGenerator&) = default;
};

/// Unit ball of a norm-derived metric. Polygonal shapes hold one generator per
/// parallel class; the ball is {x : |a . x| <= 1 for every generator a}.
/// SmoothLp shapes evaluate in closed form and are only available in floating
/// mode; their generator list is a budgeted approximation.
template <Scalar T>
class NormShape {
 public:
  static NormShape polygonal(std::vector<Vec2<T>> generators);
  static NormShape lp(double p, std::size_t generator_budget = 256);

  ShapeKind kind() const { return kind_; }
  bool is_polygonal() const { return kind_ == ShapeKind::Polygonal; }
  bool is_box() const { return kind_ == ShapeKind::Polygonal && generators_.size() == 2; }
  double p() const { return p_; }
  std::size_t generator_budget() const { return budget_; }

  /// Polygonal: the stored generators. SmoothLp: the budget approximation.
  std::span<const Vec2<T>> generators() const { return generators_; }
  /// Number of parallel classes (k); unbounded shapes report their budget.
  std::size_t direction_count() const { return generators_.size(); }
  /// Polygon vertices in counter-clockwise order, starting at the smallest angle.
  std::span<const Vec2<T>> vertices() const { return vertices_; }

  T norm(const Vec2<T>& x) const;
  T distance(const Vec2<T>& x, const Vec2<T>& y) const { return norm(x - y); }

  /// sup of a . x over the unit ball (the dual norm of a).
  T dual_norm(const Vec2<T>& a) const;

  /// Generator whose signed dot product attains the norm of x. For smooth
  /// shapes this is the best generator of the budget approximation.
  SignedGenerator achieving_generator(const Vec2<T>& x) const;
  Vec2<T> signed_generator(const SignedGenerator& g) const {
    Vec2<T> a = generators_.at(g.index);
    return g.sign >= 0 ? a : -a;
  }

  /// Index and sign when a equals +/- a stored generator.
  std::optional<SignedGenerator> find_generator(const Vec2<T>& a) const;

  /// Face {x in P : a . x = 1} as its two endpoints in counter-clockwise order.
  std::pair<Vec2<T>, Vec2<T>> face_of(const Vec2<T>& a) const;

  /// Shortest and longest Euclidean distance from the origin to the boundary.
  std::pair<double, double> euclidean_radii() const;

  /// True iff x -> m x preserves the norm.
  bool is_linear_isometry(const Mat2<T>& m) const;

 private:
  NormShape() = default;

  ShapeKind kind_ = ShapeKind::Polygonal;
  double p_ = 0;
  std::size_t budget_ = 0;
  std::vector<Vec2<T>> generators_;
  std::vector<Vec2<T>> vertices_;
};

/// Floor of the distance. Floating mode refuses distances within
/// kBoundaryTolerance of an integer (ErrorCode::BoundaryAmbiguous).
template <Scalar T>
std::int64_t truncated_distance(const NormShape<T>& shape, const Vec2<T>& x, const Vec2<T>& y);

/// Floor of a non-negative distance value with the same ambiguity rule.
template <Scalar T>
std::int64_t checked_floor(const T& d);

/// Normals of the L_p unit circle at `count` boundary points, scaled so that
/// a . b = 1 at the touch point b. The placement is nested: the first m
/// vectors for count = n are exactly the vectors for count = m.
std::vector<Vec2<double>> smooth_generators(double p, std::size_t count);

/// Sorted-distance strict triangle test. Throws on repeated points.
template <Scalar T>
bool is_triangular_set(const NormShape<T>& shape, const Vec2<T>& x, const Vec2<T>& y, const Vec2<T>& z);

/// Metric distance between parallel lines: |r - r'| once both normals are
/// scaled to dual norm one. Throws if the lines are not parallel.
template <Scalar T>
T line_distance(const NormShape<T>& shape, const Line<T>& a, const Line<T>& b);

/// Named presets: "square" (L-infinity), "diamond" (L1), "hexagon" (regular,
/// floating only), "lattice-hexagon" (affine-regular, rational generators),
/// "parallelogram" (slanted box), "l2", "l4".
template <Scalar T>
NormShape<T> preset_shape(std::string_view name);

extern template class NormShape<double>;
extern template class NormShape<Rational>;

}  // namespace larg
