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

#include "larg_lab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace larg {
namespace {

template <Scalar T>
bool near(const T& a, const T& b) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return std::fabs(a - b) <= 1e-10 * std::max({1.0, std::fabs(a), std::fabs(b)});
  }
}

template <Scalar T>
bool near(const Vec2<T>& a, const Vec2<T>& b) {
  return near(a.x, b.x) && near(a.y, b.y);
}

// Upper half-plane (angle in [0, pi)) sorts before the lower half-plane.
template <Scalar T>
bool angle_less(const Vec2<T>& a, const Vec2<T>& b) {
  auto lower = [](const Vec2<T>& v) { return v.y < 0 || (v.y == 0 && v.x < 0); };
  bool la = lower(a), lb = lower(b);
  if (la != lb) return !la;
  return cross(a, b) > 0;
}

double lp_norm(double p, double x, double y) {
  double ax = std::fabs(x), ay = std::fabs(y);
  double m = std::max(ax, ay);
  if (m == 0) return 0;
  return m * std::pow(std::pow(ax / m, p) + std::pow(ay / m, p), 1.0 / p);
}

// Base-2 radical inverse of j.
double van_der_corput(std::size_t j) {
  double result = 0, base = 0.5;
  while (j != 0) {
    if (j & 1u) result += base;
    j >>= 1u;
    base *= 0.5;
  }
  return result;
}

}  // namespace

template <Scalar T>
NormShape<T> NormShape<T>::polygonal(std::vector<Vec2<T>> generators) {
  NormShape shape;
  shape.kind_ = ShapeKind::Polygonal;
  for (auto& a : generators) {
    if constexpr (!is_exact_v<T>) a = Vec2<T>::checked(a.x, a.y);
    if (is_zero(a)) fail(ErrorCode::InvalidShape, "zero generator");
    bool duplicate = false;
    for (const auto& b : shape.generators_) {
      if (!parallel(a, b)) continue;
      if (near(a, b) || near(a, Vec2<T>(-b))) {
        duplicate = true;
        break;
      }
      fail(ErrorCode::InvalidShape, "parallel generators with different lengths");
    }
    if (!duplicate) shape.generators_.push_back(a);
  }
  if (shape.generators_.size() < 2) {
    fail(ErrorCode::InvalidShape, "generators must span the plane (two non-parallel directions)");
  }

  // Vertices: pairwise intersections of the 2k face lines that satisfy every constraint.
  const auto& gens = shape.generators_;
  std::vector<Vec2<T>> faces;
  for (const auto& a : gens) {
    faces.push_back(a);
    faces.push_back(-a);
  }
  const T one(1);
  std::vector<Vec2<T>> vertices;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      auto v = solve_lines(faces[i], one, faces[j], one);
      if (!v) continue;
      bool inside = std::all_of(gens.begin(), gens.end(), [&](const Vec2<T>& a) {
        T s = abs_of(dot(a, *v));
        return s < one || near(s, one);
      });
      if (!inside) continue;
      bool seen = std::any_of(vertices.begin(), vertices.end(),
                              [&](const Vec2<T>& w) { return near(w, *v); });
      if (!seen) vertices.push_back(*v);
    }
  }
  std::sort(vertices.begin(), vertices.end(), angle_less<T>);
  if (vertices.size() != faces.size()) {
    fail(ErrorCode::InvalidShape,
         "generators do not each define a face of the unit ball (expected " +
             std::to_string(faces.size()) + " vertices, found " + std::to_string(vertices.size()) + ")");
  }
  for (const auto& a : faces) {
    auto on_face = std::count_if(vertices.begin(), vertices.end(),
                                 [&](const Vec2<T>& v) { return near(dot(a, v), one); });
    if (on_face != 2) fail(ErrorCode::InvalidShape, "a generator touches the unit ball in a single vertex");
  }
  shape.vertices_ = std::move(vertices);
  return shape;
}

template <Scalar T>
NormShape<T> NormShape<T>::lp(double p, std::size_t generator_budget) {
  if constexpr (is_exact_v<T>) {
    fail(ErrorCode::InvalidShape, "smooth L_p shapes are only available in floating mode");
  } else {
    if (!(p > 1) || !std::isfinite(p)) fail(ErrorCode::InvalidShape, "L_p shapes require finite p > 1");
    if (generator_budget < 3) fail(ErrorCode::InvalidShape, "generator budget must be at least 3");
    NormShape shape;
    shape.kind_ = ShapeKind::SmoothLp;
    shape.p_ = p;
    shape.budget_ = generator_budget;
    shape.generators_ = smooth_generators(p, generator_budget);
    return shape;
  }
}

template <Scalar T>
T NormShape<T>::norm(const Vec2<T>& x) const {
  if constexpr (!is_exact_v<T>) {
    if (kind_ == ShapeKind::SmoothLp) return lp_norm(p_, x.x, x.y);
  }
  T best(0);
  for (const auto& a : generators_) {
    T v = abs_of(dot(a, x));
    if (v > best) best = v;
  }
  return best;
}

template <Scalar T>
T NormShape<T>::dual_norm(const Vec2<T>& a) const {
  if constexpr (!is_exact_v<T>) {
    if (kind_ == ShapeKind::SmoothLp) return lp_norm(p_ / (p_ - 1), a.x, a.y);
  }
  T best(0);
  for (const auto& v : vertices_) {
    T s = abs_of(dot(a, v));
    if (s > best) best = s;
  }
  return best;
}

template <Scalar T>
SignedGenerator NormShape<T>::achieving_generator(const Vec2<T>& x) const {
  SignedGenerator best;
  T best_value(-1);
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    T v = dot(generators_[i], x);
    T a = abs_of(v);
    if (a > best_value) {
      best_value = a;
      best = {i, v < 0 ? -1 : 1};
    }
  }
  return best;
}

template <Scalar T>
std::optional<SignedGenerator> NormShape<T>::find_generator(const Vec2<T>& a) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (near(a, generators_[i])) return SignedGenerator{i, 1};
    if (near(a, Vec2<T>(-generators_[i]))) return SignedGenerator{i, -1};
  }
  return std::nullopt;
}

template <Scalar T>
std::pair<Vec2<T>, Vec2<T>> NormShape<T>::face_of(const Vec2<T>& a) const {
  if (kind_ != ShapeKind::Polygonal) fail(ErrorCode::InvalidShape, "faces exist only for polygonal shapes");
  if (!find_generator(a)) fail(ErrorCode::NotFound, "vector is not a stored generator or its negation");
  const T one(1);
  const std::size_t m = vertices_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& v = vertices_[i];
    const auto& w = vertices_[(i + 1) % m];
    if (near(dot(a, v), one) && near(dot(a, w), one)) return {v, w};
  }
  fail(ErrorCode::InvalidShape, "face not found");
}

template <Scalar T>
std::pair<double, double> NormShape<T>::euclidean_radii() const {
  if (kind_ == ShapeKind::SmoothLp) {
    double diagonal = std::pow(2.0, 0.5 - 1.0 / p_);
    return {std::min(1.0, diagonal), std::max(1.0, diagonal)};
  }
  double inner = INFINITY, outer = 0;
  for (const auto& a : generators_) {
    auto ad = to_double(a);
    inner = std::min(inner, 1.0 / std::hypot(ad.x, ad.y));
  }
  for (const auto& v : vertices_) {
    auto vd = to_double(v);
    outer = std::max(outer, std::hypot(vd.x, vd.y));
  }
  return {inner, outer};
}

template <Scalar T>
bool NormShape<T>::is_linear_isometry(const Mat2<T>& m) const {
  if (m.determinant() == 0) return false;
  if (kind_ == ShapeKind::Polygonal) {
    // m(P) = P iff m permutes the vertex set.
    return std::all_of(vertices_.begin(), vertices_.end(), [&](const Vec2<T>& v) {
      Vec2<T> image = m * v;
      return std::any_of(vertices_.begin(), vertices_.end(), [&](const Vec2<T>& w) { return near(image, w); });
    });
  }
  if constexpr (!is_exact_v<T>) {
    for (int i = 0; i < 72; ++i) {
      double theta = std::numbers::pi * i / 36.0;
      Vec2<double> u{std::cos(theta), std::sin(theta)};
      double before = norm(u), after = norm(m * u);
      if (std::fabs(before - after) > 1e-9 * before) return false;
    }
  }
  return true;
}

template <Scalar T>
std::int64_t checked_floor(const T& d) {
  if constexpr (is_exact_v<T>) {
    return to_int64(floor_of(d));
  } else {
    if (d == 0) return 0;
    double nearest = std::round(d);
    if (std::fabs(d - nearest) < kBoundaryTolerance) {
      fail(ErrorCode::BoundaryAmbiguous, "distance " + std::to_string(d) + " is within the boundary tolerance of an integer");
    }
    return static_cast<std::int64_t>(std::floor(d));
  }
}

template <Scalar T>
std::int64_t truncated_distance(const NormShape<T>& shape, const Vec2<T>& x, const Vec2<T>& y) {
  return checked_floor(shape.distance(x, y));
}

std::vector<Vec2<double>> smooth_generators(double p, std::size_t count) {
  if (!(p > 1) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "smooth generators require finite p > 1");
  if (count < 3) fail(ErrorCode::InvalidArgument, "smooth generators require count >= 3");
  std::vector<Vec2<double>> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    // Half circle suffices: generators act through |a . x|.
    double theta = std::numbers::pi * van_der_corput(j);
    double ux = std::cos(theta), uy = std::sin(theta);
    double len = lp_norm(p, ux, uy);
    double bx = ux / len, by = uy / len;
    auto component = [p](double b) { return std::copysign(std::pow(std::fabs(b), p - 1), b); };
    out.push_back({component(bx), component(by)});
  }
  return out;
}

template <Scalar T>
bool is_triangular_set(const NormShape<T>& shape, const Vec2<T>& x, const Vec2<T>& y, const Vec2<T>& z) {
  if (x == y || y == z || x == z) fail(ErrorCode::InvalidArgument, "triangular set needs three distinct points");
  std::array<T, 3> d{shape.distance(x, y), shape.distance(y, z), shape.distance(x, z)};
  std::sort(d.begin(), d.end());
  if constexpr (is_exact_v<T>) {
    return d[0] + d[1] > d[2];
  } else {
    return d[0] + d[1] > d[2] + 1e-12 * std::max(1.0, d[2]);
  }
}

template <Scalar T>
T line_distance(const NormShape<T>& shape, const Line<T>& a, const Line<T>& b) {
  if (!a.parallel_to(b)) fail(ErrorCode::InvalidArgument, "line distance needs parallel lines");
  T sa = shape.dual_norm(a.normal());
  T sb = shape.dual_norm(b.normal());
  T ra = a.offset() / sa;
  T rb = b.offset() / sb;
  // Opposite orientation: a . x = r is the same line as (-a) . x = -r.
  if (dot(a.normal(), b.normal()) < 0) rb = -rb;
  return abs_of(ra - rb);
}

template <Scalar T>
NormShape<T> preset_shape(std::string_view name) {
  auto q = [](const char* text) {
    if constexpr (is_exact_v<T>) {
      return parse_rational(text);
    } else {
      return to_double(parse_rational(text));
    }
  };
  using V = Vec2<T>;
  if (name == "square") return NormShape<T>::polygonal({V{q("1"), q("0")}, V{q("0"), q("1")}});
  if (name == "diamond") return NormShape<T>::polygonal({V{q("1"), q("1")}, V{q("1"), q("-1")}});
  if (name == "parallelogram") return NormShape<T>::polygonal({V{q("1"), q("1/2")}, V{q("-1/3"), q("1")}});
  if (name == "lattice-hexagon") {
    return NormShape<T>::polygonal({V{q("1"), q("0")}, V{q("0"), q("1")}, V{q("1"), q("-1")}});
  }
  if (name == "hexagon") {
    const double h = std::sqrt(3.0) / 2.0;
    return NormShape<T>::polygonal({convert_vec<T>({1.0, 0.0}), convert_vec<T>({0.5, h}), convert_vec<T>({-0.5, h})});
  }
  if (name == "l2") return NormShape<T>::lp(2.0);
  if (name == "l4") return NormShape<T>::lp(4.0);
  fail(ErrorCode::NotFound, "unknown shape preset '" + std::string(name) + "'");
}

template class NormShape<double>;
template class NormShape<Rational>;

template std::int64_t checked_floor(const double&);
template std::int64_t checked_floor(const Rational&);
template std::int64_t truncated_distance(const NormShape<double>&, const Vec2<double>&, const Vec2<double>&);
template std::int64_t truncated_distance(const NormShape<Rational>&, const Vec2<Rational>&, const Vec2<Rational>&);
template bool is_triangular_set(const NormShape<double>&, const Vec2<double>&, const Vec2<double>&, const Vec2<double>&);
template bool is_triangular_set(const NormShape<Rational>&, const Vec2<Rational>&, const Vec2<Rational>&,
                                const Vec2<Rational>&);
template double line_distance(const NormShape<double>&, const Line<double>&, const Line<double>&);
template Rational line_distance(const NormShape<Rational>&, const Line<Rational>&, const Line<Rational>&);
template NormShape<double> preset_shape(std::string_view);
template NormShape<Rational> preset_shape(std::string_view);

}  // namespace larg
