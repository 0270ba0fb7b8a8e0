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

#include "larg_lab/stepiso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace larg {
namespace {

// Pairwise distances over a fixed point list. Polygonal shapes cache the
// generator projections so a pair costs k subtractions.
template <Scalar T>
class PairDistance {
 public:
  PairDistance(const NormShape<T>& shape, const std::vector<Vec2<T>>& pts) : shape_(shape), pts_(pts) {
    if (!shape.is_polygonal()) return;
    k_ = shape.generators().size();
    proj_.reserve(pts.size() * k_);
    for (const auto& p : pts) {
      for (const auto& a : shape.generators()) proj_.push_back(dot(a, p));
    }
  }

  T operator()(std::size_t i, std::size_t j) const {
    if (k_ == 0) return shape_.distance(pts_[i], pts_[j]);
    T best(0);
    for (std::size_t g = 0; g < k_; ++g) {
      T v = abs_of(proj_[i * k_ + g] - proj_[j * k_ + g]);
      if (v > best) best = std::move(v);
    }
    return best;
  }

 private:
  const NormShape<T>& shape_;
  const std::vector<Vec2<T>>& pts_;
  std::size_t k_ = 0;
  std::vector<T> proj_;
};

std::string pair_text(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

template <Scalar T>
std::int64_t pair_floor(const T& d, std::size_t i, std::size_t j, const char* which) {
  try {
    return checked_floor(d);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BoundaryAmbiguous) throw;
    fail(ErrorCode::BoundaryAmbiguous,
         std::string(which) + " distance of pair " + pair_text(i, j) + " is too close to an integer to truncate");
  }
}

}  // namespace

template <Scalar T>
T explicit_step_isometry_1d(const T& x) {
  T fl = floor_of(x);
  T fr = x - fl;
  if (fr <= T(1) / T(2)) return fl + T(2) / T(3) * fr;
  return fl + T(4) / T(3) * fr - T(1) / T(3);
}

template <Scalar T>
Interleaving1D<T> Interleaving1D<T>::from_breakpoints(std::vector<std::pair<T, T>> breakpoints) {
  if (breakpoints.size() < 2) fail(ErrorCode::InvalidArgument, "interleaving map needs at least two breakpoints");
  if (breakpoints.front() != std::pair<T, T>{T(0), T(0)} || breakpoints.back() != std::pair<T, T>{T(1), T(1)}) {
    fail(ErrorCode::InvalidArgument, "interleaving map must run from (0, 0) to (1, 1)");
  }
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i].first < breakpoints[i + 1].first) || !(breakpoints[i].second < breakpoints[i + 1].second)) {
      fail(ErrorCode::InvalidArgument, "interleaving breakpoints must be strictly increasing");
    }
  }
  Interleaving1D g;
  g.breakpoints_ = std::move(breakpoints);
  return g;
}

template <Scalar T>
Interleaving1D<T> Interleaving1D<T>::identity() {
  return from_breakpoints({{T(0), T(0)}, {T(1), T(1)}});
}

template <Scalar T>
Interleaving1D<T> Interleaving1D<T>::one_third_map() {
  return from_breakpoints({{T(0), T(0)}, {T(1) / T(2), T(1) / T(3)}, {T(1), T(1)}});
}

template <Scalar T>
T Interleaving1D<T>::operator()(const T& u) const {
  if (u < T(0) || u > T(1)) fail(ErrorCode::InvalidArgument, "interleaving map argument outside [0, 1]");
  std::size_t i = 0;
  while (i + 2 < breakpoints_.size() && !(u < breakpoints_[i + 1].first)) ++i;
  const auto& [s0, t0] = breakpoints_[i];
  const auto& [s1, t1] = breakpoints_[i + 1];
  return t0 + (u - s0) * (t1 - t0) / (s1 - s0);
}

template <Scalar T>
bool Interleaving1D<T>::is_identity() const {
  return std::all_of(breakpoints_.begin(), breakpoints_.end(), [](const auto& b) { return b.first == b.second; });
}

template <Scalar T>
T apply_fractional_map(const Interleaving1D<T>& g, const T& x) {
  T fl = floor_of(x);
  return fl + g(x - fl);
}

template <Scalar T>
Vec2<T> box_product_map(const Vec2<T>& a1, const Vec2<T>& a2, const Interleaving1D<T>& g1,
                        const Interleaving1D<T>& g2, const Vec2<T>& v) {
  T f1 = apply_fractional_map(g1, dot(a1, v));
  T f2 = apply_fractional_map(g2, dot(a2, v));
  auto w = solve_lines(a1, f1, a2, f2);
  if (!w) fail(ErrorCode::InvalidShape, "box generators are parallel");
  return *w;
}

template <Scalar T>
Vec2<T> box_product_map(const NormShape<T>& box, const Interleaving1D<T>& g1, const Interleaving1D<T>& g2,
                        const Vec2<T>& v) {
  if (!box.is_box()) fail(ErrorCode::InvalidShape, "box_product_map needs a shape with two generator directions");
  auto gens = box.generators();
  return box_product_map(gens[0], gens[1], g1, g2, v);
}

template <Scalar T>
void PointMap<T>::validate() const {
  if (images.size() != domain.size()) fail(ErrorCode::InvalidArgument, "map images do not align with its domain");
  std::vector<std::size_t> order(images.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return images[a] < images[b]; });
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (images[order[i]] == images[order[i + 1]]) {
      fail(ErrorCode::InvalidArgument, "map is not injective: points " +
                                           pair_text(std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1])) +
                                           " share an image");
    }
  }
}

template <Scalar T>
PointMap<T> make_point_map(const PointSet<T>& domain, const std::function<Vec2<T>(const Vec2<T>&)>& f,
                           MapKind kind) {
  PointMap<T> map{domain, {}, kind};
  map.images.reserve(domain.size());
  for (const auto& v : domain.points) map.images.push_back(f(v));
  return map;
}

template <Scalar T>
PointMap<T> make_explicit_1d_map(const PointSet<T>& domain) {
  return make_point_map<T>(
      domain, [](const Vec2<T>& v) { return Vec2<T>{explicit_step_isometry_1d(v.x), v.y}; }, MapKind::Explicit1D);
}

template <Scalar T>
PointMap<T> make_box_product_map(const Vec2<T>& a1, const Vec2<T>& a2, const Interleaving1D<T>& g1,
                                 const Interleaving1D<T>& g2, const PointSet<T>& domain) {
  return make_point_map<T>(
      domain, [&](const Vec2<T>& v) { return box_product_map(a1, a2, g1, g2, v); }, MapKind::BoxProduct);
}

template <Scalar T>
Verdict is_step_isometry(const PointMap<T>& map, const NormShape<T>& shape) {
  map.validate();
  Verdict out;
  const std::size_t n = map.domain.size();
  const PairDistance<T> dist_domain(shape, map.domain.points), dist_image(shape, map.images);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      T d = dist_domain(i, j);
      T e = dist_image(i, j);
      ++out.pairs_checked;
      std::int64_t fd = pair_floor(d, i, j, "domain");
      std::int64_t fe = pair_floor(e, i, j, "image");
      if (fd != fe) {
        out.ok = false;
        out.witness = {i, j};
        out.domain_distance = to_double(d);
        out.image_distance = to_double(e);
        out.domain_floor = fd;
        out.image_floor = fe;
        return out;
      }
    }
  }
  return out;
}

template <Scalar T>
Verdict is_isometry(const PointMap<T>& map, const NormShape<T>& shape, double tol) {
  map.validate();
  Verdict out;
  const std::size_t n = map.domain.size();
  const PairDistance<T> dist_domain(shape, map.domain.points), dist_image(shape, map.images);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      T d = dist_domain(i, j);
      T e = dist_image(i, j);
      ++out.pairs_checked;
      bool same;
      if constexpr (is_exact_v<T>) {
        same = d == e;
      } else {
        same = std::fabs(d - e) <= tol * std::max({1.0, d, e});
      }
      if (!same) {
        out.ok = false;
        out.witness = {i, j};
        out.domain_distance = to_double(d);
        out.image_distance = to_double(e);
        out.domain_floor = to_int64(floor_of(d));
        out.image_floor = to_int64(floor_of(e));
        return out;
      }
    }
  }
  return out;
}

template <Scalar T>
LineRespect respects_line(const PointMap<T>& map, const Line<T>& ell, const Line<T>& ell_image) {
  map.validate();
  LineRespect out;
  for (std::size_t i = 0; i < map.domain.size(); ++i) {
    const auto& v = map.domain[i];
    int s = ell.side(v);
    if constexpr (!is_exact_v<T>) {
      double gap = dot(ell.normal(), v) - ell.offset();
      double scale = std::max({1.0, std::fabs(ell.offset()), std::hypot(ell.normal().x, ell.normal().y)});
      if (std::fabs(gap) <= kBoundaryTolerance * scale) s = 0;
    }
    if (s == 0) fail(ErrorCode::BoundaryAmbiguous, "domain point " + std::to_string(i) + " lies on the line");
    int t = ell_image.side(map.images[i]);
    if (s < 0 && t >= 0) {
      out.below_kept = false;
      if (!out.below_witness) out.below_witness = i;
    }
    if (s > 0 && t <= 0) {
      out.above_kept = false;
      if (!out.above_witness) out.above_witness = i;
    }
  }
  return out;
}

template <Scalar T>
std::vector<std::size_t> locate_images(const PointMap<T>& map, const PointSet<T>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return points[a] < points[b]; });
  std::vector<std::size_t> out;
  out.reserve(map.images.size());
  for (std::size_t i = 0; i < map.images.size(); ++i) {
    const auto& w = map.images[i];
    std::optional<std::size_t> found;
    if constexpr (is_exact_v<T>) {
      auto it = std::lower_bound(order.begin(), order.end(), w, [&](auto idx, const auto& key) { return points[idx] < key; });
      if (it != order.end() && points[*it] == w) found = *it;
    } else {
      constexpr double tol = 1e-12;
      Vec2<double> lo{w.x - tol * std::max(1.0, std::fabs(w.x)), -INFINITY};
      auto it = std::lower_bound(order.begin(), order.end(), lo, [&](auto idx, const auto& key) { return points[idx] < key; });
      for (; it != order.end() && points[*it].x <= w.x + tol * std::max(1.0, std::fabs(w.x)); ++it) {
        const auto& c = points[*it];
        if (std::hypot(c.x - w.x, c.y - w.y) <= tol * std::max({1.0, std::fabs(w.x), std::fabs(w.y)})) {
          found = *it;
          break;
        }
      }
    }
    if (!found) fail(ErrorCode::NotFound, "image of point " + std::to_string(i) + " is not in the point set");
    out.push_back(*found);
  }
  return out;
}

template <Scalar T>
StatisticalReport stepiso_statistical_check(const GeoGraph& g, const GeoGraph& h, const PointSet<T>& points,
                                            const NormShape<T>& shape, const std::vector<std::size_t>& image_index) {
  const std::size_t n = points.size();
  if (g.n != n || h.n != n || image_index.size() != n) {
    fail(ErrorCode::InvalidArgument, "graphs, point set and candidate map must have the same size");
  }
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (image_index[i] >= n || hit[image_index[i]]) fail(ErrorCode::Inconsistent, "candidate is not a bijection");
    hit[image_index[i]] = true;
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (g.adjacent(u, v) != h.adjacent(image_index[u], image_index[v])) {
        fail(ErrorCode::Inconsistent, "candidate is not a graph isomorphism: pair " + pair_text(u, v) +
                                          " changes adjacency");
      }
    }
  }
  StatisticalReport out;
  const T threshold = from_double<T>(g.delta);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      T d = shape.distance(points[u], points[v]);
      T e = shape.distance(points[image_index[u]], points[image_index[v]]);
      ++out.pairs_checked;
      if (pair_floor(d, u, v, "domain") != pair_floor(e, u, v, "image")) out.violations.emplace_back(u, v);
      if ((d < threshold) != (e < threshold)) ++out.range_crossing;
    }
  }
  out.isomorphism_bound = std::pow(1 - g.p, static_cast<double>(out.range_crossing));
  return out;
}

#define LARG_INSTANTIATE(T)                                                                                       \
  template T explicit_step_isometry_1d(const T&);                                                                 \
  template class Interleaving1D<T>;                                                                               \
  template T apply_fractional_map(const Interleaving1D<T>&, const T&);                                            \
  template Vec2<T> box_product_map(const NormShape<T>&, const Interleaving1D<T>&, const Interleaving1D<T>&,       \
                                   const Vec2<T>&);                                                               \
  template Vec2<T> box_product_map(const Vec2<T>&, const Vec2<T>&, const Interleaving1D<T>&,                      \
                                   const Interleaving1D<T>&, const Vec2<T>&);                                     \
  template struct PointMap<T>;                                                                                    \
  template PointMap<T> make_point_map(const PointSet<T>&, const std::function<Vec2<T>(const Vec2<T>&)>&, MapKind); \
  template PointMap<T> make_explicit_1d_map(const PointSet<T>&);                                                  \
  template PointMap<T> make_box_product_map(const Vec2<T>&, const Vec2<T>&, const Interleaving1D<T>&,             \
                                            const Interleaving1D<T>&, const PointSet<T>&);                        \
  template Verdict is_step_isometry(const PointMap<T>&, const NormShape<T>&);                                     \
  template Verdict is_isometry(const PointMap<T>&, const NormShape<T>&, double);                                  \
  template LineRespect respects_line(const PointMap<T>&, const Line<T>&, const Line<T>&);                         \
  template std::vector<std::size_t> locate_images(const PointMap<T>&, const PointSet<T>&);                        \
  template StatisticalReport stepiso_statistical_check(const GeoGraph&, const GeoGraph&, const PointSet<T>&,      \
                                                       const NormShape<T>&, const std::vector<std::size_t>&);

LARG_INSTANTIATE(double)
LARG_INSTANTIATE(Rational)

#undef LARG_INSTANTIATE

}  // namespace larg
