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

#include "larg_lab/larg.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace larg {

/// floor(x) + (2/3) frac(x) when frac(x) <= 1/2, else floor(x) + (4/3) frac(x) - 1/3.
template <Scalar T>
T explicit_step_isometry_1d(const T& x);

/// Strictly increasing piecewise-linear g on [0, 1] with g(0) = 0, g(1) = 1,
/// given by its breakpoints.
template <Scalar T>
class Interleaving1D {
 public:
  static Interleaving1D from_breakpoints(std::vector<std::pair<T, T>> breakpoints);
  static Interleaving1D identity();
  /// Breakpoints (0, 0), (1/2, 1/3), (1, 1).
  static Interleaving1D one_third_map();

  /// g(u) for u in [0, 1).
  T operator()(const T& u) const;
  bool is_identity() const;
  const std::vector<std::pair<T, T>>& breakpoints() const { return breakpoints_; }

 private:
  std::vector<std::pair<T, T>> breakpoints_;
};

/// floor(x) + g(frac(x)).
template <Scalar T>
T apply_fractional_map(const Interleaving1D<T>& g, const T& x);

/// The point w with a_i . w = floor(u_i) + g_i(frac(u_i)), u_i = a_i . v, for
/// the two generators of a box shape.
template <Scalar T>
Vec2<T> box_product_map(const NormShape<T>& box, const Interleaving1D<T>& g1, const Interleaving1D<T>& g2,
                        const Vec2<T>& v);

/// Same construction for an explicit non-parallel generator pair.
template <Scalar T>
Vec2<T> box_product_map(const Vec2<T>& a1, const Vec2<T>& a2, const Interleaving1D<T>& g1,
                        const Interleaving1D<T>& g2, const Vec2<T>& v);

enum class MapKind { Arbitrary, BoxProduct, Explicit1D };

template <Scalar T>
struct PointMap {
  PointSet<T> domain;
  std::vector<Vec2<T>> images;
  MapKind kind = MapKind::Arbitrary;

  /// Throws unless images align with the domain and are pairwise distinct.
  void validate() const;
};

template <Scalar T>
PointMap<T> make_point_map(const PointSet<T>& domain, const std::function<Vec2<T>(const Vec2<T>&)>& f,
                           MapKind kind = MapKind::Arbitrary);

/// (x, y) -> (explicit_step_isometry_1d(x), y).
template <Scalar T>
PointMap<T> make_explicit_1d_map(const PointSet<T>& domain);

template <Scalar T>
PointMap<T> make_box_product_map(const Vec2<T>& a1, const Vec2<T>& a2, const Interleaving1D<T>& g1,
                                 const Interleaving1D<T>& g2, const PointSet<T>& domain);

/// Result of a pairwise check; the witness is the lexicographically lowest
/// failing pair.
struct Verdict {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  double domain_distance = 0;
  double image_distance = 0;
  std::int64_t domain_floor = 0;
  std::int64_t image_floor = 0;
  std::size_t pairs_checked = 0;
};

/// floor(d(u, v)) == floor(d(f(u), f(v))) for every pair. In floating mode a
/// distance within kBoundaryTolerance of an integer raises BoundaryAmbiguous.
template <Scalar T>
Verdict is_step_isometry(const PointMap<T>& map, const NormShape<T>& shape);

/// d(u, v) == d(f(u), f(v)) for every pair; exact in rational mode, relative
/// tolerance `tol` in floating mode.
template <Scalar T>
Verdict is_isometry(const PointMap<T>& map, const NormShape<T>& shape, double tol = 1e-12);

struct LineRespect {
  bool below_kept = true;  // a . v < r  implies  a' . f(v) < r'
  bool above_kept = true;  // a . v > r  implies  a' . f(v) > r'
  std::optional<std::size_t> below_witness, above_witness;
  bool ok() const { return below_kept && above_kept; }
};

/// Throws if a domain point lies on `ell`.
template <Scalar T>
LineRespect respects_line(const PointMap<T>& map, const Line<T>& ell, const Line<T>& ell_image);

struct StatisticalReport {
  std::size_t pairs_checked = 0;
  std::vector<std::pair<std::size_t, std::size_t>> violations;  // truncated distance not preserved
  std::size_t range_crossing = 0;  // pairs in range on exactly one side of the map
  double isomorphism_bound = 1;    // (1 - p)^range_crossing
};

/// `image_index[i]` is the vertex of H that vertex i of G is sent to; both
/// graphs live on `points`. Throws Inconsistent unless this is a graph
/// isomorphism.
template <Scalar T>
StatisticalReport stepiso_statistical_check(const GeoGraph& g, const GeoGraph& h, const PointSet<T>& points,
                                            const NormShape<T>& shape, const std::vector<std::size_t>& image_index);

/// Indices of map images inside `points` (exact in rational mode, 1e-12
/// Euclidean tolerance otherwise). Throws NotFound for an image outside the set.
template <Scalar T>
std::vector<std::size_t> locate_images(const PointMap<T>& map, const PointSet<T>& points);

}  // namespace larg
