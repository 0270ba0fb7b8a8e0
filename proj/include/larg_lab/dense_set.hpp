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

#include "larg_lab/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace larg {

/// Axis-aligned window [xmin, xmax] x [ymin, ymax]. Finite samples of the
/// countable dense sets live inside one of these.
struct Window {
  double xmin = 0, ymin = 0, xmax = 1, ymax = 1;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool degenerate() const { return !(width() > 0) || !(height() > 0); }

  template <Scalar T>
  bool contains(const Vec2<T>& v) const {
    return T(xmin) <= v.x && v.x <= T(xmax) && T(ymin) <= v.y && v.y <= T(ymax);
  }

  Window scaled(double alpha) const { return {xmin * alpha, ymin * alpha, xmax * alpha, ymax * alpha}; }
  friend bool operator==(const Window&, const Window&) = default;
};

template <Scalar T>
struct IdfFlag {
  Vec2<T> generator;
  bool idf = false;
};

/// Finite indexed window of a countable dense set with its provenance.
template <Scalar T>
struct PointSet {
  std::vector<Vec2<T>> points;
  Window window;
  std::uint64_t seed = 0;
  T alpha = T(1);
  std::vector<IdfFlag<T>> idf_per_generator;
  std::optional<bool> pairwise_noninteger;

  std::size_t size() const { return points.size(); }
  const Vec2<T>& operator[](std::size_t i) const { return points[i]; }
  static constexpr NumericMode mode() { return mode_of<T>(); }

  /// Throws unless the points are pairwise distinct and inside the window.
  void validate() const;
};

/// Homogeneous Poisson process of the given intensity on the window. The
/// count comes from unit-rate exponential arrivals over the window area.
template <Scalar T>
PointSet<T> sample_poisson_window(const Window& window, double intensity, std::uint64_t seed);

/// Product model: on every unit interval (z, z + 1) meeting the window's x and
/// y ranges, a one-dimensional Poisson sample of the given linear intensity;
/// the point set is the Cartesian product of the two coordinate sets.
template <Scalar T>
PointSet<T> sample_product_window(const Window& window, double linear_intensity, std::uint64_t seed);

/// True iff no two distinct entries differ by an integer. Exact in rational
/// mode; floating mode treats differences within kBoundaryTolerance of an
/// integer as integers.
template <Scalar T>
bool is_idf(std::span<const T> values);

/// Some pair (i, j), i < j, whose difference is an integer.
template <Scalar T>
std::optional<std::pair<std::size_t, std::size_t>> integer_difference_pair(std::span<const T> values);

/// a . v for every point, aligned with the point indices.
template <Scalar T>
std::vector<T> projections(const PointSet<T>& points, const Vec2<T>& a);

template <Scalar T>
struct IdfRescale {
  T alpha;
  PointSet<T> points;
};

/// Finds alpha such that every generator projection of {alpha v} is idf.
/// Candidates: 1 first, then golden-ratio multiples; in rational mode each
/// candidate is a continued-fraction approximant, verified exactly.
template <Scalar T>
IdfRescale<T> rescale_to_idf(const PointSet<T>& points, std::span<const Vec2<T>> generators, int trials,
                             std::uint64_t seed);

/// Recomputes idf_per_generator (polygonal generators) and pairwise_noninteger.
template <Scalar T>
void annotate_flags(PointSet<T>& points, const NormShape<T>& shape);

struct DensityProbe {
  bool dense = true;
  Vec2<double> worst_probe{};
  double worst_distance = 0;  // distance from the worst probe to its nearest point
};

/// Grid probing of the window interior (inset by `inset` on every side): every
/// probe must have a sample point within `radius`.
template <Scalar T>
DensityProbe probe_density(const PointSet<T>& points, const NormShape<T>& shape, double radius, double inset);

template <Scalar T>
PointSet<T> convert_point_set(const PointSet<double>& points);

}  // namespace larg
