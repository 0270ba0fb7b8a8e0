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

#include "larg_lab/dense_set.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace larg {

/// The line a_g . x = offset for generator index g of a LineFamily.
template <Scalar T>
struct GridLine {
  std::size_t generator = 0;
  T offset{};
  friend bool operator==(const GridLine&, const GridLine&) = default;
};

/// Finite truncation of a line family. Lines with normal a are kept while
/// |offset - a . center| <= parallel_shift; intersection points are kept
/// inside the square of the given half width around center.
struct GridWindow {
  int parallel_shift = 3;
  double half_width = 3;
  Vec2<double> center{0, 0};
};

template <Scalar T>
struct LineFamily {
  std::vector<Vec2<T>> base_points;
  std::vector<Vec2<T>> generators;  // one per parallel class
  GridWindow window;
  /// levels[i] holds the lines first produced at level i.
  std::vector<std::vector<GridLine<T>>> levels;

  std::size_t line_count() const;
  std::vector<GridLine<T>> lines_up_to(std::size_t level) const;
  bool contains(std::size_t generator, const T& offset) const;
  /// Index of a generator (up to sign); nullopt if a is not in the family.
  std::optional<std::size_t> generator_index(const Vec2<T>& a) const;
};

/// Level 0: lines through every base point with every generator normal and
/// their integer parallels. Level i + 1: lines with generator normals through
/// intersection points of lines from levels <= i, at least one of them new at
/// level i. Generators should be scaled to dual norm one so that an offset
/// shift of 1 is a metric distance of 1.
template <Scalar T>
LineFamily<T> generate_grid(const std::vector<Vec2<T>>& base, const std::vector<Vec2<T>>& generators, int depth,
                            const GridWindow& window);

/// Offsets a . x - a . reference of every family line with normal a, reduced
/// mod 1, sorted and deduplicated.
template <Scalar T>
std::vector<T> grid_offsets(const LineFamily<T>& family, const Vec2<T>& a, const Vec2<T>& reference = {});

/// Largest gap between consecutive values on the circle R/Z (1 for one value).
double max_circular_gap(const std::vector<double>& sorted_mod1);

/// Signed generators certifying d(x, refs[i]) = a_i . (x - refs[i]), with the
/// three a_i from pairwise distinct parallel classes.
template <Scalar T>
struct AnchorCertificate {
  std::array<Vec2<T>, 3> normals;
};

/// Parallel classes whose generator attains the norm of x (two at a vertex).
template <Scalar T>
std::vector<SignedGenerator> achieving_classes(const NormShape<T>& shape, const Vec2<T>& x);

template <Scalar T>
std::optional<AnchorCertificate<T>> anchor_certificate(const NormShape<T>& shape, const std::array<Vec2<T>, 3>& refs,
                                                       const Vec2<T>& x);

/// Linear part of the affine map sending anchor[i] to images[i]. Throws if
/// the anchor is collinear.
template <Scalar T>
Mat2<T> anchor_linear_part(const std::array<Vec2<T>, 3>& anchor, const std::array<Vec2<T>, 3>& images);

/// Image of a point under an isometry with linear part `linear`, given the
/// images of three reference points, the certificate normals a_i and the
/// distances d_i: solves (L^-T a_i) . y = (L^-T a_i) . image_i + d_i for two
/// constraints and checks the third. Throws Inconsistent when the third
/// constraint or the resulting distances disagree.
template <Scalar T>
Vec2<T> reconstruct_with(const NormShape<T>& shape, const Mat2<T>& linear, const std::array<Vec2<T>, 3>& ref_images,
                         const std::array<Vec2<T>, 3>& normals, const std::array<T, 3>& dists);

/// Position of x's image under the isometry fixed by anchor -> images, given
/// d(x, anchor[i]) = dists[i]. The certificate is read off x; smooth shapes
/// refine the tangent-line solution by Newton iteration.
template <Scalar T>
Vec2<T> reconstruct_from_anchor(const NormShape<T>& shape, const std::array<Vec2<T>, 3>& anchor,
                                const std::array<Vec2<T>, 3>& images, const Vec2<T>& x, const std::array<T, 3>& dists);

/// Order position i >= 3 is determined by earlier positions refs (each < i)
/// through the listed signed generators.
template <Scalar T>
struct Determination {
  std::array<std::size_t, 3> refs{};
  std::array<Vec2<T>, 3> normals;
};

template <Scalar T>
struct GoodEnumeration {
  std::vector<std::size_t> order;                  // point indices; order[0..2] is the anchor
  std::vector<Determination<T>> certificates;      // certificates[i - 3] for order position i
  std::vector<std::size_t> unplaced;               // points never reached

  std::array<std::size_t, 3> anchor() const { return {order.at(0), order.at(1), order.at(2)}; }
};

struct EnumerationOptions {
  std::size_t max_points = 0;       // stop after this many points (0: all)
  std::size_t anchor_candidates = 16;  // points nearest the window center tried as anchors
  std::size_t anchor_attempts = 8;     // anchors walked before keeping the longest order
};

/// Greedy path-insertion enumeration from the best-separated anchors near the
/// window center; returns the longest order found. Throws NotFound when no triangular set
/// with pairwise distances below 1 exists among the anchor candidates.
template <Scalar T>
GoodEnumeration<T> good_enumeration(const PointSet<T>& points, const NormShape<T>& shape,
                                    const EnumerationOptions& options = {});

/// Throws Inconsistent with a description of the first broken condition.
template <Scalar T>
void validate_enumeration(const GoodEnumeration<T>& e, const PointSet<T>& points, const NormShape<T>& shape);

}  // namespace larg
