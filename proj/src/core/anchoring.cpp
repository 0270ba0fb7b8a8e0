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

#include "larg_lab/anchoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace larg {
namespace {

constexpr double kOffsetMerge = 1e-10;

// Offsets of one generator; floating mode merges values closer than kOffsetMerge.
template <Scalar T>
class OffsetSet {
 public:
  bool insert(const T& o) {
    if constexpr (is_exact_v<T>) {
      return values_.insert(o).second;
    } else {
      double tol = kOffsetMerge * std::max(1.0, std::fabs(o));
      auto it = values_.lower_bound(o - tol);
      if (it != values_.end() && *it <= o + tol) return false;
      values_.insert(o);
      return true;
    }
  }
  bool contains(const T& o) const {
    if constexpr (is_exact_v<T>) {
      return values_.count(o) > 0;
    } else {
      double tol = kOffsetMerge * std::max(1.0, std::fabs(o));
      auto it = values_.lower_bound(o - tol);
      return it != values_.end() && *it <= o + tol;
    }
  }

 private:
  std::set<T> values_;
};

template <Scalar T>
bool near_value(const T& a, const T& b, double rel) {
  if constexpr (is_exact_v<T>) {
    (void)rel;
    return a == b;
  } else {
    return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
  }
}

}  // namespace

template <Scalar T>
std::size_t LineFamily<T>::line_count() const {
  std::size_t total = 0;
  for (const auto& level : levels) total += level.size();
  return total;
}

template <Scalar T>
std::vector<GridLine<T>> LineFamily<T>::lines_up_to(std::size_t level) const {
  std::vector<GridLine<T>> out;
  for (std::size_t i = 0; i <= level && i < levels.size(); ++i) out.insert(out.end(), levels[i].begin(), levels[i].end());
  return out;
}

template <Scalar T>
bool LineFamily<T>::contains(std::size_t generator, const T& offset) const {
  for (const auto& level : levels) {
    for (const auto& line : level) {
      if (line.generator == generator && near_value(line.offset, offset, kOffsetMerge)) return true;
    }
  }
  return false;
}

template <Scalar T>
std::optional<std::size_t> LineFamily<T>::generator_index(const Vec2<T>& a) const {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i] == a || generators[i] == -a) return i;
    if constexpr (!is_exact_v<T>) {
      auto close = [](const Vec2<T>& u, const Vec2<T>& v) {
        return std::hypot(u.x - v.x, u.y - v.y) <= 1e-12 * std::max(1.0, std::hypot(u.x, u.y));
      };
      if (close(generators[i], a) || close(generators[i], -a)) return i;
    }
  }
  return std::nullopt;
}

template <Scalar T>
LineFamily<T> generate_grid(const std::vector<Vec2<T>>& base, const std::vector<Vec2<T>>& generators, int depth,
                            const GridWindow& window) {
  if (depth < 0) fail(ErrorCode::InvalidArgument, "grid depth must be non-negative");
  if (window.parallel_shift < 0 || !(window.half_width > 0)) fail(ErrorCode::InvalidArgument, "bad grid window");
  if (base.empty()) fail(ErrorCode::InvalidArgument, "grid needs at least one base point");
  LineFamily<T> family;
  family.base_points = base;
  family.window = window;
  for (const auto& a : generators) {
    if (is_zero(a)) fail(ErrorCode::InvalidArgument, "zero generator");
    bool dup = std::any_of(family.generators.begin(), family.generators.end(),
                           [&](const Vec2<T>& b) { return parallel(a, b); });
    if (!dup) family.generators.push_back(a);
  }
  if (family.generators.size() < 2) fail(ErrorCode::InvalidArgument, "grid generators are all parallel");

  const std::size_t k = family.generators.size();
  const Vec2<T> center = convert_vec<T>(window.center);
  const T shift(window.parallel_shift);
  std::vector<T> center_offset;
  for (const auto& a : family.generators) center_offset.push_back(dot(a, center));
  std::vector<OffsetSet<T>> seen(k);
  // Lines per generator at levels <= current, for the intersection sweep.
  std::vector<std::vector<T>> all(k);

  auto in_band = [&](std::size_t g, const T& o) { return abs_of(o - center_offset[g]) <= shift; };
  // Adds o and its integer parallels inside the band; returns the new lines.
  auto add_with_parallels = [&](std::size_t g, const T& o, std::vector<GridLine<T>>& level) {
    T lo = center_offset[g] - shift - o;
    T first = -floor_of(-lo);  // ceil
    for (T z = first; o + z - center_offset[g] <= shift; z += 1) {
      T value = o + z;
      if (seen[g].insert(value)) level.push_back({g, value});
    }
  };

  std::vector<GridLine<T>> level0;
  for (const auto& b : base) {
    for (std::size_t g = 0; g < k; ++g) add_with_parallels(g, dot(family.generators[g], b), level0);
  }
  family.levels.push_back(level0);
  for (const auto& line : level0) all[line.generator].push_back(line.offset);

  const double box = window.half_width;
  for (int level = 0; level < depth; ++level) {
    const auto& fresh = family.levels.back();
    std::vector<GridLine<T>> next;
    for (const auto& line : fresh) {
      const std::size_t g1 = line.generator;
      for (std::size_t g2 = 0; g2 < k; ++g2) {
        if (g2 == g1) continue;
        for (const auto& o2 : all[g2]) {
          auto p = solve_lines(family.generators[g1], line.offset, family.generators[g2], o2);
          if (!p) continue;
          Vec2<double> pd = to_double(*p);
          if (std::fabs(pd.x - window.center.x) > box || std::fabs(pd.y - window.center.y) > box) continue;
          for (std::size_t c = 0; c < k; ++c) {
            T o = dot(family.generators[c], *p);
            if (in_band(c, o) && !seen[c].contains(o)) add_with_parallels(c, o, next);
          }
        }
      }
    }
    for (const auto& l : next) all[l.generator].push_back(l.offset);
    family.levels.push_back(std::move(next));
  }
  return family;
}

template <Scalar T>
std::vector<T> grid_offsets(const LineFamily<T>& family, const Vec2<T>& a, const Vec2<T>& reference) {
  auto index = family.generator_index(a);
  if (!index) fail(ErrorCode::NotFound, "vector is not a generator of this line family");
  const bool flipped = !(family.generators[*index] == a) && [&] {
    if constexpr (is_exact_v<T>) {
      return true;
    } else {
      return dot(family.generators[*index], a) < 0;
    }
  }();
  T ref = dot(a, reference);
  std::vector<T> out;
  for (const auto& level : family.levels) {
    for (const auto& line : level) {
      if (line.generator != *index) continue;
      T o = flipped ? -line.offset : line.offset;
      out.push_back(frac_of(o - ref));
    }
  }
  std::sort(out.begin(), out.end());
  if constexpr (is_exact_v<T>) {
    out.erase(std::unique(out.begin(), out.end()), out.end());
  } else {
    std::vector<double> merged;
    for (double v : out) {
      if (v > 1 - kOffsetMerge) v = 0;
      if (merged.empty() || v - merged.back() > kOffsetMerge) merged.push_back(v);
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [](double x, double y) { return std::fabs(x - y) <= kOffsetMerge; }),
                 merged.end());
    out = std::move(merged);
  }
  return out;
}

double max_circular_gap(const std::vector<double>& v) {
  if (v.empty()) return 1;
  double gap = v.front() + 1 - v.back();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) gap = std::max(gap, v[i + 1] - v[i]);
  return gap;
}

template <Scalar T>
std::vector<SignedGenerator> achieving_classes(const NormShape<T>& shape, const Vec2<T>& x) {
  if (is_zero(x)) fail(ErrorCode::InvalidArgument, "the zero vector has no achieving generator");
  std::vector<SignedGenerator> out;
  if (!shape.is_polygonal()) {
    out.push_back(shape.achieving_generator(x));
    return out;
  }
  T n = shape.norm(x);
  auto gens = shape.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    T v = dot(gens[i], x);
    if (near_value(abs_of(v), n, 1e-12)) out.push_back({i, v < 0 ? -1 : 1});
  }
  return out;
}

template <Scalar T>
std::optional<AnchorCertificate<T>> anchor_certificate(const NormShape<T>& shape, const std::array<Vec2<T>, 3>& refs,
                                                       const Vec2<T>& x) {
  std::array<std::vector<SignedGenerator>, 3> classes;
  for (int i = 0; i < 3; ++i) classes[i] = achieving_classes(shape, x - refs[i]);
  for (const auto& c0 : classes[0]) {
    for (const auto& c1 : classes[1]) {
      if (c1.index == c0.index) continue;
      for (const auto& c2 : classes[2]) {
        if (c2.index == c0.index || c2.index == c1.index) continue;
        return AnchorCertificate<T>{{shape.signed_generator(c0), shape.signed_generator(c1), shape.signed_generator(c2)}};
      }
    }
  }
  return std::nullopt;
}

template <Scalar T>
Mat2<T> anchor_linear_part(const std::array<Vec2<T>, 3>& anchor, const std::array<Vec2<T>, 3>& images) {
  auto d = Mat2<T>::from_columns(anchor[1] - anchor[0], anchor[2] - anchor[0]);
  if (d.determinant() == 0) fail(ErrorCode::InvalidArgument, "anchor points are collinear");
  auto m = Mat2<T>::from_columns(images[1] - images[0], images[2] - images[0]);
  return m * d.inverse();
}

namespace {

// Newton refinement of d(y, t_a) = d_a, d(y, t_b) = d_b from a starting point.
Vec2<double> newton_two_distances(const NormShape<double>& shape, Vec2<double> y, const Vec2<double>& ta, double da,
                                  const Vec2<double>& tb, double db) {
  for (int iter = 0; iter < 60; ++iter) {
    double fa = shape.distance(y, ta) - da, fb = shape.distance(y, tb) - db;
    double scale = std::max({1.0, da, db});
    if (std::fabs(fa) < 1e-15 * scale && std::fabs(fb) < 1e-15 * scale) break;
    double h = 1e-7 * scale;
    Mat2<double> jac{(shape.distance(y + Vec2<double>{h, 0}, ta) - shape.distance(y - Vec2<double>{h, 0}, ta)) / (2 * h),
                     (shape.distance(y + Vec2<double>{0, h}, ta) - shape.distance(y - Vec2<double>{0, h}, ta)) / (2 * h),
                     (shape.distance(y + Vec2<double>{h, 0}, tb) - shape.distance(y - Vec2<double>{h, 0}, tb)) / (2 * h),
                     (shape.distance(y + Vec2<double>{0, h}, tb) - shape.distance(y - Vec2<double>{0, h}, tb)) / (2 * h)};
    if (jac.determinant() == 0) break;
    Vec2<double> step = jac.inverse() * Vec2<double>{fa, fb};
    y = y - step;
  }
  return y;
}

}  // namespace

template <Scalar T>
Vec2<T> reconstruct_with(const NormShape<T>& shape, const Mat2<T>& linear, const std::array<Vec2<T>, 3>& ref_images,
                         const std::array<Vec2<T>, 3>& normals, const std::array<T, 3>& dists) {
  if (linear.determinant() == 0) fail(ErrorCode::InvalidArgument, "linear part is singular");
  if (shape.is_box()) fail(ErrorCode::InvalidShape, "box shapes do not determine points from three distances");
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (parallel(normals[i], normals[j])) fail(ErrorCode::InvalidArgument, "certificate normals are parallel");
    }
  }
  const Mat2<T> dual = linear.inverse().transpose();
  std::array<Vec2<T>, 3> n;
  std::array<T, 3> r;
  for (int i = 0; i < 3; ++i) {
    n[i] = dual * normals[i];
    r[i] = dot(n[i], ref_images[i]) + dists[i];
  }
  auto y = solve_lines(n[0], r[0], n[1], r[1]);
  if (!y) fail(ErrorCode::Inconsistent, "first two constraints are parallel");

  if constexpr (!is_exact_v<T>) {
    if (!shape.is_polygonal()) {
      *y = newton_two_distances(shape, *y, ref_images[0], dists[0], ref_images[1], dists[1]);
      if (!near_value(shape.distance(*y, ref_images[2]), dists[2], 1e-9)) {
        fail(ErrorCode::Inconsistent, "third distance constraint is not met");
      }
      return *y;
    }
  }
  T residual = dot(n[2], *y) - r[2];
  bool consistent;
  if constexpr (is_exact_v<T>) {
    consistent = residual == 0;
  } else {
    double scale = std::max({1.0, std::fabs(r[2]), std::hypot(n[2].x, n[2].y) * std::hypot(y->x, y->y)});
    consistent = std::fabs(residual) <= 1e-9 * scale;
  }
  if (!consistent) fail(ErrorCode::Inconsistent, "third face constraint is not met");
  for (int i = 0; i < 3; ++i) {
    if (!near_value(shape.distance(*y, ref_images[i]), dists[i], 1e-9)) {
      fail(ErrorCode::Inconsistent, "reconstructed point misses distance " + std::to_string(i));
    }
  }
  return *y;
}

template <Scalar T>
Vec2<T> reconstruct_from_anchor(const NormShape<T>& shape, const std::array<Vec2<T>, 3>& anchor,
                                const std::array<Vec2<T>, 3>& images, const Vec2<T>& x, const std::array<T, 3>& dists) {
  if (shape.is_box()) fail(ErrorCode::InvalidShape, "box shapes do not determine points from three distances");
  if (!is_triangular_set(shape, anchor[0], anchor[1], anchor[2])) {
    fail(ErrorCode::InvalidArgument, "anchor is not a triangular set");
  }
  auto cert = anchor_certificate(shape, anchor, x);
  if (!cert) fail(ErrorCode::InvalidArgument, "no certificate with three distinct generator classes");
  return reconstruct_with(shape, anchor_linear_part(anchor, images), images, cert->normals, dists);
}

namespace {

template <Scalar T>
struct ClassSlots {
  // Up to two lowest order positions per generator class, with the sign.
  std::vector<std::array<std::pair<std::size_t, int>, 2>> slots;
  std::vector<int> filled;
};

template <Scalar T>
std::optional<Determination<T>> find_determination(const ClassSlots<T>& cs, const NormShape<T>& shape) {
  std::vector<std::size_t> classes;
  for (std::size_t c = 0; c < cs.filled.size(); ++c) {
    if (cs.filled[c] > 0) classes.push_back(c);
  }
  if (classes.size() < 3) return std::nullopt;
  std::sort(classes.begin(), classes.end(),
            [&](auto a, auto b) { return cs.slots[a][0].first < cs.slots[b][0].first || (cs.slots[a][0].first == cs.slots[b][0].first && a < b); });
  if (classes.size() > 8) classes.resize(8);
  const auto gens = shape.generators();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      for (std::size_t l = j + 1; l < classes.size(); ++l) {
        std::array<std::size_t, 3> cls{classes[i], classes[j], classes[l]};
        for (int a = 0; a < cs.filled[cls[0]]; ++a) {
          for (int b = 0; b < cs.filled[cls[1]]; ++b) {
            for (int c = 0; c < cs.filled[cls[2]]; ++c) {
              auto pa = cs.slots[cls[0]][a], pb = cs.slots[cls[1]][b], pc = cs.slots[cls[2]][c];
              if (pa.first == pb.first || pa.first == pc.first || pb.first == pc.first) continue;
              if (parallel(gens[cls[0]], gens[cls[1]]) || parallel(gens[cls[0]], gens[cls[2]]) ||
                  parallel(gens[cls[1]], gens[cls[2]])) {
                continue;
              }
              Determination<T> d;
              d.refs = {pa.first, pb.first, pc.first};
              d.normals = {shape.signed_generator({cls[0], pa.second}), shape.signed_generator({cls[1], pb.second}),
                           shape.signed_generator({cls[2], pc.second})};
              return d;
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

template <Scalar T>
GoodEnumeration<T> good_enumeration(const PointSet<T>& points, const NormShape<T>& shape,
                                    const EnumerationOptions& options) {
  if (shape.is_box()) fail(ErrorCode::InvalidShape, "good enumerations need a non-box shape");
  const std::size_t n = points.size();
  if (n < 3) fail(ErrorCode::NotFound, "fewer than three points");
  const T one(1);

  // Anchor candidates: triangular triples near the window center with pairwise
  // distances below 1, best separated first.
  Vec2<double> center{(points.window.xmin + points.window.xmax) / 2, (points.window.ymin + points.window.ymax) / 2};
  std::vector<std::size_t> near(n);
  std::iota(near.begin(), near.end(), 0);
  auto euclid = [&](std::size_t i) {
    auto v = to_double(points[i]);
    return std::hypot(v.x - center.x, v.y - center.y);
  };
  std::stable_sort(near.begin(), near.end(), [&](auto a, auto b) { return euclid(a) < euclid(b); });
  near.resize(std::min(n, std::max<std::size_t>(3, options.anchor_candidates)));
  std::vector<std::pair<double, std::array<std::size_t, 3>>> anchors;
  for (std::size_t a = 0; a < near.size(); ++a) {
    for (std::size_t b = a + 1; b < near.size(); ++b) {
      T dab = shape.distance(points[near[a]], points[near[b]]);
      if (!(dab < one)) continue;
      for (std::size_t c = b + 1; c < near.size(); ++c) {
        T dac = shape.distance(points[near[a]], points[near[c]]);
        T dbc = shape.distance(points[near[b]], points[near[c]]);
        if (!(dac < one) || !(dbc < one)) continue;
        if (!is_triangular_set(shape, points[near[a]], points[near[b]], points[near[c]])) continue;
        double x = to_double(dab), y = to_double(dac), z = to_double(dbc);
        double slack = std::min({x + y - z, x + z - y, y + z - x, 1 - std::max({x, y, z})});
        std::array<std::size_t, 3> t{near[a], near[b], near[c]};
        std::sort(t.begin(), t.end());
        anchors.push_back({slack, t});
      }
    }
  }
  if (anchors.empty()) fail(ErrorCode::NotFound, "no triangular set with pairwise distances below 1 near the window center");
  std::stable_sort(anchors.begin(), anchors.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  // Neighbours at distance < 1.
  std::vector<std::vector<std::uint32_t>> nbr(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (shape.distance(points[i], points[j]) < one) {
        nbr[i].push_back(static_cast<std::uint32_t>(j));
        nbr[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }

  const std::size_t k = shape.generators().size();
  const std::size_t limit = options.max_points == 0 ? n : std::min(n, options.max_points);
  auto walk = [&](const std::array<std::size_t, 3>& anchor, bool compact) {
    std::vector<ClassSlots<T>> slots(n);
    std::vector<std::optional<Determination<T>>> det(n);
    std::vector<bool> placed(n, false);
    std::vector<std::size_t> free_degree(n);
    for (std::size_t i = 0; i < n; ++i) {
      free_degree[i] = nbr[i].size();
      slots[i].slots.resize(k);
      slots[i].filled.assign(k, 0);
    }
    GoodEnumeration<T> out;
    double cx = 0, cy = 0;
    auto place = [&](std::size_t idx) {
      const std::size_t pos = out.order.size();
      if (pos >= 3) out.certificates.push_back(*det[idx]);
      out.order.push_back(idx);
      placed[idx] = true;
      auto v = to_double(points[idx]);
      cx += v.x;
      cy += v.y;
      for (auto j : nbr[idx]) --free_degree[j];
      for (std::size_t x = 0; x < n; ++x) {
        if (placed[x] || det[x]) continue;
        for (const auto& c : achieving_classes(shape, points[x] - points[idx])) {
          auto& s = slots[x];
          if (s.filled[c.index] < 2) s.slots[c.index][s.filled[c.index]++] = {pos, c.sign};
        }
        if (out.order.size() >= 3) det[x] = find_determination(slots[x], shape);
      }
    };
    for (auto idx : anchor) place(idx);
    while (out.order.size() < limit) {
      // Next point among determined free neighbours of the last one: either
      // the one nearest the centroid of the placed set, or Warnsdorff (fewest
      // free neighbours).
      const std::size_t last = out.order.back();
      std::optional<std::size_t> next;
      double best_r = 0;
      for (auto j : nbr[last]) {
        if (placed[j] || !det[j]) continue;
        auto v = to_double(points[j]);
        double r = compact ? std::hypot(v.x - cx / out.order.size(), v.y - cy / out.order.size()) : 0.0;
        if (!next || r < best_r - 1e-12 || (r < best_r + 1e-12 && free_degree[j] < free_degree[*next])) {
          next = j;
          best_r = r;
        }
      }
      if (!next) break;
      place(*next);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!placed[i]) out.unplaced.push_back(i);
    }
    return out;
  };

  GoodEnumeration<T> best;
  const std::size_t attempts = std::min(anchors.size(), std::max<std::size_t>(1, options.anchor_attempts));
  for (std::size_t a = 0; a < attempts; ++a) {
    for (bool compact : {true, false}) {
      auto e = walk(anchors[a].second, compact);
      if (e.order.size() > best.order.size()) best = std::move(e);
      if (best.order.size() >= limit) return best;
    }
  }
  return best;
}

template <Scalar T>
void validate_enumeration(const GoodEnumeration<T>& e, const PointSet<T>& points, const NormShape<T>& shape) {
  const std::size_t n = points.size();
  auto bad = [](const std::string& what) { fail(ErrorCode::Inconsistent, "invalid enumeration: " + what); };
  std::vector<int> seen(n, 0);
  for (auto i : e.order) {
    if (i >= n) bad("index out of range");
    ++seen[i];
  }
  for (auto i : e.unplaced) {
    if (i >= n) bad("index out of range");
    ++seen[i];
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    bad("order and unplaced must partition the point set");
  }
  if (e.order.size() < 3) bad("missing anchor");
  if (e.certificates.size() != e.order.size() - 3) bad("certificate count does not match the order");
  const T one(1);
  auto [a, b, c] = e.anchor();
  if (!is_triangular_set(shape, points[a], points[b], points[c])) bad("anchor is not triangular");
  if (!(shape.distance(points[a], points[b]) < one) || !(shape.distance(points[a], points[c]) < one) ||
      !(shape.distance(points[b], points[c]) < one)) {
    bad("anchor distances must be below 1");
  }
  for (std::size_t i = 0; i + 1 < e.order.size(); ++i) {
    if (!(shape.distance(points[e.order[i]], points[e.order[i + 1]]) < one)) {
      bad("positions " + std::to_string(i) + " and " + std::to_string(i + 1) + " are not within distance 1");
    }
  }
  for (std::size_t i = 3; i < e.order.size(); ++i) {
    const auto& d = e.certificates[i - 3];
    std::array<std::size_t, 3> cls{};
    for (int t = 0; t < 3; ++t) {
      if (d.refs[t] >= i) bad("certificate of position " + std::to_string(i) + " refers forward");
      auto g = shape.find_generator(d.normals[t]);
      if (!g) bad("certificate normal is not a generator");
      cls[t] = g->index;
      Vec2<T> diff = points[e.order[i]] - points[e.order[d.refs[t]]];
      if (!near_value(dot(d.normals[t], diff), shape.norm(diff), 1e-12)) {
        bad("certificate normal of position " + std::to_string(i) + " does not attain the distance");
      }
    }
    if (d.refs[0] == d.refs[1] || d.refs[0] == d.refs[2] || d.refs[1] == d.refs[2]) bad("repeated reference");
    if (cls[0] == cls[1] || cls[0] == cls[2] || cls[1] == cls[2]) bad("certificate generators are not distinct");
  }
}

#define LARG_INSTANTIATE(T)                                                                                         \
  template struct LineFamily<T>;                                                                                    \
  template LineFamily<T> generate_grid(const std::vector<Vec2<T>>&, const std::vector<Vec2<T>>&, int,               \
                                       const GridWindow&);                                                          \
  template std::vector<T> grid_offsets(const LineFamily<T>&, const Vec2<T>&, const Vec2<T>&);                       \
  template std::vector<SignedGenerator> achieving_classes(const NormShape<T>&, const Vec2<T>&);                     \
  template std::optional<AnchorCertificate<T>> anchor_certificate(const NormShape<T>&,                              \
                                                                  const std::array<Vec2<T>, 3>&, const Vec2<T>&);   \
  template Mat2<T> anchor_linear_part(const std::array<Vec2<T>, 3>&, const std::array<Vec2<T>, 3>&);                \
  template Vec2<T> reconstruct_with(const NormShape<T>&, const Mat2<T>&, const std::array<Vec2<T>, 3>&,             \
                                    const std::array<Vec2<T>, 3>&, const std::array<T, 3>&);                        \
  template Vec2<T> reconstruct_from_anchor(const NormShape<T>&, const std::array<Vec2<T>, 3>&,                      \
                                           const std::array<Vec2<T>, 3>&, const Vec2<T>&, const std::array<T, 3>&); \
  template GoodEnumeration<T> good_enumeration(const PointSet<T>&, const NormShape<T>&, const EnumerationOptions&); \
  template void validate_enumeration(const GoodEnumeration<T>&, const PointSet<T>&, const NormShape<T>&);

LARG_INSTANTIATE(double)
LARG_INSTANTIATE(Rational)

#undef LARG_INSTANTIATE

}  // namespace larg
