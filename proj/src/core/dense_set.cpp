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

#include "larg_lab/dense_set.hpp"

#include "larg_lab/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <unordered_map>

namespace larg {
namespace {

void check_window(const Window& w) {
  if (!std::isfinite(w.xmin) || !std::isfinite(w.xmax) || !std::isfinite(w.ymin) || !std::isfinite(w.ymax) ||
      w.degenerate()) {
    fail(ErrorCode::InvalidArgument, "sampling window must be finite with positive width and height");
  }
}

// Number of unit-rate arrivals in [0, mass).
std::size_t poisson_count(CounterRng& rng, double mass) {
  std::size_t count = 0;
  double t = rng.exponential();
  while (t < mass) {
    ++count;
    t += rng.exponential();
  }
  return count;
}

template <Scalar T>
PointSet<T> finish(std::vector<Vec2<double>> raw, const Window& window, std::uint64_t seed) {
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  PointSet<T> out;
  out.window = window;
  out.seed = seed;
  out.points.reserve(raw.size());
  for (const auto& v : raw) out.points.push_back(convert_vec<T>(v));
  return out;
}

// Fractional parts with their original indices, sorted by value.
template <Scalar T>
std::vector<std::pair<T, std::size_t>> sorted_fractions(std::span<const T> values) {
  std::vector<std::pair<T, std::size_t>> fr;
  fr.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) fr.emplace_back(frac_of(values[i]), i);
  std::sort(fr.begin(), fr.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return fr;
}

}  // namespace

template <Scalar T>
void PointSet<T>::validate() const {
  std::vector<Vec2<T>> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(ErrorCode::InvalidArgument, "point set contains repeated points");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if constexpr (!is_exact_v<T>) {
      if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
        fail(ErrorCode::InvalidArgument, "point " + std::to_string(i) + " is not finite");
      }
    }
    if (!window.contains(points[i])) {
      fail(ErrorCode::InvalidArgument, "point " + std::to_string(i) + " lies outside the window");
    }
  }
}

template <Scalar T>
PointSet<T> sample_poisson_window(const Window& window, double intensity, std::uint64_t seed) {
  check_window(window);
  if (!(intensity > 0) || !std::isfinite(intensity)) fail(ErrorCode::InvalidArgument, "intensity must be positive");
  CounterRng rng(seed, 0);
  std::size_t count = poisson_count(rng, intensity * window.area());
  std::vector<Vec2<double>> raw;
  raw.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double x = rng.uniform(window.xmin, window.xmax);
    double y = rng.uniform(window.ymin, window.ymax);
    raw.push_back({x, y});
  }
  // Sorting gives the set a canonical index order independent of draw order.
  return finish<T>(std::move(raw), window, seed);
}

template <Scalar T>
PointSet<T> sample_product_window(const Window& window, double linear_intensity, std::uint64_t seed) {
  check_window(window);
  if (!(linear_intensity > 0) || !std::isfinite(linear_intensity)) {
    fail(ErrorCode::InvalidArgument, "intensity must be positive");
  }
  auto axis = [&](double lo, double hi, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    std::vector<double> coords;
    for (double z = std::floor(lo); z < hi; z += 1) {
      double a = std::max(lo, z), b = std::min(hi, z + 1);
      if (!(b > a)) continue;
      std::size_t count = poisson_count(rng, linear_intensity * (b - a));
      for (std::size_t i = 0; i < count; ++i) coords.push_back(rng.uniform(a, b));
    }
    return coords;
  };
  std::vector<double> xs = axis(window.xmin, window.xmax, 1);
  std::vector<double> ys = axis(window.ymin, window.ymax, 2);
  std::vector<Vec2<double>> raw;
  raw.reserve(xs.size() * ys.size());
  for (double x : xs) {
    for (double y : ys) raw.push_back({x, y});
  }
  return finish<T>(std::move(raw), window, seed);
}

template <Scalar T>
std::optional<std::pair<std::size_t, std::size_t>> integer_difference_pair(std::span<const T> values) {
  if (values.size() < 2) return std::nullopt;
  auto fr = sorted_fractions(values);
  auto ordered = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (std::size_t i = 0; i + 1 < fr.size(); ++i) {
    bool clash;
    if constexpr (is_exact_v<T>) {
      clash = fr[i].first == fr[i + 1].first;
    } else {
      clash = fr[i + 1].first - fr[i].first < kBoundaryTolerance;
    }
    if (clash) return ordered(fr[i].second, fr[i + 1].second);
  }
  if constexpr (!is_exact_v<T>) {
    // Fractions near 0 and near 1 also differ by almost an integer.
    if (fr.front().first + 1.0 - fr.back().first < kBoundaryTolerance) {
      return ordered(fr.front().second, fr.back().second);
    }
  }
  return std::nullopt;
}

template <Scalar T>
bool is_idf(std::span<const T> values) {
  return !integer_difference_pair(values).has_value();
}

template <Scalar T>
std::vector<T> projections(const PointSet<T>& points, const Vec2<T>& a) {
  std::vector<T> out;
  out.reserve(points.size());
  for (const auto& v : points.points) out.push_back(dot(a, v));
  return out;
}

template <Scalar T>
IdfRescale<T> rescale_to_idf(const PointSet<T>& points, std::span<const Vec2<T>> generators, int trials,
                             std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "rescale_to_idf needs at least one trial");
  if (generators.empty()) fail(ErrorCode::InvalidArgument, "rescale_to_idf needs generators");
  std::vector<std::vector<T>> proj;
  for (const auto& a : generators) {
    proj.push_back(projections(points, a));
    // Equal projections differ by 0 after any scaling, and 0 is an integer.
    std::vector<std::pair<T, std::size_t>> sorted;
    for (std::size_t i = 0; i < proj.back().size(); ++i) sorted.emplace_back(proj.back()[i], i);
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      if (sorted[i].first == sorted[i + 1].first) {
        fail(ErrorCode::InvalidArgument, "points " + std::to_string(sorted[i].second) + " and " +
                                             std::to_string(sorted[i + 1].second) +
                                             " have equal projections; no scaling makes them idf");
      }
    }
  }

  const double phi = std::numbers::phi;
  const std::uint64_t offset = seed % 1000003u;
  std::pair<std::size_t, std::size_t> obstruction{0, 0};
  for (int k = 0; k < trials; ++k) {
    T alpha(1);
    if (k > 0) {
      double raw = 1.0 + std::fmod(phi * static_cast<double>(offset + static_cast<std::uint64_t>(k)), 1.0);
      if constexpr (is_exact_v<T>) {
        alpha = rational_approximant(raw, 1000000);
      } else {
        alpha = raw;
      }
    }
    bool ok = true;
    for (const auto& values : proj) {
      std::vector<T> scaled;
      scaled.reserve(values.size());
      for (const auto& v : values) scaled.push_back(alpha * v);
      if (auto pair = integer_difference_pair<T>(scaled)) {
        obstruction = *pair;
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    IdfRescale<T> out{alpha, points};
    for (auto& v : out.points.points) v = alpha * v;
    double a = to_double(alpha);
    out.points.window = points.window.scaled(a);
    // Guard the exact scaled points against rounding of the double window.
    double pad = 1e-12 * std::max({1.0, std::fabs(out.points.window.xmin), std::fabs(out.points.window.xmax),
                                   std::fabs(out.points.window.ymin), std::fabs(out.points.window.ymax)});
    out.points.window.xmin -= pad;
    out.points.window.ymin -= pad;
    out.points.window.xmax += pad;
    out.points.window.ymax += pad;
    out.points.alpha = points.alpha * alpha;
    out.points.idf_per_generator.clear();
    for (const auto& g : generators) out.points.idf_per_generator.push_back({g, true});
    out.points.pairwise_noninteger.reset();
    return out;
  }
  fail(ErrorCode::NotFound, "no idf scaling found in " + std::to_string(trials) + " trials; points " +
                                std::to_string(obstruction.first) + " and " + std::to_string(obstruction.second) +
                                " still differ by an integer");
}

template <Scalar T>
void annotate_flags(PointSet<T>& points, const NormShape<T>& shape) {
  points.idf_per_generator.clear();
  if (shape.is_polygonal()) {
    for (const auto& a : shape.generators()) {
      auto values = projections(points, a);
      points.idf_per_generator.push_back({a, is_idf<T>(values)});
    }
  }
  bool noninteger = true;
  for (std::size_t i = 0; i < points.size() && noninteger; ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      T d = shape.distance(points[i], points[j]);
      bool integral;
      if constexpr (is_exact_v<T>) {
        integral = floor_of(d) == d;
      } else {
        integral = std::fabs(d - std::round(d)) < kBoundaryTolerance;
      }
      if (integral) {
        noninteger = false;
        break;
      }
    }
  }
  points.pairwise_noninteger = noninteger;
}

template <Scalar T>
DensityProbe probe_density(const PointSet<T>& points, const NormShape<T>& shape, double radius, double inset) {
  if (!(radius > 0)) fail(ErrorCode::InvalidArgument, "probe radius must be positive");
  const Window& w = points.window;
  double x0 = w.xmin + inset, x1 = w.xmax - inset, y0 = w.ymin + inset, y1 = w.ymax - inset;
  DensityProbe result;
  if (!(x1 >= x0) || !(y1 >= y0)) return result;

  // Buckets sized so that every point within `radius` lies in a neighbouring cell.
  double cell = radius * shape.euclidean_radii().second;
  auto key = [&](double x, double y) {
    auto cx = static_cast<std::int64_t>(std::floor((x - w.xmin) / cell));
    auto cy = static_cast<std::int64_t>(std::floor((y - w.ymin) / cell));
    return std::make_pair(cx, cy);
  };
  struct PairHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const {
      return std::hash<std::int64_t>()(k.first * 1000003 + k.second);
    }
  };
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<Vec2<double>>, PairHash> buckets;
  for (const auto& v : points.points) {
    auto vd = to_double(v);
    buckets[key(vd.x, vd.y)].push_back(vd);
  }
  NormShape<double> probe_shape = [&] {
    if constexpr (is_exact_v<T>) {
      std::vector<Vec2<double>> gens;
      for (const auto& a : shape.generators()) gens.push_back(to_double(a));
      return NormShape<double>::polygonal(gens);
    } else {
      return shape;
    }
  }();

  double step = radius / 2;
  for (double x = x0; x <= x1 + 1e-12; x += step) {
    for (double y = y0; y <= y1 + 1e-12; y += step) {
      auto [cx, cy] = key(x, y);
      double nearest = INFINITY;
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
          auto it = buckets.find({cx + dx, cy + dy});
          if (it == buckets.end()) continue;
          for (const auto& v : it->second) nearest = std::min(nearest, probe_shape.distance({x, y}, v));
        }
      }
      if (nearest >= radius && nearest > result.worst_distance) {
        result.dense = false;
        result.worst_distance = nearest;
        result.worst_probe = {x, y};
      } else if (result.dense && nearest > result.worst_distance) {
        result.worst_distance = nearest;
        result.worst_probe = {x, y};
      }
    }
  }
  return result;
}

template <Scalar T>
PointSet<T> convert_point_set(const PointSet<double>& points) {
  PointSet<T> out;
  out.window = points.window;
  out.seed = points.seed;
  out.alpha = from_double<T>(points.alpha);
  for (const auto& v : points.points) out.points.push_back(convert_vec<T>(v));
  for (const auto& f : points.idf_per_generator) out.idf_per_generator.push_back({convert_vec<T>(f.generator), f.idf});
  out.pairwise_noninteger = points.pairwise_noninteger;
  return out;
}

#define LARG_INSTANTIATE(T)                                                                                \
  template struct PointSet<T>;                                                                             \
  template PointSet<T> sample_poisson_window<T>(const Window&, double, std::uint64_t);                     \
  template PointSet<T> sample_product_window<T>(const Window&, double, std::uint64_t);                     \
  template bool is_idf<T>(std::span<const T>);                                                             \
  template std::optional<std::pair<std::size_t, std::size_t>> integer_difference_pair<T>(std::span<const T>); \
  template std::vector<T> projections(const PointSet<T>&, const Vec2<T>&);                                 \
  template IdfRescale<T> rescale_to_idf(const PointSet<T>&, std::span<const Vec2<T>>, int, std::uint64_t);  \
  template void annotate_flags(PointSet<T>&, const NormShape<T>&);                                         \
  template DensityProbe probe_density(const PointSet<T>&, const NormShape<T>&, double, double);            \
  template PointSet<T> convert_point_set<T>(const PointSet<double>&);

LARG_INSTANTIATE(double)
LARG_INSTANTIATE(Rational)

#undef LARG_INSTANTIATE

}  // namespace larg
