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
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace larg;
using larg::testing::TestRng;

namespace {

using RV = Vec2<Rational>;
Rational q(const char* s) { return parse_rational(s); }

PointSet<Rational> on_x_axis(const std::vector<Rational>& xs) {
  PointSet<Rational> s;
  s.window = {-10, -1, 10, 1};
  for (const auto& x : xs) s.points.push_back({x, 0});
  return s;
}

}  // namespace

TEST_CASE("explicit 1d map examples") {
  CHECK(explicit_step_isometry_1d(q("1/4")) == q("1/6"));
  CHECK(explicit_step_isometry_1d(q("3/4")) == q("2/3"));
  CHECK(explicit_step_isometry_1d(Rational(3)) == 3);
  CHECK(explicit_step_isometry_1d(q("-3/4")) == q("-1") + q("1/6"));
  CHECK(explicit_step_isometry_1d(0.75) == doctest::Approx(2.0 / 3));
}

TEST_CASE("interleaving maps") {
  auto g13 = Interleaving1D<Rational>::one_third_map();
  auto id = Interleaving1D<Rational>::identity();
  CHECK(apply_fractional_map(g13, q("1/4")) == q("1/6"));
  CHECK(id.is_identity());
  CHECK_FALSE(g13.is_identity());
  TestRng rng(3);
  for (int i = 0; i < 500; ++i) {
    Rational x = rng.small_rational(50, 13);
    CHECK(apply_fractional_map(g13, x) == explicit_step_isometry_1d(x));
    CHECK(apply_fractional_map(id, x) == x);
  }
  auto g = Interleaving1D<double>::from_breakpoints({{0, 0}, {0.2, 0.6}, {0.7, 0.8}, {1, 1}});
  for (int i = 0; i < 10000; ++i) {
    double x = rng.uniform(-20, 20), y = rng.uniform(-20, 20);
    double fx = apply_fractional_map(g, x), fy = apply_fractional_map(g, y);
    CHECK(std::floor(fx) == std::floor(x));
    double a = x - std::floor(x), b = y - std::floor(y);
    double fa = fx - std::floor(fx), fb = fy - std::floor(fy);
    if (a < b) CHECK(fa < fb);
    if (b < a) CHECK(fb < fa);
  }
  CHECK_THROWS_AS(Interleaving1D<double>::from_breakpoints({{0, 0}, {0.5, 0.5}, {0.4, 0.6}, {1, 1}}), Error);
  CHECK_THROWS_AS(Interleaving1D<double>::from_breakpoints({{0, 0.1}, {1, 1}}), Error);
}

TEST_CASE("box product map") {
  auto square = preset_shape<Rational>("square");
  auto g13 = Interleaving1D<Rational>::one_third_map();
  auto id = Interleaving1D<Rational>::identity();
  RV v{q("1/4"), q("3/4")};
  CHECK(box_product_map(square, g13, g13, v) ==
        RV{explicit_step_isometry_1d(v.x), explicit_step_isometry_1d(v.y)});
  TestRng rng(4);
  auto diamond = preset_shape<Rational>("diamond");
  for (int i = 0; i < 200; ++i) {
    RV w{rng.small_rational(20, 7), rng.small_rational(20, 7)};
    CHECK(box_product_map(diamond, id, id, w) == w);
    RV lattice{Rational(rng.integer(-5, 5)), Rational(rng.integer(-5, 5))};
    CHECK(box_product_map(square, g13, g13, lattice) == lattice);
    // The map acts on the generator coordinates.
    auto image = box_product_map(diamond, g13, id, w);
    auto gens = diamond.generators();
    CHECK(dot(gens[0], image) == explicit_step_isometry_1d(dot(gens[0], w)));
    CHECK(dot(gens[1], image) == dot(gens[1], w));
  }
  CHECK_THROWS_AS(box_product_map(preset_shape<Rational>("lattice-hexagon"), g13, g13, v), Error);
}

TEST_CASE("step isometry checks") {
  auto square = preset_shape<Rational>("square");
  TestRng rng(11);
  auto pts = on_x_axis(larg::testing::idf_rationals(rng, 60, 1009, 5));
  auto map = make_explicit_1d_map(pts);
  CHECK(is_step_isometry(map, square).ok);
  CHECK(map.kind == MapKind::Explicit1D);

  auto identity = make_point_map<Rational>(pts, [](const RV& v) { return v; });
  CHECK(is_step_isometry(identity, square).ok);
  CHECK(is_isometry(identity, square).ok);

  auto pair = on_x_axis({0, q("1/2")});
  auto stretch = make_point_map<Rational>(pair, [](const RV& v) { return RV{3 * v.x, v.y}; });
  auto verdict = is_step_isometry(stretch, square);
  CHECK_FALSE(verdict.ok);
  REQUIRE(verdict.witness);
  CHECK(verdict.domain_floor == 0);
  CHECK(verdict.image_floor == 1);

  auto iso = is_isometry(make_explicit_1d_map(pair), square);
  CHECK_FALSE(iso.ok);
  CHECK(iso.domain_distance == 0.5);
  CHECK(iso.image_distance == doctest::Approx(1.0 / 3).epsilon(1e-15));

  auto shift = make_point_map<Rational>(pts, [](const RV& v) { return v + RV{q("7/3"), q("-1/5")}; });
  CHECK(is_isometry(shift, preset_shape<Rational>("lattice-hexagon")).ok);

  auto collide = make_point_map<Rational>(pair, [](const RV&) { return RV{0, 0}; });
  CHECK_THROWS_AS(is_step_isometry(collide, square), Error);
}

TEST_CASE("box product is a non-isometric step isometry on idf sets") {
  TestRng rng(21);
  auto g13 = Interleaving1D<Rational>::one_third_map();
  auto id = Interleaving1D<Rational>::identity();
  for (const char* name : {"square", "diamond", "parallelogram"}) {
    auto shape = preset_shape<Rational>(name);
    PointSet<Rational> s;
    s.window = {-3, -3, 3, 3};
    for (int i = 0; i < 80; ++i) s.points.push_back({rng.small_rational(300, 97), rng.small_rational(300, 97)});
    std::sort(s.points.begin(), s.points.end());
    s.points.erase(std::unique(s.points.begin(), s.points.end()), s.points.end());
    auto gens = shape.generators();
    auto scaled = rescale_to_idf<Rational>(s, gens, 200, 5).points;
    auto map = make_box_product_map(gens[0], gens[1], g13, g13, scaled);
    CHECK(is_step_isometry(map, shape).ok);
    CHECK_FALSE(is_isometry(map, shape).ok);
    CHECK(is_isometry(make_box_product_map(gens[0], gens[1], id, id, scaled), shape).ok);
  }
}

TEST_CASE("box product under a hexagon metric breaks truncation") {
  auto hex = preset_shape<double>("hexagon");
  auto s = sample_poisson_window<double>({0, 0, 3, 3}, 60, 5);
  auto g13 = Interleaving1D<double>::one_third_map();
  auto gens = hex.generators();
  auto map = make_box_product_map(gens[0], gens[1], g13, g13, s);
  auto verdict = is_step_isometry(map, hex);
  CHECK_FALSE(verdict.ok);
  REQUIRE(verdict.witness);
  CHECK(verdict.domain_floor != verdict.image_floor);
}

TEST_CASE("floating truncation near an integer is rejected") {
  auto square = preset_shape<double>("square");
  PointSet<double> s;
  s.window = {-1, -1, 3, 3};
  s.points = {{0, 0}, {1 + 1e-12, 0}};
  auto identity = make_point_map<double>(s, [](const Vec2<double>& v) { return v; });
  CHECK_THROWS_AS(is_step_isometry(identity, square), Error);
}

TEST_CASE("line respect") {
  TestRng rng(8);
  auto pts = on_x_axis(larg::testing::idf_rationals(rng, 50, 1013, 4));
  std::erase_if(pts.points, [](const RV& v) { return frac_of(v.x) == q("1/2"); });
  auto identity = make_point_map<Rational>(pts, [](const RV& v) { return v; });
  Line<Rational> ell(RV{1, 1}, q("5/3"));
  CHECK(respects_line(identity, ell, ell).ok());

  auto map = make_explicit_1d_map(pts);
  Line<Rational> half(RV{1, 0}, q("1/2")), third(RV{1, 0}, q("1/3"));
  for (const auto& v : pts.points) {
    // Direct oracle: compare sides point by point.
    bool below = v.x < q("1/2"), image_below = explicit_step_isometry_1d(v.x) < q("1/3");
    CHECK(below == image_below);
  }
  CHECK(respects_line(map, half, third).ok());
  for (int k = 1; k <= 3; ++k) {
    Line<Rational> scaled(RV{k, 0}, Rational(k, 2)), scaled_image(RV{2 * k, 0}, Rational(2 * k, 3));
    CHECK(respects_line(map, scaled, scaled_image).ok());
  }

  auto flip = make_point_map<Rational>(pts, [](const RV& v) { return RV{4 - v.x, v.y}; });
  Line<Rational> middle(RV{1, 0}, 2);
  auto r = respects_line(flip, middle, middle);
  CHECK_FALSE(r.below_kept);
  CHECK_FALSE(r.above_kept);

  auto on_line = on_x_axis({q("1/2"), q("1/5")});
  auto id2 = make_point_map<Rational>(on_line, [](const RV& v) { return v; });
  CHECK_THROWS_AS(respects_line(id2, half, half), Error);
}

TEST_CASE("statistical check") {
  auto shape = preset_shape<Rational>("lattice-hexagon");
  PointSet<Rational> s;
  s.window = {-2, -2, 2, 2};
  for (int i = -3; i <= 3; ++i) {
    for (int j = -3; j <= 3; ++j) s.points.push_back({Rational(i, 4) + Rational(j, 16), Rational(j, 4)});
  }
  auto g = sample_larg(s, shape, 1.0, 0.5, 3);
  std::vector<std::size_t> identity(s.size());
  std::iota(identity.begin(), identity.end(), 0);
  auto report = stepiso_statistical_check(g, g, s, shape, identity);
  CHECK(report.violations.empty());
  CHECK(report.range_crossing == 0);
  CHECK(report.isomorphism_bound == 1);

  std::vector<std::size_t> shuffled = identity;
  std::rotate(shuffled.begin(), shuffled.begin() + 5, shuffled.end());
  auto h = sample_larg(s, shape, 1.0, 0.5, 4);
  CHECK_THROWS_AS(stepiso_statistical_check(g, h, s, shape, shuffled), Error);

  // Planted: point reflection of a symmetric set under reflection-invariant keying.
  auto gd = sample_larg(s, shape, 1.0, 0.5, 9, EdgeKeying::DifferenceVector);
  auto reflect = make_point_map<Rational>(s, [](const RV& v) { return -v; });
  auto image = locate_images(reflect, s);
  auto planted = stepiso_statistical_check(gd, gd, s, shape, image);
  CHECK(planted.violations.empty());
  CHECK(planted.pairs_checked == s.size() * (s.size() - 1) / 2);
}
