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


// Acceptance checks: one PASS/FAIL line per criterion with its runtime.

#include "larg_lab/experiments.hpp"
#include "larg_lab/stepiso.hpp"

#include "../unit/enumeration_oracle.hpp"
#include "../unit/test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace larg;
using larg::testing::TestRng;
using RV = Vec2<Rational>;
using DV = Vec2<double>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure only.
struct Checker {
  Outcome out;
  void expect(bool cond, const std::string& what) {
    if (!cond && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
};

template <Scalar T>
T box_oracle(const std::vector<Vec2<T>>& gens, const Vec2<T>& d) {
  return larg::testing::oracle_norm(gens, d);
}

// Sorted fractional parts are pairwise distinct.
bool idf_oracle(std::vector<Rational> values) {
  for (auto& v : values) v -= floor_of(v);
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) == values.end();
}

Outcome c1_counterexample() {
  Checker c;
  auto square = preset_shape<Rational>("square");
  TestRng rng(1001);
  for (int trial = 0; trial < 100; ++trial) {
    PointSet<Rational> s;
    s.window = {-1, -1, 41, 1};
    // Residues 1..210 mod 211 together with 0 and 1/2 keep fractional parts distinct.
    std::vector<Rational> xs;
    for (const auto& cand : larg::testing::idf_rationals(rng, 199, 211, 40)) {
      if (boost::multiprecision::numerator(cand) % 211 != 0 && xs.size() < 198) xs.push_back(cand);
    }
    xs.push_back(0);
    xs.push_back(Rational(1, 2));
    std::vector<Rational> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || !idf_oracle(xs)) {
      --trial;
      continue;
    }
    for (const auto& x : xs) s.points.push_back({x, 0});
    auto map = make_explicit_1d_map(s);
    auto step = is_step_isometry(map, square);
    c.expect(step.ok, "explicit map broke a truncated distance in sample " + std::to_string(trial));
    c.expect(step.pairs_checked == 200 * 199 / 2, "pair count");
    c.expect(!is_isometry(map, square).ok, "explicit map preserved all distances in sample " + std::to_string(trial));
  }
  PointSet<Rational> two;
  two.window = {-1, -1, 1, 1};
  two.points = {{0, 0}, {Rational(1, 2), 0}};
  auto map = make_explicit_1d_map(two);
  auto iso = is_isometry(map, square);
  c.expect(!iso.ok && iso.witness == std::make_pair<std::size_t, std::size_t>(0, 1), "no witness on {0, 1/2}");
  c.expect(iso.domain_distance == 0.5 && iso.image_distance == to_double(Rational(1, 3)), "witness distances");
  c.expect(map.images[1].x == Rational(1, 3) && map.images[0].x == 0, "exact images 0 and 1/3");
  std::ostringstream d;
  d << "100 samples x 200 points; witness d=" << iso.domain_distance << " vs " << map.images[1].x;
  if (c.out.pass) c.out.detail = d.str();
  return c.out;
}

Outcome c2_box_products() {
  Checker c;
  std::ostringstream d;
  for (const char* name : {"square", "parallelogram"}) {
    auto shape = preset_shape<Rational>(name);
    std::vector<RV> gens(shape.generators().begin(), shape.generators().end());
    auto raw = sample_poisson_window<double>({0, 0, 5, 5}, 24, 77);
    raw.points.resize(std::min<std::size_t>(raw.size(), 500));
    c.expect(raw.size() == 500, std::string(name) + ": fewer than 500 sampled points");
    auto pts = rescale_to_idf<Rational>(convert_point_set<Rational>(raw), gens, 64, 77).points;
    for (const auto& a : gens) {
      std::vector<Rational> proj;
      for (const auto& p : pts.points) proj.push_back(a.x * p.x + a.y * p.y);
      c.expect(idf_oracle(proj), std::string(name) + ": projections not idf");
    }
    auto g = Interleaving1D<Rational>::one_third_map();
    auto map = make_box_product_map(gens[0], gens[1], g, g, pts);
    // Independent look at the construction: a_i . f(v) = floor(u) + g(frac u).
    for (std::size_t i = 0; i < pts.size(); i += 50) {
      for (int k = 0; k < 2; ++k) {
        Rational u = dot(gens[k], pts[i]);
        Rational fr = u - floor_of(u);
        Rational gu = fr <= Rational(1, 2) ? fr * Rational(2, 3) : fr * Rational(4, 3) - Rational(1, 3);
        c.expect(dot(gens[k], map.images[i]) == floor_of(u) + gu, std::string(name) + ": product map coordinates");
      }
    }
    auto step = is_step_isometry(map, shape);
    c.expect(step.ok, std::string(name) + ": product map is not a step-isometry");
    c.expect(!is_isometry(map, shape).ok, std::string(name) + ": product map is an isometry");
    // Oracle spot check of truncated distances.
    for (std::size_t i = 0; i < 40; ++i) {
      for (std::size_t j = i + 1; j < 40; ++j) {
        auto dd = box_oracle(gens, pts[i] - pts[j]);
        auto di = box_oracle(gens, map.images[i] - map.images[j]);
        c.expect(floor_of(dd) == floor_of(di), std::string(name) + ": oracle floors differ");
      }
    }
    d << name << " n=" << pts.size() << " step ok, iso fails; ";
  }
  auto hex = preset_shape<double>("hexagon");
  std::vector<DV> gens(hex.generators().begin(), hex.generators().end());
  auto pts = sample_poisson_window<double>({0, 0, 10, 10}, 102, 5);
  pts.points.resize(std::min<std::size_t>(pts.size(), 10000));
  auto g = Interleaving1D<double>::one_third_map();
  auto map = make_box_product_map(gens[0], gens[1], g, g, pts);
  auto v = is_step_isometry(map, hex);
  c.expect(!v.ok && v.witness.has_value(), "hexagon: no violating pair");
  if (v.witness) {
    auto [i, j] = *v.witness;
    double dd = box_oracle(gens, pts[i] - pts[j]);
    double di = box_oracle(gens, map.images[i] - map.images[j]);
    c.expect(std::floor(dd) != std::floor(di), "hexagon: witness does not survive the oracle");
    d << "hexagon witness (" << i << "," << j << ") d=" << dd << " vs " << di << " within n=" << pts.size();
  }
  if (c.out.pass) c.out.detail = d.str();
  return c.out;
}

Outcome c3_grid_density() {
  Checker c;
  auto hex = preset_shape<double>("hexagon");
  std::vector<DV> gens(hex.generators().begin(), hex.generators().end());
  const double r = std::sqrt(2.0) - 1;
  auto fam = generate_grid<double>({{0, 0}, {r, 0}}, gens, 6, {2, 2, {0, 0}});
  auto offsets = grid_offsets(fam, gens[0]);
  for (int z1 = -3; z1 <= 3; ++z1) {
    for (int z2 = -3; z2 <= 3; ++z2) {
      double t = z1 * r + z2;
      t -= std::floor(t);
      bool present = std::any_of(offsets.begin(), offsets.end(), [&](double o) {
        double gap = std::fabs(o - t);
        return std::min(gap, 1 - gap) <= 1e-12;
      });
      c.expect(present, "offset z1 r + z2 missing for z1=" + std::to_string(z1));
    }
  }
  // Largest circular gap, computed here.
  std::vector<double> sorted(offsets.begin(), offsets.end());
  std::sort(sorted.begin(), sorted.end());
  double gap = sorted.empty() ? 1 : 1 - sorted.back() + sorted.front();
  for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::max(gap, sorted[i] - sorted[i - 1]);
  c.expect(gap < 0.1, "max gap " + std::to_string(gap));
  // The other two generators see p - q as r/2, so every offset is (z1 r + z2) / 2.
  for (double o : offsets) {
    bool found = false;
    for (int z1 = -200; z1 <= 200 && !found; ++z1) {
      double rest = 2 * o - z1 * r;
      found = std::fabs(rest - std::round(rest)) < 1e-9;
    }
    c.expect(found, "offset not of the form (z1 r + z2) / 2");
  }

  auto lattice = preset_shape<Rational>("lattice-hexagon");
  std::vector<RV> lgens(lattice.generators().begin(), lattice.generators().end());
  auto third = generate_grid<Rational>({{0, 0}, {Rational(1, 3), 0}}, lgens, 6, {2, 2, {0, 0}});
  std::size_t rational_offsets = 0;
  for (const auto& a : lgens) {
    for (const auto& o : grid_offsets(third, a)) {
      ++rational_offsets;
      c.expect(o == 0 || o == Rational(1, 3) || o == Rational(2, 3), "r = 1/3 produced offset " + format_rational(o));
    }
  }
  if (c.out.pass) {
    std::ostringstream d;
    d << "sqrt(2)-1: " << offsets.size() << " offsets, max gap " << gap << "; 1/3: " << rational_offsets
      << " offsets all in {0,1/3,2/3}";
    c.out.detail = d.str();
  }
  return c.out;
}

Outcome c4_compatibility() {
  Checker c;
  std::ostringstream d;
  PointSet<double> pair;
  pair.window = {0, 0, 1, 1};
  pair.points = {{0.25, 0.5}, {0.5, 0.5}};
  auto square = preset_shape<double>("square");
  const int draws = 100000;
  for (double p : {0.3, 0.5, 0.9}) {
    int compatible = 0;
    for (int t = 0; t < draws; ++t) {
      auto g = sample_larg(pair, square, 1.0, p, 2 * static_cast<std::uint64_t>(t) + 1);
      auto h = sample_larg(pair, square, 1.0, p, 2 * static_cast<std::uint64_t>(t) + 2);
      compatible += pair_compatible(g, h, 0, 1, 0, 1);
    }
    const double ps = p * p + (1 - p) * (1 - p);
    const double sigma = std::sqrt(ps * (1 - ps) / draws);
    const double est = static_cast<double>(compatible) / draws;
    c.expect(std::fabs(est - ps) <= 3 * sigma, "p=" + std::to_string(p) + " estimate " + std::to_string(est));
    d << "p=" << p << ": " << est << " vs " << ps << " (" << std::fabs(est - ps) / sigma << " sigma); ";
  }
  if (c.out.pass) c.out.detail = d.str();
  return c.out;
}

Outcome c5_decay() {
  Checker c;
  ExperimentConfig cfg;
  cfg.shape = "hexagon";
  cfg.p = 0.5;
  cfg.n_values = {5, 10, 20, 40};
  cfg.trials = 200;
  auto rows = run_decay_experiment(cfg);
  c.expect(rows.size() == 4, "row count");
  const double z = 1.959963984540054;
  for (const auto& r : rows) {
    const double n = r.trials, k = r.successes, ph = k / n;
    const double mid = (ph + z * z / (2 * n)) / (1 + z * z / n);
    const double half = z / (1 + z * z / n) * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n));
    c.expect(std::fabs(r.ci_hi - std::min(1.0, mid + half)) < 1e-12, "Wilson upper end");
    double bound = std::pow(static_cast<double>(r.n), 8) * std::pow(0.5, static_cast<double>(r.n) - 1);
    c.expect(std::fabs(r.paper_bound - bound) <= 1e-9 * bound, "bound column");
  }
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      bool ok = rows[j].fraction <= rows[i].fraction || rows[j].ci_lo <= rows[i].ci_hi;
      c.expect(ok, "fraction rises from n=" + std::to_string(rows[i].n) + " to n=" + std::to_string(rows[j].n));
    }
  }
  c.expect(rows.back().ci_hi < 0.05, "n=40 upper bound " + std::to_string(rows.back().ci_hi));
  if (c.out.pass) {
    std::ostringstream d;
    for (const auto& r : rows) d << "n=" << r.n << ": " << r.successes << "/" << r.trials << " [" << r.ci_lo << ", " << r.ci_hi << "] ";
    c.out.detail = d.str();
  }
  return c.out;
}

Outcome c6_reconstruction() {
  Checker c;
  auto hex = preset_shape<Rational>("lattice-hexagon");
  const std::vector<RV> gens{{1, 0}, {0, 1}, {1, -1}};
  // Linear symmetries: integer matrices permuting the unit ball's vertices.
  const std::vector<RV> vertices{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
  std::vector<Mat2<Rational>> symmetries;
  for (int code = 0; code < 81; ++code) {
    int e[4];
    for (int i = 0, v = code; i < 4; ++i, v /= 3) e[i] = v % 3 - 1;
    Mat2<Rational> m{e[0], e[1], e[2], e[3]};
    bool ok = m.determinant() != 0;
    for (const auto& v : vertices) {
      ok = ok && std::find(vertices.begin(), vertices.end(), m * v) != vertices.end();
    }
    if (ok) symmetries.push_back(m);
  }
  c.expect(symmetries.size() == 12, "symmetry count " + std::to_string(symmetries.size()));
  TestRng rng(606);
  int solved = 0, attempts = 0;
  while (solved < 1000 && attempts < 200000) {
    ++attempts;
    std::array<RV, 3> anchor;
    for (auto& s : anchor) s = {rng.small_rational(12, 7), rng.small_rational(12, 7)};
    if (anchor[0] == anchor[1] || anchor[0] == anchor[2] || anchor[1] == anchor[2]) continue;
    // Strict triangle inequality under the oracle norm.
    auto dn = [&](const RV& a, const RV& b) { return larg::testing::oracle_norm(gens, a - b); };
    Rational ab = dn(anchor[0], anchor[1]), ac = dn(anchor[0], anchor[2]), bc = dn(anchor[1], anchor[2]);
    if (!(ab < ac + bc && ac < ab + bc && bc < ab + ac)) continue;
    RV x{rng.small_rational(24, 9), rng.small_rational(24, 9)};
    if (x == anchor[0] || x == anchor[1] || x == anchor[2]) continue;
    if (!anchor_certificate(hex, anchor, x)) continue;
    const auto& m = symmetries[rng.integer(0, static_cast<int>(symmetries.size()) - 1)];
    RV t{rng.small_rational(9, 5), rng.small_rational(9, 5)};
    std::array<RV, 3> images;
    for (int i = 0; i < 3; ++i) images[i] = m * anchor[i] + t;
    std::array<Rational, 3> dists{dn(x, anchor[0]), dn(x, anchor[1]), dn(x, anchor[2])};
    RV y = reconstruct_from_anchor(hex, anchor, images, x, dists);
    c.expect(y == m * x + t, "reconstruction differs from the ground truth at instance " + std::to_string(solved));
    ++solved;
  }
  c.expect(solved == 1000, "only " + std::to_string(solved) + " instances with a certificate");
  if (c.out.pass) c.out.detail = std::to_string(solved) + " exact reconstructions under 12 symmetries plus translations";
  return c.out;
}

Outcome c7_box_transform() {
  Checker c;
  TestRng rng(707);
  for (const char* name : {"square", "diamond", "parallelogram"}) {
    auto shape = preset_shape<Rational>(name);
    std::vector<RV> gens(shape.generators().begin(), shape.generators().end());
    auto t = box_to_linf_transform(shape);
    for (int i = 0; i < 1000; ++i) {
      RV x{rng.small_rational(30, 11), rng.small_rational(30, 11)};
      RV y{rng.small_rational(30, 11), rng.small_rational(30, 11)};
      RV tx = t * x, ty = t * y;
      Rational linf = std::max(abs(tx.x - ty.x), abs(tx.y - ty.y));
      c.expect(box_oracle(gens, x - y) == linf, std::string(name) + ": distance identity fails");
      c.expect(shape.distance(x, y) == linf, std::string(name) + ": library distance disagrees");
    }
    // Rows of T are the generators, so T sends a_i to e_i under the dual pairing.
    c.expect(RV{t.a, t.b} == gens[0] && RV{t.c, t.d} == gens[1], std::string(name) + ": rows are not the generators");
  }
  if (c.out.pass) c.out.detail = "3 shapes x 1000 rational pairs, exact";
  return c.out;
}

Outcome c8_invariants() {
  Checker c;
  std::ostringstream d;
  TestRng rng(808);
  // Norm axioms on random symmetric polygons, against the ray oracle.
  int norm_cases = 0;
  while (norm_cases < 10000) {
    auto hull = larg::testing::random_symmetric_polygon(rng, rng.integer(2, 6));
    if (hull.size() < 4) continue;
    auto shape = NormShape<double>::polygonal(larg::testing::generators_from_hull(hull));
    for (int i = 0; i < 10; ++i, ++norm_cases) {
      DV x{rng.uniform(-5, 5), rng.uniform(-5, 5)}, y{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      double lam = rng.uniform(-4, 4);
      double nx = shape.norm(x), ny = shape.norm(y);
      c.expect(nx > 0 && shape.norm({0, 0}) == 0, "positivity");
      c.expect(std::fabs(shape.norm(lam * x) - std::fabs(lam) * nx) <= 1e-12 * (1 + std::fabs(lam) * nx), "homogeneity");
      c.expect(shape.norm(x + y) <= (nx + ny) * (1 + 1e-12), "triangle inequality");
      c.expect(std::fabs(nx - larg::testing::ray_norm(hull, x)) <= 1e-9 * (1 + nx), "ray oracle");
    }
  }
  d << "norm " << norm_cases;

  // Range invariant: no edge at distance >= delta.
  const char* presets[] = {"square", "diamond", "hexagon", "l2", "l4"};
  std::vector<NormShape<double>> shapes;
  for (const char* n : presets) shapes.push_back(preset_shape<double>(n));
  int range_cases = 0;
  for (; range_cases < 10000; ++range_cases) {
    const auto& shape = shapes[range_cases % shapes.size()];
    PointSet<double> s;
    s.window = {0, 0, 3, 3};
    const int n = rng.integer(2, 16);
    for (int i = 0; i < n; ++i) s.points.push_back({rng.uniform(0, 3), rng.uniform(0, 3)});
    const double delta = rng.uniform(0.2, 2.5);
    auto g = sample_larg(s, shape, delta, rng.uniform(0.05, 0.95), rng.next());
    for (std::size_t u = 0; u < s.size(); ++u) {
      for (auto v : g.adjacency[u]) {
        double dist = shape.kind() == ShapeKind::SmoothLp
                          ? std::pow(std::pow(std::fabs(s[u].x - s[v].x), shape.p()) +
                                         std::pow(std::fabs(s[u].y - s[v].y), shape.p()),
                                     1 / shape.p())
                          : larg::testing::oracle_norm(std::vector<DV>(shape.generators().begin(), shape.generators().end()),
                                                       s[u] - s[v]);
        c.expect(dist < delta * (1 + 1e-12), "edge out of range");
      }
    }
  }
  d << ", range " << range_cases;

  // Grid monotonicity: a deeper family keeps every line of a shallower one.
  int grid_cases = 0;
  auto lattice = preset_shape<Rational>("lattice-hexagon");
  std::vector<RV> lgens(lattice.generators().begin(), lattice.generators().end());
  for (; grid_cases < 10000; ++grid_cases) {
    std::vector<RV> base{{rng.small_rational(3, 9), rng.small_rational(3, 9)},
                         {rng.small_rational(3, 9), rng.small_rational(3, 9)}};
    if (base[0] == base[1]) base[1].x += Rational(1, 5);
    const int depth = rng.integer(0, 1);
    GridWindow w{1, 1, {0, 0}};
    auto small = generate_grid<Rational>(base, lgens, depth, w);
    auto big = generate_grid<Rational>(base, lgens, depth + 1, w);
    c.expect(big.line_count() >= small.line_count(), "line count shrank");
    for (std::size_t lvl = 0; lvl < small.levels.size(); ++lvl) {
      c.expect(small.levels[lvl] == big.levels[lvl], "level " + std::to_string(lvl) + " changed with depth");
    }
    for (const auto& line : small.lines_up_to(depth)) {
      c.expect(big.contains(line.generator, line.offset), "line lost at greater depth");
    }
  }
  d << ", grid " << grid_cases;

  // Good enumerations pass the independent validator.
  int enum_cases = 0, attempts = 0;
  while (enum_cases < 10000 && attempts < 40000) {
    ++attempts;
    auto hull = larg::testing::random_symmetric_polygon(rng, rng.integer(3, 5));
    if (hull.size() < 6) continue;
    auto gens = larg::testing::generators_from_hull(hull);
    auto shape = NormShape<double>::polygonal(gens);
    std::vector<DV> stored(shape.generators().begin(), shape.generators().end());
    auto s = sample_poisson_window<double>({0, 0, 1, 1}, rng.uniform(30, 80), rng.next());
    GoodEnumeration<double> e;
    try {
      e = good_enumeration(s, shape, {0, 8, 2});
    } catch (const Error& err) {
      if (err.code() == ErrorCode::NotFound) continue;  // no triangular anchor in this sample
      c.expect(false, std::string("enumeration threw: ") + err.what());
      continue;
    }
    auto problem = larg::testing::check_enumeration(e, s, stored);
    c.expect(problem.empty(), "validator: " + problem);
    ++enum_cases;
  }
  c.expect(enum_cases == 10000, "only " + std::to_string(enum_cases) + " enumeration cases");
  d << ", enumeration " << enum_cases << " cases";
  if (c.out.pass) c.out.detail = d.str();
  return c.out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"C1", "explicit 1D step-isometry", 10, c1_counterexample},
      {"C2", "box product maps", 120, c2_box_products},
      {"C3", "grid density", 60, c3_grid_density},
      {"C4", "compatibility probability", 30, c4_compatibility},
      {"C5", "decay experiment", 1800, c5_decay},
      {"C6", "anchored reconstruction", 60, c6_reconstruction},
      {"C7", "box transform", 10, c7_box_transform},
      {"C8", "invariant suites", 300, c8_invariants},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_seconds) {
      o.pass = false;
      o.detail = "over the time limit; " + o.detail;
    }
    failures += !o.pass;
    std::printf("%s %s: %s (%.2f s, limit %.0f s) %s\n", cr.id, o.pass ? "PASS" : "FAIL", cr.name, secs,
                cr.limit_seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
