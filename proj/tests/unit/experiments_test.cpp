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

#include "larg_lab/experiments.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <thread>

using namespace larg;
using larg::testing::TestRng;

namespace {

// Wilson score interval written out from the textbook form.
std::pair<double, double> wilson_oracle(double k, double n) {
  const double z = 1.959963984540054;
  const double phat = k / n;
  const double denom = 1 + z * z / n;
  const double mid = (phat + z * z / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n));
  return {std::max(0.0, mid - half), std::min(1.0, mid + half)};
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n_values = {3, 5, 8};
  cfg.trials = 12;
  cfg.seed = 41;
  cfg.threads = 2;
  return cfg;
}

void flip_edge(GeoGraph& g, std::uint32_t u, std::uint32_t v) {
  auto toggle = [](std::vector<std::uint32_t>& list, std::uint32_t x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it != list.end() && *it == x) {
      list.erase(it);
    } else {
      list.insert(it, x);
    }
  };
  toggle(g.adjacency[u], v);
  toggle(g.adjacency[v], u);
}

}  // namespace

TEST_CASE("wilson interval against the closed form") {
  for (int n : {1, 7, 50, 200, 1000}) {
    for (int k = 0; k <= n; k += std::max(1, n / 9)) {
      auto [lo, hi] = wilson_interval(k, n);
      auto [olo, ohi] = wilson_oracle(k, n);
      CHECK(lo == doctest::Approx(olo).epsilon(1e-12));
      CHECK(hi == doctest::Approx(ohi).epsilon(1e-12));
      CHECK(lo <= static_cast<double>(k) / n);
      CHECK(hi >= static_cast<double>(k) / n);
    }
  }
  // Zero successes in 200: upper end z^2 / (n + z^2).
  const double z2 = 1.959963984540054 * 1.959963984540054;
  CHECK(wilson_interval(0, 200).second == doctest::Approx(z2 / (200 + z2)).epsilon(1e-12));
}

TEST_CASE("decay bound for the hexagon is n^8 p*^(n-1)") {
  for (double p : {0.2, 0.5, 0.7}) {
    const double ps = p * p + (1 - p) * (1 - p);
    for (std::size_t n : {3u, 5u, 10u, 20u, 40u, 200u}) {
      double oracle = 1;
      for (int i = 0; i < 8; ++i) oracle *= static_cast<double>(n);
      for (std::size_t i = 0; i + 1 < n; ++i) oracle *= ps;
      CHECK(decay_bound(n, 3, ps) == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("csv round trip") {
  std::vector<DecayRow> rows;
  TestRng rng(5);
  for (int i = 0; i < 20; ++i) {
    DecayRow r;
    r.n = 3 + i;
    r.trials = 200;
    r.successes = rng.integer(0, 200);
    r.fraction = r.successes / 200.0;
    std::tie(r.ci_lo, r.ci_hi) = wilson_interval(r.successes, 200);
    r.paper_bound = i % 4 == 0 ? std::numeric_limits<double>::quiet_NaN() : rng.uniform(0, 1e9);
    rows.push_back(r);
  }
  auto text = rows_to_csv(rows);
  CHECK(text.rfind("n,trials,successes,fraction,ci_lo,ci_hi,paper_bound\n", 0) == 0);
  CHECK(rows_from_csv(text) == rows);
  CHECK_THROWS(rows_from_csv("n,trials\n1,2\n"));
}

TEST_CASE("config parse and emit") {
  auto cfg = parse_config(R"({"shape": {"generators": [[1, 0], ["1/2", 1]]}, "p": 0.3,
                              "n_values": [4, 6], "trials": 7, "seed": 9,
                              "sampler": {"kind": "product", "window": [0, 0, 3, 3], "intensity": 20}})");
  CHECK(cfg.generators.size() == 2);
  CHECK(cfg.generators[1].x == 0.5);
  CHECK(cfg.p == 0.3);
  CHECK(cfg.sampler.kind == "product");
  CHECK(cfg.make_shape().is_box());
  auto again = parse_config(config_to_json(cfg));
  CHECK(again.n_values == cfg.n_values);
  CHECK(again.seed == 9);
  CHECK(again.sampler.window.xmax == 3);
  CHECK_THROWS(parse_config(R"({"n_values": [5, 4]})"));
  CHECK_THROWS(parse_config(R"({"p": 1.5})"));
  CHECK_THROWS(parse_config(R"({"trials": 0})"));
}

TEST_CASE("decay experiment sanity") {
  ExperimentConfig cfg;
  cfg.trials = 1;
  cfg.n_values = {3};
  cfg.identical_graphs = true;
  auto one = run_decay_experiment(cfg);
  REQUIRE(one.size() == 1);
  CHECK(one[0].fraction == 1.0);

  cfg.trials = 6;
  cfg.n_values = {3, 10, 20};
  for (const auto& r : run_decay_experiment(cfg)) CHECK(r.successes == 6);

  auto rows = run_decay_experiment(small_config());
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.p_star == 0.5);
    CHECK(r.ci_lo <= r.fraction);
    CHECK(r.fraction <= r.ci_hi);
  }
  CHECK(rows[0].successes >= rows[1].successes);
  CHECK(rows[1].successes >= rows[2].successes);

  ExperimentConfig box = small_config();
  box.shape = "square";
  CHECK_THROWS(run_decay_experiment(box));
}

TEST_CASE("decay experiment is deterministic across thread counts") {
  auto cfg = small_config();
  auto a = run_decay_experiment(cfg);
  cfg.threads = 1;
  auto b = run_decay_experiment(cfg);
  cfg.threads = 5;
  auto c = run_decay_experiment(cfg);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(rows_to_csv(a) == rows_to_csv(c));
}

TEST_CASE("worker count honours the environment cap") {
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  ::setenv("LARG_LAB_THREADS", "3", 1);
  CHECK(worker_count(0) == std::min(hw, 3));
  CHECK(worker_count(8) == 3);
  CHECK(worker_count(2) == 2);
  ::unsetenv("LARG_LAB_THREADS");
  CHECK(worker_count(0) >= 1);
}

TEST_CASE("flipped anchor edge defeats the partial isomorphism") {
  auto hex = preset_shape<double>("hexagon");
  auto points = sample_poisson_window<double>({0, 0, 2, 2}, 100, 77);
  auto order = good_enumeration(points, hex, {12, 16});
  REQUIRE(order.order.size() == 12);
  auto g = sample_larg(points, hex, 1.0, 0.5, 123);
  CHECK(partial_isomorphism_exists(g, g, points, hex, order, 12));

  auto h = g;
  const auto u = static_cast<std::uint32_t>(order.order[0]);
  const auto v = static_cast<std::uint32_t>(order.order[1]);
  flip_edge(h, u, v);
  CHECK(g.adjacent(u, v) != h.adjacent(u, v));
  CHECK_FALSE(partial_isomorphism_exists(g, h, points, hex, order, 12));

  // The anchor triangles now differ in edge count, so no relabelling helps.
  CHECK_FALSE(partial_isomorphism_exists(g, h, points, hex, order, 3));

  auto other = sample_poisson_window<double>({0, 0, 2, 2}, 100, 78);
  CHECK_THROWS(partial_isomorphism_exists(g, h, other, hex, order, 12));
}

TEST_CASE("box to L-infinity transform") {
  auto sq = box_to_linf_transform(preset_shape<Rational>("square"));
  CHECK(sq.a == 1);
  CHECK(sq.b == 0);
  CHECK(sq.c == 0);
  CHECK(sq.d == 1);

  auto diamond = preset_shape<Rational>("diamond");
  auto t = box_to_linf_transform(diamond);
  CHECK(t.a == 1);
  CHECK(t.b == 1);
  CHECK(t.c == 1);
  CHECK(t.d == -1);

  TestRng rng(2024);
  auto para = preset_shape<Rational>("parallelogram");
  auto tp = box_to_linf_transform(para);
  for (int i = 0; i < 1000; ++i) {
    Vec2<Rational> x{rng.small_rational(40, 17), rng.small_rational(40, 17)};
    Vec2<Rational> y{rng.small_rational(40, 17), rng.small_rational(40, 17)};
    Rational dx = x.x - y.x, dy = x.y - y.y;
    // The diamond metric is L1.
    Rational l1 = abs(dx) + abs(dy);
    Rational tx = t.a * dx + t.b * dy, ty = t.c * dx + t.d * dy;
    CHECK(l1 == std::max(abs(tx), abs(ty)));
    Rational px = tp.a * dx + tp.b * dy, py = tp.c * dx + tp.d * dy;
    CHECK(para.distance(x, y) == std::max(abs(px), abs(py)));
  }
  CHECK_THROWS(box_to_linf_transform(preset_shape<Rational>("lattice-hexagon")));
  CHECK_THROWS(box_to_linf_transform(preset_shape<double>("l2")));
}

TEST_CASE("box embedding search") {
  auto box = preset_shape<double>("square");
  auto raw = sample_poisson_window<double>({0, 0, 2, 2}, 60, 8);
  const std::vector<Vec2<double>> axes{{1, 0}, {0, 1}};
  auto points = rescale_to_idf<double>(raw, axes, 64, 8).points;
  auto g = sample_larg(points, box, 1.0, 0.5, 1);
  std::vector<std::size_t> domain{0, 5, 9, 13, 21, 30};
  auto same = box_embedding_search(g, g, points, box, domain, 100000);
  REQUIRE(same.outcome == SearchOutcome::Found);
  CHECK(same.images == domain);

  auto h = sample_larg(points, box, 1.0, 0.5, 2);
  auto r = box_embedding_search(g, h, points, box, domain, 1000000);
  if (r.outcome == SearchOutcome::Found) {
    // Independent re-check of the returned map.
    std::set<std::size_t> distinct(r.images.begin(), r.images.end());
    CHECK(distinct.size() == domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
      for (std::size_t j = 0; j < domain.size(); ++j) {
        if (i == j) continue;
        const Vec2<double> a = points[domain[i]];
        const Vec2<double> b = points[domain[j]];
        const Vec2<double> fa = points[r.images[i]];
        const Vec2<double> fb = points[r.images[j]];
        CHECK(g.adjacent(domain[i], domain[j]) == h.adjacent(r.images[i], r.images[j]));
        CHECK(std::floor(a.x - b.x) == std::floor(fa.x - fb.x));
        CHECK(std::floor(a.y - b.y) == std::floor(fa.y - fb.y));
      }
    }
  }
  auto tight = box_embedding_search(g, h, points, box, domain, 1);
  CHECK((tight.outcome == SearchOutcome::Undetermined || tight.outcome == SearchOutcome::Found));
  CHECK(outcome_name(SearchOutcome::Undetermined) == "undetermined");
}

TEST_CASE("box demo beats the hexagon at matched n and p") {
  ExperimentConfig cfg;
  cfg.shape = "square";
  cfg.n_values = {6};
  cfg.trials = 60;
  cfg.seed = 3;
  auto same = cfg;
  same.identical_graphs = true;
  same.trials = 10;
  auto id = box_isomorphism_demo(same);
  CHECK(id.box_rows[0].successes == 10);

  auto report = box_isomorphism_demo(cfg);
  REQUIRE(report.hexagon_rows.size() == 1);
  CHECK(std::isnan(report.box_rows[0].paper_bound));
  CHECK(report.box_rows[0].ci_lo > report.hexagon_rows[0].ci_hi);
  CHECK(report.box_rows[0].fraction > 0.5);

  auto hex = cfg;
  hex.shape = "hexagon";
  CHECK_THROWS(box_isomorphism_demo(hex));
}
