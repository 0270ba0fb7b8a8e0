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

#include "larg_lab/random.hpp"
#include "larg_lab/stepiso.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace larg {
namespace {

constexpr double kWilsonZ = 1.959963984540054;

// Exact (rational) or tolerance (floating) lookup of points by position.
template <Scalar T>
class PointLookup {
 public:
  explicit PointLookup(const PointSet<T>& points) : points_(points), order_(points.size()) {
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](auto a, auto b) { return points_[a] < points_[b]; });
  }

  std::optional<std::size_t> find(const Vec2<T>& w) const {
    if constexpr (is_exact_v<T>) {
      auto it = std::lower_bound(order_.begin(), order_.end(), w,
                                 [&](auto idx, const Vec2<T>& key) { return points_[idx] < key; });
      if (it != order_.end() && points_[*it] == w) return *it;
      return std::nullopt;
    } else {
      double tol = 1e-9 * std::max({1.0, std::fabs(w.x), std::fabs(w.y)});
      Vec2<double> lo{w.x - tol, -INFINITY};
      auto it = std::lower_bound(order_.begin(), order_.end(), lo,
                                 [&](auto idx, const Vec2<double>& key) { return points_[idx] < key; });
      for (; it != order_.end() && points_[*it].x <= w.x + tol; ++it) {
        if (std::fabs(points_[*it].y - w.y) <= tol) return *it;
      }
      return std::nullopt;
    }
  }

 private:
  const PointSet<T>& points_;
  std::vector<std::size_t> order_;
};

PointSet<double> sample_points(const SamplerSpec& spec, std::uint64_t seed) {
  if (spec.kind == "poisson") return sample_poisson_window<double>(spec.window, spec.intensity, seed);
  if (spec.kind == "product") return sample_product_window<double>(spec.window, spec.intensity, seed);
  fail(ErrorCode::InvalidArgument, "unknown sampler kind '" + spec.kind + "'");
}

double parse_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  fail(ErrorCode::Parse, "expected a number or a rational string");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

DecayRow make_row(std::size_t n, int trials, int successes, double p, std::size_t k, bool with_bound) {
  DecayRow row;
  row.n = n;
  row.trials = trials;
  row.successes = successes;
  row.fraction = static_cast<double>(successes) / trials;
  std::tie(row.ci_lo, row.ci_hi) = wilson_interval(successes, trials);
  row.p_star = compatibility_probability(p, true);
  row.paper_bound = with_bound ? decay_bound(n, k, row.p_star) : NAN;
  return row;
}

struct TrialSample {
  PointSet<double> points;
  GoodEnumeration<double> order;
};

// Samples until the enumeration reaches `needed` points.
TrialSample enumerated_sample(const ExperimentConfig& cfg, const NormShape<double>& shape, std::uint64_t trial_seed,
                              std::size_t needed) {
  EnumerationOptions options{needed, cfg.anchor_candidates};
  for (std::uint64_t attempt = 0; attempt < 20; ++attempt) {
    auto points = sample_points(cfg.sampler, mix_seed(trial_seed, 100 + attempt));
    if (points.size() < needed) continue;
    try {
      auto order = good_enumeration(points, shape, options);
      if (order.order.size() >= needed) return {std::move(points), std::move(order)};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotFound) throw;
    }
  }
  fail(ErrorCode::NotFound, "could not enumerate " + std::to_string(needed) +
                                " points in 20 samples; enlarge the window or the intensity");
}

}  // namespace

bool operator==(const DecayRow& a, const DecayRow& b) {
  auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  return a.n == b.n && a.trials == b.trials && a.successes == b.successes && same(a.fraction, b.fraction) &&
         same(a.ci_lo, b.ci_lo) && same(a.ci_hi, b.ci_hi) && same(a.paper_bound, b.paper_bound);
}

void ExperimentConfig::validate() const {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be at least 1");
  if (!(p > 0 && p < 1)) fail(ErrorCode::InvalidArgument, "p must lie in (0, 1)");
  if (!(delta > 0)) fail(ErrorCode::InvalidArgument, "delta must be positive");
  if (n_values.empty()) fail(ErrorCode::InvalidArgument, "n_values is empty");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 3) fail(ErrorCode::InvalidArgument, "every n must be at least 3");
    if (i > 0 && !(n_values[i - 1] < n_values[i])) fail(ErrorCode::InvalidArgument, "n_values must be ascending");
  }
}

NormShape<double> ExperimentConfig::make_shape() const {
  if (!generators.empty()) return NormShape<double>::polygonal(generators);
  return preset_shape<double>(shape);
}

ExperimentConfig parse_config(std::string_view json_text) {
  ExperimentConfig cfg;
  try {
    auto j = nlohmann::json::parse(json_text);
    if (j.contains("shape")) {
      const auto& s = j.at("shape");
      if (s.is_string()) {
        cfg.shape = s.get<std::string>();
      } else if (s.contains("preset")) {
        cfg.shape = s.at("preset").get<std::string>();
      } else {
        cfg.shape = "custom";
        for (const auto& g : s.at("generators")) cfg.generators.push_back({parse_number(g.at(0)), parse_number(g.at(1))});
      }
    }
    if (j.contains("sampler")) {
      const auto& s = j.at("sampler");
      cfg.sampler.kind = s.value("kind", cfg.sampler.kind);
      if (s.contains("intensity")) cfg.sampler.intensity = parse_number(s.at("intensity"));
      if (s.contains("window")) {
        const auto& w = s.at("window");
        if (w.is_array()) {
          cfg.sampler.window = {parse_number(w.at(0)), parse_number(w.at(1)), parse_number(w.at(2)),
                                parse_number(w.at(3))};
        } else {
          cfg.sampler.window = {parse_number(w.at("xmin")), parse_number(w.at("ymin")), parse_number(w.at("xmax")),
                                parse_number(w.at("ymax"))};
        }
      }
    }
    if (j.contains("n_values")) cfg.n_values = j.at("n_values").get<std::vector<std::size_t>>();
    if (j.contains("p")) cfg.p = parse_number(j.at("p"));
    if (j.contains("delta")) cfg.delta = parse_number(j.at("delta"));
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.anchor_candidates = j.value("anchor_candidates", cfg.anchor_candidates);
    cfg.identical_graphs = j.value("identical_graphs", cfg.identical_graphs);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.budget = j.value("budget", cfg.budget);
    cfg.idf_trials = j.value("idf_trials", cfg.idf_trials);
    cfg.compare_hexagon = j.value("compare_hexagon", cfg.compare_hexagon);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("bad experiment config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  if (cfg.generators.empty()) {
    j["shape"] = cfg.shape;
  } else {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : cfg.generators) gens.push_back({g.x, g.y});
    j["shape"] = {{"generators", gens}};
  }
  const auto& w = cfg.sampler.window;
  j["sampler"] = {{"kind", cfg.sampler.kind}, {"window", {w.xmin, w.ymin, w.xmax, w.ymax}},
                  {"intensity", cfg.sampler.intensity}};
  j["n_values"] = cfg.n_values;
  j["p"] = cfg.p;
  j["delta"] = cfg.delta;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["anchor_candidates"] = cfg.anchor_candidates;
  j["identical_graphs"] = cfg.identical_graphs;
  j["threads"] = cfg.threads;
  j["budget"] = cfg.budget;
  j["idf_trials"] = cfg.idf_trials;
  j["compare_hexagon"] = cfg.compare_hexagon;
  return j.dump(2);
}

std::pair<double, double> wilson_interval(int successes, int trials) {
  if (trials <= 0) fail(ErrorCode::InvalidArgument, "Wilson interval needs trials > 0");
  const double n = trials, x = successes, z2 = kWilsonZ * kWilsonZ;
  double center = (x + z2 / 2) / (n + z2);
  double half = kWilsonZ * std::sqrt(x * (n - x) / n + z2 / 4) / (n + z2);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double decay_bound(std::size_t n, std::size_t k, double p_star) {
  double nn = static_cast<double>(n);
  return std::exp((2.0 * k + 2) * std::log(nn) + (nn - 1) * std::log(p_star));
}

template <Scalar T>
bool partial_isomorphism_exists(const GeoGraph& g, const GeoGraph& h, const PointSet<T>& points,
                                const NormShape<T>& shape, const GoodEnumeration<T>& order, std::size_t n) {
  if (n < 3) fail(ErrorCode::InvalidArgument, "n must be at least 3");
  if (n > order.order.size()) fail(ErrorCode::InvalidArgument, "n exceeds the enumerated points");
  if (g.n != points.size() || h.n != points.size()) fail(ErrorCode::InvalidArgument, "graphs must span the point set");
  validate_enumeration(order, points, shape);

  const std::vector<std::size_t> v(order.order.begin(), order.order.begin() + static_cast<std::ptrdiff_t>(n));
  const std::array<Vec2<T>, 3> anchor{points[v[0]], points[v[1]], points[v[2]]};
  const bool g01 = g.adjacent(v[0], v[1]), g02 = g.adjacent(v[0], v[2]), g12 = g.adjacent(v[1], v[2]);
  PointLookup<T> lookup(points);

  std::vector<std::size_t> image(n);
  std::vector<Vec2<T>> image_pos(n);
  std::vector<char> used(points.size(), 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || h.adjacent(v[a], v[b]) != g01) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (h.adjacent(v[a], v[c]) != g02 || h.adjacent(v[b], v[c]) != g12) continue;
        if (n == 3) return true;
        std::array<Vec2<T>, 3> images{points[v[a]], points[v[b]], points[v[c]]};
        auto jd = Mat2<T>::from_columns(images[1] - images[0], images[2] - images[0]);
        if (jd.determinant() == 0) continue;
        Mat2<T> linear = anchor_linear_part(anchor, images);
        if (!shape.is_linear_isometry(linear)) continue;

        std::fill(used.begin(), used.end(), 0);
        image[0] = v[a], image[1] = v[b], image[2] = v[c];
        for (int t = 0; t < 3; ++t) {
          image_pos[t] = images[t];
          used[image[t]] = 1;
        }
        bool ok = true;
        for (std::size_t i = 3; i < n && ok; ++i) {
          const auto& cert = order.certificates[i - 3];
          std::array<Vec2<T>, 3> refs{image_pos[cert.refs[0]], image_pos[cert.refs[1]], image_pos[cert.refs[2]]};
          std::array<T, 3> dists;
          for (int t = 0; t < 3; ++t) dists[t] = shape.distance(points[v[i]], points[v[cert.refs[t]]]);
          std::optional<Vec2<T>> y;
          try {
            y = reconstruct_with(shape, linear, refs, cert.normals, dists);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::Inconsistent) throw;
          }
          if (!y) {
            ok = false;
            break;
          }
          auto idx = lookup.find(*y);
          if (!idx || used[*idx]) {
            ok = false;
            break;
          }
          for (std::size_t j = 0; j < i; ++j) {
            if (g.adjacent(v[j], v[i]) != h.adjacent(image[j], *idx)) {
              ok = false;
              break;
            }
          }
          image[i] = *idx;
          image_pos[i] = points[*idx];
          used[*idx] = 1;
        }
        if (ok) return true;
      }
    }
  }
  return false;
}

int worker_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("LARG_LAB_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n, cap);
  }
  return std::max(1, n);
}

void run_parallel(std::size_t count, int threads, const std::function<void(std::size_t)>& job) {
  const int workers = std::min<int>(worker_count(threads), static_cast<int>(std::max<std::size_t>(1, count)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

std::vector<DecayRow> run_decay_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto shape = cfg.make_shape();
  if (shape.is_box()) fail(ErrorCode::InvalidShape, "box shapes are predictable; use the box-demo experiment");
  const std::size_t needed = cfg.n_values.back();
  std::vector<std::vector<char>> success(cfg.trials, std::vector<char>(cfg.n_values.size(), 0));
  run_parallel(cfg.trials, cfg.threads, [&](std::size_t t) {
    const std::uint64_t trial_seed = mix_seed(cfg.seed, t);
    auto sample = enumerated_sample(cfg, shape, trial_seed, needed);
    auto g = sample_larg(sample.points, shape, cfg.delta, cfg.p, mix_seed(trial_seed, 1));
    auto h = cfg.identical_graphs ? g : sample_larg(sample.points, shape, cfg.delta, cfg.p, mix_seed(trial_seed, 2));
    for (std::size_t j = 0; j < cfg.n_values.size(); ++j) {
      success[t][j] = partial_isomorphism_exists(g, h, sample.points, shape, sample.order, cfg.n_values[j]);
    }
  });
  std::vector<DecayRow> rows;
  for (std::size_t j = 0; j < cfg.n_values.size(); ++j) {
    int hits = 0;
    for (const auto& s : success) hits += s[j];
    rows.push_back(make_row(cfg.n_values[j], cfg.trials, hits, cfg.p, shape.direction_count(), true));
  }
  return rows;
}

template <Scalar T>
Mat2<T> box_to_linf_transform(const NormShape<T>& shape) {
  if (!shape.is_box()) fail(ErrorCode::InvalidShape, "box_to_linf_transform needs a shape with two generator directions");
  auto gens = shape.generators();
  return Mat2<T>::from_rows(gens[0], gens[1]);
}

std::string outcome_name(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Found:
      return "found";
    case SearchOutcome::None:
      return "none";
    case SearchOutcome::Undetermined:
      return "undetermined";
  }
  return "none";
}

template <Scalar T>
EmbeddingResult box_embedding_search(const GeoGraph& g, const GeoGraph& h, const PointSet<T>& points,
                                     const NormShape<T>& box, const std::vector<std::size_t>& domain,
                                     std::uint64_t budget) {
  const Mat2<T> tr = box_to_linf_transform(box);
  const std::size_t n = points.size();
  if (g.n != n || h.n != n) fail(ErrorCode::InvalidArgument, "graphs must span the point set");
  std::vector<Vec2<T>> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = tr * points[i];
  auto floors = [&](std::size_t u, std::size_t v) {
    return std::make_pair(floor_of(c[u].x - c[v].x), floor_of(c[u].y - c[v].y));
  };
  const std::size_t m = domain.size();
  // Candidates nearest first.
  std::vector<std::vector<std::size_t>> candidates(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (domain[k] >= n) fail(ErrorCode::InvalidArgument, "domain vertex out of range");
    auto& list = candidates[k];
    list.resize(n);
    std::iota(list.begin(), list.end(), 0);
    auto base = to_double(points[domain[k]]);
    std::vector<double> dist(n);
    for (std::size_t w = 0; w < n; ++w) {
      auto p = to_double(points[w]);
      dist[w] = std::hypot(p.x - base.x, p.y - base.y);
    }
    std::stable_sort(list.begin(), list.end(), [&](auto a, auto b) { return dist[a] < dist[b]; });
  }

  // Depth-first search with forward checking: after each assignment the
  // candidate lists of unassigned vertices are filtered against it, and the
  // vertex with the fewest candidates is assigned next.
  EmbeddingResult result;
  std::vector<std::size_t> image(m, n);
  std::vector<char> used(n, 0);
  auto compatible = [&](std::size_t j, std::size_t wj, std::size_t k, std::size_t wk) {
    return g.adjacent(domain[j], domain[k]) == h.adjacent(wj, wk) && floors(domain[k], domain[j]) == floors(wk, wj);
  };
  std::function<bool(std::vector<std::vector<std::size_t>>&, std::size_t)> extend =
      [&](std::vector<std::vector<std::size_t>>& live, std::size_t assigned) -> bool {
    if (assigned == m) return true;
    std::size_t k = m;
    for (std::size_t j = 0; j < m; ++j) {
      if (image[j] == n && (k == m || live[j].size() < live[k].size())) k = j;
    }
    for (auto w : live[k]) {
      if (used[w]) continue;
      if (++result.attempts > budget) return false;
      image[k] = w;
      used[w] = 1;
      std::vector<std::vector<std::size_t>> next(m);
      bool viable = true;
      for (std::size_t j = 0; j < m && viable; ++j) {
        if (image[j] != n) continue;
        for (auto x : live[j]) {
          if (!used[x] && compatible(k, w, j, x)) next[j].push_back(x);
        }
        viable = !next[j].empty();
      }
      if (viable && extend(next, assigned + 1)) return true;
      image[k] = n;
      used[w] = 0;
      if (result.attempts > budget) return false;
    }
    return false;
  };
  if (extend(candidates, 0)) {
    result.outcome = SearchOutcome::Found;
    result.images = image;
  } else {
    result.outcome = result.attempts > budget ? SearchOutcome::Undetermined : SearchOutcome::None;
  }
  return result;
}

BoxDemoReport box_isomorphism_demo(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto box = cfg.make_shape();
  if (!box.is_box()) fail(ErrorCode::InvalidShape, "box-demo needs a box shape");
  const auto hexagon = preset_shape<double>("hexagon");
  const std::size_t cols = cfg.n_values.size();
  std::vector<std::vector<SearchOutcome>> box_out(cfg.trials, std::vector<SearchOutcome>(cols));
  std::vector<std::vector<char>> hex_out(cfg.trials, std::vector<char>(cols, 0));
  const auto gens = box.generators();
  const std::vector<Vec2<double>> generator_list(gens.begin(), gens.end());

  run_parallel(cfg.trials, cfg.threads, [&](std::size_t t) {
    const std::uint64_t trial_seed = mix_seed(cfg.seed, t);
    auto raw = sample_points(cfg.sampler, mix_seed(trial_seed, 100));
    auto points = rescale_to_idf<double>(raw, generator_list, cfg.idf_trials, trial_seed).points;
    for (const auto& a : generator_list) {
      auto values = projections(points, a);
      if (!is_idf<double>(values)) fail(ErrorCode::InvalidArgument, "box demo needs idf projections");
    }
    auto g = sample_larg(points, box, cfg.delta, cfg.p, mix_seed(trial_seed, 1));
    auto h = cfg.identical_graphs ? g : sample_larg(points, box, cfg.delta, cfg.p, mix_seed(trial_seed, 2));
    // Domain: the points nearest the window center.
    Vec2<double> center{(points.window.xmin + points.window.xmax) / 2, (points.window.ymin + points.window.ymax) / 2};
    std::vector<std::size_t> by_center(points.size());
    std::iota(by_center.begin(), by_center.end(), 0);
    std::stable_sort(by_center.begin(), by_center.end(), [&](auto a, auto b) {
      return std::hypot(points[a].x - center.x, points[a].y - center.y) <
             std::hypot(points[b].x - center.x, points[b].y - center.y);
    });
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t n = cfg.n_values[j];
      if (n > points.size()) fail(ErrorCode::NotFound, "sample has fewer than " + std::to_string(n) + " points");
      std::vector<std::size_t> domain(by_center.begin(), by_center.begin() + static_cast<std::ptrdiff_t>(n));
      box_out[t][j] = box_embedding_search(g, h, points, box, domain, cfg.budget).outcome;
    }
    if (cfg.compare_hexagon) {
      auto sample = enumerated_sample(cfg, hexagon, trial_seed, cfg.n_values.back());
      auto gh = sample_larg(sample.points, hexagon, cfg.delta, cfg.p, mix_seed(trial_seed, 1));
      auto hh = cfg.identical_graphs ? gh : sample_larg(sample.points, hexagon, cfg.delta, cfg.p, mix_seed(trial_seed, 2));
      for (std::size_t j = 0; j < cols; ++j) {
        hex_out[t][j] = partial_isomorphism_exists(gh, hh, sample.points, hexagon, sample.order, cfg.n_values[j]);
      }
    }
  });

  BoxDemoReport report;
  for (std::size_t j = 0; j < cols; ++j) {
    int found = 0, none = 0, undetermined = 0, hex = 0;
    for (int t = 0; t < cfg.trials; ++t) {
      found += box_out[t][j] == SearchOutcome::Found;
      none += box_out[t][j] == SearchOutcome::None;
      undetermined += box_out[t][j] == SearchOutcome::Undetermined;
      hex += hex_out[t][j];
    }
    report.box_rows.push_back(make_row(cfg.n_values[j], cfg.trials, found, cfg.p, 2, false));
    report.none.push_back(none);
    report.undetermined.push_back(undetermined);
    if (cfg.compare_hexagon) {
      report.hexagon_rows.push_back(make_row(cfg.n_values[j], cfg.trials, hex, cfg.p, 3, true));
    }
  }
  return report;
}

std::string box_demo_json(const BoxDemoReport& report, const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["p"] = cfg.p;
  j["trials"] = cfg.trials;
  j["budget"] = cfg.budget;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.box_rows.size(); ++i) {
    nlohmann::ordered_json r;
    const auto& b = report.box_rows[i];
    r["n"] = b.n;
    r["box_found"] = b.successes;
    r["box_none"] = report.none[i];
    r["box_undetermined"] = report.undetermined[i];
    r["box_fraction"] = b.fraction;
    r["box_ci"] = {b.ci_lo, b.ci_hi};
    if (i < report.hexagon_rows.size()) {
      const auto& h = report.hexagon_rows[i];
      r["hexagon_successes"] = h.successes;
      r["hexagon_fraction"] = h.fraction;
      r["hexagon_ci"] = {h.ci_lo, h.ci_hi};
    }
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(2);
}

std::string rows_to_csv(const std::vector<DecayRow>& rows) {
  std::string out = "n,trials,successes,fraction,ci_lo,ci_hi,paper_bound\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.trials) + "," + std::to_string(r.successes) + "," +
           format_double(r.fraction) + "," + format_double(r.ci_lo) + "," + format_double(r.ci_hi) + "," +
           format_double(r.paper_bound) + "\n";
  }
  return out;
}

std::vector<DecayRow> rows_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "n,trials,successes,fraction,ci_lo,ci_hi,paper_bound") {
    fail(ErrorCode::Parse, "unexpected CSV header");
  }
  std::vector<DecayRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 7 columns");
    try {
      DecayRow r;
      r.n = std::stoull(cells[0]);
      r.trials = std::stoi(cells[1]);
      r.successes = std::stoi(cells[2]);
      r.fraction = std::strtod(cells[3].c_str(), nullptr);
      r.ci_lo = std::strtod(cells[4].c_str(), nullptr);
      r.ci_hi = std::strtod(cells[5].c_str(), nullptr);
      r.paper_bound = std::strtod(cells[6].c_str(), nullptr);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": bad number");
    }
  }
  return rows;
}

#define LARG_INSTANTIATE(T)                                                                                       \
  template bool partial_isomorphism_exists(const GeoGraph&, const GeoGraph&, const PointSet<T>&,                  \
                                           const NormShape<T>&, const GoodEnumeration<T>&, std::size_t);          \
  template Mat2<T> box_to_linf_transform(const NormShape<T>&);                                                    \
  template EmbeddingResult box_embedding_search(const GeoGraph&, const GeoGraph&, const PointSet<T>&,             \
                                                const NormShape<T>&, const std::vector<std::size_t>&, std::uint64_t);

LARG_INSTANTIATE(double)
LARG_INSTANTIATE(Rational)

#undef LARG_INSTANTIATE

}  // namespace larg
