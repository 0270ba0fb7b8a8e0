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

#include "larg_lab/anchoring.hpp"
#include "larg_lab/larg.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace larg {

struct SamplerSpec {
  std::string kind = "poisson";  // "poisson" or "product"
  Window window{0, 0, 2, 2};
  double intensity = 100;
};

struct ExperimentConfig {
  std::string shape = "hexagon";  // preset name
  std::vector<Vec2<double>> generators;  // overrides the preset when non-empty
  SamplerSpec sampler;
  std::vector<std::size_t> n_values{5, 10, 20, 40};
  double p = 0.5;
  double delta = 1;
  int trials = 200;
  std::uint64_t seed = 1;
  std::size_t anchor_candidates = 16;
  bool identical_graphs = false;  // H = G, for sanity runs
  int threads = 0;                // 0: LARG_LAB_THREADS or hardware concurrency
  std::uint64_t budget = 200000;  // box demo extension attempts per trial
  int idf_trials = 64;
  bool compare_hexagon = true;    // box demo: run the hexagon search alongside

  /// Throws InvalidArgument unless trials >= 1, n_values ascending and p in (0, 1).
  void validate() const;
  NormShape<double> make_shape() const;
};

ExperimentConfig parse_config(std::string_view json_text);
std::string config_to_json(const ExperimentConfig& cfg);

struct DecayRow {
  std::size_t n = 0;
  int trials = 0;
  int successes = 0;
  double fraction = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  double paper_bound = 0;
  double p_star = 0;  // reported alongside, not part of the CSV

  /// Compares the CSV columns; NaN bounds compare equal.
  friend bool operator==(const DecayRow& a, const DecayRow& b);
};

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(int successes, int trials);

/// n^(2k + 2) p*^(n - 1).
double decay_bound(std::size_t n, std::size_t k, double p_star);

/// Some injective f from the first n enumerated points into the point set with
/// f(anchor) inside those n points, adjacency preserved between G and H, and
/// f the restriction of an isometry: the anchor images fix a linear isometry
/// and every later point's image is reconstructed from its certificate.
/// n = 3 checks the anchor adjacency only.
template <Scalar T>
bool partial_isomorphism_exists(const GeoGraph& g, const GeoGraph& h, const PointSet<T>& points,
                                const NormShape<T>& shape, const GoodEnumeration<T>& order, std::size_t n);

/// Worker count: the requested value, else hardware concurrency, capped by
/// LARG_LAB_THREADS when set.
int worker_count(int requested);

/// Runs job(i) for i in [0, count) on a pool; results land at index i.
void run_parallel(std::size_t count, int threads, const std::function<void(std::size_t)>& job);

std::vector<DecayRow> run_decay_experiment(const ExperimentConfig& cfg);

/// Rows (a_1, a_2): (T x)_i = a_i . x, so d_box(x, y) = d_inf(T x, T y).
template <Scalar T>
Mat2<T> box_to_linf_transform(const NormShape<T>& shape);

enum class SearchOutcome { Found, None, Undetermined };
std::string outcome_name(SearchOutcome o);

struct EmbeddingResult {
  SearchOutcome outcome = SearchOutcome::None;
  std::vector<std::size_t> images;  // for Found: image of each domain vertex
  std::uint64_t attempts = 0;
};

/// Back-and-forth extension of an injective map from `domain` (vertex ids of
/// G) into all vertices of H that preserves adjacency and the floors of the
/// T-coordinate differences. Candidates are tried nearest first, so the
/// identity is found first when it works.
template <Scalar T>
EmbeddingResult box_embedding_search(const GeoGraph& g, const GeoGraph& h, const PointSet<T>& points,
                                     const NormShape<T>& box, const std::vector<std::size_t>& domain,
                                     std::uint64_t budget);

struct BoxDemoReport {
  std::vector<DecayRow> box_rows;       // paper_bound is NaN
  std::vector<DecayRow> hexagon_rows;   // partial isomorphism fractions at matched n, p
  std::vector<int> undetermined;        // per n, box searches that ran out of budget
  std::vector<int> none;                // per n, box searches proven empty
};

BoxDemoReport box_isomorphism_demo(const ExperimentConfig& cfg);
std::string box_demo_json(const BoxDemoReport& report, const ExperimentConfig& cfg);

/// Fixed columns n,trials,successes,fraction,ci_lo,ci_hi,paper_bound.
std::string rows_to_csv(const std::vector<DecayRow>& rows);
std::vector<DecayRow> rows_from_csv(std::string_view text);

}  // namespace larg
