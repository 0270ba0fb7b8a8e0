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

#include "larg_lab/larg.hpp"

#include "larg_lab/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

namespace larg {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

void fnv_mix(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
}

template <Scalar T>
Rational exact(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x;
  } else {
    return Rational(x);
  }
}

template <Scalar T>
std::uint64_t difference_key(const Vec2<T>& u, const Vec2<T>& v) {
  Vec2<Rational> d{exact(u.x) - exact(v.x), exact(u.y) - exact(v.y)};
  if (d.x < 0 || (d.x == 0 && d.y < 0)) d = -d;
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, format_rational(d.x));
  fnv_mix(h, ",");
  fnv_mix(h, format_rational(d.y));
  return h;
}

void check_p(double p) {
  if (!(p > 0 && p < 1)) fail(ErrorCode::InvalidArgument, "edge probability must lie in (0, 1)");
}

}  // namespace

bool GeoGraph::adjacent(std::size_t u, std::size_t v) const {
  if (u >= n || v >= n) {
    fail(ErrorCode::InvalidArgument, "vertex index out of range (" + std::to_string(std::max(u, v)) + " >= " +
                                         std::to_string(n) + ")");
  }
  const auto& row = adjacency[u];
  return std::binary_search(row.begin(), row.end(), static_cast<std::uint32_t>(v));
}

std::size_t GeoGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& row : adjacency) total += row.size();
  return total / 2;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> GeoGraph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t u = 0; u < adjacency.size(); ++u) {
    for (std::uint32_t v : adjacency[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

GeoGraph GeoGraph::prefix(std::size_t m) const {
  if (m > n) fail(ErrorCode::InvalidArgument, "prefix larger than the graph");
  GeoGraph out = *this;
  out.n = m;
  out.adjacency.resize(m);
  for (auto& row : out.adjacency) {
    row.erase(std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(m)), row.end());
  }
  return out;
}

template <Scalar T>
std::uint64_t point_set_hash(const PointSet<T>& points) {
  std::uint64_t h = kFnvOffset;
  for (const auto& v : points.points) {
    fnv_mix(h, format_rational(exact(v.x)));
    fnv_mix(h, ",");
    fnv_mix(h, format_rational(exact(v.y)));
    fnv_mix(h, ";");
  }
  return h;
}

bool edge_draw(std::uint64_t edge_seed, std::uint64_t k0, std::uint64_t k1, double p) {
  auto block = philox4x32_10({static_cast<std::uint32_t>(k0), static_cast<std::uint32_t>(k0 >> 32),
                              static_cast<std::uint32_t>(k1), static_cast<std::uint32_t>(k1 >> 32)},
                             philox_key(edge_seed));
  return to_unit_interval(block[0], block[1]) < p;
}

template <Scalar T>
GeoGraph sample_larg(const PointSet<T>& points, const NormShape<T>& shape, double delta, double p,
                     std::uint64_t edge_seed, EdgeKeying keying) {
  check_p(p);
  if (!(delta > 0) || !std::isfinite(delta)) fail(ErrorCode::InvalidArgument, "delta must be positive");
  GeoGraph g;
  g.point_set_hash = point_set_hash(points);
  g.point_seed = points.seed;
  g.n = points.size();
  g.p = p;
  g.delta = delta;
  g.edge_seed = edge_seed;
  g.keying = keying;
  g.adjacency.assign(g.n, {});
  const T threshold = from_double<T>(delta);
  for (std::size_t u = 0; u < g.n; ++u) {
    for (std::size_t v = u + 1; v < g.n; ++v) {
      if (!(shape.distance(points[u], points[v]) < threshold)) continue;
      bool edge = keying == EdgeKeying::PairIndex
                      ? edge_draw(edge_seed, u, v, p)
                      : edge_draw(edge_seed, difference_key(points[u], points[v]), ~std::uint64_t{0}, p);
      if (edge) {
        g.adjacency[u].push_back(static_cast<std::uint32_t>(v));
        g.adjacency[v].push_back(static_cast<std::uint32_t>(u));
      }
    }
  }
  // Rows fill in increasing order of the other endpoint, so they are sorted.
  return g;
}

double compatibility_probability(double p, bool within_range) {
  check_p(p);
  return within_range ? p * p + (1 - p) * (1 - p) : 1.0;
}

bool pair_compatible(const GeoGraph& g, const GeoGraph& h, std::size_t v, std::size_t w, std::size_t v2,
                     std::size_t w2) {
  return g.adjacent(v, w) == h.adjacent(v2, w2);
}

template <Scalar T>
std::vector<std::pair<std::uint32_t, std::uint32_t>> range_violations(const GeoGraph& g, const PointSet<T>& points,
                                                                      const NormShape<T>& shape) {
  if (points.size() != g.n) fail(ErrorCode::InvalidArgument, "graph and point set sizes differ");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  const T threshold = from_double<T>(g.delta);
  for (auto [u, v] : g.edges()) {
    if (!(shape.distance(points[u], points[v]) < threshold)) out.emplace_back(u, v);
  }
  return out;
}

std::string keying_name(EdgeKeying k) { return k == EdgeKeying::PairIndex ? "pair-index" : "difference-vector"; }

EdgeKeying parse_keying(std::string_view name) {
  if (name == "pair-index") return EdgeKeying::PairIndex;
  if (name == "difference-vector") return EdgeKeying::DifferenceVector;
  fail(ErrorCode::Parse, "unknown edge keying '" + std::string(name) + "'");
}

std::string write_graph(const GeoGraph& g) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, g.point_set_hash);
  nlohmann::ordered_json header;
  header["format"] = "larg-graph";
  header["version"] = 1;
  header["n"] = g.n;
  header["p"] = g.p;
  header["delta"] = g.delta;
  header["edge_seed"] = g.edge_seed;
  header["point_set_hash"] = hash;
  header["point_seed"] = g.point_seed;
  header["keying"] = keying_name(g.keying);
  header["edges"] = g.edge_count();
  std::string out = header.dump();
  out += '\n';
  for (auto [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

GeoGraph read_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::Parse, "graph file is empty");
  GeoGraph g;
  std::optional<std::size_t> expected_edges;
  try {
    auto header = nlohmann::json::parse(line);
    if (header.value("format", "") != "larg-graph") fail(ErrorCode::Parse, "not a larg-graph file");
    g.n = header.at("n").get<std::size_t>();
    g.p = header.at("p").get<double>();
    g.delta = header.at("delta").get<double>();
    g.edge_seed = header.at("edge_seed").get<std::uint64_t>();
    g.point_seed = header.value("point_seed", std::uint64_t{0});
    g.point_set_hash = std::stoull(header.at("point_set_hash").get<std::string>(), nullptr, 16);
    g.keying = parse_keying(header.value("keying", "pair-index"));
    if (header.contains("edges")) expected_edges = header.at("edges").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("bad graph header: ") + e.what());
  } catch (const std::logic_error& e) {
    fail(ErrorCode::Parse, std::string("bad graph header: ") + e.what());
  }
  g.adjacency.assign(g.n, {});
  std::size_t count = 0, lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    long long u, v;
    std::string rest;
    if (!(fields >> u >> v) || (fields >> rest)) {
      fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 'u v'");
    }
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= g.n || static_cast<std::size_t>(v) >= g.n || u == v) {
      fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": invalid edge");
    }
    g.adjacency[u].push_back(static_cast<std::uint32_t>(v));
    g.adjacency[v].push_back(static_cast<std::uint32_t>(u));
    ++count;
  }
  for (auto& row : g.adjacency) {
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end()) fail(ErrorCode::Parse, "repeated edge");
  }
  if (expected_edges && *expected_edges != count) fail(ErrorCode::Parse, "edge count does not match header");
  return g;
}

#define LARG_INSTANTIATE(T)                                                                                   \
  template std::uint64_t point_set_hash(const PointSet<T>&);                                                  \
  template GeoGraph sample_larg(const PointSet<T>&, const NormShape<T>&, double, double, std::uint64_t,      \
                                EdgeKeying);                                                                  \
  template std::vector<std::pair<std::uint32_t, std::uint32_t>> range_violations(const GeoGraph&,            \
                                                                                 const PointSet<T>&,         \
                                                                                 const NormShape<T>&);

LARG_INSTANTIATE(double)
LARG_INSTANTIATE(Rational)

#undef LARG_INSTANTIATE

}  // namespace larg
