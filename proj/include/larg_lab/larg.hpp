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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace larg {

/// How the per-pair edge stream is selected.
///  PairIndex: keyed by the sorted index pair (the default).
///  DifferenceVector: keyed by the difference u - v up to sign, so the graph is
///  invariant under translations and point reflections of the point set.
enum class EdgeKeying { PairIndex, DifferenceVector };

struct GeoGraph {
  std::uint64_t point_set_hash = 0;
  std::uint64_t point_seed = 0;
  std::size_t n = 0;
  double p = 0.5;
  double delta = 1;
  std::uint64_t edge_seed = 0;
  EdgeKeying keying = EdgeKeying::PairIndex;
  std::vector<std::vector<std::uint32_t>> adjacency;  // sorted neighbour lists

  bool adjacent(std::size_t u, std::size_t v) const;
  std::size_t edge_count() const;
  /// All edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;
  /// Induced subgraph on vertices 0..m-1.
  GeoGraph prefix(std::size_t m) const;

  friend bool operator==(const GeoGraph&, const GeoGraph&) = default;
};

/// FNV-1a over the exact coordinates; a double set and its exact rational
/// conversion hash alike.
template <Scalar T>
std::uint64_t point_set_hash(const PointSet<T>& points);

/// Bernoulli(p) draw for the stream with the given 128-bit key words.
bool edge_draw(std::uint64_t edge_seed, std::uint64_t k0, std::uint64_t k1, double p);

/// Every pair at distance < delta becomes an edge with probability p.
template <Scalar T>
GeoGraph sample_larg(const PointSet<T>& points, const NormShape<T>& shape, double delta, double p,
                     std::uint64_t edge_seed, EdgeKeying keying = EdgeKeying::PairIndex);

/// p^2 + (1 - p)^2 for in-range pairs, 1 otherwise.
double compatibility_probability(double p, bool within_range);

/// True iff {v, w} in G and {v2, w2} in H are both edges or both non-edges.
bool pair_compatible(const GeoGraph& g, const GeoGraph& h, std::size_t v, std::size_t w, std::size_t v2,
                     std::size_t w2);

/// Pairs (u, v) with an edge at distance >= delta; empty for honest samples.
template <Scalar T>
std::vector<std::pair<std::uint32_t, std::uint32_t>> range_violations(const GeoGraph& g, const PointSet<T>& points,
                                                                      const NormShape<T>& shape);

std::string write_graph(const GeoGraph& g);
GeoGraph read_graph(std::string_view text);

std::string keying_name(EdgeKeying k);
EdgeKeying parse_keying(std::string_view name);

}  // namespace larg
