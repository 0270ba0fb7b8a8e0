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
#include "larg_lab/dense_set.hpp"
#include "larg_lab/geometry.hpp"

#include <string>
#include <string_view>

namespace larg {

// Shape files: {"kind": "polygonal", "generators": [[ax, ay], ...]} or
// {"kind": "lp", "p": 4}. {"preset": "hexagon"} is accepted on input.
// Rational coordinates are written as "num/den" strings; float mode writes
// JSON numbers. Either form is read in both modes.

template <Scalar T>
std::string shape_to_json(const NormShape<T>& shape);

template <Scalar T>
NormShape<T> shape_from_json(std::string_view text);

// Point set files: {seed, alpha, window: [xmin, ymin, xmax, ymax],
// mode: "rational" | "float", points: [[x, y], ...],
// flags: {idf_per_generator: [{generator, idf}], pairwise_noninteger}}.

template <Scalar T>
std::string point_set_to_json(const PointSet<T>& points);

/// Validates the result. A float file read in rational mode converts each
/// double exactly.
template <Scalar T>
PointSet<T> point_set_from_json(std::string_view text);

/// {"order": [...], "unplaced": [...], "certificates": [{"position", "refs", "normals"}]}.
template <Scalar T>
std::string enumeration_to_json(const GoodEnumeration<T>& e);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace larg
