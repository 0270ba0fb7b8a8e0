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


#include "larg_lab/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace larg {

namespace {

using Json = nlohmann::ordered_json;

template <Scalar T>
Json scalar_json(const T& x) {
  if constexpr (is_exact_v<T>) {
    return format_rational(x);
  } else {
    return x;
  }
}

template <Scalar T>
T scalar_from(const Json& j) {
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if constexpr (is_exact_v<T>) {
      return q;
    } else {
      return to_double(q);
    }
  }
  if (j.is_number_integer()) return T(j.get<std::int64_t>());
  if (j.is_number()) return T(j.get<double>());
  fail(ErrorCode::Parse, "expected a number or a \"num/den\" string");
}

template <Scalar T>
Json vec_json(const Vec2<T>& v) {
  return Json::array({scalar_json(v.x), scalar_json(v.y)});
}

template <Scalar T>
Vec2<T> vec_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::Parse, "expected a coordinate pair");
  return {scalar_from<T>(j[0]), scalar_from<T>(j[1])};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, e.what());
  }
}

}  // namespace

template <Scalar T>
std::string shape_to_json(const NormShape<T>& shape) {
  Json j;
  if (shape.is_polygonal()) {
    j["kind"] = "polygonal";
    Json gens = Json::array();
    for (const auto& a : shape.generators()) gens.push_back(vec_json(a));
    j["generators"] = gens;
  } else {
    j["kind"] = "lp";
    j["p"] = shape.p();
    j["budget"] = shape.generator_budget();
  }
  return j.dump();
}

template <Scalar T>
NormShape<T> shape_from_json(std::string_view text) {
  Json j = parse_json(text);
  return guarded([&] {
    if (j.is_string()) return preset_shape<T>(j.get<std::string>());
    if (j.contains("preset")) return preset_shape<T>(j.at("preset").get<std::string>());
    const std::string kind = j.value("kind", j.contains("p") ? "lp" : "polygonal");
    if (kind == "lp") return NormShape<T>::lp(j.at("p").get<double>(), j.value("budget", std::size_t{256}));
    if (kind != "polygonal") fail(ErrorCode::Parse, "unknown shape kind '" + kind + "'");
    std::vector<Vec2<T>> gens;
    for (const auto& g : j.at("generators")) gens.push_back(vec_from<T>(g));
    return NormShape<T>::polygonal(std::move(gens));
  });
}

template <Scalar T>
std::string point_set_to_json(const PointSet<T>& s) {
  Json j;
  j["seed"] = s.seed;
  j["alpha"] = scalar_json(s.alpha);
  j["window"] = {s.window.xmin, s.window.ymin, s.window.xmax, s.window.ymax};
  j["mode"] = is_exact_v<T> ? "rational" : "float";
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back(vec_json(p));
  j["points"] = pts;
  Json flags;
  Json idf = Json::array();
  for (const auto& f : s.idf_per_generator) idf.push_back({{"generator", vec_json(f.generator)}, {"idf", f.idf}});
  flags["idf_per_generator"] = idf;
  flags["pairwise_noninteger"] = s.pairwise_noninteger ? Json(*s.pairwise_noninteger) : Json(nullptr);
  j["flags"] = flags;
  return j.dump();
}

template <Scalar T>
PointSet<T> point_set_from_json(std::string_view text) {
  Json j = parse_json(text);
  PointSet<T> s = guarded([&] {
    PointSet<T> out;
    if (j.contains("mode")) {
      const auto mode = j.at("mode").get<std::string>();
      if (mode != "rational" && mode != "float") fail(ErrorCode::Parse, "mode must be \"rational\" or \"float\"");
    }
    out.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("alpha")) out.alpha = scalar_from<T>(j.at("alpha"));
    const auto& w = j.at("window");
    if (w.is_array()) {
      if (w.size() != 4) fail(ErrorCode::Parse, "window must be [xmin, ymin, xmax, ymax]");
      out.window = {w[0].get<double>(), w[1].get<double>(), w[2].get<double>(), w[3].get<double>()};
    } else {
      out.window = {w.at("xmin").get<double>(), w.at("ymin").get<double>(), w.at("xmax").get<double>(),
                    w.at("ymax").get<double>()};
    }
    for (const auto& p : j.at("points")) out.points.push_back(vec_from<T>(p));
    if (j.contains("flags")) {
      const auto& f = j.at("flags");
      if (f.contains("idf_per_generator")) {
        for (const auto& e : f.at("idf_per_generator")) {
          out.idf_per_generator.push_back({vec_from<T>(e.at("generator")), e.at("idf").get<bool>()});
        }
      }
      if (f.contains("pairwise_noninteger") && !f.at("pairwise_noninteger").is_null()) {
        out.pairwise_noninteger = f.at("pairwise_noninteger").get<bool>();
      }
    }
    return out;
  });
  s.validate();
  return s;
}

template <Scalar T>
std::string enumeration_to_json(const GoodEnumeration<T>& e) {
  Json j;
  j["order"] = e.order;
  j["unplaced"] = e.unplaced;
  Json certs = Json::array();
  for (std::size_t i = 0; i < e.certificates.size(); ++i) {
    const auto& c = e.certificates[i];
    Json normals = Json::array();
    for (const auto& a : c.normals) normals.push_back(vec_json(a));
    certs.push_back({{"position", i + 3}, {"refs", c.refs}, {"normals", normals}});
  }
  j["certificates"] = certs;
  return j.dump();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

#define LARG_INSTANTIATE(T)                                                  \
  template std::string shape_to_json(const NormShape<T>&);                   \
  template NormShape<T> shape_from_json<T>(std::string_view);                \
  template std::string point_set_to_json(const PointSet<T>&);                \
  template PointSet<T> point_set_from_json<T>(std::string_view);             \
  template std::string enumeration_to_json(const GoodEnumeration<T>&);

LARG_INSTANTIATE(double)
LARG_INSTANTIATE(Rational)

}  // namespace larg
