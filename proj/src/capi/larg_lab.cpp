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


#include "larg_lab/larg_lab.h"

#include "larg_lab/anchoring.hpp"
#include "larg_lab/experiments.hpp"
#include "larg_lab/serialize.hpp"
#include "larg_lab/stepiso.hpp"

#include <cstring>
#include <memory>
#include <sstream>
#include <variant>

#include <json.hpp>

using namespace larg;

struct larg_shape {
  std::variant<NormShape<double>, NormShape<Rational>> v;
};

struct larg_points {
  std::variant<PointSet<double>, PointSet<Rational>> v;
};

struct larg_graph {
  GeoGraph g;
};

namespace {

thread_local std::string last_error;

larg_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return LARG_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidShape:
      return LARG_ERR_INVALID_SHAPE;
    case ErrorCode::BoundaryAmbiguous:
      return LARG_ERR_BOUNDARY_AMBIGUOUS;
    case ErrorCode::NotFound:
      return LARG_ERR_NOT_FOUND;
    case ErrorCode::Inconsistent:
      return LARG_ERR_INCONSISTENT;
    case ErrorCode::Parse:
      return LARG_ERR_PARSE;
    case ErrorCode::Io:
      return LARG_ERR_IO;
  }
  return LARG_ERR_INTERNAL;
}

template <typename F>
larg_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return LARG_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return LARG_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LARG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LARG_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <Scalar T>
const NormShape<T>& shape_in(const larg_shape* s) {
  if (auto* p = std::get_if<NormShape<T>>(&s->v)) return *p;
  fail(ErrorCode::InvalidArgument, "shape and point set use different numeric modes");
}

template <Scalar T>
Vec2<T> vec_from(const nlohmann::json& j) {
  auto one = [](const nlohmann::json& x) -> T {
    if (x.is_string()) {
      Rational q = parse_rational(x.get<std::string>());
      if constexpr (is_exact_v<T>) {
        return q;
      } else {
        return to_double(q);
      }
    }
    if (x.is_number_integer()) return T(x.get<std::int64_t>());
    return T(x.get<double>());
  };
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::Parse, "expected a coordinate pair");
  return {one(j[0]), one(j[1])};
}

template <Scalar T>
Interleaving1D<T> interleaving_from(const nlohmann::json& spec, const char* key) {
  if (!spec.contains(key)) return Interleaving1D<T>::one_third_map();
  std::vector<std::pair<T, T>> pts;
  for (const auto& b : spec.at(key)) {
    auto v = vec_from<T>(b);
    pts.push_back({v.x, v.y});
  }
  return Interleaving1D<T>::from_breakpoints(std::move(pts));
}

template <Scalar T>
Line<T> line_from(const nlohmann::json& j) {
  Rational r = j.at("offset").is_string() ? parse_rational(j.at("offset").get<std::string>())
                                          : Rational(j.at("offset").get<double>());
  T offset;
  if constexpr (is_exact_v<T>) {
    offset = r;
  } else {
    offset = to_double(r);
  }
  return Line<T>(vec_from<T>(j.at("normal")), offset);
}

nlohmann::ordered_json verdict_json(const char* check, const Verdict& v) {
  nlohmann::ordered_json j;
  j["check"] = check;
  j["ok"] = v.ok;
  j["pairs_checked"] = v.pairs_checked;
  if (v.witness) {
    j["witness"] = {v.witness->first, v.witness->second};
    j["domain_distance"] = v.domain_distance;
    j["image_distance"] = v.image_distance;
    j["domain_floor"] = v.domain_floor;
    j["image_floor"] = v.image_floor;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

template <Scalar T>
std::string stepiso_check(const PointSet<T>& points, const NormShape<T>& shape, const nlohmann::json& spec,
                          const std::string& check) {
  const std::string kind = spec.value("kind", "explicit1d");
  PointMap<T> map;
  if (kind == "explicit1d") {
    map = make_explicit_1d_map(points);
  } else if (kind == "box-product") {
    Vec2<T> a1, a2;
    if (spec.contains("generators")) {
      a1 = vec_from<T>(spec.at("generators").at(0));
      a2 = vec_from<T>(spec.at("generators").at(1));
    } else {
      if (!shape.is_polygonal()) fail(ErrorCode::InvalidShape, "box-product map needs generators");
      a1 = shape.generators()[0];
      a2 = shape.generators()[1];
    }
    map = make_box_product_map(a1, a2, interleaving_from<T>(spec, "g1"), interleaving_from<T>(spec, "g2"), points);
  } else if (kind == "images") {
    std::vector<Vec2<T>> images;
    for (const auto& p : spec.at("images")) images.push_back(vec_from<T>(p));
    map.domain = points;
    map.images = std::move(images);
    map.validate();
  } else {
    fail(ErrorCode::InvalidArgument, "unknown map kind '" + kind + "'");
  }
  if (check == "step") return verdict_json("step", is_step_isometry(map, shape)).dump();
  if (check == "iso") return verdict_json("iso", is_isometry(map, shape, spec.value("tolerance", 1e-12))).dump();
  if (check == "line") {
    if (!spec.contains("line")) fail(ErrorCode::InvalidArgument, "line check needs a \"line\" entry");
    auto ell = line_from<T>(spec.at("line"));
    auto image = spec.contains("image_line") ? line_from<T>(spec.at("image_line")) : ell;
    auto r = respects_line(map, ell, image);
    nlohmann::ordered_json j;
    j["check"] = "line";
    j["ok"] = r.ok();
    j["below_kept"] = r.below_kept;
    j["above_kept"] = r.above_kept;
    j["below_witness"] = r.below_witness ? nlohmann::ordered_json(*r.below_witness) : nlohmann::ordered_json(nullptr);
    j["above_witness"] = r.above_witness ? nlohmann::ordered_json(*r.above_witness) : nlohmann::ordered_json(nullptr);
    return j.dump();
  }
  fail(ErrorCode::InvalidArgument, "check must be step, iso or line");
}

template <Scalar T>
std::string grid_csv(const PointSet<T>& base, const NormShape<T>& shape, int depth, int shift, double half_width,
                     const char* generator_json) {
  if (!shape.is_polygonal()) fail(ErrorCode::InvalidShape, "grids need a polygonal shape");
  std::vector<Vec2<T>> gens(shape.generators().begin(), shape.generators().end());
  GridWindow window;
  window.parallel_shift = shift;
  window.half_width = half_width;
  window.center = {(base.window.xmin + base.window.xmax) / 2, (base.window.ymin + base.window.ymax) / 2};
  auto family = generate_grid(base.points, gens, depth, window);
  std::optional<std::size_t> only;
  if (generator_json != nullptr) {
    auto a = vec_from<T>(nlohmann::json::parse(generator_json));
    only = family.generator_index(a);
    if (!only) fail(ErrorCode::NotFound, "generator is not a direction of the shape");
  }
  std::ostringstream out;
  out.precision(17);
  out << "level,ax,ay,offset\n";
  for (std::size_t level = 0; level < family.levels.size(); ++level) {
    for (const auto& line : family.levels[level]) {
      if (only && line.generator != *only) continue;
      const auto& a = family.generators[line.generator];
      if constexpr (is_exact_v<T>) {
        out << level << ',' << format_rational(a.x) << ',' << format_rational(a.y) << ','
            << format_rational(line.offset) << '\n';
      } else {
        out << level << ',' << a.x << ',' << a.y << ',' << line.offset << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace

extern "C" {

const char* larg_version(void) { return LARG_LAB_VERSION; }

const char* larg_status_name(larg_status status) {
  switch (status) {
    case LARG_OK:
      return "ok";
    case LARG_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case LARG_ERR_INVALID_SHAPE:
      return "invalid shape";
    case LARG_ERR_BOUNDARY_AMBIGUOUS:
      return "boundary ambiguous";
    case LARG_ERR_NOT_FOUND:
      return "not found";
    case LARG_ERR_INCONSISTENT:
      return "inconsistent";
    case LARG_ERR_PARSE:
      return "parse error";
    case LARG_ERR_IO:
      return "i/o error";
    case LARG_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* larg_last_error(void) { return last_error.c_str(); }

void larg_string_free(char* s) { std::free(s); }

larg_status larg_shape_preset(const char* name, larg_mode mode, larg_shape** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    if (mode == LARG_MODE_RATIONAL) {
      *out = new larg_shape{preset_shape<Rational>(name)};
    } else {
      *out = new larg_shape{preset_shape<double>(name)};
    }
  });
}

larg_status larg_shape_parse(const char* json, larg_mode mode, larg_shape** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    if (mode == LARG_MODE_RATIONAL) {
      *out = new larg_shape{shape_from_json<Rational>(json)};
    } else {
      *out = new larg_shape{shape_from_json<double>(json)};
    }
  });
}

larg_status larg_shape_to_json(const larg_shape* shape, char** out) {
  return guard([&] {
    need(shape, "shape");
    need(out, "out");
    *out = copy_string(std::visit([](const auto& s) { return shape_to_json(s); }, shape->v));
  });
}

larg_status larg_shape_generator_count(const larg_shape* shape, size_t* out) {
  return guard([&] {
    need(shape, "shape");
    need(out, "out");
    *out = std::visit([](const auto& s) { return s.direction_count(); }, shape->v);
  });
}

larg_status larg_shape_is_box(const larg_shape* shape, int* out) {
  return guard([&] {
    need(shape, "shape");
    need(out, "out");
    *out = std::visit([](const auto& s) { return s.is_box() ? 1 : 0; }, shape->v);
  });
}

larg_status larg_shape_distance(const larg_shape* shape, double x0, double y0, double x1, double y1, double* out) {
  return guard([&] {
    need(shape, "shape");
    need(out, "out");
    *out = std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s.norm({}))>;
          return to_double(s.distance(convert_vec<T>({x0, y0}), convert_vec<T>({x1, y1})));
        },
        shape->v);
  });
}

larg_mode larg_shape_mode(const larg_shape* shape) {
  return shape != nullptr && shape->v.index() == 1 ? LARG_MODE_RATIONAL : LARG_MODE_FLOAT;
}

void larg_shape_free(larg_shape* shape) { delete shape; }

larg_status larg_points_sample(const char* kind, larg_window window, double intensity, uint64_t seed, larg_mode mode,
                               larg_points** out) {
  return guard([&] {
    need(out, "out");
    const std::string k = kind == nullptr ? "poisson" : kind;
    const Window w{window.xmin, window.ymin, window.xmax, window.ymax};
    auto sample = [&]<Scalar T>() {
      if (k == "poisson") return sample_poisson_window<T>(w, intensity, seed);
      if (k == "product") return sample_product_window<T>(w, intensity, seed);
      fail(ErrorCode::InvalidArgument, "sampler kind must be poisson or product");
    };
    if (mode == LARG_MODE_RATIONAL) {
      *out = new larg_points{sample.operator()<Rational>()};
    } else {
      *out = new larg_points{sample.operator()<double>()};
    }
  });
}

larg_status larg_points_make_idf(const larg_points* in, const larg_shape* shape, int trials, uint64_t seed,
                                 larg_points** out) {
  return guard([&] {
    need(in, "points");
    need(shape, "shape");
    need(out, "out");
    std::visit(
        [&](const auto& pts) {
          using T = std::decay_t<decltype(pts.alpha)>;
          const auto& s = shape_in<T>(shape);
          if (!s.is_polygonal()) fail(ErrorCode::InvalidShape, "idf rescaling needs a polygonal shape");
          auto r = rescale_to_idf<T>(pts, s.generators(), trials, seed);
          annotate_flags(r.points, s);
          *out = new larg_points{std::move(r.points)};
        },
        in->v);
  });
}

larg_status larg_points_parse(const char* json, larg_mode mode, larg_points** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    if (mode == LARG_MODE_RATIONAL) {
      *out = new larg_points{point_set_from_json<Rational>(json)};
    } else {
      *out = new larg_points{point_set_from_json<double>(json)};
    }
  });
}

larg_status larg_points_to_json(const larg_points* points, char** out) {
  return guard([&] {
    need(points, "points");
    need(out, "out");
    *out = copy_string(std::visit([](const auto& p) { return point_set_to_json(p); }, points->v));
  });
}

larg_status larg_points_count(const larg_points* points, size_t* out) {
  return guard([&] {
    need(points, "points");
    need(out, "out");
    *out = std::visit([](const auto& p) { return p.size(); }, points->v);
  });
}

larg_status larg_points_get(const larg_points* points, size_t index, double* x, double* y) {
  return guard([&] {
    need(points, "points");
    need(x, "x");
    need(y, "y");
    std::visit(
        [&](const auto& p) {
          if (index >= p.size()) fail(ErrorCode::InvalidArgument, "point index out of range");
          *x = to_double(p[index].x);
          *y = to_double(p[index].y);
        },
        points->v);
  });
}

larg_mode larg_points_mode(const larg_points* points) {
  return points != nullptr && points->v.index() == 1 ? LARG_MODE_RATIONAL : LARG_MODE_FLOAT;
}

void larg_points_free(larg_points* points) { delete points; }

larg_status larg_graph_sample(const larg_points* points, const larg_shape* shape, double delta, double p,
                              uint64_t seed, const char* keying, larg_graph** out) {
  return guard([&] {
    need(points, "points");
    need(shape, "shape");
    need(out, "out");
    const EdgeKeying k = keying == nullptr ? EdgeKeying::PairIndex : parse_keying(keying);
    std::visit(
        [&](const auto& pts) {
          using T = std::decay_t<decltype(pts.alpha)>;
          *out = new larg_graph{sample_larg(pts, shape_in<T>(shape), delta, p, seed, k)};
        },
        points->v);
  });
}

larg_status larg_graph_parse(const char* text, larg_graph** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new larg_graph{read_graph(text)};
  });
}

larg_status larg_graph_to_text(const larg_graph* graph, char** out) {
  return guard([&] {
    need(graph, "graph");
    need(out, "out");
    *out = copy_string(write_graph(graph->g));
  });
}

larg_status larg_graph_vertex_count(const larg_graph* graph, size_t* out) {
  return guard([&] {
    need(graph, "graph");
    need(out, "out");
    *out = graph->g.n;
  });
}

larg_status larg_graph_edge_count(const larg_graph* graph, size_t* out) {
  return guard([&] {
    need(graph, "graph");
    need(out, "out");
    *out = graph->g.edge_count();
  });
}

larg_status larg_graph_adjacent(const larg_graph* graph, size_t u, size_t v, int* out) {
  return guard([&] {
    need(graph, "graph");
    need(out, "out");
    *out = graph->g.adjacent(u, v) ? 1 : 0;
  });
}

larg_status larg_graph_range_violations(const larg_graph* graph, const larg_points* points, const larg_shape* shape,
                                        size_t* out) {
  return guard([&] {
    need(graph, "graph");
    need(points, "points");
    need(shape, "shape");
    need(out, "out");
    std::visit(
        [&](const auto& pts) {
          using T = std::decay_t<decltype(pts.alpha)>;
          *out = range_violations(graph->g, pts, shape_in<T>(shape)).size();
        },
        points->v);
  });
}

void larg_graph_free(larg_graph* graph) { delete graph; }

larg_status larg_stepiso_check(const larg_points* points, const larg_shape* shape, const char* map_json,
                               const char* check, char** verdict_json) {
  return guard([&] {
    need(points, "points");
    need(shape, "shape");
    need(verdict_json, "verdict_json");
    const auto spec = map_json == nullptr ? nlohmann::json::object() : nlohmann::json::parse(map_json);
    const std::string c = check == nullptr ? "step" : check;
    *verdict_json = copy_string(std::visit(
        [&](const auto& pts) {
          using T = std::decay_t<decltype(pts.alpha)>;
          return stepiso_check(pts, shape_in<T>(shape), spec, c);
        },
        points->v));
  });
}

larg_status larg_grid_csv(const larg_points* base, const larg_shape* shape, int depth, int parallel_shift,
                          double half_width, const char* generator_json, char** csv) {
  return guard([&] {
    need(base, "base");
    need(shape, "shape");
    need(csv, "csv");
    *csv = copy_string(std::visit(
        [&](const auto& pts) {
          using T = std::decay_t<decltype(pts.alpha)>;
          return grid_csv(pts, shape_in<T>(shape), depth, parallel_shift, half_width, generator_json);
        },
        base->v));
  });
}

larg_status larg_enumerate(const larg_points* points, const larg_shape* shape, size_t max_points, char** json) {
  return guard([&] {
    need(points, "points");
    need(shape, "shape");
    need(json, "json");
    *json = copy_string(std::visit(
        [&](const auto& pts) {
          using T = std::decay_t<decltype(pts.alpha)>;
          EnumerationOptions options;
          options.max_points = max_points;
          return enumeration_to_json(good_enumeration(pts, shape_in<T>(shape), options));
        },
        points->v));
  });
}

larg_status larg_experiment_decay(const char* config_json, char** csv) {
  return guard([&] {
    need(config_json, "config_json");
    need(csv, "csv");
    *csv = copy_string(rows_to_csv(run_decay_experiment(parse_config(config_json))));
  });
}

larg_status larg_experiment_box_demo(const char* config_json, char** csv, char** report_json) {
  return guard([&] {
    need(config_json, "config_json");
    need(csv, "csv");
    const auto cfg = parse_config(config_json);
    const auto report = box_isomorphism_demo(cfg);
    std::string table = rows_to_csv(report.box_rows);
    std::string json = box_demo_json(report, cfg);
    *csv = copy_string(table);
    if (report_json != nullptr) *report_json = copy_string(json);
  });
}

}  // extern "C"
