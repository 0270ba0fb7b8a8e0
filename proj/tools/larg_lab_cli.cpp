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


// larg-lab command line front end over the C interface.

#include "larg_lab/larg_lab.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(larg_status s) {
  if (s != LARG_OK) throw Failure(std::string(larg_status_name(s)) + ": " + larg_last_error());
}

struct Text {
  char* p = nullptr;
  ~Text() { larg_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using Shape = std::unique_ptr<larg_shape, decltype(&larg_shape_free)>;
using Points = std::unique_ptr<larg_points, decltype(&larg_points_free)>;
using Graph = std::unique_ptr<larg_graph, decltype(&larg_graph_free)>;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure("cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

larg_mode parse_mode(const std::string& m) {
  if (m == "rational") return LARG_MODE_RATIONAL;
  if (m == "float") return LARG_MODE_FLOAT;
  throw Failure("mode must be rational or float");
}

// A shape argument is a file path or a preset name.
Shape load_shape(const std::string& arg, larg_mode mode) {
  larg_shape* s = nullptr;
  std::ifstream probe(arg);
  if (probe) {
    check(larg_shape_parse(slurp(arg).c_str(), mode, &s));
  } else {
    check(larg_shape_preset(arg.c_str(), mode, &s));
  }
  return Shape(s, larg_shape_free);
}

Points load_points(const std::string& path, const std::string& mode_override) {
  const std::string text = slurp(path);
  larg_mode mode = LARG_MODE_FLOAT;
  if (!mode_override.empty()) {
    mode = parse_mode(mode_override);
  } else {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_object() && j.value("mode", "float") == "rational") mode = LARG_MODE_RATIONAL;
  }
  larg_points* p = nullptr;
  check(larg_points_parse(text.c_str(), mode, &p));
  return Points(p, larg_points_free);
}

std::vector<double> parse_list(const std::string& s, std::size_t count, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.size() != count) throw Failure(std::string(what) + " needs " + std::to_string(count) + " comma-separated values");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random geometric graphs over norm-derived metrics"};
  app.set_version_flag("--version", std::string("larg-lab ") + larg_version());
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "Sample a finite window of a dense point set");
  std::string s_window = "0,0,1,1", s_kind = "poisson", s_mode = "float", s_idf, s_out;
  double s_intensity = 100;
  std::uint64_t s_seed = 1;
  int s_idf_trials = 64;
  sample->add_option("--window", s_window, "xmin,ymin,xmax,ymax")->capture_default_str();
  sample->add_option("--intensity", s_intensity, "Points per unit area (per unit length for product)")
      ->capture_default_str();
  sample->add_option("--seed", s_seed)->capture_default_str();
  sample->add_option("--kind", s_kind, "poisson or product")->capture_default_str();
  sample->add_option("--mode", s_mode, "float or rational")->capture_default_str();
  sample->add_option("--idf-generators", s_idf, "Shape (file or preset) whose generator projections must be idf");
  sample->add_option("--idf-trials", s_idf_trials)->capture_default_str();
  sample->add_option("--out", s_out, "Output file (default stdout)");

  // graph
  auto* graph = app.add_subcommand("graph", "Sample a LARG graph on a point set");
  std::string g_points, g_shape = "hexagon", g_keying = "pair-index", g_out, g_mode;
  double g_delta = 1, g_p = 0.5;
  std::uint64_t g_seed = 1;
  graph->add_option("--points", g_points)->required();
  graph->add_option("--shape", g_shape, "Shape file or preset")->capture_default_str();
  graph->add_option("--delta", g_delta)->capture_default_str();
  graph->add_option("--p", g_p)->capture_default_str();
  graph->add_option("--seed", g_seed)->capture_default_str();
  graph->add_option("--keying", g_keying, "pair-index or difference-vector")->capture_default_str();
  graph->add_option("--mode", g_mode, "Override the point file mode");
  graph->add_option("--out", g_out);

  // stepiso
  auto* stepiso = app.add_subcommand("stepiso", "Check a map for truncated-distance preservation");
  std::string t_map = "explicit1d", t_points, t_shape = "square", t_check = "step", t_mode, t_out, t_line;
  std::string t_line_offset = "0";
  stepiso->add_option("--map", t_map, "explicit1d, box-product or a map JSON file")->capture_default_str();
  stepiso->add_option("--points", t_points)->required();
  stepiso->add_option("--shape", t_shape)->capture_default_str();
  stepiso->add_option("--check", t_check, "step, iso or line")->capture_default_str();
  stepiso->add_option("--line-normal", t_line, "ax,ay for --check line");
  stepiso->add_option("--line-offset", t_line_offset, "Offset r of the line a . x = r")->capture_default_str();
  stepiso->add_option("--mode", t_mode);
  stepiso->add_option("--out", t_out);

  // grid
  auto* grid = app.add_subcommand("grid", "Generate the line family of a base set");
  std::string d_base, d_shape = "lattice-hexagon", d_emit, d_mode, d_out;
  int d_depth = 2, d_window = 3;
  double d_half = -1;
  grid->add_option("--base", d_base, "Point file of base points")->required();
  grid->add_option("--shape", d_shape)->capture_default_str();
  grid->add_option("--depth", d_depth)->capture_default_str();
  grid->add_option("--window", d_window, "Integer-parallel shift bound W")->capture_default_str();
  grid->add_option("--half-width", d_half, "Half width of the intersection box (default W)");
  grid->add_option("--emit-offsets", d_emit, "Only lines with normal ax,ay");
  grid->add_option("--mode", d_mode);
  grid->add_option("--out", d_out);

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Good enumeration of a point set");
  std::string e_points, e_shape = "hexagon", e_mode, e_out;
  std::size_t e_max = 0;
  enumerate->add_option("--points", e_points)->required();
  enumerate->add_option("--shape", e_shape)->capture_default_str();
  enumerate->add_option("--max", e_max, "Stop after this many points (0: all)")->capture_default_str();
  enumerate->add_option("--mode", e_mode);
  enumerate->add_option("--out", e_out);

  // shape
  auto* shape = app.add_subcommand("shape", "Print a shape file for a preset");
  std::string h_name = "hexagon", h_mode = "rational", h_out;
  shape->add_option("name", h_name)->capture_default_str();
  shape->add_option("--mode", h_mode)->capture_default_str();
  shape->add_option("--out", h_out);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiments");
  std::string x_kind, x_config, x_out, x_report;
  experiment->add_option("kind", x_kind, "decay or box-demo")->required()->check(CLI::IsMember({"decay", "box-demo"}));
  experiment->add_option("--config", x_config, "Config JSON file (defaults when omitted)");
  experiment->add_option("--out", x_out, "CSV output (default stdout)");
  experiment->add_option("--report", x_report, "box-demo: JSON report with the hexagon comparison");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      auto w = parse_list(s_window, 4, "--window");
      larg_points* raw = nullptr;
      const larg_mode mode = parse_mode(s_mode);
      check(larg_points_sample(s_kind.c_str(), {w[0], w[1], w[2], w[3]}, s_intensity, s_seed, mode, &raw));
      Points pts(raw, larg_points_free);
      if (!s_idf.empty()) {
        auto gens = load_shape(s_idf, mode);
        larg_points* rescaled = nullptr;
        check(larg_points_make_idf(pts.get(), gens.get(), s_idf_trials, s_seed, &rescaled));
        pts.reset(rescaled);
      }
      Text t;
      check(larg_points_to_json(pts.get(), &t.p));
      emit(s_out, t.str());
    } else if (*graph) {
      auto pts = load_points(g_points, g_mode);
      auto sh = load_shape(g_shape, larg_points_mode(pts.get()));
      larg_graph* raw = nullptr;
      check(larg_graph_sample(pts.get(), sh.get(), g_delta, g_p, g_seed, g_keying.c_str(), &raw));
      Graph g(raw, larg_graph_free);
      Text t;
      check(larg_graph_to_text(g.get(), &t.p));
      emit(g_out, t.str());
    } else if (*stepiso) {
      auto pts = load_points(t_points, t_mode);
      auto sh = load_shape(t_shape, larg_points_mode(pts.get()));
      nlohmann::json spec;
      if (t_map == "explicit1d" || t_map == "box-product") {
        spec["kind"] = t_map;
      } else {
        spec = nlohmann::json::parse(slurp(t_map));
        if (spec.is_array()) spec = {{"kind", "images"}, {"images", spec}};
      }
      if (!t_line.empty()) {
        auto a = parse_list(t_line, 2, "--line-normal");
        spec["line"] = {{"normal", {a[0], a[1]}}, {"offset", t_line_offset}};
      }
      Text t;
      check(larg_stepiso_check(pts.get(), sh.get(), spec.dump().c_str(), t_check.c_str(), &t.p));
      emit(t_out, t.str());
    } else if (*grid) {
      auto pts = load_points(d_base, d_mode);
      auto sh = load_shape(d_shape, larg_points_mode(pts.get()));
      std::string gen;
      if (!d_emit.empty()) {
        auto a = parse_list(d_emit, 2, "--emit-offsets");
        gen = nlohmann::json::array({a[0], a[1]}).dump();
      }
      Text t;
      check(larg_grid_csv(pts.get(), sh.get(), d_depth, d_window, d_half < 0 ? d_window : d_half,
                          gen.empty() ? nullptr : gen.c_str(), &t.p));
      emit(d_out, t.str());
    } else if (*enumerate) {
      auto pts = load_points(e_points, e_mode);
      auto sh = load_shape(e_shape, larg_points_mode(pts.get()));
      Text t;
      check(larg_enumerate(pts.get(), sh.get(), e_max, &t.p));
      emit(e_out, t.str());
    } else if (*shape) {
      auto sh = load_shape(h_name, parse_mode(h_mode));
      Text t;
      check(larg_shape_to_json(sh.get(), &t.p));
      emit(h_out, t.str());
    } else if (*experiment) {
      const std::string cfg = x_config.empty() ? "{}" : slurp(x_config);
      Text csv, report;
      if (x_kind == "decay") {
        check(larg_experiment_decay(cfg.c_str(), &csv.p));
      } else {
        check(larg_experiment_box_demo(cfg.c_str(), &csv.p, &report.p));
        if (!x_report.empty()) emit(x_report, report.str());
      }
      emit(x_out, csv.str());
    }
  } catch (const Failure& e) {
    std::cerr << "larg-lab: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "larg-lab: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
