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


/* C interface to larg-lab. Objects are opaque handles released with their
 * matching _free function. Functions return LARG_OK or an error status; the
 * message for the most recent failure on the calling thread is available from
 * larg_last_error(). Strings returned through char** are owned by the caller
 * and released with larg_string_free(). */

#ifndef LARG_LAB_H
#define LARG_LAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LARG_API __declspec(dllexport)
#else
#define LARG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define LARG_LAB_VERSION "0.1.0"

typedef enum larg_status {
  LARG_OK = 0,
  LARG_ERR_INVALID_ARGUMENT = 1,
  LARG_ERR_INVALID_SHAPE = 2,
  LARG_ERR_BOUNDARY_AMBIGUOUS = 3,
  LARG_ERR_NOT_FOUND = 4,
  LARG_ERR_INCONSISTENT = 5,
  LARG_ERR_PARSE = 6,
  LARG_ERR_IO = 7,
  LARG_ERR_INTERNAL = 8
} larg_status;

typedef enum larg_mode { LARG_MODE_FLOAT = 0, LARG_MODE_RATIONAL = 1 } larg_mode;

typedef struct larg_window {
  double xmin, ymin, xmax, ymax;
} larg_window;

typedef struct larg_shape larg_shape;
typedef struct larg_points larg_points;
typedef struct larg_graph larg_graph;

LARG_API const char* larg_version(void);
LARG_API const char* larg_status_name(larg_status status);
LARG_API const char* larg_last_error(void);
LARG_API void larg_string_free(char* s);

/* Shapes: presets "square", "diamond", "parallelogram", "hexagon",
 * "lattice-hexagon", "l2", "l4"; JSON as in shape files. */
LARG_API larg_status larg_shape_preset(const char* name, larg_mode mode, larg_shape** out);
LARG_API larg_status larg_shape_parse(const char* json, larg_mode mode, larg_shape** out);
LARG_API larg_status larg_shape_to_json(const larg_shape* shape, char** out);
LARG_API larg_status larg_shape_generator_count(const larg_shape* shape, size_t* out);
LARG_API larg_status larg_shape_is_box(const larg_shape* shape, int* out);
LARG_API larg_status larg_shape_distance(const larg_shape* shape, double x0, double y0, double x1, double y1,
                                         double* out);
LARG_API larg_mode larg_shape_mode(const larg_shape* shape);
LARG_API void larg_shape_free(larg_shape* shape);

/* Point sets. kind is "poisson" or "product". */
LARG_API larg_status larg_points_sample(const char* kind, larg_window window, double intensity, uint64_t seed,
                                        larg_mode mode, larg_points** out);
/* Rescales so that every generator projection of the shape is idf, and
 * records the flags. */
LARG_API larg_status larg_points_make_idf(const larg_points* in, const larg_shape* shape, int trials, uint64_t seed,
                                          larg_points** out);
LARG_API larg_status larg_points_parse(const char* json, larg_mode mode, larg_points** out);
LARG_API larg_status larg_points_to_json(const larg_points* points, char** out);
LARG_API larg_status larg_points_count(const larg_points* points, size_t* out);
LARG_API larg_status larg_points_get(const larg_points* points, size_t index, double* x, double* y);
LARG_API larg_mode larg_points_mode(const larg_points* points);
LARG_API void larg_points_free(larg_points* points);

/* Graphs. keying is "pair-index" (default when NULL) or "difference-vector". */
LARG_API larg_status larg_graph_sample(const larg_points* points, const larg_shape* shape, double delta, double p,
                                       uint64_t seed, const char* keying, larg_graph** out);
LARG_API larg_status larg_graph_parse(const char* text, larg_graph** out);
LARG_API larg_status larg_graph_to_text(const larg_graph* graph, char** out);
LARG_API larg_status larg_graph_vertex_count(const larg_graph* graph, size_t* out);
LARG_API larg_status larg_graph_edge_count(const larg_graph* graph, size_t* out);
LARG_API larg_status larg_graph_adjacent(const larg_graph* graph, size_t u, size_t v, int* out);
/* Number of edges joining points at distance >= delta. */
LARG_API larg_status larg_graph_range_violations(const larg_graph* graph, const larg_points* points,
                                                 const larg_shape* shape, size_t* out);
LARG_API void larg_graph_free(larg_graph* graph);

/* Step-isometry checks. map_json:
 *   {"kind": "explicit1d"}
 *   {"kind": "box-product", "g1": [[0,0],["1/2","1/3"],[1,1]], "g2": ..., "generators": [a1, a2]}
 *   {"kind": "images", "images": [[x, y], ...]}
 * with "line": {"normal": [ax, ay], "offset": r} and optional "image_line"
 * for check "line". check is "step", "iso" or "line". The verdict is JSON. */
LARG_API larg_status larg_stepiso_check(const larg_points* points, const larg_shape* shape, const char* map_json,
                                        const char* check, char** verdict_json);

/* Grid family from base points, CSV rows level,ax,ay,offset. A non-NULL
 * generator_json ("[ax, ay]") keeps lines with that normal only. */
LARG_API larg_status larg_grid_csv(const larg_points* base, const larg_shape* shape, int depth, int parallel_shift,
                                   double half_width, const char* generator_json, char** csv);

/* Good enumeration as JSON {order, unplaced, certificates}. max_points 0: all. */
LARG_API larg_status larg_enumerate(const larg_points* points, const larg_shape* shape, size_t max_points,
                                    char** json);

/* Experiments from a JSON config. */
LARG_API larg_status larg_experiment_decay(const char* config_json, char** csv);
LARG_API larg_status larg_experiment_box_demo(const char* config_json, char** csv, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* LARG_LAB_H */
