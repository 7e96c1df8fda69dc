/* Copyright 2026 The goodrot authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

/* C interface to the goodrot library.
 *
 * goodrot finds pairs of machine-exact rotation constants
 * c = x * 2^-p, s = y * 2^-p whose integer defect x^2 + y^2 - 2^(2p) is
 * tiny, so that iterating the rotation (X, Y) -> (cX - sY, sX + cY) has no
 * measurable systematic radius drift. The library also ships the numerical
 * harnesses that demonstrate the drift behaviour, including a symplectic
 * orbit integrator in a rotating frame.
 *
 * Every function that can fail returns gr_status; a human-readable message
 * for the most recent failure on the calling thread is available from
 * gr_last_error(). Handles are opaque and must be released with their
 * matching *_free function.
 */

#ifndef GOODROT_GOODROT_H_
#define GOODROT_GOODROT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GR_API __declspec(dllexport)
#else
#define GR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gr_status {
  GR_OK = 0,
  GR_ERR_ARGS = 2,     /* malformed or out-of-range arguments */
  GR_ERR_REFUSED = 3,  /* well-formed but intractable request */
  GR_ERR_NUMERIC = 4,  /* numeric failure (overflow, non-convergence, ...) */
  GR_ERR_IO = 5        /* filesystem failure */
} gr_status;

GR_API const char* gr_version(void);

/* Message describing the most recent failure on this thread. */
GR_API const char* gr_last_error(void);

/* ------------------------------------------------------------------ */
/* Exact grid constants                                                */

/* c = x * 2^-p and s = y * 2^-p, both exact (error if conversion would
 * round, e.g. more than 53 significant bits). */
GR_API gr_status gr_to_sin_cos(int64_t x, int64_t y, uint32_t p, double* c,
                               double* s);

/* k = x^2 + y^2 - 2^(2p), exact. GR_ERR_NUMERIC when k overflows int64. */
GR_API gr_status gr_defect_i64(int64_t x, int64_t y, uint32_t p, int64_t* k);

/* atan2(y, x); display metadata only. Rejects the origin. */
GR_API gr_status gr_theta_of(int64_t x, int64_t y, double* theta);

/* Renders the constants as source text. Formats: "generic", "hex",
 * "rational". */
GR_API gr_status gr_emit_constants(int64_t x, int64_t y, uint32_t p,
                                   const char* format, char* buf,
                                   size_t buflen);

/* ------------------------------------------------------------------ */
/* Solution tables (brute-force scan and 2^(2n)+1 family catalogs)     */

typedef struct gr_table gr_table;

/* All octant lattice points with |x^2 + y^2 - 2^(2p)| <= k_max, sorted by
 * angle. Scans with p > 34 are refused unless force is nonzero.
 * workers = 0 picks a thread count automatically; the result does not
 * depend on it. */
GR_API gr_status gr_scan(uint32_t p, int64_t k_max, int force,
                         uint32_t workers, gr_table** out);

/* Octant catalog of x^2 + y^2 = 2^(2n) + 1 solutions for mantissa width p.
 * Rows store the unscaled integers (<= 2^n); the width-p numerators are
 * x * 2^(p-n), y * 2^(p-n), with defect exactly 2^(2(p-n)). */
GR_API gr_status gr_family(uint32_t n, uint32_t p, gr_table** out);

GR_API void gr_table_free(gr_table* table);
GR_API size_t gr_table_size(const gr_table* table);

/* Row accessors. For scan tables n == p and (x, y) are width-p integers. */
GR_API gr_status gr_table_row(const gr_table* table, size_t index, int64_t* x,
                              int64_t* y, uint32_t* p, uint32_t* n,
                              double* theta);
GR_API gr_status gr_table_defect_i64(const gr_table* table, size_t index,
                                     int64_t* k);
/* Exact decimal defect, for values beyond int64. */
GR_API gr_status gr_table_defect_str(const gr_table* table, size_t index,
                                     char* buf, size_t buflen);

/* Entry nearest to theta_target; ties broken by smaller |k|, then smaller
 * y. GR_ERR_NUMERIC on an empty table. */
GR_API gr_status gr_table_nearest(const gr_table* table, double theta_target,
                                  size_t* index);

/* Largest angular gap between consecutive solutions over the full circle
 * (family tables only). */
GR_API gr_status gr_table_max_gap(const gr_table* table, double* gap);

GR_API gr_status gr_table_write_csv(const gr_table* table, const char* path);

/* ------------------------------------------------------------------ */
/* Rotation drift simulation                                           */

typedef enum gr_rotation_source {
  GR_ROTATION_GRID = 0,       /* exact dyadics from a lattice point */
  GR_ROTATION_DYADIC = 1,     /* theta = j / 512, c and s rounded */
  GR_ROTATION_PI_FRACTION = 2 /* theta = j pi / 2000, c and s rounded */
} gr_rotation_source;

typedef struct gr_rotation {
  int source;  /* gr_rotation_source */
  int64_t x;   /* GR_ROTATION_GRID */
  int64_t y;
  uint32_t p;
  int32_t j;   /* GR_ROTATION_DYADIC / GR_ROTATION_PI_FRACTION */
  int single_precision; /* nonzero: emulate 24-bit arithmetic */
} gr_rotation;

typedef struct gr_drift gr_drift;

/* Iterates the rotation from `trials` seeded random unit-circle starts,
 * recording mean and standard deviation of |R^2/R0^2 - 1| at geometric
 * checkpoints. Bit-reproducible for fixed seed, any worker count. */
GR_API gr_status gr_drift_run(const gr_rotation* rotation, uint64_t steps,
                              uint32_t trials, uint64_t seed, uint32_t workers,
                              gr_drift** out);
GR_API void gr_drift_free(gr_drift* drift);
GR_API size_t gr_drift_size(const gr_drift* drift);
GR_API gr_status gr_drift_point(const gr_drift* drift, size_t index,
                                uint64_t* step, double* mean_err,
                                double* std_err);

/* Regime classification: "linear_drift", "random_walk_dominated" or
 * "periodic_lock". fitted_rate is the per-step linear rate over the final
 * decade; predicted_rate is the exact |c^2 + s^2 - 1|. period is -1 when
 * no exact cycle was found. */
GR_API gr_status gr_drift_regime(const gr_drift* drift, char* name_buf,
                                 size_t name_buflen, double* fitted_rate,
                                 double* predicted_rate, int64_t* period);

GR_API gr_status gr_drift_write_csv(const gr_drift* drift, const char* path);
GR_API gr_status gr_drift_write_regime_json(const gr_drift* drift,
                                            const char* path);

/* Smallest exact cycle length <= max_period of the map from (x0, y0),
 * after any transient; -1 when none is found. */
GR_API gr_status gr_detect_cycle(const gr_rotation* rotation, double x0,
                                 double y0, uint64_t max_period,
                                 int64_t* period);

/* Closed-form roundoff growth curves 2^-p t, 2^-p sqrt(t), 2^-2p t,
 * 2^-2p k t sampled log-uniformly up to t_max, written as CSV. */
GR_API gr_status gr_error_curves_write_csv(uint32_t p, int64_t k,
                                           uint64_t t_max, const char* path);

/* ------------------------------------------------------------------ */
/* Rotating-frame orbit integration                                    */

typedef struct gr_orbit_spec {
  double mu;           /* gravitational parameter */
  double a;            /* initial semi-major axis */
  double e;            /* initial eccentricity (start at perihelion) */
  double inc;          /* inclination, radians */
  double tau;          /* time step; frame rate omega = theta / tau */
  double j_oblateness; /* perturbation strength; 0 disables kicks */
  gr_rotation rotation; /* per-step rotation (GR_ROTATION_GRID) */
  double raw_theta;    /* used instead when use_raw_theta is nonzero */
  int use_raw_theta;
} gr_orbit_spec;

typedef struct gr_orbit gr_orbit;

/* Runs `steps` kick-drift-kick steps, block-averaging |Delta E / E0| every
 * `block` steps. */
GR_API gr_status gr_orbit_run(const gr_orbit_spec* spec, uint64_t steps,
                              uint64_t block, gr_orbit** out);
GR_API void gr_orbit_free(gr_orbit* orbit);
GR_API size_t gr_orbit_blocks(const gr_orbit* orbit);
GR_API gr_status gr_orbit_block(const gr_orbit* orbit, size_t index,
                                uint64_t* block_index, double* mean_err);
/* Least-squares slope of block means against step count. */
GR_API gr_status gr_orbit_slope(const gr_orbit* orbit, double* slope);
GR_API gr_status gr_orbit_write_csv(const gr_orbit* orbit, const char* path);

/* ------------------------------------------------------------------ */
/* Reproducibility helpers                                             */

/* FNV-1a (64-bit) checksum of a file's bytes. */
GR_API gr_status gr_checksum_file(const char* path, uint64_t* checksum);

/* Atomic text write (temporary file + rename). */
GR_API gr_status gr_write_text_file(const char* path, const char* content);

#ifdef __cplusplus
}
#endif

#endif /* GOODROT_GOODROT_H_ */
