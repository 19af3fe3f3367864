/* SPDX-License-Identifier: Apache-2.0
 *
 * mawi - simulation and optimization toolkit for movable-antenna wireless systems
 * Copyright (C) 2026 the mawi authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file
 * except in compliance with the License. You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software distributed under the
 * License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND,
 * either express or implied. See the License for the specific language governing permissions
 * and limitations under the License.
 */

/* C interface of the mawi shared library. All functions returning mawi_status
 * set a thread-local error message readable through mawi_last_error(); output
 * parameters are written only on MAWI_OK. Strings returned through char**
 * outputs are heap-allocated and must be released with mawi_string_free(). */

#ifndef MAWI_H
#define MAWI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C"
{
#endif

typedef enum mawi_status
{
    MAWI_OK = 0,
    MAWI_ERR_INTERNAL = 1,  /* unexpected failure */
    MAWI_ERR_CONFIG = 2,    /* invalid parameters or malformed configuration */
    MAWI_ERR_NUMERICAL = 3, /* ill-conditioned or infeasible problem */
    MAWI_ERR_IO = 4         /* file system or serialization failure */
} mawi_status;

/* Toolkit version string, e.g. "0.1.0". Never NULL. */
const char *mawi_version(void);

/* Message of the last failure on the calling thread; empty string if none. */
const char *mawi_last_error(void);

void mawi_string_free(char *text);

/* ------------------------------------------------------------------ experiments
 *
 * An experiment is a validated, versioned configuration of one toolkit run
 * (kinds: channel-demo, estimate, optimize, wsr-sweep, nmse-sweep, crb-sweep).
 * Running writes a CSV plus a metadata JSON; identical configuration and seed
 * produce byte-identical output at any thread count. */

typedef struct mawi_experiment mawi_experiment;

/* Fully populated default configuration for a kind, as pretty-printed JSON. */
mawi_status mawi_experiment_default_config(const char *kind, char **json_out);

/* New experiment from the defaults of a kind. */
mawi_status mawi_experiment_create(const char *kind, mawi_experiment **out);

/* New experiment from a JSON configuration file; unknown keys are rejected. */
mawi_status mawi_experiment_load(const char *path, mawi_experiment **out);

/* New experiment from in-memory JSON text. */
mawi_status mawi_experiment_from_json(const char *json_text, mawi_experiment **out);

mawi_status mawi_experiment_set_seed(mawi_experiment *experiment, uint64_t seed);
mawi_status mawi_experiment_set_reps(mawi_experiment *experiment, size_t reps);
mawi_status mawi_experiment_set_out(mawi_experiment *experiment, const char *path);
mawi_status mawi_experiment_set_threads(mawi_experiment *experiment, size_t threads);
mawi_status mawi_experiment_set_quiet(mawi_experiment *experiment, int quiet);

/* Kind string owned by the handle; NULL only if experiment is NULL. */
const char *mawi_experiment_kind(const mawi_experiment *experiment);

/* Effective configuration (defaults merged with overrides) as JSON text. */
mawi_status mawi_experiment_config(const mawi_experiment *experiment, char **json_out);

/* Runs the experiment and writes its output files. metadata_json_out may be
 * NULL; otherwise it receives the run metadata (outputs, row count, digest). */
mawi_status mawi_experiment_run(const mawi_experiment *experiment, char **metadata_json_out);

void mawi_experiment_free(mawi_experiment *experiment);

/* -------------------------------------------------------------------- channels
 *
 * A pathset is a frozen multipath propagation geometry: transmit/receive path
 * angles, the path-coupling gain matrix, and the carrier wavelength. The
 * channel between antenna positions follows from it deterministically. */

typedef struct mawi_pathset mawi_pathset;

enum
{
    MAWI_PRM_FULL = 0,    /* dense path coupling */
    MAWI_PRM_DIAGONAL = 1,/* one-to-one path pairing; needs l_tx == l_rx */
    MAWI_PRM_LOS = 2      /* single line-of-sight path; needs l_tx == l_rx == 1 */
};

mawi_status mawi_pathset_random(size_t l_tx, size_t l_rx, int prm_style, double gain_variance,
                                double wavelength, uint64_t seed, mawi_pathset **out);

mawi_status mawi_pathset_load(const char *path, mawi_pathset **out);
mawi_status mawi_pathset_save(const mawi_pathset *pathset, const char *path);

/* Complex channel gain between a transmit antenna at tx_xyz and a receive
 * antenna at rx_xyz (meters, arrays of length 3). */
mawi_status mawi_pathset_response(const mawi_pathset *pathset, const double tx_xyz[3],
                                  const double rx_xyz[3], double *re, double *im);

void mawi_pathset_free(mawi_pathset *pathset);

/* --------------------------------------------------------------------- sensing */

enum
{
    MAWI_AXIS_X = 0,
    MAWI_AXIS_Y = 1,
    MAWI_AXIS_Z = 2
};

/* Single-target direction-finding Cramer-Rao bounds for an array whose element
 * n sits at positions_xyz[3n .. 3n+2] (meters). crb_spatial is the bound on the
 * direction cosine along `axis`; crb_angle the bound on the matching angle
 * (infinite at parameterization singularities). Either output may be NULL. */
mawi_status mawi_crb_single_target(const double *positions_xyz, size_t n_elements,
                                   double wavelength, double elevation_rad, double azimuth_rad,
                                   double snr, size_t snapshots, int axis, double *crb_spatial,
                                   double *crb_angle);

#ifdef __cplusplus
}
#endif

#endif /* MAWI_H */
