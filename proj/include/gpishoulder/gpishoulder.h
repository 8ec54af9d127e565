// Copyright 2026 The gpishoulder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the shoulder GPI simulation library. */

#ifndef GPISHOULDER_H
#define GPISHOULDER_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(GPIS_BUILDING_LIBRARY)
#define GPIS_API __declspec(dllexport)
#else
#define GPIS_API __declspec(dllimport)
#endif
#else
#define GPIS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gpis_status {
  GPIS_OK = 0,
  GPIS_E_INVALID_ARGUMENT = 1,
  GPIS_E_NON_FINITE = 2,
  GPIS_E_MARGINAL_PLANT = 3,
  GPIS_E_UNSTABLE_COMPENSATOR = 4,
  GPIS_E_UNREACHABLE = 5,
  GPIS_E_SINGULAR = 6,
  GPIS_E_INSUFFICIENT_EXCITATION = 7,
  GPIS_E_TUSTIN_SINGULARITY = 8,
  GPIS_E_UNSTABLE_MODEL = 9,
  GPIS_E_UNDEFINED_FIT = 10,
  GPIS_E_IO = 11,
  GPIS_E_PARSE = 12,
  GPIS_E_INTERNAL = 99
} gpis_status;

/* Message for the last failed call on this thread; "" after a success. */
GPIS_API const char* gpis_last_error(void);
GPIS_API const char* gpis_status_name(gpis_status status);
GPIS_API const char* gpis_version(void);

typedef struct gpis_plant {
  double gamma0;
  double gamma1;
  double gamma2;
} gpis_plant;

typedef struct gpis_gains {
  double k0;
  double k1;
  double k2;
  double k3;
} gpis_gains;

/* Identified plants; joint is "s1" or "s2". */
GPIS_API gpis_status gpis_default_plant(const char* joint, gpis_plant* out);

GPIS_API gpis_status gpis_compute_gains(double xi, double wn, const gpis_plant* plant, gpis_gains* out);
/* Descending coefficients, s^4 first. */
GPIS_API gpis_status gpis_hurwitz_poly(double xi, double wn, double out[5]);
GPIS_API gpis_status gpis_char_poly(const gpis_gains* gains, const gpis_plant* plant, double out[5]);
/* Roots of the closed-loop characteristic polynomial, sorted by real then imaginary part. */
GPIS_API gpis_status gpis_closed_loop_poles(const gpis_gains* gains, const gpis_plant* plant, double re[4],
                                            double im[4]);

/* Lengths in metres; l_a <= 0 selects the default arm length. */
GPIS_API gpis_status gpis_forward(double theta_s1, double theta_s2, double l_a, double xyz[3]);
GPIS_API gpis_status gpis_inverse(double x, double y, double z, double l_a, double angles[2]);
/* 1 inside the default joint limits, 0 outside. */
GPIS_API int gpis_in_workspace(double theta_s1, double theta_s2);

typedef struct gpis_scenario gpis_scenario;
typedef struct gpis_result gpis_result;
typedef struct gpis_teach gpis_teach;

GPIS_API gpis_status gpis_scenario_load(const char* path, gpis_scenario** out);
/* base_dir may be NULL; relative taught-trajectory paths resolve against it. */
GPIS_API gpis_status gpis_scenario_parse(const char* json, const char* base_dir, gpis_scenario** out);
GPIS_API void gpis_scenario_free(gpis_scenario* s);

GPIS_API gpis_status gpis_run(const gpis_scenario* s, gpis_result** out);
GPIS_API void gpis_result_free(gpis_result* r);

GPIS_API size_t gpis_result_joint_count(const gpis_result* r);
/* The string lives as long as the result. */
GPIS_API const char* gpis_result_joint_name(const gpis_result* r, size_t joint);

typedef enum gpis_column {
  GPIS_COL_T = 0,
  GPIS_COL_THETA_D = 1,
  GPIS_COL_THETA_MEAS = 2,
  GPIS_COL_U = 3,
  GPIS_COL_E = 4
} gpis_column;

/* Borrowed pointer into the result; valid until gpis_result_free. */
GPIS_API gpis_status gpis_result_column(const gpis_result* r, size_t joint, gpis_column col, const double** data,
                                        size_t* n);

typedef struct gpis_metrics {
  double mse;
  double rmse;
  double max_abs_error;
  double steady_state_error;
  double settle_time; /* +inf if the error never stays inside the band */
  size_t samples;
  size_t saturated_ticks;
} gpis_metrics;

GPIS_API gpis_status gpis_result_metrics(const gpis_result* r, size_t joint, gpis_metrics* out);
/* Per-joint CSVs, plot.svg, metrics.json and scenario.json under dir. */
GPIS_API gpis_status gpis_result_write(const gpis_result* r, const char* dir);

typedef struct gpis_sysid_result {
  gpis_plant plant;
  double a1;
  double a2;
  double b1;
  double b2;
  double fit_percent;
} gpis_sysid_result;

/* prefilter_cutoff in rad/s; 0 disables the prefilter. */
GPIS_API gpis_status gpis_sysid(const double* u, const double* theta, size_t n, double ts, double prefilter_cutoff,
                                gpis_sysid_result* out);
/* CSV with header t,u,theta. */
GPIS_API gpis_status gpis_sysid_csv(const char* path, double ts, double prefilter_cutoff, gpis_sysid_result* out);

/* CSV with header t,theta,theta_dot. */
GPIS_API gpis_status gpis_teach_load(const char* path, gpis_teach** out);
GPIS_API void gpis_teach_free(gpis_teach* t);
GPIS_API double gpis_teach_duration(const gpis_teach* t);
GPIS_API size_t gpis_teach_sample_count(const gpis_teach* t);
GPIS_API gpis_status gpis_teach_scenario(const gpis_teach* t, const char* joint, int smooth, double dt,
                                         gpis_scenario** out);
/* Resampled reference as CSV t,theta_d,theta_dot_d,theta_ddot_d. */
GPIS_API gpis_status gpis_teach_export_reference(const gpis_teach* t, double dt, int smooth, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* GPISHOULDER_H */
