/* Copyright 2026 The pzamp Authors
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

/* C API of the piezo charge-amplifier modeling library. Opaque handles,
 * status-code returns, thread-local error messages. All quantities are SI
 * base units (ohms, farads, volts, hertz, kelvin, watts).
 */

#ifndef PZAMP_H_
#define PZAMP_H_

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pz_status {
  PZ_OK = 0,
  PZ_ERR_INVALID = 1,  /* bad argument or precondition violation */
  PZ_ERR_PARSE = 2,    /* malformed JSON/CSV input */
  PZ_ERR_NUMERIC = 3,  /* solver or quadrature failure */
  PZ_ERR_COVERAGE = 4, /* requested band outside the available grid */
} pz_status;

/* Message for the most recent failure on this thread. Never NULL. */
const char* pz_last_error(void);
const char* pz_version(void);

/* ---- handles ---------------------------------------------------------- */

typedef struct pz_config pz_config;     /* amplifier component values */
typedef struct pz_sensor pz_sensor;     /* sensor + parasitics */
typedef struct pz_registry pz_registry; /* op-amp catalog */
typedef struct pz_sweep pz_sweep;       /* design sweep result */

pz_config* pz_config_default(void);
pz_config* pz_config_from_json(const char* json_text); /* NULL on error */
char* pz_config_to_json(const pz_config* cfg);         /* free with pz_string_free */
void pz_config_free(pz_config* cfg);
/* Fields: r_f c_f r_a r_b c_b r_o c_o temperature */
pz_status pz_config_set(pz_config* cfg, const char* field, double value);
pz_status pz_config_get(const pz_config* cfg, const char* field, double* value);
pz_status pz_config_set_opamp(pz_config* cfg, int stage /*1 or 2*/, const char* name);
const char* pz_config_opamp(const pz_config* cfg, int stage);

pz_sensor* pz_sensor_default(void);  /* estimated sensor + parasitics */
pz_sensor* pz_sensor_unloaded(void); /* nothing attached to the input */
pz_sensor* pz_sensor_from_json(const char* json_text);
char* pz_sensor_to_json(const pz_sensor* sensor);
void pz_sensor_free(pz_sensor* sensor);
/* Fields: c_piezo c_par r_par c_gnd (r_par accepts INFINITY) */
pz_status pz_sensor_set(pz_sensor* sensor, const char* field, double value);
pz_status pz_sensor_get(const pz_sensor* sensor, const char* field, double* value);

pz_registry* pz_registry_builtin(void);
pz_registry* pz_registry_from_json(const char* json_text);
char* pz_registry_to_json(const pz_registry* reg);
void pz_registry_free(pz_registry* reg);
/* Any output pointer may be NULL. */
pz_status pz_registry_opamp(const pz_registry* reg, const char* name, double* v_white,
                            double* i_white, double* q_slope, double* c_in, double* power);

/* ---- transfer functions ----------------------------------------------- */

pz_status pz_internal_gain(const pz_config* cfg, double f, double* re, double* im);
pz_status pz_overall_gain(const pz_config* cfg, double f, double* re, double* im);
pz_status pz_midband_gain(const pz_config* cfg, double* gain);
pz_status pz_dominant_pole(const pz_config* cfg, double* f);
pz_status pz_cuton_frequency(const pz_config* cfg, double* f);
pz_status pz_charge_from_voltage(const pz_sensor* sensor, double v_piezo, double* coulombs);
/* mag / phase_deg arrays of length n. */
pz_status pz_bode(const pz_config* cfg, const double* freqs, size_t n, double* mag,
                  double* phase_deg);

/* ---- noise ------------------------------------------------------------ */

/* Input-referred charge variance density, C²/Hz, at each frequency. */
pz_status pz_charge_noise_density(const pz_config* cfg, const pz_sensor* sensor,
                                  const pz_registry* reg, const double* freqs, size_t n,
                                  double* density);
/* Output-referred voltage noise density, V²/Hz. */
pz_status pz_output_noise_density(const pz_config* cfg, const pz_sensor* sensor,
                                  const pz_registry* reg, const double* freqs, size_t n,
                                  double* density);
pz_status pz_enc(const pz_config* cfg, const pz_sensor* sensor, const pz_registry* reg,
                 double f_lo, double f_hi, double* coulombs);

/* ---- nodal-analysis oracle -------------------------------------------- */

/* Max relative |closed form - nodal solver| / |closed form| of the gain over
 * n log-spaced points. */
pz_status pz_oracle_gain_error(const pz_config* cfg, const pz_sensor* sensor, double f_lo,
                               double f_hi, size_t n, double* max_rel_err);
/* Same for the input-referred charge noise density. */
pz_status pz_oracle_noise_error(const pz_config* cfg, const pz_sensor* sensor,
                                const pz_registry* reg, double f_lo, double f_hi, size_t n,
                                double* max_rel_err);
/* Netlist dump of the canonical chain as JSON. */
char* pz_netlist_json(const pz_config* cfg, const pz_sensor* sensor);

/* ---- acoustics --------------------------------------------------------- */

/* Two-call idiom: pass centers == NULL to query the count. */
pz_status pz_third_octave_bands(double f_lo, double f_hi, double* centers,
                                double* bandwidths, size_t cap, size_t* count);
double pz_a_weight_db(double f);
/* Per band, sqrt of the density integral. Grid arrays of length n. */
pz_status pz_band_integrate(const double* grid, const double* density, size_t n,
                            const double* centers, size_t n_bands, double* rms);
/* EIN per band in dB SPL. Sensitivity arrays of length n_sens (C/Pa). */
pz_status pz_ein_bands(const double* grid, const double* density, size_t n,
                       const double* sens_freqs, const double* sens_values, size_t n_sens,
                       const double* centers, size_t n_bands, double* ein_db);
/* Power-sum total; a_weighted nonzero applies per-band A-weighting. */
pz_status pz_ein_total(const double* ein_db, const double* centers, size_t n_bands,
                       int a_weighted, double* total_db);
/* Multiply a sensitivity by interpolated pinna gain (dB). In-place output. */
pz_status pz_apply_pinna(const double* sens_freqs, double* sens_values, size_t n_sens,
                         const double* pinna_freqs, const double* pinna_db, size_t n_pinna);

/* ---- recorded-signal analysis ------------------------------------------ */

/* Welch PSD. Two-call idiom on bins (= segment_length/2 + 1). */
pz_status pz_power_spectrum(const double* samples, size_t n, double sample_rate,
                            size_t segment_length, double overlap, double* freqs,
                            double* density, size_t* bins);
pz_status pz_thd(const double* samples, size_t n, double sample_rate, double f0,
                 int n_harmonics, double* thd);
pz_status pz_linearity_fit(const double* stimulus_db, const double* response_rms, size_t n,
                           double* slope, double* max_deviation_db);
/* Pointwise 20 log10 |g_diff| / |g_cm|. */
pz_status pz_cmrr_db(const double* diff_mag, const double* cm_mag, size_t n, double* cmrr);
pz_status pz_emi_capacitance(double v_out_rms, double v_applied_rms, double charge_gain,
                             double* farads);

/* ---- design exploration ------------------------------------------------ */

pz_sweep* pz_sweep_run(const char* spec_json, const pz_registry* reg); /* NULL on error */
size_t pz_sweep_count(const pz_sweep* sweep);
pz_status pz_sweep_point(const pz_sweep* sweep, size_t index, double* r_f, double* c_f,
                         double* enc, double* midband_gain, double* cuton_hz,
                         double* power_w, int* pareto);
const char* pz_sweep_opamp(const pz_sweep* sweep, size_t index, int stage);
char* pz_sweep_csv(const pz_sweep* sweep, const char* manifest_ref);
void pz_sweep_free(pz_sweep* sweep);

void pz_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PZAMP_H_ */
