/* Copyright 2026 The convex-entropy Authors
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

/* C interface to the convex-entropy library.
 *
 * Entropy functionals, inequality checks and entropy-rate computations for
 * log-concave and convex (kappa-concave) probability measures. Handles are
 * opaque; every function returns a ce_status and writes results through out
 * parameters. Strings returned through char** are owned by the caller and
 * must be released with ce_string_free. On failure, ce_last_error() returns
 * a thread-local description of what went wrong.
 */

#ifndef CONVEX_ENTROPY_H
#define CONVEX_ENTROPY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CE_API __declspec(dllexport)
#else
#define CE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ce_status {
  CE_OK = 0,
  CE_ERR_INVALID_ARGUMENT,
  CE_ERR_PARSE,
  CE_ERR_UNSUPPORTED,
  CE_ERR_MOMENTS_UNDEFINED,
  CE_ERR_BETA_TOO_SMALL,
  CE_ERR_DIMENSION_TOO_HIGH,
  CE_ERR_NO_CLOSED_FORM,
  CE_ERR_DIVERGENT_INTEGRAL,
  CE_ERR_PRECONDITION_VIOLATED,
  CE_ERR_REGIME_VIOLATED,
  CE_ERR_KAPPA_OUT_OF_RANGE,
  CE_ERR_NOT_POSITIVE_DEFINITE,
  CE_ERR_DEGENERATE_SPECTRUM,
  CE_ERR_HORIZON_TOO_SHORT,
  CE_ERR_CONDITION_VIOLATED,
  CE_ERR_DIVERGENT_MIXING_MOMENT,
  CE_ERR_NON_CONVERGENCE,
  CE_ERR_SUPPORT_SAMPLING,
  CE_ERR_EVALUATION,
  CE_ERR_INTERNAL
} ce_status;

/* estimate methods */
#define CE_METHOD_CLOSED_FORM 0
#define CE_METHOD_QUADRATURE 1
#define CE_METHOD_MONTE_CARLO 2

typedef struct ce_estimate {
  double value;
  double uncertainty;
  int method; /* CE_METHOD_* */
  int64_t detail;
} ce_estimate;

typedef struct ce_spec ce_spec;       /* density specification */
typedef struct ce_model ce_model;     /* stationary Gaussian process model */
typedef struct ce_mixture ce_mixture; /* Gaussian / log-concave scale mixture */

CE_API const char* ce_version(void);
CE_API const char* ce_status_name(ce_status s);
CE_API const char* ce_last_error(void);
CE_API void ce_string_free(char* s);

/* ---------------------------------------------------------------- specs */

CE_API ce_status ce_spec_from_json(const char* json, ce_spec** out);
CE_API ce_status ce_spec_to_json(const ce_spec* spec, char** out_json);
CE_API void ce_spec_free(ce_spec* spec);
CE_API int ce_spec_dim(const ce_spec* spec);

CE_API ce_status ce_pdf(const ce_spec* spec, const double* x, int n, double* out);
CE_API ce_status ce_max_density(const ce_spec* spec, double* out);
/* mean: n doubles; cov: n*n doubles row-major; any output may be NULL */
CE_API ce_status ce_moments(const ce_spec* spec, double* mean, double* cov, double* sigma2);
/* out: m*n doubles row-major */
CE_API ce_status ce_sample(const ce_spec* spec, uint64_t seed, int m, double* out);
CE_API ce_status ce_kappa_classify(const ce_spec* spec, double kappa, int trials,
                                   uint64_t seed, char** out_json);

/* --------------------------------------------------------------- entropy */

CE_API ce_status ce_entropy_closed(const ce_spec* spec, ce_estimate* out);
CE_API ce_status ce_entropy_quad(const ce_spec* spec, ce_estimate* out);
CE_API ce_status ce_entropy_mc(const ce_spec* spec, uint64_t seed, int64_t samples,
                               ce_estimate* out);
CE_API ce_status ce_renyi_closed(const ce_spec* spec, double p, ce_estimate* out);
CE_API ce_status ce_pareto_normalizer(int n, double beta, double a, double* out);
CE_API ce_status ce_pareto_log_integral(int n, double beta, double a, double* out);
CE_API ce_status ce_relative_entropy_to_gaussian(const ce_spec* spec, ce_estimate* out);
CE_API ce_status ce_isotropic_constant(const ce_spec* spec, double* out);
/* cov: n*n row-major */
CE_API ce_status ce_gaussian_independence_distance(const double* cov, int n, double* out);

/* ---------------------------------------------------------------- bounds */

CE_API ce_status ce_kconc_upper_bound(int n, double beta, double* out);
/* additive = 0 for the multiplicative regime */
CE_API ce_status ce_beta_regime_bound(int n, double beta, double beta0, int additive,
                                      double* out);
CE_API ce_status ce_iso_lower_constant(int n, double* finite_n, double* asymptotic);
CE_API ce_status ce_junge_bound(int n, double kappa, int folds, double* out);
CE_API ce_status ce_stable_kappa_upper(double alpha, int n, double* out);
CE_API ce_status ce_stable_chf_norm2(double alpha, double* out);
CE_API ce_status ce_stable_h2_identity(double alpha, int n, double f0, double* h2,
                                       double* lhs, double* rhs);

/* ---------------------------------------------------------------- checks */

/* JSON array describing every catalog check */
CE_API ce_status ce_check_catalog(char** out_json);
/* params_json may be NULL or a JSON object of check parameters */
CE_API ce_status ce_run_check(const char* check_id, const ce_spec* spec,
                              const char* params_json, uint64_t seed, double tol,
                              char** out_json);

/* -------------------------------------------------------------- spectral */

CE_API ce_status ce_chf_norm2(const ce_spec* spec, ce_estimate* out);
CE_API ce_status ce_plancherel_window(const ce_spec* spec, double* lower, double* upper);

CE_API ce_status ce_model_from_json(const char* json, ce_model** out);
CE_API void ce_model_free(ce_model* model);
CE_API ce_status ce_toeplitz_block_entropy(const ce_model* model, int n, double* out);
/* out: n_max doubles, block entropies for n = 1..n_max */
CE_API ce_status ce_block_entropy_trajectory(const ce_model* model, int n_max, double* out);
CE_API ce_status ce_szego_rate(const ce_model* model, double* out);
CE_API ce_status ce_szego_rate_unhalved(const ce_model* model, double* out);
/* log_max_density: log ||f_n|| for n = 1..count */
CE_API ce_status ce_process_rate_bounds(const double* log_max_density, int count,
                                        double* f_minus, double* f_plus,
                                        double* upper_rate);
CE_API ce_status ce_gaussian_log_max_density_seq(const ce_model* model, int n_max,
                                                 double* out);

/* ----------------------------------------------------------- convolution */

/* pass kappa = NAN to derive it from the spec */
CE_API ce_status ce_self_convolve_max(const ce_spec* spec, int folds, double kappa,
                                      char** out_json);

/* -------------------------------------------------------------- mixtures */

CE_API ce_status ce_mixture_from_json(const char* json, ce_mixture** out);
CE_API void ce_mixture_free(ce_mixture* mix);
CE_API ce_status ce_mixture_bounds(const ce_mixture* mix, double* lower, double* upper);
CE_API ce_status ce_mixture_condition(const ce_mixture* mix, uint64_t seed,
                                      char** out_json);
CE_API ce_status ce_mixture_entropy_mc(const ce_mixture* mix, uint64_t seed,
                                       int64_t samples, ce_estimate* out);

/* -------------------------------------------------------------- campaigns */

CE_API ce_status ce_campaign_run(const char* campaign_json, char** report_json);
/* format: "json" | "csv" | "markdown"; exit contract: *failures receives the
 * number of failed or errored entries */
CE_API ce_status ce_report_render(const char* report_json, const char* format,
                                  char** out_text);
CE_API ce_status ce_report_failures(const char* report_json, int* failures);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CONVEX_ENTROPY_H */
