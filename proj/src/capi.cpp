// Copyright 2026 The convex-entropy Authors
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

#include "convex_entropy.h"

#include <cstring>
#include <new>

#include "ce/campaign.hpp"

struct ce_spec {
  ce::DensitySpec spec;
};
struct ce_model {
  ce::SpectralModel model;
};
struct ce_mixture {
  ce::MixtureSpec mix;
};

namespace {

thread_local std::string g_last_error;

ce_status status_of(ce::errc c) {
  using ce::errc;
  switch (c) {
    case errc::ok: return CE_OK;
    case errc::invalid_argument: return CE_ERR_INVALID_ARGUMENT;
    case errc::parse_error: return CE_ERR_PARSE;
    case errc::unsupported: return CE_ERR_UNSUPPORTED;
    case errc::moments_undefined: return CE_ERR_MOMENTS_UNDEFINED;
    case errc::beta_too_small: return CE_ERR_BETA_TOO_SMALL;
    case errc::dimension_too_high: return CE_ERR_DIMENSION_TOO_HIGH;
    case errc::no_closed_form: return CE_ERR_NO_CLOSED_FORM;
    case errc::divergent_integral: return CE_ERR_DIVERGENT_INTEGRAL;
    case errc::precondition_violated: return CE_ERR_PRECONDITION_VIOLATED;
    case errc::regime_violated: return CE_ERR_REGIME_VIOLATED;
    case errc::kappa_out_of_range: return CE_ERR_KAPPA_OUT_OF_RANGE;
    case errc::not_positive_definite: return CE_ERR_NOT_POSITIVE_DEFINITE;
    case errc::degenerate_spectrum: return CE_ERR_DEGENERATE_SPECTRUM;
    case errc::horizon_too_short: return CE_ERR_HORIZON_TOO_SHORT;
    case errc::condition_violated: return CE_ERR_CONDITION_VIOLATED;
    case errc::divergent_mixing_moment: return CE_ERR_DIVERGENT_MIXING_MOMENT;
    case errc::non_convergence: return CE_ERR_NON_CONVERGENCE;
    case errc::support_sampling_failure: return CE_ERR_SUPPORT_SAMPLING;
    case errc::evaluation_failure: return CE_ERR_EVALUATION;
    case errc::internal: return CE_ERR_INTERNAL;
  }
  return CE_ERR_INTERNAL;
}

template <typename F>
ce_status guarded(F&& f) {
  try {
    f();
    return CE_OK;
  } catch (const ce::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CE_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CE_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ce_estimate convert(const ce::Estimate& e) {
  ce_estimate out;
  out.value = e.value;
  out.uncertainty = e.uncertainty;
  out.method = static_cast<int>(e.method);
  out.detail = e.detail;
  return out;
}

ce_status need(bool ok, const char* what) {
  if (ok) return CE_OK;
  g_last_error = what;
  return CE_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* ce_version(void) { return ce::library_version(); }

const char* ce_status_name(ce_status s) {
  switch (s) {
    case CE_OK: return "ok";
    case CE_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CE_ERR_PARSE: return "parse_error";
    case CE_ERR_UNSUPPORTED: return "unsupported";
    case CE_ERR_MOMENTS_UNDEFINED: return "moments_undefined";
    case CE_ERR_BETA_TOO_SMALL: return "beta_too_small";
    case CE_ERR_DIMENSION_TOO_HIGH: return "dimension_too_high";
    case CE_ERR_NO_CLOSED_FORM: return "no_closed_form";
    case CE_ERR_DIVERGENT_INTEGRAL: return "divergent_integral";
    case CE_ERR_PRECONDITION_VIOLATED: return "precondition_violated";
    case CE_ERR_REGIME_VIOLATED: return "regime_violated";
    case CE_ERR_KAPPA_OUT_OF_RANGE: return "kappa_out_of_range";
    case CE_ERR_NOT_POSITIVE_DEFINITE: return "not_positive_definite";
    case CE_ERR_DEGENERATE_SPECTRUM: return "degenerate_spectrum";
    case CE_ERR_HORIZON_TOO_SHORT: return "horizon_too_short";
    case CE_ERR_CONDITION_VIOLATED: return "condition_violated";
    case CE_ERR_DIVERGENT_MIXING_MOMENT: return "divergent_mixing_moment";
    case CE_ERR_NON_CONVERGENCE: return "non_convergence";
    case CE_ERR_SUPPORT_SAMPLING: return "support_sampling_failure";
    case CE_ERR_EVALUATION: return "evaluation_failure";
    case CE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* ce_last_error(void) { return g_last_error.c_str(); }

void ce_string_free(char* s) { std::free(s); }

/* specs */

ce_status ce_spec_from_json(const char* json, ce_spec** out) {
  if (const ce_status s = need(json && out, "null argument")) return s;
  return guarded([&] { *out = new ce_spec{ce::spec_from_json_text(json)}; });
}

ce_status ce_spec_to_json(const ce_spec* spec, char** out_json) {
  if (const ce_status s = need(spec && out_json, "null argument")) return s;
  return guarded([&] { *out_json = dup_string(ce::dump_json(ce::spec_to_json(spec->spec))); });
}

void ce_spec_free(ce_spec* spec) { delete spec; }

int ce_spec_dim(const ce_spec* spec) { return spec ? spec->spec.dim() : 0; }

ce_status ce_pdf(const ce_spec* spec, const double* x, int n, double* out) {
  if (const ce_status s = need(spec && x && out, "null argument")) return s;
  return guarded([&] {
    *out = spec->spec.pdf(Eigen::Map<const ce::VectorXd>(x, n));
  });
}

ce_status ce_max_density(const ce_spec* spec, double* out) {
  if (const ce_status s = need(spec && out, "null argument")) return s;
  return guarded([&] { *out = spec->spec.max_density(); });
}

ce_status ce_moments(const ce_spec* spec, double* mean, double* cov, double* sigma2) {
  if (const ce_status s = need(spec != nullptr, "null argument")) return s;
  return guarded([&] {
    const auto m = spec->spec.moments();
    const int n = spec->spec.dim();
    if (mean)
      for (int i = 0; i < n; ++i) mean[i] = m.mean[i];
    if (cov)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cov[i * n + j] = m.covariance(i, j);
    if (sigma2) *sigma2 = m.sigma2;
  });
}

ce_status ce_sample(const ce_spec* spec, uint64_t seed, int m, double* out) {
  if (const ce_status s = need(spec && out && m >= 1, "null argument or m < 1")) return s;
  return guarded([&] {
    const ce::MatrixXd x = spec->spec.sample(seed, m);
    const int n = spec->spec.dim();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) out[i * n + j] = x(i, j);
  });
}

ce_status ce_kappa_classify(const ce_spec* spec, double kappa, int trials, uint64_t seed,
                            char** out_json) {
  if (const ce_status s = need(spec && out_json, "null argument")) return s;
  return guarded([&] {
    const ce::KappaReport r = spec->spec.kappa_classify(kappa, trials, seed);
    *out_json = dup_string(ce::dump_json(ce::kappa_report_to_json(r)));
  });
}

/* entropy */

ce_status ce_entropy_closed(const ce_spec* spec, ce_estimate* out) {
  if (const ce_status s = need(spec && out, "null argument")) return s;
  return guarded([&] { *out = convert(ce::entropy_closed(spec->spec)); });
}

ce_status ce_entropy_quad(const ce_spec* spec, ce_estimate* out) {
  if (const ce_status s = need(spec && out, "null argument")) return s;
  return guarded([&] { *out = convert(ce::entropy_quad(spec->spec)); });
}

ce_status ce_entropy_mc(const ce_spec* spec, uint64_t seed, int64_t samples,
                        ce_estimate* out) {
  if (const ce_status s = need(spec && out, "null argument")) return s;
  return guarded([&] { *out = convert(ce::entropy_mc(spec->spec, seed, samples)); });
}

ce_status ce_renyi_closed(const ce_spec* spec, double p, ce_estimate* out) {
  if (const ce_status s = need(spec && out, "null argument")) return s;
  return guarded([&] { *out = convert(ce::renyi_closed(spec->spec, p)); });
}

ce_status ce_pareto_normalizer(int n, double beta, double a, double* out) {
  if (const ce_status s = need(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = ce::pareto_normalizer(n, beta, a); });
}

ce_status ce_pareto_log_integral(int n, double beta, double a, double* out) {
  if (const ce_status s = need(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = ce::pareto_log_integral(n, beta, a); });
}

ce_status ce_relative_entropy_to_gaussian(const ce_spec* spec, ce_estimate* out) {
  if (const ce_status s = need(spec && out, "null argument")) return s;
  return guarded([&] { *out = convert(ce::relative_entropy_to_gaussian(spec->spec)); });
}

ce_status ce_isotropic_constant(const ce_spec* spec, double* out) {
  if (const ce_status s = need(spec && out, "null argument")) return s;
  return guarded([&] { *out = ce::isotropic_constant(spec->spec); });
}

ce_status ce_gaussian_independence_distance(const double* cov, int n, double* out) {
  if (const ce_status s = need(cov && out && n >= 1, "null argument or n < 1")) return s;
  return guarded([&] {
    ce::MatrixXd R(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) R(i, j) = cov[i * n + j];
    *out = ce::gaussian_independence_distance(R);
  });
}

/* bounds */

ce_status ce_kconc_upper_bound(int n, double beta, double* out) {
  if (const ce_status s = need(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = ce::kconc_upper_bound(n, beta); });
}

ce_status ce_beta_regime_bound(int n, double beta, double beta0, int additive, double* out) {
  if (const ce_status s = need(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = ce::beta_regime_bound(n, beta, beta0, additive != 0); });
}

ce_status ce_iso_lower_constant(int n, double* finite_n, double* asymptotic) {
  return guarded([&] {
    const auto [fin, asym] = ce::iso_lower_constant(n);
    if (finite_n) *finite_n = fin;
    if (asymptotic) *asymptotic = asym;
  });
}

ce_status ce_junge_bound(int n, double kappa, int folds, double* out) {
  if (const ce_status s = need(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = ce::junge_bound(n, kappa, folds); });
}

ce_status ce_stable_kappa_upper(double alpha, int n, double* out) {
  if (const ce_status s = need(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = ce::stable_kappa_upper(alpha, n); });
}

ce_status ce_stable_chf_norm2(double alpha, double* out) {
  if (const ce_status s = need(out != nullptr, "null argument")) return s;
  return guarded([&] { *out = ce::stable_chf_norm2(alpha); });
}

ce_status ce_stable_h2_identity(double alpha, int n, double f0, double* h2, double* lhs,
                                double* rhs) {
  return guarded([&] {
    const ce::StableH2 r = ce::stable_h2_identity(alpha, n, f0);
    if (h2) *h2 = r.h2;
    if (lhs) *lhs = r.lhs;
    if (rhs) *rhs = r.rhs;
  });
}

/* checks */

ce_status ce_check_catalog(char** out_json) {
  if (const ce_status s = need(out_json != nullptr, "null argument")) return s;
  return guarded([&] {
    ce::Json arr = ce::Json::array();
    for (const auto& d : ce::check_catalog()) {
      ce::Json e;
      e["id"] = d.id;
      e["anchor"] = d.anchor;
      e["needs_log_concave"] = d.needs_log_concave;
      e["needs_beta_form"] = d.needs_beta_form;
      e["needs_one_dim"] = d.needs_one_dim;
      e["needs_finite_cov"] = d.needs_finite_cov;
      e["needs_body"] = d.needs_body;
      e["params"] = d.params_doc;
      arr.push_back(std::move(e));
    }
    *out_json = dup_string(ce::dump_json(arr));
  });
}

ce_status ce_run_check(const char* check_id, const ce_spec* spec, const char* params_json,
                       uint64_t seed, double tol, char** out_json) {
  if (const ce_status s = need(check_id && spec && out_json, "null argument")) return s;
  return guarded([&] {
    const ce::Json params =
        params_json ? ce::parse_json_text(params_json) : ce::Json::object();
    const ce::BoundCheck c = ce::run_check(check_id, spec->spec, params, seed, tol);
    *out_json = dup_string(ce::dump_json(ce::bound_check_to_json(c)));
  });
}

/* spectral */

ce_status ce_chf_norm2(const ce_spec* spec, ce_estimate* out) {
  if (const ce_status s = need(spec && out, "null argument")) return s;
  return guarded([&] { *out = convert(ce::chf_norm2(spec->spec)); });
}

ce_status ce_plancherel_window(const ce_spec* spec, double* lower, double* upper) {
  if (const ce_status s = need(spec != nullptr, "null argument")) return s;
  return guarded([&] {
    const auto [lo, hi] = ce::plancherel_window(spec->spec);
    if (lower) *lower = lo;
    if (upper) *upper = hi;
  });
}

ce_status ce_model_from_json(const char* json, ce_model** out) {
  if (const ce_status s = need(json && out, "null argument")) return s;
  return guarded([&] { *out = new ce_model{ce::model_from_json_text(json)}; });
}

void ce_model_free(ce_model* model) { delete model; }

ce_status ce_toeplitz_block_entropy(const ce_model* model, int n, double* out) {
  if (const ce_status s = need(model && out, "null argument")) return s;
  return guarded([&] { *out = ce::toeplitz_block_entropy(model->model, n); });
}

ce_status ce_block_entropy_trajectory(const ce_model* model, int n_max, double* out) {
  if (const ce_status s = need(model && out, "null argument")) return s;
  return guarded([&] {
    const auto traj = ce::block_entropy_trajectory(model->model, n_max);
    for (int i = 0; i < n_max; ++i) out[i] = traj[i];
  });
}

ce_status ce_szego_rate(const ce_model* model, double* out) {
  if (const ce_status s = need(model && out, "null argument")) return s;
  return guarded([&] { *out = ce::szego_rate(model->model); });
}

ce_status ce_szego_rate_unhalved(const ce_model* model, double* out) {
  if (const ce_status s = need(model && out, "null argument")) return s;
  return guarded([&] { *out = ce::szego_rate_unhalved(model->model); });
}

ce_status ce_process_rate_bounds(const double* log_max_density, int count, double* f_minus,
                                 double* f_plus, double* upper_rate) {
  if (const ce_status s = need(log_max_density != nullptr, "null argument")) return s;
  return guarded([&] {
    const std::vector<double> seq(log_max_density, log_max_density + count);
    const ce::RateBounds b = ce::process_rate_bounds(seq);
    if (f_minus) *f_minus = b.f_minus;
    if (f_plus) *f_plus = b.f_plus;
    if (upper_rate) *upper_rate = b.upper_rate;
  });
}

ce_status ce_gaussian_log_max_density_seq(const ce_model* model, int n_max, double* out) {
  if (const ce_status s = need(model && out, "null argument")) return s;
  return guarded([&] {
    const auto seq = ce::gaussian_log_max_density_seq(model->model, n_max);
    for (int i = 0; i < n_max; ++i) out[i] = seq[i];
  });
}

/* convolution */

ce_status ce_self_convolve_max(const ce_spec* spec, int folds, double kappa,
                               char** out_json) {
  if (const ce_status s = need(spec && out_json, "null argument")) return s;
  return guarded([&] {
    std::optional<double> k;
    if (!std::isnan(kappa)) k = kappa;
    const ce::ConvolutionResult r = ce::self_convolve_max(spec->spec, folds, k);
    ce::Json j;
    j["folds"] = r.folds;
    j["max_density"] = r.max_density;
    j["method"] = r.method;
    j["kappa"] = r.kappa;
    j["bound"] = r.bound;
    j["slack"] = r.slack;
    *out_json = dup_string(ce::dump_json(j));
  });
}

/* mixtures */

ce_status ce_mixture_from_json(const char* json, ce_mixture** out) {
  if (const ce_status s = need(json && out, "null argument")) return s;
  return guarded([&] { *out = new ce_mixture{ce::mixture_from_json_text(json)}; });
}

void ce_mixture_free(ce_mixture* mix) { delete mix; }

ce_status ce_mixture_bounds(const ce_mixture* mix, double* lower, double* upper) {
  if (const ce_status s = need(mix != nullptr, "null argument")) return s;
  return guarded([&] {
    const auto [lo, hi] = ce::mixture_bounds(mix->mix);
    if (lower) *lower = lo;
    if (upper) *upper = hi;
  });
}

ce_status ce_mixture_condition(const ce_mixture* mix, uint64_t seed, char** out_json) {
  if (const ce_status s = need(mix && out_json, "null argument")) return s;
  return guarded([&] {
    const ce::BoundCheck c = ce::mixture_logconcavity_condition(mix->mix, seed);
    *out_json = dup_string(ce::dump_json(ce::bound_check_to_json(c)));
  });
}

ce_status ce_mixture_entropy_mc(const ce_mixture* mix, uint64_t seed, int64_t samples,
                                ce_estimate* out) {
  if (const ce_status s = need(mix && out, "null argument")) return s;
  return guarded([&] { *out = convert(ce::mixture_entropy_mc(mix->mix, seed, samples)); });
}

/* campaigns */

ce_status ce_campaign_run(const char* campaign_json, char** report_json) {
  if (const ce_status s = need(campaign_json && report_json, "null argument")) return s;
  return guarded([&] {
    const ce::Campaign c = ce::campaign_from_json_text(campaign_json);
    const ce::Report r = ce::run_campaign(c);
    *report_json = dup_string(ce::dump_json(ce::report_to_json(r)));
  });
}

ce_status ce_report_render(const char* report_json, const char* format, char** out_text) {
  if (const ce_status s = need(report_json && format && out_text, "null argument")) return s;
  return guarded([&] {
    *out_text = dup_string(ce::render_report(ce::parse_json_text(report_json), format));
  });
}

ce_status ce_report_failures(const char* report_json, int* failures) {
  if (const ce_status s = need(report_json && failures, "null argument")) return s;
  return guarded([&] {
    const ce::Json j = ce::parse_json_text(report_json);
    *failures = j.at("counts").value("fail", 0) + j.at("counts").value("error", 0);
  });
}

}  // extern "C"
