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

// Command-line driver. Everything goes through the C API in
// include/convex_entropy.h; this file only parses arguments, moves files
// around and sets exit codes (0 ok, 1 check failures, 2 usage/runtime error).

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "convex_entropy.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    std::exit(2);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    std::exit(2);
  }
  out << text;
}

[[noreturn]] void die(ce_status s) {
  std::cerr << "error (" << ce_status_name(s) << "): " << ce_last_error() << "\n";
  std::exit(2);
}

void check_status(ce_status s) {
  if (s != CE_OK) die(s);
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  ce_string_free(s);
  return out;
}

struct SpecHandle {
  ce_spec* p = nullptr;
  explicit SpecHandle(const std::string& json) { check_status(ce_spec_from_json(json.c_str(), &p)); }
  ~SpecHandle() { ce_spec_free(p); }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string estimate_json(const ce_estimate& e) {
  const char* method = e.method == CE_METHOD_CLOSED_FORM  ? "closed-form"
                       : e.method == CE_METHOD_QUADRATURE ? "quadrature"
                                                          : "monte-carlo";
  std::ostringstream out;
  out << "{\"value\": " << fmt(e.value) << ", \"uncertainty\": " << fmt(e.uncertainty)
      << ", \"method\": \"" << method << "\", \"detail\": " << e.detail << "}";
  return out.str();
}

int cmd_entropy(const std::string& spec_path, const std::string& method, double renyi_p,
                uint64_t seed, int64_t samples, const std::string& out_path) {
  SpecHandle spec(read_file(spec_path));
  ce_estimate est;
  if (!std::isnan(renyi_p)) {
    check_status(ce_renyi_closed(spec.p, renyi_p, &est));
  } else if (method == "closed") {
    check_status(ce_entropy_closed(spec.p, &est));
  } else if (method == "quad") {
    check_status(ce_entropy_quad(spec.p, &est));
  } else if (method == "mc") {
    check_status(ce_entropy_mc(spec.p, seed, samples, &est));
  } else {  // auto: closed form first, quadrature as fallback
    const ce_status s = ce_entropy_closed(spec.p, &est);
    if (s == CE_ERR_NO_CLOSED_FORM)
      check_status(ce_entropy_quad(spec.p, &est));
    else
      check_status(s);
  }
  write_output(out_path, estimate_json(est) + "\n");
  return 0;
}

int cmd_check(const std::string& check_id, const std::string& spec_path,
              const std::string& params, uint64_t seed, double tol,
              const std::string& out_path) {
  SpecHandle spec(read_file(spec_path));
  std::vector<std::string> ids;
  if (check_id == "all") {
    char* catalog_json = nullptr;
    check_status(ce_check_catalog(&catalog_json));
    const std::string cat = take_string(catalog_json);
    // ids appear as "id": "<NAME>" in catalog order
    std::size_t pos = 0;
    while ((pos = cat.find("\"id\": \"", pos)) != std::string::npos) {
      pos += 7;
      ids.push_back(cat.substr(pos, cat.find('"', pos) - pos));
    }
  } else {
    ids.push_back(check_id);
  }
  std::ostringstream out;
  out << "[\n";
  int failures = 0;
  bool first = true;
  for (const auto& id : ids) {
    char* result = nullptr;
    const ce_status s = ce_run_check(id.c_str(), spec.p, params.empty() ? nullptr : params.c_str(),
                                     seed, tol, &result);
    // running the whole catalog skips entries the spec cannot satisfy
    const bool skippable = s == CE_ERR_PRECONDITION_VIOLATED ||
                           s == CE_ERR_MOMENTS_UNDEFINED || s == CE_ERR_BETA_TOO_SMALL ||
                           s == CE_ERR_DIMENSION_TOO_HIGH || s == CE_ERR_UNSUPPORTED;
    std::string row;
    if (s == CE_OK) {
      row = take_string(result);
      if (row.find("\"verdict\": \"fail\"") != std::string::npos) ++failures;
    } else if (skippable && check_id == "all") {
      row = std::string("{\"check_id\": \"") + id + "\", \"verdict\": \"skipped\", \"reason\": \"" +
            ce_last_error() + "\"}";
    } else {
      die(s);
    }
    if (!first) out << ",\n";
    first = false;
    out << row;
  }
  out << "\n]\n";
  write_output(out_path, out.str());
  return failures == 0 ? 0 : 1;
}

int cmd_rate(const std::string& model_path, int n_max, const std::string& out_path) {
  ce_model* model = nullptr;
  check_status(ce_model_from_json(read_file(model_path).c_str(), &model));
  double rate = 0.0, rate_unhalved = 0.0;
  check_status(ce_szego_rate(model, &rate));
  check_status(ce_szego_rate_unhalved(model, &rate_unhalved));
  std::vector<double> traj(n_max);
  check_status(ce_block_entropy_trajectory(model, n_max, traj.data()));
  std::vector<double> logf(n_max);
  check_status(ce_gaussian_log_max_density_seq(model, n_max, logf.data()));
  double f_minus = 0.0, f_plus = 0.0, upper = 0.0;
  check_status(ce_process_rate_bounds(logf.data(), n_max, &f_minus, &f_plus, &upper));
  ce_model_free(model);

  std::ostringstream csv;
  csv << "# szego_rate = " << fmt(rate) << "\n";
  csv << "# szego_rate_unhalved_reading = " << fmt(rate_unhalved) << "\n";
  csv << "# upper_rate_from_max_density = " << fmt(upper) << "\n";
  csv << "n,block_entropy\n";
  for (int i = 0; i < n_max; ++i) csv << (i + 1) << "," << fmt(traj[i]) << "\n";
  write_output(out_path, csv.str());
  if (!out_path.empty()) {
    std::cout << "{\"szego_rate\": " << fmt(rate) << ", \"block_entropy_final\": "
              << fmt(traj[n_max - 1]) << ", \"f_minus\": " << fmt(f_minus)
              << ", \"f_plus\": " << fmt(f_plus) << ", \"upper_rate\": " << fmt(upper)
              << "}\n";
  }
  return 0;
}

int cmd_convolve(const std::string& spec_path, int folds, double kappa,
                 const std::string& out_path) {
  SpecHandle spec(read_file(spec_path));
  char* result = nullptr;
  check_status(ce_self_convolve_max(spec.p, folds, kappa, &result));
  write_output(out_path, take_string(result) + "\n");
  return 0;
}

int cmd_mixture(const std::string& mix_path, bool bounds, int64_t mc_samples, uint64_t seed,
                const std::string& out_path) {
  ce_mixture* mix = nullptr;
  check_status(ce_mixture_from_json(read_file(mix_path).c_str(), &mix));
  std::ostringstream out;
  out << "{";
  char* cond = nullptr;
  check_status(ce_mixture_condition(mix, seed, &cond));
  out << "\"condition\": " << take_string(cond);
  if (bounds) {
    double lo = 0.0, hi = 0.0;
    const ce_status s = ce_mixture_bounds(mix, &lo, &hi);
    if (s == CE_OK)
      out << ", \"bounds\": {\"lower\": " << fmt(lo) << ", \"upper\": " << fmt(hi) << "}";
    else if (s == CE_ERR_CONDITION_VIOLATED)
      out << ", \"bounds\": \"unavailable: " << ce_last_error() << "\"";
    else
      die(s);
  }
  if (mc_samples > 0) {
    ce_estimate est;
    check_status(ce_mixture_entropy_mc(mix, seed, mc_samples, &est));
    out << ", \"entropy_mc\": " << estimate_json(est);
  }
  out << "}\n";
  ce_mixture_free(mix);
  write_output(out_path, out.str());
  return 0;
}

int cmd_chf(const std::string& spec_path, const std::string& out_path) {
  SpecHandle spec(read_file(spec_path));
  ce_estimate norm2;
  check_status(ce_chf_norm2(spec.p, &norm2));
  const int n = ce_spec_dim(spec.p);
  const double h2 = n * std::log(2.0 * M_PI) - std::log(norm2.value);
  std::ostringstream out;
  out << "{\"norm2\": " << estimate_json(norm2) << ", \"h2\": " << fmt(h2);
  double lo = 0.0, hi = 0.0;
  const ce_status s = ce_plancherel_window(spec.p, &lo, &hi);
  if (s == CE_OK)
    out << ", \"window\": {\"lower\": " << fmt(lo) << ", \"upper\": " << fmt(hi) << "}";
  out << "}\n";
  write_output(out_path, out.str());
  return 0;
}

int cmd_campaign(const std::string& campaign_path, const std::string& format,
                 const std::string& out_path) {
  char* report = nullptr;
  check_status(ce_campaign_run(read_file(campaign_path).c_str(), &report));
  const std::string report_json = take_string(report);
  char* rendered = nullptr;
  check_status(ce_report_render(report_json.c_str(), format.c_str(), &rendered));
  write_output(out_path, take_string(rendered));
  int failures = 0;
  check_status(ce_report_failures(report_json.c_str(), &failures));
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy functionals and inequality checks for convex probability measures"};
  app.set_version_flag("--version", std::string(ce_version()));
  app.require_subcommand(1);

  std::string spec_path, model_path, mix_path, campaign_path, out_path;
  std::string method = "auto", format = "json", check_id = "all", params;
  uint64_t seed = 1;
  int64_t samples = 100000;
  double tol = 1e-7;
  double renyi_p = NAN;
  double kappa = NAN;
  int folds = 2;
  int n_max = 2048;
  bool bounds = false;
  int64_t mc_samples = 0;

  auto* entropy = app.add_subcommand("entropy", "Shannon or Renyi entropy of a density spec");
  entropy->add_option("--spec", spec_path, "density spec JSON file")->required();
  entropy->add_option("--method", method, "closed|quad|mc|auto");
  entropy->add_option("--renyi", renyi_p, "Renyi order p (closed form)");
  entropy->add_option("--seed", seed, "RNG seed");
  entropy->add_option("--samples", samples, "Monte Carlo sample count");
  entropy->add_option("--out", out_path, "output path (default stdout)");

  auto* check = app.add_subcommand("check", "run inequality checks against a spec");
  check->add_option("--check", check_id, "catalog check id or 'all'");
  check->add_option("--spec", spec_path, "density spec JSON file")->required();
  check->add_option("--params", params, "check parameters as inline JSON");
  check->add_option("--seed", seed, "RNG seed");
  check->add_option("--tol", tol, "check tolerance");
  check->add_option("--out", out_path, "report path (default stdout)");

  auto* rate = app.add_subcommand("rate", "entropy rate of a stationary Gaussian model");
  rate->add_option("--model", model_path, "spectral model JSON file")->required();
  rate->add_option("--n", n_max, "largest block size");
  rate->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* convolve = app.add_subcommand("convolve", "max density under self-convolution");
  convolve->add_option("--spec", spec_path, "density spec JSON file")->required();
  convolve->add_option("--folds", folds, "number of convolution folds")->required();
  convolve->add_option("--kappa", kappa, "concavity parameter in [-1, 0]");
  convolve->add_option("--out", out_path, "output path (default stdout)");

  auto* mixture = app.add_subcommand("mixture", "scale-mixture entropy bounds");
  mixture->add_option("--mix", mix_path, "mixture spec JSON file")->required();
  mixture->add_flag("--bounds", bounds, "report the entropy bracket");
  mixture->add_option("--mc", mc_samples, "Monte Carlo entropy with this many samples");
  mixture->add_option("--seed", seed, "RNG seed");
  mixture->add_option("--out", out_path, "output path (default stdout)");

  auto* chf = app.add_subcommand("chf", "characteristic-function entropy bracket");
  chf->add_option("--spec", spec_path, "density spec JSON file")->required();
  chf->add_option("--out", out_path, "output path (default stdout)");

  auto* campaign = app.add_subcommand("campaign", "run a campaign file");
  campaign->add_option("--campaign", campaign_path, "campaign JSON file")->required();
  campaign->add_option("--format", format, "json|csv|markdown");
  campaign->add_option("--out", out_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (entropy->parsed())
    return cmd_entropy(spec_path, method, renyi_p, seed, samples, out_path);
  if (check->parsed()) return cmd_check(check_id, spec_path, params, seed, tol, out_path);
  if (rate->parsed()) return cmd_rate(model_path, n_max, out_path);
  if (convolve->parsed()) return cmd_convolve(spec_path, folds, kappa, out_path);
  if (mixture->parsed()) return cmd_mixture(mix_path, bounds, mc_samples, seed, out_path);
  if (chf->parsed()) return cmd_chf(spec_path, out_path);
  if (campaign->parsed()) return cmd_campaign(campaign_path, format, out_path);
  return 2;
}
