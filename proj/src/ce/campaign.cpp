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

#include "ce/campaign.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace ce {

const char* library_version() { return "0.1.0"; }

Campaign campaign_from_json(const Json& j) {
  Campaign c;
  c.tol = j.value("tol", 1e-7);
  if (!j.contains("entries") || !j["entries"].is_array())
    raise(errc::parse_error, "campaign needs an 'entries' array");
  for (const auto& e : j["entries"]) {
    CampaignEntry entry;
    entry.id = e.value("id", "");
    entry.check = e.value("check", "");
    entry.op = e.value("op", "");
    if (entry.check.empty() == entry.op.empty())
      raise(errc::parse_error, "each entry needs exactly one of 'check' or 'op'");
    if (e.contains("spec")) entry.spec = e["spec"];
    if (e.contains("model")) entry.model = e["model"];
    if (e.contains("mix")) entry.mix = e["mix"];
    if (e.contains("params")) entry.params = e["params"];
    if (e.contains("args"))  // args and params are synonyms and merge
      for (auto it = e["args"].begin(); it != e["args"].end(); ++it)
        entry.params[it.key()] = it.value();
    entry.seed = e.value("seed", 1ULL);
    if (e.contains("expect")) {
      entry.expect = e["expect"].get<double>();
      entry.expect_tol = e.value("tol", 1e-9);
    }
    c.entries.push_back(std::move(entry));
  }
  return c;
}

Campaign campaign_from_json_text(const std::string& text) {
  return campaign_from_json(parse_json_text(text));
}

namespace {

const DensitySpec require_spec(const CampaignEntry& e) {
  if (e.spec.is_null()) raise(errc::invalid_argument, "entry needs a 'spec'");
  return spec_from_json(e.spec);
}

const SpectralModel require_model(const CampaignEntry& e) {
  if (e.model.is_null()) raise(errc::invalid_argument, "entry needs a 'model'");
  return model_from_json(e.model);
}

const MixtureSpec require_mix(const CampaignEntry& e) {
  if (e.mix.is_null()) raise(errc::invalid_argument, "entry needs a 'mix'");
  return mixture_from_json(e.mix);
}

Json value_result(double v) {
  Json r;
  r["kind"] = "value";
  r["value"] = v;
  return r;
}

Json estimate_result(const Estimate& est) {
  Json r;
  r["kind"] = "estimate";
  r["estimate"] = estimate_to_json(est);
  r["value"] = est.value;
  r["uncertainty"] = est.uncertainty;
  return r;
}

Json check_result(const BoundCheck& c) {
  Json r;
  r["kind"] = "check";
  r["check"] = bound_check_to_json(c);
  r["verdict"] = verdict_name(c.verdict);
  return r;
}

Json dispatch_op(const CampaignEntry& e, double tol) {
  const std::string& op = e.op;
  const Json& p = e.params;

  if (op == "entropy_closed") return estimate_result(entropy_closed(require_spec(e)));
  if (op == "entropy_quad") return estimate_result(entropy_quad(require_spec(e)));
  if (op == "entropy_mc")
    return estimate_result(
        entropy_mc(require_spec(e), e.seed, p.value("samples", 100000)));
  if (op == "renyi_closed")
    return estimate_result(renyi_closed(require_spec(e), p.at("p").get<double>()));
  if (op == "max_density") return value_result(require_spec(e).max_density());
  if (op == "pdf") {
    const DensitySpec spec = require_spec(e);
    if (!p.contains("x")) raise(errc::invalid_argument, "pdf needs params.x");
    VectorXd x(p["x"].size());
    for (std::size_t i = 0; i < p["x"].size(); ++i) x[i] = p["x"][i].get<double>();
    return value_result(spec.pdf(x));
  }
  if (op == "moments") {
    const auto mom = require_spec(e).moments();
    Json r;
    r["kind"] = "value";
    Json mean = Json::array();
    for (int i = 0; i < mom.mean.size(); ++i) mean.push_back(mom.mean[i]);
    r["mean"] = std::move(mean);
    Json cov = Json::array();
    for (int i = 0; i < mom.covariance.rows(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < mom.covariance.cols(); ++k) row.push_back(mom.covariance(i, k));
      cov.push_back(std::move(row));
    }
    r["cov"] = std::move(cov);
    r["sigma2"] = mom.sigma2;
    r["value"] = mom.sigma2;
    return r;
  }
  if (op == "kappa_classify") {
    const KappaReport rep = require_spec(e).kappa_classify(
        p.at("kappa").get<double>(), p.value("trials", 2000), e.seed);
    Json r;
    r["kind"] = "kappa";
    r["report"] = kappa_report_to_json(rep);
    r["value"] = rep.worst_violation;
    r["verdict"] = rep.pass ? "pass" : "fail";
    return r;
  }
  if (op == "chf_norm2") return estimate_result(chf_norm2(require_spec(e)));
  if (op == "plancherel_window") {
    const auto [lo, hi] = plancherel_window(require_spec(e));
    Json r;
    r["kind"] = "value";
    r["lower"] = lo;
    r["upper"] = hi;
    r["width"] = hi - lo;
    r["value"] = lo;
    return r;
  }
  if (op == "self_convolve_max") {
    std::optional<double> kappa;
    if (p.contains("kappa")) kappa = p["kappa"].get<double>();
    const ConvolutionResult res =
        self_convolve_max(require_spec(e), p.value("folds", 2), kappa);
    Json r;
    r["kind"] = "convolution";
    r["folds"] = res.folds;
    r["max_density"] = res.max_density;
    r["method"] = res.method;
    r["kappa"] = res.kappa;
    r["bound"] = res.bound;
    r["slack"] = res.slack;
    r["value"] = res.max_density;
    r["verdict"] = res.slack >= 0.0 ? "pass" : "fail";
    return r;
  }
  if (op == "isotropic_constant") return value_result(isotropic_constant(require_spec(e)));
  if (op == "relative_entropy_to_gaussian")
    return estimate_result(relative_entropy_to_gaussian(require_spec(e)));
  if (op == "gaussian_independence_distance") {
    if (!p.contains("cov")) raise(errc::invalid_argument, "needs params.cov");
    const Json& cj = p["cov"];
    MatrixXd R(cj.size(), cj.size());
    for (std::size_t i = 0; i < cj.size(); ++i)
      for (std::size_t k = 0; k < cj[i].size(); ++k) R(i, k) = cj[i][k].get<double>();
    return value_result(gaussian_independence_distance(R));
  }

  if (op == "szego_rate") {
    const SpectralModel m = require_model(e);
    Json r;
    r["kind"] = "value";
    r["value"] = szego_rate(m);
    r["unhalved_reading"] = szego_rate_unhalved(m);
    return r;
  }
  if (op == "toeplitz_block_entropy")
    return value_result(toeplitz_block_entropy(require_model(e), p.value("n", 256)));

  if (op == "mixture_bounds") {
    const auto [lo, hi] = mixture_bounds(require_mix(e));
    Json r;
    r["kind"] = "value";
    r["lower"] = lo;
    r["upper"] = hi;
    r["value"] = lo;
    return r;
  }
  if (op == "mixture_condition")
    return check_result(mixture_logconcavity_condition(require_mix(e), e.seed));
  if (op == "mixture_entropy_mc")
    return estimate_result(
        mixture_entropy_mc(require_mix(e), e.seed, p.value("samples", 20000)));

  if (op == "pareto_Z")
    return value_result(pareto_normalizer(p.at("n").get<int>(), p.at("beta").get<double>(),
                                          p.value("a", 1.0)));
  if (op == "pareto_L")
    return value_result(pareto_log_integral(p.at("n").get<int>(), p.at("beta").get<double>(),
                                            p.value("a", 1.0)));
  if (op == "kconc_upper_bound")
    return value_result(kconc_upper_bound(p.at("n").get<int>(), p.at("beta").get<double>()));
  if (op == "beta_regime_bound")
    return value_result(beta_regime_bound(p.at("n").get<int>(), p.at("beta").get<double>(),
                                          p.at("beta0").get<double>(),
                                          p.value("regime", "multiplicative") == "additive"));
  if (op == "iso_lower_constant") {
    const auto [fin, asym] = iso_lower_constant(p.at("n").get<int>());
    Json r;
    r["kind"] = "value";
    r["finite_n"] = fin;
    r["asymptotic"] = asym;
    r["value"] = p.value("which", "finite_n") == std::string("asymptotic") ? asym : fin;
    return r;
  }
  if (op == "junge_bound")
    return value_result(junge_bound(p.at("n").get<int>(), p.at("kappa").get<double>(),
                                    p.value("folds", 1)));
  if (op == "stable_kappa_upper")
    return value_result(stable_kappa_upper(p.at("alpha").get<double>(), p.value("n", 1)));
  if (op == "stable_chf_norm2")
    return value_result(stable_chf_norm2(p.at("alpha").get<double>()));
  if (op == "stable_h2") {
    const StableH2 h = stable_h2_identity(p.at("alpha").get<double>(), p.value("n", 1),
                                          p.at("f0").get<double>());
    Json r;
    r["kind"] = "value";
    r["h2"] = h.h2;
    r["lhs"] = h.lhs;
    r["rhs"] = h.rhs;
    r["value"] = h.h2;
    return r;
  }
  (void)tol;
  raise(errc::invalid_argument, "unknown op '" + op + "'");
}

Json run_entry_guarded(const CampaignEntry& e, double tol) {
  Json r;
  try {
    if (!e.check.empty()) {
      const DensitySpec spec = require_spec(e);
      r = check_result(run_check(e.check, spec, e.params, e.seed, tol));
    } else {
      r = dispatch_op(e, tol);
    }
  } catch (const Error& err) {
    r = Json::object();
    r["kind"] = "error";
    r["code"] = errc_name(err.code());
    r["error"] = err.what();
    r["verdict"] = "error";
  } catch (const std::exception& ex) {
    r = Json::object();
    r["kind"] = "error";
    r["code"] = errc_name(errc::internal);
    r["error"] = ex.what();
    r["verdict"] = "error";
  }
  // echo of what ran, in a stable position
  Json out;
  out["id"] = e.id;
  if (!e.check.empty()) out["check_id"] = e.check;
  if (!e.op.empty()) out["op"] = e.op;
  out["seed"] = e.seed;
  for (auto it = r.begin(); it != r.end(); ++it) out[it.key()] = it.value();

  if (e.expect && out["kind"] != "error") {
    const std::string field = e.params.value("field", "value");
    double got = kNaN;
    if (out.contains(field) && out[field].is_number())
      got = out[field].get<double>();
    else if (out.contains("check") && out["check"].contains(field))
      got = out["check"][field].get<double>();
    double unc = 0.0;
    if (out.contains("uncertainty")) unc = out["uncertainty"].get<double>();
    const double tol_eff = e.expect_tol + 3.0 * unc;
    out["expected"] = *e.expect;
    out["verdict"] = std::abs(got - *e.expect) <= tol_eff ? "pass" : "fail";
  } else if (!out.contains("verdict")) {
    out["verdict"] = "ok";
  }
  return out;
}

int thread_budget(std::size_t entries) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("CONVEX_ENTROPY_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return static_cast<int>(std::min<std::size_t>(hw, std::max<std::size_t>(entries, 1)));
}

}  // namespace

Json run_entry(const CampaignEntry& entry, double tol) {
  return run_entry_guarded(entry, tol);
}

Report run_campaign(const Campaign& campaign) {
  Report report;
  report.version = library_version();
  const auto t0 = std::chrono::steady_clock::now();

  const std::size_t n = campaign.entries.size();
  std::vector<Json> results(n);
  std::atomic<std::size_t> next{0};
  const int threads = thread_budget(n);
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      results[i] = run_entry_guarded(campaign.entries[i], campaign.tol);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (auto& r : results) {
    const std::string v = r.value("verdict", "ok");
    if (v == "fail")
      ++report.n_fail;
    else if (v == "error")
      ++report.n_error;
    else
      ++report.n_pass;
    report.entries.push_back(std::move(r));
  }
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

Json report_to_json(const Report& report) {
  Json j;
  j["tool"] = report.tool;
  j["version"] = report.version;
  j["wall_clock_seconds"] = report.wall_clock_seconds;
  Json counts;
  counts["pass"] = report.n_pass;
  counts["fail"] = report.n_fail;
  counts["error"] = report.n_error;
  counts["total"] = report.n_pass + report.n_fail + report.n_error;
  j["counts"] = std::move(counts);
  j["entries"] = report.entries;
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string num_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", j[key].get<double>());
  return buf;
}

}  // namespace

std::string render_report(const Json& report, const std::string& format) {
  if (format == "json") return dump_json(report, 2) + "\n";
  const Json& entries = report.contains("entries") ? report["entries"] : Json::array();

  std::vector<const Json*> checks, others;
  for (const auto& e : entries) {
    if (e.value("kind", "") == "check")
      checks.push_back(&e);
    else
      others.push_back(&e);
  }

  std::ostringstream out;
  if (format == "csv") {
    out << "check_id,anchor,lhs,rhs,slack,verdict\n";
    for (const Json* e : checks) {
      const Json& c = (*e)["check"];
      out << csv_field(c.value("check_id", "")) << ',' << csv_field(c.value("anchor", ""))
          << ',' << num_field(c, "lhs") << ',' << num_field(c, "rhs") << ','
          << num_field(c, "slack") << ',' << c.value("verdict", "") << '\n';
    }
    if (!others.empty()) {
      out << "\nid,op,value,uncertainty,method,expected,verdict\n";
      for (const Json* e : others) {
        std::string method;
        if (e->contains("estimate")) method = (*e)["estimate"].value("method", "");
        out << csv_field(e->value("id", "")) << ',' << csv_field(e->value("op", "")) << ','
            << num_field(*e, "value") << ',' << num_field(*e, "uncertainty") << ','
            << method << ',' << num_field(*e, "expected") << ',' << e->value("verdict", "")
            << '\n';
      }
    }
    return out.str();
  }
  if (format == "markdown") {
    if (!checks.empty()) {
      out << "| check_id | anchor | lhs | rhs | slack | verdict |\n";
      out << "|---|---|---|---|---|---|\n";
      for (const Json* e : checks) {
        const Json& c = (*e)["check"];
        out << "| " << c.value("check_id", "") << " | " << c.value("anchor", "") << " | "
            << num_field(c, "lhs") << " | " << num_field(c, "rhs") << " | "
            << num_field(c, "slack") << " | " << c.value("verdict", "") << " |\n";
      }
    }
    if (!others.empty()) {
      if (!checks.empty()) out << "\n";
      out << "| id | op | value | uncertainty | expected | verdict |\n";
      out << "|---|---|---|---|---|---|\n";
      for (const Json* e : others) {
        out << "| " << e->value("id", "") << " | " << e->value("op", "") << " | "
            << num_field(*e, "value") << " | " << num_field(*e, "uncertainty") << " | "
            << num_field(*e, "expected") << " | " << e->value("verdict", "") << " |\n";
      }
    }
    return out.str();
  }
  raise(errc::invalid_argument, "format must be json, csv or markdown");
}

}  // namespace ce
