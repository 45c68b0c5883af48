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

#include "ce/inequalities.hpp"

#include <cmath>

namespace ce {

namespace {

constexpr double kEqTol = 1e-9;  // absolute equality detection threshold
constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

double scale_of(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

BoundCheck finish_one_sided(std::string id, std::string anchor, double lhs, double rhs,
                            double tol, double extra_tol, Json inputs) {
  BoundCheck c;
  c.check_id = std::move(id);
  c.anchor = std::move(anchor);
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = rhs - lhs;
  c.tol = tol;
  c.inputs = std::move(inputs);
  const double tol_abs = tol * scale_of(lhs, rhs) + extra_tol;
  if (std::abs(c.slack) <= kEqTol && extra_tol <= kEqTol)
    c.verdict = BoundCheck::Verdict::equality;
  else
    c.verdict = c.slack >= -tol_abs ? BoundCheck::Verdict::pass : BoundCheck::Verdict::fail;
  return c;
}

BoundCheck finish_window(std::string id, std::string anchor, double lower, double value,
                         double upper, double tol, double extra_tol, Json inputs) {
  inputs["lower"] = lower;
  inputs["value"] = value;
  inputs["upper"] = upper;
  const double s_lo = value - lower;
  const double s_hi = upper - value;
  double lhs, rhs;
  if (s_lo <= s_hi) {
    lhs = lower;
    rhs = value;
  } else {
    lhs = value;
    rhs = upper;
  }
  BoundCheck c = finish_one_sided(std::move(id), std::move(anchor), lhs, rhs, tol,
                                  extra_tol, std::move(inputs));
  return c;
}

double beta_of(const DensitySpec& spec) {
  switch (spec.family()) {
    case DensitySpec::Family::pareto_mv: return spec.beta();
    case DensitySpec::Family::cauchy: return 2.0;
    case DensitySpec::Family::potential:
      if (!spec.potential_is_log_concave()) return spec.beta();
      break;
    default: break;
  }
  raise(errc::precondition_violated,
        "check requires a density of the form phi^{-beta} with convex phi");
}

void require_log_concave(const DensitySpec& spec, std::uint64_t seed) {
  if (!spec.is_log_concave())
    raise(errc::precondition_violated, "check requires a log-concave density");
  // claimed log-concavity of a potential spec is verified empirically
  if (spec.family() == DensitySpec::Family::potential) {
    const KappaReport rep = spec.kappa_classify(0.0, 256, seed);
    if (!rep.pass)
      raise(errc::precondition_violated,
            "potential spec failed the empirical log-concavity test");
  }
}

double shannon(const DensitySpec& spec, double* unc) {
  const Estimate h = entropy_auto(spec);
  if (unc) *unc = h.uncertainty;
  return h.value;
}

double renyi_value(const DensitySpec& spec, double p, double* unc) {
  if (p == 1.0) return shannon(spec, unc);
  const Estimate h = renyi_auto(spec, p);
  if (unc) *unc = h.uncertainty;
  return h.value;
}

std::function<double(double)> curve_int_pow(const DensitySpec& chart_spec,
                                            const std::function<double(const VectorXd&)>& f,
                                            double sign) {
  // p -> int_Omega f(x)^{sign * p} dx over the given support chart
  return [&chart_spec, f, sign](double p) {
    const Chart ch = chart_spec.chart();
    const int n = chart_spec.dim();
    quad::Options opt;
    // pure relative tolerance: the curve spans many orders of magnitude in p
    opt.abs_tol = 1e-300;
    opt.rel_tol = 1e-10;
    opt.max_evals = 3'000'000;
    const auto g = [&f, &ch, n, p, sign](const double* u) {
      std::vector<double> xb(n);
      const double jac = ch.map(u, xb.data());
      const VectorXd x = Eigen::Map<const VectorXd>(xb.data(), n);
      const double v = f(x);
      if (!(v > 0.0)) return 0.0;
      return std::exp(sign * p * std::log(v)) * jac;
    };
    const quad::Result r = quad::integrate(g, ch.lo, ch.hi, opt);
    if (!(r.value > 0.0))
      raise(errc::evaluation_failure, "curve integral did not evaluate to a positive value");
    if (!r.converged && r.error > 1e-7 * r.value)
      raise(errc::evaluation_failure, "curve integral did not converge");
    return r.value;
  };
}

}  // namespace

const char* verdict_name(BoundCheck::Verdict v) {
  switch (v) {
    case BoundCheck::Verdict::pass: return "pass";
    case BoundCheck::Verdict::fail: return "fail";
    case BoundCheck::Verdict::equality: return "equality";
  }
  return "unknown";
}

const std::vector<CheckDef>& check_catalog() {
  static const std::vector<CheckDef> defs = {
      {"SHANNON_LO", "h(X)/n >= log ||f||^{-1/n} for any density",
       false, false, false, false, false, ""},
      {"SHANNON_UP", "h(X)/n <= 1 + log ||f||^{-1/n} for log-concave f",
       true, false, false, false, false, ""},
      {"GAUSS_WINDOW",
       "h(Z)/n - 1/2 <= h(X)/n <= h(Z)/n + 1/2 for the max-density-matched Gaussian Z",
       true, false, false, false, false, ""},
      {"RENYI_UP", "h_p(X)/n <= (log p)/(p-1) + log ||f||^{-1/n} for log-concave f",
       true, false, false, false, false, "p > 1"},
      {"RENYI_COMPARE", "h_p(X)/n <= (log p)/(p-1) + h_q(X)/n for log-concave f",
       true, false, false, false, false, "p >= 1, q in [1, inf]"},
      {"KCONC_UP", "h(X) + log ||f|| <= beta * sum_{i=1..n} 1/(beta-i)",
       false, true, false, false, false, ""},
      {"RENYI_CVX",
       "0 <= h_p(X)/n - log ||f||^{-1/n} <= log[prod (beta p - i)/(beta - i)]/(p-1); "
       "with q: h_p/n - h_q/n <= sum log(1 + beta (p-1)/(beta-i))/(p-1)",
       false, true, false, false, false, "p > 1, optional q > p"},
      {"ONED_SIGMA", "sigma/sqrt(2) < 1/||f|| <= sqrt(12) sigma for 1-d log-concave f",
       true, false, true, true, false, ""},
      {"MED_MAX", "max f <= 2 f(median) for 1-d log-concave f",
       true, false, true, false, false, ""},
      {"ISO_LB", "L_f^2 >= omega_n^{-2/n} / (n+2)",
       false, false, false, true, false, ""},
      {"D_ISO",
       "D(f)/n <= log(sqrt(2 pi e) L_f); log(sqrt(2 pi / e) L_f) <= D(f)/n for log-concave f",
       false, false, false, true, false, ""},
      {"FRADELIZI", "h(X) in [log f(mean)^{-1} - n, log f(mode)^{-1} + n] for log-concave f",
       true, false, false, true, false, ""},
      {"BORELL_LC", "p -> C(n+p,n) int f^p is log-concave on p > 0 for concave f on a body",
       false, false, false, false, true, "function, p_min, p_max, points"},
      {"REBORELL_LC", "p -> C(p-1,n) int phi^{-p} is log-concave on p > n+1 for convex phi",
       false, true, false, false, false, "p_min, p_max, points"},
      {"BERWALD",
       "(C(n+q,n)/|Omega|)^{1/q} ||f||_q <= (C(n+p,n)/|Omega|)^{1/p} ||f||_p for concave f",
       false, false, false, false, true, "p < q, function"},
      {"HENSLEY_BALL",
       "int rho(||f||^{1/n} |x-c|) f dx is minimized by the uniform centered ball",
       false, false, false, true, false, "rho = t2 | indicator(r)"},
  };
  return defs;
}

double kconc_upper_bound(int n, double beta) {
  if (n < 1) raise(errc::invalid_argument, "dimension must be positive");
  if (!(beta > n)) raise(errc::beta_too_small, "bound requires beta > n");
  double s = 0.0;
  for (int i = 1; i <= n; ++i) s += 1.0 / (beta - i);
  return beta * s;
}

double beta_regime_bound(int n, double beta, double beta0, bool additive) {
  if (n < 1) raise(errc::invalid_argument, "dimension must be positive");
  if (additive) {
    if (!(beta0 >= 1.0)) raise(errc::regime_violated, "additive regime needs beta0 >= 1");
    if (n < 2) raise(errc::regime_violated, "additive regime constant is defined for n >= 2");
    if (beta < beta0 + n - 1e-12)
      raise(errc::regime_violated, "additive regime needs beta >= beta0 + n");
    return 1.0 / (n - 1.0) + (1.0 + beta0 / n) * std::log1p((n - 1.0) / beta0);
  }
  if (!(beta0 > 1.0)) raise(errc::regime_violated, "multiplicative regime needs beta0 > 1");
  if (beta < beta0 * n - 1e-12 || beta < n + 1.0 - 1e-12)
    raise(errc::regime_violated, "multiplicative regime needs beta >= max(beta0 n, n+1)");
  return beta0 / (beta0 - 1.0);
}

std::pair<double, double> iso_lower_constant(int n) {
  const double omega = unit_ball_volume(n);
  const double finite = std::exp(-2.0 / n * std::log(omega)) / (n + 2.0);
  return {finite, 1.0 / (2.0 * M_PI * M_E)};
}

std::vector<double> log_spaced_grid(double lo, double hi, int points) {
  if (!(hi > lo) || !(lo > 0.0) || points < 3)
    raise(errc::invalid_argument, "bad grid request");
  std::vector<double> g(points);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < points; ++i)
    g[i] = std::exp(llo + (lhi - llo) * i / (points - 1.0));
  return g;
}

BoundCheck logconcavity_in_p(const std::string& check_id, const std::string& anchor,
                             const std::function<double(double)>& curve,
                             const std::vector<double>& grid, double tol, double eq_tol) {
  if (grid.size() < 3) raise(errc::invalid_argument, "grid needs at least 3 points");
  std::vector<double> lc(grid.size());
  double lc_scale = 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = curve(grid[i]);
    if (!(v > 0.0) || !std::isfinite(v))
      raise(errc::evaluation_failure, "curve must be positive and finite on the grid");
    lc[i] = std::log(v);
    lc_scale = std::max(lc_scale, std::abs(lc[i]));
  }
  double max_dev = -kInf;
  double min_dev = kInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double mid = 0.5 * (grid[i] + grid[j]);
      const double vm = curve(mid);
      if (!(vm > 0.0)) raise(errc::evaluation_failure, "curve must be positive at midpoints");
      const double d = 0.5 * (lc[i] + lc[j]) - std::log(vm);
      max_dev = std::max(max_dev, d);
      min_dev = std::min(min_dev, d);
    }
  }
  Json inputs;
  inputs["grid_min"] = grid.front();
  inputs["grid_max"] = grid.back();
  inputs["grid_points"] = grid.size();
  inputs["max_midpoint_deviation"] = max_dev;
  BoundCheck c;
  c.check_id = check_id;
  c.anchor = anchor;
  c.lhs = max_dev;
  c.rhs = 0.0;
  c.slack = -max_dev;
  c.tol = tol;
  c.inputs = std::move(inputs);
  const double tol_abs = tol * lc_scale;
  if (std::max(std::abs(max_dev), std::abs(min_dev)) <= eq_tol)
    c.verdict = BoundCheck::Verdict::equality;
  else if (max_dev <= tol_abs)
    c.verdict = BoundCheck::Verdict::pass;
  else
    c.verdict = BoundCheck::Verdict::fail;
  return c;
}

std::function<double(const VectorXd&)> concave_test_function(const std::string& name,
                                                             const Body& body) {
  const VectorXd c = body.center;
  if (name == "one") return [](const VectorXd&) { return 1.0; };
  if (name == "linear") {
    if (body.kind != Body::Kind::simplex)
      raise(errc::invalid_argument, "linear is positive on a simplex only");
    return [c](const VectorXd& x) { return (x - c).sum(); };
  }
  if (name == "linear_complement") {
    if (body.kind != Body::Kind::simplex)
      raise(errc::invalid_argument, "linear_complement runs on a simplex");
    const double s = body.scale;
    return [c, s](const VectorXd& x) { return s - (x - c).sum(); };
  }
  if (name == "tent") {
    if (body.kind != Body::Kind::cube || body.n != 1)
      raise(errc::invalid_argument, "tent runs on a 1-d cube");
    const double half = 0.5 * body.side;
    const double c0 = c[0];
    return [c0, half](const VectorXd& x) { return 1.0 - std::abs(x[0] - c0) / half; };
  }
  if (name == "bump") {
    if (body.kind != Body::Kind::cube || body.n != 1)
      raise(errc::invalid_argument, "bump runs on a 1-d cube");
    const double lo = c[0] - 0.5 * body.side;
    const double w = body.side;
    return [lo, w](const VectorXd& x) {
      const double y = (x[0] - lo) / w;
      return y > 0.0 && y < 1.0 ? std::sqrt(y * (1.0 - y)) : 0.0;
    };
  }
  raise(errc::invalid_argument, "unknown test function '" + name + "'");
}

BoundCheck hensley_ball_check(const DensitySpec& spec, const Json& rho_params,
                              std::uint64_t seed, double tol) {
  const int n = spec.dim();
  const std::string rho = rho_params.value("rho", "t2");
  const bool centered = rho_params.value("centered", true);
  const double maxd = spec.max_density();
  const double rn2 = std::exp(-2.0 / n * std::log(unit_ball_volume(n)));
  const auto mom = spec.moments();
  const VectorXd about = centered ? mom.mean : VectorXd::Zero(n);
  const std::string anchor =
      "int rho(||f||^{1/n} |x-c|) f dx is minimized by the uniform centered ball";

  Json inputs;
  inputs["rho"] = rho;
  inputs["centered"] = centered;
  if (rho == "t2") {
    const double second_moment =
        mom.covariance.trace() + (mom.mean - about).squaredNorm();
    const double rhs = std::exp(2.0 / n * std::log(maxd)) * second_moment;
    const double lhs = n * rn2 / (n + 2.0);
    return finish_one_sided("HENSLEY_BALL", anchor, lhs, rhs, tol, 0.0, std::move(inputs));
  }
  if (rho == "indicator") {
    const double r = rho_params.value("r", 0.5);
    if (!(r > 0.0)) raise(errc::invalid_argument, "indicator radius must be positive");
    const double lhs = 1.0 - std::min(unit_ball_volume(n) * std::pow(r, n), 1.0);
    const int samples = rho_params.value("mc_samples", 20000);
    constexpr int kBatches = 16;
    Rng base(seed);
    std::vector<double> means;
    const double thresh = r * std::exp(-std::log(maxd) / n);
    for (int b = 0; b < kBatches; ++b) {
      Rng rng = base.substream(b);
      int hits = 0;
      const int per = std::max(1, samples / kBatches);
      for (int i = 0; i < per; ++i) {
        const VectorXd x = spec.sample_one(rng);
        if ((x - about).norm() > thresh) ++hits;
      }
      means.push_back(static_cast<double>(hits) / per);
    }
    const BatchStats st = batch_stats(means);
    inputs["r"] = r;
    inputs["mc_stderr"] = st.stderr_;
    return finish_one_sided("HENSLEY_BALL", anchor, lhs, st.mean, tol, 3.0 * st.stderr_,
                            std::move(inputs));
  }
  raise(errc::invalid_argument, "rho must be 't2' or 'indicator'");
}

namespace {

BoundCheck check_norm_logconcavity(const CheckDef& def, const DensitySpec& spec,
                                   const Json& params, double tol) {
  const int n = spec.dim();
  if (def.id == "BORELL_LC") {
    if (spec.family() != DensitySpec::Family::uniform_body)
      raise(errc::precondition_violated, "BORELL_LC runs on a uniform body spec");
    const std::string fname = params.value("function", "one");
    const auto f = concave_test_function(fname, spec.body());
    const double p_min = params.value("p_min", 0.5);
    const double p_max = params.value("p_max", 8.0);
    const int points = params.value("points", 17);
    const auto raw = curve_int_pow(spec, f, +1.0);
    const auto curve = [n, &raw](double p) {
      return std::exp(log_rising_product(p, n) - std::lgamma(n + 1.0)) * raw(p);
    };
    BoundCheck c = logconcavity_in_p(def.id, def.anchor, curve,
                                     log_spaced_grid(p_min, p_max, points), tol);
    c.inputs["function"] = fname;
    return c;
  }
  // REBORELL_LC
  const double beta = beta_of(spec);
  (void)beta;
  std::function<double(const VectorXd&)> phi;
  switch (spec.family()) {
    case DensitySpec::Family::pareto_mv: {
      const double a = spec.pareto_a();
      phi = [a](const VectorXd& x) { return a + x.sum(); };
      break;
    }
    case DensitySpec::Family::cauchy: {
      const double s = spec.cauchy_scale();
      phi = [s](const VectorXd& x) {
        const double t = x[0] / s;
        return std::sqrt(M_PI * s * (1.0 + t * t));
      };
      break;
    }
    case DensitySpec::Family::potential: {
      const Potential& pot = spec.potential();
      phi = [&pot](const VectorXd& x) { return pot(x); };
      break;
    }
    default:
      raise(errc::precondition_violated, "REBORELL_LC needs a phi^{-beta} spec");
  }
  const double p_min = params.value("p_min", n + 1.5);
  const double p_max = params.value("p_max", n + 25.0);
  const int points = params.value("points", 17);
  // the integration chart must resolve the slowest decay on the grid, which
  // is set by p_min rather than by the spec's own exponent
  const DensitySpec chart_donor =
      spec.family() == DensitySpec::Family::pareto_mv
          ? DensitySpec::pareto(n, p_min, spec.pareto_a())
          : spec;
  const auto raw = curve_int_pow(chart_donor, phi, -1.0);
  const auto curve = [n, &raw](double p) {
    return std::exp(log_falling_product(p, n) - std::lgamma(n + 1.0)) * raw(p);
  };
  return logconcavity_in_p(def.id, def.anchor, curve,
                           log_spaced_grid(p_min, p_max, points), tol);
}

BoundCheck check_berwald(const CheckDef& def, const DensitySpec& spec, const Json& params,
                         double tol) {
  if (spec.family() != DensitySpec::Family::uniform_body)
    raise(errc::precondition_violated, "BERWALD runs on a uniform body spec");
  const int n = spec.dim();
  const double p = params.value("p", 1.0);
  const double q = params.value("q", 2.0);
  if (!(0.0 < p && p < q)) raise(errc::invalid_argument, "needs 0 < p < q");
  // the sharp default on a simplex is the cone function; other bodies get
  // the constant one
  std::string fallback = "one";
  if (spec.body().kind == Body::Kind::simplex)
    fallback = n == 1 ? "linear" : "linear_complement";
  const std::string fname = params.value("function", fallback);
  const auto f = concave_test_function(fname, spec.body());
  const double vol = spec.body().volume();
  const auto raw = curve_int_pow(spec, f, +1.0);
  const auto norm = [n, vol, &raw](double r) {
    const double v = std::exp(log_rising_product(r, n) - std::lgamma(n + 1.0)) / vol * raw(r);
    return std::pow(v, 1.0 / r);
  };
  const double np = norm(p);
  const double nq = norm(q);
  Json inputs;
  inputs["p"] = p;
  inputs["q"] = q;
  inputs["function"] = fname;
  return finish_one_sided(def.id, def.anchor, nq, np, tol, 0.0, std::move(inputs));
}

double median_by_cdf(const DensitySpec& spec) {
  const Chart ch = spec.chart();
  const auto xat = [&ch](double u) {
    double x;
    ch.map(&u, &x);
    return x;
  };
  const double A = xat(ch.lo[0]);
  const double B = xat(ch.hi[0]);
  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-10;
  const auto pdf1 = [&spec](double t) {
    VectorXd w(1);
    w[0] = t;
    return spec.pdf(w);
  };
  const auto cdf = [&pdf1, A, &opt](double x) {
    return quad::integrate_1d(pdf1, A, x, opt).value;
  };
  return quad::find_root([&cdf](double x) { return cdf(x) - 0.5; }, A, B,
                         1e-11 * (std::abs(A) + std::abs(B) + 1.0));
}

}  // namespace

BoundCheck run_check(const std::string& check_id, const DensitySpec& spec, const Json& params,
                     std::uint64_t seed, double tol) {
  const CheckDef* def = nullptr;
  for (const auto& d : check_catalog())
    if (d.id == check_id) def = &d;
  if (!def) raise(errc::invalid_argument, "unknown check id '" + check_id + "'");

  const int n = spec.dim();
  if (def->needs_log_concave) require_log_concave(spec, seed);
  if (def->needs_one_dim && n != 1)
    raise(errc::precondition_violated, def->id + " needs a one-dimensional spec");

  double beta = 0.0;
  if (def->needs_beta_form) {
    beta = beta_of(spec);
    if (beta < n + 1.0 - 1e-12)
      raise(errc::precondition_violated,
            def->id + " needs beta >= n+1; the range n < beta < n+1 is not covered");
  }

  const std::string& id = def->id;

  if (id == "BORELL_LC" || id == "REBORELL_LC")
    return check_norm_logconcavity(*def, spec, params, tol);
  if (id == "BERWALD") return check_berwald(*def, spec, params, tol);
  if (id == "HENSLEY_BALL") return hensley_ball_check(spec, params, seed, tol);

  const double maxd = spec.max_density();
  const double log_inv_max_per_n = -std::log(maxd) / n;

  if (id == "SHANNON_LO") {
    double unc = 0.0;
    const double h = shannon(spec, &unc);
    Json inputs;
    inputs["h"] = h;
    inputs["max_density"] = maxd;
    return finish_one_sided(id, def->anchor, log_inv_max_per_n, h / n, tol, 3.0 * unc / n,
                            std::move(inputs));
  }
  if (id == "SHANNON_UP") {
    double unc = 0.0;
    const double h = shannon(spec, &unc);
    Json inputs;
    inputs["h"] = h;
    inputs["max_density"] = maxd;
    return finish_one_sided(id, def->anchor, h / n, 1.0 + log_inv_max_per_n, tol,
                            3.0 * unc / n, std::move(inputs));
  }
  if (id == "GAUSS_WINDOW") {
    double unc = 0.0;
    const double h = shannon(spec, &unc);
    Json inputs;
    inputs["h_matched_gaussian_per_n"] = 0.5 + log_inv_max_per_n;
    return finish_window(id, def->anchor, log_inv_max_per_n, h / n,
                         1.0 + log_inv_max_per_n, tol, 3.0 * unc / n, std::move(inputs));
  }
  if (id == "RENYI_UP") {
    const double p = params.value("p", 2.0);
    if (!(p > 1.0)) raise(errc::invalid_argument, "RENYI_UP needs p > 1");
    double unc = 0.0;
    const double hp = renyi_value(spec, p, &unc);
    Json inputs;
    inputs["p"] = p;
    inputs["h_p"] = hp;
    return finish_one_sided(id, def->anchor, hp / n,
                            std::log(p) / (p - 1.0) + log_inv_max_per_n, tol, 3.0 * unc / n,
                            std::move(inputs));
  }
  if (id == "RENYI_COMPARE") {
    const double p = params.value("p", 2.0);
    double q = kInf;
    if (params.contains("q"))
      q = params["q"].is_string() ? kInf : params["q"].get<double>();
    if (!(p >= 1.0) || !(q >= 1.0))
      raise(errc::invalid_argument, "RENYI_COMPARE needs p, q >= 1");
    double unc_p = 0.0, unc_q = 0.0;
    const double hp = renyi_value(spec, p, &unc_p);
    const double hq = std::isinf(q) ? -std::log(maxd) : renyi_value(spec, q, &unc_q);
    const double coeff = p == 1.0 ? 1.0 : std::log(p) / (p - 1.0);
    Json inputs;
    inputs["p"] = p;
    inputs["q"] = std::isinf(q) ? Json("inf") : Json(q);
    return finish_one_sided(id, def->anchor, hp / n, coeff + hq / n, tol,
                            3.0 * (unc_p + unc_q) / n, std::move(inputs));
  }
  if (id == "KCONC_UP") {
    double unc = 0.0;
    const double h = shannon(spec, &unc);
    Json inputs;
    inputs["beta"] = beta;
    inputs["h"] = h;
    return finish_one_sided(id, def->anchor, h + std::log(maxd), kconc_upper_bound(n, beta),
                            tol, 3.0 * unc, std::move(inputs));
  }
  if (id == "RENYI_CVX") {
    const double p = params.value("p", 2.0);
    if (!(p > 1.0)) raise(errc::invalid_argument, "RENYI_CVX needs p > 1");
    double unc = 0.0;
    const double hp = renyi_value(spec, p, &unc);
    Json inputs;
    inputs["beta"] = beta;
    inputs["p"] = p;
    if (params.contains("q")) {
      const double q = params["q"].is_string() ? kInf : params["q"].get<double>();
      if (!(q > p)) raise(errc::invalid_argument, "RENYI_CVX comparison needs q > p");
      double unc_q = 0.0;
      const double hq = std::isinf(q) ? -std::log(maxd) : renyi_value(spec, q, &unc_q);
      double ub = 0.0;
      for (int i = 1; i <= n; ++i) ub += std::log1p(beta * (p - 1.0) / (beta - i));
      ub /= (p - 1.0);
      inputs["q"] = std::isinf(q) ? Json("inf") : Json(q);
      return finish_window(id, def->anchor, 0.0, (hp - hq) / n, ub, tol,
                           3.0 * (unc + unc_q) / n, std::move(inputs));
    }
    const double ub =
        (log_falling_product(p * beta, n) - log_falling_product(beta, n)) / (p - 1.0);
    return finish_window(id, def->anchor, 0.0, hp / n - log_inv_max_per_n, ub, tol,
                         3.0 * unc / n, std::move(inputs));
  }
  if (id == "ONED_SIGMA") {
    const auto mom = spec.moments();
    const double sigma = std::sqrt(mom.covariance(0, 0));
    Json inputs;
    inputs["sigma"] = sigma;
    return finish_window(id, def->anchor, sigma / std::sqrt(2.0), 1.0 / maxd,
                         std::sqrt(12.0) * sigma, tol, 0.0, std::move(inputs));
  }
  if (id == "MED_MAX") {
    const double m = median_by_cdf(spec);
    VectorXd mv(1);
    mv[0] = m;
    const double fm = spec.pdf(mv);
    Json inputs;
    inputs["median"] = m;
    inputs["f_median"] = fm;
    return finish_one_sided(id, def->anchor, maxd, 2.0 * fm, tol, 0.0, std::move(inputs));
  }
  if (id == "ISO_LB") {
    const double lf = isotropic_constant(spec);
    Json inputs;
    inputs["L_f"] = lf;
    return finish_one_sided(id, def->anchor, iso_lower_constant(n).first, lf * lf, tol, 0.0,
                            std::move(inputs));
  }
  if (id == "D_ISO") {
    const Estimate d = relative_entropy_to_gaussian(spec);
    const double lf = isotropic_constant(spec);
    const double upper = 0.5 * (kLogTwoPi + 1.0) + std::log(lf);
    Json inputs;
    inputs["L_f"] = lf;
    inputs["D"] = d.value;
    if (spec.is_log_concave()) {
      const double lower = 0.5 * (kLogTwoPi - 1.0) + std::log(lf);
      return finish_window(id, def->anchor, lower, d.value / n, upper, tol,
                           3.0 * d.uncertainty / n, std::move(inputs));
    }
    return finish_one_sided(id, def->anchor, d.value / n, upper, tol,
                            3.0 * d.uncertainty / n, std::move(inputs));
  }
  if (id == "FRADELIZI") {
    const auto mom = spec.moments();
    const double fmean = spec.pdf(mom.mean);
    if (!(fmean > 0.0))
      raise(errc::evaluation_failure, "density vanishes at its mean");
    double unc = 0.0;
    const double h = shannon(spec, &unc);
    Json inputs;
    inputs["f_mean"] = fmean;
    return finish_window(id, def->anchor, -std::log(fmean) - n, h, -std::log(maxd) + n, tol,
                         3.0 * unc, std::move(inputs));
  }
  raise(errc::internal, "check dispatch fell through for " + id);
}

}  // namespace ce
