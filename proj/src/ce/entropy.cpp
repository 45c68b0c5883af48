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

#include "ce/entropy.hpp"

#include <cmath>

namespace ce {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

double falling_sum_inverse(double beta, int n) {
  double s = 0.0;
  for (int i = 1; i <= n; ++i) s += 1.0 / (beta - i);
  return s;
}

}  // namespace

double gaussian_entropy(const MatrixXd& cov) {
  Eigen::LLT<MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    raise(errc::not_positive_definite, "covariance is not positive-definite");
  const int n = static_cast<int>(cov.rows());
  double logdet = 0.0;
  for (int i = 0; i < n; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  return 0.5 * (n * (kLogTwoPi + 1.0) + logdet);
}

Estimate entropy_closed(const DensitySpec& spec) {
  const int n = spec.dim();
  switch (spec.family()) {
    case DensitySpec::Family::gaussian:
      return closed_estimate(0.5 * (n * (kLogTwoPi + 1.0) + spec.gaussian_log_det()));
    case DensitySpec::Family::exponential_product:
      return closed_estimate(n - spec.rates().array().log().sum());
    case DensitySpec::Family::uniform_body:
      return closed_estimate(std::log(spec.body().volume()));
    case DensitySpec::Family::pareto_mv: {
      const double beta = spec.beta();
      const double a = spec.pareto_a();
      const double h = beta * falling_sum_inverse(beta, n) + n * std::log(a) -
                       log_falling_product(beta, n);
      return closed_estimate(h);
    }
    case DensitySpec::Family::cauchy:
      return closed_estimate(std::log(4.0 * M_PI * spec.cauchy_scale()));
    case DensitySpec::Family::stable_symmetric:
    case DensitySpec::Family::potential:
      raise(errc::no_closed_form,
            std::string("no closed-form entropy for family ") + spec.family_name());
  }
  raise(errc::internal, "unhandled family");
}

Estimate renyi_closed(const DensitySpec& spec, double p) {
  if (!(p > 0.0)) raise(errc::invalid_argument, "renyi order must be positive");
  if (p == 1.0) raise(errc::invalid_argument, "renyi order 1 is the Shannon path");
  const int n = spec.dim();
  const double coeff = std::log(p) / (p - 1.0);
  switch (spec.family()) {
    case DensitySpec::Family::gaussian:
      return closed_estimate(0.5 * (n * kLogTwoPi + spec.gaussian_log_det()) +
                             0.5 * n * coeff);
    case DensitySpec::Family::exponential_product:
      return closed_estimate(n * coeff - spec.rates().array().log().sum());
    case DensitySpec::Family::uniform_body:
      return closed_estimate(std::log(spec.body().volume()));
    case DensitySpec::Family::pareto_mv: {
      const double beta = spec.beta();
      const double a = spec.pareto_a();
      if (!(p * beta > n))
        raise(errc::divergent_integral, "int f^p diverges: p*beta <= n");
      const double log_zb = -(beta - n) * std::log(a) - log_falling_product(beta, n);
      const double log_zpb = -(p * beta - n) * std::log(a) - log_falling_product(p * beta, n);
      const double log_int = log_zpb - p * log_zb;
      return closed_estimate(log_int / (1.0 - p));
    }
    default:
      raise(errc::no_closed_form,
            std::string("no closed-form renyi entropy for family ") + spec.family_name());
  }
}

Estimate entropy_mc(const DensitySpec& spec, std::uint64_t seed, std::int64_t samples) {
  if (samples < 1) raise(errc::invalid_argument, "sample count must be >= 1");
  constexpr int kBatches = 16;
  const std::int64_t per_batch = std::max<std::int64_t>(1, samples / kBatches);
  Rng base(seed);
  std::vector<double> means;
  means.reserve(kBatches);
  for (int b = 0; b < kBatches; ++b) {
    Rng rng = base.substream(static_cast<std::uint64_t>(b));
    double acc = 0.0;
    for (std::int64_t i = 0; i < per_batch; ++i) {
      const VectorXd x = spec.sample_one(rng);
      acc += -spec.log_pdf(x);
    }
    means.push_back(acc / static_cast<double>(per_batch));
  }
  const BatchStats st = batch_stats(means);
  return Estimate{st.mean, st.stderr_, Method::monte_carlo, per_batch * kBatches};
}

Estimate entropy_quad(const DensitySpec& spec) {
  const int n = spec.dim();
  if (n > 3) raise(errc::dimension_too_high, "entropy_quad supports n <= 3");
  const Chart ch = spec.chart();
  quad::Options opt;
  opt.abs_tol = 1e-9;
  opt.rel_tol = 1e-8;
  opt.max_evals = n == 3 ? 6'000'000 : 2'000'000;
  const auto g = [&spec, &ch, n](const double* u) {
    std::vector<double> xb(n);
    const double jac = ch.map(u, xb.data());
    const VectorXd x = Eigen::Map<const VectorXd>(xb.data(), n);
    const double l = spec.log_pdf(x);
    if (!std::isfinite(l)) return 0.0;
    const double f = std::exp(l);
    return f > 0.0 ? -f * l * jac : 0.0;
  };
  const quad::Result r = quad::integrate(g, ch.lo, ch.hi, opt);
  if (!r.converged && r.error > 1e-4)
    raise(errc::non_convergence, "entropy quadrature stalled; partial value " +
                                     std::to_string(r.value) + " with error bound " +
                                     std::to_string(r.error));
  return Estimate{r.value, r.error, Method::quadrature, r.evals};
}

Estimate entropy_auto(const DensitySpec& spec) {
  switch (spec.family()) {
    case DensitySpec::Family::stable_symmetric:
    case DensitySpec::Family::potential:
      return entropy_quad(spec);
    default:
      return entropy_closed(spec);
  }
}

Estimate renyi_auto(const DensitySpec& spec, double p) {
  if (std::isinf(p)) return closed_estimate(-std::log(spec.max_density()));
  switch (spec.family()) {
    case DensitySpec::Family::gaussian:
    case DensitySpec::Family::exponential_product:
    case DensitySpec::Family::uniform_body:
    case DensitySpec::Family::pareto_mv:
      return renyi_closed(spec, p);
    default: {
      const int n = spec.dim();
      if (n > 3) raise(errc::dimension_too_high, "renyi quadrature supports n <= 3");
      if (!(p > 0.0) || p == 1.0) raise(errc::invalid_argument, "invalid renyi order");
      const Chart ch = spec.chart();
      quad::Options opt;
      opt.abs_tol = 1e-11;
      opt.rel_tol = 1e-9;
      opt.max_evals = 2'000'000;
      const auto g = [&spec, &ch, n, p](const double* u) {
        std::vector<double> xb(n);
        const double jac = ch.map(u, xb.data());
        const VectorXd x = Eigen::Map<const VectorXd>(xb.data(), n);
        const double l = spec.log_pdf(x);
        return std::isfinite(l) ? std::exp(p * l) * jac : 0.0;
      };
      const quad::Result r = quad::integrate(g, ch.lo, ch.hi, opt);
      if (!(r.value > 0.0)) raise(errc::divergent_integral, "int f^p did not evaluate");
      const double hp = std::log(r.value) / (1.0 - p);
      return Estimate{hp, r.error / r.value / std::abs(1.0 - p), Method::quadrature, r.evals};
    }
  }
}

double pareto_normalizer(int n, double beta, double a) {
  if (n < 1 || !(a > 0.0)) raise(errc::invalid_argument, "need n >= 1 and a > 0");
  if (!(beta > n)) raise(errc::beta_too_small, "Z_n(beta, a) is finite only for beta > n");
  return std::exp(-(beta - n) * std::log(a) - log_falling_product(beta, n));
}

double pareto_log_integral(int n, double beta, double a) {
  if (n < 1 || !(a > 0.0)) raise(errc::invalid_argument, "need n >= 1 and a > 0");
  if (!(beta > n)) raise(errc::beta_too_small, "L_n(beta, a) is finite only for beta > n");
  return pareto_normalizer(n, beta, a) * (std::log(a) + falling_sum_inverse(beta, n));
}

GaussFit gauss_fit(const DensitySpec& spec, GaussFit::MatchBy by) {
  GaussFit fit;
  fit.matched_by = by;
  const int n = spec.dim();
  if (by == GaussFit::MatchBy::covariance) {
    const auto mom = spec.moments();
    fit.mean = mom.mean;
    fit.covariance = mom.covariance;
    return fit;
  }
  // (2 pi sigma^2)^{n/2} = ||f||^{-1}
  const double sigma2 = std::exp(-2.0 / n * std::log(spec.max_density())) / (2.0 * M_PI);
  fit.mean = VectorXd::Zero(n);
  fit.covariance = sigma2 * MatrixXd::Identity(n, n);
  return fit;
}

Estimate relative_entropy_to_gaussian(const DensitySpec& spec) {
  const auto mom = spec.moments();
  const double hz = gaussian_entropy(mom.covariance);
  const Estimate hx = entropy_auto(spec);
  return Estimate{hz - hx.value, hx.uncertainty, hx.method, hx.detail};
}

double isotropic_constant(const DensitySpec& spec) {
  const int n = spec.dim();
  const auto mom = spec.moments();
  Eigen::LLT<MatrixXd> llt(mom.covariance);
  if (llt.info() != Eigen::Success)
    raise(errc::not_positive_definite, "covariance is not positive-definite");
  double logdet = 0.0;
  for (int i = 0; i < n; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  return std::exp(std::log(spec.max_density()) / n + logdet / (2.0 * n));
}

double gaussian_independence_distance(const MatrixXd& R) {
  const int n = static_cast<int>(R.rows());
  if (R.cols() != n || n < 1) raise(errc::invalid_argument, "covariance must be square");
  Eigen::LLT<MatrixXd> llt(0.5 * (R + R.transpose()));
  if (llt.info() != Eigen::Success)
    raise(errc::not_positive_definite, "covariance is singular or indefinite");
  double logdet = 0.0;
  for (int i = 0; i < n; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  double logdiag = 0.0;
  for (int i = 0; i < n; ++i) logdiag += std::log(R(i, i));
  return 0.5 * (logdiag - logdet);
}

}  // namespace ce
