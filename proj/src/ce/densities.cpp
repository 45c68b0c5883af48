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

#include "ce/densities.hpp"

#include <algorithm>
#include <cmath>

namespace ce {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

VectorXd zeros_or(const VectorXd& v, int n) {
  if (v.size() == 0) return VectorXd::Zero(n);
  if (v.size() != n) raise(errc::invalid_argument, "center has wrong dimension");
  return v;
}

MatrixXd chol_lower(const MatrixXd& m, const char* what) {
  Eigen::LLT<MatrixXd> llt(0.5 * (m + m.transpose()));
  if (llt.info() != Eigen::Success)
    raise(errc::not_positive_definite, std::string(what) + " is not positive-definite");
  return llt.matrixL();
}

}  // namespace

// ---------------------------------------------------------------- Body

Body make_ball(int n, double radius, VectorXd center) {
  if (n < 1 || !(radius > 0.0)) raise(errc::invalid_argument, "ball needs n >= 1, radius > 0");
  Body b;
  b.kind = Body::Kind::ball;
  b.n = n;
  b.radius = radius;
  b.center = zeros_or(center, n);
  return b;
}

Body make_cube(int n, double side, VectorXd center) {
  if (n < 1 || !(side > 0.0)) raise(errc::invalid_argument, "cube needs n >= 1, side > 0");
  Body b;
  b.kind = Body::Kind::cube;
  b.n = n;
  b.side = side;
  b.center = zeros_or(center, n);
  return b;
}

Body make_simplex(int n, double scale, VectorXd center) {
  if (n < 1 || !(scale > 0.0)) raise(errc::invalid_argument, "simplex needs n >= 1, scale > 0");
  Body b;
  b.kind = Body::Kind::simplex;
  b.n = n;
  b.scale = scale;
  b.center = zeros_or(center, n);
  return b;
}

Body make_ellipsoid(MatrixXd shape, VectorXd center) {
  const int n = static_cast<int>(shape.rows());
  if (n < 1 || shape.cols() != n) raise(errc::invalid_argument, "ellipsoid shape must be square");
  Body b;
  b.kind = Body::Kind::ellipsoid;
  b.n = n;
  b.shape = 0.5 * (shape + shape.transpose());
  chol_lower(b.shape, "ellipsoid shape");  // validates
  b.center = zeros_or(center, n);
  return b;
}

double Body::volume() const {
  switch (kind) {
    case Kind::ball: return unit_ball_volume(n) * std::pow(radius, n);
    case Kind::cube: return std::pow(side, n);
    case Kind::simplex: return std::pow(scale, n) / std::tgamma(n + 1.0);
    case Kind::ellipsoid: {
      const MatrixXd L = chol_lower(shape, "ellipsoid shape");
      double det_sqrt = 1.0;
      for (int i = 0; i < n; ++i) det_sqrt *= L(i, i);
      return unit_ball_volume(n) * det_sqrt;
    }
  }
  raise(errc::internal, "unhandled body kind");
}

bool Body::contains(const VectorXd& x) const {
  if (x.size() != n) raise(errc::invalid_argument, "point has wrong dimension");
  const VectorXd y = x - center;
  switch (kind) {
    case Kind::ball: return y.norm() <= radius;
    case Kind::cube: return (y.array().abs() <= 0.5 * side).all();
    case Kind::simplex: return (y.array() >= 0.0).all() && y.sum() <= scale;
    case Kind::ellipsoid: {
      Eigen::LLT<MatrixXd> llt(shape);
      return llt.matrixL().solve(y).squaredNorm() <= 1.0;
    }
  }
  raise(errc::internal, "unhandled body kind");
}

VectorXd Body::mean() const {
  if (kind == Kind::simplex)
    return center.array() + scale / (n + 1.0);
  return center;
}

MatrixXd Body::covariance() const {
  switch (kind) {
    case Kind::ball:
      return radius * radius / (n + 2.0) * MatrixXd::Identity(n, n);
    case Kind::cube:
      return side * side / 12.0 * MatrixXd::Identity(n, n);
    case Kind::ellipsoid:
      return shape / (n + 2.0);
    case Kind::simplex: {
      const double c2 = scale * scale / ((n + 1.0) * (n + 1.0) * (n + 2.0));
      MatrixXd m = -c2 * MatrixXd::Ones(n, n);
      m.diagonal().array() = c2 * n;
      return m;
    }
  }
  raise(errc::internal, "unhandled body kind");
}

VectorXd Body::sample(Rng& rng) const {
  switch (kind) {
    case Kind::cube: {
      VectorXd x(n);
      for (int i = 0; i < n; ++i) x[i] = center[i] + side * (rng.next_double() - 0.5);
      return x;
    }
    case Kind::ball: {
      VectorXd z(n);
      for (int i = 0; i < n; ++i) z[i] = rng.normal();
      const double r = radius * std::pow(rng.next_double(), 1.0 / n);
      const double zn = z.norm();
      if (zn == 0.0) return center;
      return center + (r / zn) * z;
    }
    case Kind::ellipsoid: {
      const MatrixXd L = chol_lower(shape, "ellipsoid shape");
      VectorXd z(n);
      for (int i = 0; i < n; ++i) z[i] = rng.normal();
      const double r = std::pow(rng.next_double(), 1.0 / n);
      const double zn = z.norm();
      if (zn == 0.0) return center;
      return center + L * ((r / zn) * z);
    }
    case Kind::simplex: {
      // exponential spacings
      VectorXd e(n + 1);
      for (int i = 0; i <= n; ++i) e[i] = rng.exponential(1.0);
      const double s = e.sum();
      VectorXd x(n);
      for (int i = 0; i < n; ++i) x[i] = center[i] + scale * e[i] / s;
      return x;
    }
  }
  raise(errc::internal, "unhandled body kind");
}

void Body::bounding_box(VectorXd& lo, VectorXd& hi) const {
  lo.resize(n);
  hi.resize(n);
  switch (kind) {
    case Kind::ball:
      lo = center.array() - radius;
      hi = center.array() + radius;
      return;
    case Kind::cube:
      lo = center.array() - 0.5 * side;
      hi = center.array() + 0.5 * side;
      return;
    case Kind::simplex:
      lo = center;
      hi = center.array() + scale;
      return;
    case Kind::ellipsoid: {
      const VectorXd d = shape.diagonal().array().sqrt();
      lo = center - d;
      hi = center + d;
      return;
    }
  }
  raise(errc::internal, "unhandled body kind");
}

// ---------------------------------------------------------------- Support

bool Support::contains(const VectorXd& x) const {
  if (x.size() != n) raise(errc::invalid_argument, "point has wrong dimension");
  switch (kind) {
    case Kind::real_line: return true;
    case Kind::orthant: return (x.array() >= 0.0).all();
    case Kind::box: return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
  }
  raise(errc::internal, "unhandled support kind");
}

// ---------------------------------------------------------------- Potential

double Potential::operator()(const VectorXd& x) const {
  if (kind == "affine") return c0 + coeffs.dot(x);
  if (kind == "quadratic") return c0 + 0.5 * (coeffs.array() * x.array().square()).sum();
  if (kind == "sqrt_quadratic") return c0 * std::sqrt(1.0 + x.squaredNorm());
  if (kind == "inverse_tent") {
    const double t = 1.0 - std::abs(x[0]);
    return t > 0.0 ? 1.0 / t : kInf;
  }
  if (kind == "custom") return custom(x);
  raise(errc::invalid_argument, "unknown potential kind '" + kind + "'");
}

// ---------------------------------------------------------------- mode search

namespace detail {

ModeSearch minimize_convex(const std::function<double(const VectorXd&)>& f,
                           const Support& support, const VectorXd& x0) {
  const int n = static_cast<int>(x0.size());
  const auto project = [&support](VectorXd x) {
    switch (support.kind) {
      case Support::Kind::real_line: return x;
      case Support::Kind::orthant: return VectorXd(x.cwiseMax(0.0));
      case Support::Kind::box: {
        for (int i = 0; i < x.size(); ++i) {
          const double margin = 1e-9 * (support.hi[i] - support.lo[i]);
          x[i] = std::clamp(x[i], support.lo[i] + margin, support.hi[i] - margin);
        }
        return x;
      }
    }
    raise(errc::internal, "unhandled support kind");
  };

  ModeSearch out;
  VectorXd x = project(x0);
  double fx = f(x);
  VectorXd g(n);
  for (out.iterations = 0; out.iterations < 2000; ++out.iterations) {
    for (int i = 0; i < n; ++i) {
      const double h = 1e-6 * (1.0 + std::abs(x[i]));
      VectorXd xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      g[i] = (f(project(xp)) - f(project(xm))) / (2.0 * h);
    }
    const VectorXd pg = x - project(x - g);
    out.grad_norm = pg.norm();
    if (out.grad_norm <= 1e-8 * std::max(1.0, std::abs(fx))) {
      out.converged = true;
      break;
    }
    double step = 1.0 / std::max(1.0, g.norm());
    bool improved = false;
    for (int bt = 0; bt < 60; ++bt) {
      const VectorXd y = project(x - step * g);
      const double fy = f(y);
      if (fy <= fx - 1e-4 * step * g.squaredNorm() || fy < fx) {
        x = y;
        fx = fy;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      out.converged = out.grad_norm <= 1e-6 * std::max(1.0, std::abs(fx));
      break;
    }
  }
  out.minimizer = x;
  out.value = fx;
  return out;
}

namespace {

// power-tail expansion of the symmetric stable density,
// f(x) ~ (1/pi) sum_k (-1)^{k+1} Gamma(k alpha + 1)/k! sin(k pi alpha/2) x^{-k alpha - 1};
// convergent for alpha < 1 and asymptotic for alpha > 1
double stable_tail_series(double alpha, double x, double* rel_err) {
  double sum = 0.0;
  double smallest = kInf;
  *rel_err = kInf;
  for (int k = 1; k <= 14; ++k) {
    const double mag = std::exp(std::lgamma(k * alpha + 1.0) - std::lgamma(k + 1.0) -
                                (k * alpha + 1.0) * std::log(x));
    const double term = (k % 2 == 1 ? 1.0 : -1.0) * mag * std::sin(0.5 * k * M_PI * alpha);
    if (mag > smallest) {  // asymptotic divergence kicked in
      *rel_err = smallest / std::max(std::abs(sum), 1e-300);
      return sum / M_PI;
    }
    sum += term;
    smallest = mag;
    if (mag < 1e-17 * std::abs(sum)) {
      *rel_err = mag / std::max(std::abs(sum), 1e-300);
      return sum / M_PI;
    }
  }
  *rel_err = smallest / std::max(std::abs(sum), 1e-300);
  return sum / M_PI;
}

}  // namespace

double stable_pdf_numeric(double alpha, double x) {
  const double ax = std::abs(x);
  if (ax > 3.0) {
    double rel_err = kInf;
    const double tail = stable_tail_series(alpha, ax, &rel_err);
    if (rel_err < 1e-9) return std::max(0.0, tail);
  }
  const double T = std::pow(12.0 * std::log(10.0), 1.0 / alpha);
  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-9;
  opt.max_evals = 600'000;
  const auto integrand = [alpha, ax](double t) {
    return std::cos(t * ax) * std::exp(-std::pow(t, alpha));
  };
  const quad::Result r = quad::integrate_1d(integrand, 0.0, T, opt);
  if (!r.converged)
    raise(errc::evaluation_failure, "stable density inversion did not converge at x=" +
                                        std::to_string(x));
  return std::max(0.0, r.value / M_PI);
}

}  // namespace detail

// ---------------------------------------------------------------- DensitySpec

const char* DensitySpec::family_name() const {
  switch (family_) {
    case Family::gaussian: return "gaussian";
    case Family::exponential_product: return "exponential_product";
    case Family::uniform_body: return "uniform_body";
    case Family::pareto_mv: return "pareto_mv";
    case Family::cauchy: return "cauchy";
    case Family::stable_symmetric: return "stable_symmetric";
    case Family::potential: return "potential";
  }
  return "unknown";
}

DensitySpec DensitySpec::gaussian(VectorXd mean, MatrixXd cov) {
  const int n = static_cast<int>(cov.rows());
  if (n < 1 || cov.cols() != n) raise(errc::invalid_argument, "covariance must be square");
  DensitySpec s;
  s.family_ = Family::gaussian;
  s.n_ = n;
  s.mean_ = zeros_or(mean, n);
  s.cov_ = 0.5 * (cov + cov.transpose());
  s.gauss_chol_ = chol_lower(s.cov_, "gaussian covariance");
  s.gauss_log_det_ = 0.0;
  for (int i = 0; i < n; ++i) s.gauss_log_det_ += 2.0 * std::log(s.gauss_chol_(i, i));
  return s;
}

DensitySpec DensitySpec::exponential_product(VectorXd rates) {
  if (rates.size() < 1 || !(rates.array() > 0.0).all())
    raise(errc::invalid_argument, "rates must be positive");
  DensitySpec s;
  s.family_ = Family::exponential_product;
  s.n_ = static_cast<int>(rates.size());
  s.rates_ = std::move(rates);
  return s;
}

DensitySpec DensitySpec::uniform(Body body) {
  if (!(body.volume() > 0.0)) raise(errc::invalid_argument, "body must have positive volume");
  DensitySpec s;
  s.family_ = Family::uniform_body;
  s.n_ = body.n;
  s.body_ = std::move(body);
  return s;
}

DensitySpec DensitySpec::pareto(int n, double beta, double a) {
  if (n < 1 || !(a > 0.0)) raise(errc::invalid_argument, "pareto needs n >= 1, a > 0");
  if (!(beta > n))
    raise(errc::beta_too_small, "pareto density integrates only for beta > n");
  if (beta - n < 1e-6)
    raise(errc::beta_too_small, "beta - n < 1e-6 is ill-conditioned (normalizer blows up)");
  DensitySpec s;
  s.family_ = Family::pareto_mv;
  s.n_ = n;
  s.beta_ = beta;
  s.a_ = a;
  return s;
}

DensitySpec DensitySpec::cauchy1d(double scale) {
  if (!(scale > 0.0)) raise(errc::invalid_argument, "cauchy scale must be positive");
  DensitySpec s;
  s.family_ = Family::cauchy;
  s.n_ = 1;
  s.scale_ = scale;
  return s;
}

DensitySpec DensitySpec::stable1d(double alpha) {
  if (!(alpha > 0.0) || alpha > 2.0)
    raise(errc::invalid_argument, "stable index must lie in (0, 2]");
  DensitySpec s;
  s.family_ = Family::stable_symmetric;
  s.n_ = 1;
  s.alpha_ = alpha;
  return s;
}

DensitySpec DensitySpec::potential_density(Potential phi, double beta, Support support) {
  DensitySpec s;
  s.family_ = Family::potential;
  s.n_ = support.n;
  if (!(beta > s.n_ + 1e-6))
    raise(errc::beta_too_small, "potential density needs beta > n (with margin 1e-6)");
  s.phi_ = std::move(phi);
  s.beta_ = beta;
  s.pot_log_concave_ = false;
  s.support_ = std::move(support);
  s.finalize_potential();
  return s;
}

DensitySpec DensitySpec::potential_log_concave(Potential phi, Support support) {
  DensitySpec s;
  s.family_ = Family::potential;
  s.n_ = support.n;
  s.phi_ = std::move(phi);
  s.beta_ = kInf;
  s.pot_log_concave_ = true;
  s.support_ = std::move(support);
  s.finalize_potential();
  return s;
}

namespace {

double potential_unnorm_log(const Potential& phi, bool log_concave, double beta,
                            const VectorXd& x) {
  const double p = phi(x);
  if (log_concave) return -p;
  if (!(p > 0.0)) raise(errc::evaluation_failure, "potential must be positive on its support");
  return -beta * std::log(p);
}

}  // namespace

void DensitySpec::finalize_potential() {
  VectorXd x0;
  switch (support_.kind) {
    case Support::Kind::real_line: x0 = VectorXd::Zero(n_); break;
    case Support::Kind::orthant: x0 = VectorXd::Ones(n_); break;
    case Support::Kind::box: x0 = 0.5 * (support_.lo + support_.hi); break;
  }
  const auto f = [this](const VectorXd& x) { return phi_(x); };
  const detail::ModeSearch ms = detail::minimize_convex(f, support_, x0);
  if (!ms.converged)
    raise(errc::non_convergence,
          "mode search did not converge; best iterate value " + std::to_string(ms.value) +
              " with gradient norm " + std::to_string(ms.grad_norm));
  pot_mode_ = ms.minimizer;
  pot_min_ = ms.value;
  if (!pot_log_concave_ && !(pot_min_ > 0.0))
    raise(errc::invalid_argument, "potential must be positive at its minimum");

  if (n_ > 3) {
    pot_normalized_ = false;  // pdf evaluation will refuse
    return;
  }
  const Chart ch = chart();
  const double shift = potential_unnorm_log(phi_, pot_log_concave_, beta_, pot_mode_);
  // integrate exp(unnorm - shift) over the chart
  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-9;
  opt.max_evals = 4'000'000;
  const auto& phi = phi_;
  const bool lc = pot_log_concave_;
  const double beta = beta_;
  const int n = n_;
  const auto g = [&phi, lc, beta, n, shift, &ch](const double* u) {
    std::vector<double> xb(n);
    const double jac = ch.map(u, xb.data());
    VectorXd x = Eigen::Map<const VectorXd>(xb.data(), n);
    const double p = phi(x);
    double ulog;
    if (lc) {
      ulog = -p;
    } else {
      if (!(p > 0.0)) return 0.0;
      ulog = -beta * std::log(p);
    }
    const double e = ulog - shift;
    return e < -745.0 ? 0.0 : std::exp(e) * jac;
  };
  const quad::Result r = quad::integrate(g, ch.lo, ch.hi, opt);
  if (!(r.value > 0.0))
    raise(errc::divergent_integral, "potential density does not normalize");
  pot_log_norm_ = shift + std::log(r.value);
  pot_normalized_ = true;
}

double DensitySpec::log_pdf(const VectorXd& x) const {
  if (x.size() != n_) raise(errc::invalid_argument, "point has wrong dimension");
  switch (family_) {
    case Family::gaussian: {
      const VectorXd z = gauss_chol_.triangularView<Eigen::Lower>().solve(x - mean_);
      return -0.5 * (n_ * kLogTwoPi + gauss_log_det_ + z.squaredNorm());
    }
    case Family::exponential_product: {
      if (!(x.array() >= 0.0).all()) return -kInf;
      return (rates_.array().log() - rates_.array() * x.array()).sum();
    }
    case Family::uniform_body:
      return body_.contains(x) ? -std::log(body_.volume()) : -kInf;
    case Family::pareto_mv: {
      if (!(x.array() >= 0.0).all()) return -kInf;
      const double log_z = -(beta_ - n_) * std::log(a_) - log_falling_product(beta_, n_);
      return -beta_ * std::log(a_ + x.sum()) - log_z;
    }
    case Family::cauchy: {
      const double t = x[0] / scale_;
      return -std::log(M_PI * scale_) - std::log1p(t * t);
    }
    case Family::stable_symmetric:
      return std::log(pdf(x));
    case Family::potential: {
      if (!support_.contains(x)) return -kInf;
      if (!pot_normalized_)
        raise(errc::dimension_too_high, "potential density normalization needs n <= 3");
      const double p = phi_(x);
      if (std::isinf(p)) return -kInf;
      return potential_unnorm_log(phi_, pot_log_concave_, beta_, x) - pot_log_norm_;
    }
  }
  raise(errc::internal, "unhandled family");
}

double DensitySpec::pdf(const VectorXd& x) const {
  if (family_ == Family::stable_symmetric) {
    if (alpha_ == 2.0) {
      // characteristic function exp(-t^2) is the N(0,2) one
      return std::exp(-0.25 * x[0] * x[0]) / std::sqrt(4.0 * M_PI);
    }
    if (alpha_ == 1.0) {
      return 1.0 / (M_PI * (1.0 + x[0] * x[0]));
    }
    return detail::stable_pdf_numeric(alpha_, x[0]);
  }
  const double l = log_pdf(x);
  return l == -kInf ? 0.0 : std::exp(l);
}

double DensitySpec::max_density() const {
  switch (family_) {
    case Family::gaussian:
      return std::exp(-0.5 * (n_ * kLogTwoPi + gauss_log_det_));
    case Family::exponential_product:
      return rates_.prod();
    case Family::uniform_body:
      return 1.0 / body_.volume();
    case Family::pareto_mv: {
      const double log_z = -(beta_ - n_) * std::log(a_) - log_falling_product(beta_, n_);
      return std::exp(-beta_ * std::log(a_) - log_z);
    }
    case Family::cauchy:
      return 1.0 / (M_PI * scale_);
    case Family::stable_symmetric:
      return std::tgamma(1.0 + 1.0 / alpha_) / M_PI;
    case Family::potential: {
      if (!pot_normalized_)
        raise(errc::dimension_too_high, "potential density normalization needs n <= 3");
      return std::exp(potential_unnorm_log(phi_, pot_log_concave_, beta_, pot_mode_) -
                      pot_log_norm_);
    }
  }
  raise(errc::internal, "unhandled family");
}

DensitySpec::MomentSummary DensitySpec::moments() const {
  MomentSummary out;
  switch (family_) {
    case Family::gaussian:
      out.mean = mean_;
      out.covariance = cov_;
      break;
    case Family::exponential_product:
      out.mean = rates_.cwiseInverse();
      out.covariance = rates_.array().square().inverse().matrix().asDiagonal();
      break;
    case Family::uniform_body:
      out.mean = body_.mean();
      out.covariance = body_.covariance();
      break;
    case Family::pareto_mv: {
      const double alpha = beta_ - n_;
      if (!(alpha > 2.0))
        raise(errc::moments_undefined,
              "pareto covariance needs beta > n + 2");
      const double d1 = alpha - 1.0, d2 = alpha - 2.0;
      out.mean = VectorXd::Constant(n_, a_ / d1);
      const double off = a_ * a_ / (d1 * d1 * d2);
      out.covariance = off * MatrixXd::Ones(n_, n_);
      out.covariance.diagonal().array() = alpha * off;
      break;
    }
    case Family::cauchy:
      raise(errc::moments_undefined, "cauchy has no finite moments");
    case Family::stable_symmetric:
      if (alpha_ < 2.0)
        raise(errc::moments_undefined, "stable laws with alpha < 2 have no finite variance");
      out.mean = VectorXd::Zero(1);
      out.covariance = MatrixXd::Constant(1, 1, 2.0);
      break;
    case Family::potential: {
      if (n_ > 3)
        raise(errc::dimension_too_high, "potential moments use quadrature, n <= 3");
      const Chart ch = chart();
      quad::Options opt;
      opt.abs_tol = 1e-11;
      opt.rel_tol = 1e-8;
      opt.max_evals = 4'000'000;
      const auto expect = [this, &ch, &opt](const std::function<double(const VectorXd&)>& h) {
        const auto g = [this, &ch, &h](const double* u) {
          std::vector<double> xb(n_);
          const double jac = ch.map(u, xb.data());
          const VectorXd x = Eigen::Map<const VectorXd>(xb.data(), n_);
          const double f = pdf(x);
          return f > 0.0 ? h(x) * f * jac : 0.0;
        };
        return quad::integrate(g, ch.lo, ch.hi, opt).value;
      };
      out.mean.resize(n_);
      for (int i = 0; i < n_; ++i)
        out.mean[i] = expect([i](const VectorXd& x) { return x[i]; });
      out.covariance.resize(n_, n_);
      for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
          const double mij = expect([i, j](const VectorXd& x) { return x[i] * x[j]; });
          out.covariance(i, j) = out.covariance(j, i) = mij - out.mean[i] * out.mean[j];
        }
      break;
    }
  }
  Eigen::LLT<MatrixXd> llt(out.covariance);
  if (llt.info() == Eigen::Success) {
    double logdet = 0.0;
    for (int i = 0; i < n_; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
    out.sigma2 = std::exp(logdet / n_);
  } else {
    out.sigma2 = std::pow(std::max(out.covariance.determinant(), 0.0), 1.0 / n_);
  }
  return out;
}

VectorXd DensitySpec::sample_one(Rng& rng) const {
  switch (family_) {
    case Family::gaussian: {
      VectorXd z(n_);
      for (int i = 0; i < n_; ++i) z[i] = rng.normal();
      return mean_ + gauss_chol_ * z;
    }
    case Family::exponential_product: {
      VectorXd x(n_);
      for (int i = 0; i < n_; ++i) x[i] = rng.exponential(rates_[i]);
      return x;
    }
    case Family::uniform_body:
      return body_.sample(rng);
    case Family::pareto_mv: {
      // sequential conditionals: each one is a one-dimensional Pareto tail
      VectorXd x(n_);
      double s = a_;
      for (int k = 0; k < n_; ++k) {
        const double alpha_k = beta_ - n_ + k;
        double u;
        do {
          u = rng.next_double();
        } while (u <= 0.0);
        const double step = s * (std::pow(u, -1.0 / alpha_k) - 1.0);
        x[k] = step;
        s += step;
      }
      return x;
    }
    case Family::cauchy: {
      VectorXd x(1);
      x[0] = scale_ * std::tan(M_PI * (rng.next_double() - 0.5));
      return x;
    }
    case Family::stable_symmetric: {
      VectorXd x(1);
      const double v = M_PI * (rng.next_double() - 0.5);
      if (alpha_ == 1.0) {
        x[0] = std::tan(v);
        return x;
      }
      const double w = rng.exponential(1.0);
      const double t1 = std::sin(alpha_ * v) / std::pow(std::cos(v), 1.0 / alpha_);
      const double t2 = std::pow(std::cos(v - alpha_ * v) / w, (1.0 - alpha_) / alpha_);
      x[0] = t1 * t2;
      return x;
    }
    case Family::potential: {
      if (support_.kind != Support::Kind::box)
        raise(errc::unsupported,
              "exact sampling of potential densities is implemented for box supports only");
      const double fmax = max_density();
      for (int tries = 0; tries < 1'000'000; ++tries) {
        VectorXd x(n_);
        for (int i = 0; i < n_; ++i)
          x[i] = rng.uniform(support_.lo[i], support_.hi[i]);
        if (rng.next_double() * fmax <= pdf(x)) return x;
      }
      raise(errc::support_sampling_failure, "rejection sampling failed to accept");
    }
  }
  raise(errc::internal, "unhandled family");
}

MatrixXd DensitySpec::sample(std::uint64_t seed, int m) const {
  if (m < 1) raise(errc::invalid_argument, "sample count must be >= 1");
  Rng rng(seed);
  MatrixXd out(m, n_);
  for (int i = 0; i < m; ++i) out.row(i) = sample_one(rng).transpose();
  return out;
}

VectorXd DensitySpec::support_sample(Rng& rng) const {
  if (family_ != Family::potential) return sample_one(rng);
  VectorXd x(n_);
  switch (support_.kind) {
    case Support::Kind::orthant:
      for (int i = 0; i < n_; ++i) x[i] = rng.exponential(1.0);
      return x;
    case Support::Kind::box:
      for (int i = 0; i < n_; ++i) x[i] = rng.uniform(support_.lo[i], support_.hi[i]);
      return x;
    case Support::Kind::real_line:
      for (int i = 0; i < n_; ++i) x[i] = std::tan(M_PI * (rng.next_double() - 0.5));
      return x;
  }
  raise(errc::internal, "unhandled support kind");
}

KappaReport DensitySpec::kappa_classify(double kappa, int trials, std::uint64_t seed,
                                        double tol) const {
  if (trials < 1) raise(errc::invalid_argument, "trials must be >= 1");
  if (kappa > 1.0 / n_ + 1e-15)
    raise(errc::invalid_argument, "kappa must satisfy kappa <= 1/n");
  double kn;
  if (kappa == -kInf) {
    kn = -1.0 / n_;
  } else if (1.0 - n_ * kappa <= 0.0) {
    kn = kInf;
  } else {
    kn = kappa / (1.0 - n_ * kappa);
  }

  KappaReport report;
  report.kappa = kappa;
  report.tol = tol;
  Rng rng(seed);
  double worst = -kInf;
  int done = 0;
  int attempts = 0;
  const int max_attempts = 50 * trials + 1000;
  while (done < trials && attempts < max_attempts) {
    ++attempts;
    const VectorXd x = support_sample(rng);
    const VectorXd y = support_sample(rng);
    const double t = rng.uniform(1e-3, 1.0 - 1e-3);
    const double la = log_pdf(x);
    const double lb = log_pdf(y);
    if (!std::isfinite(la) || !std::isfinite(lb)) continue;
    const double lz = log_pdf(t * x + (1.0 - t) * y);
    double rhs;
    if (std::abs(kn) < 1e-14) {
      rhs = t * la + (1.0 - t) * lb;
    } else if (std::isinf(kn)) {
      rhs = kn > 0 ? std::max(la, lb) : std::min(la, lb);
    } else {
      const double u = kn * la;
      const double v = kn * lb;
      const double m = std::max(u, v);
      rhs = (m + std::log(t * std::exp(u - m) + (1.0 - t) * std::exp(v - m))) / kn;
    }
    // relative violation in the log domain
    const double viol = rhs - lz;
    if (viol > worst) worst = viol;
    ++done;
  }
  if (done < trials)
    raise(errc::support_sampling_failure, "could not draw enough triples inside the support");
  report.trials = done;
  report.worst_violation = worst;
  report.pass = worst <= tol;
  return report;
}

bool DensitySpec::is_log_concave() const {
  switch (family_) {
    case Family::gaussian:
    case Family::exponential_product:
    case Family::uniform_body:
      return true;
    case Family::pareto_mv:
    case Family::cauchy:
      return false;
    case Family::stable_symmetric:
      return alpha_ == 2.0;
    case Family::potential:
      return pot_log_concave_;
  }
  return false;
}

std::optional<double> DensitySpec::structural_kappa() const {
  if (is_log_concave()) return 0.0;
  switch (family_) {
    case Family::pareto_mv: return -1.0 / (beta_ - n_);
    case Family::cauchy: return -1.0;  // density is phi^{-2} with convex phi, n = 1
    case Family::potential:
      if (!pot_log_concave_) return -1.0 / (beta_ - n_);
      return 0.0;
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------- charts

namespace {

Chart box_chart(const VectorXd& lo, const VectorXd& hi) {
  Chart ch;
  const int n = static_cast<int>(lo.size());
  ch.lo.assign(lo.data(), lo.data() + n);
  ch.hi.assign(hi.data(), hi.data() + n);
  ch.map = [n](const double* u, double* x) {
    for (int i = 0; i < n; ++i) x[i] = u[i];
    return 1.0;
  };
  return ch;
}

// one-sided rational map u in [0,1) -> x = s*u/(1-u)^k per axis
Chart orthant_chart(const VectorXd& scales, int k, double ucap) {
  Chart ch;
  const int n = static_cast<int>(scales.size());
  ch.lo.assign(n, 0.0);
  ch.hi.assign(n, ucap);
  std::vector<double> s(scales.data(), scales.data() + n);
  ch.map = [n, k, s](const double* u, double* x) {
    double jac = 1.0;
    for (int i = 0; i < n; ++i) {
      const double om = 1.0 - u[i];
      const double omk = std::pow(om, k);
      x[i] = s[i] * u[i] / omk;
      jac *= s[i] * (1.0 + (k - 1.0) * u[i]) / (omk * om);
    }
    return jac;
  };
  return ch;
}

// two-sided rational map t in (-1,1) -> x = c + s*t/(1-t^2) per axis
Chart real_line_chart(const VectorXd& centers, const VectorXd& scales, double tcap) {
  Chart ch;
  const int n = static_cast<int>(centers.size());
  ch.lo.assign(n, -tcap);
  ch.hi.assign(n, tcap);
  std::vector<double> c(centers.data(), centers.data() + n);
  std::vector<double> s(scales.data(), scales.data() + n);
  ch.map = [n, c, s](const double* u, double* x) {
    double jac = 1.0;
    for (int i = 0; i < n; ++i) {
      const double t = u[i];
      const double om = 1.0 - t * t;
      x[i] = c[i] + s[i] * t / om;
      jac *= s[i] * (1.0 + t * t) / (om * om);
    }
    return jac;
  };
  return ch;
}

Chart body_chart(const Body& body) {
  const int n = body.n;
  if (body.kind == Body::Kind::cube || (n == 1 && body.kind != Body::Kind::ellipsoid)) {
    VectorXd lo, hi;
    body.bounding_box(lo, hi);
    return box_chart(lo, hi);
  }
  if (body.kind == Body::Kind::simplex) {
    Chart ch;
    ch.lo.assign(n, 0.0);
    ch.hi.assign(n, 1.0);
    const double s = body.scale;
    const VectorXd c = body.center;
    ch.map = [n, s, c](const double* u, double* x) {
      double rem = s;
      double jac = 1.0;
      for (int i = 0; i < n; ++i) {
        x[i] = c[i] + rem * u[i];
        jac *= rem;
        rem *= (1.0 - u[i]);
      }
      return jac;
    };
    return ch;
  }
  // ball or ellipsoid via polar / spherical coordinates (constant jacobian)
  double radius = body.radius;
  MatrixXd L;
  if (body.kind == Body::Kind::ellipsoid) {
    radius = 1.0;
    L = chol_lower(body.shape, "ellipsoid shape");
  }
  const VectorXd c = body.center;
  double det_l = 1.0;
  if (L.size() > 0)
    for (int i = 0; i < n; ++i) det_l *= L(i, i);

  Chart ch;
  if (n == 1) {
    // ellipsoid in one dimension is an interval
    const double h = L.size() > 0 ? L(0, 0) : radius;
    return box_chart(VectorXd::Constant(1, c[0] - h), VectorXd::Constant(1, c[0] + h));
  }
  if (n == 2) {
    ch.lo = {0.0, 0.0};
    ch.hi = {1.0, 2.0 * M_PI};
    ch.map = [radius, c, L, det_l](const double* u, double* x) {
      const double rho = radius * std::sqrt(u[0]);
      double y0 = rho * std::cos(u[1]);
      double y1 = rho * std::sin(u[1]);
      if (L.size() > 0) {
        const double z0 = L(0, 0) * y0;
        const double z1 = L(1, 0) * y0 + L(1, 1) * y1;
        y0 = z0;
        y1 = z1;
      }
      x[0] = c[0] + y0;
      x[1] = c[1] + y1;
      return 0.5 * radius * radius * det_l;
    };
    return ch;
  }
  if (n == 3) {
    ch.lo = {0.0, -1.0, 0.0};
    ch.hi = {1.0, 1.0, 2.0 * M_PI};
    ch.map = [radius, c, L, det_l](const double* u, double* x) {
      const double rho = radius * std::cbrt(u[0]);
      const double v = u[1];
      const double sv = std::sqrt(std::max(0.0, 1.0 - v * v));
      Eigen::Vector3d y(rho * sv * std::cos(u[2]), rho * sv * std::sin(u[2]), rho * v);
      if (L.size() > 0) y = L * y;
      for (int i = 0; i < 3; ++i) x[i] = c[i] + y[i];
      return radius * radius * radius / 3.0 * det_l;
    };
    return ch;
  }
  raise(errc::dimension_too_high, "body charts are implemented for n <= 3");
}

int pareto_chart_exponent(int n, double beta) {
  const int k = static_cast<int>(std::floor(n / (beta - n))) + 1;
  return std::clamp(k, 1, 6);
}

}  // namespace

Chart DensitySpec::chart() const {
  switch (family_) {
    case Family::gaussian: {
      Chart ch;
      ch.lo.assign(n_, -1.0);
      ch.hi.assign(n_, 1.0);
      const VectorXd mean = mean_;
      const MatrixXd L = gauss_chol_;
      const int n = n_;
      double det_l = 1.0;
      for (int i = 0; i < n; ++i) det_l *= L(i, i);
      const double span = 9.0;
      ch.map = [mean, L, n, det_l, span](const double* u, double* x) {
        VectorXd z(n);
        for (int i = 0; i < n; ++i) z[i] = span * u[i];
        const VectorXd y = mean + L * z;
        for (int i = 0; i < n; ++i) x[i] = y[i];
        return std::pow(span, n) * det_l;
      };
      return ch;
    }
    case Family::exponential_product: {
      // probability integral transform per axis, truncated near u = 1
      Chart ch;
      ch.lo.assign(n_, 0.0);
      ch.hi.assign(n_, 1.0 - 1e-14);
      const VectorXd rates = rates_;
      const int n = n_;
      ch.map = [rates, n](const double* u, double* x) {
        double jac = 1.0;
        for (int i = 0; i < n; ++i) {
          x[i] = -std::log1p(-u[i]) / rates[i];
          jac *= 1.0 / (rates[i] * (1.0 - u[i]));
        }
        return jac;
      };
      return ch;
    }
    case Family::uniform_body:
      return body_chart(body_);
    case Family::pareto_mv: {
      const int k = pareto_chart_exponent(n_, beta_);
      return orthant_chart(VectorXd::Constant(n_, a_), k, 1.0 - 1e-9);
    }
    case Family::cauchy:
      return real_line_chart(VectorXd::Zero(1), VectorXd::Constant(1, scale_), 1.0 - 1e-12);
    case Family::stable_symmetric:
      return real_line_chart(VectorXd::Zero(1), VectorXd::Ones(1), 1.0 - 1e-12);
    case Family::potential: {
      switch (support_.kind) {
        case Support::Kind::box:
          return box_chart(support_.lo, support_.hi);
        case Support::Kind::orthant: {
          const int k = pot_log_concave_ ? 1 : pareto_chart_exponent(n_, beta_);
          VectorXd s = VectorXd::Ones(n_);
          if (pot_mode_.size() == n_) s = (1.0 + pot_mode_.array().abs()).matrix();
          return orthant_chart(s, k, pot_log_concave_ ? 1.0 - 1e-12 : 1.0 - 1e-9);
        }
        case Support::Kind::real_line: {
          VectorXd c = VectorXd::Zero(n_);
          if (pot_mode_.size() == n_) c = pot_mode_;
          const VectorXd s = (1.0 + c.array().abs()).matrix();
          return real_line_chart(c, s, 1.0 - 1e-12);
        }
      }
      raise(errc::internal, "unhandled support kind");
    }
  }
  raise(errc::internal, "unhandled family");
}

}  // namespace ce
