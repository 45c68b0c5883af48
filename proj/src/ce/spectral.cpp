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

#include "ce/spectral.hpp"

#include <cmath>

namespace ce {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

}  // namespace

CharFn chf_of(const DensitySpec& spec) {
  CharFn chf;
  chf.n = spec.dim();
  switch (spec.family()) {
    case DensitySpec::Family::gaussian: {
      const int n = spec.dim();
      const double var = spec.cov_param()(0, 0);
      const double m0 = spec.mean_param()[0];
      chf.symmetric = spec.mean_param().isZero(0.0);
      chf.eval = [var, m0](double t) {
        return std::exp(std::complex<double>(-0.5 * var * t * t, m0 * t));
      };
      chf.norm2_closed = std::exp(0.5 * n * std::log(M_PI) - 0.5 * spec.gaussian_log_det());
      return chf;
    }
    case DensitySpec::Family::exponential_product: {
      const VectorXd rates = spec.rates();
      const double r0 = rates[0];
      chf.symmetric = false;
      chf.eval = [r0](double t) {
        return r0 / std::complex<double>(r0, -t);
      };
      double prod = 1.0;
      for (int i = 0; i < rates.size(); ++i) prod *= M_PI * rates[i];
      chf.norm2_closed = prod;
      return chf;
    }
    case DensitySpec::Family::cauchy: {
      const double s = spec.cauchy_scale();
      chf.eval = [s](double t) {
        return std::complex<double>(std::exp(-s * std::abs(t)), 0.0);
      };
      chf.norm2_closed = 1.0 / s;
      return chf;
    }
    case DensitySpec::Family::stable_symmetric: {
      const double a = spec.stable_alpha();
      chf.eval = [a](double t) {
        return std::complex<double>(std::exp(-std::pow(std::abs(t), a)), 0.0);
      };
      chf.norm2_closed = stable_chf_norm2(a);
      return chf;
    }
    case DensitySpec::Family::uniform_body: {
      const Body& body = spec.body();
      if (body.kind != Body::Kind::cube)
        raise(errc::unsupported, "characteristic function implemented for cube bodies only");
      const double s = body.side;
      const double c = body.center[0];
      chf.symmetric = body.center.isZero(0.0);
      chf.eval = [s, c](double t) {
        const double arg = 0.5 * t * s;
        const double sinc = std::abs(arg) < 1e-8 ? 1.0 - arg * arg / 6.0 : std::sin(arg) / arg;
        return std::exp(std::complex<double>(0.0, c * t)) * sinc;
      };
      double prod = 1.0;
      for (int i = 0; i < body.n; ++i) prod *= 2.0 * M_PI / s;
      chf.norm2_closed = prod;
      return chf;
    }
    default:
      raise(errc::unsupported, std::string("no characteristic function for family ") +
                                   spec.family_name());
  }
}

double stable_chf_norm2(double alpha) {
  if (!(alpha > 0.0) || alpha > 2.0)
    raise(errc::invalid_argument, "stable index must lie in (0, 2]");
  return std::pow(2.0, 1.0 - 1.0 / alpha) / alpha * std::tgamma(1.0 / alpha);
}

Estimate chf_norm2(const CharFn& chf) {
  if (chf.norm2_closed) return closed_estimate(*chf.norm2_closed);
  if (chf.n != 1)
    raise(errc::unsupported, "quadrature of ||phi||_2^2 is one-dimensional only");
  const auto mod2 = [&chf](double t) { return std::norm(chf.eval(t)); };
  // |phi|^2 is even for real-valued laws; find a truncation point where
  // |phi| has decayed, then sum dyadic panels so narrow peaks are resolved
  double T = 1.0;
  for (int i = 0; i < 60 && std::sqrt(mod2(T)) > 1e-12; ++i) T *= 2.0;
  if (std::sqrt(mod2(T)) > 1e-12)
    raise(errc::divergent_integral, "characteristic function tail does not decay");
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-10;
  const auto integrate_to = [&](double upper) {
    double total = 0.0, err = 0.0;
    std::int64_t evals = 0;
    double lo = 0.0, hi = 1.0;
    while (lo < upper) {
      hi = std::min(hi, upper);
      const quad::Result r = quad::integrate_1d(mod2, lo, hi, opt);
      total += r.value;
      err += r.error;
      evals += r.evals;
      lo = hi;
      hi *= 2.0;
    }
    return quad::Result{2.0 * total, 2.0 * err, evals, true};
  };
  quad::Result r = integrate_to(T);
  // double T until the value is stable
  for (int i = 0; i < 8; ++i) {
    const quad::Result r2 = integrate_to(2.0 * T);
    const bool stable = std::abs(r2.value - r.value) <= 1e-9 * std::max(1.0, r2.value);
    r = r2;
    T *= 2.0;
    if (stable) break;
  }
  return Estimate{r.value, r.error, Method::quadrature, r.evals};
}

Estimate chf_norm2(const DensitySpec& spec) { return chf_norm2(chf_of(spec)); }

std::pair<double, double> plancherel_window(const DensitySpec& spec) {
  const int n = spec.dim();
  const Estimate norm2 = chf_norm2(spec);
  const double h2 = n * kLogTwoPi - std::log(norm2.value);
  double gap;
  if (spec.is_log_concave()) {
    gap = n;
  } else {
    const auto kappa = spec.structural_kappa();
    if (!kappa || !(*kappa < 0.0))
      raise(errc::precondition_violated, "window needs a log-concave or beta-form spec");
    const double beta = n - 1.0 / *kappa;
    if (beta < n + 1.0 - 1e-12)
      raise(errc::beta_too_small, "window needs beta = n - 1/kappa >= n+1");
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += 1.0 / (beta - i);
    gap = beta * s;
  }
  return {h2, h2 + gap};
}

StableH2 stable_h2_identity(double alpha, int n, double f0) {
  if (!(alpha > 0.0) || alpha > 2.0 || n < 1 || !(f0 > 0.0))
    raise(errc::invalid_argument, "need alpha in (0,2], n >= 1, f0 > 0");
  StableH2 out;
  out.h2 = -(std::log(f0) - n / alpha * std::log(2.0));
  out.lhs = out.h2 / n;
  out.rhs = -std::log(f0) / n + std::log(2.0) / alpha;
  return out;
}

double stable_kappa_upper(double alpha, int n) {
  if (!(alpha > 0.0) || alpha > 2.0 || n < 1)
    raise(errc::invalid_argument, "need alpha in (0,2], n >= 1");
  return (1.0 - std::log(2.0) / alpha) / n;
}

// ------------------------------------------------------------ SpectralModel

SpectralModel SpectralModel::white(double sigma) {
  if (!(sigma > 0.0)) raise(errc::invalid_argument, "sigma must be positive");
  SpectralModel m;
  m.kind_ = Kind::white;
  m.sigma_ = sigma;
  return m;
}

SpectralModel SpectralModel::ar1(double coefficient, double sigma) {
  if (!(sigma > 0.0)) raise(errc::invalid_argument, "sigma must be positive");
  if (!(std::abs(coefficient) < 1.0))
    raise(errc::invalid_argument, "ar1 coefficient must satisfy |phi| < 1");
  SpectralModel m;
  m.kind_ = Kind::ar1;
  m.coeff_ = coefficient;
  m.sigma_ = sigma;
  return m;
}

SpectralModel SpectralModel::ma1(double theta, double sigma) {
  if (!(sigma > 0.0)) raise(errc::invalid_argument, "sigma must be positive");
  SpectralModel m;
  m.kind_ = Kind::ma1;
  m.coeff_ = theta;
  m.sigma_ = sigma;
  return m;
}

SpectralModel SpectralModel::autocov(std::vector<double> r) {
  if (r.empty() || !(r[0] > 0.0))
    raise(errc::invalid_argument, "autocovariance needs r_0 > 0");
  SpectralModel m;
  m.kind_ = Kind::autocov;
  m.r_ = std::move(r);
  return m;
}

double SpectralModel::r(int k) const {
  k = std::abs(k);
  const double s2 = sigma_ * sigma_;
  switch (kind_) {
    case Kind::white: return k == 0 ? s2 : 0.0;
    case Kind::ar1: return s2 * std::pow(coeff_, k) / (1.0 - coeff_ * coeff_);
    case Kind::ma1:
      if (k == 0) return s2 * (1.0 + coeff_ * coeff_);
      if (k == 1) return s2 * coeff_;
      return 0.0;
    case Kind::autocov:
      return k < static_cast<int>(r_.size()) ? r_[k] : 0.0;
  }
  raise(errc::internal, "unhandled model kind");
}

double SpectralModel::G(double lambda) const {
  const double s2 = sigma_ * sigma_;
  switch (kind_) {
    case Kind::white: return s2;
    case Kind::ar1: {
      const double d = 1.0 - 2.0 * coeff_ * std::cos(lambda) + coeff_ * coeff_;
      return s2 / d;
    }
    case Kind::ma1:
      return s2 * (1.0 + 2.0 * coeff_ * std::cos(lambda) + coeff_ * coeff_);
    case Kind::autocov: {
      double g = r_[0];
      for (std::size_t k = 1; k < r_.size(); ++k)
        g += 2.0 * r_[k] * std::cos(k * lambda);
      return g;
    }
  }
  raise(errc::internal, "unhandled model kind");
}

const char* SpectralModel::kind_name() const {
  switch (kind_) {
    case Kind::white: return "white";
    case Kind::ar1: return "ar1";
    case Kind::ma1: return "ma1";
    case Kind::autocov: return "autocov";
  }
  return "unknown";
}

namespace {

// log det of the leading principal minors via one Cholesky factorization
std::vector<double> prefix_log_dets(const SpectralModel& model, int n_max) {
  MatrixXd R(n_max, n_max);
  for (int i = 0; i < n_max; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = model.r(i - j);
      R(i, j) = v;
      R(j, i) = v;
    }
  Eigen::LLT<MatrixXd> llt(R);
  if (llt.info() != Eigen::Success)
    raise(errc::not_positive_definite, "Toeplitz block matrix is not positive-definite");
  const MatrixXd L = llt.matrixL();
  std::vector<double> out(n_max);
  double acc = 0.0;
  for (int i = 0; i < n_max; ++i) {
    acc += 2.0 * std::log(L(i, i));
    out[i] = acc;  // log det R_{i+1}
  }
  return out;
}

double spectral_log_integral(const SpectralModel& model) {
  // (1/(2 pi)) int_0^{2 pi} log G; trapezoid on a uniform grid is spectrally
  // accurate for these periodic integrands
  constexpr int kGrid = 1 << 14;
  double acc = 0.0;
  int clipped = 0;
  for (int i = 0; i < kGrid; ++i) {
    const double lambda = 2.0 * M_PI * i / kGrid;
    const double g = model.G(lambda);
    if (!(g > 0.0)) {
      ++clipped;
      acc += -700.0;
      continue;
    }
    acc += std::max(std::log(g), -700.0);
  }
  if (clipped > kGrid / 100)
    raise(errc::degenerate_spectrum,
          "spectral density vanishes on a non-negligible part of the circle");
  return acc / kGrid;
}

}  // namespace

double toeplitz_block_entropy(const SpectralModel& model, int n) {
  if (n < 1) raise(errc::invalid_argument, "block size must be >= 1");
  const auto logdets = prefix_log_dets(model, n);
  return 0.5 * (kLogTwoPi + 1.0) + logdets[n - 1] / (2.0 * n);
}

std::vector<double> block_entropy_trajectory(const SpectralModel& model, int n_max) {
  if (n_max < 1) raise(errc::invalid_argument, "horizon must be >= 1");
  const auto logdets = prefix_log_dets(model, n_max);
  std::vector<double> out(n_max);
  for (int i = 0; i < n_max; ++i)
    out[i] = 0.5 * (kLogTwoPi + 1.0) + logdets[i] / (2.0 * (i + 1));
  return out;
}

double szego_rate(const SpectralModel& model) {
  return 0.5 * (kLogTwoPi + 1.0) + 0.5 * spectral_log_integral(model);
}

double szego_rate_unhalved(const SpectralModel& model) {
  return 0.5 * (kLogTwoPi + 1.0) + spectral_log_integral(model);
}

RateBounds process_rate_bounds(const std::vector<double>& log_max_density) {
  const int N = static_cast<int>(log_max_density.size());
  if (N < 8) raise(errc::horizon_too_short, "need log ||f_n|| for at least 8 block sizes");
  const int start = N - std::max(1, N / 4);  // final 25% of the horizon
  double lo = kInf, hi = -kInf;
  for (int i = start; i < N; ++i) {
    const double v = -log_max_density[i] / (i + 1);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return RateBounds{lo, hi, hi + 1.0};
}

std::vector<double> gaussian_log_max_density_seq(const SpectralModel& model, int n_max) {
  const auto logdets = prefix_log_dets(model, n_max);
  std::vector<double> out(n_max);
  for (int i = 0; i < n_max; ++i)
    out[i] = -0.5 * ((i + 1) * kLogTwoPi + logdets[i]);
  return out;
}

}  // namespace ce
