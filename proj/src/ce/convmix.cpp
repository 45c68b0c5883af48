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

#include "ce/convmix.hpp"

#include <cmath>

namespace ce {

namespace detail {

void fft(std::vector<std::complex<double>>& a, bool invert) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    raise(errc::invalid_argument, "fft size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * M_PI / len * (invert ? -1.0 : 1.0);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (invert)
    for (auto& x : a) x /= static_cast<double>(n);
}

}  // namespace detail

double junge_bound(int n, double kappa, int folds) {
  if (n < 1 || folds < 1) raise(errc::invalid_argument, "need n >= 1 and folds >= 1");
  if (!(kappa >= -1.0 && kappa <= 0.0))
    raise(errc::kappa_out_of_range, "bound holds for kappa in [-1, 0]");
  return std::pow(std::exp(1.0 - kappa * n) / std::sqrt(static_cast<double>(folds)), n);
}

double irwin_hall_peak(int m) {
  if (m < 1) raise(errc::invalid_argument, "fold count must be >= 1");
  if (m == 1) return 1.0;
  const double x = 0.5 * m;
  double sum = 0.0;
  double binom = 1.0;  // C(m, k)
  for (int k = 0; k <= static_cast<int>(x); ++k) {
    if (k > 0) binom *= static_cast<double>(m - k + 1) / k;
    const double term = binom * std::pow(x - k, m - 1);
    sum += (k % 2 == 0 ? term : -term);
  }
  return sum / std::tgamma(static_cast<double>(m));
}

double gamma_mode_density(int m, double lambda) {
  if (m < 1 || !(lambda > 0.0)) raise(errc::invalid_argument, "need m >= 1, lambda > 0");
  if (m == 1) return lambda;
  const double k = m - 1.0;
  return lambda * std::exp(k * std::log(k) - k - std::lgamma(static_cast<double>(m)));
}

namespace {

struct FftGridSetup {
  double mode = 0.0;           // per-fold mode location
  double width = 0.0;          // per-fold half width around the mode
  std::vector<double> jumps;   // discontinuity locations of the density
};

FftGridSetup fft_grid_setup(const DensitySpec& spec) {
  FftGridSetup g;
  switch (spec.family()) {
    case DensitySpec::Family::gaussian: g.mode = spec.mean_param()[0]; break;
    case DensitySpec::Family::exponential_product:
      g.mode = 0.0;
      g.jumps = {0.0};
      break;
    case DensitySpec::Family::uniform_body: {
      VectorXd lo, hi;
      spec.body().bounding_box(lo, hi);
      g.mode = spec.body().center[0];
      g.jumps = {lo[0], hi[0]};
      break;
    }
    case DensitySpec::Family::pareto_mv:
      g.mode = 0.0;
      g.jumps = {0.0};
      break;
    case DensitySpec::Family::potential: {
      if (spec.support().kind == Support::Kind::box) {
        g.mode = 0.5 * (spec.support().lo[0] + spec.support().hi[0]);
        g.jumps = {spec.support().lo[0], spec.support().hi[0]};
      } else if (spec.support().kind == Support::Kind::orthant) {
        g.jumps = {0.0};
      }
      break;
    }
    default: g.mode = 0.0; break;
  }
  const auto mom = spec.moments();  // raises for heavy tails, which the grid cannot cover
  const double sigma = std::sqrt(mom.covariance(0, 0));
  g.width = 12.0 * sigma + std::abs(mom.mean[0] - g.mode);
  return g;
}

// one grid pass: aligned sampling, m-fold spectral convolution, peak pickup
double fft_conv_peak(const DensitySpec& spec, const FftGridSetup& g, int folds, int npts) {
  double delta = 2.0 * g.width * folds / npts;
  double anchor_x = g.mode;
  if (!g.jumps.empty()) {
    // jump points must sit exactly on grid nodes: anchor at the first jump
    // and make the remaining gaps integer multiples of delta
    anchor_x = g.jumps.front();
    if (g.jumps.size() > 1) {
      const double gap = g.jumps.back() - g.jumps.front();
      long k = std::lround(std::ceil(gap / delta));
      k += k % 2;  // keep node alignment when the grid is coarsened 2x
      delta = gap / static_cast<double>(k);
    }
  }
  const long anchor = static_cast<long>(std::floor((anchor_x - (g.mode - g.width)) / delta));
  const double L = anchor_x - anchor * delta;

  const auto f_at = [&spec](double x) {
    VectorXd v(1);
    v[0] = x;
    return spec.pdf(v);
  };

  std::vector<std::complex<double>> a(npts);
  if (folds == 1) {
    double peak = 0.0;
    for (int j = 0; j < npts; ++j) peak = std::max(peak, f_at(L + j * delta));
    return peak;
  }
  // cell-midpoint sampling: the density's jump points sit on cell boundaries,
  // so every lattice convolution is a clean midpoint rule with O(delta^2) error
  for (int j = 0; j < npts; ++j) a[j] = f_at(L + (j + 0.5) * delta);
  detail::fft(a, false);
  for (auto& c : a) c = std::pow(c, folds);
  detail::fft(a, true);
  const double scale = std::pow(delta, folds - 1);
  int jmax = 0;
  double vmax = -kInf;
  for (int j = 0; j < npts; ++j) {
    const double v = a[j].real();
    if (v > vmax) {
      vmax = v;
      jmax = j;
    }
  }
  double peak = vmax;
  if (jmax > 0 && jmax + 1 < npts) {
    const double ym = a[jmax - 1].real(), y0 = vmax, yp = a[jmax + 1].real();
    const double denom = 2.0 * y0 - ym - yp;
    if (denom > 0.0) {
      const double corr = (yp - ym) * (yp - ym) / (8.0 * denom);
      if (corr < 0.25 * (y0 + 1.0)) peak = y0 + corr;
    }
  }
  return peak * scale;
}

}  // namespace

double self_convolve_max_fft(const DensitySpec& spec, int folds) {
  if (spec.dim() != 1)
    raise(errc::unsupported, "the grid convolution path is one-dimensional");
  if (folds < 1) raise(errc::invalid_argument, "fold count must be >= 1");
  constexpr int kN = 1 << 16;
  const FftGridSetup g = fft_grid_setup(spec);
  const double fine = fft_conv_peak(spec, g, folds, kN);
  if (folds == 1) return fine;
  // the lattice-sum error is O(delta^2); one Richardson step removes it
  const double coarse = fft_conv_peak(spec, g, folds, kN / 2);
  return fine + (fine - coarse) / 3.0;
}

ConvolutionResult self_convolve_max(const DensitySpec& spec, int folds,
                                    std::optional<double> kappa) {
  if (folds < 1) raise(errc::invalid_argument, "fold count must be >= 1");
  const int n = spec.dim();
  double k;
  if (kappa) {
    k = *kappa;
  } else {
    const auto sk = spec.structural_kappa();
    if (!sk)
      raise(errc::kappa_out_of_range,
            "no structural concavity parameter for this family; pass kappa explicitly");
    k = *sk;
  }
  if (!(k >= -1.0 && k <= 0.0))
    raise(errc::kappa_out_of_range, "convolution bound needs kappa in [-1, 0]");

  ConvolutionResult out;
  out.folds = folds;
  out.kappa = k;
  const double maxd = spec.max_density();
  out.bound = junge_bound(n, k, folds) * maxd;

  switch (spec.family()) {
    case DensitySpec::Family::gaussian:
      out.max_density = maxd * std::pow(folds, -0.5 * n);
      out.method = "closed-form";
      break;
    case DensitySpec::Family::exponential_product: {
      double v = 1.0;
      for (int i = 0; i < n; ++i) v *= gamma_mode_density(folds, spec.rates()[i]);
      out.max_density = v;
      out.method = "closed-form";
      break;
    }
    case DensitySpec::Family::uniform_body: {
      const Body& b = spec.body();
      double len;  // interval length per coordinate
      if (b.kind == Body::Kind::cube) {
        len = b.side;
      } else if (n == 1) {
        VectorXd lo, hi;
        b.bounding_box(lo, hi);
        len = hi[0] - lo[0];
      } else {
        raise(errc::unsupported,
              "self-convolution of non-cube bodies is implemented for n = 1 only");
      }
      out.max_density = std::pow(irwin_hall_peak(folds) / len, b.kind == Body::Kind::cube ? n : 1);
      out.method = "closed-form";
      break;
    }
    case DensitySpec::Family::cauchy:
      // sums of stable laws rescale: ||f^{*m}|| = m^{-n/alpha} ||f||
      out.max_density = maxd / folds;
      out.method = "closed-form";
      break;
    case DensitySpec::Family::stable_symmetric:
      out.max_density = maxd * std::pow(folds, -1.0 / spec.stable_alpha());
      out.method = "closed-form";
      break;
    default:
      if (n != 1)
        raise(errc::unsupported, "generic self-convolution is one-dimensional only");
      out.max_density = self_convolve_max_fft(spec, folds);
      out.method = "fft";
      break;
  }
  out.slack = out.bound - out.max_density;
  return out;
}

// ---------------------------------------------------------------- mixtures

double MixingDensity::log_density(double v) const {
  if (kind != Kind::gamma)
    raise(errc::invalid_argument, "point mixing has no density");
  if (!(v > 0.0)) return -kInf;
  return shape * std::log(rate) + (shape - 1.0) * std::log(v) - rate * v -
         std::lgamma(shape);
}

double MixingDensity::sample(Rng& rng) const {
  if (kind == Kind::point) return point;
  return rng.gamma(shape) / rate;
}

double MixingDensity::mean_log() const {
  if (kind == Kind::point) return std::log(point);
  return digamma(shape) - std::log(rate);
}

double MixingDensity::mean_inverse() const { return mean_inverse_pow(1.0); }

double MixingDensity::mean_inverse_pow(double p) const {
  if (kind == Kind::point) return std::pow(point, -p);
  if (!(shape > p))
    raise(errc::divergent_mixing_moment, "E[V^{-p}] diverges for gamma shape <= p");
  return std::pow(rate, p) * std::exp(std::lgamma(shape - p) - std::lgamma(shape));
}

namespace {

constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

double mixing_v_upper(const MixingDensity& m) {
  if (m.kind == MixingDensity::Kind::point) return m.point;
  return (m.shape * 10.0 + 60.0) / m.rate;
}

// log-substituted inner integral of the variance-mixture density
double gaussian_mixture_pdf(const MixingDensity& mixing, int n, double r2) {
  if (mixing.kind == MixingDensity::Kind::point) {
    const double v = mixing.point;
    return std::exp(-0.5 * (n * (kLogTwoPi + std::log(v))) - 0.5 * r2 / v);
  }
  const double w_lo = std::log(1e-14);
  const double w_hi = std::log(mixing_v_upper(mixing));
  quad::Options opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-9;
  opt.max_evals = 200'000;
  const auto integrand = [&mixing, n, r2](double w) {
    const double v = std::exp(w);
    const double l = mixing.log_density(v) + w - 0.5 * n * (kLogTwoPi + w) - 0.5 * r2 / v;
    return l < -700.0 ? 0.0 : std::exp(l);
  };
  return quad::integrate_1d(integrand, w_lo, w_hi, opt).value;
}

DensitySpec potential_base_spec(const MixtureSpec& mix) {
  Support sup;
  sup.kind = Support::Kind::real_line;
  sup.n = mix.n;
  return DensitySpec::potential_log_concave(mix.phi, sup);
}

}  // namespace

double mixture_pdf(const MixtureSpec& mix, const VectorXd& x) {
  if (x.size() != mix.n) raise(errc::invalid_argument, "point has wrong dimension");
  if (mix.base == MixtureSpec::Base::gaussian && mix.param == MixtureSpec::Param::variance)
    return gaussian_mixture_pdf(mix.mixing, mix.n, x.squaredNorm());
  // scale mixture of a potential base
  const DensitySpec base = potential_base_spec(mix);
  const double w_lo = std::log(1e-12);
  const double w_hi = std::log(mixing_v_upper(mix.mixing));
  quad::Options opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-9;
  const int n = mix.n;
  const auto integrand = [&mix, &base, &x, n](double w) {
    const double s = std::exp(w);
    const double lm = mix.mixing.kind == MixingDensity::Kind::gamma
                          ? mix.mixing.log_density(s)
                          : 0.0;
    const double l = lm + w - n * w + base.log_pdf(x / s);
    return l < -700.0 ? 0.0 : std::exp(l);
  };
  if (mix.mixing.kind == MixingDensity::Kind::point) {
    const double s = mix.mixing.point;
    return std::exp(base.log_pdf(x / s) - n * std::log(s));
  }
  return quad::integrate_1d(integrand, w_lo, w_hi, opt).value;
}

BoundCheck mixture_logconcavity_condition(const MixtureSpec& mix, std::uint64_t seed) {
  BoundCheck c;
  c.check_id = "MIX_LOGCONCAVE";
  c.tol = 1e-6;
  if (mix.mixing.kind == MixingDensity::Kind::point) {
    c.anchor = "a deterministic scale keeps the base log-concave";
    c.lhs = 0.0;
    c.rhs = 0.0;
    c.slack = 0.0;
    c.verdict = BoundCheck::Verdict::pass;
    c.inputs["mixing"] = "point";
    return c;
  }
  if (mix.base == MixtureSpec::Base::gaussian && mix.param == MixtureSpec::Param::variance) {
    c.anchor = "(n/2) log v - log m(v) is convex on (0, inf)";
    const auto grid = log_spaced_grid(1e-3, 1e3, 64);
    const auto f = [&mix](double v) {
      return 0.5 * mix.n * std::log(v) - mix.mixing.log_density(v);
    };
    double worst = -kInf;
    double scale = 1.0;
    for (std::size_t i = 0; i + 2 < grid.size(); ++i) {
      const double v1 = grid[i], v2 = grid[i + 1], v3 = grid[i + 2];
      const double s1 = (f(v2) - f(v1)) / (v2 - v1);
      const double s2 = (f(v3) - f(v2)) / (v3 - v2);
      worst = std::max(worst, s1 - s2);  // positive means slopes decreased: concave spot
      scale = std::max({scale, std::abs(s1), std::abs(s2)});
    }
    c.lhs = worst;
    c.rhs = 0.0;
    c.slack = -worst;
    c.inputs["grid_points"] = grid.size();
    c.verdict = worst <= c.tol * scale ? BoundCheck::Verdict::pass : BoundCheck::Verdict::fail;
    return c;
  }
  // scale mixture: sampled Hessian positive-semidefiniteness of
  // phibar(x, s) = phi(x/s) - log m(s) + n log s
  c.anchor = "phi(x/s) - log(m(s)/s^n) is convex in (x, s)";
  const int n = mix.n;
  const auto phibar = [&mix, n](const VectorXd& x, double s) {
    return mix.phi(x / s) - mix.mixing.log_density(s) + n * std::log(s);
  };
  Rng rng(seed);
  double worst = -kInf;  // per-sample relative violation
  for (int trial = 0; trial < 256; ++trial) {
    VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = 3.0 * rng.normal();
    const double s = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
    const int d = n + 1;
    MatrixXd H(d, d);
    const auto at = [&phibar, &x, s, n](const VectorXd& dx, double ds) {
      return phibar(x + dx.head(n), s + ds);
    };
    VectorXd e = VectorXd::Zero(d);
    std::vector<double> h(d);
    for (int i = 0; i < n; ++i) h[i] = 1e-4 * (1.0 + std::abs(x[i]));
    h[n] = 1e-4 * (1.0 + std::abs(s));
    if (s - 2.0 * h[n] <= 0.0) continue;
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        VectorXd dxi = VectorXd::Zero(n), dxj = VectorXd::Zero(n);
        double dsi = 0.0, dsj = 0.0;
        (i < n ? dxi[i] : dsi) = 1.0;
        (j < n ? dxj[j] : dsj) = 1.0;
        const double fpp = at(h[i] * dxi + h[j] * dxj, h[i] * dsi + h[j] * dsj);
        const double fpm = at(h[i] * dxi - h[j] * dxj, h[i] * dsi - h[j] * dsj);
        const double fmp = at(-h[i] * dxi + h[j] * dxj, -h[i] * dsi + h[j] * dsj);
        const double fmm = at(-h[i] * dxi - h[j] * dxj, -h[i] * dsi - h[j] * dsj);
        H(i, j) = H(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
      }
    }
    const Eigen::SelfAdjointEigenSolver<MatrixXd> es(H);
    const double lam = es.eigenvalues().minCoeff();
    worst = std::max(worst, -lam / std::max(1.0, H.norm()));
  }
  c.lhs = worst;
  c.rhs = 0.0;
  c.slack = -worst;
  c.inputs["sampled_points"] = 256;
  c.verdict = worst <= c.tol ? BoundCheck::Verdict::pass : BoundCheck::Verdict::fail;
  return c;
}

std::pair<double, double> mixture_bounds(const MixtureSpec& mix) {
  const int n = mix.n;
  const BoundCheck cond = mixture_logconcavity_condition(mix);
  if (!cond.ok())
    raise(errc::condition_violated,
          "the log-concavity condition fails; the upper bound is not available");
  if (mix.base == MixtureSpec::Base::gaussian && mix.param == MixtureSpec::Param::variance) {
    const double hg = 0.5 * n * (kLogTwoPi + 1.0);
    const double lower = hg + 0.5 * n * mix.mixing.mean_log();
    const double upper = hg + 0.5 * n - std::log(mix.mixing.mean_inverse());
    return {lower, upper};
  }
  const DensitySpec base = potential_base_spec(mix);
  const Estimate hf = entropy_quad(base);
  const double lower = hf.value + n * mix.mixing.mean_log();
  const double upper =
      n - std::log(base.max_density()) - std::log(mix.mixing.mean_inverse_pow(n));
  return {lower, upper};
}

Estimate mixture_entropy_mc(const MixtureSpec& mix, std::uint64_t seed,
                            std::int64_t samples) {
  if (samples < 1) raise(errc::invalid_argument, "sample count must be >= 1");
  if (!(mix.base == MixtureSpec::Base::gaussian && mix.param == MixtureSpec::Param::variance))
    raise(errc::unsupported,
          "Monte Carlo mixture entropy is implemented for Gaussian variance mixtures");
  constexpr int kBatches = 16;
  const std::int64_t per_batch = std::max<std::int64_t>(1, samples / kBatches);
  Rng base(seed);
  std::vector<double> means;
  for (int b = 0; b < kBatches; ++b) {
    Rng rng = base.substream(b);
    double acc = 0.0;
    for (std::int64_t i = 0; i < per_batch; ++i) {
      const double v = mix.mixing.sample(rng);
      double r2 = 0.0;
      for (int d = 0; d < mix.n; ++d) {
        const double z = rng.normal();
        r2 += v * z * z;
      }
      const double g = gaussian_mixture_pdf(mix.mixing, mix.n, r2);
      if (!(g > 0.0))
        raise(errc::evaluation_failure, "inner quadrature produced a non-positive density");
      acc += -std::log(g);
    }
    means.push_back(acc / static_cast<double>(per_batch));
  }
  const BatchStats st = batch_stats(means);
  return Estimate{st.mean, st.stderr_, Method::monte_carlo, per_batch * kBatches};
}

}  // namespace ce
