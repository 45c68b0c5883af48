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

#pragma once

#include "ce/inequalities.hpp"

namespace ce {

// (e^{1 - kappa n} / sqrt(m))^n, kappa in [-1, 0]: multiplicative bound on
// ||f^{*m}|| / ||f|| for densities of kappa-concave measures.
double junge_bound(int n, double kappa, int folds);

struct ConvolutionResult {
  int folds = 1;
  double max_density = 0.0;  // ||f^{*m}||
  std::string method;        // closed-form | fft
  double kappa = 0.0;
  double bound = 0.0;        // junge_bound * ||f||
  double slack = 0.0;        // bound - max_density
};

// ||f^{*m}|| with the bound attached. Closed forms: gaussian (variance scales
// with m), exponential product (gamma mode), cube (sum-of-uniforms peak),
// cauchy/stable (self-similarity). Other one-dimensional specs go through the
// FFT grid path. kappa defaults to the spec's structural value.
ConvolutionResult self_convolve_max(const DensitySpec& spec, int folds,
                                    std::optional<double> kappa = std::nullopt);

// forces the grid path (useful to cross-check the closed forms); 1-d only
double self_convolve_max_fft(const DensitySpec& spec, int folds);

// peak of the density of a sum of m iid uniform[0,1] variables
double irwin_hall_peak(int m);
// mode density of a gamma(shape m, rate lambda) variable
double gamma_mode_density(int m, double lambda);

// Scale mixtures. Variance parameterization: X = sqrt(V) Z with V ~ mixing
// on (0, inf) and Z a standard n-dim Gaussian. Scale parameterization:
// X = S Y with Y ~ exp(-phi) having its mode at 0.
struct MixingDensity {
  enum class Kind { gamma, point };
  Kind kind = Kind::gamma;
  double shape = 2.0;
  double rate = 1.0;
  double point = 1.0;

  double log_density(double v) const;  // gamma only
  double sample(Rng& rng) const;
  double mean_log() const;             // E[log V]
  double mean_inverse() const;         // E[1/V], raises when divergent
  double mean_inverse_pow(double p) const;  // E[V^{-p}]
};

struct MixtureSpec {
  enum class Base { gaussian, potential };
  enum class Param { variance, scale };
  Base base = Base::gaussian;
  Param param = Param::variance;
  int n = 1;
  Potential phi;      // potential base only; e^{-phi} must integrate to 1
  MixingDensity mixing;
};

// Entropy bracket for the mixture:
//   variance/gaussian: [h(g) + (n/2) E log V,  h(g) + n/2 - log E[1/V]]
//   scale/potential:   [h(f) + n E log S,      n + phi(0) - log E[S^{-n}]]
// The upper side requires the log-concavity condition below to hold.
std::pair<double, double> mixture_bounds(const MixtureSpec& mix);

// Sufficient condition for the mixture to be log-concave. Variance/gaussian:
// convexity of (n/2) log v - log m(v) on a log-spaced grid. Scale/potential:
// sampled positive-semidefiniteness of the Hessian of
// phi(x/s) - log(m(s)/s^n).
BoundCheck mixture_logconcavity_condition(const MixtureSpec& mix, std::uint64_t seed = 1);

double mixture_pdf(const MixtureSpec& mix, const VectorXd& x);

// plug-in Monte Carlo of the mixture entropy; inner 1-d quadrature per point
Estimate mixture_entropy_mc(const MixtureSpec& mix, std::uint64_t seed,
                            std::int64_t samples);

namespace detail {
// in-place radix-2 FFT, size a power of two; inverse when `invert`
void fft(std::vector<std::complex<double>>& a, bool invert);
}  // namespace detail

}  // namespace ce
