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

#include <complex>

#include "ce/entropy.hpp"

namespace ce {

// Characteristic function of a (possibly multivariate product-form) law,
// evaluated along one axis; `norm2_closed` is the closed form of
// int |phi|^2 dt over R^n when one is known.
struct CharFn {
  int n = 1;
  bool symmetric = true;
  std::function<std::complex<double>(double)> eval;  // one-dimensional section
  std::optional<double> norm2_closed;
};

// phi(t) = E exp(i t X) for the spec's family; unsupported families raise.
CharFn chf_of(const DensitySpec& spec);

// ||phi||_2^2 = int |phi(t)|^2 dt; closed form when known, otherwise adaptive
// quadrature with symmetric truncation where |phi| < 1e-12 (T doubled until
// the value is stable to 1e-9).
Estimate chf_norm2(const CharFn& chf);
Estimate chf_norm2(const DensitySpec& spec);

// closed form 2^{1-1/alpha} Gamma(1/alpha) / alpha for exp(-|t|^alpha)
double stable_chf_norm2(double alpha);

// [h2, h2 + gap] bracket for h(X), where h2 = n log(2 pi) - log ||phi||_2^2.
// The gap is n for log-concave specs and beta * sum 1/(beta - i) for
// beta-representable specs with beta >= n+1.
std::pair<double, double> plancherel_window(const DensitySpec& spec);

// h2 from the mode identity int f^2 = 2^{-n/alpha} f(0), plus both sides of
// (1/n) h2 = log ||f||^{-1/n} + (log 2)/alpha for cross-checking.
struct StableH2 {
  double h2 = 0.0;
  double lhs = 0.0;  // (1/n) h2
  double rhs = 0.0;  // log ||f||^{-1/n} + (log 2)/alpha
};
StableH2 stable_h2_identity(double alpha, int n, double f0);

// kappa <= (1 - log(2)/alpha) / n; negative for alpha < log 2.
double stable_kappa_upper(double alpha, int n);

// Stationary Gaussian process model: named spectra or a finite
// autocovariance sequence (zero beyond the given lags).
class SpectralModel {
 public:
  static SpectralModel white(double sigma);
  static SpectralModel ar1(double coefficient, double sigma);
  static SpectralModel ma1(double theta, double sigma);
  static SpectralModel autocov(std::vector<double> r);

  double r(int k) const;        // autocovariance at lag k >= 0
  double G(double lambda) const;  // spectral density on [0, 2 pi)
  const char* kind_name() const;

  enum class Kind { white, ar1, ma1, autocov };
  Kind kind() const { return kind_; }
  double coefficient() const { return coeff_; }
  double sigma() const { return sigma_; }
  const std::vector<double>& autocov_seq() const { return r_; }

 private:
  Kind kind_ = Kind::white;
  double coeff_ = 0.0;
  double sigma_ = 1.0;
  std::vector<double> r_;
};

// (1/n) h(X^n) = (1/2) log(2 pi e) + (1/(2n)) log det R_n.
double toeplitz_block_entropy(const SpectralModel& model, int n);

// all block entropies for n = 1..n_max from one triangular factorization
std::vector<double> block_entropy_trajectory(const SpectralModel& model, int n_max);

// entropy rate (1/2) log(2 pi e) + (1/2) (1/(2 pi)) int_0^{2pi} log G;
// the factor 1/2 on the spectral integral is validated against the
// Toeplitz limit (see szego_rate_unhalved for the rejected reading).
double szego_rate(const SpectralModel& model);
double szego_rate_unhalved(const SpectralModel& model);

// liminf/limsup estimates of (1/n) log ||f_n||^{-1} from the tail window of
// a horizon, plus the log-concave upper rate f_plus + 1.
struct RateBounds {
  double f_minus = 0.0;
  double f_plus = 0.0;
  double upper_rate = 0.0;
};
// input: log ||f_n|| for n = 1..N (natural logs; N >= 8)
RateBounds process_rate_bounds(const std::vector<double>& log_max_density);

// log ||f_n|| sequence of the model's Gaussian blocks, n = 1..n_max
std::vector<double> gaussian_log_max_density_seq(const SpectralModel& model, int n_max);

}  // namespace ce
