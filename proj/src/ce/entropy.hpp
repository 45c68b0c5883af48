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

#include "ce/densities.hpp"

namespace ce {

// All entropies are in nats.

// Exact Shannon entropy for the families with a closed form
// (gaussian, exponential product, uniform body, multivariate pareto, cauchy).
Estimate entropy_closed(const DensitySpec& spec);

// Exact Renyi entropy h_p, p > 0, p != 1, for gaussian / exponential product /
// uniform body / multivariate pareto.
Estimate renyi_closed(const DensitySpec& spec, double p);

// Plug-in estimator -(1/m) sum log f(X_i) with a batch standard error.
Estimate entropy_mc(const DensitySpec& spec, std::uint64_t seed, std::int64_t samples);

// Adaptive quadrature of -f log f over the support chart, n <= 3.
Estimate entropy_quad(const DensitySpec& spec);

// Closed form when available, quadrature otherwise.
Estimate entropy_auto(const DensitySpec& spec);

// h_p by quadrature of f^p, n <= 3. Accepts p = infinity (returns -log ||f||).
Estimate renyi_auto(const DensitySpec& spec, double p);

// Normalizer Z_n(beta, a) of the multivariate Pareto density and the companion
// logarithmic integral L_n(beta, a); both finite exactly when beta > n.
double pareto_normalizer(int n, double beta, double a);
double pareto_log_integral(int n, double beta, double a);

struct GaussFit {
  enum class MatchBy { max_density, covariance };
  MatchBy matched_by = MatchBy::covariance;
  VectorXd mean;
  MatrixXd covariance;
};
GaussFit gauss_fit(const DensitySpec& spec, GaussFit::MatchBy by);

double gaussian_entropy(const MatrixXd& cov);

// D(f) = h(Z) - h(X) against the Gaussian with matched mean and covariance.
Estimate relative_entropy_to_gaussian(const DensitySpec& spec);

// L_f = ||f||^{1/n} det(R)^{1/(2n)}
double isotropic_constant(const DensitySpec& spec);

// I(f) = D(f || product of marginals) for the Gaussian with covariance R,
// which is (1/2) log( prod R_ii / det R ).
double gaussian_independence_distance(const MatrixXd& R);

}  // namespace ce
