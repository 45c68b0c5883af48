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

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ce/common.hpp"
#include "ce/quadrature.hpp"

namespace ce {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Convex body with a center offset.
struct Body {
  enum class Kind { ball, cube, simplex, ellipsoid };

  Kind kind = Kind::cube;
  int n = 1;
  double radius = 1.0;  // ball
  double side = 1.0;    // cube
  double scale = 1.0;   // simplex: {y_i > 0, sum y_i < scale}, y = x - center
  MatrixXd shape;       // ellipsoid: {y' shape^{-1} y <= 1}, SPD
  VectorXd center;

  double volume() const;
  bool contains(const VectorXd& x) const;
  VectorXd mean() const;
  MatrixXd covariance() const;
  VectorXd sample(Rng& rng) const;
  // axis-aligned bounding box
  void bounding_box(VectorXd& lo, VectorXd& hi) const;
};

Body make_ball(int n, double radius, VectorXd center = VectorXd());
Body make_cube(int n, double side, VectorXd center = VectorXd());
Body make_simplex(int n, double scale, VectorXd center = VectorXd());
Body make_ellipsoid(MatrixXd shape, VectorXd center = VectorXd());

struct Support {
  enum class Kind { real_line, orthant, box };
  Kind kind = Kind::real_line;
  int n = 1;
  VectorXd lo, hi;  // box only

  bool contains(const VectorXd& x) const;
};

// Convex potentials for densities of the form phi^{-beta} or e^{-phi}.
// Named kinds round-trip through JSON; `custom` is in-process only.
struct Potential {
  std::string kind;  // affine | quadratic | sqrt_quadratic | inverse_tent | custom
  double c0 = 0.0;
  VectorXd coeffs;
  std::function<double(const VectorXd&)> custom;

  double operator()(const VectorXd& x) const;
};

struct KappaReport {
  double kappa = 0.0;
  int trials = 0;
  double worst_violation = 0.0;  // relative, log-domain
  double tol = 1e-7;
  bool pass = false;
};

// Change of variables used to integrate over a density's support: maps a
// reference box onto the support with the Jacobian factored in, so unbounded
// and curved regions become plain box cubatures.
struct Chart {
  std::vector<double> lo, hi;
  // writes x(u), returns |dx/du|
  std::function<double(const double* u, double* x)> map;
  int dim() const { return static_cast<int>(lo.size()); }
};

class DensitySpec {
 public:
  enum class Family {
    gaussian,
    exponential_product,
    uniform_body,
    pareto_mv,
    cauchy,
    stable_symmetric,
    potential,
  };

  static DensitySpec gaussian(VectorXd mean, MatrixXd cov);
  static DensitySpec exponential_product(VectorXd rates);
  static DensitySpec uniform(Body body);
  static DensitySpec pareto(int n, double beta, double a);
  static DensitySpec cauchy1d(double scale);
  static DensitySpec stable1d(double alpha);
  // f = phi^{-beta} on the support, normalized numerically (n <= 3)
  static DensitySpec potential_density(Potential phi, double beta, Support support);
  // f = e^{-phi} on the support, normalized numerically (n <= 3)
  static DensitySpec potential_log_concave(Potential phi, Support support);

  Family family() const { return family_; }
  int dim() const { return n_; }
  const char* family_name() const;

  double pdf(const VectorXd& x) const;
  double log_pdf(const VectorXd& x) const;  // -inf outside the support
  double max_density() const;

  struct MomentSummary {
    VectorXd mean;
    MatrixXd covariance;
    double sigma2 = 0.0;  // det(covariance)^{1/n}
  };
  MomentSummary moments() const;

  VectorXd sample_one(Rng& rng) const;
  // m rows of dimension n, deterministic in the seed
  MatrixXd sample(std::uint64_t seed, int m) const;

  KappaReport kappa_classify(double kappa, int trials, std::uint64_t seed,
                             double tol = 1e-7) const;

  bool is_log_concave() const;
  // structural concavity parameter of the induced measure, when known
  std::optional<double> structural_kappa() const;

  Chart chart() const;

  // draws a point of the supporting set from a reference distribution;
  // used by triple sampling and rejection, not tied to the density itself
  VectorXd support_sample(Rng& rng) const;

  // family parameters (read-only views)
  const VectorXd& mean_param() const { return mean_; }
  const MatrixXd& cov_param() const { return cov_; }
  const VectorXd& rates() const { return rates_; }
  const Body& body() const { return body_; }
  double beta() const { return beta_; }
  double pareto_a() const { return a_; }
  double cauchy_scale() const { return scale_; }
  double stable_alpha() const { return alpha_; }
  const Potential& potential() const { return phi_; }
  const Support& support() const { return support_; }
  bool potential_is_log_concave() const { return pot_log_concave_; }
  double gaussian_log_det() const { return gauss_log_det_; }
  const MatrixXd& gaussian_chol() const { return gauss_chol_; }

 private:
  DensitySpec() = default;
  void finalize_potential();

  Family family_ = Family::gaussian;
  int n_ = 1;

  VectorXd mean_;
  MatrixXd cov_;
  MatrixXd gauss_chol_;      // lower triangular factor of cov
  double gauss_log_det_ = 0.0;

  VectorXd rates_;
  Body body_;
  double beta_ = 0.0;
  double a_ = 1.0;
  double scale_ = 1.0;
  double alpha_ = 2.0;

  Potential phi_;
  bool pot_log_concave_ = false;
  Support support_;
  double pot_log_norm_ = 0.0;
  VectorXd pot_mode_;
  double pot_min_ = 0.0;
  bool pot_normalized_ = false;
};

namespace detail {
// symmetric-stable density by characteristic function inversion (any alpha),
// kept callable directly so the closed-form fast paths can be cross-checked
double stable_pdf_numeric(double alpha, double x);
// convex minimization by projected gradient descent with backtracking
struct ModeSearch {
  VectorXd minimizer;
  double value = 0.0;
  double grad_norm = 0.0;
  bool converged = false;
  int iterations = 0;
};
ModeSearch minimize_convex(const std::function<double(const VectorXd&)>& f,
                           const Support& support, const VectorXd& x0);
}  // namespace detail

}  // namespace ce
