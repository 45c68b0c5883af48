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

#include <json.hpp>

#include "ce/entropy.hpp"

namespace ce {

using Json = nlohmann::ordered_json;

// One executable inequality instance. `slack = rhs - lhs` for one-sided
// checks; window checks report the binding side and echo the full window in
// `inputs`. A verdict of `equality` also counts as a pass.
struct BoundCheck {
  std::string check_id;
  std::string anchor;  // plain statement of the inequality being tested
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tol = 1e-7;
  enum class Verdict { pass, fail, equality };
  Verdict verdict = Verdict::fail;
  Json inputs;

  bool ok() const { return verdict != Verdict::fail; }
};

const char* verdict_name(BoundCheck::Verdict v);

struct CheckDef {
  std::string id;
  std::string anchor;
  bool needs_log_concave = false;
  bool needs_beta_form = false;   // density phi^{-beta}, beta >= n+1
  bool needs_one_dim = false;
  bool needs_finite_cov = false;
  bool needs_body = false;        // runs on a uniform body carrying a test function
  std::string params_doc;
};

const std::vector<CheckDef>& check_catalog();

// Executes one catalog entry against a density spec. `params` carries
// check-specific knobs (orders p/q, the test-function name, rho, grids).
BoundCheck run_check(const std::string& check_id, const DensitySpec& spec,
                     const Json& params = Json::object(), std::uint64_t seed = 1,
                     double tol = 1e-7);

// beta * sum_{i=1..n} 1/(beta - i); the extremal entropy excess at given
// max density within the beta-representable class. Decreasing in beta with
// limit n.
double kconc_upper_bound(int n, double beta);

// Per-coordinate bound on h/n - log ||f||^{-1/n}:
//   multiplicative regime (beta >= beta0 * n, beta0 > 1):  beta0/(beta0-1)
//   additive regime (beta >= beta0 + n, beta0 >= 1, n >= 2):
//     1/(n-1) + (1 + beta0/n) log(1 + (n-1)/beta0)
double beta_regime_bound(int n, double beta, double beta0, bool additive);

// (finite_n, asymptotic) lower-bound constants for L_f^2:
// omega_n^{-2/n}/(n+2) and 1/(2 pi e).
std::pair<double, double> iso_lower_constant(int n);

// Midpoint log-concavity test of a positive curve on a grid.
BoundCheck logconcavity_in_p(const std::string& check_id, const std::string& anchor,
                             const std::function<double(double)>& curve,
                             const std::vector<double>& grid, double tol = 1e-7,
                             double eq_tol = 1e-9);

// L_{mu,rho} = int rho(||f||^{1/n} |x - c|) f(x) dx versus its minimum over
// all laws, attained by the uniform centered ball. rho is either t^2 or an
// indicator 1_(r,inf); c is the spec mean when `centered`.
BoundCheck hensley_ball_check(const DensitySpec& spec, const Json& rho_params,
                              std::uint64_t seed = 1, double tol = 1e-7);

std::vector<double> log_spaced_grid(double lo, double hi, int points);

// Named concave test functions over a body (for the norm checks).
std::function<double(const VectorXd&)> concave_test_function(const std::string& name,
                                                             const Body& body);

}  // namespace ce
