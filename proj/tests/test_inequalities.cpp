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

#include <doctest.h>

#include <cmath>

#include "ce/inequalities.hpp"

using namespace ce;

namespace {

VectorXd vec1(double x) {
  VectorXd v(1);
  v[0] = x;
  return v;
}

const DensitySpec kExp1 = DensitySpec::exponential_product(VectorXd::Constant(1, 1.0));
const DensitySpec kExp3 = DensitySpec::exponential_product(VectorXd::Constant(3, 1.0));
const DensitySpec kCube1 = DensitySpec::uniform(make_cube(1, 1.0));
const DensitySpec kGauss1 = DensitySpec::gaussian(VectorXd::Zero(1), MatrixXd::Identity(1, 1));

}  // namespace

TEST_CASE("shannon bounds: lower holds for everything, upper needs log-concavity") {
  for (const DensitySpec& spec :
       {kExp3, kCube1, kGauss1, DensitySpec::pareto(2, 4.0, 1.0), DensitySpec::cauchy1d(1.0)})
    CHECK(run_check("SHANNON_LO", spec).ok());
  // stable law goes through the quadrature path
  CHECK(run_check("SHANNON_LO", DensitySpec::stable1d(1.5)).ok());

  CHECK(run_check("SHANNON_UP", kExp3).verdict == BoundCheck::Verdict::equality);
  CHECK(run_check("SHANNON_UP", kGauss1).ok());
  CHECK_THROWS_AS((void)run_check("SHANNON_UP", DensitySpec::cauchy1d(1.0)), Error);
}

TEST_CASE("gaussian window: equalities at the documented extremes") {
  // product exponentials attain the upper edge: h/n = h(Z)/n + 1/2
  const BoundCheck up = run_check("GAUSS_WINDOW", kExp3);
  CHECK(up.verdict == BoundCheck::Verdict::equality);
  CHECK(up.inputs["value"].get<double>() == doctest::Approx(1.0));
  CHECK(up.inputs["upper"].get<double>() == doctest::Approx(1.0));

  // uniform bodies attain the lower edge
  for (const auto& body :
       {make_cube(2, 1.7), make_ball(2, 0.8), make_simplex(2, 1.2)}) {
    const BoundCheck lo = run_check("GAUSS_WINDOW", DensitySpec::uniform(body));
    CHECK(lo.verdict == BoundCheck::Verdict::equality);
    CHECK(lo.inputs["value"].get<double>() ==
          doctest::Approx(lo.inputs["lower"].get<double>()));
  }

  // gaussians sit exactly in the middle
  const BoundCheck mid = run_check("GAUSS_WINDOW", kGauss1);
  CHECK(mid.ok());
  CHECK(mid.inputs["value"].get<double>() ==
        doctest::Approx(mid.inputs["h_matched_gaussian_per_n"].get<double>()));
}

TEST_CASE("renyi upper bound with exponential equality") {
  for (double p : {1.5, 2.0, 4.0}) {
    Json params;
    params["p"] = p;
    CHECK(run_check("RENYI_UP", kExp3, params).verdict == BoundCheck::Verdict::equality);
    CHECK(run_check("RENYI_UP", kGauss1, params).ok());
    CHECK(run_check("RENYI_UP", kCube1, params).ok());
  }
  // slack shrinks as p grows on a gaussian (the bound tightens toward h_inf)
  Json p2, p8;
  p2["p"] = 2.0;
  p8["p"] = 8.0;
  CHECK(run_check("RENYI_UP", kGauss1, p8).slack < run_check("RENYI_UP", kGauss1, p2).slack);
}

TEST_CASE("renyi comparison across orders") {
  for (double p : {1.0, 2.0}) {
    for (double q : {1.0, 3.0, kInf}) {
      Json params;
      params["p"] = p;
      params["q"] = q;
      CHECK(run_check("RENYI_COMPARE", kExp3, params).ok());
      CHECK(run_check("RENYI_COMPARE", kGauss1, params).ok());
    }
  }
}

TEST_CASE("kconc upper bound formula and check") {
  CHECK(kconc_upper_bound(1, 2.0) == doctest::Approx(2.0));
  CHECK(kconc_upper_bound(2, 4.0) == doctest::Approx(10.0 / 3.0));
  CHECK(kconc_upper_bound(3, 1e9) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK_THROWS_AS((void)kconc_upper_bound(2, 2.0), Error);
  // decreasing in beta
  double prev = kInf;
  for (double beta : {3.1, 4.0, 6.0, 12.0, 50.0}) {
    const double b = kconc_upper_bound(2, beta);
    CHECK(b < prev);
    prev = b;
  }

  // every pareto attains the bound exactly
  for (const auto& [n, beta] : std::vector<std::pair<int, double>>{{1, 2.0}, {2, 4.0}, {3, 5.5}}) {
    const BoundCheck c = run_check("KCONC_UP", DensitySpec::pareto(n, beta, 1.0));
    CHECK(c.verdict == BoundCheck::Verdict::equality);
    CHECK(c.rhs == doctest::Approx(kconc_upper_bound(n, beta)));
  }
  // cauchy: h + log ||f|| = log(4 pi) - log pi = log 4 < 2
  const BoundCheck c = run_check("KCONC_UP", DensitySpec::cauchy1d(1.0));
  CHECK(c.ok());
  CHECK(c.lhs == doctest::Approx(std::log(4.0)));
  CHECK(c.rhs == doctest::Approx(2.0));
  // the n < beta < n+1 gap is rejected
  CHECK_THROWS_AS((void)run_check("KCONC_UP", DensitySpec::pareto(1, 1.5, 1.0)), Error);
  CHECK_THROWS_AS((void)run_check("KCONC_UP", kGauss1), Error);
}

TEST_CASE("renyi bounds for convex measures") {
  Json params;
  params["p"] = 2.0;
  // cauchy with beta = 2: h_2 - log ||f||^{-1} = log 2 <= log 3
  const BoundCheck c = run_check("RENYI_CVX", DensitySpec::cauchy1d(1.0), params);
  CHECK(c.ok());
  CHECK(c.inputs["value"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(c.inputs["upper"].get<double>() == doctest::Approx(std::log(3.0)));

  for (const auto& [n, beta] :
       std::vector<std::pair<int, double>>{{1, 2.5}, {2, 3.5}, {2, 6.0}}) {
    CHECK(run_check("RENYI_CVX", DensitySpec::pareto(n, beta, 1.0), params).ok());
    Json pq = params;
    pq["q"] = 5.0;
    CHECK(run_check("RENYI_CVX", DensitySpec::pareto(n, beta, 1.0), pq).ok());
    pq["q"] = "inf";
    CHECK(run_check("RENYI_CVX", DensitySpec::pareto(n, beta, 1.0), pq).ok());
  }
}

TEST_CASE("one-dimensional sigma window") {
  // uniform attains the upper edge: 1/||f|| = sqrt(12) sigma
  const BoundCheck u = run_check("ONED_SIGMA", kCube1);
  CHECK(u.verdict == BoundCheck::Verdict::equality);
  CHECK(run_check("ONED_SIGMA", kGauss1).ok());
  CHECK(run_check("ONED_SIGMA", kExp1).ok());
  CHECK_THROWS_AS((void)run_check("ONED_SIGMA", kExp3), Error);  // not 1-d
}

TEST_CASE("median-max check with the exponential equality") {
  const BoundCheck e = run_check("MED_MAX", kExp1);
  // max f = 1 and 2 f(median) = 1: the limit case of the strict form
  CHECK(e.verdict == BoundCheck::Verdict::equality);
  CHECK(e.inputs["median"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-7));

  CHECK(run_check("MED_MAX", kGauss1).ok());
  CHECK(run_check("MED_MAX", kCube1).ok());
  const auto shifted =
      DensitySpec::gaussian(vec1(3.0), MatrixXd::Constant(1, 1, 0.25));
  const BoundCheck g = run_check("MED_MAX", shifted);
  CHECK(g.inputs["median"].get<double>() == doctest::Approx(3.0).epsilon(1e-7));
}

TEST_CASE("isotropic lower bound") {
  const auto [c1, asym] = iso_lower_constant(1);
  CHECK(c1 == doctest::Approx(1.0 / 12.0));
  CHECK(iso_lower_constant(2).first == doctest::Approx(1.0 / (4.0 * M_PI)));
  CHECK(asym == doctest::Approx(1.0 / (2.0 * M_PI * M_E)));

  // interval = 1-d ball: equality
  CHECK(run_check("ISO_LB", kCube1).verdict == BoundCheck::Verdict::equality);
  // centered balls attain it in any dimension
  CHECK(run_check("ISO_LB", DensitySpec::uniform(make_ball(3, 1.3))).verdict ==
        BoundCheck::Verdict::equality);
  CHECK(run_check("ISO_LB", kGauss1).ok());
  CHECK(run_check("ISO_LB", DensitySpec::pareto(1, 4.0, 1.0)).ok());
}

TEST_CASE("entropic distance vs isotropic constant window") {
  // uniform attains the upper edge exactly
  for (const auto& spec :
       {kCube1, DensitySpec::uniform(make_ball(2, 1.0)), DensitySpec::uniform(make_simplex(2, 1.0))})
    CHECK(run_check("D_ISO", spec).verdict == BoundCheck::Verdict::equality);
  // exponential products attain the lower edge
  const BoundCheck e = run_check("D_ISO", kExp3);
  CHECK(e.ok());
  CHECK(e.inputs["value"].get<double>() ==
        doctest::Approx(e.inputs["lower"].get<double>()).epsilon(1e-12));
  CHECK(run_check("D_ISO", kGauss1).ok());
  // heavy-tailed spec: upper side only
  CHECK(run_check("D_ISO", DensitySpec::pareto(1, 4.5, 1.0)).ok());
}

TEST_CASE("mean-mode entropy window") {
  const BoundCheck e = run_check("FRADELIZI", kExp3);
  CHECK(e.ok());
  // upper edge is exact for exponentials: h = log ||f||^{-1} + n
  CHECK(e.inputs["value"].get<double>() ==
        doctest::Approx(e.inputs["upper"].get<double>()).epsilon(1e-12));
  CHECK(run_check("FRADELIZI", kGauss1).ok());
  CHECK(run_check("FRADELIZI", kCube1).ok());
}

TEST_CASE("norm log-concavity in p for concave functions") {
  // f = 1 - x on (0,1): the normalized curve is constant, equality
  const auto interval = DensitySpec::uniform(make_simplex(1, 1.0));
  Json params;
  params["function"] = "linear_complement";
  CHECK(run_check("BORELL_LC", interval, params).verdict == BoundCheck::Verdict::equality);

  params["function"] = "one";
  CHECK(run_check("BORELL_LC", interval, params).ok());

  // concave bump on (0,1)
  Json bump;
  bump["function"] = "bump";
  const auto unit_cube = DensitySpec::uniform(make_cube(1, 1.0, vec1(0.5)));
  CHECK(run_check("BORELL_LC", unit_cube, bump).ok());

  // tent on (-1,1)
  Json tent;
  tent["function"] = "tent";
  const auto sym_cube = DensitySpec::uniform(make_cube(1, 2.0));
  CHECK(run_check("BORELL_LC", sym_cube, tent).ok());

  // 2-d: linear over a simplex
  Json lin;
  lin["function"] = "linear";
  CHECK(run_check("BORELL_LC", DensitySpec::uniform(make_simplex(2, 1.0)), lin).ok());
}

TEST_CASE("norm log-concavity for inverse powers of convex potentials") {
  // affine potential: the curve is exactly log-linear, equality
  for (double a : {1.0, 2.5}) {
    const BoundCheck c = run_check("REBORELL_LC", DensitySpec::pareto(1, 3.0, a));
    CHECK(c.verdict == BoundCheck::Verdict::equality);
  }
  CHECK(run_check("REBORELL_LC", DensitySpec::pareto(2, 4.0, 1.0)).verdict ==
        BoundCheck::Verdict::equality);
  // cauchy potential sqrt(pi (1 + x^2))
  CHECK(run_check("REBORELL_LC", DensitySpec::cauchy1d(1.0)).ok());
}

TEST_CASE("a deliberately non-log-concave curve fails the midpoint test") {
  const auto broken = [](double p) { return std::exp(p * p); };
  const BoundCheck c = logconcavity_in_p("BROKEN", "exp(p^2) is not log-concave", broken,
                                         log_spaced_grid(0.5, 8.0, 17));
  CHECK(c.verdict == BoundCheck::Verdict::fail);
  CHECK(c.slack < 0.0);
}

TEST_CASE("berwald normalized norms") {
  // n=1, f(x) = x on (0,1): both normalized norms equal 1
  const auto interval = DensitySpec::uniform(make_simplex(1, 1.0));
  Json params;
  params["p"] = 1.0;
  params["q"] = 2.0;
  params["function"] = "linear";
  const BoundCheck c = run_check("BERWALD", interval, params);
  CHECK(c.verdict == BoundCheck::Verdict::equality);
  CHECK(c.lhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.rhs == doctest::Approx(1.0).epsilon(1e-9));

  // n=2: the cone function 1 - x1 - x2 over the simplex keeps them constant
  const auto tri = DensitySpec::uniform(make_simplex(2, 1.0));
  Json pc = params;
  pc["function"] = "linear_complement";
  CHECK(run_check("BERWALD", tri, pc).verdict == BoundCheck::Verdict::equality);

  // while x1 + x2 over the simplex gives a strict inequality
  Json pl = params;
  pl["function"] = "linear";
  const BoundCheck strict = run_check("BERWALD", tri, pl);
  CHECK(strict.verdict == BoundCheck::Verdict::pass);
  CHECK(strict.slack > 1e-3);

  // constant function: strict inequality (the normalized norms are
  // C(n+p,n)^{1/p}, decreasing in p)
  Json pone = params;
  pone["function"] = "one";
  const BoundCheck cone = run_check("BERWALD", DensitySpec::uniform(make_cube(2, 1.5)), pone);
  CHECK(cone.verdict == BoundCheck::Verdict::pass);
  CHECK(cone.slack > 0.0);
}

TEST_CASE("hensley ball functional") {
  // uniform centered ball: exact equality for rho = t^2
  for (int n : {1, 2, 3}) {
    const BoundCheck c = run_check("HENSLEY_BALL", DensitySpec::uniform(make_ball(n, 1.0)));
    CHECK(c.verdict == BoundCheck::Verdict::equality);
  }
  // gaussian in one dimension: ||f||^2 E|X|^2 = 1/(2 pi) >= 1/12
  const BoundCheck g = run_check("HENSLEY_BALL", kGauss1);
  CHECK(g.ok());
  CHECK(g.rhs == doctest::Approx(1.0 / (2.0 * M_PI)));
  CHECK(g.lhs == doctest::Approx(1.0 / 12.0));

  // exponential about its mean, both rho choices
  CHECK(run_check("HENSLEY_BALL", kExp1).ok());
  Json ind;
  ind["rho"] = "indicator";
  ind["r"] = 0.4;
  CHECK(run_check("HENSLEY_BALL", kExp1, ind, 5).ok());
  CHECK(run_check("HENSLEY_BALL", DensitySpec::uniform(make_ball(2, 1.0)), ind, 6).ok());
}

TEST_CASE("beta regime constants") {
  CHECK(beta_regime_bound(2, 6.0, 2.0, false) == doctest::Approx(2.0));
  // beta0 -> infinity recovers the log-concave constant 1
  CHECK(beta_regime_bound(2, 2e9, 1e9, false) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(beta_regime_bound(3, 4.0, 1.0, true) ==
        doctest::Approx(0.5 + (4.0 / 3.0) * std::log(3.0)));
  CHECK(beta_regime_bound(3, 4.0, 1.0, true) == doctest::Approx(1.9648).epsilon(1e-4));
  CHECK_THROWS_AS((void)beta_regime_bound(2, 3.0, 2.0, false), Error);  // beta < beta0 n
  CHECK_THROWS_AS((void)beta_regime_bound(2, 3.0, 0.5, true), Error);   // beta0 < 1
  CHECK_THROWS_AS((void)beta_regime_bound(1, 3.0, 1.0, true), Error);   // needs n >= 2

  // multiplicative constant dominates the per-coordinate excess on its range
  for (double beta0 : {1.5, 2.0, 4.0}) {
    for (int n : {1, 2, 5}) {
      const double c = beta_regime_bound(n, std::max(beta0 * n, n + 1.0), beta0, false);
      for (double beta :
           {std::max(beta0 * n, n + 1.0), 2.0 * beta0 * n, 10.0 * beta0 * n}) {
        CHECK(kconc_upper_bound(n, beta) / n <= c + 1e-12);
      }
    }
  }

  // the additive-regime constant, as printed, does NOT dominate the
  // per-coordinate excess at beta = beta0 + n: with n=3, beta0=1 the excess
  // is (4/3)(1/3+1/2+1) ~ 2.444 > 1.9648. Recorded as a fact so any change
  // in behavior is caught.
  const double excess = kconc_upper_bound(3, 4.0) / 3.0;
  CHECK(excess == doctest::Approx(2.4444444444).epsilon(1e-9));
  CHECK(beta_regime_bound(3, 4.0, 1.0, true) < excess);
}

TEST_CASE("unknown check ids are rejected") {
  CHECK_THROWS_AS((void)run_check("NO_SUCH_CHECK", kGauss1), Error);
  CHECK(check_catalog().size() == 16);
}
