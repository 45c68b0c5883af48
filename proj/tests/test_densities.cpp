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

#include "ce/densities.hpp"
#include "oracle_quad.hpp"

using namespace ce;

namespace {

VectorXd vec1(double x) {
  VectorXd v(1);
  v[0] = x;
  return v;
}

DensitySpec tent_squared_spec() {
  // density proportional to (1-|x|)^2 on (-1,1), written as phi^{-2} with
  // phi = 1/(1-|x|)
  Potential phi;
  phi.kind = "inverse_tent";
  Support sup;
  sup.kind = Support::Kind::box;
  sup.n = 1;
  sup.lo = vec1(-1.0);
  sup.hi = vec1(1.0);
  return DensitySpec::potential_density(phi, 2.0, sup);
}

// integrates pdf over the spec's chart; should be 1
double normalization(const DensitySpec& spec, double tol = 1e-9) {
  const Chart ch = spec.chart();
  quad::Options opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;
  opt.max_evals = 4'000'000;
  const int n = spec.dim();
  const auto g = [&spec, &ch, n](const double* u) {
    std::vector<double> xb(n);
    const double jac = ch.map(u, xb.data());
    return spec.pdf(Eigen::Map<const VectorXd>(xb.data(), n)) * jac;
  };
  return quad::integrate(g, ch.lo, ch.hi).value;
}

}  // namespace

TEST_CASE("pdf values at reference points") {
  // pareto n=1, beta=2, a=1 has normalizer 1, so f(0) = 1
  CHECK(DensitySpec::pareto(1, 2.0, 1.0).pdf(vec1(0.0)) == doctest::Approx(1.0));
  // standard normal at the mode
  CHECK(DensitySpec::gaussian(vec1(0.0), MatrixXd::Identity(1, 1)).pdf(vec1(0.0)) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)));
  // unit cauchy at the mode
  CHECK(DensitySpec::cauchy1d(1.0).pdf(vec1(0.0)) == doctest::Approx(1.0 / M_PI));
}

TEST_CASE("max densities match closed forms") {
  const auto g2 = DensitySpec::gaussian(VectorXd::Zero(2), 2.0 * MatrixXd::Identity(2, 2));
  CHECK(g2.max_density() == doctest::Approx(std::pow(2.0 * M_PI * 2.0, -1.0)));

  const auto pa = DensitySpec::pareto(2, 4.0, 2.0);
  // ||f|| = a^{-beta} / Z_n, Z_2(4,2) = 1/((3)(2) 2^2) = 1/24
  CHECK(pa.max_density() == doctest::Approx(std::pow(2.0, -4.0) * 24.0));

  const auto ub = DensitySpec::uniform(make_ball(2, 1.5));
  CHECK(ub.max_density() == doctest::Approx(1.0 / (M_PI * 1.5 * 1.5)));
}

TEST_CASE("sampling never exceeds the closed-form max density") {
  const std::vector<DensitySpec> specs = {
      DensitySpec::gaussian(vec1(0.3), MatrixXd::Constant(1, 1, 0.7)),
      DensitySpec::exponential_product(VectorXd::Constant(2, 1.5)),
      DensitySpec::pareto(2, 5.0, 1.0),
      DensitySpec::cauchy1d(2.0),
      DensitySpec::uniform(make_simplex(2, 1.0)),
  };
  for (const auto& spec : specs) {
    const double maxd = spec.max_density();
    Rng rng(7);
    for (int i = 0; i < 5000; ++i) {
      const VectorXd x = spec.sample_one(rng);
      CHECK(spec.pdf(x) <= maxd * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("densities integrate to one (quadrature, n <= 2)") {
  CHECK(normalization(DensitySpec::gaussian(vec1(0.5), MatrixXd::Constant(1, 1, 2.0))) ==
        doctest::Approx(1.0).epsilon(1e-6));
  MatrixXd r(2, 2);
  r << 1.0, 0.4, 0.4, 0.8;
  CHECK(normalization(DensitySpec::gaussian(VectorXd::Zero(2), r)) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(normalization(DensitySpec::exponential_product(VectorXd::Constant(2, 2.0))) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(normalization(DensitySpec::pareto(2, 3.5, 1.0)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(normalization(DensitySpec::cauchy1d(1.0)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(normalization(DensitySpec::uniform(make_ball(2, 2.0))) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(normalization(DensitySpec::uniform(make_simplex(2, 3.0))) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(normalization(tent_squared_spec()) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("densities integrate to one (importance sampling, n <= 6)") {
  // proposal-based check: E_g[f/g] = 1
  constexpr int kSamples = 200000;
  SUBCASE("gaussian n=6") {
    MatrixXd r = MatrixXd::Identity(6, 6);
    for (int i = 0; i < 5; ++i) r(i, i + 1) = r(i + 1, i) = 0.3;
    const auto f = DensitySpec::gaussian(VectorXd::Zero(6), r);
    const auto g = DensitySpec::gaussian(VectorXd::Zero(6), 2.0 * MatrixXd::Identity(6, 6));
    Rng rng(11);
    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const VectorXd x = g.sample_one(rng);
      const double w = std::exp(f.log_pdf(x) - g.log_pdf(x));
      acc += w;
      acc2 += w * w;
    }
    const double mean = acc / kSamples;
    const double se = std::sqrt((acc2 / kSamples - mean * mean) / kSamples);
    CHECK(std::abs(mean - 1.0) <= 3.0 * se + 1e-12);
  }
  SUBCASE("pareto n=4 with a wider pareto proposal") {
    const auto f = DensitySpec::pareto(4, 7.0, 1.0);
    const auto g = DensitySpec::pareto(4, 6.0, 1.0);
    Rng rng(13);
    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const VectorXd x = g.sample_one(rng);
      const double w = std::exp(f.log_pdf(x) - g.log_pdf(x));
      acc += w;
      acc2 += w * w;
    }
    const double mean = acc / kSamples;
    const double se = std::sqrt((acc2 / kSamples - mean * mean) / kSamples);
    CHECK(std::abs(mean - 1.0) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("moments: closed forms and reference values") {
  // cube of side 1 anchored so it spans [0,1]
  const auto cube = DensitySpec::uniform(make_cube(1, 1.0, vec1(0.5)));
  const auto mc = cube.moments();
  CHECK(mc.mean[0] == doctest::Approx(0.5));
  CHECK(mc.covariance(0, 0) == doctest::Approx(1.0 / 12.0));
  CHECK(mc.sigma2 == doctest::Approx(1.0 / 12.0));

  const auto expo = DensitySpec::exponential_product(VectorXd::Constant(2, 1.0));
  const auto me = expo.moments();
  CHECK(me.mean[0] == doctest::Approx(1.0));
  CHECK(me.covariance(0, 0) == doctest::Approx(1.0));
  CHECK(me.covariance(0, 1) == doctest::Approx(0.0));
  CHECK(me.sigma2 == doctest::Approx(1.0));

  CHECK_THROWS_AS((void)DensitySpec::cauchy1d(1.0).moments(), Error);
  CHECK_THROWS_AS((void)DensitySpec::pareto(2, 3.5, 1.0).moments(), Error);
  CHECK_THROWS_AS((void)DensitySpec::stable1d(1.5).moments(), Error);
}

TEST_CASE("pareto moments match the integration oracle (n=2)") {
  const double beta = 5.0, a = 1.0;
  const auto spec = DensitySpec::pareto(2, beta, a);
  const auto mom = spec.moments();
  // frozen from direct double quadrature of (1+x+y)^{-5} over the orthant
  // at 30-digit precision: mean 1/2, variance 3/4, covariance 1/4
  CHECK(mom.mean[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mom.covariance(0, 0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(mom.covariance(0, 1) == doctest::Approx(0.25).epsilon(1e-12));
  // runtime cross-check with the iterated Simpson oracle at its accuracy
  const double z = oracle::integrate2_halfline(
      [&](double x, double y) { return std::pow(a + x + y, -beta); }, 1.0, 1e-11);
  const double m1 = oracle::integrate2_halfline(
                        [&](double x, double y) { return x * std::pow(a + x + y, -beta); },
                        1.0, 1e-11) /
                    z;
  CHECK(z == doctest::Approx(1.0 / 12.0).epsilon(1e-4));
  CHECK(mom.mean[0] == doctest::Approx(m1).epsilon(1e-4));
}

TEST_CASE("samplers reproduce closed-form moments within 4 standard errors") {
  struct Case {
    DensitySpec spec;
    const char* name;
  };
  const std::vector<Case> cases = {
      {DensitySpec::gaussian(vec1(-0.7), MatrixXd::Constant(1, 1, 2.25)), "gaussian"},
      {DensitySpec::exponential_product(VectorXd::Constant(3, 2.0)), "exp"},
      {DensitySpec::pareto(2, 6.0, 1.5), "pareto"},
      {DensitySpec::uniform(make_ball(3, 1.0)), "ball"},
      {DensitySpec::uniform(make_simplex(2, 1.0)), "simplex"},
      {DensitySpec::stable1d(2.0), "stable2"},
  };
  constexpr int kM = 100000;
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const auto mom = c.spec.moments();
    const MatrixXd x = c.spec.sample(42, kM);
    for (int j = 0; j < c.spec.dim(); ++j) {
      const double mean = x.col(j).mean();
      const double sd = std::sqrt(mom.covariance(j, j) / kM);
      CHECK(std::abs(mean - mom.mean[j]) <= 4.0 * sd);
    }
    // variance along the first coordinate
    const VectorXd c0 = x.col(0).array() - x.col(0).mean();
    const double var = c0.squaredNorm() / (kM - 1);
    const double se_var = mom.covariance(0, 0) * std::sqrt(2.0 / kM) * 3.0;
    CHECK(std::abs(var - mom.covariance(0, 0)) <= 4.0 * se_var);
  }
}

TEST_CASE("pareto sample mean matches the direct integration oracle") {
  // mean of the density 2 (1+x)^{-3}: 2 * int x (1+x)^{-3} dx = 1
  const double oracle_mean = 2.0 * oracle::integrate_halfline(
                                       [](double x) { return x * std::pow(1.0 + x, -3.0); });
  CHECK(oracle_mean == doctest::Approx(1.0).epsilon(1e-8));
  const auto spec = DensitySpec::pareto(1, 3.0, 1.0);
  constexpr int kM = 100000;
  const MatrixXd x = spec.sample(5, kM);
  // the mean exists (beta > n+1) though the variance does not; loose band
  CHECK(x.col(0).mean() == doctest::Approx(oracle_mean).epsilon(0.25));

  // a beta with finite variance gets the full 4-stderr treatment
  const auto spec2 = DensitySpec::pareto(1, 4.5, 1.0);
  const auto mom2 = spec2.moments();
  const MatrixXd y = spec2.sample(6, kM);
  const double se = std::sqrt(mom2.covariance(0, 0) / kM);
  CHECK(std::abs(y.col(0).mean() - mom2.mean[0]) <= 4.0 * se);
}

TEST_CASE("empirical max density of exponential samples approaches the mode value") {
  const auto spec = DensitySpec::exponential_product(VectorXd::Constant(3, 1.0));
  const MatrixXd x = spec.sample(3, 10000);
  double best = 0.0;
  for (int i = 0; i < x.rows(); ++i) best = std::max(best, spec.pdf(x.row(i).transpose()));
  CHECK(best > 0.8);  // ||f|| = 1
  CHECK(best <= 1.0 + 1e-12);
}

TEST_CASE("stable sampler: alpha=2 matches N(0,2), alpha=1 matches cauchy quartiles") {
  const auto s2 = DensitySpec::stable1d(2.0);
  const MatrixXd x = s2.sample(19, 100000);
  CHECK(std::abs(x.col(0).mean()) <= 4.0 * std::sqrt(2.0 / 100000.0));
  const double var = x.col(0).squaredNorm() / x.rows();
  CHECK(var == doctest::Approx(2.0).epsilon(0.05));

  const auto s1 = DensitySpec::stable1d(1.0);
  const MatrixXd y = s1.sample(23, 100000);
  int below = 0;
  for (int i = 0; i < y.rows(); ++i)
    if (y(i, 0) < 1.0) ++below;  // cauchy cdf(1) = 3/4
  CHECK(static_cast<double>(below) / y.rows() == doctest::Approx(0.75).epsilon(0.02));
}

TEST_CASE("kappa classifier accepts the documented cases") {
  const auto expo = DensitySpec::exponential_product(VectorXd::Constant(2, 1.0));
  CHECK(expo.kappa_classify(0.0, 2000, 1).pass);

  const auto pareto = DensitySpec::pareto(1, 2.0, 1.0);
  // kappa = -1/(beta - n) = -1
  CHECK(pareto.kappa_classify(-1.0, 2000, 2).pass);

  // (1-|x|)^2 on (-1,1) is 1/3-concave
  const auto tent = tent_squared_spec();
  CHECK(tent.kappa_classify(1.0 / 3.0, 2000, 3).pass);
}

TEST_CASE("kappa classifier rejects levels above the true one") {
  // the pareto density is -1/(beta-n)-concave and no better
  const auto pareto = DensitySpec::pareto(1, 2.0, 1.0);
  CHECK_FALSE(pareto.kappa_classify(-0.2, 4000, 4).pass);
  // a cauchy is not log-concave
  CHECK_FALSE(DensitySpec::cauchy1d(1.0).kappa_classify(0.0, 4000, 5).pass);
}

TEST_CASE("kappa classifier is monotone in kappa") {
  const auto pareto = DensitySpec::pareto(1, 3.0, 1.0);  // true kappa = -1/2
  bool seen_fail = false;
  bool prev_pass = true;
  // scan upward; once a level fails every higher level must fail too
  for (double k : {-2.0, -1.0, -0.6, -0.5, -0.4, -0.2, 0.0, 0.5}) {
    const bool pass = pareto.kappa_classify(k, 3000, 6).pass;
    if (!prev_pass) CHECK_FALSE(pass);
    if (!pass) seen_fail = true;
    prev_pass = pass;
  }
  CHECK(seen_fail);
}

TEST_CASE("kappa classifier validates its input range") {
  const auto expo = DensitySpec::exponential_product(VectorXd::Constant(2, 1.0));
  CHECK_THROWS_AS((void)expo.kappa_classify(0.8, 100, 1), Error);  // kappa > 1/n
  CHECK(expo.kappa_classify(-kInf, 500, 1).pass);                  // hyperbolic limit
}

TEST_CASE("potential mode search lands on the minimizer") {
  Potential phi;
  phi.kind = "quadratic";
  phi.c0 = 1.0;
  phi.coeffs = VectorXd::Constant(2, 4.0);
  Support sup;
  sup.kind = Support::Kind::real_line;
  sup.n = 2;
  const auto spec = DensitySpec::potential_log_concave(phi, sup);
  // f propto e^{-2|x|^2} in 2-d: ||f|| = 2/pi after normalization
  CHECK(spec.max_density() == doctest::Approx(2.0 / M_PI).epsilon(1e-7));

  // affine potential on the orthant: the mode sits at the corner
  Potential aff;
  aff.kind = "affine";
  aff.c0 = 1.0;
  aff.coeffs = VectorXd::Constant(1, 1.0);
  Support orth;
  orth.kind = Support::Kind::orthant;
  orth.n = 1;
  const auto pp = DensitySpec::potential_density(aff, 2.0, orth);
  // same density as pareto(1, 2, 1)
  CHECK(pp.max_density() == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(pp.pdf(vec1(1.0)) == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("degenerate pareto parameters are rejected") {
  CHECK_THROWS_AS((void)DensitySpec::pareto(1, 1.0, 1.0), Error);        // beta <= n
  CHECK_THROWS_AS((void)DensitySpec::pareto(2, 2.0000001, 1.0), Error);  // ill-conditioned
  CHECK_NOTHROW((void)DensitySpec::pareto(2, 2.1, 1.0));
}

TEST_CASE("stable density inversion agrees with the closed-form fast paths") {
  for (double x : {0.0, 0.5, 1.0, 2.5}) {
    CHECK(detail::stable_pdf_numeric(2.0, x) ==
          doctest::Approx(std::exp(-0.25 * x * x) / std::sqrt(4.0 * M_PI)).epsilon(1e-8));
    CHECK(detail::stable_pdf_numeric(1.0, x) ==
          doctest::Approx(1.0 / (M_PI * (1.0 + x * x))).epsilon(1e-8));
  }
  // mode value for a general alpha
  const double a = 1.5;
  CHECK(detail::stable_pdf_numeric(a, 0.0) ==
        doctest::Approx(std::tgamma(1.0 + 1.0 / a) / M_PI).epsilon(1e-8));
}
