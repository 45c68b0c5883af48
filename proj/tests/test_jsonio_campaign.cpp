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

#include "ce/campaign.hpp"

using namespace ce;

TEST_CASE("density specs round-trip through json") {
  const std::vector<std::string> docs = {
      R"({"family":"gaussian","params":{"mean":[0.5,-1],"cov":[[1,0.25],[0.25,2]]}})",
      R"({"family":"exponential_product","params":{"rates":[1,2,3]}})",
      R"({"family":"uniform_body","params":{"body":{"kind":"ball","n":2,"radius":1.5}}})",
      R"({"family":"uniform_body","params":{"body":{"kind":"simplex","n":2,"scale":2}}})",
      R"({"family":"uniform_body","params":{"body":{"kind":"ellipsoid","shape":[[2,0.3],[0.3,1]]}}})",
      R"({"family":"pareto_mv","params":{"n":2,"beta":3.5,"a":1.25}})",
      R"({"family":"cauchy","params":{"scale":0.7}})",
      R"({"family":"stable_symmetric","params":{"alpha":1.5}})",
      R"({"family":"potential","params":{"n":1,"beta":2.5,)"
      R"("potential":{"kind":"affine","c0":1,"coeffs":[1]},"support":{"kind":"orthant"}}})",
  };
  for (const auto& doc : docs) {
    CAPTURE(doc);
    const DensitySpec spec = spec_from_json_text(doc);
    const DensitySpec again = spec_from_json(spec_to_json(spec));
    CHECK(spec.family() == again.family());
    CHECK(spec.dim() == again.dim());
    CHECK(spec.max_density() == doctest::Approx(again.max_density()).epsilon(1e-12));
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
      const VectorXd x = spec.support_sample(rng);
      CHECK(spec.pdf(x) == doctest::Approx(again.pdf(x)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS((void)spec_from_json_text("{\"family\":\"nope\"}"), Error);
  CHECK_THROWS_AS((void)spec_from_json_text("not json"), Error);
}

TEST_CASE("models and mixtures round-trip") {
  for (const std::string doc :
       {R"({"autocov":[1.0,0.5,0.25]})",
        R"({"spectral_density":"ar1","params":{"coefficient":0.9,"sigma":1}})",
        R"({"spectral_density":"ma1","params":{"theta":0.5,"sigma":2}})",
        R"({"spectral_density":"white","params":{"sigma":1.5}})"}) {
    CAPTURE(doc);
    const SpectralModel m = model_from_json_text(doc);
    const SpectralModel again = model_from_json(model_to_json(m));
    for (int k = 0; k < 4; ++k) CHECK(m.r(k) == doctest::Approx(again.r(k)));
  }
  const MixtureSpec mix = mixture_from_json_text(
      R"({"base":"gaussian","parameterization":"variance","n":1,)"
      R"("mixing":{"kind":"gamma","shape":2,"rate":1}})");
  CHECK(mix.mixing.shape == 2.0);
  const MixtureSpec again = mixture_from_json(mixture_to_json(mix));
  CHECK(again.mixing.rate == 1.0);
  CHECK_THROWS_AS((void)mixture_from_json_text(R"({"mixing":{"kind":"gamma","shape":-1}})"),
                  Error);
}

TEST_CASE("doubles render with 17 significant digits and round-trip") {
  Json j;
  j["x"] = 0.1;
  j["y"] = 2.0;
  j["z"] = 1.0 / 3.0;
  const std::string text = dump_json(j, -1);
  const Json back = parse_json_text(text);
  CHECK(back["x"].get<double>() == 0.1);
  CHECK(back["z"].get<double>() == 1.0 / 3.0);
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("campaigns run, count and render") {
  const std::string doc = R"({
    "tol": 1e-7,
    "entries": [
      {"id": "z", "op": "pareto_Z", "args": {"n": 1, "beta": 2.0, "a": 1.0}, "expect": 1.0},
      {"id": "gw", "check": "GAUSS_WINDOW",
       "spec": {"family": "exponential_product", "params": {"rates": [1, 1, 1]}}},
      {"id": "bad", "op": "pareto_Z", "args": {"n": 2, "beta": 2.0, "a": 1.0}},
      {"id": "wrong", "op": "kconc_upper_bound", "args": {"n": 1, "beta": 2.0}, "expect": 3.0}
    ]})";
  const Campaign c = campaign_from_json_text(doc);
  CHECK(c.entries.size() == 4);
  const Report r = run_campaign(c);
  CHECK(r.n_pass == 2);   // z and gw
  CHECK(r.n_error == 1);  // beta <= n
  CHECK(r.n_fail == 1);   // wrong expectation
  CHECK_FALSE(r.ok());
  CHECK(r.entries[1]["check_id"] == "GAUSS_WINDOW");
  CHECK(r.entries[1]["verdict"] == "equality");
  CHECK(r.entries[2]["code"] == "beta_too_small");

  const Json rj = report_to_json(r);
  CHECK(rj["counts"]["total"] == 4);
  const std::string csv = render_report(rj, "csv");
  CHECK(csv.find("check_id,anchor,lhs,rhs,slack,verdict") != std::string::npos);
  CHECK(csv.find("GAUSS_WINDOW") != std::string::npos);
  const std::string md = render_report(rj, "markdown");
  CHECK(md.find("| check_id |") != std::string::npos);
  CHECK(render_report(rj, "json").find("\"entries\"") != std::string::npos);
  CHECK_THROWS_AS((void)render_report(rj, "yaml"), Error);
}

TEST_CASE("campaign reruns are byte-identical apart from the wall clock") {
  const std::string doc = R"({
    "entries": [
      {"op": "entropy_mc", "seed": 9,
       "spec": {"family": "pareto_mv", "params": {"n": 2, "beta": 4.0, "a": 1.0}},
       "params": {"samples": 20000}},
      {"op": "iso_lower_constant", "args": {"n": 12}},
      {"check": "MED_MAX", "spec": {"family": "cauchy", "params": {"scale": 1}}}
    ]})";
  const auto strip_clock = [](Json j) {
    j.erase("wall_clock_seconds");
    return dump_json(j, 2);
  };
  const Campaign c = campaign_from_json_text(doc);
  const std::string a = strip_clock(report_to_json(run_campaign(c)));
  const std::string b = strip_clock(report_to_json(run_campaign(c)));
  CHECK(a == b);
  // the MED_MAX entry errors out (cauchy is not 1-d log-concave) without
  // aborting the others
  const Report r = run_campaign(c);
  CHECK(r.n_error == 1);
  CHECK(r.n_pass == 2);
}

TEST_CASE("empty campaign reports cleanly") {
  const Report r = run_campaign(campaign_from_json_text(R"({"entries": []})"));
  CHECK(r.ok());
  CHECK(r.entries.empty());
}

TEST_CASE("estimate ops expose value fields for expectations") {
  const std::string doc = R"({
    "entries": [
      {"op": "entropy_closed",
       "spec": {"family": "cauchy", "params": {"scale": 1}},
       "expect": 2.5310242469692907},
      {"op": "plancherel_window",
       "spec": {"family": "cauchy", "params": {"scale": 1}},
       "params": {"field": "width"}, "expect": 2.0},
      {"op": "stable_chf_norm2", "args": {"alpha": 1.0}, "expect": 1.0},
      {"op": "szego_rate", "model": {"spectral_density": "white", "params": {"sigma": 1}},
       "expect": 1.4189385332046727}
    ]})";
  const Report r = run_campaign(campaign_from_json_text(doc));
  CHECK(r.n_fail == 0);
  CHECK(r.n_error == 0);
  CHECK(r.n_pass == 4);
}
