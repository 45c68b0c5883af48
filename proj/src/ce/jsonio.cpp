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

#include "ce/jsonio.hpp"

#include <cmath>
#include <cstdio>

namespace ce {

namespace {

VectorXd to_vector(const Json& j, const char* what) {
  if (!j.is_array()) raise(errc::parse_error, std::string(what) + " must be an array");
  VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) raise(errc::parse_error, std::string(what) + " must be numeric");
    v[i] = j[i].get<double>();
  }
  return v;
}

MatrixXd to_matrix(const Json& j, const char* what) {
  if (!j.is_array() || j.empty())
    raise(errc::parse_error, std::string(what) + " must be an array of rows");
  const std::size_t n = j.size();
  MatrixXd m(n, j[0].size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != static_cast<std::size_t>(m.cols()))
      raise(errc::parse_error, std::string(what) + " rows must have equal length");
    for (std::size_t k = 0; k < j[i].size(); ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

Json from_vector(const VectorXd& v) {
  Json j = Json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Json from_matrix(const MatrixXd& m) {
  Json j = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    j.push_back(row);
  }
  return j;
}

Body body_from_json(const Json& j) {
  const std::string kind = j.value("kind", "");
  VectorXd center;
  if (j.contains("center")) center = to_vector(j["center"], "center");
  if (kind == "ball") {
    const int n = j.contains("n") ? j["n"].get<int>() : static_cast<int>(center.size());
    return make_ball(n > 0 ? n : 1, j.value("radius", 1.0), center);
  }
  if (kind == "cube") {
    const int n = j.contains("n") ? j["n"].get<int>() : static_cast<int>(center.size());
    return make_cube(n > 0 ? n : 1, j.value("side", 1.0), center);
  }
  if (kind == "simplex") {
    const int n = j.contains("n") ? j["n"].get<int>() : static_cast<int>(center.size());
    return make_simplex(n > 0 ? n : 1, j.value("scale", 1.0), center);
  }
  if (kind == "ellipsoid") {
    if (!j.contains("shape")) raise(errc::parse_error, "ellipsoid needs a shape matrix");
    return make_ellipsoid(to_matrix(j["shape"], "shape"), center);
  }
  raise(errc::parse_error, "unknown body kind '" + kind + "'");
}

Json body_to_json(const Body& b) {
  Json j;
  switch (b.kind) {
    case Body::Kind::ball:
      j["kind"] = "ball";
      j["radius"] = b.radius;
      break;
    case Body::Kind::cube:
      j["kind"] = "cube";
      j["side"] = b.side;
      break;
    case Body::Kind::simplex:
      j["kind"] = "simplex";
      j["scale"] = b.scale;
      break;
    case Body::Kind::ellipsoid:
      j["kind"] = "ellipsoid";
      j["shape"] = from_matrix(b.shape);
      break;
  }
  j["n"] = b.n;
  j["center"] = from_vector(b.center);
  return j;
}

Potential potential_from_json(const Json& j) {
  Potential p;
  p.kind = j.value("kind", "");
  if (p.kind == "affine" || p.kind == "quadratic") {
    p.c0 = j.value("c0", 0.0);
    if (!j.contains("coeffs")) raise(errc::parse_error, p.kind + " potential needs coeffs");
    p.coeffs = to_vector(j["coeffs"], "coeffs");
    return p;
  }
  if (p.kind == "sqrt_quadratic") {
    p.c0 = j.value("c0", 1.0);
    return p;
  }
  if (p.kind == "inverse_tent") return p;
  raise(errc::parse_error, "unknown or non-serializable potential kind '" + p.kind + "'");
}

Json potential_to_json(const Potential& p) {
  Json j;
  j["kind"] = p.kind;
  if (p.kind == "affine" || p.kind == "quadratic") {
    j["c0"] = p.c0;
    j["coeffs"] = from_vector(p.coeffs);
  } else if (p.kind == "sqrt_quadratic") {
    j["c0"] = p.c0;
  } else if (p.kind == "custom") {
    raise(errc::unsupported, "custom potentials do not serialize");
  }
  return j;
}

Support support_from_json(const Json& j, int n) {
  Support s;
  s.n = n;
  const std::string kind = j.value("kind", "real_line");
  if (kind == "real_line") {
    s.kind = Support::Kind::real_line;
  } else if (kind == "orthant") {
    s.kind = Support::Kind::orthant;
  } else if (kind == "box") {
    s.kind = Support::Kind::box;
    s.lo = to_vector(j.at("lo"), "lo");
    s.hi = to_vector(j.at("hi"), "hi");
    if (s.lo.size() != n || s.hi.size() != n)
      raise(errc::parse_error, "support box bounds must have dimension n");
  } else {
    raise(errc::parse_error, "unknown support kind '" + kind + "'");
  }
  return s;
}

Json support_to_json(const Support& s) {
  Json j;
  switch (s.kind) {
    case Support::Kind::real_line: j["kind"] = "real_line"; break;
    case Support::Kind::orthant: j["kind"] = "orthant"; break;
    case Support::Kind::box:
      j["kind"] = "box";
      j["lo"] = from_vector(s.lo);
      j["hi"] = from_vector(s.hi);
      break;
  }
  return j;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    raise(errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
}

DensitySpec spec_from_json(const Json& j) {
  try {
    const std::string family = j.value("family", "");
    const Json params = j.value("params", Json::object());
    if (family == "gaussian") {
      const MatrixXd cov = to_matrix(params.at("cov"), "cov");
      VectorXd mean;
      if (params.contains("mean")) mean = to_vector(params["mean"], "mean");
      return DensitySpec::gaussian(mean, cov);
    }
    if (family == "exponential_product")
      return DensitySpec::exponential_product(to_vector(params.at("rates"), "rates"));
    if (family == "uniform_body")
      return DensitySpec::uniform(body_from_json(params.at("body")));
    if (family == "pareto_mv")
      return DensitySpec::pareto(params.at("n").get<int>(), params.at("beta").get<double>(),
                                 params.value("a", 1.0));
    if (family == "cauchy") return DensitySpec::cauchy1d(params.value("scale", 1.0));
    if (family == "stable_symmetric")
      return DensitySpec::stable1d(params.at("alpha").get<double>());
    if (family == "potential") {
      const int n = params.at("n").get<int>();
      const Potential phi = potential_from_json(params.at("potential"));
      const Support sup = support_from_json(params.value("support", Json::object()), n);
      if (params.value("log_concave", false))
        return DensitySpec::potential_log_concave(phi, sup);
      return DensitySpec::potential_density(phi, params.at("beta").get<double>(), sup);
    }
    raise(errc::parse_error, "unknown family '" + family + "'");
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(errc::parse_error, std::string("bad density spec: ") + e.what());
  }
}

DensitySpec spec_from_json_text(const std::string& text) {
  return spec_from_json(parse_json_text(text));
}

Json spec_to_json(const DensitySpec& spec) {
  Json j;
  j["family"] = spec.family_name();
  Json p;
  switch (spec.family()) {
    case DensitySpec::Family::gaussian:
      p["mean"] = from_vector(spec.mean_param());
      p["cov"] = from_matrix(spec.cov_param());
      break;
    case DensitySpec::Family::exponential_product:
      p["rates"] = from_vector(spec.rates());
      break;
    case DensitySpec::Family::uniform_body:
      p["body"] = body_to_json(spec.body());
      break;
    case DensitySpec::Family::pareto_mv:
      p["n"] = spec.dim();
      p["beta"] = spec.beta();
      p["a"] = spec.pareto_a();
      break;
    case DensitySpec::Family::cauchy:
      p["scale"] = spec.cauchy_scale();
      break;
    case DensitySpec::Family::stable_symmetric:
      p["alpha"] = spec.stable_alpha();
      break;
    case DensitySpec::Family::potential:
      p["n"] = spec.dim();
      if (spec.potential_is_log_concave())
        p["log_concave"] = true;
      else
        p["beta"] = spec.beta();
      p["potential"] = potential_to_json(spec.potential());
      p["support"] = support_to_json(spec.support());
      break;
  }
  j["params"] = std::move(p);
  return j;
}

SpectralModel model_from_json(const Json& j) {
  try {
    if (j.contains("autocov")) {
      const VectorXd r = to_vector(j["autocov"], "autocov");
      return SpectralModel::autocov(std::vector<double>(r.data(), r.data() + r.size()));
    }
    const std::string kind = j.value("spectral_density", "");
    const Json params = j.value("params", Json::object());
    const double sigma = params.value("sigma", 1.0);
    if (kind == "white") return SpectralModel::white(sigma);
    if (kind == "ar1") return SpectralModel::ar1(params.at("coefficient").get<double>(), sigma);
    if (kind == "ma1") return SpectralModel::ma1(params.at("theta").get<double>(), sigma);
    raise(errc::parse_error, "model needs 'autocov' or a known 'spectral_density'");
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(errc::parse_error, std::string("bad spectral model: ") + e.what());
  }
}

SpectralModel model_from_json_text(const std::string& text) {
  return model_from_json(parse_json_text(text));
}

Json model_to_json(const SpectralModel& model) {
  Json j;
  if (model.kind() == SpectralModel::Kind::autocov) {
    Json r = Json::array();
    for (double v : model.autocov_seq()) r.push_back(v);
    j["autocov"] = std::move(r);
    return j;
  }
  j["spectral_density"] = model.kind_name();
  Json p;
  p["sigma"] = model.sigma();
  if (model.kind() == SpectralModel::Kind::ar1) p["coefficient"] = model.coefficient();
  if (model.kind() == SpectralModel::Kind::ma1) p["theta"] = model.coefficient();
  j["params"] = std::move(p);
  return j;
}

MixtureSpec mixture_from_json(const Json& j) {
  try {
    MixtureSpec mix;
    const std::string base = j.value("base", "gaussian");
    mix.n = j.value("n", 1);
    if (base == "gaussian") {
      mix.base = MixtureSpec::Base::gaussian;
    } else if (base == "potential") {
      mix.base = MixtureSpec::Base::potential;
      mix.phi = potential_from_json(j.at("potential"));
    } else {
      raise(errc::parse_error, "mixture base must be 'gaussian' or 'potential'");
    }
    const std::string param = j.value("parameterization", "variance");
    if (param == "variance")
      mix.param = MixtureSpec::Param::variance;
    else if (param == "scale")
      mix.param = MixtureSpec::Param::scale;
    else
      raise(errc::parse_error, "parameterization must be 'variance' or 'scale'");
    const Json m = j.at("mixing");
    const std::string kind = m.value("kind", "gamma");
    if (kind == "gamma") {
      mix.mixing.kind = MixingDensity::Kind::gamma;
      mix.mixing.shape = m.at("shape").get<double>();
      mix.mixing.rate = m.value("rate", 1.0);
      if (!(mix.mixing.shape > 0.0) || !(mix.mixing.rate > 0.0))
        raise(errc::parse_error, "gamma mixing needs positive shape and rate");
    } else if (kind == "point") {
      mix.mixing.kind = MixingDensity::Kind::point;
      mix.mixing.point = m.at("value").get<double>();
      if (!(mix.mixing.point > 0.0)) raise(errc::parse_error, "point mass must be positive");
    } else {
      raise(errc::parse_error, "mixing kind must be 'gamma' or 'point'");
    }
    return mix;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(errc::parse_error, std::string("bad mixture spec: ") + e.what());
  }
}

MixtureSpec mixture_from_json_text(const std::string& text) {
  return mixture_from_json(parse_json_text(text));
}

Json mixture_to_json(const MixtureSpec& mix) {
  Json j;
  j["base"] = mix.base == MixtureSpec::Base::gaussian ? "gaussian" : "potential";
  if (mix.base == MixtureSpec::Base::potential) j["potential"] = potential_to_json(mix.phi);
  j["parameterization"] = mix.param == MixtureSpec::Param::variance ? "variance" : "scale";
  j["n"] = mix.n;
  Json m;
  if (mix.mixing.kind == MixingDensity::Kind::gamma) {
    m["kind"] = "gamma";
    m["shape"] = mix.mixing.shape;
    m["rate"] = mix.mixing.rate;
  } else {
    m["kind"] = "point";
    m["value"] = mix.mixing.point;
  }
  j["mixing"] = std::move(m);
  return j;
}

Json estimate_to_json(const Estimate& e) {
  Json j;
  j["value"] = e.value;
  j["uncertainty"] = e.uncertainty;
  j["method"] = method_name(e.method);
  j["detail"] = e.detail;
  return j;
}

Json bound_check_to_json(const BoundCheck& c) {
  Json j;
  j["check_id"] = c.check_id;
  j["anchor"] = c.anchor;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["slack"] = c.slack;
  j["tol"] = c.tol;
  j["verdict"] = verdict_name(c.verdict);
  j["inputs"] = c.inputs;
  return j;
}

Json kappa_report_to_json(const KappaReport& r) {
  Json j;
  j["kappa"] = r.kappa;
  j["trials"] = r.trials;
  j["worst_violation"] = r.worst_violation;
  j["tol"] = r.tol;
  j["verdict"] = r.pass ? "pass" : "fail";
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void escape_to(std::string& out, const std::string& s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void dump_rec(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad = indent >= 0 ? std::string(indent * (depth + 1), ' ') : "";
  const std::string pad_close = indent >= 0 ? std::string(indent * depth, ' ') : "";
  const char* nl = indent >= 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ',';
          out += nl;
        }
        first = false;
        out += pad;
        escape_to(out, it.key());
        out += indent >= 0 ? ": " : ":";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += nl;
      out += pad_close;
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      out += nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) {
          out += ',';
          out += nl;
        }
        first = false;
        out += pad;
        dump_rec(v, out, indent, depth + 1);
      }
      out += nl;
      out += pad_close;
      out += ']';
      return;
    }
    case Json::value_t::string:
      escape_to(out, j.get<std::string>());
      return;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case Json::value_t::null:
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  return out;
}

}  // namespace ce
