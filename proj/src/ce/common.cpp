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

#include "ce/common.hpp"

#include <cmath>

namespace ce {

const char* errc_name(errc c) {
  switch (c) {
    case errc::ok: return "ok";
    case errc::invalid_argument: return "invalid_argument";
    case errc::parse_error: return "parse_error";
    case errc::unsupported: return "unsupported";
    case errc::moments_undefined: return "moments_undefined";
    case errc::beta_too_small: return "beta_too_small";
    case errc::dimension_too_high: return "dimension_too_high";
    case errc::no_closed_form: return "no_closed_form";
    case errc::divergent_integral: return "divergent_integral";
    case errc::precondition_violated: return "precondition_violated";
    case errc::regime_violated: return "regime_violated";
    case errc::kappa_out_of_range: return "kappa_out_of_range";
    case errc::not_positive_definite: return "not_positive_definite";
    case errc::degenerate_spectrum: return "degenerate_spectrum";
    case errc::horizon_too_short: return "horizon_too_short";
    case errc::condition_violated: return "condition_violated";
    case errc::divergent_mixing_moment: return "divergent_mixing_moment";
    case errc::non_convergence: return "non_convergence";
    case errc::support_sampling_failure: return "support_sampling_failure";
    case errc::evaluation_failure: return "evaluation_failure";
    case errc::internal: return "internal";
  }
  return "unknown";
}

const char* method_name(Method m) {
  switch (m) {
    case Method::closed_form: return "closed-form";
    case Method::quadrature: return "quadrature";
    case Method::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

void Rng::reseed(std::uint64_t seed) {
  seed_ = seed;
  std::uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
  have_normal_cache_ = false;
}

Rng Rng::substream(std::uint64_t stream) const {
  // hash (seed, stream) into a fresh state; avoids any overlap bookkeeping
  std::uint64_t sm = seed_ ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
  std::uint64_t mixed = splitmix64(sm);
  return Rng(mixed);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_normal_cache_) {
    have_normal_cache_ = false;
    return normal_cache_;
  }
  double u1 = 0.0;
  do {
    u1 = next_double();
  } while (u1 <= 0.0);
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  normal_cache_ = r * std::sin(theta);
  have_normal_cache_ = true;
  return r * std::cos(theta);
}

double Rng::exponential(double rate) {
  double u;
  do {
    u = next_double();
  } while (u >= 1.0);
  return -std::log1p(-u) / rate;
}

double Rng::gamma(double shape) {
  if (shape < 1.0) {
    // boost to shape+1 and scale back
    const double u = std::max(next_double(), 1e-300);
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_double();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

BatchStats batch_stats(const std::vector<double>& batch_means) {
  BatchStats out;
  const std::size_t k = batch_means.size();
  if (k == 0) return out;
  double sum = 0.0;
  for (double b : batch_means) sum += b;
  out.mean = sum / static_cast<double>(k);
  if (k < 2) {
    out.stderr_ = kInf;
    return out;
  }
  double ss = 0.0;
  for (double b : batch_means) {
    const double d = b - out.mean;
    ss += d * d;
  }
  out.stderr_ = std::sqrt(ss / (static_cast<double>(k) * static_cast<double>(k - 1)));
  return out;
}

double digamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) raise(errc::invalid_argument, "digamma pole");
  double result = 0.0;
  while (x < 12.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv
          - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)));
  return result;
}

double log_rising_product(double p, int n) {
  double s = 0.0;
  for (int i = 1; i <= n; ++i) s += std::log(p + i);
  return s;
}

double log_falling_product(double p, int n) {
  double s = 0.0;
  for (int i = 1; i <= n; ++i) {
    if (p - i <= 0.0) raise(errc::invalid_argument, "falling product needs p > n");
    s += std::log(p - i);
  }
  return s;
}

double unit_ball_volume(int n) {
  if (n < 1) raise(errc::invalid_argument, "dimension must be positive");
  return std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0));
}

}  // namespace ce
