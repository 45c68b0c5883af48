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

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ce {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Error taxonomy shared by the whole library and mirrored by the C API.
enum class errc {
  ok = 0,
  invalid_argument,
  parse_error,
  unsupported,
  moments_undefined,
  beta_too_small,
  dimension_too_high,
  no_closed_form,
  divergent_integral,
  precondition_violated,
  regime_violated,
  kappa_out_of_range,
  not_positive_definite,
  degenerate_spectrum,
  horizon_too_short,
  condition_violated,
  divergent_mixing_moment,
  non_convergence,
  support_sampling_failure,
  evaluation_failure,
  internal,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

enum class Method { closed_form, quadrature, monte_carlo };

const char* method_name(Method m);

// Numeric result with an uncertainty of the producing method's kind:
// zero for closed forms, an error bound for quadrature, a batch standard
// error for Monte Carlo. `detail` carries sample counts or evaluation counts.
struct Estimate {
  double value = 0.0;
  double uncertainty = 0.0;
  Method method = Method::closed_form;
  std::int64_t detail = 0;
};

inline Estimate closed_estimate(double v) { return Estimate{v, 0.0, Method::closed_form, 0}; }

// Counter-based deterministic RNG (xoshiro256++ seeded through splitmix64).
// Substreams derived from the same seed are independent and reproducible,
// which keeps Monte Carlo results identical regardless of thread scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { reseed(seed); }

  void reseed(std::uint64_t seed);
  Rng substream(std::uint64_t stream) const;

  std::uint64_t next_u64();
  // uniform on [0,1)
  double next_double();
  double uniform(double a, double b) { return a + (b - a) * next_double(); }
  // standard normal, Box-Muller
  double normal();
  double exponential(double rate);
  // Marsaglia-Tsang; any shape > 0, unit rate
  double gamma(double shape);

 private:
  std::uint64_t s_[4];
  double normal_cache_ = 0.0;
  bool have_normal_cache_ = false;
  std::uint64_t seed_ = 0;
};

// Mean and standard error from equally sized batches.
struct BatchStats {
  double mean = 0.0;
  double stderr_ = 0.0;
};
BatchStats batch_stats(const std::vector<double>& batch_means);

double digamma(double x);

// log(n choose k) style product helpers used by the norm checks:
// log of prod_{i=1..n} (p + i) and prod_{i=1..n} (p - i).
double log_rising_product(double p, int n);
double log_falling_product(double p, int n);

// volume of the n-dimensional Euclidean unit ball
double unit_ball_volume(int n);

}  // namespace ce
