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
#include <functional>
#include <vector>

#include "ce/common.hpp"

namespace ce::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;        // estimated absolute error bound
  std::int64_t evals = 0;
  bool converged = false;
};

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  std::int64_t max_evals = 2'000'000;
};

using Fn1 = std::function<double(double)>;
using FnN = std::function<double(const double*)>;

// Adaptive Gauss-Kronrod (G7,K15) on a finite interval.
Result integrate_1d(const Fn1& f, double a, double b, const Options& opt = {});

// Adaptive cubature on an axis-aligned box, Genz-Malik embedded 7(5) rule.
// Requires dim >= 2; use integrate_1d for dim == 1.
Result integrate_box(const FnN& f, const std::vector<double>& lo,
                     const std::vector<double>& hi, const Options& opt = {});

// Dispatches on dimension.
Result integrate(const FnN& f, const std::vector<double>& lo,
                 const std::vector<double>& hi, const Options& opt = {});

// Root of a monotone function by bisection/secant hybrid (Brent-style).
double find_root(const Fn1& f, double a, double b, double x_tol, int max_iter = 200);

}  // namespace ce::quad
