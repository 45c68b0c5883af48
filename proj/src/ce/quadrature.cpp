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

#include "ce/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace ce::quad {

namespace {

// 15-point Kronrod nodes with embedded 7-point Gauss rule on [-1,1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Fn1& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k15 = kWgk[7] * fc;
  double g7 = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double fs = f(c - dx) + f(c + dx);
    k15 += kWgk[i] * fs;
    if (i % 2 == 1) g7 += kWg[i / 2] * fs;
  }
  k15 *= h;
  g7 *= h;
  return Segment{a, b, k15, std::abs(k15 - g7)};
}

}  // namespace

Result integrate_1d(const Fn1& f, double a, double b, const Options& opt) {
  Result out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> heap;
  Segment s0 = gk15(f, a, b);
  out.evals = 15;
  double total = s0.value;
  double err = s0.error;
  heap.push(s0);
  const auto tol = [&](double t) { return std::max(opt.abs_tol, opt.rel_tol * std::abs(t)); };
  while (err > tol(total) && out.evals + 30 <= opt.max_evals) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval exhausted at machine precision
      heap.push(Segment{worst.a, worst.b, worst.value, 0.0});
      err -= worst.error;
      continue;
    }
    Segment l = gk15(f, worst.a, mid);
    Segment r = gk15(f, mid, worst.b);
    out.evals += 30;
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
  }
  out.value = total;
  out.error = err;
  out.converged = err <= tol(total);
  return out;
}

namespace {

// Genz-Malik fully symmetric degree-7 rule with embedded degree-5 rule.
struct GmRule {
  int n;
  double w1, w2, w3, w4, w5;      // degree 7
  double e1, e2, e3, e4;          // degree 5
  static constexpr double lam2 = 0.35856858280031809199064515390793749545;  // sqrt(9/70)
  static constexpr double lam4 = 0.94868329805051379959966806332981556012;  // sqrt(9/10)
  static constexpr double lam5 = 0.68824720161168529772162873429362352513;  // sqrt(9/19)

  explicit GmRule(int dim) : n(dim) {
    const double nd = dim;
    w1 = (12824.0 - 9120.0 * nd + 400.0 * nd * nd) / 19683.0;
    w2 = 980.0 / 6561.0;
    w3 = (1820.0 - 400.0 * nd) / 19683.0;
    w4 = 200.0 / 19683.0;
    w5 = 6859.0 / 19683.0 / std::ldexp(1.0, dim);
    e1 = (729.0 - 950.0 * nd + 50.0 * nd * nd) / 729.0;
    e2 = 245.0 / 486.0;
    e3 = (265.0 - 100.0 * nd) / 1458.0;
    e4 = 25.0 / 729.0;
  }

  std::int64_t points() const {
    return 1 + 4 * n + 2 * n * (n - 1) + (std::int64_t(1) << n);
  }
};

struct GmBox {
  std::vector<double> center, half;
  double value = 0, error = 0;
  int split_dim = 0;
  bool operator<(const GmBox& o) const { return error < o.error; }
};

void gm_eval(const GmRule& rule, const FnN& f, GmBox& box) {
  const int n = rule.n;
  std::vector<double> x(box.center);
  double vol = 1.0;
  for (int i = 0; i < n; ++i) vol *= 2.0 * box.half[i];

  const double f0 = f(x.data());
  double sum2 = 0.0, sum3 = 0.0, sum4 = 0.0, sum5 = 0.0;
  double max_diff = -1.0;
  int split = 0;
  const double ratio = GmRule::lam2 * GmRule::lam2 / (GmRule::lam4 * GmRule::lam4);

  for (int i = 0; i < n; ++i) {
    const double ci = box.center[i];
    const double hi = box.half[i];
    x[i] = ci - GmRule::lam2 * hi;
    const double v2m = f(x.data());
    x[i] = ci + GmRule::lam2 * hi;
    const double v2p = f(x.data());
    x[i] = ci - GmRule::lam4 * hi;
    const double v4m = f(x.data());
    x[i] = ci + GmRule::lam4 * hi;
    const double v4p = f(x.data());
    x[i] = ci;
    sum2 += v2m + v2p;
    sum3 += v4m + v4p;
    const double diff = std::abs(v2m + v2p - 2.0 * f0 - ratio * (v4m + v4p - 2.0 * f0));
    if (diff > max_diff) {
      max_diff = diff;
      split = i;
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int si = -1; si <= 1; si += 2) {
        for (int sj = -1; sj <= 1; sj += 2) {
          x[i] = box.center[i] + si * GmRule::lam4 * box.half[i];
          x[j] = box.center[j] + sj * GmRule::lam4 * box.half[j];
          sum4 += f(x.data());
        }
      }
      x[i] = box.center[i];
      x[j] = box.center[j];
    }
  }

  const std::int64_t corners = std::int64_t(1) << n;
  for (std::int64_t mask = 0; mask < corners; ++mask) {
    for (int i = 0; i < n; ++i) {
      const double s = (mask >> i) & 1 ? 1.0 : -1.0;
      x[i] = box.center[i] + s * GmRule::lam5 * box.half[i];
    }
    sum5 += f(x.data());
  }
  for (int i = 0; i < n; ++i) x[i] = box.center[i];

  const double res7 = vol * (rule.w1 * f0 + rule.w2 * sum2 + rule.w3 * sum3 +
                             rule.w4 * sum4 + rule.w5 * sum5);
  const double res5 = vol * (rule.e1 * f0 + rule.e2 * sum2 + rule.e3 * sum3 +
                             rule.e4 * sum4);
  box.value = res7;
  box.error = std::abs(res7 - res5);
  box.split_dim = split;
}

}  // namespace

Result integrate_box(const FnN& f, const std::vector<double>& lo,
                     const std::vector<double>& hi, const Options& opt) {
  const int n = static_cast<int>(lo.size());
  if (n < 2 || hi.size() != lo.size())
    raise(errc::invalid_argument, "integrate_box needs matching bounds, dim >= 2");
  const GmRule rule(n);

  GmBox root;
  root.center.resize(n);
  root.half.resize(n);
  for (int i = 0; i < n; ++i) {
    root.center[i] = 0.5 * (lo[i] + hi[i]);
    root.half[i] = 0.5 * (hi[i] - lo[i]);
    if (!(root.half[i] > 0.0)) raise(errc::invalid_argument, "empty integration box");
  }

  Result out;
  gm_eval(rule, f, root);
  out.evals = rule.points();
  double total = root.value;
  double err = root.error;

  std::priority_queue<GmBox> heap;
  heap.push(std::move(root));
  const auto tol = [&](double t) { return std::max(opt.abs_tol, opt.rel_tol * std::abs(t)); };

  while (err > tol(total) && out.evals + 2 * rule.points() <= opt.max_evals) {
    GmBox worst = heap.top();
    heap.pop();
    const int d = worst.split_dim;
    if (worst.half[d] <= std::abs(worst.center[d]) * 1e-15 + 1e-300) {
      err -= worst.error;
      worst.error = 0.0;
      heap.push(std::move(worst));
      continue;
    }
    GmBox left = worst, right = worst;
    left.half[d] *= 0.5;
    right.half[d] *= 0.5;
    left.center[d] -= left.half[d];
    right.center[d] += right.half[d];
    gm_eval(rule, f, left);
    gm_eval(rule, f, right);
    out.evals += 2 * rule.points();
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
  }

  out.value = total;
  out.error = err;
  out.converged = err <= tol(total);
  return out;
}

Result integrate(const FnN& f, const std::vector<double>& lo,
                 const std::vector<double>& hi, const Options& opt) {
  if (lo.size() == 1) {
    return integrate_1d([&f](double x) { return f(&x); }, lo[0], hi[0], opt);
  }
  return integrate_box(f, lo, hi, opt);
}

double find_root(const Fn1& f, double a, double b, double x_tol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) raise(errc::invalid_argument, "find_root: no sign change in bracket");
  for (int it = 0; it < max_iter; ++it) {
    // secant candidate, fall back to bisection when it leaves the bracket
    double m = b - fb * (b - a) / (fb - fa);
    const double mid = 0.5 * (a + b);
    if (!(m > std::min(a, b) && m < std::max(a, b))) m = mid;
    if (std::abs(b - a) < x_tol) return mid;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if (fa * fm < 0.0) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace ce::quad
