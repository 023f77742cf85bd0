// Copyright 2026 The triwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "triwave/optimize.hpp"

#include <cmath>
#include <utility>

#include "triwave/error.hpp"

namespace triwave {

namespace {

constexpr double kInvPhi = 0.6180339887498949;   // 1 / golden ratio
constexpr double kGoldenStep = 0.3819660112501051;  // 2 - golden ratio

void check_bracket(double lo, double hi, double tol) {
  if (!(lo < hi) || !(tol > 0.0)) {
    throw InvalidInput("scalar maximization needs lo < hi and tol > 0");
  }
}

}  // namespace

ScalarMaximum golden_section_maximize(const ScalarFunction& f, double lo,
                                      double hi, double tol) {
  check_bracket(lo, hi, tol);
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 >= f2 ? ScalarMaximum{x1, f1} : ScalarMaximum{x2, f2};
}

ScalarMaximum parabolic_maximize(const ScalarFunction& f, double lo, double hi,
                                 double tol) {
  check_bracket(lo, hi, tol);
  // Minimizes g = -f following Brent (1973), "localmin".
  auto g = [&](double x) { return -f(x); };
  double a = lo, b = hi;
  double x = a + kGoldenStep * (b - a);
  double w = x, v = x;
  double gx = g(x), gw = gx, gv = gx;
  double d = 0.0, e = 0.0;

  for (int iter = 0; iter < 200; ++iter) {
    const double m = 0.5 * (a + b);
    const double t = 1e-15 * std::abs(x) + tol / 3.0;
    if (std::abs(x - m) <= 2.0 * t - 0.5 * (b - a)) break;

    bool golden = true;
    if (std::abs(e) > t) {
      double r = (x - w) * (gx - gv);
      double q = (x - v) * (gx - gw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0) p = -p;
      q = std::abs(q);
      r = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * r) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < 2.0 * t || b - u < 2.0 * t) d = x < m ? t : -t;
        golden = false;
      }
    }
    if (golden) {
      e = (x < m ? b : a) - x;
      d = kGoldenStep * e;
    }
    const double u = std::abs(d) >= t ? x + d : (d > 0 ? x + t : x - t);
    const double gu = g(u);
    if (gu <= gx) {
      if (u < x) b = x; else a = x;
      v = w; gv = gw;
      w = x; gw = gx;
      x = u; gx = gu;
    } else {
      if (u < x) a = u; else b = u;
      if (gu <= gw || w == x) {
        v = w; gv = gw;
        w = u; gw = gu;
      } else if (gu <= gv || v == x || v == w) {
        v = u; gv = gu;
      }
    }
  }
  return {x, -gx};
}

}  // namespace triwave
