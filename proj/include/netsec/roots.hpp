#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "netsec/errors.hpp"

namespace netsec {

inline constexpr int kDefaultRootIterations = 200;

// Bracketed scalar root finder (Brent: inverse quadratic / secant steps with
// a bisection safeguard). Returns as soon as |f(x)| <= tol, or when the
// bracket has shrunk to machine resolution around x.
template <class F>
double solve_root_monotone(F&& f, double lo, double hi, double tol,
                           int max_iter = kDefaultRootIterations) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi)) {
    throw BracketError("invalid bracket [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  auto eval = [&f](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw NonFiniteError("function is not finite at x=" + std::to_string(x));
    }
    return v;
  };

  double a = lo;
  double b = hi;
  double fa = eval(a);
  double fb = eval(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw BracketError("f has the same sign at both ends of [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;

  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + std::numeric_limits<double>::min();
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) <= tol || std::abs(xm) <= tol1) return b;

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = eval(b);
  }
  throw ConvergenceError("root not bracketed to tolerance within " +
                         std::to_string(max_iter) + " iterations");
}

}  // namespace netsec
