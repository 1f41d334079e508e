#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "netsec/errors.hpp"
#include "netsec/roots.hpp"

namespace netsec {

inline constexpr double kInvE = 1.0 / std::numbers::e;

// Probability weighting function with analytic first and second derivatives.
//
// Prelec:   w(x) = exp(-(-ln x)^alpha), alpha in (0, 1]
// Identity: w(x) = x
//
// Prelec with alpha = 1 coincides with Identity; is_linear() is true for both.
class Weighting {
 public:
  enum class Kind { Prelec, Identity };

  static Weighting prelec(double alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
      throw ParameterError("Prelec alpha must lie in (0, 1], got " +
                           std::to_string(alpha));
    }
    return Weighting(Kind::Prelec, alpha);
  }

  static Weighting identity() { return Weighting(Kind::Identity, 1.0); }

  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  bool is_linear() const noexcept { return kind_ == Kind::Identity || alpha_ == 1.0; }

  // Inflection point of w; minimizer of w'. Meaningless for linear weighting.
  double x_min() const noexcept { return kInvE; }

  // w(x) on [0, 1], with w(0) = 0 and w(1) = 1 by continuity.
  double value(double x) const {
    check_closed(x, "w");
    if (kind_ == Kind::Identity) return x;
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    return std::exp(-std::pow(neg_log(x), alpha_));
  }

  // w'(x) on the open interval (0, 1); diverges at both ends for alpha < 1.
  double derivative(double x) const {
    check_open(x, "w'");
    if (kind_ == Kind::Identity) return 1.0;
    const double t = neg_log(x);
    return std::exp(-std::pow(t, alpha_)) * (alpha_ / x) * std::pow(t, alpha_ - 1.0);
  }

  // w''(x) = w'(x) / (x t) * [1 - t + alpha (t^alpha - 1)], t = -ln x.
  double second_derivative(double x) const {
    check_open(x, "w''");
    if (kind_ == Kind::Identity) return 0.0;
    const double t = neg_log(x);
    const double ta = std::pow(t, alpha_);
    const double wp = std::exp(-ta) * (alpha_ / x) * std::pow(t, alpha_ - 1.0);
    return wp / (x * t) * (1.0 - t + alpha_ * (ta - 1.0));
  }

  // w and w' at x = 1 - u, parameterized by the gap u in (0, 1); resolves
  // points closer to 1 than double spacing allows.
  double value_complement(double u) const {
    check_open(u, "w(1-u)");
    if (kind_ == Kind::Identity) return 1.0 - u;
    return std::exp(-std::pow(-std::log1p(-u), alpha_));
  }

  double derivative_complement(double u) const {
    check_open(u, "w'(1-u)");
    if (kind_ == Kind::Identity) return 1.0;
    const double t = -std::log1p(-u);
    return std::exp(-std::pow(t, alpha_)) * (alpha_ / (1.0 - u)) * std::pow(t, alpha_ - 1.0);
  }

  friend bool operator==(const Weighting&, const Weighting&) = default;

 private:
  Weighting(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}

  static void check_closed(double x, const char* fn) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
      throw DomainError(std::string(fn) + " requires x in [0, 1], got " + std::to_string(x));
    }
  }

  static void check_open(double x, const char* fn) {
    if (!std::isfinite(x) || x <= 0.0 || x >= 1.0) {
      throw DomainError(std::string(fn) + " requires x in (0, 1), got " + std::to_string(x));
    }
  }

  // -ln x, switching to a series in (1 - x) right below 1 where log loses digits.
  static double neg_log(double x) {
    const double u = 1.0 - x;
    if (u < 1e-8) return u + 0.5 * u * u;
    return -std::log(x);
  }

  Kind kind_;
  double alpha_;
};

struct ShapeReport {
  double x_min = std::numeric_limits<double>::quiet_NaN();
  double w_prime_min = std::numeric_limits<double>::quiet_NaN();
  bool unique_min = false;            // w' has a strict interior minimum
  bool concave_convex_split = false;  // w'' < 0 below x_min, > 0 above
  bool endpoint_blowup = false;       // w' grows without bound toward 0 and 1
  bool ratio_condition = false;       // w''/w' < 1/(1-x) on (x_min, 1)
  bool convex_derivative = false;     // w' strictly convex on (x_min, 1)
};

// Samples w' and w'' on a uniform grid of (0, 1) and reports which of the shape
// assumptions the equilibrium analysis relies on are satisfied. Failures come
// back as false flags.
inline ShapeReport check_shape(const Weighting& w, std::size_t grid_size) {
  if (grid_size < 100) {
    throw ParameterError("check_shape needs grid_size >= 100");
  }
  const std::size_t m = grid_size;
  std::vector<double> xs(m);
  std::vector<double> d1(m);
  std::vector<double> d2(m);
  for (std::size_t k = 0; k < m; ++k) {
    xs[k] = static_cast<double>(k + 1) / static_cast<double>(m + 1);
    d1[k] = w.derivative(xs[k]);
    d2[k] = w.second_derivative(xs[k]);
  }

  // Signs of w'' with a relative zero band, so a constant w' reads as all zeros.
  auto sign = [&](std::size_t k) {
    const double band = 1e-12 * std::max(1.0, std::abs(d1[k]));
    if (d2[k] > band) return 1;
    if (d2[k] < -band) return -1;
    return 0;
  };

  ShapeReport r;
  std::size_t argmin = 0;
  for (std::size_t k = 1; k < m; ++k) {
    if (d1[k] < d1[argmin]) argmin = k;
  }
  r.x_min = xs[argmin];
  r.w_prime_min = d1[argmin];

  std::size_t changes = 0;
  std::size_t first_pos = m;
  int prev = 0;
  bool neg_then_pos = true;
  for (std::size_t k = 0; k < m; ++k) {
    const int s = sign(k);
    if (s == 0) continue;
    if (prev != 0 && s != prev) {
      ++changes;
      if (!(prev < 0 && s > 0)) neg_then_pos = false;
      first_pos = k;
    }
    prev = s;
  }
  if (changes != 1 || !neg_then_pos) return r;

  // Refine the inflection point between the bracketing grid samples.
  const double lo = xs[first_pos - 1];
  const double hi = xs[first_pos];
  auto d2f = [&w](double x) { return w.second_derivative(x); };
  double x_star;
  if (w.second_derivative(lo) == 0.0) {
    x_star = lo;
  } else {
    x_star = solve_root_monotone(d2f, lo, hi, 0.0);
  }
  r.x_min = x_star;
  r.w_prime_min = w.derivative(x_star);
  r.unique_min = true;
  for (std::size_t k = 0; k < m; ++k) {
    if (xs[k] != x_star && d1[k] <= r.w_prime_min) r.unique_min = false;
  }

  r.concave_convex_split = true;
  for (std::size_t k = 0; k < m; ++k) {
    if (xs[k] < x_star && !(d2[k] < 0.0)) r.concave_convex_split = false;
    if (xs[k] > x_star && !(d2[k] > 0.0)) r.concave_convex_split = false;
  }

  const double probes[] = {1e-2, 1e-4, 1e-6, 1e-8};
  bool blow = true;
  for (std::size_t k = 1; k < std::size(probes); ++k) {
    if (!(w.derivative(probes[k]) > w.derivative(probes[k - 1]))) blow = false;
    if (!(w.derivative(1.0 - probes[k]) > w.derivative(1.0 - probes[k - 1]))) blow = false;
  }
  r.endpoint_blowup = blow;

  r.ratio_condition = true;
  r.convex_derivative = true;
  std::size_t prev_above = m;
  std::size_t prev2_above = m;
  for (std::size_t k = 0; k < m; ++k) {
    if (!(xs[k] > x_star)) continue;
    if (!(d2[k] / d1[k] < 1.0 / (1.0 - xs[k]))) r.ratio_condition = false;
    if (prev2_above != m) {
      // Uniform spacing: convexity is a positive second difference.
      if (!(d1[prev2_above] + d1[k] - 2.0 * d1[prev_above] > 0.0)) {
        r.convex_derivative = false;
      }
    }
    prev2_above = prev_above;
    prev_above = k;
  }
  return r;
}

}  // namespace netsec
