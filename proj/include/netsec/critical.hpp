#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>

#include "netsec/errors.hpp"
#include "netsec/roots.hpp"
#include "netsec/weighting.hpp"

namespace netsec {

inline constexpr double kRootResidual = 1e-12;

// Roots of w'(x) = theta on either side of the inflection point.
struct CriticalPoints {
  double x_min = kInvE;
  std::optional<double> v;        // root below x_min
  std::optional<double> x_upper;  // root above x_min
  // 1 - x_upper, solved for directly; carries full precision when x_upper ~ 1.
  std::optional<double> one_minus_x;
  double theta = 0.0;
  bool interior_exists = false;
  bool tangency = false;  // theta == w'(x_min): no interior root, full investment
};

namespace detail {

// Smallest gap u (from a decreasing ladder 1e-12, 1e-24, ...) at which
// pred(u) holds; used to push a bracket end toward 0 or 1 until the
// divergence of w' produces a sign change.
template <class Pred>
std::optional<double> probe_gap(Pred&& pred) {
  for (double u = 1e-12; u > 1e-300; u *= 1e-12) {
    if (pred(u)) return u;
  }
  return std::nullopt;
}

inline void require_curved(const Weighting& w, const char* op) {
  if (w.is_linear()) {
    throw SpecError(std::string(op) +
                    ": linear (identity) weighting has no interior critical points");
  }
}

}  // namespace detail

// Solves w'(x) = theta for V < x_min < X. When theta <= w'(x_min) = alpha
// there is no interior root and full investment is optimal.
inline CriticalPoints critical_points(const Weighting& w, double theta) {
  detail::require_curved(w, "critical_points");
  if (!std::isfinite(theta) || theta <= 0.0) {
    throw ParameterError("critical_points requires theta > 0, got " + std::to_string(theta));
  }
  CriticalPoints cp;
  cp.theta = theta;
  const double floor = w.alpha();
  if (theta <= floor) {
    cp.tangency = (theta == floor);
    return cp;
  }

  const double x_min = cp.x_min;

  // Lower root: w' - theta is positive near 0 and negative at x_min.
  auto lower = [&](double x) { return w.derivative(x) - theta; };
  const auto lo = detail::probe_gap([&](double x) { return lower(x) > 0.0; });
  if (!lo) throw ConvergenceError("critical_points: cannot bracket V for theta=" + std::to_string(theta));
  cp.v = solve_root_monotone(lower, *lo, x_min - 1e-12, kRootResidual);

  // Upper root, parametrized by the gap u = 1 - x.
  auto upper = [&](double u) { return w.derivative_complement(u) - theta; };
  const auto hi = detail::probe_gap([&](double u) { return upper(u) > 0.0; });
  if (!hi) throw ConvergenceError("critical_points: cannot bracket X for theta=" + std::to_string(theta));
  const double u = solve_root_monotone(upper, *hi, 1.0 - x_min - 1e-12, kRootResidual);
  cp.one_minus_x = u;
  cp.x_upper = 1.0 - u;
  cp.interior_exists = true;
  return cp;
}

struct ZPoint {
  double z = 0.0;
  double w_prime_z = 0.0;
  double one_minus_z = 0.0;
};

// Unique z > x_min with w'(z) = w(z) / z. w'(z) is the cost-ratio threshold
// between full and interior investment for an isolated player.
inline ZPoint solve_z(const Weighting& w) {
  detail::require_curved(w, "solve_z");
  // h(u) = w'(1-u)(1-u) - w(1-u): negative at x_min, positive near 1.
  auto h = [&](double u) { return w.derivative_complement(u) * (1.0 - u) - w.value_complement(u); };
  const auto hi = detail::probe_gap([&](double u) { return h(u) > 0.0; });
  if (!hi) throw ConvergenceError("solve_z: cannot bracket z");
  const double u = solve_root_monotone(h, *hi, 1.0 - w.x_min() - 1e-12, 1e-14);
  ZPoint zp;
  zp.one_minus_z = u;
  zp.z = 1.0 - u;
  zp.w_prime_z = w.derivative_complement(u);
  return zp;
}

namespace detail {

inline void check_alpha_order(double alpha1, double alpha2) {
  if (!(alpha1 > 0.0 && alpha1 < alpha2 && alpha2 < 1.0)) {
    throw ParameterError("requires 0 < alpha1 < alpha2 < 1, got alpha1=" +
                         std::to_string(alpha1) + ", alpha2=" + std::to_string(alpha2));
  }
}

inline double g_of_t(double alpha1, double alpha2, double t) {
  return std::pow(t, alpha2 - alpha1) * std::exp(std::pow(t, alpha1) - std::pow(t, alpha2));
}

}  // namespace detail

// g(x) = (-ln x)^(a2 - a1) exp((-ln x)^a1 - (-ln x)^a2); the ratio
// w'_{a1}(x) / w'_{a2}(x) scaled by a2 / a1. Strictly decreasing on [1/e, 1).
inline double g_eval(double alpha1, double alpha2, double x) {
  detail::check_alpha_order(alpha1, alpha2);
  if (!std::isfinite(x) || x < kInvE - 1e-15 || x >= 1.0) {
    throw DomainError("g_eval requires x in [1/e, 1), got " + std::to_string(x));
  }
  return detail::g_of_t(alpha1, alpha2, -std::log(x));
}

// Crossing point Xbar > 1/e of w'_{a1} and w'_{a2}: g(Xbar) = a1 / a2.
inline double solve_xbar(double alpha1, double alpha2) {
  detail::check_alpha_order(alpha1, alpha2);
  const double ratio = alpha1 / alpha2;
  auto f = [&](double u) { return detail::g_of_t(alpha1, alpha2, -std::log1p(-u)) - ratio; };
  const auto hi = detail::probe_gap([&](double u) { return f(u) < 0.0; });
  if (!hi) throw ConvergenceError("solve_xbar: cannot bracket Xbar");
  const double u = solve_root_monotone(f, *hi, 1.0 - kInvE - 1e-12, 1e-14);
  return 1.0 - u;
}

struct AssumptionLargeNReport {
  bool applicable = false;  // false when d c / L <= w'(x_min); the conditions are then vacuous
  bool holds = true;
  double gap_xv = 0.0;      // X - V - 1/d
  bool v_small = true;      // V < 1/d
  double w_at_inv_d = 0.0;  // w(1/d)
  bool cond3 = true;        // w(1/d) < c / L
};

// The three conditions (X - V > 1/d, V < 1/d, w(1/d) < c/L) under which the
// piecewise-linear best response is the exact best response.
inline AssumptionLargeNReport check_assumption_large_n(const Weighting& w, double c, double L,
                                                       std::size_t d) {
  if (d < 1) throw ParameterError("extended neighborhood size must be >= 1");
  if (!(c > 0.0) || !(L > 0.0) || !std::isfinite(c) || !std::isfinite(L)) {
    throw ParameterError("c and L must be finite and positive");
  }
  const double dd = static_cast<double>(d);
  const CriticalPoints cp = critical_points(w, dd * c / L);
  AssumptionLargeNReport r;
  r.w_at_inv_d = w.value(1.0 / dd);
  if (!cp.interior_exists) return r;
  r.applicable = true;
  r.gap_xv = (1.0 - *cp.one_minus_x) - *cp.v - 1.0 / dd;
  r.v_small = *cp.v < 1.0 / dd;
  r.cond3 = r.w_at_inv_d < c / L;
  r.holds = r.gap_xv > 0.0 && r.v_small && r.cond3;
  return r;
}

}  // namespace netsec
