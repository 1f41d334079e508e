#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netsec/critical.hpp"
#include "netsec/errors.hpp"
#include "netsec/game.hpp"
#include "netsec/graph.hpp"

namespace netsec {

enum class SingleRegime { FullInvest, Interior, Zero };

inline std::string_view to_string(SingleRegime r) {
  switch (r) {
    case SingleRegime::FullInvest: return "full_invest";
    case SingleRegime::Interior: return "interior";
    case SingleRegime::Zero: return "zero";
  }
  return "?";
}

// Optimal investment of an isolated player (d = 1).
struct SinglePlayerOptimum {
  double s_star = 1.0;
  SingleRegime regime = SingleRegime::FullInvest;
  // c/L sits exactly on the switching threshold; both 1 and 1 - X are optimal.
  bool tie = false;
  std::optional<double> w_prime_z;
};

// Full investment when c/L < w'(z) (or when w' never drops to c/L), otherwise
// 1 - X with w'(X) = c/L. Linear weighting: 1 below c/L = 1, 0 above.
inline SinglePlayerOptimum single_player_optimum(const Weighting& w, double c, double L) {
  if (!(c > 0.0 && L > 0.0 && std::isfinite(c) && std::isfinite(L))) {
    throw ParameterError("c and L must be finite and positive");
  }
  const double ratio = c / L;
  SinglePlayerOptimum out;
  if (w.is_linear()) {
    if (ratio > 1.0) {
      out.s_star = 0.0;
      out.regime = SingleRegime::Zero;
    }
    out.tie = ratio == 1.0;
    return out;
  }
  const ZPoint zp = solve_z(w);
  out.w_prime_z = zp.w_prime_z;
  if (ratio < zp.w_prime_z) return out;
  const CriticalPoints cp = critical_points(w, ratio);
  out.s_star = *cp.one_minus_x;
  out.regime = SingleRegime::Interior;
  out.tie = ratio == zp.w_prime_z;
  return out;
}

struct InvestmentInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_open = false;
  bool upper_open = false;

  bool contains(double s) const {
    const bool lo_ok = lower_open ? s > lower : s >= lower;
    const bool hi_ok = upper_open ? s < upper : s <= upper;
    return lo_ok && hi_ok;
  }
};

// Common investment levels s for which the identical profile s*1 is a Weakest
// Link equilibrium.
struct WlEquilibriumSet {
  std::vector<InvestmentInterval> common_investment_ranges;
  // Excluded band of common investments: (1 - X, 1 - V).
  std::optional<InvestmentInterval> forbidden_band;
  std::optional<double> critical_epsilon;  // boundary of the near-full band
  bool endpoint_indeterminate = false;     // s = 1 - eps* itself is not classified
  bool verified = false;                   // every sample passed the deviation oracle
  std::vector<std::string> notes;
};

inline constexpr double kWlBsTolerance = 1e-7;

struct WlBsVerification {
  bool is_pne = false;
  double max_violation = 0.0;
};

namespace detail {

inline void require_homogeneous(const GameSpec& game, const char* op) {
  if (!game.is_homogeneous()) {
    throw HeterogeneityError(std::string(op) + ": heterogeneous players are not supported");
  }
  if (game.size() == 0) throw ParameterError(std::string(op) + ": empty game");
}

}  // namespace detail

// Deviation oracle for min/max externalities: 1001-point grid plus the
// candidates {0, 1, neighborhood min/max, 1 - X}.
inline WlBsVerification verify_wl_bs(const GameSpec& game, const StrategyProfile& s,
                                     double tol = kWlBsTolerance) {
  if (game.externality() == Externality::TotalEffort) {
    throw ParameterError("verify_wl_bs expects a Weakest Link or Best Shot game");
  }
  require_size(game, s);
  const Graph& g = game.graph();
  WlBsVerification out;
  for (Node i = 0; i < game.size(); ++i) {
    std::vector<double> cands{0.0, 1.0};
    if (!g.neighbors(i).empty()) {
      double lo = 1.0;
      double hi = 0.0;
      for (Node j : g.neighbors(i)) {
        lo = std::min(lo, s[j]);
        hi = std::max(hi, s[j]);
      }
      cands.push_back(game.externality() == Externality::WeakestLink ? lo : hi);
    }
    const Player& p = game.player(i);
    if (!p.weighting.is_linear()) {
      const CriticalPoints cp = critical_points(p.weighting, p.cost_ratio());
      if (cp.interior_exists) cands.push_back(*cp.one_minus_x);
    }
    out.max_violation = std::max(out.max_violation, best_deviation(game, i, s, cands).max_gain);
  }
  out.is_pne = out.max_violation < tol;
  return out;
}

// Equilibria of a Weakest Link game are identical profiles s*1 (connected
// graph). With theta = c/L:
//   theta <= w'(x_min):        every s in [0, 1]
//   w'(x_min) < theta < w'(z): [0, 1 - X] and the near-full band (1 - eps*, 1]
//                              where Eu(1 - eps*) = Eu(1 - X)
//   theta >= w'(z):            [0, 1 - X]
// `samples_per_interval` common levels per interval are checked with verify_wl_bs.
inline WlEquilibriumSet weakest_link_equilibria(const GameSpec& game, std::size_t samples_per_interval = 11) {
  if (game.externality() != Externality::WeakestLink) {
    throw ParameterError("weakest_link_equilibria expects a Weakest Link game");
  }
  detail::require_homogeneous(game, "weakest_link_equilibria");
  if (!game.graph().is_connected()) {
    throw ConnectivityError("weakest_link_equilibria: graph is not connected");
  }
  const Player& p = game.player(0);
  const Weighting& w = p.weighting;
  const double theta = p.cost_ratio();
  WlEquilibriumSet out;

  if (w.is_linear()) {
    if (theta < 1.0) {
      out.common_investment_ranges.push_back({0.0, 1.0, false, false});
      out.notes.push_back("linear weighting, c/L < 1: any common investment");
    } else if (theta > 1.0) {
      out.common_investment_ranges.push_back({0.0, 0.0, false, false});
      out.notes.push_back("linear weighting, c/L > 1: only zero investment");
    } else {
      out.common_investment_ranges.push_back({0.0, 1.0, false, false});
      out.notes.push_back("linear weighting, c/L = 1: every level is optimal");
    }
  } else {
    const CriticalPoints cp = critical_points(w, theta);
    if (!cp.interior_exists) {
      out.common_investment_ranges.push_back({0.0, 1.0, false, false});
      out.notes.push_back("c/L <= w'(x_min): any common investment is an equilibrium");
    } else {
      const double s_hi = *cp.one_minus_x;  // 1 - X
      const double s_band_hi = 1.0 - *cp.v; // 1 - V
      out.common_investment_ranges.push_back({0.0, s_hi, false, false});
      out.forbidden_band = InvestmentInterval{s_hi, s_band_hi, true, true};
      const ZPoint zp = solve_z(w);
      if (theta < zp.w_prime_z) {
        // Utility of a common level s, from a single player's perspective.
        auto eu = [&](double s) { return -p.L * w.value(1.0 - s) - p.c * s; };
        const double u_ref = eu(s_hi);
        // Eu(1 - eps) - Eu(1 - X) rises from negative (eps = V) to positive (eps -> 0).
        auto f = [&](double eps) { return eu(1.0 - eps) - u_ref; };
        const double eps_star = solve_root_monotone(f, 1e-300, *cp.v, 0.0);
        out.critical_epsilon = eps_star;
        out.endpoint_indeterminate = true;
        out.common_investment_ranges.push_back({1.0 - eps_star, 1.0, true, false});
        out.notes.push_back("w'(x_min) < c/L < w'(z): near-full-investment equilibria exist");
      } else {
        out.notes.push_back("c/L >= w'(z): equilibria have attack probability at least X");
      }
    }
  }

  out.verified = true;
  const std::size_t k = std::max<std::size_t>(samples_per_interval, 2);
  for (const auto& iv : out.common_investment_ranges) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = iv.lower + (iv.upper - iv.lower) * static_cast<double>(j) / static_cast<double>(k - 1);
      if (!iv.contains(s)) {
        // Step just inside an open end.
        s = iv.lower + (iv.upper - iv.lower) * (static_cast<double>(j) + 0.5) / static_cast<double>(k);
      }
      const StrategyProfile prof(game.size(), s);
      if (!verify_wl_bs(game, prof).is_pne) out.verified = false;
    }
  }
  return out;
}

// One Best Shot equilibrium per maximal independent set: members invest the
// isolated-player optimum, everyone else 0.
inline std::vector<StrategyProfile> best_shot_equilibria(const GameSpec& game, std::size_t limit) {
  if (game.externality() != Externality::BestShot) {
    throw ParameterError("best_shot_equilibria expects a Best Shot game");
  }
  detail::require_homogeneous(game, "best_shot_equilibria");
  const Player& p = game.player(0);
  if (p.weighting.is_linear()) {
    throw SpecError("best_shot_equilibria: requires a curved (Prelec alpha < 1) weighting");
  }
  const double s_star = single_player_optimum(p.weighting, p.c, p.L).s_star;
  std::vector<StrategyProfile> out;
  for (const NodeSet& mis : maximal_independent_sets(game.graph(), limit)) {
    StrategyProfile prof(game.size(), 0.0);
    for (Node v : mis) prof.set(v, s_star);
    out.push_back(std::move(prof));
  }
  return out;
}

}  // namespace netsec
