#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netsec/critical.hpp"
#include "netsec/errors.hpp"
#include "netsec/game.hpp"
#include "netsec/graph.hpp"

namespace netsec {

enum class StaticsRegime { LowerAlphaMoreSecure, HigherAlphaMoreSecure, Coincide };

inline std::string_view to_string(StaticsRegime r) {
  switch (r) {
    case StaticsRegime::LowerAlphaMoreSecure: return "LowerAlphaMoreSecure";
    case StaticsRegime::HigherAlphaMoreSecure: return "HigherAlphaMoreSecure";
    case StaticsRegime::Coincide: return "Coincide";
  }
  return "?";
}

struct ComparativeStaticsResult {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::size_t d = 0;
  double theta = 0.0;
  double xbar = 0.0;
  double w_prime_xbar = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  StaticsRegime regime = StaticsRegime::Coincide;
};

inline constexpr double kCoincideTolerance = 1e-12;

namespace detail {

inline StaticsRegime classify_statics(double theta, double w_prime_xbar) {
  if (std::abs(theta - w_prime_xbar) <= kCoincideTolerance * std::max(1.0, w_prime_xbar)) {
    return StaticsRegime::Coincide;
  }
  return theta > w_prime_xbar ? StaticsRegime::LowerAlphaMoreSecure : StaticsRegime::HigherAlphaMoreSecure;
}

}  // namespace detail

// Interior attack probabilities X1, X2 for two Prelec curvatures a1 < a2 at the
// same theta = d c / L, and which of them is lower. theta above w'(Xbar) puts
// both above Xbar with X1 < X2.
inline ComparativeStaticsResult compare_weighting_theta(double alpha1, double alpha2, double theta) {
  if (!(alpha1 > 0.0 && alpha1 < alpha2 && alpha2 < 1.0)) {
    throw ParameterError("compare_weighting requires 0 < alpha1 < alpha2 < 1");
  }
  if (!(alpha2 < theta)) {
    throw ParameterError("compare_weighting requires alpha2 < d c / L");
  }
  ComparativeStaticsResult r;
  r.alpha1 = alpha1;
  r.alpha2 = alpha2;
  r.theta = theta;
  r.xbar = solve_xbar(alpha1, alpha2);
  r.w_prime_xbar = Weighting::prelec(alpha1).derivative(r.xbar);
  r.x1 = *critical_points(Weighting::prelec(alpha1), theta).x_upper;
  r.x2 = *critical_points(Weighting::prelec(alpha2), theta).x_upper;
  r.regime = detail::classify_statics(theta, r.w_prime_xbar);
  return r;
}

inline ComparativeStaticsResult compare_weighting(double alpha1, double alpha2, std::size_t d, double c,
                                                  double L) {
  if (!(c > 0.0 && L > 0.0) || d < 1) throw ParameterError("compare_weighting: need c, L > 0 and d >= 1");
  ComparativeStaticsResult r = compare_weighting_theta(alpha1, alpha2, static_cast<double>(d) * c / L);
  r.d = d;
  return r;
}

inline constexpr std::size_t kDensitySearchLimit = 1'000'000;

// Smallest neighborhood size d >= 2 with d c / L > w'(Xbar): from there on the
// more distorted players (a1) end up more secure. nullopt if none up to 1e6.
inline std::optional<std::size_t> density_threshold(double alpha1, double alpha2, double c, double L) {
  if (!(alpha1 > 0.0 && alpha1 < alpha2 && alpha2 < 1.0)) {
    throw ParameterError("density_threshold requires 0 < alpha1 < alpha2 < 1");
  }
  if (!(c > 0.0 && L > 0.0)) throw ParameterError("density_threshold: need c, L > 0");
  const double target = Weighting::prelec(alpha1).derivative(solve_xbar(alpha1, alpha2));
  const double ratio = c / L;
  // First integer strictly above target / ratio, then nudge for rounding.
  double guess = std::floor(target / ratio) + 1.0;
  if (guess < 2.0) guess = 2.0;
  if (guess > static_cast<double>(kDensitySearchLimit)) return std::nullopt;
  auto d = static_cast<std::size_t>(guess);
  while (d > 2 && static_cast<double>(d - 1) * ratio > target) --d;
  while (!(static_cast<double>(d) * ratio > target)) {
    if (++d > kDensitySearchLimit) return std::nullopt;
  }
  return d;
}

// Memoized X(d) for one homogeneous parameter set.
class XByDegree {
 public:
  XByDegree(Weighting w, double c, double L) : w_(w), c_(c), L_(L) {}

  double operator()(std::size_t d) {
    if (auto it = cache_.find(d); it != cache_.end()) return it->second;
    const CriticalPoints cp = critical_points(w_, static_cast<double>(d) * c_ / L_);
    if (!cp.interior_exists) {
      throw UndefinedCriticalPoint("X is undefined for d=" + std::to_string(d) + " (d c / L <= w'(x_min))");
    }
    return cache_[d] = *cp.x_upper;
  }

  double sum(const Graph& g) {
    double total = 0.0;
    for (Node i = 0; i < g.size(); ++i) total += (*this)(g.extended_size(i));
    return total;
  }

 private:
  Weighting w_;
  double c_;
  double L_;
  std::map<std::size_t, double> cache_;
};

// Sum over nodes of X(d_i) for homogeneous players.
inline double sum_x(const GameSpec& game) {
  if (!game.is_homogeneous()) throw HeterogeneityError("sum_x needs homogeneous players");
  if (game.size() == 0) return 0.0;
  const Player& p = game.player(0);
  XByDegree x(p.weighting, p.c, p.L);
  return x.sum(game.graph());
}

struct StarMinimalityResult {
  bool all_pass = false;
  double worst_gap = std::numeric_limits<double>::infinity();  // min over trees of sum(tree) - sum(star)
  std::size_t trees_checked = 0;
  std::size_t edge_additions_checked = 0;
  bool edge_additions_pass = true;
};

inline constexpr std::size_t kMaxStarExperiment = 7;

// Exhaustive check over labeled trees on n nodes that the star minimizes
// sum_i X(d_i); also checks that adding any single edge to a tree does not
// decrease the sum.
inline StarMinimalityResult star_minimality_experiment(std::size_t n, const Weighting& w, double c, double L) {
  if (n > kMaxStarExperiment) {
    throw SizeError("star_minimality_experiment supports n <= " + std::to_string(kMaxStarExperiment));
  }
  if (n < 2) throw ParameterError("star_minimality_experiment needs n >= 2");
  XByDegree x(w, c, L);
  const double star = x.sum(star_graph(n));
  StarMinimalityResult r;
  r.all_pass = true;
  for (const Graph& tree : enumerate_trees(n)) {
    const double s = x.sum(tree);
    r.worst_gap = std::min(r.worst_gap, s - star);
    if (s < star - 1e-12) r.all_pass = false;
    ++r.trees_checked;
    for (Node a = 0; a < n; ++a) {
      for (Node b = a + 1; b < n; ++b) {
        if (tree.adjacent(a, b)) continue;
        std::vector<Edge> edges = tree.edges();
        edges.emplace_back(a, b);
        const double denser = x.sum(Graph(n, edges));
        ++r.edge_additions_checked;
        if (denser < s - 1e-12) r.edge_additions_pass = false;
      }
    }
  }
  r.all_pass = r.all_pass && r.edge_additions_pass;
  return r;
}

}  // namespace netsec
