#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "netsec/critical.hpp"
#include "netsec/errors.hpp"
#include "netsec/game.hpp"
#include "netsec/graph.hpp"

namespace netsec {

// How a player responds to the aggregate investment of her neighbors.
// Fixed: a dominant strategy independent of neighbors (linear weighting, or
// d c / L <= w'(x_min)). Threshold: the piecewise-linear best response that
// tops the neighborhood total up to target = d (1 - X).
struct ResponseRule {
  enum class Kind { Fixed, Threshold };
  Kind kind = Kind::Fixed;
  double fixed_value = 1.0;
  double target = 0.0;
  std::optional<CriticalPoints> critical;

  bool has_threshold() const noexcept { return kind == Kind::Threshold; }
};

inline ResponseRule response_rule(const Weighting& w, double c, double L, std::size_t d) {
  if (d < 1) throw ParameterError("extended neighborhood size must be >= 1");
  const double theta = static_cast<double>(d) * c / L;
  ResponseRule r;
  if (w.is_linear()) {
    // Risk-neutral: the marginal utility L/d - c has a fixed sign. At theta == 1
    // every investment is optimal and 1 is chosen.
    r.fixed_value = theta <= 1.0 ? 1.0 : 0.0;
    return r;
  }
  CriticalPoints cp = critical_points(w, theta);
  if (!cp.interior_exists) return r;
  r.kind = ResponseRule::Kind::Threshold;
  r.target = static_cast<double>(d) * *cp.one_minus_x;
  r.critical = std::move(cp);
  return r;
}

inline ResponseRule response_rule(const GameSpec& game, Node i) {
  const Player& p = game.player(i);
  return response_rule(p.weighting, p.c, p.L, game.graph().extended_size(i));
}

inline std::vector<ResponseRule> response_rules(const GameSpec& game) {
  std::vector<ResponseRule> out;
  out.reserve(game.size());
  for (Node i = 0; i < game.size(); ++i) out.push_back(response_rule(game, i));
  return out;
}

inline double apply_rule(const ResponseRule& r, double s_bar) {
  if (!r.has_threshold()) return r.fixed_value;
  return std::clamp(r.target - s_bar, 0.0, 1.0);
}

// Piecewise best response: 1 below target - 1, 0 above target, target - s_bar between.
inline double best_response_for_target(double target, double s_bar) {
  return std::clamp(target - s_bar, 0.0, 1.0);
}

inline double best_response(const Weighting& w, double c, double L, std::size_t d, double s_bar) {
  if (!std::isfinite(s_bar) || s_bar < 0.0 || s_bar > static_cast<double>(d) - 1.0) {
    throw DomainError("aggregate neighbor investment must lie in [0, d-1], got " +
                      std::to_string(s_bar));
  }
  return apply_rule(response_rule(w, c, L, d), s_bar);
}

enum class NodeCase { FullInvest, Interior, Zero, Violated };

inline std::string_view to_string(NodeCase c) {
  switch (c) {
    case NodeCase::FullInvest: return "full_invest";
    case NodeCase::Interior: return "interior";
    case NodeCase::Zero: return "zero";
    case NodeCase::Violated: return "violated";
  }
  return "?";
}

enum class SolveMethod { BRD, LCP, InteriorSolve, Analytic };

inline std::string_view to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::BRD: return "brd";
    case SolveMethod::LCP: return "lcp";
    case SolveMethod::InteriorSolve: return "interior";
    case SolveMethod::Analytic: return "analytic";
  }
  return "?";
}

struct PneVerification {
  bool is_pne = false;
  double max_violation = 0.0;           // largest unilateral utility gain found
  std::vector<NodeCase> cases;          // three-case characterization per node
  bool characterization_holds = false;  // no node is Violated
};

inline constexpr double kPneTolerance = 1e-6;
inline constexpr double kCaseTolerance = 1e-8;

inline NodeCase classify_node(const ResponseRule& r, double s, double s_bar, double case_tol) {
  const bool at_one = std::abs(s - 1.0) <= case_tol;
  const bool at_zero = std::abs(s) <= case_tol;
  if (!r.has_threshold()) {
    if (r.fixed_value == 1.0) return at_one ? NodeCase::FullInvest : NodeCase::Violated;
    return at_zero ? NodeCase::Zero : NodeCase::Violated;
  }
  if (at_one && 1.0 + s_bar < r.target + case_tol) return NodeCase::FullInvest;
  if (at_zero && s_bar > r.target - case_tol) return NodeCase::Zero;
  if (std::abs(s + s_bar - r.target) < case_tol) return NodeCase::Interior;
  return NodeCase::Violated;
}

// Checks a Total Effort profile two ways: the three-case neighborhood
// characterization, and a brute-force deviation oracle (1001-point grid plus
// the analytic candidates {0, 1, target - s_bar}). is_pne comes from the oracle.
inline PneVerification verify_pne(const GameSpec& game, const StrategyProfile& s,
                                  double tol = kPneTolerance, double case_tol = kCaseTolerance) {
  if (game.externality() != Externality::TotalEffort) {
    throw ParameterError("verify_pne expects a Total Effort game");
  }
  require_size(game, s);
  const auto rules = response_rules(game);
  PneVerification out;
  out.cases.resize(game.size());
  out.characterization_holds = true;
  for (Node i = 0; i < game.size(); ++i) {
    const double s_bar = neighbor_sum(game.graph(), i, s);
    out.cases[i] = classify_node(rules[i], s[i], s_bar, case_tol);
    if (out.cases[i] == NodeCase::Violated) out.characterization_holds = false;
    std::vector<double> cands{0.0, 1.0};
    if (rules[i].has_threshold()) cands.push_back(best_response_for_target(rules[i].target, s_bar));
    out.max_violation = std::max(out.max_violation, best_deviation(game, i, s, cands).max_gain);
  }
  out.is_pne = out.max_violation < tol;
  return out;
}

// Average true attack probability over nodes.
inline double phi(const GameSpec& game, const StrategyProfile& s) {
  const auto probs = attack_probabilities(game, s);
  if (probs.empty()) return 0.0;
  return std::accumulate(probs.begin(), probs.end(), 0.0) / static_cast<double>(probs.size());
}

struct EquilibriumReport {
  StrategyProfile profile;
  std::vector<double> attack_probs;
  double phi = 0.0;
  bool is_pne = false;
  bool converged = true;
  std::vector<NodeCase> per_node_case;
  double max_violation = 0.0;
  std::size_t iterations = 0;
  SolveMethod method = SolveMethod::BRD;
};

inline EquilibriumReport make_report(const GameSpec& game, StrategyProfile profile,
                                     SolveMethod method, std::size_t iterations,
                                     double tol = kPneTolerance) {
  EquilibriumReport rep;
  const PneVerification v = verify_pne(game, profile, tol);
  rep.attack_probs = attack_probabilities(game, profile);
  rep.phi = phi(game, profile);
  rep.is_pne = v.is_pne;
  rep.per_node_case = v.cases;
  rep.max_violation = v.max_violation;
  rep.iterations = iterations;
  rep.method = method;
  rep.profile = std::move(profile);
  return rep;
}

struct BrdOptions {
  enum class Order { RoundRobin, Random };
  Order order = Order::RoundRobin;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::size_t max_sweeps = 10000;
  std::optional<StrategyProfile> start;  // defaults to all zeros
};

// Sequential best-response dynamics. Players with a dominant strategy are
// pinned before the sweeps start. Stops when the largest change within a sweep
// drops below tol; running out of sweeps is reported through converged=false
// and iterations=max_sweeps.
inline EquilibriumReport brd_solve(const GameSpec& game, const BrdOptions& opt = {}) {
  if (game.externality() != Externality::TotalEffort) {
    throw ParameterError("brd_solve expects a Total Effort game");
  }
  const std::size_t n = game.size();
  const Graph& g = game.graph();
  const auto rules = response_rules(game);

  std::vector<double> s = opt.start ? opt.start->values() : std::vector<double>(n, 0.0);
  if (s.size() != n) throw ParameterError("start profile has the wrong length");

  std::vector<Node> dynamic;
  for (Node i = 0; i < n; ++i) {
    if (rules[i].has_threshold()) {
      dynamic.push_back(i);
    } else {
      s[i] = rules[i].fixed_value;
    }
  }

  std::mt19937_64 rng(opt.seed);
  std::size_t sweeps = 0;
  bool converged = dynamic.empty();
  while (!converged && sweeps < opt.max_sweeps) {
    if (opt.order == BrdOptions::Order::Random) std::shuffle(dynamic.begin(), dynamic.end(), rng);
    double max_change = 0.0;
    for (Node i : dynamic) {
      double s_bar = 0.0;
      for (Node j : g.neighbors(i)) s_bar += s[j];
      const double next = apply_rule(rules[i], s_bar);
      max_change = std::max(max_change, std::abs(next - s[i]));
      s[i] = next;
    }
    ++sweeps;
    converged = max_change < opt.tol;
  }

  EquilibriumReport rep = make_report(game, StrategyProfile(std::move(s)), SolveMethod::BRD, sweeps);
  rep.converged = converged;
  if (!converged) rep.is_pne = false;
  return rep;
}

// Dense (A + I) s = d o (1 - X). Returns a report when the solution lies in
// [0, 1]^n (1e-9 slack, then clamped); nullopt when it leaves the box.
inline std::optional<EquilibriumReport> interior_solve(const GameSpec& game) {
  if (game.externality() != Externality::TotalEffort) {
    throw ParameterError("interior_solve expects a Total Effort game");
  }
  const std::size_t n = game.size();
  const Graph& g = game.graph();
  const auto rules = response_rules(game);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  for (Node i = 0; i < n; ++i) {
    if (!rules[i].has_threshold()) {
      throw UndefinedCriticalPoint("interior_solve: X is undefined at node " + std::to_string(i + 1));
    }
    rhs(static_cast<Eigen::Index>(i)) = rules[i].target;
    for (Node j : g.neighbors(i)) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  }
  if (n == 0) return std::nullopt;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  if (!(lu.rcond() > 1e-12)) {
    throw SingularSystemError("interior_solve: A + I is singular");
  }
  const Eigen::VectorXd sol = lu.solve(rhs);
  std::vector<double> s(n);
  for (Node i = 0; i < n; ++i) {
    const double v = sol(static_cast<Eigen::Index>(i));
    if (v < -1e-9 || v > 1.0 + 1e-9) return std::nullopt;
    s[i] = std::clamp(v, 0.0, 1.0);
  }
  return make_report(game, StrategyProfile(std::move(s)), SolveMethod::InteriorSolve, 1);
}

struct PhiBounds {
  double bound_sum = 0.0;  // (1/n) sum_i X_i
  double bound_avg = 0.0;  // X at theta = d_avg c / L
  bool applicable = false; // 1 - X_i < 1/d_i at every node
};

// Upper bounds on the equilibrium average attack probability; requires
// homogeneous players and X_i defined everywhere.
inline PhiBounds phi_upper_bound(const GameSpec& game) {
  if (!game.is_homogeneous()) {
    throw HeterogeneityError("phi_upper_bound: the average-degree bound needs homogeneous players");
  }
  const std::size_t n = game.size();
  if (n == 0) throw ParameterError("phi_upper_bound: empty game");
  const auto rules = response_rules(game);
  PhiBounds b;
  b.applicable = true;
  for (Node i = 0; i < n; ++i) {
    if (!rules[i].has_threshold()) {
      throw UndefinedCriticalPoint("phi_upper_bound: X is undefined at node " + std::to_string(i + 1));
    }
    const double d = static_cast<double>(game.graph().extended_size(i));
    b.bound_sum += *rules[i].critical->x_upper;
    if (!(*rules[i].critical->one_minus_x < 1.0 / d)) b.applicable = false;
  }
  b.bound_sum /= static_cast<double>(n);
  const Player& p = game.player(0);
  const CriticalPoints avg = critical_points(p.weighting, game.graph().average_extended_size() * p.c / p.L);
  b.bound_avg = *avg.x_upper;
  return b;
}

enum class SecureWitness { DominantFullInvest, VAboveInverseD, WeightAboveCostRatio, None };

inline std::string_view to_string(SecureWitness w) {
  switch (w) {
    case SecureWitness::DominantFullInvest: return "dominant_full_invest";
    case SecureWitness::VAboveInverseD: return "v_at_least_inverse_d";
    case SecureWitness::WeightAboveCostRatio: return "weight_above_cost_ratio";
    case SecureWitness::None: return "none";
  }
  return "?";
}

struct SecurePneResult {
  bool exists = false;
  std::vector<SecureWitness> witness;
};

// Sufficient condition for an all-ones equilibrium: at every node either
// V_i >= 1/d_i or w_i(1/d_i) > c_i / L_i (or full investment is dominant).
inline SecurePneResult secure_pne_exists(const GameSpec& game) {
  SecurePneResult r;
  r.exists = true;
  for (Node i = 0; i < game.size(); ++i) {
    const Player& p = game.player(i);
    const std::size_t d = game.graph().extended_size(i);
    const ResponseRule rule = response_rule(p.weighting, p.c, p.L, d);
    SecureWitness w = SecureWitness::None;
    if (!rule.has_threshold()) {
      if (rule.fixed_value == 1.0) w = SecureWitness::DominantFullInvest;
    } else {
      const double inv_d = 1.0 / static_cast<double>(d);
      if (*rule.critical->v >= inv_d) {
        w = SecureWitness::VAboveInverseD;
      } else if (p.weighting.value(inv_d) > p.cost_ratio()) {
        w = SecureWitness::WeightAboveCostRatio;
      }
    }
    if (w == SecureWitness::None) r.exists = false;
    r.witness.push_back(w);
  }
  return r;
}

enum class RiskNeutralResponse { One, Zero, Any };

// Best response of a linear-weighting player: the sign of d c / L - 1 decides.
inline RiskNeutralResponse risk_neutral_best_response(double c, double L, std::size_t d) {
  if (!(c > 0.0) || !(L > 0.0)) throw ParameterError("c and L must be positive");
  const double theta = static_cast<double>(d) * c / L;
  if (theta < 1.0) return RiskNeutralResponse::One;
  if (theta > 1.0) return RiskNeutralResponse::Zero;
  return RiskNeutralResponse::Any;
}

struct NestedPair {
  Node i = 0;  // smaller neighborhood
  Node j = 0;  // N[i] strictly inside N[j]
  bool ok = false;
};

// For every ordered pair with closed neighborhoods N[i] strictly inside N[j],
// checks s_i >= s_j (up to 1e-9).
inline std::vector<NestedPair> neighborhood_monotonicity_check(const GameSpec& game,
                                                               const StrategyProfile& s) {
  if (!game.is_homogeneous()) {
    throw HeterogeneityError("neighborhood monotonicity holds for homogeneous players only");
  }
  require_size(game, s);
  const Graph& g = game.graph();
  std::vector<NestedPair> out;
  for (Node i = 0; i < g.size(); ++i) {
    const NodeSet ni = g.closed_neighborhood(i);
    // N[i] inside N[j] forces j in N[i].
    for (Node j : g.neighbors(i)) {
      const NodeSet nj = g.closed_neighborhood(j);
      if (nj.size() <= ni.size()) continue;
      if (std::includes(nj.begin(), nj.end(), ni.begin(), ni.end())) {
        out.push_back({i, j, s[i] >= s[j] - 1e-9});
      }
    }
  }
  return out;
}

}  // namespace netsec
