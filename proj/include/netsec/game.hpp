#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "netsec/errors.hpp"
#include "netsec/graph.hpp"
#include "netsec/weighting.hpp"

namespace netsec {

enum class Externality { TotalEffort, WeakestLink, BestShot };

inline std::string_view to_string(Externality e) {
  switch (e) {
    case Externality::TotalEffort: return "total_effort";
    case Externality::WeakestLink: return "weakest_link";
    case Externality::BestShot: return "best_shot";
  }
  return "?";
}

struct Player {
  double c = 0.0;  // cost per unit of investment
  double L = 1.0;  // loss when successfully attacked
  Weighting weighting = Weighting::identity();

  double cost_ratio() const { return c / L; }
  friend bool operator==(const Player&, const Player&) = default;
};

class GameSpec {
 public:
  GameSpec(Graph graph, std::vector<Player> players, Externality externality)
      : graph_(std::move(graph)), players_(std::move(players)), externality_(externality) {
    if (players_.size() != graph_.size()) {
      throw ParameterError("player count " + std::to_string(players_.size()) +
                           " does not match node count " + std::to_string(graph_.size()));
    }
    for (std::size_t i = 0; i < players_.size(); ++i) {
      const auto& p = players_[i];
      if (!(std::isfinite(p.c) && p.c > 0.0 && std::isfinite(p.L) && p.L > 0.0)) {
        throw ParameterError("player " + std::to_string(i + 1) + ": c and L must be finite and positive");
      }
    }
  }

  static GameSpec homogeneous(Graph graph, const Player& p, Externality externality) {
    std::vector<Player> players(graph.size(), p);
    return GameSpec(std::move(graph), std::move(players), externality);
  }

  const Graph& graph() const noexcept { return graph_; }
  const std::vector<Player>& players() const noexcept { return players_; }
  const Player& player(std::size_t i) const { return players_.at(i); }
  Externality externality() const noexcept { return externality_; }
  std::size_t size() const noexcept { return players_.size(); }

  bool is_homogeneous() const {
    return std::all_of(players_.begin(), players_.end(),
                       [&](const Player& p) { return p == players_.front(); });
  }

  GameSpec with_externality(Externality e) const { return GameSpec(graph_, players_, e); }

 private:
  Graph graph_;
  std::vector<Player> players_;
  Externality externality_;
};

// Investment vector s in [0, 1]^n.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(std::size_t n, double value = 0.0) : s_(n, value) { check(); }
  explicit StrategyProfile(std::vector<double> s) : s_(std::move(s)) { check(); }

  std::size_t size() const noexcept { return s_.size(); }
  double operator[](std::size_t i) const { return s_[i]; }
  double at(std::size_t i) const { return s_.at(i); }
  const std::vector<double>& values() const noexcept { return s_; }

  void set(std::size_t i, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError("investment must lie in [0, 1], got " + std::to_string(v));
    }
    s_.at(i) = v;
  }

 private:
  void check() const {
    for (double v : s_) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError("investment must lie in [0, 1], got " + std::to_string(v));
      }
    }
  }
  std::vector<double> s_;
};

inline void require_size(const GameSpec& game, const StrategyProfile& s) {
  if (s.size() != game.size()) {
    throw ParameterError("profile has " + std::to_string(s.size()) + " entries, game has " +
                         std::to_string(game.size()) + " players");
  }
}

// Sum of neighbors' investments (excluding i itself).
inline double neighbor_sum(const Graph& g, Node i, const StrategyProfile& s) {
  double sum = 0.0;
  for (Node j : g.neighbors(i)) sum += s[j];
  return sum;
}

// True probability of a successful attack at node i when i invests `own` and
// everyone else follows s.
inline double attack_probability_with(const GameSpec& game, Node i, const StrategyProfile& s,
                                      double own) {
  const Graph& g = game.graph();
  switch (game.externality()) {
    case Externality::TotalEffort: {
      const double d = static_cast<double>(g.extended_size(i));
      return std::clamp(1.0 - (own + neighbor_sum(g, i, s)) / d, 0.0, 1.0);
    }
    case Externality::WeakestLink: {
      double m = own;
      for (Node j : g.neighbors(i)) m = std::min(m, s[j]);
      return 1.0 - m;
    }
    case Externality::BestShot: {
      double m = own;
      for (Node j : g.neighbors(i)) m = std::max(m, s[j]);
      return 1.0 - m;
    }
  }
  return 1.0;
}

inline double attack_probability(const GameSpec& game, Node i, const StrategyProfile& s) {
  return attack_probability_with(game, i, s, s[i]);
}

inline std::vector<double> attack_probabilities(const GameSpec& game, const StrategyProfile& s) {
  require_size(game, s);
  std::vector<double> out(game.size());
  for (Node i = 0; i < game.size(); ++i) out[i] = attack_probability(game, i, s);
  return out;
}

// -L w(f_i) - c s_i with i deviating to `own`.
inline double utility_with(const GameSpec& game, Node i, const StrategyProfile& s, double own) {
  const Player& p = game.player(i);
  return -p.L * p.weighting.value(attack_probability_with(game, i, s, own)) - p.c * own;
}

inline double expected_utility(const GameSpec& game, Node i, const StrategyProfile& s) {
  require_size(game, s);
  if (i >= game.size()) throw ParameterError("node index out of range");
  return utility_with(game, i, s, s[i]);
}

// Per-player outcome of a unilateral-deviation search.
struct DeviationCheck {
  double max_gain = 0.0;
  double best_investment = 0.0;
};

inline constexpr std::size_t kDeviationGrid = 1001;

// Brute-force oracle: utility gain of the best deviation among a uniform grid
// of [0, 1] and the supplied analytic candidates.
inline DeviationCheck best_deviation(const GameSpec& game, Node i, const StrategyProfile& s,
                                     const std::vector<double>& candidates) {
  const double u0 = utility_with(game, i, s, s[i]);
  DeviationCheck out{0.0, s[i]};
  auto consider = [&](double x) {
    if (!(x >= 0.0 && x <= 1.0)) return;
    const double gain = utility_with(game, i, s, x) - u0;
    if (gain > out.max_gain) {
      out.max_gain = gain;
      out.best_investment = x;
    }
  };
  for (std::size_t k = 0; k < kDeviationGrid; ++k) {
    consider(static_cast<double>(k) / static_cast<double>(kDeviationGrid - 1));
  }
  for (double x : candidates) consider(x);
  return out;
}

}  // namespace netsec
