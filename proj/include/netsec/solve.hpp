#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "netsec/critical.hpp"
#include "netsec/errors.hpp"
#include "netsec/game.hpp"
#include "netsec/lcp.hpp"
#include "netsec/total_effort.hpp"

namespace netsec {

enum class MethodChoice { Auto, BRD, LCP, Interior };

inline std::optional<MethodChoice> parse_method(std::string_view s) {
  if (s == "auto") return MethodChoice::Auto;
  if (s == "brd") return MethodChoice::BRD;
  if (s == "lcp") return MethodChoice::LCP;
  if (s == "interior") return MethodChoice::Interior;
  return std::nullopt;
}

struct SolveOptions {
  MethodChoice method = MethodChoice::Auto;
  BrdOptions brd;
  std::size_t max_pivots = 0;  // 0: default for the instance size
};

// Total Effort equilibrium by the requested method. Auto runs best-response
// dynamics and falls back to Lemke when the sweeps do not settle. Interior
// returns nullopt when the linear system's solution leaves [0, 1]^n.
inline std::optional<EquilibriumReport> solve_total_effort(const GameSpec& game, const SolveOptions& opt = {}) {
  switch (opt.method) {
    case MethodChoice::BRD:
      return brd_solve(game, opt.brd);
    case MethodChoice::LCP:
      return lcp_solve(game, opt.max_pivots);
    case MethodChoice::Interior:
      return interior_solve(game);
    case MethodChoice::Auto: {
      EquilibriumReport rep = brd_solve(game, opt.brd);
      if (rep.converged) return rep;
      return lcp_solve(game, opt.max_pivots);
    }
  }
  return std::nullopt;
}

struct NodeAssumption {
  Node node = 0;
  AssumptionLargeNReport report;
};

struct GameAssumptionReport {
  bool all_hold = true;
  std::vector<NodeAssumption> nodes;  // curved-weighting players only
};

// Per-node standing conditions on (d_i, c_i, L_i); linear players are skipped.
inline GameAssumptionReport check_game_assumptions(const GameSpec& game) {
  GameAssumptionReport r;
  for (Node i = 0; i < game.size(); ++i) {
    const Player& p = game.player(i);
    if (p.weighting.is_linear()) continue;
    NodeAssumption na{i, check_assumption_large_n(p.weighting, p.c, p.L, game.graph().extended_size(i))};
    if (!na.report.holds) r.all_hold = false;
    r.nodes.push_back(na);
  }
  return r;
}

}  // namespace netsec
