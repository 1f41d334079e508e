#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "netsec/errors.hpp"
#include "netsec/game.hpp"
#include "netsec/graph.hpp"
#include "netsec/solve.hpp"
#include "netsec/total_effort.hpp"
#include "netsec/wl_bs.hpp"

namespace netsec::io {

using nlohmann::json;

// ---- game configuration -----------------------------------------------------------

namespace detail {

inline void only_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(std::string(where) + ": unknown key \"" + key + "\"");
  }
}

inline double number(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) throw ConfigError(std::string(where) + ": missing \"" + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(std::string(where) + ": \"" + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(std::string(where) + ": \"" + key + "\" must be finite");
  return x;
}

inline std::size_t count(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) throw ConfigError(std::string(where) + ": missing \"" + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(std::string(where) + ": \"" + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace detail

inline Graph graph_from_json(const json& g) {
  detail::only_keys(g, "graph", {"edge_list", "n", "generate"});
  if (g.contains("generate")) {
    if (g.contains("edge_list") || g.contains("n")) {
      throw ConfigError("graph: use either \"generate\" or \"edge_list\", not both");
    }
    const json& gen = g.at("generate");
    detail::only_keys(gen, "graph.generate", {"kind", "params"});
    if (!gen.contains("kind") || !gen.at("kind").is_string()) {
      throw ConfigError("graph.generate: \"kind\" must be a string");
    }
    const std::string kind = gen.at("kind").get<std::string>();
    const json params = gen.value("params", json::object());
    try {
      if (kind == "k_regular") {
        detail::only_keys(params, "graph.generate.params", {"n", "k"});
        return k_regular_graph(detail::count(params, "n", "params"), detail::count(params, "k", "params"));
      }
      detail::only_keys(params, "graph.generate.params", {"n"});
      const std::size_t n = detail::count(params, "n", "params");
      if (kind == "cycle") return cycle_graph(n);
      if (kind == "complete") return complete_graph(n);
      if (kind == "star") return star_graph(n);
      if (kind == "path") return path_graph(n);
      if (kind == "empty") return empty_graph(n);
    } catch (const ParameterError& e) {
      throw ConfigError(std::string("graph.generate: ") + e.what());
    }
    throw ConfigError("graph.generate: unknown kind \"" + kind + "\"");
  }
  if (!g.contains("edge_list") || !g.at("edge_list").is_array()) {
    throw ConfigError("graph: \"edge_list\" array or \"generate\" object required");
  }
  std::vector<Edge> edges;
  std::size_t max_id = 0;
  for (const json& e : g.at("edge_list")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw ConfigError("graph.edge_list: each edge must be a pair of integers");
    }
    const long long u = e[0].get<long long>();
    const long long v = e[1].get<long long>();
    if (u < 1 || v < 1) throw ConfigError("graph.edge_list: node ids are 1-based");
    max_id = std::max<std::size_t>(max_id, static_cast<std::size_t>(std::max(u, v)));
    edges.emplace_back(static_cast<Node>(u - 1), static_cast<Node>(v - 1));
  }
  std::size_t n = max_id;
  if (g.contains("n")) {
    n = detail::count(g, "n", "graph");
    if (n < max_id) throw ConfigError("graph: n is smaller than the largest node id");
  }
  try {
    return Graph(n, edges);
  } catch (const GraphError& e) {
    throw ConfigError(std::string("graph: ") + e.what());
  }
}

inline Player player_from_json(const json& p, std::string_view where) {
  detail::only_keys(p, where, {"alpha", "c", "L", "weighting"});
  Player out;
  const std::string kind = p.value("weighting", std::string("prelec"));
  out.c = detail::number(p, "c", where);
  out.L = p.contains("L") ? detail::number(p, "L", where) : 1.0;
  if (kind == "identity") {
    if (p.contains("alpha")) throw ConfigError(std::string(where) + ": identity weighting takes no alpha");
    out.weighting = Weighting::identity();
  } else if (kind == "prelec") {
    try {
      out.weighting = Weighting::prelec(detail::number(p, "alpha", where));
    } catch (const ParameterError& e) {
      throw ConfigError(std::string(where) + ": " + e.what());
    }
  } else {
    throw ConfigError(std::string(where) + ": unknown weighting \"" + kind + "\"");
  }
  if (!(out.c > 0.0) || !(out.L > 0.0)) throw ConfigError(std::string(where) + ": c and L must be positive");
  return out;
}

inline Externality externality_from_string(std::string_view s) {
  if (s == "total_effort") return Externality::TotalEffort;
  if (s == "weakest_link") return Externality::WeakestLink;
  if (s == "best_shot") return Externality::BestShot;
  throw ConfigError("unknown externality \"" + std::string(s) + "\"");
}

inline GameSpec game_from_json(const json& doc) {
  detail::only_keys(doc, "config", {"graph", "players", "externality"});
  if (!doc.contains("graph")) throw ConfigError("config: missing \"graph\"");
  if (!doc.contains("players")) throw ConfigError("config: missing \"players\"");
  Graph g = graph_from_json(doc.at("graph"));
  Externality ext = Externality::TotalEffort;
  if (doc.contains("externality")) {
    if (!doc.at("externality").is_string()) throw ConfigError("config: \"externality\" must be a string");
    ext = externality_from_string(doc.at("externality").get<std::string>());
  }
  const json& pl = doc.at("players");
  detail::only_keys(pl, "players", {"homogeneous", "per_node"});
  if (pl.contains("homogeneous") == pl.contains("per_node")) {
    throw ConfigError("players: exactly one of \"homogeneous\" or \"per_node\" is required");
  }
  std::vector<Player> players;
  if (pl.contains("homogeneous")) {
    players.assign(g.size(), player_from_json(pl.at("homogeneous"), "players.homogeneous"));
  } else {
    const json& arr = pl.at("per_node");
    if (!arr.is_array()) throw ConfigError("players.per_node must be an array");
    if (arr.size() != g.size()) {
      throw ConfigError("players.per_node has " + std::to_string(arr.size()) + " entries for " +
                        std::to_string(g.size()) + " nodes");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      players.push_back(player_from_json(arr[i], "players.per_node[" + std::to_string(i) + "]"));
    }
  }
  return GameSpec(std::move(g), std::move(players), ext);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline GameSpec load_game(const std::string& path) { return game_from_json(read_json_file(path)); }

// ---- reports ------------------------------------------------------------------------

inline json assumptions_to_json(const GameAssumptionReport& a) {
  json nodes = json::array();
  for (const auto& na : a.nodes) {
    nodes.push_back({{"id", na.node + 1},
                     {"applicable", na.report.applicable},
                     {"holds", na.report.holds},
                     {"gap_xv", na.report.gap_xv},
                     {"v_small", na.report.v_small},
                     {"w_at_inv_d", na.report.w_at_inv_d},
                     {"cond3", na.report.cond3}});
  }
  return {{"all_hold", a.all_hold}, {"nodes", nodes}};
}

inline json total_effort_report(const GameSpec& game, const EquilibriumReport& rep,
                                const GameAssumptionReport& assumptions, const std::vector<std::string>& warnings) {
  json nodes = json::array();
  for (Node i = 0; i < game.size(); ++i) {
    nodes.push_back({{"id", i + 1},
                     {"investment", rep.profile[i]},
                     {"attack_probability", rep.attack_probs[i]},
                     {"case", std::string(to_string(rep.per_node_case[i]))}});
  }
  return {{"externality", std::string(to_string(game.externality()))},
          {"method", std::string(to_string(rep.method))},
          {"is_pne", rep.is_pne},
          {"converged", rep.converged},
          {"max_violation", rep.max_violation},
          {"iterations", rep.iterations},
          {"phi", rep.phi},
          {"nodes", nodes},
          {"assumptions", assumptions_to_json(assumptions)},
          {"warnings", warnings}};
}

inline json weakest_link_report(const GameSpec& game, const WlEquilibriumSet& set,
                                const std::vector<std::string>& warnings) {
  json intervals = json::array();
  for (const auto& iv : set.common_investment_ranges) {
    intervals.push_back({{"lower", iv.lower}, {"upper", iv.upper},
                         {"lower_open", iv.lower_open}, {"upper_open", iv.upper_open}});
  }
  json out = {{"externality", std::string(to_string(game.externality()))},
              {"method", "analytic"},
              {"is_pne", set.verified},
              {"intervals", intervals},
              {"endpoint_indeterminate", set.endpoint_indeterminate},
              {"notes", set.notes},
              {"warnings", warnings}};
  out["critical_epsilon"] = set.critical_epsilon ? json(*set.critical_epsilon) : json(nullptr);
  return out;
}

struct BestShotEntry {
  StrategyProfile profile;
  WlBsVerification check;
};

inline json best_shot_report(const GameSpec& game, const SinglePlayerOptimum& opt,
                             const std::vector<BestShotEntry>& eqs, const std::vector<std::string>& warnings) {
  json arr = json::array();
  bool all = !eqs.empty();
  for (const auto& e : eqs) {
    json support = json::array();
    for (Node i = 0; i < game.size(); ++i)
      if (e.profile[i] > 0.0) support.push_back(i + 1);
    arr.push_back({{"support", support},
                   {"investments", e.profile.values()},
                   {"is_pne", e.check.is_pne},
                   {"max_violation", e.check.max_violation}});
    all = all && e.check.is_pne;
  }
  json single = {{"s_star", opt.s_star}, {"regime", std::string(to_string(opt.regime))}, {"tie", opt.tie}};
  single["w_prime_z"] = opt.w_prime_z ? json(*opt.w_prime_z) : json(nullptr);
  return {{"externality", std::string(to_string(game.externality()))},
          {"method", "analytic"},
          {"is_pne", all},
          {"single_player_optimum", single},
          {"equilibria", arr},
          {"warnings", warnings}};
}

// ---- CSV ----------------------------------------------------------------------------

// 10 significant digits.
inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out += ',';
    out += cells[k];
  }
  out += '\n';
  return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace netsec::io
