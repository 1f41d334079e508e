#pragma once

#include <vector>

#include "netsec/netsec.hpp"

namespace fixtures {

// Ten-node reference network, 0-based ids.
inline netsec::Graph ten_node_graph() {
  return netsec::Graph(10, {{0, 3}, {1, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5},
                            {3, 6}, {4, 6}, {5, 6}, {6, 7}, {7, 8}, {7, 9}});
}

inline netsec::Player prelec_player(double alpha, double c, double L = 1.0) {
  return netsec::Player{c, L, netsec::Weighting::prelec(alpha)};
}

inline netsec::GameSpec ten_node_game(netsec::Externality e = netsec::Externality::TotalEffort) {
  return netsec::GameSpec::homogeneous(ten_node_graph(), prelec_player(0.6, 0.45), e);
}

inline constexpr double kLeaf = 0.4095122143;  // 2(1 - X(2))
inline constexpr double kHub = 0.1441663733;   // 5(1 - X(5))

}  // namespace fixtures

#include <random>

namespace fixtures {

// Random labeled tree plus each remaining pair with probability p.
inline netsec::Graph random_connected(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<netsec::Edge> e;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, v - 1);
    e.emplace_back(pick(rng), v);
  }
  std::bernoulli_distribution coin(p);
  std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
  for (auto [a, b] : e) has[a][b] = has[b][a] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!has[i][j] && coin(rng)) e.emplace_back(i, j);
  return netsec::Graph(n, e);
}

}  // namespace fixtures
