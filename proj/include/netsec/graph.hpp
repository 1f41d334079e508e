#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netsec/errors.hpp"

namespace netsec {

using Node = std::size_t;
using Edge = std::pair<Node, Node>;
using NodeSet = std::vector<Node>;

// Undirected simple graph on nodes 0..n-1. Text and JSON formats use 1-based ids.
class Graph {
 public:
  Graph() = default;

  // Validates: endpoints in range, no self-loops, no duplicates.
  Graph(std::size_t n, const std::vector<Edge>& edges) : adj_(n) {
    std::set<Edge> seen;
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) {
        throw GraphError("edge (" + std::to_string(u + 1) + ", " + std::to_string(v + 1) +
                         ") references a node outside 1.." + std::to_string(n));
      }
      if (u == v) throw SelfLoopError("self-loop at node " + std::to_string(u + 1));
      const Edge key{std::min(u, v), std::max(u, v)};
      if (!seen.insert(key).second) {
        throw DuplicateEdgeError("duplicate edge " + std::to_string(key.first + 1) + "-" +
                                 std::to_string(key.second + 1));
      }
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    edges_.assign(seen.begin(), seen.end());
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  }

  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Node>& neighbors(Node i) const { return adj_.at(i); }
  std::size_t degree(Node i) const { return adj_.at(i).size(); }

  // d_i = 1 + |N(i)|
  std::size_t extended_size(Node i) const { return 1 + degree(i); }

  // Closed neighborhood N(i) + {i}, sorted.
  NodeSet closed_neighborhood(Node i) const {
    NodeSet out = adj_.at(i);
    out.insert(std::lower_bound(out.begin(), out.end(), i), i);
    return out;
  }

  bool adjacent(Node i, Node j) const {
    const auto& nb = adj_.at(i);
    return std::binary_search(nb.begin(), nb.end(), j);
  }

  double average_extended_size() const {
    if (adj_.empty()) return 0.0;
    return 1.0 + 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(adj_.size());
  }

  bool is_connected() const {
    if (adj_.empty()) return true;
    std::vector<char> seen(adj_.size(), 0);
    std::vector<Node> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const Node u = stack.back();
      stack.pop_back();
      for (Node v : adj_[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == adj_.size();
  }

  bool is_regular() const {
    return std::all_of(adj_.begin(), adj_.end(),
                       [&](const auto& nb) { return nb.size() == adj_.front().size(); });
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Node>> adj_;
  std::vector<Edge> edges_;
};

// Edge-list text: one "u v" per line (1-based), '#' starts a comment, an
// optional "n <count>" line declares the node count so isolated nodes survive.
inline Graph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::size_t declared = 0;
  bool have_declared = false;
  std::size_t max_id = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "n") {
      long long count = -1;
      std::string extra;
      if (!(ls >> count) || count < 0 || (ls >> extra)) {
        throw ParseError(lineno, "expected 'n <count>'");
      }
      if (have_declared) throw ParseError(lineno, "node count declared twice");
      declared = static_cast<std::size_t>(count);
      have_declared = true;
      continue;
    }
    std::istringstream fs(first);
    long long u = 0;
    long long v = 0;
    std::string extra;
    if (!(fs >> u) || !fs.eof() || !(ls >> v) || (ls >> extra)) {
      throw ParseError(lineno, "expected two integer node ids");
    }
    if (u < 1 || v < 1) throw ParseError(lineno, "node ids are 1-based");
    if (u == v) throw SelfLoopError("line " + std::to_string(lineno) + ": self-loop at node " + std::to_string(u));
    max_id = std::max<std::size_t>(max_id, static_cast<std::size_t>(std::max(u, v)));
    edges.emplace_back(static_cast<Node>(u - 1), static_cast<Node>(v - 1));
  }
  if (have_declared && declared < max_id) {
    throw GraphError("declared n=" + std::to_string(declared) + " but node " +
                     std::to_string(max_id) + " appears");
  }
  return Graph(have_declared ? declared : max_id, edges);
}

inline Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << (u + 1) << ' ' << (v + 1) << '\n';
  return out.str();
}

// ---- generators -------------------------------------------------------------

inline Graph empty_graph(std::size_t n) { return Graph(n, {}); }

inline Graph path_graph(std::size_t n) {
  if (n < 1) throw ParameterError("path needs n >= 1");
  std::vector<Edge> e;
  for (Node i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw ParameterError("cycle needs n >= 3");
  std::vector<Edge> e;
  for (Node i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

inline Graph complete_graph(std::size_t n) {
  if (n < 1) throw ParameterError("complete graph needs n >= 1");
  std::vector<Edge> e;
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

// Node 0 is the center.
inline Graph star_graph(std::size_t n) {
  if (n < 2) throw ParameterError("star needs n >= 2");
  std::vector<Edge> e;
  for (Node i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph(n, e);
}

// Circulant k-regular graph: offsets 1..k/2, plus the antipodal offset n/2
// when k is odd (which needs n even).
inline Graph k_regular_graph(std::size_t n, std::size_t k) {
  if (k >= n) throw ParameterError("k-regular graph needs k < n");
  if ((n * k) % 2 != 0) throw ParameterError("k-regular graph needs n*k even");
  std::vector<Edge> e;
  for (std::size_t off = 1; off <= k / 2; ++off)
    for (Node i = 0; i < n; ++i) {
      // For off == n/2 with even n each chord would appear twice.
      if (2 * off == n && i >= n / 2) continue;
      e.emplace_back(i, (i + off) % n);
    }
  if (k % 2 == 1) {
    for (Node i = 0; i < n / 2; ++i) e.emplace_back(i, i + n / 2);
  }
  return Graph(n, e);
}

// ---- maximal independent sets -------------------------------------------------

inline constexpr std::size_t kExhaustiveMisLimit = 30;

inline bool is_independent(const Graph& g, const NodeSet& s) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (g.adjacent(s[a], s[b])) return false;
  return true;
}

// Every node outside s has a neighbor in s.
inline bool is_dominating(const Graph& g, const NodeSet& s) {
  std::vector<char> in(g.size(), 0);
  for (Node v : s) in[v] = 1;
  for (Node v = 0; v < g.size(); ++v) {
    if (in[v]) continue;
    const auto& nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](Node u) { return in[u]; })) return false;
  }
  return true;
}

inline bool is_maximal_independent(const Graph& g, const NodeSet& s) {
  return is_independent(g, s) && is_dominating(g, s);
}

namespace detail {

using Mask = std::uint64_t;

inline NodeSet mask_to_set(Mask m) {
  NodeSet out;
  for (Node v = 0; m != 0; ++v, m >>= 1)
    if (m & 1u) out.push_back(v);
  return out;
}

// Bron-Kerbosch with pivoting over the complement graph: maximal cliques of
// the complement are maximal independent sets of g.
struct MisEnumerator {
  std::vector<Mask> comp;  // complement adjacency
  std::size_t limit;
  std::vector<NodeSet> out;

  void run(Mask r, Mask p, Mask x) {
    if (out.size() >= limit) return;
    if (p == 0 && x == 0) {
      out.push_back(mask_to_set(r));
      return;
    }
    // Pivot: vertex of P u X with the most complement-neighbors in P.
    const Mask px = p | x;
    int best = -1;
    int best_count = -1;
    for (Mask m = px; m != 0; m &= m - 1) {
      const int u = __builtin_ctzll(m);
      const int cnt = __builtin_popcountll(p & comp[u]);
      if (cnt > best_count) {
        best_count = cnt;
        best = u;
      }
    }
    Mask cand = p & ~comp[best];
    for (Mask m = cand; m != 0; m &= m - 1) {
      const int v = __builtin_ctzll(m);
      const Mask bit = Mask{1} << v;
      run(r | bit, p & comp[v], x & comp[v]);
      p &= ~bit;
      x |= bit;
      if (out.size() >= limit) return;
    }
  }
};

}  // namespace detail

enum class MisMode { Exhaustive, Sampled };

// Maximal independent sets, each sorted ascending; the list is sorted
// lexicographically. Exhaustive mode is exact up to kExhaustiveMisLimit nodes;
// sampled mode runs randomized greedy constructions and returns distinct sets.
inline std::vector<NodeSet> maximal_independent_sets(const Graph& g, std::size_t limit,
                                                     MisMode mode = MisMode::Exhaustive,
                                                     std::uint64_t seed = 1) {
  const std::size_t n = g.size();
  std::vector<NodeSet> result;
  if (n == 0 || limit == 0) return result;
  if (mode == MisMode::Exhaustive) {
    if (n > kExhaustiveMisLimit) {
      throw SizeError("exhaustive MIS enumeration supports n <= " +
                      std::to_string(kExhaustiveMisLimit) + ", got " + std::to_string(n));
    }
    detail::MisEnumerator en{std::vector<detail::Mask>(n), limit, {}};
    const detail::Mask all = (n == 64) ? ~detail::Mask{0} : ((detail::Mask{1} << n) - 1);
    for (Node v = 0; v < n; ++v) {
      detail::Mask nb = 0;
      for (Node u : g.neighbors(v)) nb |= detail::Mask{1} << u;
      en.comp[v] = all & ~nb & ~(detail::Mask{1} << v);
    }
    en.run(0, all, 0);
    result = std::move(en.out);
  } else {
    std::mt19937_64 rng(seed);
    std::set<NodeSet> found;
    std::vector<Node> order(n);
    std::iota(order.begin(), order.end(), Node{0});
    const std::size_t attempts = 20 * limit + 100;
    for (std::size_t a = 0; a < attempts && found.size() < limit; ++a) {
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<char> blocked(n, 0);
      NodeSet s;
      for (Node v : order) {
        if (blocked[v]) continue;
        s.push_back(v);
        blocked[v] = 1;
        for (Node u : g.neighbors(v)) blocked[u] = 1;
      }
      std::sort(s.begin(), s.end());
      found.insert(std::move(s));
    }
    result.assign(found.begin(), found.end());
  }
  std::sort(result.begin(), result.end());
  return result;
}

// ---- tree enumeration -----------------------------------------------------------

inline constexpr std::size_t kMaxTreeEnumeration = 8;

// Decodes a Pruefer sequence (entries in 0..n-1, length n-2) into a labeled tree.
inline Graph tree_from_pruefer(std::size_t n, const std::vector<Node>& seq) {
  if (n < 2 || seq.size() != n - 2) throw ParameterError("Pruefer sequence must have length n-2");
  std::vector<std::size_t> deg(n, 1);
  for (Node v : seq) {
    if (v >= n) throw ParameterError("Pruefer entry out of range");
    ++deg[v];
  }
  std::vector<Edge> edges;
  for (Node v : seq) {
    Node leaf = 0;
    while (deg[leaf] != 1) ++leaf;
    edges.emplace_back(leaf, v);
    --deg[leaf];
    --deg[v];
  }
  Node a = n;
  for (Node u = 0; u < n; ++u) {
    if (deg[u] == 1) {
      if (a == n) {
        a = u;
      } else {
        edges.emplace_back(a, u);
        break;
      }
    }
  }
  return Graph(n, edges);
}

// All n^(n-2) labeled trees on n nodes.
inline std::vector<Graph> enumerate_trees(std::size_t n) {
  if (n > kMaxTreeEnumeration) {
    throw SizeError("tree enumeration supports n <= " + std::to_string(kMaxTreeEnumeration));
  }
  if (n == 0) return {};
  if (n == 1) return {Graph(1, {})};
  if (n == 2) return {Graph(2, {{0, 1}})};
  std::vector<Graph> out;
  std::vector<Node> seq(n - 2, 0);
  while (true) {
    out.push_back(tree_from_pruefer(n, seq));
    std::size_t k = 0;
    while (k < seq.size() && ++seq[k] == n) seq[k++] = 0;
    if (k == seq.size()) break;
  }
  return out;
}

}  // namespace netsec
