#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "netsec/graph.hpp"

using netsec::Graph;
using netsec::NodeSet;

namespace {

// Subset enumeration; independent sets that no vertex can extend.
std::vector<NodeSet> brute_force_mis(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<NodeSet> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    NodeSet s;
    for (std::size_t v = 0; v < n; ++v)
      if (m >> v & 1u) s.push_back(v);
    if (netsec::is_maximal_independent(g, s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<netsec::Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return Graph(n, e);
}

}  // namespace

TEST(Graph, TenNodeExtendedSizes) {
  const Graph g = fixtures::ten_node_graph();
  EXPECT_EQ(g.size(), 10u);
  EXPECT_EQ(g.edge_count(), 12u);
  const std::vector<std::size_t> expected{2, 2, 2, 5, 5, 5, 5, 4, 2, 2};
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(g.extended_size(i), expected[i]) << i;
  EXPECT_TRUE(g.is_connected());
  EXPECT_FALSE(g.is_regular());
  EXPECT_DOUBLE_EQ(g.average_extended_size(), 3.4);
}

TEST(Graph, ConstructionErrors) {
  EXPECT_THROW(Graph(3, {{0, 0}}), netsec::SelfLoopError);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), netsec::DuplicateEdgeError);
  EXPECT_THROW(Graph(3, {{0, 3}}), netsec::GraphError);
}

TEST(EdgeList, ParsesTenNode) {
  const char* text =
      "# ten-node network\n"
      "1 4\n2 5\n3 6\n4 5\n4 6\n5 6\n"
      "4 7   # hub\n5 7\n6 7\n7 8\n8 9\n8 10\n";
  EXPECT_EQ(netsec::parse_edge_list(text), fixtures::ten_node_graph());
}

TEST(EdgeList, RoundTrip) {
  const Graph g = fixtures::ten_node_graph();
  EXPECT_EQ(netsec::parse_edge_list(netsec::to_edge_list(g)), g);
  const Graph iso = Graph(5, {{0, 1}});
  const Graph back = netsec::parse_edge_list(netsec::to_edge_list(iso));
  EXPECT_EQ(back.size(), 5u);
  EXPECT_EQ(back, iso);
}

TEST(EdgeList, Errors) {
  try {
    netsec::parse_edge_list("1 2\n2 x\n");
    FAIL() << "expected ParseError";
  } catch (const netsec::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(netsec::parse_edge_list("1 2 3\n"), netsec::ParseError);
  EXPECT_THROW(netsec::parse_edge_list("0 1\n"), netsec::ParseError);
  EXPECT_THROW(netsec::parse_edge_list("3 3\n"), netsec::SelfLoopError);
  EXPECT_THROW(netsec::parse_edge_list("1 2\n2 1\n"), netsec::DuplicateEdgeError);
  EXPECT_THROW(netsec::parse_edge_list("n 2\n1 3\n"), netsec::GraphError);
}

TEST(Generators, Shapes) {
  const Graph c = netsec::cycle_graph(6);
  EXPECT_TRUE(c.is_regular());
  EXPECT_EQ(c.extended_size(0), 3u);
  const Graph k = netsec::complete_graph(5);
  EXPECT_EQ(k.edge_count(), 10u);
  const Graph s = netsec::star_graph(5);
  EXPECT_EQ(s.extended_size(0), 5u);
  EXPECT_EQ(s.extended_size(3), 2u);
  const Graph p = netsec::path_graph(4);
  EXPECT_EQ(p.edge_count(), 3u);
  EXPECT_TRUE(p.is_connected());
  EXPECT_FALSE(netsec::empty_graph(3).is_connected());
  for (auto [n, kk] : {std::pair<std::size_t, std::size_t>{8, 4}, {8, 3}, {10, 5}, {6, 2}, {9, 4}}) {
    const Graph r = netsec::k_regular_graph(n, kk);
    EXPECT_TRUE(r.is_regular()) << n << "," << kk;
    EXPECT_EQ(r.degree(0), kk);
    EXPECT_EQ(r.edge_count(), n * kk / 2);
  }
  EXPECT_THROW(netsec::k_regular_graph(5, 3), netsec::ParameterError);
  EXPECT_THROW(netsec::cycle_graph(2), netsec::ParameterError);
}

TEST(Mis, TenNodeContainsKnownSets) {
  const auto sets = netsec::maximal_independent_sets(fixtures::ten_node_graph(), 1000);
  EXPECT_EQ(sets, brute_force_mis(fixtures::ten_node_graph()));
  const NodeSet a{0, 1, 2, 6, 8, 9};
  const NodeSet b{1, 2, 3, 7};
  EXPECT_NE(std::find(sets.begin(), sets.end(), a), sets.end());
  EXPECT_NE(std::find(sets.begin(), sets.end(), b), sets.end());
  EXPECT_EQ(sets.size(), 8u);
}

TEST(Mis, SmallGraphs) {
  EXPECT_EQ(netsec::maximal_independent_sets(netsec::complete_graph(4), 100).size(), 4u);
  const auto star = netsec::maximal_independent_sets(netsec::star_graph(5), 100);
  ASSERT_EQ(star.size(), 2u);
  EXPECT_EQ(star[0], (NodeSet{0}));
  EXPECT_EQ(star[1], (NodeSet{1, 2, 3, 4}));
  const auto empty = netsec::maximal_independent_sets(netsec::empty_graph(3), 100);
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_EQ(empty[0], (NodeSet{0, 1, 2}));
  // C5 has exactly five maximal independent sets.
  EXPECT_EQ(netsec::maximal_independent_sets(netsec::cycle_graph(5), 100).size(), 5u);
}

TEST(Mis, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 11;
    const Graph g = random_graph(n, 0.15 + 0.6 * (t % 5) / 4.0, rng);
    const auto sets = netsec::maximal_independent_sets(g, 100000);
    EXPECT_EQ(sets, brute_force_mis(g));
    for (const auto& s : sets) {
      EXPECT_TRUE(netsec::is_independent(g, s));
      EXPECT_TRUE(netsec::is_dominating(g, s));
    }
  }
}

TEST(Mis, LimitAndSizeGuards) {
  EXPECT_EQ(netsec::maximal_independent_sets(fixtures::ten_node_graph(), 3).size(), 3u);
  EXPECT_THROW(netsec::maximal_independent_sets(netsec::path_graph(31), 10), netsec::SizeError);
  const auto sampled =
      netsec::maximal_independent_sets(netsec::path_graph(40), 20, netsec::MisMode::Sampled, 3);
  EXPECT_FALSE(sampled.empty());
  EXPECT_LE(sampled.size(), 20u);
  for (const auto& s : sampled) EXPECT_TRUE(netsec::is_maximal_independent(netsec::path_graph(40), s));
}

TEST(Trees, CayleyCountsAndDistinct) {
  for (std::size_t n : {2u, 3u, 4u, 5u, 6u}) {
    const auto trees = netsec::enumerate_trees(n);
    std::size_t expected = 1;
    for (std::size_t k = 0; k + 2 < n; ++k) expected *= n;
    EXPECT_EQ(trees.size(), expected) << n;
    std::set<std::vector<netsec::Edge>> distinct;
    for (const auto& t : trees) {
      EXPECT_EQ(t.edge_count(), n - 1);
      EXPECT_TRUE(t.is_connected());
      distinct.insert(t.edges());
    }
    EXPECT_EQ(distinct.size(), expected);
  }
  EXPECT_THROW(netsec::enumerate_trees(9), netsec::SizeError);
}

TEST(Trees, PrueferDecoding) {
  // Sequence (3, 3, 3) on 5 nodes: star centered at 3.
  const Graph t = netsec::tree_from_pruefer(5, {3, 3, 3});
  EXPECT_EQ(t.degree(3), 4u);
  EXPECT_THROW(netsec::tree_from_pruefer(5, {1, 2}), netsec::ParameterError);
}
