#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using netsec::Externality;
using netsec::GameSpec;
using netsec::StrategyProfile;
using netsec::Weighting;

namespace {

void expect_ten_node_profile(const StrategyProfile& s, double tol) {
  for (std::size_t i : {0u, 1u, 2u, 8u, 9u}) EXPECT_NEAR(s[i], fixtures::kLeaf, tol) << i;
  EXPECT_NEAR(s[6], fixtures::kHub, tol);
  for (std::size_t i : {3u, 4u, 5u, 7u}) EXPECT_NEAR(s[i], 0.0, tol) << i;
}

}  // namespace

TEST(BestResponse, ReferenceValues) {
  const auto w = Weighting::prelec(0.6);
  EXPECT_NEAR(netsec::best_response(w, 0.45, 1.0, 2, 0.0), fixtures::kLeaf, 1e-9);
  EXPECT_EQ(netsec::best_response(w, 0.45, 1.0, 5, 0.5537), 0.0);
  EXPECT_NEAR(netsec::best_response(w, 0.45, 1.0, 5, 0.0), fixtures::kHub, 1e-9);
  // theta <= alpha: full investment is dominant.
  EXPECT_EQ(netsec::best_response(w, 0.2, 1.0, 2, 0.7), 1.0);
  EXPECT_THROW(netsec::best_response(w, 0.45, 1.0, 2, 1.5), netsec::DomainError);
  EXPECT_THROW(netsec::best_response(w, 0.45, 1.0, 2, -0.1), netsec::DomainError);
}

TEST(BestResponse, PiecewiseShape) {
  EXPECT_EQ(netsec::best_response_for_target(2.5, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(netsec::best_response_for_target(2.5, 2.0), 0.5);
  EXPECT_EQ(netsec::best_response_for_target(2.5, 3.0), 0.0);
}

// The piecewise rule agrees with a grid search whenever the standing
// assumptions hold for the node.
TEST(BestResponse, AgreesWithGridUnderAssumptions) {
  const auto w = Weighting::prelec(0.6);
  const double c = 0.45;
  for (std::size_t d : {2u, 3u, 5u}) {
    ASSERT_TRUE(netsec::check_assumption_large_n(w, c, 1.0, d).holds) << d;
    const GameSpec game = GameSpec::homogeneous(netsec::star_graph(d), fixtures::prelec_player(0.6, c),
                                                Externality::TotalEffort);
    for (int k = 0; k <= 20; ++k) {
      std::vector<double> s(d, 0.0);
      const double total = (d - 1.0) * k / 20.0;
      for (std::size_t j = 1; j < d; ++j) s[j] = total / (d - 1.0);
      const StrategyProfile prof(s);
      const double br = netsec::best_response(w, c, 1.0, d, total);
      const auto dev = netsec::best_deviation(game, 0, prof, {br});
      EXPECT_LT(netsec::utility_with(game, 0, prof, dev.best_investment) - netsec::utility_with(game, 0, prof, br),
                1e-9)
          << "d=" << d << " total=" << total;
    }
  }
}

TEST(Utility, TenNodeLeaf) {
  const GameSpec game = fixtures::ten_node_game();
  std::vector<double> s(10, 0.0);
  s[0] = 0.4095;
  const StrategyProfile prof(s);
  // -w(0.79525) - 0.45 * 0.4095 with w(0.79525) = 0.661622276446243.
  EXPECT_NEAR(netsec::expected_utility(game, 0, prof), -0.845897276446243, 1e-12);
  EXPECT_NEAR(netsec::attack_probability(game, 0, prof), 1.0 - 0.4095 / 2.0, 1e-12);
}

TEST(Brd, TenNodeGame) {
  const GameSpec game = fixtures::ten_node_game();
  const auto rep = netsec::brd_solve(game);
  EXPECT_TRUE(rep.converged);
  EXPECT_TRUE(rep.is_pne);
  EXPECT_LT(rep.max_violation, 1e-6);
  expect_ten_node_profile(rep.profile, 1e-9);
  const auto v = netsec::verify_pne(game, rep.profile);
  EXPECT_TRUE(v.characterization_holds);
  EXPECT_EQ(v.cases[0], netsec::NodeCase::Interior);
  EXPECT_EQ(v.cases[3], netsec::NodeCase::Zero);
  EXPECT_EQ(v.cases[6], netsec::NodeCase::Interior);
}

TEST(Brd, RandomOrderIsDeterministicPerSeed) {
  const GameSpec game = fixtures::ten_node_game();
  netsec::BrdOptions opt;
  opt.order = netsec::BrdOptions::Order::Random;
  opt.seed = 42;
  const auto a = netsec::brd_solve(game, opt);
  const auto b = netsec::brd_solve(game, opt);
  EXPECT_EQ(a.profile.values(), b.profile.values());
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_TRUE(a.is_pne);
}

TEST(Brd, SweepLimitReportsNonConvergence) {
  const GameSpec game = fixtures::ten_node_game();
  netsec::BrdOptions opt;
  opt.max_sweeps = 1;
  const auto rep = netsec::brd_solve(game, opt);
  EXPECT_FALSE(rep.converged);
  EXPECT_FALSE(rep.is_pne);
  EXPECT_EQ(rep.iterations, 1u);
  netsec::SolveOptions so;
  so.brd = opt;
  const auto fallback = netsec::solve_total_effort(game, so);
  ASSERT_TRUE(fallback.has_value());
  EXPECT_EQ(fallback->method, netsec::SolveMethod::LCP);
  EXPECT_TRUE(fallback->is_pne);
}

TEST(VerifyPne, RejectsPerturbedProfile) {
  const GameSpec game = fixtures::ten_node_game();
  auto s = netsec::brd_solve(game).profile.values();
  s[0] += 0.05;
  const auto v = netsec::verify_pne(game, StrategyProfile(s));
  EXPECT_FALSE(v.is_pne);
  EXPECT_FALSE(v.characterization_holds);
  EXPECT_EQ(v.cases[0], netsec::NodeCase::Violated);
}

TEST(Interior, CycleHasSymmetricSolution) {
  for (double a : {0.4, 0.8}) {
    const GameSpec game = GameSpec::homogeneous(netsec::cycle_graph(8), fixtures::prelec_player(a, 0.3),
                                                Externality::TotalEffort);
    const auto rep = netsec::interior_solve(game);
    ASSERT_TRUE(rep.has_value());
    const double x = *netsec::critical_points(Weighting::prelec(a), 0.9).x_upper;
    for (std::size_t i = 0; i < 8; ++i) {
      EXPECT_NEAR(rep->profile[i], 1.0 - x, 1e-12);
      EXPECT_NEAR(rep->attack_probs[i], x, 1e-12);
    }
    EXPECT_NEAR(rep->phi, x, 1e-12);
  }
}

TEST(Interior, TenNodeLeavesTheBox) {
  EXPECT_FALSE(netsec::interior_solve(fixtures::ten_node_game()).has_value());
}

TEST(Interior, ThrowsOnSingularSystem) {
  const GameSpec game = GameSpec::homogeneous(netsec::complete_graph(2), fixtures::prelec_player(0.6, 0.45),
                                              Externality::TotalEffort);
  // K2 gives A + I = [[1,1],[1,1]].
  EXPECT_THROW(netsec::interior_solve(game), netsec::SingularSystemError);
}

// On a complete graph every equilibrium puts the same total n (1 - X(n)) at stake.
TEST(CompleteGraph, EquilibriumTotalIsUnique) {
  const std::size_t n = 5;
  const GameSpec game = GameSpec::homogeneous(netsec::complete_graph(n), fixtures::prelec_player(0.6, 0.45),
                                              Externality::TotalEffort);
  const double target = n * *netsec::critical_points(Weighting::prelec(0.6), n * 0.45).one_minus_x;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    netsec::BrdOptions opt;
    std::vector<double> start(n);
    for (auto& v : start) v = u(rng);
    opt.start = StrategyProfile(start);
    opt.order = netsec::BrdOptions::Order::Random;
    opt.seed = static_cast<std::uint64_t>(t);
    const auto rep = netsec::brd_solve(game, opt);
    ASSERT_TRUE(rep.is_pne);
    const double total = std::accumulate(rep.profile.values().begin(), rep.profile.values().end(), 0.0);
    EXPECT_NEAR(total, target, 1e-8);
    for (double p : rep.attack_probs) EXPECT_NEAR(p, 1.0 - target / n, 1e-8);
  }
}

TEST(PhiBound, ChainOnFixtures) {
  std::vector<GameSpec> games{
      fixtures::ten_node_game(),
      GameSpec::homogeneous(netsec::cycle_graph(6), fixtures::prelec_player(0.6, 0.45), Externality::TotalEffort),
      GameSpec::homogeneous(netsec::star_graph(6), fixtures::prelec_player(0.5, 0.6), Externality::TotalEffort),
      GameSpec::homogeneous(netsec::path_graph(7), fixtures::prelec_player(0.7, 0.5), Externality::TotalEffort),
  };
  for (const auto& game : games) {
    const auto rep = netsec::brd_solve(game);
    ASSERT_TRUE(rep.is_pne);
    const auto b = netsec::phi_upper_bound(game);
    EXPECT_LE(rep.phi, b.bound_sum + 1e-12);
    EXPECT_LE(b.bound_sum, b.bound_avg + 1e-8);
  }
  const auto b = netsec::phi_upper_bound(fixtures::ten_node_game());
  EXPECT_TRUE(b.applicable);
}

TEST(PhiBound, Errors) {
  std::vector<netsec::Player> players(3, fixtures::prelec_player(0.6, 0.45));
  players[1].c = 0.5;
  const GameSpec het(netsec::path_graph(3), players, Externality::TotalEffort);
  EXPECT_THROW(netsec::phi_upper_bound(het), netsec::HeterogeneityError);
  const GameSpec cheap = GameSpec::homogeneous(netsec::path_graph(3), fixtures::prelec_player(0.6, 0.1),
                                               Externality::TotalEffort);
  EXPECT_THROW(netsec::phi_upper_bound(cheap), netsec::UndefinedCriticalPoint);
}

TEST(SecurePne, Conditions) {
  EXPECT_FALSE(netsec::secure_pne_exists(fixtures::ten_node_game()).exists);
  // w_0.4(1/3) = 0.354 > 0.3 on a cycle.
  const GameSpec cyc = GameSpec::homogeneous(netsec::cycle_graph(5), fixtures::prelec_player(0.4, 0.3),
                                             Externality::TotalEffort);
  const auto r = netsec::secure_pne_exists(cyc);
  EXPECT_TRUE(r.exists);
  EXPECT_EQ(r.witness[0], netsec::SecureWitness::WeightAboveCostRatio);
  // The all-ones profile is then an equilibrium.
  EXPECT_TRUE(netsec::verify_pne(cyc, StrategyProfile(5, 1.0)).is_pne);
  const GameSpec cheap = GameSpec::homogeneous(netsec::path_graph(3), fixtures::prelec_player(0.6, 0.1),
                                               Externality::TotalEffort);
  EXPECT_EQ(netsec::secure_pne_exists(cheap).witness[1], netsec::SecureWitness::DominantFullInvest);
}

TEST(RiskNeutral, SignOfThetaMinusOne) {
  EXPECT_EQ(netsec::risk_neutral_best_response(0.3, 1.0, 3), netsec::RiskNeutralResponse::One);
  EXPECT_EQ(netsec::risk_neutral_best_response(0.5, 1.0, 3), netsec::RiskNeutralResponse::Zero);
  EXPECT_EQ(netsec::risk_neutral_best_response(0.5, 1.0, 2), netsec::RiskNeutralResponse::Any);
  // Identity players follow the same rule inside BRD.
  const GameSpec game = GameSpec::homogeneous(netsec::path_graph(3), netsec::Player{0.3, 1.0, Weighting::identity()},
                                              Externality::TotalEffort);
  const auto rep = netsec::brd_solve(game);
  EXPECT_EQ(rep.profile.values(), (std::vector<double>{1.0, 1.0, 1.0}));
  EXPECT_TRUE(rep.is_pne);
}

TEST(NeighborhoodMonotonicity, NestedPairsOnPathAndTenNode) {
  const GameSpec path = GameSpec::homogeneous(netsec::path_graph(3), fixtures::prelec_player(0.6, 0.45),
                                              Externality::TotalEffort);
  const auto pairs = netsec::neighborhood_monotonicity_check(path, netsec::brd_solve(path).profile);
  ASSERT_EQ(pairs.size(), 2u);
  for (const auto& p : pairs) {
    EXPECT_EQ(p.j, 1u);
    EXPECT_TRUE(p.ok);
  }
  const GameSpec ex = fixtures::ten_node_game();
  for (const auto& p : netsec::neighborhood_monotonicity_check(ex, netsec::brd_solve(ex).profile)) {
    EXPECT_TRUE(p.ok) << p.i << "<" << p.j;
  }
}

TEST(GameSpec, Validation) {
  std::vector<netsec::Player> two(2, fixtures::prelec_player(0.6, 0.45));
  EXPECT_THROW(GameSpec(netsec::path_graph(3), two, Externality::TotalEffort), netsec::ParameterError);
  EXPECT_THROW(StrategyProfile(std::vector<double>{0.5, 1.5}), netsec::DomainError);
  const GameSpec game = fixtures::ten_node_game();
  EXPECT_THROW(netsec::verify_pne(game, StrategyProfile(3, 0.0)), netsec::ParameterError);
  EXPECT_THROW(netsec::verify_pne(game.with_externality(Externality::BestShot), StrategyProfile(10, 0.0)),
               netsec::ParameterError);
}

// Two equilibria with different attack probabilities on a 5-node graph whose
// nodes all satisfy the standing assumptions: either nodes 2 and 3 or node 5
// supply the investment shared across node 5's neighborhood.
TEST(Uniqueness, AttackProbabilitiesCanDiffer) {
  const netsec::Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}});
  const GameSpec game = GameSpec::homogeneous(g, fixtures::prelec_player(0.65, 0.72), Externality::TotalEffort);
  ASSERT_TRUE(netsec::check_game_assumptions(game).all_hold);
  const double t3 = netsec::response_rule(game, 1).target;
  const double t2 = netsec::response_rule(game, 3).target;
  ASSERT_GT(netsec::response_rule(game, 0).target, 0.0);
  const StrategyProfile a(std::vector<double>{0.0, t3, t3, t2, 0.0});
  const StrategyProfile b(std::vector<double>{0.0, 0.0, 0.0, t2, t3});
  EXPECT_TRUE(netsec::verify_pne(game, a).is_pne);
  EXPECT_TRUE(netsec::verify_pne(game, b).is_pne);
  const auto pa = netsec::attack_probabilities(game, a);
  const auto pb = netsec::attack_probabilities(game, b);
  EXPECT_GT(std::abs(pa[0] - pb[0]), 1e-2);
  EXPECT_GT(std::abs(netsec::phi(game, a) - netsec::phi(game, b)), 1e-3);
}
