#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "netsec/critical.hpp"

using netsec::Weighting;

TEST(CriticalPoints, FrozenValues) {
  struct Case {
    double alpha, theta, x;
  };
  const std::vector<Case> cases = {
      {0.6, 0.9, 0.79524389285224633}, {0.6, 1.35, 0.91274884743945800}, {0.6, 1.8, 0.95289924607514432},
      {0.6, 2.25, 0.97116673},         {0.4, 0.9, 0.85884416},            {0.8, 0.9, 0.69117842},
      {0.4, 1.5, 0.93252799},          {0.8, 1.5, 0.96428381},            {0.5, 1.2, 0.89467430007452562},
  };
  for (const auto& c : cases) {
    const auto cp = netsec::critical_points(Weighting::prelec(c.alpha), c.theta);
    ASSERT_TRUE(cp.interior_exists);
    EXPECT_NEAR(*cp.x_upper, c.x, 5e-9) << c.alpha << " " << c.theta;
    EXPECT_NEAR(*cp.one_minus_x, 1.0 - c.x, 5e-9);
  }
  const auto cp = netsec::critical_points(Weighting::prelec(0.6), 0.9);
  EXPECT_NEAR(*cp.v, 0.0811545130623, 1e-9);
}

TEST(CriticalPoints, RootsSatisfyTheEquation) {
  for (double a : {0.3, 0.5, 0.7, 0.9}) {
    const auto w = Weighting::prelec(a);
    for (double theta : {a + 0.01, 1.0, 2.0, 10.0, 100.0}) {
      const auto cp = netsec::critical_points(w, theta);
      ASSERT_TRUE(cp.interior_exists);
      EXPECT_LT(*cp.v, netsec::kInvE);
      EXPECT_GT(*cp.x_upper, netsec::kInvE);
      EXPECT_NEAR(w.derivative(*cp.v) / theta, 1.0, 1e-9);
      EXPECT_NEAR(w.derivative_complement(*cp.one_minus_x) / theta, 1.0, 1e-9);
    }
  }
}

TEST(CriticalPoints, NoInteriorBelowAlpha) {
  const auto w = Weighting::prelec(0.6);
  const auto below = netsec::critical_points(w, 0.4);
  EXPECT_FALSE(below.interior_exists);
  EXPECT_FALSE(below.v.has_value());
  EXPECT_FALSE(below.x_upper.has_value());
  EXPECT_FALSE(below.tangency);
  const auto at = netsec::critical_points(w, 0.6);
  EXPECT_FALSE(at.interior_exists);
  EXPECT_TRUE(at.tangency);
}

TEST(CriticalPoints, Errors) {
  EXPECT_THROW(netsec::critical_points(Weighting::identity(), 0.9), netsec::SpecError);
  EXPECT_THROW(netsec::critical_points(Weighting::prelec(1.0), 0.9), netsec::SpecError);
  EXPECT_THROW(netsec::critical_points(Weighting::prelec(0.6), 0.0), netsec::ParameterError);
  EXPECT_THROW(netsec::critical_points(Weighting::prelec(0.6), -1.0), netsec::ParameterError);
}

TEST(CriticalPoints, LargeThetaResolvesNearOne) {
  const auto w = Weighting::prelec(0.6);
  const auto cp = netsec::critical_points(w, 1e6);
  ASSERT_TRUE(cp.interior_exists);
  EXPECT_GT(*cp.one_minus_x, 0.0);
  EXPECT_LT(*cp.one_minus_x, 1e-6);
}

// X(d) increasing and concave in d, d(1 - X) decreasing; compared in u = 1 - X.
TEST(CriticalPoints, MonotoneInDegree) {
  for (double a : {0.4, 0.6, 0.8}) {
    const auto w = Weighting::prelec(a);
    const double cl = 0.45;
    std::vector<double> u;
    for (int d = 2; d <= 50; ++d) {
      const auto cp = netsec::critical_points(w, d * cl);
      if (!cp.interior_exists) {
        u.push_back(std::nan(""));
        continue;
      }
      u.push_back(*cp.one_minus_x);
    }
    for (std::size_t k = 1; k < u.size(); ++k) {
      if (std::isnan(u[k - 1])) continue;
      const double d0 = static_cast<double>(k + 1);
      EXPECT_LT(u[k], u[k - 1]) << "X not increasing at d=" << d0 + 1;
      EXPECT_LT((d0 + 1) * u[k], d0 * u[k - 1]) << "d(1-X) not decreasing at d=" << d0 + 1;
    }
    for (std::size_t k = 2; k < u.size(); ++k) {
      if (std::isnan(u[k - 2])) continue;
      // X concave <=> u convex.
      EXPECT_GE(u[k] - 2 * u[k - 1] + u[k - 2], -1e-14);
    }
  }
}

TEST(SolveZ, FrozenValues) {
  const auto z6 = netsec::solve_z(Weighting::prelec(0.6));
  EXPECT_NEAR(z6.z, 0.75664976, 1e-7);
  EXPECT_NEAR(z6.w_prime_z, 0.83035397, 1e-7);
  EXPECT_NEAR(z6.one_minus_z, 1.0 - z6.z, 1e-15);
  const auto z4 = netsec::solve_z(Weighting::prelec(0.4));
  EXPECT_NEAR(z4.z, 0.80480649501094768, 1e-9);
  EXPECT_NEAR(z4.w_prime_z, 0.72200001884270, 1e-9);
  const auto z8 = netsec::solve_z(Weighting::prelec(0.8));
  EXPECT_NEAR(z8.z, 0.72059357275812809, 1e-9);
  EXPECT_NEAR(z8.w_prime_z, 0.92134566340119327, 1e-9);
}

TEST(SolveZ, TangencyIsUniqueAboveXmin) {
  for (double a : {0.3, 0.6, 0.9}) {
    const auto w = Weighting::prelec(a);
    const auto zp = netsec::solve_z(w);
    EXPECT_GT(zp.z, netsec::kInvE);
    EXPECT_NEAR(w.derivative(zp.z), w.value(zp.z) / zp.z, 1e-10);
    // h(x) = x w'(x) - w(x) has one sign change on (x_min, 1).
    int changes = 0;
    double prev = 0.0;
    for (int k = 1; k < 2000; ++k) {
      const double x = netsec::kInvE + (1.0 - netsec::kInvE) * k / 2000.0;
      const double h = x * w.derivative(x) - w.value(x);
      if (k > 1 && (h > 0) != (prev > 0)) ++changes;
      prev = h;
    }
    EXPECT_EQ(changes, 1);
  }
  EXPECT_THROW(netsec::solve_z(Weighting::identity()), netsec::SpecError);
}

TEST(Xbar, FrozenValueAndCrossing) {
  const double xb = netsec::solve_xbar(0.4, 0.8);
  EXPECT_NEAR(xb, 0.90726, 1e-5);
  const auto w1 = Weighting::prelec(0.4);
  const auto w2 = Weighting::prelec(0.8);
  EXPECT_NEAR(w1.derivative(xb), 1.20325, 1e-5);
  EXPECT_LT(std::abs(w1.derivative(xb) - w2.derivative(xb)), 1e-8);
  EXPECT_GT(w1.second_derivative(xb), w2.second_derivative(xb));
}

TEST(Xbar, GIsDecreasing) {
  for (auto [a1, a2] : {std::pair{0.4, 0.8}, std::pair{0.2, 0.5}, std::pair{0.6, 0.9}}) {
    double prev = netsec::g_eval(a1, a2, netsec::kInvE);
    EXPECT_NEAR(prev, 1.0, 1e-12);
    for (int k = 1; k < 500; ++k) {
      const double x = netsec::kInvE + (1.0 - netsec::kInvE) * k / 500.0;
      const double g = netsec::g_eval(a1, a2, x);
      EXPECT_LT(g, prev);
      prev = g;
    }
    const double xb = netsec::solve_xbar(a1, a2);
    EXPECT_NEAR(netsec::g_eval(a1, a2, xb), a1 / a2, 1e-10);
  }
}

TEST(Xbar, Errors) {
  EXPECT_THROW(netsec::solve_xbar(0.8, 0.4), netsec::ParameterError);
  EXPECT_THROW(netsec::solve_xbar(0.5, 0.5), netsec::ParameterError);
  EXPECT_THROW(netsec::g_eval(0.4, 0.8, 0.2), netsec::DomainError);
}

TEST(AssumptionLargeN, TenNodeLeaves) {
  const auto r = netsec::check_assumption_large_n(Weighting::prelec(0.6), 0.45, 1.0, 2);
  EXPECT_TRUE(r.applicable);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.gap_xv, 0.2141, 1e-4);
  EXPECT_NEAR(r.w_at_inv_d, 0.44816543873, 1e-10);
  EXPECT_TRUE(r.v_small);
  EXPECT_TRUE(r.cond3);
}

TEST(AssumptionLargeN, RegularNetworkParameters) {
  const auto w4 = Weighting::prelec(0.4);
  const auto w8 = Weighting::prelec(0.8);
  const auto d3 = netsec::check_assumption_large_n(w4, 0.3, 1.0, 3);
  EXPECT_NEAR(d3.w_at_inv_d, 0.35404343, 1e-7);
  EXPECT_FALSE(d3.cond3);
  EXPECT_FALSE(d3.holds);
  EXPECT_TRUE(netsec::check_assumption_large_n(w4, 0.3, 1.0, 5).holds);
  EXPECT_FALSE(netsec::check_assumption_large_n(w8, 0.3, 1.0, 3).cond3);
  EXPECT_TRUE(netsec::check_assumption_large_n(w8, 0.3, 1.0, 5).holds);
}

TEST(AssumptionLargeN, NotApplicableBelowAlpha) {
  const auto r = netsec::check_assumption_large_n(Weighting::prelec(0.6), 0.2, 1.0, 2);
  EXPECT_FALSE(r.applicable);
  EXPECT_TRUE(r.holds);
}
