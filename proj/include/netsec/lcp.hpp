#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "netsec/errors.hpp"
#include "netsec/game.hpp"
#include "netsec/total_effort.hpp"

namespace netsec {

// LCP(q, M) for a Total Effort game: z = [s; mu],
//   q = [-d o (1 - X) + pinned neighbor investment; 1],  M = [[A + I, I], [-I, 0]].
// Players with a dominant strategy are pinned and left out of the system.
struct LcpInstance {
  Eigen::VectorXd q;
  Eigen::MatrixXd M;
  std::size_t n = 0;                  // players in the system (block size)
  std::vector<Node> active;           // game node behind each block row
  std::vector<double> base_profile;   // full profile; pinned players already set
};

enum class LcpStatus { Solved, RayTermination, IterLimit };

inline std::string_view to_string(LcpStatus s) {
  switch (s) {
    case LcpStatus::Solved: return "solved";
    case LcpStatus::RayTermination: return "ray_termination";
    case LcpStatus::IterLimit: return "iteration_limit";
  }
  return "?";
}

struct LcpSolution {
  Eigen::VectorXd z;
  LcpStatus status = LcpStatus::IterLimit;
  std::size_t pivots = 0;
};

inline LcpInstance build_lcp(const GameSpec& game) {
  if (game.externality() != Externality::TotalEffort) {
    throw ParameterError("build_lcp expects a Total Effort game");
  }
  const Graph& g = game.graph();
  const auto rules = response_rules(game);
  LcpInstance inst;
  inst.base_profile.assign(game.size(), 0.0);
  std::vector<std::ptrdiff_t> slot(game.size(), -1);
  for (Node i = 0; i < game.size(); ++i) {
    if (rules[i].has_threshold()) {
      slot[i] = static_cast<std::ptrdiff_t>(inst.active.size());
      inst.active.push_back(i);
    } else {
      inst.base_profile[i] = rules[i].fixed_value;
    }
  }
  const auto n = static_cast<Eigen::Index>(inst.active.size());
  inst.n = inst.active.size();
  inst.q = Eigen::VectorXd::Zero(2 * n);
  inst.M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Node i = inst.active[static_cast<std::size_t>(r)];
    double pinned = 0.0;
    inst.M(r, r) = 1.0;
    for (Node j : g.neighbors(i)) {
      if (slot[j] >= 0) {
        inst.M(r, slot[j]) = 1.0;
      } else {
        pinned += inst.base_profile[j];
      }
    }
    inst.q(r) = -rules[i].target + pinned;
    inst.q(n + r) = 1.0;
    inst.M(r, n + r) = 1.0;
    inst.M(n + r, r) = -1.0;
  }
  return inst;
}

inline constexpr double kPivotTolerance = 1e-11;

namespace detail {

// Lexicographic comparison of rows (rhs, B^-1 row) scaled by 1/|pivot column entry|.
inline bool lex_less(const Eigen::MatrixXd& t, Eigen::Index r1, Eigen::Index r2, Eigen::Index col,
                     Eigen::Index rhs_col, Eigen::Index m) {
  const double a1 = std::abs(t(r1, col));
  const double a2 = std::abs(t(r2, col));
  auto cmp = [&](Eigen::Index k) -> int {
    const double x = t(r1, k) / a1;
    const double y = t(r2, k) / a2;
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    if (x < y - 1e-12 * scale) return -1;
    if (x > y + 1e-12 * scale) return 1;
    return 0;
  };
  if (int c = cmp(rhs_col); c != 0) return c < 0;
  for (Eigen::Index k = 0; k < m; ++k) {
    if (int c = cmp(k); c != 0) return c < 0;
  }
  return r1 < r2;
}

inline void pivot(Eigen::MatrixXd& t, Eigen::Index row, Eigen::Index col) {
  t.row(row) /= t(row, col);
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    if (i != row && t(i, col) != 0.0) t.row(i) -= t(i, col) * t.row(row);
  }
}

}  // namespace detail

// Lemke's complementary pivoting with covering vector e = 1 and a
// lexicographic ratio test. Tableau columns: [w | z | z0 | rhs] for
// w - M z - e z0 = q.
inline LcpSolution lemke_solve(const Eigen::VectorXd& q, const Eigen::MatrixXd& M,
                               std::size_t max_pivots) {
  const Eigen::Index m = q.size();
  if (M.rows() != m || M.cols() != m) throw ParameterError("lemke_solve: M must be square and match q");
  LcpSolution sol;
  sol.z = Eigen::VectorXd::Zero(m);
  if (m == 0 || q.minCoeff() >= 0.0) {
    sol.status = LcpStatus::Solved;
    return sol;
  }

  const Eigen::Index z0 = 2 * m;
  const Eigen::Index rhs = 2 * m + 1;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, 2 * m + 2);
  t.leftCols(m).setIdentity();
  t.middleCols(m, m) = -M;
  t.col(z0).setConstant(-1.0);
  t.col(rhs) = q;
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = i;

  auto complement = [m](Eigen::Index v) { return v < m ? v + m : v - m; };

  // z0 enters; the leaving row is the lexicographic minimum of (q, I).
  Eigen::Index row = 0;
  for (Eigen::Index i = 1; i < m; ++i) {
    if (detail::lex_less(t, i, row, z0, rhs, m)) row = i;
  }
  detail::pivot(t, row, z0);
  Eigen::Index leaving = basis[static_cast<std::size_t>(row)];
  basis[static_cast<std::size_t>(row)] = z0;
  Eigen::Index entering = complement(leaving);
  sol.pivots = 1;

  while (sol.pivots < max_pivots) {
    Eigen::Index best = -1;
    Eigen::Index z0_row = -1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, entering) <= kPivotTolerance) continue;
      if (basis[static_cast<std::size_t>(i)] == z0) z0_row = i;
      if (best < 0 || detail::lex_less(t, i, best, entering, rhs, m)) best = i;
    }
    if (best < 0) {
      sol.status = LcpStatus::RayTermination;
      return sol;
    }
    // Prefer z0 leaving when it ties on the ratio itself: that ends the path.
    if (z0_row >= 0 && z0_row != best) {
      const double rb = t(best, rhs) / t(best, entering);
      const double rz = t(z0_row, rhs) / t(z0_row, entering);
      if (rz <= rb + 1e-12 * std::max(1.0, std::abs(rb))) best = z0_row;
    }
    detail::pivot(t, best, entering);
    ++sol.pivots;
    leaving = basis[static_cast<std::size_t>(best)];
    basis[static_cast<std::size_t>(best)] = entering;
    if (leaving == z0) {
      for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index v = basis[static_cast<std::size_t>(i)];
        if (v >= m && v < 2 * m) sol.z(v - m) = t(i, rhs);
      }
      sol.status = LcpStatus::Solved;
      return sol;
    }
    entering = complement(leaving);
  }
  sol.status = LcpStatus::IterLimit;
  return sol;
}

inline std::size_t default_max_pivots(const LcpInstance& inst) {
  return std::max<std::size_t>(50 * inst.n, 10);
}

inline LcpSolution lemke_solve(const LcpInstance& inst, std::size_t max_pivots) {
  return lemke_solve(inst.q, inst.M, max_pivots);
}

inline LcpSolution lemke_solve(const LcpInstance& inst) {
  return lemke_solve(inst, default_max_pivots(inst));
}

// Solves with the players of the system reordered by `player_order` (a
// permutation of 0..n-1); different orders can reach different solutions.
inline LcpSolution lemke_solve_permuted(const LcpInstance& inst, const std::vector<std::size_t>& player_order,
                                        std::size_t max_pivots) {
  const std::size_t n = inst.n;
  if (player_order.size() != n) throw ParameterError("permutation length must equal the block size");
  std::vector<Eigen::Index> idx(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    idx[k] = static_cast<Eigen::Index>(player_order[k]);
    idx[n + k] = static_cast<Eigen::Index>(n + player_order[k]);
  }
  const auto m = static_cast<Eigen::Index>(2 * n);
  Eigen::VectorXd q(m);
  Eigen::MatrixXd M(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    q(a) = inst.q(idx[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < m; ++b) {
      M(a, b) = inst.M(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
  }
  LcpSolution permuted = lemke_solve(q, M, max_pivots);
  LcpSolution out = permuted;
  for (Eigen::Index a = 0; a < m; ++a) out.z(idx[static_cast<std::size_t>(a)]) = permuted.z(a);
  return out;
}

struct ComplementarityResidual {
  double min_z = 0.0;
  double min_w = 0.0;     // w = q + M z
  double product = 0.0;   // |z . w|
};

inline ComplementarityResidual complementarity_residual(const Eigen::VectorXd& q, const Eigen::MatrixXd& M,
                                                        const Eigen::VectorXd& z) {
  const Eigen::VectorXd w = q + M * z;
  ComplementarityResidual r;
  if (z.size() > 0) {
    r.min_z = z.minCoeff();
    r.min_w = w.minCoeff();
  }
  r.product = std::abs(z.dot(w));
  return r;
}

struct CopositivityReport {
  bool pass = false;
  double min_quadform = std::numeric_limits<double>::infinity();
  bool identity_holds = true;  // x'Mx == x1'(M11 - I)x1 + x1'x1 for block instances
};

namespace detail {

template <class Visit>
void copositivity_samples(Eigen::Index m, std::size_t trials, std::uint64_t seed, Visit&& visit) {
  Eigen::VectorXd x(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    x.setZero();
    x(k) = 1.0;
    visit(x);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t t = 0; t < trials; ++t) {
    for (Eigen::Index k = 0; k < m; ++k) x(k) = unif(rng);
    const double norm = x.norm();
    if (norm > 0.0) x /= norm;
    visit(x);
  }
}

}  // namespace detail

// Randomized copositivity check: x'Mx >= -1e-10 over unit basis vectors and
// `trials` random nonnegative unit vectors.
inline CopositivityReport check_copositive(const Eigen::MatrixXd& M, std::size_t trials, std::uint64_t seed) {
  if (M.rows() != M.cols()) throw ParameterError("check_copositive: M must be square");
  CopositivityReport r;
  detail::copositivity_samples(M.rows(), trials, seed, [&](const Eigen::VectorXd& x) {
    r.min_quadform = std::min(r.min_quadform, x.dot(M * x));
  });
  if (M.rows() == 0) r.min_quadform = 0.0;
  r.pass = r.min_quadform >= -1e-10;
  return r;
}

inline CopositivityReport check_copositive(const LcpInstance& inst, std::size_t trials, std::uint64_t seed) {
  CopositivityReport r = check_copositive(inst.M, trials, seed);
  const auto n = static_cast<Eigen::Index>(inst.n);
  const Eigen::MatrixXd adjacency = inst.M.topLeftCorner(n, n) - Eigen::MatrixXd::Identity(n, n);
  detail::copositivity_samples(inst.M.rows(), trials, seed, [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd x1 = x.head(n);
    const double lhs = x.dot(inst.M * x);
    const double rhs = x1.dot(adjacency * x1) + x1.dot(x1);
    if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(lhs))) r.identity_holds = false;
  });
  return r;
}

inline constexpr double kClampTolerance = 1e-7;

// Full-length profile from a solved instance: the s-block of z placed at the
// active nodes, pinned players from base_profile. Clamps into [0, 1] and
// refuses when the clamp would move a value by more than 1e-7.
inline StrategyProfile extract_profile(const LcpSolution& sol, const LcpInstance& inst) {
  if (sol.status != LcpStatus::Solved) {
    throw ParameterError("extract_profile needs a solved LCP, status is " + std::string(to_string(sol.status)));
  }
  std::vector<double> s = inst.base_profile;
  for (std::size_t k = 0; k < inst.n; ++k) {
    const double v = sol.z(static_cast<Eigen::Index>(k));
    const double c = std::clamp(v, 0.0, 1.0);
    if (std::abs(c - v) > kClampTolerance) {
      throw IntegrityError("LCP solution leaves [0, 1] at node " + std::to_string(inst.active[k] + 1) +
                           " (value " + std::to_string(v) + ")");
    }
    s[inst.active[k]] = c;
  }
  return StrategyProfile(std::move(s));
}

// Builds and solves the LCP, then verifies the profile.
inline EquilibriumReport lcp_solve(const GameSpec& game, std::size_t max_pivots = 0) {
  const LcpInstance inst = build_lcp(game);
  const LcpSolution sol = lemke_solve(inst, max_pivots == 0 ? default_max_pivots(inst) : max_pivots);
  if (sol.status != LcpStatus::Solved) {
    throw ConvergenceError("Lemke terminated without a solution: " + std::string(to_string(sol.status)));
  }
  return make_report(game, extract_profile(sol, inst), SolveMethod::LCP, sol.pivots);
}

// Plain-text dump: block size n, then q (2n lines), then M (2n rows).
inline std::string dump_lcp(const LcpInstance& inst) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << inst.n << '\n';
  for (Eigen::Index i = 0; i < inst.q.size(); ++i) out << inst.q(i) << '\n';
  for (Eigen::Index i = 0; i < inst.M.rows(); ++i) {
    for (Eigen::Index j = 0; j < inst.M.cols(); ++j) out << (j ? " " : "") << inst.M(i, j);
    out << '\n';
  }
  return out.str();
}

inline LcpInstance read_lcp_dump(std::istream& in) {
  LcpInstance inst;
  if (!(in >> inst.n)) throw ParameterError("LCP dump: missing block size");
  const auto m = static_cast<Eigen::Index>(2 * inst.n);
  inst.q.resize(m);
  inst.M.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    if (!(in >> inst.q(i))) throw ParameterError("LCP dump: truncated q");
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      if (!(in >> inst.M(i, j))) throw ParameterError("LCP dump: truncated M");
  for (std::size_t k = 0; k < inst.n; ++k) inst.active.push_back(k);
  inst.base_profile.assign(inst.n, 0.0);
  return inst;
}

}  // namespace netsec
