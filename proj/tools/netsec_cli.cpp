// netsec: command-line front end for the interdependent security game solvers.
//
//   netsec critical-points --alpha A --c C [--L L] --d D
//   netsec solve CONFIG [--method auto|brd|lcp|interior] [--seed N] [--format json|csv] [--out PATH]
//   netsec compare-weighting --alpha1 A1 --alpha2 A2 --c C [--L L] --d LO..HI
//   netsec sweep [CONFIG] --param alpha|c|d_avg|x --range START:STOP:COUNT [--alphas A,B] [--out PATH]
//   netsec lcp-dump CONFIG [--out PATH]
//
// Exit codes: 0 ok, 2 invalid input, 3 solver failure, 4 profile failed verification.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netsec/io.hpp"
#include "netsec/netsec.hpp"

namespace {

using netsec::io::json;

constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitUnverified = 4;

struct ExitError {
  int code;
  std::string message;
};

enum class LogLevel { Error, Info, Debug };

LogLevel log_level() {
  const char* env = std::getenv("NETSEC_LOG");
  if (env == nullptr) return LogLevel::Error;
  const std::string v(env);
  if (v == "debug") return LogLevel::Debug;
  if (v == "info") return LogLevel::Info;
  return LogLevel::Error;
}

void log_info(const std::string& msg) {
  if (log_level() != LogLevel::Error) std::cerr << "info: " << msg << '\n';
}

void log_debug(const std::string& msg) {
  if (log_level() == LogLevel::Debug) std::cerr << "debug: " << msg << '\n';
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ExitError{kExitInput, "cannot write " + out_path};
  out << text;
}

// Translates library exceptions into exit codes.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const netsec::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const netsec::ConnectivityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const netsec::HeterogeneityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const netsec::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const netsec::SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const netsec::SizeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const netsec::Error& e) {
    std::cerr << "error: solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
}

// ---- critical-points --------------------------------------------------------------

struct CriticalArgs {
  double alpha = 0.0;
  double c = 0.0;
  double L = 1.0;
  std::size_t d = 1;
};

int run_critical(const CriticalArgs& a) {
  if (!(a.alpha > 0.0 && a.alpha <= 1.0)) throw ExitError{kExitInput, "--alpha must lie in (0, 1]"};
  if (!(a.c > 0.0) || !(a.L > 0.0)) throw ExitError{kExitInput, "--c and --L must be positive"};
  if (a.d < 1) throw ExitError{kExitInput, "--d must be >= 1"};
  const auto w = netsec::Weighting::prelec(a.alpha);
  if (w.is_linear()) {
    throw ExitError{kExitInput, "Identity weighting has no interior critical points (alpha = 1)"};
  }
  const double theta = static_cast<double>(a.d) * a.c / a.L;
  const auto cp = netsec::critical_points(w, theta);
  const auto zp = netsec::solve_z(w);
  const auto as = netsec::check_assumption_large_n(w, a.c, a.L, a.d);
  json out = {{"alpha", a.alpha},
              {"theta", theta},
              {"x_min", cp.x_min},
              {"interior_exists", cp.interior_exists},
              {"tangency", cp.tangency},
              {"z", zp.z},
              {"w_prime_z", zp.w_prime_z},
              {"assumption3",
               {{"applicable", as.applicable},
                {"holds", as.holds},
                {"gap_xv", as.gap_xv},
                {"v_small", as.v_small},
                {"w_at_inv_d", as.w_at_inv_d},
                {"cond3", as.cond3}}}};
  out["V"] = cp.v ? json(*cp.v) : json(nullptr);
  out["X"] = cp.x_upper ? json(*cp.x_upper) : json(nullptr);
  out["one_minus_X"] = cp.one_minus_x ? json(*cp.one_minus_x) : json(nullptr);
  std::cout << out.dump(2) << '\n';
  return 0;
}

// ---- solve --------------------------------------------------------------------------

struct SolveArgs {
  std::string config;
  std::string method = "auto";
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out;
  std::size_t limit = 1000;
};

std::string total_effort_csv(const netsec::GameSpec& game, const netsec::EquilibriumReport& rep) {
  using netsec::io::fmt;
  std::string text = netsec::io::csv_row({"id", "investment", "attack_probability", "case"});
  for (netsec::Node i = 0; i < game.size(); ++i) {
    text += netsec::io::csv_row({std::to_string(i + 1), fmt(rep.profile[i]), fmt(rep.attack_probs[i]),
                                 std::string(netsec::to_string(rep.per_node_case[i]))});
  }
  return text;
}

int run_solve(const SolveArgs& a) {
  const auto method = netsec::parse_method(a.method);
  if (!method) throw ExitError{kExitInput, "--method must be auto, brd, lcp or interior"};
  if (a.format != "json" && a.format != "csv") throw ExitError{kExitInput, "--format must be json or csv"};
  const netsec::GameSpec game = netsec::io::load_game(a.config);
  log_info("loaded " + std::to_string(game.size()) + " players, externality " +
           std::string(netsec::to_string(game.externality())));
  std::vector<std::string> warnings;
  std::string text;
  bool verified = true;

  switch (game.externality()) {
    case netsec::Externality::TotalEffort: {
      const auto assumptions = netsec::check_game_assumptions(game);
      if (!assumptions.all_hold) {
        warnings.emplace_back(
            "standing neighborhood-size assumptions fail at some nodes; results are outside the theory's guarantees");
        std::cerr << "warning: " << warnings.back() << '\n';
      }
      netsec::SolveOptions opt;
      opt.method = *method;
      if (a.seed) {
        opt.brd.order = netsec::BrdOptions::Order::Random;
        opt.brd.seed = *a.seed;
      }
      const auto rep = netsec::solve_total_effort(game, opt);
      if (!rep) throw ExitError{kExitSolver, "no interior equilibrium: the linear system's solution leaves [0, 1]^n"};
      log_debug("method " + std::string(netsec::to_string(rep->method)) + ", iterations " +
                std::to_string(rep->iterations));
      verified = rep->is_pne;
      text = a.format == "json"
                 ? netsec::io::total_effort_report(game, *rep, assumptions, warnings).dump(2) + "\n"
                 : total_effort_csv(game, *rep);
      break;
    }
    case netsec::Externality::WeakestLink: {
      const auto set = netsec::weakest_link_equilibria(game);
      verified = set.verified;
      if (a.format == "json") {
        text = netsec::io::weakest_link_report(game, set, warnings).dump(2) + "\n";
      } else {
        using netsec::io::fmt;
        text = netsec::io::csv_row({"lower", "upper", "lower_open", "upper_open"});
        for (const auto& iv : set.common_investment_ranges) {
          text += netsec::io::csv_row({fmt(iv.lower), fmt(iv.upper), iv.lower_open ? "true" : "false",
                                       iv.upper_open ? "true" : "false"});
        }
      }
      break;
    }
    case netsec::Externality::BestShot: {
      const netsec::Player& p = game.player(0);
      const auto opt = netsec::single_player_optimum(p.weighting, p.c, p.L);
      std::vector<netsec::io::BestShotEntry> eqs;
      for (auto& prof : netsec::best_shot_equilibria(game, a.limit)) {
        const auto check = netsec::verify_wl_bs(game, prof);
        eqs.push_back({std::move(prof), check});
        verified = verified && check.is_pne;
      }
      if (a.format == "json") {
        text = netsec::io::best_shot_report(game, opt, eqs, warnings).dump(2) + "\n";
      } else {
        using netsec::io::fmt;
        text = netsec::io::csv_row({"equilibrium", "id", "investment"});
        for (std::size_t k = 0; k < eqs.size(); ++k)
          for (netsec::Node i = 0; i < game.size(); ++i)
            text += netsec::io::csv_row({std::to_string(k + 1), std::to_string(i + 1), fmt(eqs[k].profile[i])});
      }
      break;
    }
  }
  emit(text, a.out);
  if (!verified) {
    std::cerr << "error: returned profile failed equilibrium verification\n";
    return kExitUnverified;
  }
  return 0;
}

// ---- compare-weighting --------------------------------------------------------------

struct CompareArgs {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double c = 0.0;
  double L = 1.0;
  std::string d_range;
};

std::pair<std::size_t, std::size_t> parse_d_range(const std::string& s) {
  std::size_t lo = 0;
  std::size_t hi = 0;
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoul(s);
    } else {
      lo = std::stoul(s.substr(0, dots));
      hi = std::stoul(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw ExitError{kExitInput, "--d must look like 3 or 3..5"};
  }
  if (lo < 1 || hi < lo) throw ExitError{kExitInput, "--d range must satisfy 1 <= lo <= hi"};
  return {lo, hi};
}

int run_compare(const CompareArgs& a) {
  if (!(a.alpha1 > 0.0 && a.alpha1 < a.alpha2 && a.alpha2 < 1.0)) {
    throw ExitError{kExitInput, "need 0 < --alpha1 < --alpha2 < 1"};
  }
  if (!(a.c > 0.0) || !(a.L > 0.0)) throw ExitError{kExitInput, "--c and --L must be positive"};
  const auto [lo, hi] = parse_d_range(a.d_range);
  using netsec::io::fmt;
  std::string text = netsec::io::csv_row({"d", "X1", "X2", "Xbar", "regime"});
  for (std::size_t d = lo; d <= hi; ++d) {
    const double theta = static_cast<double>(d) * a.c / a.L;
    if (!(a.alpha2 < theta)) {
      text += netsec::io::csv_row({std::to_string(d), "", "", fmt(netsec::solve_xbar(a.alpha1, a.alpha2)),
                                   "NotApplicable"});
      continue;
    }
    const auto r = netsec::compare_weighting(a.alpha1, a.alpha2, d, a.c, a.L);
    text += netsec::io::csv_row(
        {std::to_string(d), fmt(r.x1), fmt(r.x2), fmt(r.xbar), std::string(netsec::to_string(r.regime))});
  }
  const auto threshold = netsec::density_threshold(a.alpha1, a.alpha2, a.c, a.L);
  text += "# density_threshold=" + (threshold ? std::to_string(*threshold) : std::string("none")) + "\n";
  std::cout << text;
  return 0;
}

// ---- sweep --------------------------------------------------------------------------

struct SweepArgs {
  std::string config;
  std::string param;
  std::string range;
  std::string alphas = "0.4,0.8";
  std::string out;
};

std::vector<double> parse_range(const std::string& s) {
  double start = 0.0;
  double stop = 0.0;
  long long count = 0;
  char c1 = 0;
  char c2 = 0;
  std::istringstream in(s);
  std::string rest;
  if (!(in >> start >> c1 >> stop >> c2 >> count) || c1 != ':' || c2 != ':' || (in >> rest)) {
    throw ExitError{kExitInput, "--range must look like START:STOP:COUNT"};
  }
  if (count < 1 || !std::isfinite(start) || !std::isfinite(stop)) {
    throw ExitError{kExitInput, "--range is empty"};
  }
  std::vector<double> v;
  for (long long k = 0; k < count; ++k) {
    v.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& cell : netsec::io::split_csv_line(s)) {
    try {
      out.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw ExitError{kExitInput, "--alphas must be a comma-separated list of numbers"};
    }
  }
  if (out.empty()) throw ExitError{kExitInput, "--alphas is empty"};
  return out;
}

std::string equilibrium_shape(const netsec::EquilibriumReport& rep) {
  bool all_full = true;
  bool all_zero = true;
  bool all_interior = true;
  for (auto c : rep.per_node_case) {
    all_full = all_full && c == netsec::NodeCase::FullInvest;
    all_zero = all_zero && c == netsec::NodeCase::Zero;
    all_interior = all_interior && c == netsec::NodeCase::Interior;
  }
  if (all_interior) return "interior";
  if (all_full) return "full_invest";
  if (all_zero) return "zero";
  return "mixed";
}

netsec::GameSpec with_players(const netsec::GameSpec& base, double value, const std::string& param) {
  std::vector<netsec::Player> players = base.players();
  for (auto& p : players) {
    if (param == "alpha") {
      p.weighting = netsec::Weighting::prelec(value);
    } else {
      p.c = value;
    }
  }
  return netsec::GameSpec(base.graph(), std::move(players), base.externality());
}

int run_sweep(const SweepArgs& a) {
  using netsec::io::csv_row;
  using netsec::io::fmt;
  const std::vector<double> values = parse_range(a.range);
  std::string text;
  std::size_t ok = 0;

  if (a.param == "x") {
    const auto alphas = parse_list(a.alphas);
    std::vector<netsec::Weighting> ws;
    std::vector<std::string> header{"x"};
    for (double al : alphas) {
      try {
        ws.push_back(netsec::Weighting::prelec(al));
      } catch (const netsec::ParameterError& e) {
        throw ExitError{kExitInput, e.what()};
      }
      header.push_back("w_" + fmt(al));
      header.push_back("w_prime_" + fmt(al));
    }
    header.push_back("status");
    text = csv_row(header);
    for (double x : values) {
      std::vector<std::string> row{fmt(x)};
      try {
        for (const auto& w : ws) {
          row.push_back(fmt(w.value(x)));
          row.push_back(fmt(w.derivative(x)));
        }
        row.push_back("ok");
        ++ok;
      } catch (const netsec::Error& e) {
        row.resize(1);
        for (std::size_t k = 0; k < 2 * ws.size(); ++k) row.emplace_back();
        row.push_back("error");
      }
      text += csv_row(row);
    }
  } else if (a.param == "alpha" || a.param == "c") {
    if (a.config.empty()) throw ExitError{kExitInput, "--param " + a.param + " needs a config file"};
    const netsec::GameSpec base = netsec::io::load_game(a.config);
    if (base.externality() != netsec::Externality::TotalEffort) {
      throw ExitError{kExitInput, "sweeps over alpha or c need a total_effort config"};
    }
    text = csv_row({a.param, "status", "phi", "bound_sum", "bound_avg", "regime", "is_pne"});
    for (double v : values) {
      try {
        const netsec::GameSpec game = with_players(base, v, a.param);
        const auto rep = netsec::solve_total_effort(game);
        std::string bsum;
        std::string bavg;
        try {
          const auto b = netsec::phi_upper_bound(game);
          bsum = fmt(b.bound_sum);
          bavg = fmt(b.bound_avg);
        } catch (const netsec::Error&) {
        }
        text += csv_row({fmt(v), "ok", fmt(rep->phi), bsum, bavg, equilibrium_shape(*rep), rep->is_pne ? "true" : "false"});
        ++ok;
      } catch (const netsec::Error& e) {
        log_info("sweep point " + fmt(v) + " failed: " + e.what());
        text += csv_row({fmt(v), "error", "", "", "", "", ""});
      }
    }
  } else if (a.param == "d_avg") {
    if (a.config.empty()) throw ExitError{kExitInput, "--param d_avg needs a config file"};
    const netsec::GameSpec base = netsec::io::load_game(a.config);
    if (!base.is_homogeneous()) throw ExitError{kExitInput, "--param d_avg needs homogeneous players"};
    const netsec::Player& p = base.player(0);
    text = csv_row({"d_avg", "status", "theta", "x_avg", "regime"});
    for (double v : values) {
      try {
        const double theta = v * p.c / p.L;
        const auto cp = netsec::critical_points(p.weighting, theta);
        text += csv_row({fmt(v), "ok", fmt(theta), cp.x_upper ? fmt(*cp.x_upper) : "",
                         cp.interior_exists ? "interior" : "full_invest"});
        ++ok;
      } catch (const netsec::Error& e) {
        log_info("sweep point " + fmt(v) + " failed: " + e.what());
        text += csv_row({fmt(v), "error", "", "", ""});
      }
    }
  } else {
    throw ExitError{kExitInput, "--param must be alpha, c, d_avg or x"};
  }
  emit(text, a.out);
  if (ok == 0) {
    std::cerr << "error: every sweep point failed\n";
    return kExitSolver;
  }
  return 0;
}

// ---- lcp-dump -----------------------------------------------------------------------

int run_lcp_dump(const std::string& config, const std::string& out) {
  const netsec::GameSpec game = netsec::io::load_game(config);
  if (game.externality() != netsec::Externality::TotalEffort) {
    throw ExitError{kExitInput, "lcp-dump needs a total_effort config"};
  }
  emit(netsec::dump_lcp(netsec::build_lcp(game)), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria of interdependent security games under probability weighting"};
  app.require_subcommand(1);

  CriticalArgs crit;
  auto* c_cmd = app.add_subcommand("critical-points", "Critical probabilities V, X, z for one player");
  c_cmd->add_option("--alpha", crit.alpha, "Prelec curvature in (0, 1]")->required();
  c_cmd->add_option("--c", crit.c, "cost per unit investment")->required();
  c_cmd->add_option("--L", crit.L, "loss when attacked (default 1)");
  c_cmd->add_option("--d", crit.d, "extended neighborhood size")->required();

  SolveArgs solve;
  auto* s_cmd = app.add_subcommand("solve", "Compute and verify an equilibrium for a game config");
  s_cmd->add_option("config", solve.config, "game configuration JSON")->required();
  s_cmd->add_option("--method", solve.method, "auto|brd|lcp|interior");
  s_cmd->add_option("--seed", solve.seed, "random sweep order for best-response dynamics");
  s_cmd->add_option("--format", solve.format, "json|csv");
  s_cmd->add_option("--out", solve.out, "output path (stdout if omitted)");
  s_cmd->add_option("--limit", solve.limit, "maximum number of best-shot equilibria");

  CompareArgs cmp;
  auto* w_cmd = app.add_subcommand("compare-weighting", "Compare interior attack probabilities for two curvatures");
  w_cmd->add_option("--alpha1", cmp.alpha1)->required();
  w_cmd->add_option("--alpha2", cmp.alpha2)->required();
  w_cmd->add_option("--c", cmp.c)->required();
  w_cmd->add_option("--L", cmp.L);
  w_cmd->add_option("--d", cmp.d_range, "neighborhood size or range LO..HI")->required();

  SweepArgs sweep;
  auto* p_cmd = app.add_subcommand("sweep", "Emit plot-ready CSV over a parameter range");
  p_cmd->add_option("config", sweep.config, "game configuration JSON (not needed for --param x)");
  p_cmd->add_option("--param", sweep.param, "alpha|c|d_avg|x")->required();
  p_cmd->add_option("--range", sweep.range, "START:STOP:COUNT")->required();
  p_cmd->add_option("--alphas", sweep.alphas, "curvatures for --param x");
  p_cmd->add_option("--out", sweep.out, "output path (stdout if omitted)");

  std::string dump_config;
  std::string dump_out;
  auto* d_cmd = app.add_subcommand("lcp-dump", "Write the complementarity instance as plain text");
  d_cmd->add_option("config", dump_config)->required();
  d_cmd->add_option("--out", dump_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (*c_cmd) return guarded([&] { return run_critical(crit); });
  if (*s_cmd) return guarded([&] { return run_solve(solve); });
  if (*w_cmd) return guarded([&] { return run_compare(cmp); });
  if (*p_cmd) return guarded([&] { return run_sweep(sweep); });
  if (*d_cmd) return guarded([&] { return run_lcp_dump(dump_config, dump_out); });
  return kExitInput;
}
