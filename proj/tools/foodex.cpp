// Command-line front end: solve equilibria, run comparative statics and
// adjustment dynamics, optimize the first-stage guidance level, solve the
// endogenous-added-value variant, sweep parameters, emit plot data, and run
// the verification battery.  Output is CSV (stdout or --out FILE), numbers
// carry 12 significant digits.
//
// Exit codes: 0 success, 1 check failure, 2 input error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "foodex/dynamics.hpp"
#include "foodex/extended.hpp"
#include "foodex/numeric.hpp"
#include "foodex/policy.hpp"
#include "foodex/scenario.hpp"
#include "foodex/statics.hpp"
#include "foodex/verification.hpp"

namespace {

using namespace foodex;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalError = 3;

struct OutputTarget {
  std::string path;  // empty = stdout

  template <typename Fn>
  void write(Fn&& fn) const {
    if (path.empty()) {
      fn(std::cout);
      return;
    }
    std::ofstream file(path);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    fn(file);
  }
};

std::string csv(double v) { return format_sig12(v); }

const char* method_name(SolveMethod m) {
  switch (m) {
    case SolveMethod::closed_form: return "closed-form";
    case SolveMethod::iterative: return "iterative";
    case SolveMethod::newton: return "newton";
  }
  return "?";
}

Equilibrium solve_scenario(const Scenario& sc, const DemandSystem& system,
                           const std::string& method) {
  if (method != "auto" && method != "closed" && method != "iterative" &&
      method != "newton") {
    throw std::invalid_argument("--method: expected auto, closed, iterative or newton");
  }
  if (method == "closed" && sc.kind != DemandKind::specific) {
    throw std::invalid_argument(
        "--method closed: only the specific demand family has a closed-form "
        "equilibrium");
  }
  if (method == "closed" || (method == "auto" && sc.kind == DemandKind::specific))
    return closed_form_equilibrium(sc.market, sc.funcs);
  if (method == "iterative") return solve_iterative(system, sc.market, sc.funcs);
  return solve_newton(system, sc.market, sc.funcs);
}

void write_solve_header(std::ostream& os, bool sweep_columns) {
  os << "scenario,";
  if (sweep_columns) os << "param,value,";
  os << "pUE,pLE,XUE,XLE,piUE,piLE,thetaStar,thetaStarStar,"
        "cond1,cond2,cond3,method,residual";
  if (sweep_columns) os << ",G_E,W_E";
  os << '\n';
}

void write_solve_row(std::ostream& os, const std::string& id,
                     const Equilibrium& eq) {
  const auto& r = eq.conditions;
  os << id << ',' << csv(eq.pU) << ',' << csv(eq.pL) << ',' << csv(eq.xU) << ','
     << csv(eq.xL) << ',' << csv(eq.profitU) << ',' << csv(eq.profitL) << ','
     << csv(r.theta_star) << ',' << csv(r.theta_star_star) << ','
     << (r.cond1.holds ? 1 : 0) << ',' << (r.cond2.holds ? 1 : 0) << ','
     << (r.cond3.holds ? 1 : 0) << ',' << method_name(eq.method) << ','
     << csv(eq.residual);
}

int cmd_solve(const Scenario& sc, const std::string& method,
              const OutputTarget& out) {
  const auto system = make_demand_system(sc);
  const Equilibrium eq = solve_scenario(sc, *system, method);
  if (eq.status != SolveStatus::ok) {
    std::cerr << "solve: solver did not converge (residual " << eq.residual
              << ")\n";
    return kExitNumericalError;
  }
  out.write([&](std::ostream& os) {
    write_solve_header(os, false);
    write_solve_row(os, sc.id, eq);
    os << '\n';
  });
  if (!eq.conditions.all_hold())
    std::cerr << "warning: conditions 1-3 do not all hold at the solution\n";
  return kExitOk;
}

Parameter parse_param(const std::string& name) {
  if (name == "cL" || name == "c_bar_L") return Parameter::c_bar_L;
  if (name == "R") return Parameter::R;
  if (name == "G") return Parameter::G;
  throw std::invalid_argument("--param: expected cL, R or G (got '" + name + "')");
}

int cmd_statics(const Scenario& sc, const std::string& param_name,
                const OutputTarget& out) {
  const Parameter param = parse_param(param_name);
  out.write([&](std::ostream& os) {
    os << "scenario,param,quantity,analytic,fd,note\n";
    const std::string key =
        sc.id + "," + parameter_name(param) + ",";
    if (sc.kind == DemandKind::specific) {
      const StaticsReport rep = specific_statics(sc.market, sc.funcs, param);
      const char* note = rep.signs_indeterminate ? "signs indeterminate" : "";
      auto row = [&](const char* q, double analytic, double fd,
                     const char* n) {
        os << key << q << ',' << csv(analytic) << ',' << csv(fd) << ',' << n
           << '\n';
      };
      row("dpUE", rep.dP.U, rep.dP_fd.U, "");
      row("dpLE", rep.dP.L, rep.dP_fd.L, "");
      row("dXUE", rep.dX.U, rep.dX_fd.U, note);
      row("dXLE", rep.dX.L, rep.dX_fd.L, note);
      row("dpiUE", rep.dPi.U, rep.dPi_fd.U, note);
      row("dpiLE", rep.dPi.L, rep.dPi_fd.L, note);
      row("dCSU", rep.dCS.U, rep.dCS_fd.U, note);
      row("dCSL", rep.dCS.L, rep.dCS_fd.L, note);
      for (const auto& v : rep.verdicts) {
        os << key << v.claim << ',' << (v.pass ? 1 : 0) << ",,verdict\n";
      }
    } else {
      const auto system = make_demand_system(sc);
      const Equilibrium eq = solve_newton(*system, sc.market, sc.funcs);
      const NonspecificStatics ns =
          nonspecific_statics(*system, eq, sc.market.R, sc.market.G, param);
      const FdStaticsResult fd = fd_statics(
          [&](const MarketPrimitives& m, const PolicyFunctions& f) {
            return solve_newton(LinearDemand(*sc.linear, m, f), m, f);
          },
          sc.market, sc.funcs, param);
      os << key << "dpUE," << csv(ns.full.U) << ',' << csv(fd.dP.U)
         << ",approx " << csv(ns.approx.U) << "; branch " << ns.regime() << '\n';
      os << key << "dpLE," << csv(ns.full.L) << ',' << csv(fd.dP.L)
         << ",approx " << csv(ns.approx.L) << "; branch " << ns.regime() << '\n';
    }
  });
  return kExitOk;
}

int cmd_dynamics(const Scenario& sc, const std::string& p0, double dt_flag,
                 int steps_flag, const OutputTarget& out) {
  AdjustmentConfig cfg = sc.dynamics;
  if (!p0.empty()) {
    std::istringstream is(p0);
    char comma = 0;
    if (!(is >> cfg.init[0] >> comma >> cfg.init[1]) || comma != ',')
      throw std::invalid_argument("--p0: expected 'pU,pL' (got '" + p0 + "')");
  }
  if (dt_flag > 0) cfg.dt = dt_flag;
  if (steps_flag > 0) cfg.horizon = cfg.dt * steps_flag;

  const auto system = make_demand_system(sc);
  const Trajectory traj = simulate(*system, sc.market, sc.funcs, cfg);
  out.write([&](std::ostream& os) { write_trajectory_csv(os, traj); });
  if (traj.truncated) {
    std::cerr << "dynamics: trajectory truncated: " << traj.note << '\n';
    return kExitNumericalError;
  }
  if (!traj.converged)
    std::cerr << "warning: not converged within the horizon (distance "
              << traj.final_distance << ")\n";
  return kExitOk;
}

int cmd_policy(const Scenario& sc, double gmax, const OutputTarget& out) {
  if (sc.kind != DemandKind::specific)
    throw std::invalid_argument("policy: the first stage is defined on specific demand");
  PolicyOptions options;
  if (gmax > 0) options.G_max = gmax;
  const PolicyOptimum opt = optimize_guidance(sc.market, sc.funcs, options);
  const ImplicitDerivative dcl = dGE_dcbarL(sc.market, sc.funcs, options);
  const ImplicitDerivative dR = dGE_dR(sc.market, sc.funcs, options);
  out.write([&](std::ostream& os) {
    os << "scenario,G_E,W_E,foc_residual,rho,dpiLE_dG,mp_price_channel,"
          "mp_cost_cut,mp_success_prob,cross_partial_GcL,dGE_dcbarL,dGE_dR,"
          "boundary,multimodal\n";
    os << sc.id << ',' << csv(opt.G_E) << ',' << csv(opt.W_E) << ','
       << csv(opt.foc_residual) << ',' << csv(opt.rho) << ','
       << csv(opt.decomposition.total) << ',' << csv(opt.decomposition.price_channel)
       << ',' << csv(opt.decomposition.cost_cut) << ','
       << csv(opt.decomposition.success_prob) << ','
       << csv(cross_partial_G_cbarL(sc.market, sc.funcs, opt.G_E)) << ','
       << (dcl.applicable ? csv(dcl.value) : std::string()) << ','
       << (dR.applicable ? csv(dR.value) : std::string()) << ','
       << (opt.boundary ? 1 : 0) << ',' << (opt.multimodal ? 1 : 0) << '\n';
  });
  return kExitOk;
}

int cmd_extended(const Scenario& sc, const OutputTarget& out) {
  if (sc.kind != DemandKind::specific)
    throw std::invalid_argument("extended: endogenous added value uses specific demand");
  const ExtendedEquilibrium eq = solve_extended(sc.market, sc.funcs);
  const ExtendedStatics st = extended_statics_cbarL(sc.market, sc.funcs);
  const ExtendedStaticsG stG = extended_statics_G(sc.market, sc.funcs);
  out.write([&](std::ostream& os) {
    os << "scenario,R_E,pUE,pLE,XUE,XLE,piUE,piLE,detJ3,soc_ok,"
          "res_priceU,res_priceL,res_addedValue,"
          "dpUE_dcL,dpLE_dcL,dRE_dcL,dXUE_dcL_fd,dpUE_dG,dpLE_dG,dRE_dG\n";
    os << sc.id << ',' << csv(eq.R_E) << ',' << csv(eq.pU) << ',' << csv(eq.pL)
       << ',' << csv(eq.xU) << ',' << csv(eq.xL) << ',' << csv(eq.profitU) << ','
       << csv(eq.profitL) << ',' << csv(eq.detJ3) << ',' << (eq.soc_ok ? 1 : 0)
       << ',' << csv(eq.residual_price_U) << ',' << csv(eq.residual_price_L)
       << ',' << csv(eq.residual_added_value) << ',' << csv(st.dpU) << ','
       << csv(st.dpL) << ',' << csv(st.dR) << ',' << csv(st.dxU_fd) << ','
       << csv(stG.dpU) << ',' << csv(stG.dpL) << ',' << csv(stG.dR) << '\n';
  });
  return kExitOk;
}

// Scalar scenario fields addressable by --param in sweeps.
double* sweep_target(Scenario& sc, const std::string& name) {
  if (name == "q") return &sc.market.q;
  if (name == "c_bar") return &sc.market.c_bar;
  if (name == "c_bar_L" || name == "cL") return &sc.market.c_bar_L;
  if (name == "R") return &sc.market.R;
  if (name == "G") return &sc.market.G;
  if (name == "P0") return &sc.funcs.prob.P0;
  if (name == "lambda_P") return &sc.funcs.prob.lambda_P;
  if (name == "a_R") return &sc.funcs.alpha.a_R;
  if (name == "lambda_alpha") return &sc.funcs.alpha.lambda_alpha;
  if (name == "b_beta") return &sc.funcs.beta.b_beta;
  return nullptr;
}

int cmd_sweep(const Scenario& base, const std::string& param, double from,
              double to, int steps, const OutputTarget& out) {
  if (steps < 1) throw std::invalid_argument("--steps: must be >= 1");
  Scenario sc = base;
  double* target = sweep_target(sc, param);
  if (!target)
    throw std::invalid_argument("--param: unknown scenario field '" + param + "'");

  out.write([&](std::ostream& os) {
    write_solve_header(os, true);
    for (int i = 0; i < steps; ++i) {
      const double value = steps == 1 ? from : from + (to - from) * i / (steps - 1);
      *target = value;
      sc.market.validate();
      sc.funcs.validate();
      const auto system = make_demand_system(sc);
      const Equilibrium eq = solve_scenario(sc, *system, "auto");
      os << sc.id << ',' << param << ',' << csv(value) << ',';
      {
        std::ostringstream row;
        write_solve_row(row, sc.id, eq);
        const std::string full = row.str();
        os << full.substr(full.find(',') + 1);  // drop duplicate id column
      }
      if (sc.kind == DemandKind::specific) {
        const PolicyOptimum opt = optimize_guidance(sc.market, sc.funcs);
        os << ',' << csv(opt.G_E) << ',' << csv(opt.W_E);
      } else {
        os << ",,";
      }
      os << '\n';
    }
  });
  return kExitOk;
}

int cmd_curves(const Scenario& sc, const std::string& producer,
               const std::string& levels_flag, int points, double span,
               const OutputTarget& out) {
  const auto system = make_demand_system(sc);
  const Equilibrium eq = solve_scenario(sc, *system, "auto");

  const bool want_U = producer.empty() || producer == "U";
  const bool want_L = producer.empty() || producer == "L";

  auto grid_around = [&](double center) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
      g[i] = center * (1 - span) + center * 2 * span * i / (points - 1);
    return g;
  };

  auto levels_for = [&](double fallback) {
    std::vector<double> levels;
    if (levels_flag.empty()) {
      levels.push_back(fallback);
      return levels;
    }
    std::istringstream is(levels_flag);
    std::string item;
    while (std::getline(is, item, ',')) levels.push_back(std::stod(item));
    return levels;
  };

  out.write([&](std::ostream& os) {
    os << "scenario,series,x,y\n";  // x = pL, y = pU plane
    if (want_U) {
      for (const auto& pt : reaction_curve_points(*system, Producer::U,
                                                  grid_around(eq.pL),
                                                  sc.market.R, sc.market.G)) {
        if (pt.ok)
          os << sc.id << ",reaction_U," << csv(pt.rival) << ','
             << csv(pt.response) << '\n';
      }
      for (double level : levels_for(eq.profitU)) {
        const auto pts = iso_profit_points(*system, Producer::U, level,
                                           grid_around(eq.pU), sc.market.R,
                                           sc.market.G);
        for (const auto& pt : pts) {
          if (pt.ok)
            os << sc.id << ",isoprofit_U_" << csv(level) << ','
               << csv(pt.dependent) << ',' << csv(pt.anchor) << '\n';
        }
      }
    }
    if (want_L) {
      for (const auto& pt : reaction_curve_points(*system, Producer::L,
                                                  grid_around(eq.pU),
                                                  sc.market.R, sc.market.G)) {
        if (pt.ok)
          os << sc.id << ",reaction_L," << csv(pt.response) << ','
             << csv(pt.rival) << '\n';
      }
      for (double level : levels_for(eq.profitL)) {
        const auto pts = iso_profit_points(*system, Producer::L, level,
                                           grid_around(eq.pL), sc.market.R,
                                           sc.market.G);
        for (const auto& pt : pts) {
          if (pt.ok)
            os << sc.id << ",isoprofit_L_" << csv(level) << ','
               << csv(pt.anchor) << ',' << csv(pt.dependent) << '\n';
        }
      }
    }
  });
  return kExitOk;
}

int cmd_check(const Scenario& sc, std::uint64_t seed, int trials,
              const OutputTarget& out) {
  const auto results = run_check_suite(sc, seed, trials);
  bool ok = true;
  out.write([&](std::ostream& os) {
    for (const auto& r : results) {
      os << (r.pass ? "PASS" : "FAIL") << ' ' << r.name << ": " << r.detail
         << '\n';
      ok = ok && r.pass;
    }
    os << (ok ? "OK" : "FAILED") << ' ' << results.size() << " checks (scenario "
       << sc.id << ", seed " << seed << ", trials " << trials << ")\n";
  });
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for a two-producer Bertrand food-export model"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, method = "auto", param, p0, producer,
              levels;
  double gmax = 0, from = 0, to = 0, dt = 0, span = 0.25;
  int steps = 0, points = 101, trials = 100;
  std::uint64_t seed = 42;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("scenario", scenario_path, "scenario file")->required();
    cmd->add_option("--out", out_path, "write CSV/report to FILE instead of stdout");
  };

  auto* solve = app.add_subcommand("solve", "second-stage equilibrium");
  add_common(solve);
  solve->add_option("--method", method,
                    "closed | iterative | newton | auto (default auto)");

  auto* statics = app.add_subcommand("statics", "comparative statics");
  add_common(statics);
  statics->add_option("--param", param, "cL | R | G")->required();

  auto* dynamics = app.add_subcommand("dynamics", "price adjustment over time");
  add_common(dynamics);
  dynamics->add_option("--p0", p0, "initial prices 'pU,pL'");
  dynamics->add_option("--dt", dt, "Euler step");
  dynamics->add_option("--steps", steps, "number of steps (overrides horizon)");

  auto* policy = app.add_subcommand("policy", "first-stage optimal guidance");
  add_common(policy);
  policy->add_option("--gmax", gmax, "search bound for G (default 50)");

  auto* extended = app.add_subcommand(
      "extended", "second stage with endogenous added value");
  add_common(extended);

  auto* sweep = app.add_subcommand("sweep", "parameter sweep");
  add_common(sweep);
  sweep->add_option("--param", param, "scenario field to sweep")->required();
  sweep->add_option("--from", from, "first value")->required();
  sweep->add_option("--to", to, "last value")->required();
  sweep->add_option("--steps", steps, "grid size")->required();

  auto* curves = app.add_subcommand("curves", "reaction and iso-profit curves");
  add_common(curves);
  curves->add_option("--producer", producer, "U | L (default both)");
  curves->add_option("--levels", levels, "comma-separated profit levels");
  curves->add_option("--points", points, "grid points per curve (default 101)");
  curves->add_option("--span", span, "grid half-width as a price fraction");

  auto* check = app.add_subcommand("check", "verification battery");
  add_common(check);
  check->add_option("--seed", seed, "RNG seed (default 42)");
  check->add_option("--trials", trials, "random scenarios per property (default 100)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    const Scenario sc = load_scenario(scenario_path);
    const OutputTarget out{out_path};
    if (solve->parsed()) return cmd_solve(sc, method, out);
    if (statics->parsed()) return cmd_statics(sc, param, out);
    if (dynamics->parsed()) return cmd_dynamics(sc, p0, dt, steps, out);
    if (policy->parsed()) return cmd_policy(sc, gmax, out);
    if (extended->parsed()) return cmd_extended(sc, out);
    if (sweep->parsed()) return cmd_sweep(sc, param, from, to, steps, out);
    if (curves->parsed()) return cmd_curves(sc, producer, levels, points, span, out);
    if (check->parsed()) return cmd_check(sc, seed, trials, out);
  } catch (const ScenarioError& err) {
    std::cerr << err.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& err) {
    std::cerr << err.what() << '\n';
    return kExitInputError;
  } catch (const Error& err) {
    std::cerr << err.what() << '\n';
    return kExitNumericalError;
  } catch (const std::exception& err) {
    std::cerr << err.what() << '\n';
    return kExitNumericalError;
  }
  return kExitOk;
}
