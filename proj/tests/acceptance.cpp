// Acceptance battery: every release-gating property of the model lab, one
// pass/fail line per criterion.  Exits nonzero when any criterion fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "foodex/dynamics.hpp"
#include "foodex/extended.hpp"
#include "foodex/numeric.hpp"
#include "foodex/policy.hpp"
#include "foodex/statics.hpp"
#include "foodex/verification.hpp"
#include "oracles.hpp"

using namespace foodex;

namespace {

struct Criterion {
  int id;
  std::string title;
  bool pass;
  std::string detail;
};

std::vector<Criterion> g_results;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  g_results.push_back({id, title, pass, detail});
  std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(),
              detail.c_str());
}

const MarketPrimitives kS0 = oracles::baseline_market();
const PolicyFunctions kF0 = oracles::baseline_functions();
const LinearDemandParams kLinParams{2.0, 1.0, 0.5, 0.1, 0.1};

MarketPrimitives linear_market() {
  MarketPrimitives m = kS0;
  m.q = 4.2;  // sqrt(q) between the linear instance's equilibrium prices
  return m;
}

// ---------------------------------------------------------------------------
// 1. Closed-form fidelity: three solvers agree and a grid search confirms
//    mutual best responses; the baseline scenario is exact.
void criterion_closed_form() {
  std::mt19937_64 rng(101);
  double worst_pair = 0, worst_grid = 0;
  bool ok = true;
  for (int i = 0; i < 200; ++i) {
    const RandomScenario r = random_valid_scenario(rng);
    const SpecificDemand sys(r.market, r.funcs);
    const Equilibrium cf = closed_form_equilibrium(r.market, r.funcs);
    const Equilibrium nw = solve_newton(sys, r.market, r.funcs);
    const Equilibrium it = solve_iterative(sys, r.market, r.funcs);
    worst_pair = std::max({worst_pair, std::fabs(cf.pU - nw.pU),
                           std::fabs(cf.pL - nw.pL), std::fabs(cf.pU - it.pU),
                           std::fabs(cf.pL - it.pL), std::fabs(nw.pU - it.pU),
                           std::fabs(nw.pL - it.pL)});
    const double gU = grid_refine_best_response(sys, Producer::U, cf.pL,
                                                r.market.R, r.market.G, cf.pU,
                                                0.1 * cf.pU);
    const double gL = grid_refine_best_response(sys, Producer::L, cf.pU,
                                                r.market.R, r.market.G, cf.pL,
                                                0.1 * cf.pL);
    worst_grid = std::max({worst_grid, std::fabs(gU - cf.pU), std::fabs(gL - cf.pL)});
  }
  ok = worst_pair <= 1e-8 && worst_grid <= 1e-3;

  const Equilibrium s0 = closed_form_equilibrium(kS0, kF0);
  const double base_gap = std::max({std::fabs(s0.pU - 4.0 / 3.0),
                                    std::fabs(s0.pL - 5.0 / 3.0),
                                    std::fabs(s0.xU - 5.0 / 12.0),
                                    std::fabs(s0.xL - 7.0 / 12.0),
                                    std::fabs(s0.profitU - 5.0 / 36.0),
                                    std::fabs(s0.profitL - 49.0 / 180.0)});
  ok = ok && base_gap <= 1e-12;

  std::ostringstream d;
  d << "200 scenarios: max solver gap " << format_sig12(worst_pair)
    << " (tol 1e-8), max grid-search gap " << format_sig12(worst_grid)
    << " (tol 1e-3), baseline exact to " << format_sig12(base_gap);
  report(1, "closed-form fidelity", ok, d.str());
}

// ---------------------------------------------------------------------------
// 2. Location-cost price derivatives are exactly (1/3, 2/3), ordered, and
//    confirmed by the finite-difference oracle.
void criterion_price_ordering() {
  std::mt19937_64 rng(102);
  bool ok = true;
  double worst_rel = 0;
  for (int i = 0; i < 200; ++i) {
    const RandomScenario r = i == 0 ? RandomScenario{kS0, kF0}
                                    : random_valid_scenario(rng);
    const StaticsReport rep = specific_statics(r.market, r.funcs, Parameter::c_bar_L);
    ok = ok && rep.dP.U == 1.0 / 3.0 && rep.dP.L == 2.0 / 3.0 &&
         rep.dP.L > rep.dP.U && rep.dP.U > 0;
    worst_rel = std::max({worst_rel, std::fabs(rep.dP_fd.U - rep.dP.U) / rep.dP.U,
                          std::fabs(rep.dP_fd.L - rep.dP.L) / rep.dP.L});
  }
  ok = ok && worst_rel <= 1e-5;
  std::ostringstream d;
  d << "dpLE = 2/3 > dpUE = 1/3 > 0 on all 200 scenarios, worst fd rel gap "
    << format_sig12(worst_rel) << " (tol 1e-5)";
  report(2, "location-cost price ordering", ok, d.str());
}

// ---------------------------------------------------------------------------
// 3. Profit divergence: a worse location helps the rival and hurts the local
//    producer.
void criterion_profit_divergence() {
  std::mt19937_64 rng(103);
  bool ok = true;
  double worst_rel = 0;
  for (int i = 0; i < 100; ++i) {
    const RandomScenario r = random_valid_scenario(rng);
    const StaticsReport rep = specific_statics(r.market, r.funcs, Parameter::c_bar_L);
    ok = ok && rep.dPi.U > 0 && rep.dPi.L < 0;
    worst_rel = std::max(
        {worst_rel, std::fabs(rep.dPi_fd.U - rep.dPi.U) / std::fabs(rep.dPi.U),
         std::fabs(rep.dPi_fd.L - rep.dPi.L) / std::fabs(rep.dPi.L)});
  }
  ok = ok && worst_rel <= 1e-5;
  std::ostringstream d;
  d << "dpiUE/dc_bar_L > 0 > dpiLE/dc_bar_L on 100 scenarios, worst fd rel gap "
    << format_sig12(worst_rel) << " (tol 1e-5)";
  report(3, "profit divergence", ok, d.str());
}

// ---------------------------------------------------------------------------
// 4. Guidance sign identity in both regimes, and the local producer always
//    gains from guidance.
void criterion_guidance_signs() {
  bool ok = true;
  double worst_rel = 0;
  int negative_regime_seen = 0, positive_regime_seen = 0;

  auto examine = [&](const MarketPrimitives& m, const PolicyFunctions& f) {
    const StaticsReport rep = specific_statics(m, f, Parameter::G);
    const ProbEval prob = eval_prob(f, m.G);
    const AlphaEval alpha = eval_alpha(f, m.R, m.G);
    const double driver = prob.dG * m.R + alpha.dG;
    auto sgn = [](double x) { return x > 1e-12 ? 1 : (x < -1e-12 ? -1 : 0); };
    ok = ok && sgn(rep.dP.U) == sgn(driver) && sgn(rep.dP.L) == sgn(driver);
    ok = ok && rep.dPi.L > 0;
    worst_rel = std::max(worst_rel, std::fabs(rep.dPi_fd.L - rep.dPi.L) /
                                        std::fabs(rep.dPi.L));
    (sgn(driver) >= 0 ? positive_regime_seen : negative_regime_seen)++;
  };

  examine(kS0, kF0);  // price-increase regime
  examine(oracles::price_drop_market(), oracles::price_drop_functions());
  std::mt19937_64 rng(104);
  for (int i = 0; i < 50; ++i) {
    const RandomScenario r = random_valid_scenario(rng);
    examine(r.market, r.funcs);
  }
  ok = ok && positive_regime_seen > 0 && negative_regime_seen > 0;

  const double s0_value = specific_statics(kS0, kF0, Parameter::G).dPi.L;
  ok = ok && std::fabs(s0_value - 0.544444444444) <= 1e-5 && worst_rel <= 1e-5;

  std::ostringstream d;
  d << "sign(dp/dG) = sign(P'R + dalpha/dG) in both regimes ("
    << positive_regime_seen << " up, " << negative_regime_seen
    << " down); dpiLE/dG > 0 on all, baseline value "
    << format_sig12(s0_value) << ", worst fd rel gap " << format_sig12(worst_rel);
  report(4, "guidance sign identity", ok, d.str());
}

// ---------------------------------------------------------------------------
// 5. Adjustment dynamics descend for every speed pair, from random starts.
void criterion_descent() {
  std::mt19937_64 rng(105);
  std::uniform_real_distribution<double> spread(-0.5, 0.5);
  bool ok = true;
  int runs = 0;
  double worst_final_z2 = 0;

  auto battery = [&](const DemandSystem& sys, const MarketPrimitives& m,
                     const PolicyFunctions& f, const Equilibrium& eq) {
    for (double kU : {0.1, 1.0, 10.0}) {
      for (double kL : {0.1, 1.0, 10.0}) {
        for (int s = 0; s < 50; ++s) {
          AdjustmentConfig cfg;
          cfg.kU = kU;
          cfg.kL = kL;
          cfg.dt = 0.01;
          cfg.horizon = 2000;
          cfg.init = {eq.pU * (1 + spread(rng)), eq.pL * (1 + spread(rng))};
          const Trajectory t = simulate(sys, m, f, cfg);
          const DescentVerdict v = check_descent(t);
          ok = ok && v.ok && t.converged && !t.samples.empty();
          worst_final_z2 = std::max(worst_final_z2, t.samples.back().z2);
          ++runs;
        }
      }
    }
  };

  const SpecificDemand specific(kS0, kF0);
  battery(specific, kS0, kF0, closed_form_equilibrium(kS0, kF0));

  const MarketPrimitives lm = linear_market();
  const LinearDemand linear(kLinParams, lm, kF0);
  const Equilibrium lin_eq = solve_newton(linear, lm, kF0);
  const StabilityQuantities s =
      stability_quantities(linear, lin_eq.pU, lin_eq.pL, lm.R, lm.G);
  ok = ok && s.cond4_strict;
  battery(linear, lm, kF0, lin_eq);

  ok = ok && worst_final_z2 < 1e-12;
  std::ostringstream d;
  d << runs << " trajectories over (kU,kL) in {0.1,1,10}^2: Z2 strictly "
       "decreasing, all converged, worst final Z2 "
    << format_sig12(worst_final_z2) << " (< 1e-12); linear instance cond4-strict";
  report(5, "adjustment-process descent", ok, d.str());
}

// ---------------------------------------------------------------------------
// 6. First stage: the FOC root is the welfare maximum, the cross partial is
//    negative, and the optimal guidance falls with the location cost.
void criterion_first_stage() {
  bool ok = true;
  const PolicyOptimum opt = optimize_guidance(kS0, kF0);
  ok = ok && !opt.boundary && opt.foc_residual <= 1e-8;

  const double golden = golden_section_welfare_max(kS0, kF0, 0, 50);
  const double method_gap = std::fabs(golden - opt.G_E);
  ok = ok && method_gap <= 1e-6;

  const double cross = cross_partial_G_cbarL(kS0, kF0, 0.0);
  const double h = 1e-4;
  auto mp_at = [&](double cl) {
    MarketPrimitives m = kS0;
    m.c_bar_L = cl;
    return marginal_profit_G(m, kF0, 0.0).total;
  };
  const double cross_fd = (mp_at(kS0.c_bar_L + h) - mp_at(kS0.c_bar_L - h)) / (2 * h);
  ok = ok && cross < 0 && std::fabs(cross - (-0.0972222222222)) <= 1e-5 &&
       std::fabs(cross - cross_fd) <= 1e-4;

  // 41-point location-cost sweep: the optimal guidance level only falls.
  bool monotone = true;
  double prev = 1e300;
  for (int i = 0; i <= 40; ++i) {
    MarketPrimitives m = kS0;
    m.c_bar_L = 0.4 * i / 40.0;
    const double ge = optimize_guidance(m, kF0).G_E;
    monotone = monotone && ge < prev;
    prev = ge;
  }
  ok = ok && monotone;

  const ImplicitDerivative d = dGE_dcbarL(kS0, kF0);
  auto GE = [&](double cl) {
    MarketPrimitives m = kS0;
    m.c_bar_L = cl;
    return optimize_guidance(m, kF0).G_E;
  };
  const double slope_fd = (GE(kS0.c_bar_L + 1e-3) - GE(kS0.c_bar_L - 1e-3)) / 2e-3;
  const double slope_rel = std::fabs(d.value - slope_fd) / std::fabs(d.value);
  ok = ok && d.applicable && d.value < 0 && slope_rel <= 1e-3;

  std::ostringstream det;
  det << "G_E " << format_sig12(opt.G_E) << ", foc residual "
      << format_sig12(opt.foc_residual) << ", golden-section gap "
      << format_sig12(method_gap) << ", cross partial " << format_sig12(cross)
      << " (fd " << format_sig12(cross_fd) << "), 41-point sweep monotone, "
      << "implicit vs reopt slope rel gap " << format_sig12(slope_rel);
  report(6, "first-stage optimum and guidance response", ok, det.str());
}

// ---------------------------------------------------------------------------
// 7. Endogenous added value: exact reference point, demand invariance, the
//    positive derivative triple, and the sign flip at 2 dalpha/dR = P(G).
void criterion_extended() {
  bool ok = true;
  const MarketPrimitives mSX = oracles::extended_market();
  const PolicyFunctions fSX = oracles::extended_functions();

  const ExtendedEquilibrium eq = solve_extended(mSX, fSX);
  const double point_gap =
      std::max({std::fabs(eq.R_E - 0.5), std::fabs(eq.pL - 1.3),
                std::fabs(eq.pU - 1.15), std::fabs(eq.xU - 0.75)});
  ok = ok && point_gap <= 1e-10;

  const ExtendedStatics st = extended_statics_cbarL(mSX, fSX);
  ok = ok && std::fabs(st.dxU_fd) <= 1e-6;
  const double triple_gap = std::max({std::fabs(st.dpU - 1.5),
                                      std::fabs(st.dpL - 3.0),
                                      std::fabs(st.dR - 5.0)});
  ok = ok && triple_gap <= 1e-9 && st.dpU > 0 && st.dpL > 0 && st.dR > 0;
  const double P = eval_prob(fSX, mSX.G).value;
  const double twoA = 2.0 * eval_alpha(fSX, mSX.R, mSX.G).dR;
  ok = ok && P < twoA;  // the all-positive sign case

  // sign flip located by the a_R sweep
  const auto sweep = extended_ar_sweep(mSX, fSX, 0.1, 0.3, 41);
  double last_neg = -1, first_pos = -1;
  bool signs_ok = true;
  for (const auto& t : sweep) {
    if (std::fabs(t.two_dalpha_dR - P) <= 1e-12 * P) continue;
    if (t.two_dalpha_dR < P) {
      signs_ok = signs_ok && t.dpU < 0 && t.dpL < 0 && t.dR < 0;
      last_neg = t.a_R;
    } else {
      signs_ok = signs_ok && t.dpU > 0 && t.dpL > 0 && t.dR > 0;
      if (first_pos < 0) first_pos = t.a_R;
    }
  }
  const double flip_at = P / 2.0;
  ok = ok && signs_ok && last_neg > 0 && first_pos > 0 && last_neg <= flip_at &&
       flip_at <= first_pos;

  std::ostringstream d;
  d << "reference point gap " << format_sig12(point_gap)
    << " (tol 1e-10), |dXUE/dc_bar_L| " << format_sig12(std::fabs(st.dxU_fd))
    << " (tol 1e-6), triple (1.5, 3, 5) gap " << format_sig12(triple_gap)
    << ", sign flip inside [" << format_sig12(last_neg) << ", "
    << format_sig12(first_pos) << "] around " << format_sig12(flip_at);
  report(7, "endogenous added value", ok, d.str());
}

// ---------------------------------------------------------------------------
// 8. Generic comparative-statics machinery: exact for linear demand, and
//    reproduces the closed forms when fed the threshold system.
void criterion_generic_machinery() {
  bool ok = true;
  double worst_linear = 0, worst_specific = 0;

  const MarketPrimitives lm = linear_market();
  const LinearDemand linear(kLinParams, lm, kF0);
  const Equilibrium lin_eq = solve_newton(linear, lm, kF0);
  for (Parameter p : {Parameter::c_bar_L, Parameter::R, Parameter::G}) {
    const NonspecificStatics ns = nonspecific_statics(linear, lin_eq, lm.R, lm.G, p);
    worst_linear = std::max(worst_linear, ns.gap);
  }
  ok = ok && worst_linear <= 1e-14;

  const SpecificDemand specific(kS0, kF0);
  const Equilibrium sp_eq = closed_form_equilibrium(kS0, kF0);
  for (Parameter p : {Parameter::c_bar_L, Parameter::R, Parameter::G}) {
    const NonspecificStatics ns =
        nonspecific_statics(specific, sp_eq, kS0.R, kS0.G, p);
    const StaticsReport rep = specific_statics(kS0, kF0, p);
    worst_specific = std::max({worst_specific, std::fabs(ns.full.U - rep.dP.U),
                               std::fabs(ns.full.L - rep.dP.L)});
  }
  ok = ok && worst_specific <= 1e-8;

  std::ostringstream d;
  d << "linear: full vs approximate gap " << format_sig12(worst_linear)
    << " (tol 1e-14); specific through the generic path vs closed forms "
    << format_sig12(worst_specific) << " (tol 1e-8)";
  report(8, "generic statics machinery", ok, d.str());
}

}  // namespace

int main() {
  criterion_closed_form();
  criterion_price_ordering();
  criterion_profit_divergence();
  criterion_guidance_signs();
  criterion_descent();
  criterion_first_stage();
  criterion_extended();
  criterion_generic_machinery();

  int failed = 0;
  for (const auto& c : g_results) failed += c.pass ? 0 : 1;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(g_results.size()) - failed,
              g_results.size());
  return failed == 0 ? 0 : 1;
}
