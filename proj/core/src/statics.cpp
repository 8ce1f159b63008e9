#include "foodex/statics.hpp"

#include <cmath>

#include "foodex/numeric.hpp"

namespace foodex {

namespace {

int sign_of(double x, double tol = 1e-12) {
  if (x > tol) return 1;
  if (x < -tol) return -1;
  return 0;
}

PropositionVerdict greater(std::string claim, double lhs, double rhs) {
  PropositionVerdict v;
  v.claim = std::move(claim);
  v.lhs = lhs;
  v.rhs = rhs;
  v.pass = lhs > rhs;
  return v;
}

}  // namespace

const char* parameter_name(Parameter p) {
  switch (p) {
    case Parameter::c_bar_L: return "c_bar_L";
    case Parameter::R: return "R";
    case Parameter::G: return "G";
  }
  return "?";
}

StaticsReport specific_statics(const MarketPrimitives& prims,
                               const PolicyFunctions& funcs, Parameter param) {
  const Equilibrium eq = closed_form_equilibrium(prims, funcs);
  const ProbEval prob = eval_prob(funcs, prims.G);
  const AlphaEval alpha = eval_alpha(funcs, prims.R, prims.G);
  const UnitCosts costs = unit_costs(prims, funcs);

  const double S = prob.value * prims.R;          // P(G) R
  const double wedge = prims.c_bar_L + alpha.value;

  StaticsReport rep;
  rep.param = param;

  switch (param) {
    case Parameter::c_bar_L: {
      rep.dP = {1.0 / 3.0, 2.0 / 3.0};
      rep.dX = {1.0 / (3.0 * S), -1.0 / (3.0 * S)};
      rep.dPi = {(eq.pL - prims.c_bar) / (3.0 * S),
                 -2.0 * (eq.pL - costs.cL) / (3.0 * S)};
      rep.dCS = {-rep.dP.U, -rep.dP.L};
      rep.verdicts.push_back(
          greater("dpLE/dc_bar_L > dpUE/dc_bar_L", rep.dP.L, rep.dP.U));
      rep.verdicts.push_back(greater("dpUE/dc_bar_L > 0", rep.dP.U, 0));
      rep.verdicts.push_back(greater("dXUE/dc_bar_L > 0", rep.dX.U, 0));
      rep.verdicts.push_back(greater("dXLE/dc_bar_L < 0", -rep.dX.L, 0));
      rep.verdicts.push_back(greater("dpiUE/dc_bar_L > 0", rep.dPi.U, 0));
      rep.verdicts.push_back(greater("dpiLE/dc_bar_L < 0", -rep.dPi.L, 0));
      rep.verdicts.push_back(greater("dCSU/dc_bar_L < 0", -rep.dCS.U, 0));
      rep.verdicts.push_back(greater("dCSL/dc_bar_L < 0", -rep.dCS.L, 0));
      break;
    }
    case Parameter::R: {
      const double dS = prob.value;       // d(PR)/dR
      const double dwedge = alpha.dR;
      rep.dP = {(dS + dwedge) / 3.0, 2.0 * (dS + dwedge) / 3.0};
      rep.dX = {(dwedge * S - wedge * dS) / (3.0 * S * S),
                -(dwedge * S - wedge * dS) / (3.0 * S * S)};
      // profits are (S + w)^2 / 9S and (2S - w)^2 / 9S
      rep.dPi = {(2.0 * (S + wedge) * (dS + dwedge) * S - (S + wedge) * (S + wedge) * dS) /
                     (9.0 * S * S),
                 (2.0 * (2.0 * S - wedge) * (2.0 * dS - dwedge) * S -
                  (2.0 * S - wedge) * (2.0 * S - wedge) * dS) /
                     (9.0 * S * S)};
      rep.dCS = {-rep.dP.U, dS - rep.dP.L};  // L-buyer with theta = 1
      rep.signs_indeterminate = true;        // demand/profit/CSL signs open
      rep.verdicts.push_back(greater("dpLE/dR > dpUE/dR", rep.dP.L, rep.dP.U));
      rep.verdicts.push_back(greater("dpUE/dR > 0", rep.dP.U, 0));
      rep.verdicts.push_back(greater("dCSU/dR < 0", -rep.dCS.U, 0));
      break;
    }
    case Parameter::G: {
      const double dS = prob.dG * prims.R;  // P'(G) R
      const double dwedge = alpha.dG;
      rep.dP = {(dS + dwedge) / 3.0, 2.0 * (dS + dwedge) / 3.0};
      rep.dX = {(dwedge * S - wedge * dS) / (3.0 * S * S),
                -(dwedge * S - wedge * dS) / (3.0 * S * S)};
      rep.dPi.U = (2.0 * (S + wedge) * (dS + dwedge) * S - (S + wedge) * (S + wedge) * dS) /
                  (9.0 * S * S);
      // producer L marginal profit via the envelope form: the bracketed term
      // collapses to -2/3 (pLE - cL) on the reaction curve
      {
        const double margin = eq.pL - costs.cL;
        const double term_prob =
            prob.dG * margin / prob.value * (1.0 / 3.0 + (eq.pL - eq.pU) / S);
        const double bracket = margin / 3.0 - S + (eq.pL - eq.pU);
        const double term_cost = alpha.dG * bracket / S;
        rep.dPi.L = term_prob + term_cost;
      }
      rep.dCS = {-rep.dP.U, dS - rep.dP.L};
      rep.verdicts.push_back(
          {"sign(dpUE/dG) == sign(dpLE/dG) == sign(P'R + dalpha/dG)", rep.dP.U,
           dS + dwedge,
           sign_of(rep.dP.U) == sign_of(dS + dwedge) &&
               sign_of(rep.dP.L) == sign_of(dS + dwedge)});
      rep.verdicts.push_back(greater("dXUE/dG < 0", -rep.dX.U, 0));
      rep.verdicts.push_back(greater("dXLE/dG > 0", rep.dX.L, 0));
      rep.verdicts.push_back(greater("dpiLE/dG > 0", rep.dPi.L, 0));
      break;
    }
  }

  const FdStaticsResult fd = fd_statics(
      [](const MarketPrimitives& p, const PolicyFunctions& f) {
        return closed_form_equilibrium(p, f);
      },
      prims, funcs, param);
  rep.dP_fd = fd.dP;
  rep.dX_fd = fd.dX;
  rep.dPi_fd = fd.dPi;
  rep.dCS_fd = fd.dCS;
  return rep;
}

NonspecificStatics nonspecific_statics(const DemandSystem& system,
                                       const Equilibrium& eq, double R, double G,
                                       Parameter param) {
  const DemandEval e = system.eval(eq.pU, eq.pL, R, G);
  const CostEval c = system.costs(R, G);
  const StabilityQuantities s = stability_quantities(system, eq.pU, eq.pL, R, G);
  if (!(s.detJ > 0)) {
    throw UnstableEquilibrium("nonspecific_statics: detJ <= 0 at the equilibrium");
  }

  const double j11 = s.b + e.dxU_dpU;
  const double j12 = s.a;
  const double j21 = s.c;
  const double j22 = s.d + e.dxL_dpL;
  const double det = s.detJ;
  const double mU = eq.pU - c.cU, mL = eq.pL - c.cL;

  // d(FOC_j)/d(param), exact and with mixed curvature terms dropped.
  double rhsU_full = 0, rhsL_full = 0, rhsU_approx = 0, rhsL_approx = 0;
  switch (param) {
    case Parameter::c_bar_L:
      rhsL_full = -e.dxL_dpL * c.dcL_dcbarL;
      rhsU_approx = rhsU_full;
      rhsL_approx = rhsL_full;
      break;
    case Parameter::R:
      rhsU_full = e.d2xU_dpU_dR * mU + e.dxU_dR;
      rhsL_full = e.d2xL_dpL_dR * mL - e.dxL_dpL * c.dcL_dR + e.dxL_dR;
      rhsU_approx = e.dxU_dR;
      rhsL_approx = -e.dxL_dpL * c.dcL_dR + e.dxL_dR;
      break;
    case Parameter::G:
      rhsU_full = e.d2xU_dpU_dG * mU + e.dxU_dG;
      rhsL_full = e.d2xL_dpL_dG * mL - e.dxL_dpL * c.dcL_dG + e.dxL_dG;
      rhsU_approx = e.dxU_dG;
      rhsL_approx = -e.dxL_dpL * c.dcL_dG + e.dxL_dG;
      break;
  }

  auto cramer = [&](double rU, double rL) {
    return DerivPair{(-j22 * rU + j12 * rL) / det, (j21 * rU - j11 * rL) / det};
  };

  NonspecificStatics out;
  out.full = cramer(rhsU_full, rhsL_full);
  out.approx = cramer(rhsU_approx, rhsL_approx);
  out.detJ = det;
  out.gap = std::max(std::fabs(out.full.U - out.approx.U),
                     std::fabs(out.full.L - out.approx.L));
  return out;
}

namespace {

struct Outputs {
  double pU, pL, xU, xL, piU, piL, csU, csL1, agg;
};

Outputs outputs_at(const SolveFn& solve, MarketPrimitives prims,
                   const PolicyFunctions& funcs, Parameter param, double x) {
  switch (param) {
    case Parameter::c_bar_L: prims.c_bar_L = x; break;
    case Parameter::R: prims.R = x; break;
    case Parameter::G: prims.G = x; break;
  }
  const Equilibrium eq = solve(prims, funcs);
  const SurplusEval cs = consumer_surplus(prims, funcs, eq.pU, eq.pL, 1.0);
  const AggregateSurplus agg = aggregate_surplus(prims, funcs, eq.pU, eq.pL);
  return {eq.pU, eq.pL, eq.xU, eq.xL, eq.profitU, eq.profitL,
          cs.csU, cs.csL, agg.value};
}

}  // namespace

FdStaticsResult fd_statics(const SolveFn& solve, const MarketPrimitives& prims,
                           const PolicyFunctions& funcs, Parameter param,
                           double step) {
  double x0 = 0;
  bool strict_lower = false;  // R must stay strictly positive
  switch (param) {
    case Parameter::c_bar_L: x0 = prims.c_bar_L; break;
    case Parameter::R: x0 = prims.R; strict_lower = true; break;
    case Parameter::G: x0 = prims.G; break;
  }
  const double h = step;
  const bool edge = strict_lower ? (x0 - h <= 0) : (x0 - h < 0);

  auto at = [&](double x) { return outputs_at(solve, prims, funcs, param, x); };

  FdStaticsResult out;
  out.one_sided = edge;
  Outputs d{};
  if (edge) {
    const Outputs f0 = at(x0), f1 = at(x0 + h), f2 = at(x0 + 2 * h);
    auto diff = [&](double a0, double a1, double a2) {
      return (-3 * a0 + 4 * a1 - a2) / (2 * h);
    };
    d = {diff(f0.pU, f1.pU, f2.pU),   diff(f0.pL, f1.pL, f2.pL),
         diff(f0.xU, f1.xU, f2.xU),   diff(f0.xL, f1.xL, f2.xL),
         diff(f0.piU, f1.piU, f2.piU), diff(f0.piL, f1.piL, f2.piL),
         diff(f0.csU, f1.csU, f2.csU), diff(f0.csL1, f1.csL1, f2.csL1),
         diff(f0.agg, f1.agg, f2.agg)};
  } else {
    const Outputs hi = at(x0 + h), lo = at(x0 - h);
    auto diff = [&](double a, double b) { return (a - b) / (2 * h); };
    d = {diff(hi.pU, lo.pU),   diff(hi.pL, lo.pL),   diff(hi.xU, lo.xU),
         diff(hi.xL, lo.xL),   diff(hi.piU, lo.piU), diff(hi.piL, lo.piL),
         diff(hi.csU, lo.csU), diff(hi.csL1, lo.csL1), diff(hi.agg, lo.agg)};
  }
  out.dP = {d.pU, d.pL};
  out.dX = {d.xU, d.xL};
  out.dPi = {d.piU, d.piL};
  out.dCS = {d.csU, d.csL1};
  out.d_aggregate = d.agg;
  return out;
}

std::vector<PropositionVerdict> proposition_suite(const MarketPrimitives& prims,
                                                  const PolicyFunctions& funcs) {
  std::vector<PropositionVerdict> all;
  for (Parameter param : {Parameter::c_bar_L, Parameter::R, Parameter::G}) {
    StaticsReport rep = specific_statics(prims, funcs, param);
    for (auto& v : rep.verdicts) {
      v.claim = std::string(parameter_name(param)) + ": " + v.claim;
      all.push_back(std::move(v));
    }
  }
  return all;
}

}  // namespace foodex
