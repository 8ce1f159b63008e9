#include "foodex/policy.hpp"

#include <algorithm>
#include <cmath>

#include "foodex/numeric.hpp"

namespace foodex {

namespace {

MarketPrimitives with_G(MarketPrimitives prims, double G) {
  prims.G = G;
  return prims;
}

}  // namespace

WelfareEval local_welfare(const MarketPrimitives& prims,
                          const PolicyFunctions& funcs, double G) {
  const Equilibrium eq = closed_form_equilibrium(with_G(prims, G), funcs);
  return {eq.profitL - eval_beta(funcs, G).value, eq.conditions.all_hold()};
}

MarginalProfit marginal_profit_G(const MarketPrimitives& prims,
                                 const PolicyFunctions& funcs, double G) {
  const MarketPrimitives p = with_G(prims, G);
  const Equilibrium eq = closed_form_equilibrium(p, funcs);
  const ProbEval prob = eval_prob(funcs, G);
  const AlphaEval alpha = eval_alpha(funcs, p.R, G);
  const UnitCosts costs = unit_costs(p, funcs);

  const double S = prob.value * p.R;
  const double margin = eq.pL - costs.cL;
  const double dpU_dG = (prob.dG * p.R + alpha.dG) / 3.0;

  MarginalProfit mp;
  mp.price_channel = margin / S * dpU_dG;
  mp.cost_cut = eq.xL * (-alpha.dG);
  mp.success_prob = margin / prob.value * (eq.pL - eq.pU) / S * prob.dG;
  mp.total = mp.price_channel + mp.cost_cut + mp.success_prob;
  return mp;
}

double golden_section_welfare_max(const MarketPrimitives& prims,
                                  const PolicyFunctions& funcs, double lo,
                                  double hi, double xtol) {
  return golden_section_max(
      [&](double g) { return local_welfare(prims, funcs, g).value; }, lo, hi,
      xtol);
}

PolicyOptimum optimize_guidance(const MarketPrimitives& prims,
                                const PolicyFunctions& funcs,
                                PolicyOptions options) {
  if (!(options.G_max > 0))
    throw std::invalid_argument("optimize_guidance: G_max must be > 0");

  auto foc = [&](double g) {
    return marginal_profit_G(prims, funcs, g).total - eval_beta(funcs, g).dG;
  };
  auto welfare = [&](double g) { return local_welfare(prims, funcs, g).value; };

  const auto brackets = scan_sign_changes(foc, 0, options.G_max,
                                          std::max(2, options.scan_points));

  PolicyOptimum opt;
  if (brackets.empty()) {
    // FOC never crosses zero: welfare is monotone, take the better boundary.
    opt.boundary = true;
    opt.G_E = foc(0) <= 0 ? 0.0 : options.G_max;
  } else {
    opt.multimodal = brackets.size() > 1;
    double best_g = 0, best_w = welfare(0);  // boundaries compete too
    if (welfare(options.G_max) > best_w) {
      best_g = options.G_max;
      best_w = welfare(options.G_max);
    }
    bool interior_best = false;
    for (const Bracket& br : brackets) {
      double root = br.lo == br.hi ? br.lo : bisect_root(foc, br.lo, br.hi, options.tol);
      // Newton polish on the FOC with a numerical slope.
      for (int it = 0; it < 4; ++it) {
        const double f = foc(root);
        if (std::fabs(f) < 1e-13) break;
        const double h = 1e-6;
        const double slope = root - h >= 0 ? central_diff(foc, root, h)
                                           : forward_diff3(foc, root, h);
        if (slope == 0) break;
        const double next = root - f / slope;
        if (next < 0 || next > options.G_max) break;
        root = next;
      }
      const double w = welfare(root);
      if (w > best_w) {
        best_g = root;
        best_w = w;
        interior_best = true;
      }
    }
    opt.G_E = best_g;
    opt.boundary = !interior_best;
  }

  opt.W_E = welfare(opt.G_E);
  opt.foc_residual = std::fabs(foc(opt.G_E));

  const double h = 1e-4;
  if (opt.G_E - h >= 0) {
    opt.rho = second_diff(welfare, opt.G_E, h);
  } else {
    opt.rho = (welfare(opt.G_E) - 2 * welfare(opt.G_E + h) + welfare(opt.G_E + 2 * h)) /
              (h * h);
  }
  opt.decomposition = marginal_profit_G(prims, funcs, opt.G_E);
  return opt;
}

double cross_partial_G_cbarL(const MarketPrimitives& prims,
                             const PolicyFunctions& funcs, double G) {
  const ProbEval prob = eval_prob(funcs, G);
  const AlphaEval alpha = eval_alpha(funcs, prims.R, G);
  const double S = prob.value * prims.R;
  const double wedge = prims.c_bar_L + alpha.value;
  // (1 / 3PR) [ 2/3 dalpha/dG - (2/3 (c_bar_L + alpha) / P) P'(G) ]
  return (2.0 / 3.0 * alpha.dG - 2.0 / 3.0 * wedge / prob.value * prob.dG) /
         (3.0 * S);
}

namespace {

ImplicitDerivative implicit_from(const PolicyOptimum& opt, double mixed_partial) {
  ImplicitDerivative d;
  d.optimum = opt;
  d.applicable = !opt.boundary && opt.rho < 0;
  if (d.applicable) d.value = -mixed_partial / opt.rho;
  return d;
}

}  // namespace

ImplicitDerivative dGE_dcbarL(const MarketPrimitives& prims,
                              const PolicyFunctions& funcs,
                              PolicyOptions options) {
  const PolicyOptimum opt = optimize_guidance(prims, funcs, options);
  return implicit_from(opt, cross_partial_G_cbarL(prims, funcs, opt.G_E));
}

ImplicitDerivative dGE_dR(const MarketPrimitives& prims,
                          const PolicyFunctions& funcs, PolicyOptions options) {
  const PolicyOptimum opt = optimize_guidance(prims, funcs, options);
  // d2 profitL / dG dR by differencing the marginal profit in R.
  const double h = std::max(1e-5, 1e-5 * prims.R);
  auto mp_at = [&](double r) {
    MarketPrimitives p = prims;
    p.R = r;
    return marginal_profit_G(p, funcs, opt.G_E).total;
  };
  const double mixed = prims.R - h > 0 ? central_diff(mp_at, prims.R, h)
                                       : forward_diff3(mp_at, prims.R, h);
  return implicit_from(opt, mixed);
}

}  // namespace foodex
