#include "foodex/demand.hpp"

#include <cmath>

namespace foodex {

SpecificDemand::SpecificDemand(const MarketPrimitives& prims,
                               const PolicyFunctions& funcs)
    : prims_(prims), funcs_(funcs) {
  prims_.validate();
  funcs_.validate();
}

SpecificDemand specific_demand(const MarketPrimitives& prims,
                               const PolicyFunctions& funcs) {
  return SpecificDemand(prims, funcs);
}

DemandEval SpecificDemand::eval(double pU, double pL, double R, double G) const {
  const ProbEval prob = eval_prob(funcs_, G);
  const double S = prob.value * R;        // P(G) R
  const double dS_dR = prob.value;        // d(PR)/dR
  const double dS_dG = prob.dG * R;       // d(PR)/dG
  const double gap = pL - pU;
  const double S2 = S * S;

  DemandEval e;
  e.xU = gap / S;
  e.xL = 1.0 - e.xU;

  e.dxU_dpU = -1.0 / S;
  e.dxU_dpL = 1.0 / S;
  e.dxL_dpU = 1.0 / S;
  e.dxL_dpL = -1.0 / S;

  // adding-up xU + xL = 1 makes every L-partial the negative of U's
  e.dxU_dR = -gap * dS_dR / S2;
  e.dxU_dG = -gap * dS_dG / S2;
  e.dxL_dR = -e.dxU_dR;
  e.dxL_dG = -e.dxU_dG;

  e.d2xU_dpU_dR = dS_dR / S2;
  e.d2xU_dpU_dG = dS_dG / S2;
  e.d2xU_dpL_dR = -dS_dR / S2;
  e.d2xU_dpL_dG = -dS_dG / S2;
  e.d2xL_dpL_dR = dS_dR / S2;
  e.d2xL_dpL_dG = dS_dG / S2;
  e.d2xL_dpU_dR = -dS_dR / S2;
  e.d2xL_dpU_dG = -dS_dG / S2;
  return e;
}

CostEval SpecificDemand::costs(double R, double G) const {
  const AlphaEval a = eval_alpha(funcs_, R, G);
  CostEval c;
  c.cU = prims_.c_bar;
  c.cL = prims_.c_bar + prims_.c_bar_L + a.value;
  c.dcL_dcbarL = 1.0;
  c.dcL_dR = a.dR;
  c.dcL_dG = a.dG;
  return c;
}

std::optional<double> SpecificDemand::exact_best_response(Producer who,
                                                          double rival,
                                                          double R,
                                                          double G) const {
  if (who == Producer::U) return 0.5 * (rival + prims_.c_bar);
  const double S = eval_prob(funcs_, G).value * R;
  return 0.5 * (S + rival + costs(R, G).cL);
}

std::optional<double> SpecificDemand::iso_profit_curvature_closed_form(
    Producer who, double level, double anchor, double R, double G) const {
  const double S = eval_prob(funcs_, G).value * R;
  const double margin =
      who == Producer::U ? anchor - prims_.c_bar : anchor - costs(R, G).cL;
  if (margin == 0) return std::nullopt;
  return 2.0 * S * level / (margin * margin * margin);
}

void LinearDemandParams::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (!(std::isfinite(A) && A > 0)) fail("linear demand: A must be > 0");
  if (!(std::isfinite(B) && B > 0)) fail("linear demand: B must be > 0");
  if (!(std::isfinite(C) && C > 0 && C < B))
    fail("linear demand: C must satisfy 0 < C < B");
  if (!(std::isfinite(m) && m >= 0)) fail("linear demand: m must be >= 0");
  if (!(std::isfinite(n) && n >= 0)) fail("linear demand: n must be >= 0");
}

LinearDemand::LinearDemand(const LinearDemandParams& params,
                           const MarketPrimitives& prims,
                           const PolicyFunctions& funcs)
    : params_(params), prims_(prims), funcs_(funcs) {
  params_.validate();
  prims_.validate();
  funcs_.validate();
}

LinearDemand linear_demand(const LinearDemandParams& params,
                           const MarketPrimitives& prims,
                           const PolicyFunctions& funcs) {
  return LinearDemand(params, prims, funcs);
}

DemandEval LinearDemand::eval(double pU, double pL, double R, double G) const {
  const auto& p = params_;
  DemandEval e;
  e.xU = p.A - p.B * pU + p.C * pL - p.m * R - p.n * G;
  e.xL = p.A - p.B * pL + p.C * pU + p.m * R + p.n * G;
  e.dxU_dpU = -p.B;
  e.dxU_dpL = p.C;
  e.dxL_dpU = p.C;
  e.dxL_dpL = -p.B;
  e.dxU_dR = -p.m;
  e.dxU_dG = -p.n;
  e.dxL_dR = p.m;
  e.dxL_dG = p.n;
  return e;  // all second partials identically zero
}

CostEval LinearDemand::costs(double R, double G) const {
  const AlphaEval a = eval_alpha(funcs_, R, G);
  CostEval c;
  c.cU = prims_.c_bar;
  c.cL = prims_.c_bar + prims_.c_bar_L + a.value;
  c.dcL_dcbarL = 1.0;
  c.dcL_dR = a.dR;
  c.dcL_dG = a.dG;
  return c;
}

namespace {

constexpr double kFdBase = 1e-6;

double step_for(double x) { return std::max(kFdBase, kFdBase * std::fabs(x)); }

struct Pair {
  double xU, xL;
};

template <typename F>
Pair central(const F& f, double x, double h) {
  const Pair hi = f(x + h), lo = f(x - h);
  return {(hi.xU - lo.xU) / (2 * h), (hi.xL - lo.xL) / (2 * h)};
}

// Second-order forward stencil for domain edges.
template <typename F>
Pair one_sided(const F& f, double x, double h) {
  const Pair f0 = f(x), f1 = f(x + h), f2 = f(x + 2 * h);
  return {(-3 * f0.xU + 4 * f1.xU - f2.xU) / (2 * h),
          (-3 * f0.xL + 4 * f1.xL - f2.xL) / (2 * h)};
}

}  // namespace

FdDemandEval fd_partials(const DemandSystem& system, double pU, double pL,
                         double R, double G) {
  FdDemandEval out;
  DemandEval& v = out.values;
  const DemandEval exact = system.eval(pU, pL, R, G);
  v.xU = exact.xU;
  v.xL = exact.xL;

  const double hU = step_for(pU), hL = step_for(pL);
  const double hR = step_for(R), hG = step_for(G);

  auto at = [&](double u, double l, double r, double g) {
    const DemandEval e = system.eval(u, l, r, g);
    return Pair{e.xU, e.xL};
  };

  {
    auto f = [&](double x) { return at(x, pL, R, G); };
    const Pair d = central(f, pU, hU);
    v.dxU_dpU = d.xU;
    v.dxL_dpU = d.xL;
  }
  {
    auto f = [&](double x) { return at(pU, x, R, G); };
    const Pair d = central(f, pL, hL);
    v.dxU_dpL = d.xU;
    v.dxL_dpL = d.xL;
  }

  // R > 0 and G >= 0 are hard domain bounds.
  const bool r_edge = R - hR <= 0;
  const bool g_edge = G - hG < 0;
  out.one_sided = r_edge || g_edge;
  {
    auto f = [&](double x) { return at(pU, pL, x, G); };
    const Pair d = r_edge ? one_sided(f, R, hR) : central(f, R, hR);
    v.dxU_dR = d.xU;
    v.dxL_dR = d.xL;
  }
  {
    auto f = [&](double x) { return at(pU, pL, R, x); };
    const Pair d = g_edge ? one_sided(f, G, hG) : central(f, G, hG);
    v.dxU_dG = d.xU;
    v.dxL_dG = d.xL;
  }

  // Second price partials from first-partial differences.
  auto dp = [&](double u, double l) {
    const DemandEval e = system.eval(u, l, R, G);
    return e;
  };
  {
    const DemandEval hi = dp(pU + hU, pL), lo = dp(pU - hU, pL);
    v.d2xU_dpUpU = (hi.dxU_dpU - lo.dxU_dpU) / (2 * hU);
    v.d2xU_dpUpL = (hi.dxU_dpL - lo.dxU_dpL) / (2 * hU);
    v.d2xL_dpUpU = (hi.dxL_dpU - lo.dxL_dpU) / (2 * hU);
    v.d2xL_dpUpL = (hi.dxL_dpL - lo.dxL_dpL) / (2 * hU);
  }
  {
    const DemandEval hi = dp(pU, pL + hL), lo = dp(pU, pL - hL);
    v.d2xU_dpLpL = (hi.dxU_dpL - lo.dxU_dpL) / (2 * hL);
    v.d2xL_dpLpL = (hi.dxL_dpL - lo.dxL_dpL) / (2 * hL);
  }

  // Mixed price/parameter partials: difference the price partials in R / G.
  auto mixed = [&](bool edge, double x0, double h, auto evalAt) {
    DemandEval d{};
    if (edge) {
      const DemandEval f0 = evalAt(x0), f1 = evalAt(x0 + h), f2 = evalAt(x0 + 2 * h);
      auto os = [&](double a0, double a1, double a2) {
        return (-3 * a0 + 4 * a1 - a2) / (2 * h);
      };
      d.dxU_dpU = os(f0.dxU_dpU, f1.dxU_dpU, f2.dxU_dpU);
      d.dxU_dpL = os(f0.dxU_dpL, f1.dxU_dpL, f2.dxU_dpL);
      d.dxL_dpU = os(f0.dxL_dpU, f1.dxL_dpU, f2.dxL_dpU);
      d.dxL_dpL = os(f0.dxL_dpL, f1.dxL_dpL, f2.dxL_dpL);
    } else {
      const DemandEval hi = evalAt(x0 + h), lo = evalAt(x0 - h);
      d.dxU_dpU = (hi.dxU_dpU - lo.dxU_dpU) / (2 * h);
      d.dxU_dpL = (hi.dxU_dpL - lo.dxU_dpL) / (2 * h);
      d.dxL_dpU = (hi.dxL_dpU - lo.dxL_dpU) / (2 * h);
      d.dxL_dpL = (hi.dxL_dpL - lo.dxL_dpL) / (2 * h);
    }
    return d;
  };
  {
    const DemandEval d = mixed(r_edge, R, hR,
                               [&](double r) { return system.eval(pU, pL, r, G); });
    v.d2xU_dpU_dR = d.dxU_dpU;
    v.d2xU_dpL_dR = d.dxU_dpL;
    v.d2xL_dpU_dR = d.dxL_dpU;
    v.d2xL_dpL_dR = d.dxL_dpL;
  }
  {
    const DemandEval d = mixed(g_edge, G, hG,
                               [&](double g) { return system.eval(pU, pL, R, g); });
    v.d2xU_dpU_dG = d.dxU_dpU;
    v.d2xU_dpL_dG = d.dxU_dpL;
    v.d2xL_dpU_dG = d.dxL_dpU;
    v.d2xL_dpL_dG = d.dxL_dpL;
  }
  return out;
}

}  // namespace foodex
