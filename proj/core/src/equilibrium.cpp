#include "foodex/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "foodex/numeric.hpp"

namespace foodex {

namespace {

struct Foc {
  double fU, fL;
};

// First-order conditions dprofit_j / dp_j = dx_j/dp_j (p_j - c_j) + x_j.
Foc foc_values(const DemandSystem& sys, double pU, double pL, double R, double G) {
  const DemandEval e = sys.eval(pU, pL, R, G);
  const CostEval c = sys.costs(R, G);
  return {e.dxU_dpU * (pU - c.cU) + e.xU, e.dxL_dpL * (pL - c.cL) + e.xL};
}

struct FocJacobian {
  double j11, j12, j21, j22;
  double det() const { return j11 * j22 - j12 * j21; }
};

FocJacobian foc_jacobian(const DemandSystem& sys, double pU, double pL,
                         double R, double G) {
  const DemandEval e = sys.eval(pU, pL, R, G);
  const CostEval c = sys.costs(R, G);
  const double mU = pU - c.cU, mL = pL - c.cL;
  return {2 * e.dxU_dpU + e.d2xU_dpUpU * mU, e.dxU_dpL + e.d2xU_dpUpL * mU,
          e.dxL_dpU + e.d2xL_dpUpL * mL, 2 * e.dxL_dpL + e.d2xL_dpLpL * mL};
}

Equilibrium finish(const DemandSystem& sys, const MarketPrimitives& prims,
                   const PolicyFunctions& funcs, double pU, double pL,
                   SolveMethod method, SolveStatus status, int iterations) {
  const DemandEval e = sys.eval(pU, pL, prims.R, prims.G);
  const CostEval c = sys.costs(prims.R, prims.G);
  const Foc f = foc_values(sys, pU, pL, prims.R, prims.G);

  Equilibrium eq;
  eq.pU = pU;
  eq.pL = pL;
  eq.xU = e.xU;
  eq.xL = e.xL;
  eq.profitU = (pU - c.cU) * e.xU;
  eq.profitL = (pL - c.cL) * e.xL;
  eq.conditions = thresholds(prims, funcs, pU, pL);
  eq.method = method;
  eq.status = status;
  eq.residual = std::max(std::fabs(f.fU), std::fabs(f.fL));
  eq.iterations = iterations;
  return eq;
}

std::array<double, 2> default_init(const DemandSystem& sys, double R, double G) {
  const CostEval c = sys.costs(R, G);
  return {c.cU + 0.1, c.cL + 0.1};
}

}  // namespace

Equilibrium closed_form_equilibrium(const MarketPrimitives& prims,
                                    const PolicyFunctions& funcs) {
  const SpecificDemand sys(prims, funcs);
  const double S = eval_prob(funcs, prims.G).value * prims.R;
  const double wedge = prims.c_bar_L + eval_alpha(funcs, prims.R, prims.G).value;
  const double pU = (S + wedge) / 3.0 + prims.c_bar;
  const double pL = 2.0 * (S + wedge) / 3.0 + prims.c_bar;
  return finish(sys, prims, funcs, pU, pL, SolveMethod::closed_form,
                SolveStatus::ok, 0);
}

NoBestResponse::NoBestResponse(Producer who, double lo, double hi)
    : Error([&] {
        std::ostringstream os;
        os << "no best response for producer " << (who == Producer::U ? 'U' : 'L')
           << ": no sign change of the first-order condition in [" << lo << ", "
           << hi << "]";
        return os.str();
      }()),
      searched_lo(lo),
      searched_hi(hi) {}

double best_response(const DemandSystem& system, Producer who, double rival,
                     double R, double G, std::optional<double> hint) {
  if (!std::isfinite(rival))
    throw std::invalid_argument("best_response: rival price must be finite");
  if (auto exact = system.exact_best_response(who, rival, R, G)) return *exact;

  const CostEval costs = system.costs(R, G);
  const double own_cost = who == Producer::U ? costs.cU : costs.cL;

  auto phi = [&](double p) {
    const Foc f = who == Producer::U
                      ? foc_values(system, p, rival, R, G)
                      : foc_values(system, rival, p, R, G);
    return who == Producer::U ? f.fU : f.fL;
  };
  auto dphi = [&](double p) {
    const FocJacobian j = who == Producer::U
                              ? foc_jacobian(system, p, rival, R, G)
                              : foc_jacobian(system, rival, p, R, G);
    return who == Producer::U ? j.j11 : j.j22;
  };

  constexpr double tol = 1e-10;

  // Newton from the hint (or just above cost); falls back to a bracketed
  // bisection when the iteration stalls or leaves the finite range.  At
  // least one step runs so a warm start near the root still gets polished.
  double p = hint.value_or(own_cost + 0.5);
  for (int it = 0; it < 60; ++it) {
    const double f = phi(p);
    if (it > 0 && std::fabs(f) <= tol) return p;
    const double d = dphi(p);
    if (d == 0 || !std::isfinite(d)) break;
    const double next = p - f / d;
    if (!std::isfinite(next)) break;
    p = next;
  }
  if (std::fabs(phi(p)) <= tol) return p;

  double width = 4.0 * std::max({1.0, std::fabs(rival - own_cost), std::fabs(own_cost)});
  for (int attempt = 0; attempt < 3; ++attempt, width *= 4.0) {
    const double lo = own_cost - width, hi = own_cost + width;
    const auto brackets = scan_sign_changes(phi, lo, hi, 1024);
    if (brackets.empty()) continue;
    double root = bisect_root(phi, brackets.front().lo, brackets.front().hi);
    for (int it = 0; it < 5 && std::fabs(phi(root)) > tol; ++it) {
      const double d = dphi(root);
      if (d == 0) break;
      root -= phi(root) / d;
    }
    return root;
  }
  throw NoBestResponse(who, own_cost - width / 4.0, own_cost + width / 4.0);
}

Equilibrium solve_iterative(const DemandSystem& system,
                            const MarketPrimitives& prims,
                            const PolicyFunctions& funcs,
                            IterativeOptions options) {
  if (!(options.damping > 0 && options.damping <= 1))
    throw std::invalid_argument("solve_iterative: damping must be in (0, 1]");
  if (!(options.tol > 0))
    throw std::invalid_argument("solve_iterative: tol must be > 0");

  auto p = options.init.value_or(default_init(system, prims.R, prims.G));
  if (!std::isfinite(p[0]) || !std::isfinite(p[1]))
    throw std::invalid_argument("solve_iterative: init prices must be finite");

  const double lambda = options.damping;
  int it = 0;
  for (; it < options.max_iter; ++it) {
    const double brU = best_response(system, Producer::U, p[1], prims.R, prims.G, p[0]);
    const double brL = best_response(system, Producer::L, p[0], prims.R, prims.G, p[1]);
    const std::array<double, 2> next = {(1 - lambda) * p[0] + lambda * brU,
                                        (1 - lambda) * p[1] + lambda * brL};
    const double change =
        std::max(std::fabs(next[0] - p[0]), std::fabs(next[1] - p[1]));
    p = next;
    if (change < options.tol) {
      return finish(system, prims, funcs, p[0], p[1], SolveMethod::iterative,
                    SolveStatus::ok, it + 1);
    }
  }
  return finish(system, prims, funcs, p[0], p[1], SolveMethod::iterative,
                SolveStatus::no_convergence, it);
}

Equilibrium solve_newton(const DemandSystem& system,
                         const MarketPrimitives& prims,
                         const PolicyFunctions& funcs, NewtonOptions options) {
  auto p = options.init.value_or(default_init(system, prims.R, prims.G));
  if (!std::isfinite(p[0]) || !std::isfinite(p[1]))
    throw std::invalid_argument("solve_newton: init prices must be finite");

  auto residual_at = [&](const std::array<double, 2>& x) {
    const Foc f = foc_values(system, x[0], x[1], prims.R, prims.G);
    return std::max(std::fabs(f.fU), std::fabs(f.fL));
  };

  double res = residual_at(p);
  int it = 0;
  for (; it < options.max_iter && res > options.tol; ++it) {
    const Foc f = foc_values(system, p[0], p[1], prims.R, prims.G);
    const FocJacobian j = foc_jacobian(system, p[0], p[1], prims.R, prims.G);
    const double det = j.det();
    if (std::fabs(det) < 1e-14) {
      return finish(system, prims, funcs, p[0], p[1], SolveMethod::newton,
                    SolveStatus::singular_jacobian, it);
    }
    const std::array<double, 2> next = {p[0] - (j.j22 * f.fU - j.j12 * f.fL) / det,
                                        p[1] - (-j.j21 * f.fU + j.j11 * f.fL) / det};
    if (!std::isfinite(next[0]) || !std::isfinite(next[1])) {
      return finish(system, prims, funcs, p[0], p[1], SolveMethod::newton,
                    SolveStatus::no_convergence, it);
    }
    p = next;
    res = residual_at(p);
  }
  return finish(system, prims, funcs, p[0], p[1], SolveMethod::newton,
                res <= options.tol ? SolveStatus::ok : SolveStatus::no_convergence,
                it);
}

StabilityQuantities stability_quantities(const DemandSystem& system, double pU,
                                         double pL, double R, double G) {
  const DemandEval e = system.eval(pU, pL, R, G);
  const CostEval costs = system.costs(R, G);
  const double mU = pU - costs.cU, mL = pL - costs.cL;

  StabilityQuantities s;
  s.a = e.dxU_dpL + e.d2xU_dpUpL * mU;
  s.b = e.dxU_dpU + e.d2xU_dpUpU * mU;
  s.c = e.dxL_dpU + e.d2xL_dpUpL * mL;
  s.d = e.dxL_dpL + e.d2xL_dpLpL * mL;
  s.detJ = (s.b + e.dxU_dpU) * (s.d + e.dxL_dpL) - s.a * s.c;
  s.cond4_strict = s.a > 0 && s.a < -s.b && s.c > 0 && s.c < -s.d;
  s.cond4_weak = s.a > 0 && s.a <= -s.b && s.c > 0 && s.c <= -s.d;

  const double den_U = s.b + e.dxU_dpU;
  if (den_U != 0) s.slope_U = -s.a / den_U;
  if (s.c != 0) s.slope_L = -(s.d + e.dxL_dpL) / s.c;
  return s;
}

std::vector<ReactionPoint> reaction_curve_points(const DemandSystem& system,
                                                 Producer who,
                                                 std::span<const double> rival_grid,
                                                 double R, double G) {
  std::vector<ReactionPoint> out;
  out.reserve(rival_grid.size());
  for (double rival : rival_grid) {
    ReactionPoint pt;
    pt.rival = rival;
    try {
      pt.response = best_response(system, who, rival, R, G);
      pt.ok = true;
    } catch (const NoBestResponse&) {
      pt.ok = false;
    }
    out.push_back(pt);
  }
  return out;
}

namespace {

// Contour slope of the iso-profit curve (d dependent / d anchor); the
// numerator is the producer's own first-order condition, so the slope
// vanishes on the reaction curve.
double iso_profit_slope(const DemandEval& e, const CostEval& c, Producer who,
                        double pU, double pL) {
  if (who == Producer::U) {
    const double mU = pU - c.cU;
    return -(e.xU + mU * e.dxU_dpU) / (mU * e.dxU_dpL);
  }
  const double mL = pL - c.cL;
  return -(e.xL + mL * e.dxL_dpL) / (mL * e.dxL_dpU);
}

// Change of the contour slope along the contour (generic expression).
double iso_profit_curvature_generic(const DemandSystem& sys, Producer who,
                                    double pU, double pL, double R, double G) {
  const DemandEval e = sys.eval(pU, pL, R, G);
  const CostEval c = sys.costs(R, G);
  const StabilityQuantities s = stability_quantities(sys, pU, pL, R, G);
  if (who == Producer::U) {
    const double mU = pU - c.cU;
    const double foc = e.xU + mU * e.dxU_dpU;
    const double num = -(e.dxU_dpU + s.b) * mU * e.dxU_dpL * e.dxU_dpL +
                       2 * s.a * e.dxU_dpL * foc - foc * foc * e.d2xU_dpLpL;
    return num / (mU * mU * e.dxU_dpL * e.dxU_dpL * e.dxU_dpL);
  }
  const double mL = pL - c.cL;
  const double foc = e.xL + mL * e.dxL_dpL;
  const double num = -(e.dxL_dpL + s.d) * mL * e.dxL_dpU * e.dxL_dpU +
                     2 * s.c * e.dxL_dpU * foc - foc * foc * e.d2xL_dpUpU;
  return num / (mL * mL * e.dxL_dpU * e.dxL_dpU * e.dxL_dpU);
}

}  // namespace

std::vector<IsoProfitPoint> iso_profit_points(const DemandSystem& system,
                                              Producer who, double level,
                                              std::span<const double> anchor_grid,
                                              double R, double G) {
  std::vector<IsoProfitPoint> out;
  out.reserve(anchor_grid.size());

  for (double anchor : anchor_grid) {
    IsoProfitPoint pt;
    pt.anchor = anchor;

    auto profit_gap = [&](double dep) {
      const double pU = who == Producer::U ? anchor : dep;
      const double pL = who == Producer::U ? dep : anchor;
      const DemandEval e = system.eval(pU, pL, R, G);
      const CostEval c = system.costs(R, G);
      const double pi = who == Producer::U ? (pU - c.cU) * e.xU : (pL - c.cL) * e.xL;
      return pi - level;
    };

    const double width = 10.0 * std::max(1.0, std::fabs(level)) +
                         2.0 * std::fabs(anchor);
    const auto brackets =
        scan_sign_changes(profit_gap, anchor - width, anchor + width, 2048);
    if (brackets.empty()) {
      out.push_back(pt);  // unattainable at this anchor; flagged by ok=false
      continue;
    }
    pt.dependent = bisect_root(profit_gap, brackets.front().lo, brackets.front().hi);
    pt.ok = true;

    const double pU = who == Producer::U ? anchor : pt.dependent;
    const double pL = who == Producer::U ? pt.dependent : anchor;
    const DemandEval e = system.eval(pU, pL, R, G);
    const CostEval c = system.costs(R, G);
    pt.slope = iso_profit_slope(e, c, who, pU, pL);
    pt.curvature_generic = iso_profit_curvature_generic(system, who, pU, pL, R, G);
    pt.curvature_closed =
        system.iso_profit_curvature_closed_form(who, level, anchor, R, G);
    out.push_back(pt);
  }
  return out;
}

}  // namespace foodex
