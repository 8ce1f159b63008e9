#include "foodex/extended.hpp"

#include <cmath>
#include <sstream>

namespace foodex {

namespace {

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Solve m x = rhs by Cramer's rule.
std::array<double, 3> solve3(const std::array<std::array<double, 3>, 3>& m,
                             const std::array<double, 3>& rhs) {
  const double det = det3(m);
  if (det == 0) throw SingularSystem("extended statics: singular 3x3 system");
  std::array<double, 3> x{};
  for (int col = 0; col < 3; ++col) {
    auto mc = m;
    for (int row = 0; row < 3; ++row) mc[row][col] = rhs[row];
    x[col] = det3(mc) / det;
  }
  return x;
}

std::array<std::array<double, 3>, 3> system_matrix(double P, double dalpha_dR) {
  return {{{-2, 1, 0}, {1, -2, P + dalpha_dR}, {-1, 1, -dalpha_dR}}};
}

}  // namespace

ExtendedEquilibrium solve_extended(const MarketPrimitives& prims,
                                   const PolicyFunctions& funcs) {
  prims.validate();
  funcs.validate();

  const double P = eval_prob(funcs, prims.G).value;
  // dalpha/dR is R-independent for the linear-in-R family; evaluate at any R.
  const double A = eval_alpha(funcs, prims.R, prims.G).dR;
  const double denom = 2.0 * A - P;

  if (denom == 0)
    throw SingularSystem("solve_extended: 2 dalpha/dR = P(G), system singular");
  if (denom < 0) {
    std::ostringstream os;
    os << "solve_extended: no interior solution, 2 dalpha/dR = " << 2.0 * A
       << " < P(G) = " << P << " makes R_E <= 0";
    throw NoInteriorSolution(os.str());
  }
  if (prims.c_bar_L <= 0) {
    throw NoInteriorSolution(
        "solve_extended: no interior solution, c_bar_L = 0 gives R_E = 0");
  }

  ExtendedEquilibrium eq;
  eq.R_E = prims.c_bar_L / denom;
  eq.pL = prims.c_bar + 2.0 * A * eq.R_E;
  eq.pU = 0.5 * (eq.pL + prims.c_bar);
  eq.detJ3 = P - 2.0 * A;

  const double S = P * eq.R_E;
  const AlphaEval alpha = eval_alpha(funcs, eq.R_E, prims.G);
  const double cL = prims.c_bar + prims.c_bar_L + alpha.value;
  eq.xU = (eq.pL - eq.pU) / S;
  eq.xL = 1.0 - eq.xU;
  eq.profitU = (eq.pU - prims.c_bar) * eq.xU;
  eq.profitL = (eq.pL - cL) * eq.xL;

  // d2 profitL / dR2 = -(pL - pU)/(P R^2) [dalpha/dR + 2 (pL - cL)/R]
  eq.d2piL_dR2 = -(eq.pL - eq.pU) / (P * eq.R_E * eq.R_E) *
                 (alpha.dR + 2.0 * (eq.pL - cL) / eq.R_E);
  eq.soc_ok = eq.d2piL_dR2 < 0;

  MarketPrimitives at_RE = prims;
  at_RE.R = eq.R_E;
  eq.conditions = thresholds(at_RE, funcs, eq.pU, eq.pL);

  eq.residual_price_U = eq.pU - 0.5 * (eq.pL + prims.c_bar);
  eq.residual_price_L = eq.pL - 0.5 * (S + eq.pU + cL);
  eq.residual_added_value = (eq.pL - eq.pU) / eq.R_E - alpha.dR;
  return eq;
}

ExtendedJacobian extended_jacobian(const MarketPrimitives& prims,
                                   const PolicyFunctions& funcs,
                                   const ExtendedEquilibrium& eq) {
  const double P = eval_prob(funcs, prims.G).value;
  const double A = eval_alpha(funcs, eq.R_E > 0 ? eq.R_E : prims.R, prims.G).dR;

  ExtendedJacobian j;
  j.matrix = system_matrix(P, A);
  j.det_raw = det3(j.matrix);
  j.detJ3 = P - 2.0 * A;
  j.ratio = j.detJ3 != 0 ? j.det_raw / j.detJ3 : 0;
  return j;
}

ExtendedStatics extended_statics_cbarL(const MarketPrimitives& prims,
                                       const PolicyFunctions& funcs) {
  const ExtendedEquilibrium base = solve_extended(prims, funcs);
  const double P = eval_prob(funcs, prims.G).value;
  const double A = eval_alpha(funcs, base.R_E, prims.G).dR;
  const double detJ3 = P - 2.0 * A;

  ExtendedStatics out;
  const auto x = solve3(system_matrix(P, A), {0, -1, 0});
  out.dpU = x[0];
  out.dpL = x[1];
  out.dR = x[2];

  // Displayed textbook forms, evaluated for comparison only.
  out.displayed_dpU = A / detJ3;
  out.displayed_dpL = -2.0 * A / detJ3;
  out.displayed_dR = -1.0 / detJ3;
  const double tol = 1e-9;
  out.displayed_matches_dpU = std::fabs(out.displayed_dpU - out.dpU) <= tol;
  out.displayed_matches_dpL = std::fabs(out.displayed_dpL - out.dpL) <= tol;
  out.displayed_matches_dR = std::fabs(out.displayed_dR - out.dR) <= tol;

  // Re-solve finite differences (central; one-sided at c_bar_L ~ 0).
  const double h = 1e-5;
  auto at = [&](double cl) {
    MarketPrimitives p = prims;
    p.c_bar_L = cl;
    return solve_extended(p, funcs);
  };
  if (prims.c_bar_L - h > 0) {
    const ExtendedEquilibrium hi = at(prims.c_bar_L + h), lo = at(prims.c_bar_L - h);
    out.fd_dpU = (hi.pU - lo.pU) / (2 * h);
    out.fd_dpL = (hi.pL - lo.pL) / (2 * h);
    out.fd_dR = (hi.R_E - lo.R_E) / (2 * h);
    out.dxU_fd = (hi.xU - lo.xU) / (2 * h);
    out.dxL_fd = (hi.xL - lo.xL) / (2 * h);
  } else {
    const ExtendedEquilibrium f1 = at(prims.c_bar_L + h), f2 = at(prims.c_bar_L + 2 * h);
    auto fwd = [&](double a0, double a1, double a2) {
      return (-3 * a0 + 4 * a1 - a2) / (2 * h);
    };
    out.fd_dpU = fwd(base.pU, f1.pU, f2.pU);
    out.fd_dpL = fwd(base.pL, f1.pL, f2.pL);
    out.fd_dR = fwd(base.R_E, f1.R_E, f2.R_E);
    out.dxU_fd = fwd(base.xU, f1.xU, f2.xU);
    out.dxL_fd = fwd(base.xL, f1.xL, f2.xL);
  }
  return out;
}

ExtendedStaticsG extended_statics_G(const MarketPrimitives& prims,
                                    const PolicyFunctions& funcs) {
  const ExtendedEquilibrium base = solve_extended(prims, funcs);
  const ProbEval prob = eval_prob(funcs, prims.G);
  const AlphaEval alpha = eval_alpha(funcs, base.R_E, prims.G);
  // d2 alpha / dR dG for the exponential-decay family
  const double dalphaR_dG = -funcs.alpha.lambda_alpha * alpha.dR;

  ExtendedStaticsG out;
  const auto x = solve3(system_matrix(prob.value, alpha.dR),
                        {0, -(prob.dG * base.R_E + alpha.dG),
                         dalphaR_dG * base.R_E});
  out.dpU = x[0];
  out.dpL = x[1];
  out.dR = x[2];

  const double h = 1e-5;
  auto at = [&](double g) {
    MarketPrimitives p = prims;
    p.G = g;
    return solve_extended(p, funcs);
  };
  out.one_sided = prims.G - h < 0;
  if (out.one_sided) {
    const ExtendedEquilibrium f1 = at(prims.G + h), f2 = at(prims.G + 2 * h);
    auto fwd = [&](double a0, double a1, double a2) {
      return (-3 * a0 + 4 * a1 - a2) / (2 * h);
    };
    out.fd_dpU = fwd(base.pU, f1.pU, f2.pU);
    out.fd_dpL = fwd(base.pL, f1.pL, f2.pL);
    out.fd_dR = fwd(base.R_E, f1.R_E, f2.R_E);
  } else {
    const ExtendedEquilibrium hi = at(prims.G + h), lo = at(prims.G - h);
    out.fd_dpU = (hi.pU - lo.pU) / (2 * h);
    out.fd_dpL = (hi.pL - lo.pL) / (2 * h);
    out.fd_dR = (hi.R_E - lo.R_E) / (2 * h);
  }
  return out;
}

std::vector<TripleSignCase> extended_ar_sweep(const MarketPrimitives& prims,
                                              const PolicyFunctions& funcs,
                                              double a_R_from, double a_R_to,
                                              int steps) {
  if (steps < 2) throw std::invalid_argument("extended_ar_sweep: steps must be >= 2");
  const double P = eval_prob(funcs, prims.G).value;
  const double decay = std::exp(-funcs.alpha.lambda_alpha * prims.G);

  std::vector<TripleSignCase> out;
  out.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double a_R = a_R_from + (a_R_to - a_R_from) * i / (steps - 1);
    TripleSignCase c;
    c.a_R = a_R;
    const double A = a_R * decay;
    c.two_dalpha_dR = 2.0 * A;
    if (c.two_dalpha_dR != P) {
      const auto x = solve3(system_matrix(P, A), {0, -1, 0});
      c.dpU = x[0];
      c.dpL = x[1];
      c.dR = x[2];
      c.interior = c.two_dalpha_dR > P && prims.c_bar_L > 0;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace foodex
