#ifndef FOODEX_EXTENDED_HPP
#define FOODEX_EXTENDED_HPP

#include <array>
#include <vector>

#include "foodex/model.hpp"

namespace foodex {

// Variant of the second stage in which producer L chooses the added value R
// together with its price.  With alpha linear in R the three stacked
// optimality conditions reduce to
//   R_E  = c_bar_L / (2 dalpha/dR - P(G)),
//   p_LE = c_bar + 2 R_E dalpha/dR,
//   p_UE = (p_LE + c_bar) / 2,
// which has an interior solution only when 2 dalpha/dR > P(G).

class NoInteriorSolution : public Error {
 public:
  using Error::Error;
};
class SingularSystem : public Error {
 public:
  using Error::Error;
};

struct ExtendedEquilibrium {
  double pU = 0, pL = 0;
  double R_E = 0;  // chosen added value (> 0)
  double xU = 0, xL = 0;
  double profitU = 0, profitL = 0;
  double detJ3 = 0;   // P(G) - 2 dalpha/dR
  bool soc_ok = false;  // d2 profitL / dR2 < 0
  double d2piL_dR2 = 0;
  ConditionReport conditions;
  // Residuals of the two price optimality conditions and the reduced
  // added-value condition (pL - pU)/R = dalpha/dR.
  double residual_price_U = 0, residual_price_L = 0, residual_added_value = 0;
};

/// Throws NoInteriorSolution (naming the failed inequality) or
/// SingularSystem (2 dalpha/dR = P(G)).
ExtendedEquilibrium solve_extended(const MarketPrimitives& prims,
                                   const PolicyFunctions& funcs);

struct ExtendedJacobian {
  std::array<std::array<double, 3>, 3> matrix{};
  double det_raw = 0;  // determinant of the assembled 3x3 system
  double detJ3 = 0;    // reduced form P(G) - 2 dalpha/dR
  double ratio = 0;    // det_raw / detJ3 (1 when both agree)
};
ExtendedJacobian extended_jacobian(const MarketPrimitives& prims,
                                   const PolicyFunctions& funcs,
                                   const ExtendedEquilibrium& eq);

// Location-cost comparative statics of the extended equilibrium.  The
// direct 3x3 solve is ground truth; the displayed textbook expressions
// (dalpha/dR / detJ3, -2 dalpha/dR / detJ3, -1 / detJ3) are evaluated and
// compared against it rather than trusted.
struct ExtendedStatics {
  double dpU = 0, dpL = 0, dR = 0;           // direct linear-system solve
  double fd_dpU = 0, fd_dpL = 0, fd_dR = 0;  // re-solve finite differences
  double displayed_dpU = 0, displayed_dpL = 0, displayed_dR = 0;
  bool displayed_matches_dpU = false;
  bool displayed_matches_dpL = false;
  bool displayed_matches_dR = false;
  double dxU_fd = 0;  // demand invariance: should vanish
  double dxL_fd = 0;
};
ExtendedStatics extended_statics_cbarL(const MarketPrimitives& prims,
                                       const PolicyFunctions& funcs);

// Guidance statics of the extended equilibrium, numerical only: the model
// pins no signs here.  The 3x3 solve with the guidance right-hand side and
// re-solve finite differences are both reported as a two-route check.
struct ExtendedStaticsG {
  double dpU = 0, dpL = 0, dR = 0;           // 3x3 solve
  double fd_dpU = 0, fd_dpL = 0, fd_dR = 0;  // re-solve finite differences
  bool one_sided = false;                    // G = 0 edge stencil used
};
ExtendedStaticsG extended_statics_G(const MarketPrimitives& prims,
                                    const PolicyFunctions& funcs);

// Sign-case sweep over a_R: the derivative triple (dpU, dpL, dR)/dc_bar_L
// from the 3x3 solve flips sign exactly where 2 dalpha/dR crosses P(G).
struct TripleSignCase {
  double a_R = 0;
  double two_dalpha_dR = 0;  // 2 dalpha/dR at this a_R
  double dpU = 0, dpL = 0, dR = 0;
  bool interior = false;  // an interior equilibrium exists here
};
std::vector<TripleSignCase> extended_ar_sweep(const MarketPrimitives& prims,
                                              const PolicyFunctions& funcs,
                                              double a_R_from, double a_R_to,
                                              int steps);

}  // namespace foodex

#endif  // FOODEX_EXTENDED_HPP
