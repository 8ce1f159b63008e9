#ifndef FOODEX_POLICY_HPP
#define FOODEX_POLICY_HPP

#include "foodex/statics.hpp"

namespace foodex {

// First stage: the local government picks the guidance level G maximizing
// W(G) = profitL(G) - beta(G), where profitL(G) is producer L's profit in
// the second-stage equilibrium re-solved at G.

struct WelfareEval {
  double value = 0;
  bool conditions_ok = true;  // false = second stage left the valid region
};
WelfareEval local_welfare(const MarketPrimitives& prims,
                          const PolicyFunctions& funcs, double G);

// d profitL / dG split into its three channels: the rival-price movement,
// the unit-cost cut, and the higher success probability of the added value.
struct MarginalProfit {
  double total = 0;
  double price_channel = 0;
  double cost_cut = 0;
  double success_prob = 0;
};
MarginalProfit marginal_profit_G(const MarketPrimitives& prims,
                                 const PolicyFunctions& funcs, double G);

struct PolicyOptions {
  double G_max = 50;      // search interval [0, G_max]
  int scan_points = 200;  // pre-scan resolution for root bracketing
  double tol = 1e-12;     // bracket width tolerance for the FOC root
};

struct PolicyOptimum {
  double G_E = 0;            // optimal guidance level
  double W_E = 0;            // welfare at the optimum
  double foc_residual = 0;   // |d profitL/dG - beta'(G)| at G_E
  double rho = 0;            // d2W/dG2 at G_E (numerical)
  MarginalProfit decomposition;  // evaluated at G_E
  bool boundary = false;     // no interior root; boundary maximizer returned
  bool multimodal = false;   // several FOC roots; global maximizer returned
};
/// Locates G_E by bracketing the first-order condition
/// d profitL/dG = beta'(G), with a welfare pre-scan guarding against
/// multiple roots.
PolicyOptimum optimize_guidance(const MarketPrimitives& prims,
                                const PolicyFunctions& funcs,
                                PolicyOptions options = {});

/// Direct welfare maximization, used as an independent cross-check of the
/// first-order-condition root.
double golden_section_welfare_max(const MarketPrimitives& prims,
                                  const PolicyFunctions& funcs, double lo,
                                  double hi, double xtol = 1e-10);

/// d2 profitL / dG dc_bar_L in closed form; negative whenever
/// c_bar_L + alpha > 0 and P'(G) > 0.
double cross_partial_G_cbarL(const MarketPrimitives& prims,
                             const PolicyFunctions& funcs, double G);

struct ImplicitDerivative {
  double value = 0;
  bool applicable = false;  // false at boundary optima or rho >= 0
  PolicyOptimum optimum;    // the optimum the derivative was taken at
};
/// dG_E/dc_bar_L from the implicit-function rule (-1/rho) d2piL/dGdc_bar_L.
ImplicitDerivative dGE_dcbarL(const MarketPrimitives& prims,
                              const PolicyFunctions& funcs,
                              PolicyOptions options = {});

/// dG_E/dR, numerical mixed partial; its sign is scenario-dependent.
ImplicitDerivative dGE_dR(const MarketPrimitives& prims,
                          const PolicyFunctions& funcs,
                          PolicyOptions options = {});

}  // namespace foodex

#endif  // FOODEX_POLICY_HPP
