#ifndef FOODEX_MODEL_HPP
#define FOODEX_MODEL_HPP

#include <stdexcept>
#include <string>

// Two producers export the same kind of food to a third market: producer U
// (urban, plain product) and producer L (local, differentiated product whose
// extra value R pays off with probability P(G)).  This header holds the
// exogenous primitives, the parametric policy-function families, and the
// consumer side of the model (surpluses, purchase thresholds, validity
// conditions).

namespace foodex {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exogenous scalars of a market scenario.
struct MarketPrimitives {
  double q = 0;        // basic per-unit utility common to both foods (> 0)
  double c_bar = 0;    // basic unit cost (> 0)
  double c_bar_L = 0;  // extra unit cost from producer L's location (>= 0)
  double R = 0;        // added value per unit of food L (> 0)
  double G = 0;        // administrative-guidance level (>= 0)

  void validate() const;  // throws std::invalid_argument on a bad field
};

// Parametric families for the three policy functions.  The model only pins
// down sign conditions; these families satisfy them on the whole domain:
//   P(G)  = 1 - (1 - P0) * exp(-lambda_P * G)      in (0, 1], increasing
//   alpha(R, G) = a_R * R * exp(-lambda_alpha * G) linear in R, decaying in G
//   beta(G) = b_beta * G^2 / 2                     beta(0) = beta'(0) = 0
struct ProbParams {
  double P0 = 0.5;       // success probability with no guidance, in (0, 1]
  double lambda_P = 1;   // saturation rate (> 0)
};
struct AlphaParams {
  double a_R = 0.05;         // cost per unit of added value (>= 0)
  double lambda_alpha = 0;   // guidance-driven cost decay (>= 0)
};
struct BetaParams {
  double b_beta = 0.5;  // curvature of the administrative cost (> 0)
};

struct PolicyFunctions {
  ProbParams prob;
  AlphaParams alpha;
  BetaParams beta;

  void validate() const;
};

struct ProbEval {
  double value;  // P(G)
  double dG;     // P'(G)
};
/// Success probability of the added value and its slope. Requires G >= 0.
ProbEval eval_prob(const PolicyFunctions& funcs, double G);

struct AlphaEval {
  double value;  // alpha(R, G)
  double dR;     // d alpha / dR  (> 0 when a_R > 0)
  double dG;     // d alpha / dG  (<= 0)
};
/// Additional unit cost of the added value and its partials. Requires R > 0.
AlphaEval eval_alpha(const PolicyFunctions& funcs, double R, double G);

struct BetaEval {
  double value;  // beta(G)
  double dG;     // beta'(G)
  double d2G;    // beta''(G)
};
BetaEval eval_beta(const PolicyFunctions& funcs, double G);

struct UnitCosts {
  double cU;  // = c_bar
  double cL;  // = c_bar + c_bar_L + alpha(R, G)
};
UnitCosts unit_costs(const MarketPrimitives& prims, const PolicyFunctions& funcs);

struct ConditionMargin {
  bool holds = false;
  double margin = 0;  // positive iff the condition holds strictly
};

// Validity conditions of the market:
//   1. every consumer gets positive surplus from food U   (sqrt(q) > pU)
//   2. some consumers do not want food L                   (pL > sqrt(q))
//   3. some consumers do buy food L                        (P(G) R > pL - pU)
// theta_star marks where the surplus from food L turns positive,
// theta_star_star where a consumer switches from U to L.
struct ConditionReport {
  ConditionMargin cond1, cond2, cond3;
  double theta_star = 0;
  double theta_star_star = 0;

  bool all_hold() const { return cond1.holds && cond2.holds && cond3.holds; }
};

/// Thresholds and condition margins at the given prices.
ConditionReport thresholds(const MarketPrimitives& prims,
                           const PolicyFunctions& funcs,
                           double pU, double pL);

enum class FoodChoice { U, L, none };

struct SurplusEval {
  double csU;         // sqrt(q) - pU, independent of theta
  double csL;         // P(G) R theta + sqrt(q) - pL
  FoodChoice choice;  // L iff theta > theta_star_star; tie goes to U
};
/// Per-consumer surpluses and the chosen food for preference theta in [0, 1].
SurplusEval consumer_surplus(const MarketPrimitives& prims,
                             const PolicyFunctions& funcs,
                             double pU, double pL, double theta);

struct AggregateSurplus {
  double value;
  bool conditions_ok;  // false = computed outside the valid region
};
// Total consumer surplus over the uniform theta distribution:
//   integral_0^{theta**} (sqrt(q) - pU) dtheta
// + integral_{theta**}^1 (P(G) R theta + sqrt(q) - pL) dtheta, in closed form.
AggregateSurplus aggregate_surplus(const MarketPrimitives& prims,
                                   const PolicyFunctions& funcs,
                                   double pU, double pL);

}  // namespace foodex

#endif  // FOODEX_MODEL_HPP
