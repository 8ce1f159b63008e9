#ifndef FOODEX_EQUILIBRIUM_HPP
#define FOODEX_EQUILIBRIUM_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "foodex/demand.hpp"
#include "foodex/model.hpp"

namespace foodex {

enum class SolveMethod { closed_form, iterative, newton };
enum class SolveStatus { ok, no_convergence, singular_jacobian };

struct Equilibrium {
  double pU = 0, pL = 0;            // prices
  double xU = 0, xL = 0;            // demands
  double profitU = 0, profitL = 0;  // profits
  ConditionReport conditions;       // validity at the solution (warnings)
  SolveMethod method = SolveMethod::closed_form;
  SolveStatus status = SolveStatus::ok;
  double residual = 0;  // max |first-order condition| at the solution
  int iterations = 0;
};

/// Exact equilibrium of the preference-threshold model:
///   pU = (P(G)R + c_bar_L + alpha)/3 + c_bar,
///   pL = 2 (P(G)R + c_bar_L + alpha)/3 + c_bar.
Equilibrium closed_form_equilibrium(const MarketPrimitives& prims,
                                    const PolicyFunctions& funcs);

class NoBestResponse : public Error {
 public:
  NoBestResponse(Producer who, double lo, double hi);
  double searched_lo, searched_hi;
};

/// Profit-maximizing own price against a rival price.  Uses the family's
/// closed form when available, otherwise a safeguarded Newton/bisection on
/// the first-order condition (tol 1e-10).  Throws NoBestResponse when no
/// sign change is found in the search interval.
double best_response(const DemandSystem& system, Producer who, double rival,
                     double R, double G, std::optional<double> hint = {});

struct IterativeOptions {
  std::optional<std::array<double, 2>> init;  // defaults to costs + 0.1
  double damping = 1.0;                       // in (0, 1]
  double tol = 1e-10;                         // max price change
  int max_iter = 10000;
};
/// Damped simultaneous best-response iteration
///   p <- (1 - damping) p + damping BR(p).
Equilibrium solve_iterative(const DemandSystem& system,
                            const MarketPrimitives& prims,
                            const PolicyFunctions& funcs,
                            IterativeOptions options = {});

struct NewtonOptions {
  std::optional<std::array<double, 2>> init;  // defaults to costs + 0.1
  double tol = 1e-12;                         // residual tolerance
  int max_iter = 100;
};
/// Two-dimensional Newton iteration on the stacked first-order conditions.
Equilibrium solve_newton(const DemandSystem& system,
                         const MarketPrimitives& prims,
                         const PolicyFunctions& funcs,
                         NewtonOptions options = {});

// Composite demand-curvature terms of the strategic-complements stability
// condition (0 < a < -b and 0 < c < -d), the determinant of the price-game
// Jacobian, and the reaction-curve slopes dpU/dpL of both producers.
struct StabilityQuantities {
  double a = 0, b = 0, c = 0, d = 0;
  double detJ = 0;  // (b + dxU/dpU)(d + dxL/dpL) - a c
  bool cond4_strict = false;
  bool cond4_weak = false;  // allows a = -b or c = -d
  std::optional<double> slope_U, slope_L;
};
StabilityQuantities stability_quantities(const DemandSystem& system, double pU,
                                         double pL, double R, double G);

struct ReactionPoint {
  double rival = 0;
  double response = 0;
  bool ok = false;  // false when no best response exists at this rival price
};
std::vector<ReactionPoint> reaction_curve_points(const DemandSystem& system,
                                                 Producer who,
                                                 std::span<const double> rival_grid,
                                                 double R, double G);

// One point of an iso-profit contour: the dependent price solving
// profit(who) = level at the given anchor (own) price, with the analytic
// contour slope and curvature.  curvature_closed is the family closed form
// where one exists; curvature_generic evaluates the general expression.
struct IsoProfitPoint {
  double anchor = 0;     // own price
  double dependent = 0;  // rival price on the contour
  double slope = 0;      // d dependent / d anchor along the contour
  std::optional<double> curvature_closed;
  double curvature_generic = 0;
  bool ok = false;  // false when the level is unattainable at this anchor
};
std::vector<IsoProfitPoint> iso_profit_points(const DemandSystem& system,
                                              Producer who, double level,
                                              std::span<const double> anchor_grid,
                                              double R, double G);

}  // namespace foodex

#endif  // FOODEX_EQUILIBRIUM_HPP
