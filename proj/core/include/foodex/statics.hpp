#ifndef FOODEX_STATICS_HPP
#define FOODEX_STATICS_HPP

#include <functional>
#include <string>
#include <vector>

#include "foodex/equilibrium.hpp"

namespace foodex {

enum class Parameter { c_bar_L, R, G };

const char* parameter_name(Parameter p);  // "c_bar_L", "R", "G"

struct DerivPair {
  double U = 0, L = 0;
};

struct PropositionVerdict {
  std::string claim;
  double lhs = 0, rhs = 0;  // the compared quantities (claim is "lhs > rhs"
                            // unless stated otherwise in the text)
  bool pass = false;
};

// Derivatives of the equilibrium objects with respect to one exogenous
// parameter, analytic closed forms next to their finite-difference
// counterparts.  dCS holds the per-consumer surplus derivatives for a
// U-buyer (theta-independent) and for the L-buyer with theta = 1.
struct StaticsReport {
  Parameter param = Parameter::c_bar_L;
  DerivPair dP, dP_fd;
  DerivPair dX, dX_fd;
  DerivPair dPi, dPi_fd;
  DerivPair dCS, dCS_fd;
  bool signs_indeterminate = false;  // demand/profit signs not pinned down
  std::vector<PropositionVerdict> verdicts;
};

/// Comparative statics of the preference-threshold model around its
/// closed-form equilibrium.
StaticsReport specific_statics(const MarketPrimitives& prims,
                               const PolicyFunctions& funcs, Parameter param);

class UnstableEquilibrium : public Error {
 public:
  using Error::Error;
};

// Price derivatives for an arbitrary demand system at a solved equilibrium:
// 2x2 Cramer solve of the differentiated first-order conditions (full), and
// the approximation that drops the mixed price/parameter demand curvature
// terms.  The two coincide exactly for linear demand.
struct NonspecificStatics {
  DerivPair full;
  DerivPair approx;
  double detJ = 0;
  double gap = 0;  // max |full - approx|, the size of the dropped terms

  // Which branch of the conditional price response the scenario occupies;
  // for generic systems the direction is scenario-dependent, not a theorem.
  const char* regime() const {
    if (full.U > 0 && full.L > 0) return "both-rise";
    if (full.U < 0 && full.L < 0) return "both-fall";
    return "mixed";
  }
};
/// Throws UnstableEquilibrium when detJ <= 0.
NonspecificStatics nonspecific_statics(const DemandSystem& system,
                                       const Equilibrium& eq, double R, double G,
                                       Parameter param);

using SolveFn =
    std::function<Equilibrium(const MarketPrimitives&, const PolicyFunctions&)>;

// Finite-difference derivatives of every equilibrium output obtained by
// re-solving at perturbed parameter values.  At the domain edges
// (c_bar_L = 0, R = 0, G = 0) a second-order one-sided stencil is used.
struct FdStaticsResult {
  DerivPair dP, dX, dPi, dCS;
  double d_aggregate = 0;
  bool one_sided = false;
};
FdStaticsResult fd_statics(const SolveFn& solve, const MarketPrimitives& prims,
                           const PolicyFunctions& funcs, Parameter param,
                           double step = 1e-5);

/// Machine-checkable forms of the price-ordering and sign claims for all
/// three parameters, with the computed values attached.
std::vector<PropositionVerdict> proposition_suite(const MarketPrimitives& prims,
                                                  const PolicyFunctions& funcs);

}  // namespace foodex

#endif  // FOODEX_STATICS_HPP
