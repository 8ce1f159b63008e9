#ifndef FOODEX_DEMAND_HPP
#define FOODEX_DEMAND_HPP

#include <memory>
#include <optional>

#include "foodex/model.hpp"

namespace foodex {

enum class Producer { U, L };

/// Demands and every partial the solvers and comparative statics need,
/// evaluated at one point (pU, pL, R, G).
struct DemandEval {
  double xU = 0, xL = 0;

  // First price partials.
  double dxU_dpU = 0, dxU_dpL = 0;
  double dxL_dpU = 0, dxL_dpL = 0;

  // Second price partials.
  double d2xU_dpUpU = 0, d2xU_dpUpL = 0, d2xU_dpLpL = 0;
  double d2xL_dpUpU = 0, d2xL_dpUpL = 0, d2xL_dpLpL = 0;

  // Partials in the added value R and the guidance level G.
  double dxU_dR = 0, dxU_dG = 0;
  double dxL_dR = 0, dxL_dG = 0;

  // Mixed price/parameter second partials (own-price slots feed the exact
  // comparative-statics right-hand sides; the approximate forms drop them).
  double d2xU_dpU_dR = 0, d2xU_dpU_dG = 0;
  double d2xU_dpL_dR = 0, d2xU_dpL_dG = 0;
  double d2xL_dpL_dR = 0, d2xL_dpL_dG = 0;
  double d2xL_dpU_dR = 0, d2xL_dpU_dG = 0;
};

struct CostEval {
  double cU = 0;          // producer U unit cost
  double cL = 0;          // producer L unit cost
  double dcL_dcbarL = 0;  // > 0
  double dcL_dR = 0;      // > 0 when a_R > 0
  double dcL_dG = 0;      // <= 0
};

// Evaluation contract shared by the built-in demand families.  Values are
// immutable after construction and evaluation is pure, so systems can be
// shared freely across threads.
class DemandSystem {
 public:
  virtual ~DemandSystem() = default;

  virtual DemandEval eval(double pU, double pL, double R, double G) const = 0;
  virtual CostEval costs(double R, double G) const = 0;

  /// Closed-form best response where the family has one; the generic
  /// root-finding path is used otherwise.
  virtual std::optional<double> exact_best_response(Producer /*who*/,
                                                    double /*rival*/,
                                                    double /*R*/,
                                                    double /*G*/) const {
    return std::nullopt;
  }

  /// Closed-form iso-profit curvature (d2 dependent-price / d anchor-price2)
  /// at the given anchor price and profit level, where the family has one.
  virtual std::optional<double> iso_profit_curvature_closed_form(
      Producer /*who*/, double /*level*/, double /*anchor*/, double /*R*/,
      double /*G*/) const {
    return std::nullopt;
  }
};

// Preference-threshold demand family:
//   xU = (pL - pU) / (P(G) R),  xL = 1 - xU.
// Second price partials vanish identically; R and G act through P(G) R.
class SpecificDemand final : public DemandSystem {
 public:
  SpecificDemand(const MarketPrimitives& prims, const PolicyFunctions& funcs);

  DemandEval eval(double pU, double pL, double R, double G) const override;
  CostEval costs(double R, double G) const override;
  std::optional<double> exact_best_response(Producer who, double rival,
                                            double R, double G) const override;
  std::optional<double> iso_profit_curvature_closed_form(
      Producer who, double level, double anchor, double R,
      double G) const override;

  const MarketPrimitives& primitives() const { return prims_; }
  const PolicyFunctions& functions() const { return funcs_; }

 private:
  MarketPrimitives prims_;
  PolicyFunctions funcs_;
};

SpecificDemand specific_demand(const MarketPrimitives& prims,
                               const PolicyFunctions& funcs);

/// Parameters of the linear demand family
///   xU = A - B pU + C pL - m R - n G,
///   xL = A - B pL + C pU + m R + n G.
/// B > C > 0 keeps own effects dominant (strict stability).
struct LinearDemandParams {
  double A = 2;    // intercept (> 0)
  double B = 1;    // own-price slope (> 0)
  double C = 0.5;  // cross-price slope (0 < C < B)
  double m = 0;    // added-value sensitivity (>= 0)
  double n = 0;    // guidance sensitivity (>= 0)

  void validate() const;  // throws std::invalid_argument
};

// Linear demand shares the cost structure of the specific model, so the
// generic machinery sees dcL/dcbarL > 0, dcL/dR > 0 and dcL/dG <= 0.
class LinearDemand final : public DemandSystem {
 public:
  LinearDemand(const LinearDemandParams& params, const MarketPrimitives& prims,
               const PolicyFunctions& funcs);

  DemandEval eval(double pU, double pL, double R, double G) const override;
  CostEval costs(double R, double G) const override;

  const LinearDemandParams& params() const { return params_; }

 private:
  LinearDemandParams params_;
  MarketPrimitives prims_;
  PolicyFunctions funcs_;
};

LinearDemand linear_demand(const LinearDemandParams& params,
                           const MarketPrimitives& prims,
                           const PolicyFunctions& funcs);

/// Finite-difference counterpart of DemandSystem::eval, used to cross-check
/// the analytic partials.  Steps are h = max(1e-6, 1e-6 |x|); at the R > 0 /
/// G >= 0 domain edges a second-order one-sided stencil is used and flagged.
struct FdDemandEval {
  DemandEval values;
  bool one_sided = false;  // some direction needed a one-sided stencil
};
FdDemandEval fd_partials(const DemandSystem& system, double pU, double pL,
                         double R, double G);

}  // namespace foodex

#endif  // FOODEX_DEMAND_HPP
