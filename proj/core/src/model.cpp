#include "foodex/model.hpp"

#include <cmath>
#include <sstream>

namespace foodex {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::string bad_field(const char* name, double got, const char* constraint) {
  std::ostringstream os;
  os << name << ": must be " << constraint << " (got " << got << ")";
  return os.str();
}

}  // namespace

void MarketPrimitives::validate() const {
  require(std::isfinite(q) && q > 0, bad_field("market.q", q, "> 0"));
  require(std::isfinite(c_bar) && c_bar > 0, bad_field("market.c_bar", c_bar, "> 0"));
  require(std::isfinite(c_bar_L) && c_bar_L >= 0,
          bad_field("market.c_bar_L", c_bar_L, ">= 0"));
  require(std::isfinite(R) && R > 0, bad_field("market.R", R, "> 0"));
  require(std::isfinite(G) && G >= 0, bad_field("market.G", G, ">= 0"));
}

void PolicyFunctions::validate() const {
  require(std::isfinite(prob.P0) && prob.P0 > 0 && prob.P0 <= 1,
          bad_field("prob.P0", prob.P0, "in (0, 1]"));
  require(std::isfinite(prob.lambda_P) && prob.lambda_P > 0,
          bad_field("prob.lambda_P", prob.lambda_P, "> 0"));
  require(std::isfinite(alpha.a_R) && alpha.a_R >= 0,
          bad_field("alpha.a_R", alpha.a_R, ">= 0"));
  require(std::isfinite(alpha.lambda_alpha) && alpha.lambda_alpha >= 0,
          bad_field("alpha.lambda_alpha", alpha.lambda_alpha, ">= 0"));
  require(std::isfinite(beta.b_beta) && beta.b_beta > 0,
          bad_field("beta.b_beta", beta.b_beta, "> 0"));
}

ProbEval eval_prob(const PolicyFunctions& funcs, double G) {
  require(std::isfinite(G), "eval_prob: G must be finite");
  require(G >= 0, bad_field("G", G, ">= 0"));
  const double decay = (1.0 - funcs.prob.P0) * std::exp(-funcs.prob.lambda_P * G);
  return {1.0 - decay, funcs.prob.lambda_P * decay};
}

AlphaEval eval_alpha(const PolicyFunctions& funcs, double R, double G) {
  require(std::isfinite(R) && R > 0, bad_field("R", R, "> 0"));
  require(std::isfinite(G) && G >= 0, bad_field("G", G, ">= 0"));
  const double dR = funcs.alpha.a_R * std::exp(-funcs.alpha.lambda_alpha * G);
  const double value = dR * R;
  return {value, dR, -funcs.alpha.lambda_alpha * value};
}

BetaEval eval_beta(const PolicyFunctions& funcs, double G) {
  require(std::isfinite(G) && G >= 0, bad_field("G", G, ">= 0"));
  const double b = funcs.beta.b_beta;
  return {0.5 * b * G * G, b * G, b};
}

UnitCosts unit_costs(const MarketPrimitives& prims, const PolicyFunctions& funcs) {
  prims.validate();
  const double alpha = eval_alpha(funcs, prims.R, prims.G).value;
  return {prims.c_bar, prims.c_bar + prims.c_bar_L + alpha};
}

ConditionReport thresholds(const MarketPrimitives& prims,
                           const PolicyFunctions& funcs,
                           double pU, double pL) {
  const double S = eval_prob(funcs, prims.G).value * prims.R;
  if (S <= 0) throw Error("thresholds: degenerate model, P(G) * R = 0");
  const double root_q = std::sqrt(prims.q);

  ConditionReport rep;
  rep.cond1 = {root_q - pU > 0, root_q - pU};
  rep.cond2 = {pL - root_q > 0, pL - root_q};
  rep.cond3 = {S - (pL - pU) > 0, S - (pL - pU)};
  rep.theta_star = (pL - root_q) / S;
  rep.theta_star_star = (pL - pU) / S;
  return rep;
}

SurplusEval consumer_surplus(const MarketPrimitives& prims,
                             const PolicyFunctions& funcs,
                             double pU, double pL, double theta) {
  const double S = eval_prob(funcs, prims.G).value * prims.R;
  const double root_q = std::sqrt(prims.q);
  SurplusEval out;
  out.csU = root_q - pU;
  out.csL = S * theta + root_q - pL;

  const double switch_at = (pL - pU) / S;
  if (theta > switch_at) {
    out.choice = out.csL >= 0 ? FoodChoice::L : FoodChoice::none;
  } else {
    out.choice = out.csU >= 0 ? FoodChoice::U : FoodChoice::none;
  }
  return out;
}

AggregateSurplus aggregate_surplus(const MarketPrimitives& prims,
                                   const PolicyFunctions& funcs,
                                   double pU, double pL) {
  const ConditionReport rep = thresholds(prims, funcs, pU, pL);
  const double S = eval_prob(funcs, prims.G).value * prims.R;
  const double root_q = std::sqrt(prims.q);
  const double T = rep.theta_star_star;

  const double u_segment = T * (root_q - pU);
  const double l_segment = 0.5 * S * (1.0 - T * T) + (root_q - pL) * (1.0 - T);
  return {u_segment + l_segment, rep.all_hold()};
}

}  // namespace foodex
