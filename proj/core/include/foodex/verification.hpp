#ifndef FOODEX_VERIFICATION_HPP
#define FOODEX_VERIFICATION_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "foodex/scenario.hpp"

namespace foodex {

struct RandomScenario {
  MarketPrimitives market;
  PolicyFunctions funcs;
};

/// Scenario with all three validity conditions holding at equilibrium with
/// margin, built by sampling primitives and placing sqrt(q) between the two
/// equilibrium prices.
RandomScenario random_valid_scenario(std::mt19937_64& rng);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Full verification battery on one scenario: solver cross-agreement,
/// mutual-best-response grid search, the price-ordering and sign claims,
/// profit divergence, analytic-vs-finite-difference agreement for demand
/// partials and every comparative static, adjustment-dynamics descent, the
/// first-stage optimum, and the endogenous-added-value sign cases.
/// Deterministic for a fixed (scenario, seed, trials).
std::vector<CheckResult> run_check_suite(const Scenario& scenario,
                                         std::uint64_t seed, int trials);

/// Refined grid search for the profit argmax around a candidate price;
/// independent oracle for best-response optimality.
double grid_refine_best_response(const DemandSystem& system, Producer who,
                                 double rival, double R, double G,
                                 double center, double half_width,
                                 int levels = 3, int points = 41);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace foodex

#endif  // FOODEX_VERIFICATION_HPP
