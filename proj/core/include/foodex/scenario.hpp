#ifndef FOODEX_SCENARIO_HPP
#define FOODEX_SCENARIO_HPP

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foodex/demand.hpp"
#include "foodex/dynamics.hpp"

namespace foodex {

// Scenario files are flat key/value sections, UTF-8, '#' comments:
//
//   id = S0
//   [market]
//   q = 2.56
//   c_bar = 1
//   c_bar_L = 0.1
//   R = 2
//   G = 0
//   [prob]
//   P0 = 0.4
//   lambda_P = 1
//   [alpha]
//   a_R = 0.05
//   lambda_alpha = 0.5
//   [beta]
//   b_beta = 0.5
//   [demand]      # optional, defaults to kind = specific
//   kind = linear
//   A = 2
//   B = 1
//   C = 0.5
//   m = 0.1
//   n = 0.1
//   [dynamics]    # optional, defaults below
//   kU = 1
//   kL = 1
//   dt = 0.01
//   horizon = 200
//
// Unknown sections or keys are rejected, as are linear-demand keys under
// kind = specific.

enum class DemandKind { specific, linear };

struct Scenario {
  std::string id;
  MarketPrimitives market;
  PolicyFunctions funcs;
  DemandKind kind = DemandKind::specific;
  std::optional<LinearDemandParams> linear;
  AdjustmentConfig dynamics;  // init defaults to unit costs + 0.1 on load
};

class ScenarioError : public Error {
 public:
  explicit ScenarioError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Parse and validate; throws ScenarioError carrying every field-level
/// problem found.
Scenario parse_scenario(std::string_view text, std::string_view name = "<string>");
Scenario load_scenario(const std::filesystem::path& path);

std::unique_ptr<DemandSystem> make_demand_system(const Scenario& scenario);

}  // namespace foodex

#endif  // FOODEX_SCENARIO_HPP
