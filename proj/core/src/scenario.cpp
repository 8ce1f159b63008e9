#include "foodex/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace foodex {

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::ostringstream os;
  os << "scenario has " << errors.size() << " problem(s):";
  for (const auto& e : errors) os << "\n  - " << e;
  return os.str();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct RawScenario {
  // section -> key -> (value, already-consumed)
  std::map<std::string, std::map<std::string, std::string>> sections;
};

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : Error(join_errors(errors)), errors_(std::move(errors)) {}

Scenario parse_scenario(std::string_view text, std::string_view name) {
  std::vector<std::string> errors;
  RawScenario raw;
  std::string section;  // "" = top level

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(std::string(name) + ":" + std::to_string(lineno) +
                         ": malformed section header '" + std::string(line) + "'");
        continue;
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      raw.sections[section];  // record even if empty
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back(std::string(name) + ":" + std::to_string(lineno) +
                       ": expected 'key = value', got '" + std::string(line) + "'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      errors.push_back(std::string(name) + ":" + std::to_string(lineno) +
                       ": empty key");
      continue;
    }
    auto& sec = raw.sections[section];
    if (sec.count(key)) {
      errors.push_back(std::string(name) + ":" + std::to_string(lineno) +
                       ": duplicate key '" + (section.empty() ? key : section + "." + key) +
                       "'");
      continue;
    }
    sec[key] = value;
  }

  // Typed extraction with field-path error reporting.
  auto field_path = [](const std::string& sec, const std::string& key) {
    return sec.empty() ? key : sec + "." + key;
  };
  auto take = [&](const std::string& sec, const std::string& key) -> std::optional<std::string> {
    auto s = raw.sections.find(sec);
    if (s == raw.sections.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    std::string v = k->second;
    s->second.erase(k);
    return v;
  };
  auto number = [&](const std::string& sec, const std::string& key,
                    std::optional<double> fallback) -> double {
    auto v = take(sec, key);
    if (!v) {
      if (fallback) return *fallback;
      errors.push_back(field_path(sec, key) + ": missing required value");
      return std::numeric_limits<double>::quiet_NaN();
    }
    char* end = nullptr;
    const double parsed = std::strtod(v->c_str(), &end);
    if (v->empty() || end != v->c_str() + v->size() || !std::isfinite(parsed)) {
      errors.push_back(field_path(sec, key) + ": not a finite number: '" + *v + "'");
      return std::numeric_limits<double>::quiet_NaN();
    }
    return parsed;
  };
  auto check = [&](bool ok, const std::string& path, const char* constraint,
                   double got) {
    if (!ok && std::isfinite(got)) {
      std::ostringstream os;
      os << path << ": must be " << constraint << " (got " << got << ")";
      errors.push_back(os.str());
    }
  };

  Scenario sc;
  if (auto id = take("", "id")) sc.id = *id;
  if (sc.id.empty()) sc.id = std::string(name);

  sc.market.q = number("market", "q", {});
  sc.market.c_bar = number("market", "c_bar", {});
  sc.market.c_bar_L = number("market", "c_bar_L", {});
  sc.market.R = number("market", "R", {});
  sc.market.G = number("market", "G", {});
  check(sc.market.q > 0, "market.q", "> 0", sc.market.q);
  check(sc.market.c_bar > 0, "market.c_bar", "> 0", sc.market.c_bar);
  check(sc.market.c_bar_L >= 0, "market.c_bar_L", ">= 0", sc.market.c_bar_L);
  check(sc.market.R > 0, "market.R", "> 0", sc.market.R);
  check(sc.market.G >= 0, "market.G", ">= 0", sc.market.G);

  sc.funcs.prob.P0 = number("prob", "P0", {});
  sc.funcs.prob.lambda_P = number("prob", "lambda_P", {});
  check(sc.funcs.prob.P0 > 0 && sc.funcs.prob.P0 <= 1, "prob.P0", "in (0, 1]",
        sc.funcs.prob.P0);
  check(sc.funcs.prob.lambda_P > 0, "prob.lambda_P", "> 0", sc.funcs.prob.lambda_P);

  sc.funcs.alpha.a_R = number("alpha", "a_R", {});
  sc.funcs.alpha.lambda_alpha = number("alpha", "lambda_alpha", {});
  check(sc.funcs.alpha.a_R >= 0, "alpha.a_R", ">= 0", sc.funcs.alpha.a_R);
  check(sc.funcs.alpha.lambda_alpha >= 0, "alpha.lambda_alpha", ">= 0",
        sc.funcs.alpha.lambda_alpha);

  sc.funcs.beta.b_beta = number("beta", "b_beta", {});
  check(sc.funcs.beta.b_beta > 0, "beta.b_beta", "> 0", sc.funcs.beta.b_beta);

  const auto kind = take("demand", "kind");
  if (!kind || *kind == "specific") {
    sc.kind = DemandKind::specific;
    for (const char* k : {"A", "B", "C", "m", "n"}) {
      if (take("demand", k)) {
        errors.push_back(std::string("demand.") + k +
                         ": only valid when kind = linear");
      }
    }
  } else if (*kind == "linear") {
    sc.kind = DemandKind::linear;
    LinearDemandParams lp;
    lp.A = number("demand", "A", {});
    lp.B = number("demand", "B", {});
    lp.C = number("demand", "C", {});
    lp.m = number("demand", "m", 0.0);
    lp.n = number("demand", "n", 0.0);
    check(lp.A > 0, "demand.A", "> 0", lp.A);
    check(lp.B > 0, "demand.B", "> 0", lp.B);
    check(lp.C > 0 && lp.C < lp.B, "demand.C", "in (0, B)", lp.C);
    check(lp.m >= 0, "demand.m", ">= 0", lp.m);
    check(lp.n >= 0, "demand.n", ">= 0", lp.n);
    sc.linear = lp;
  } else {
    errors.push_back("demand.kind: unknown kind '" + *kind +
                     "' (expected specific or linear)");
  }

  sc.dynamics.kU = number("dynamics", "kU", 1.0);
  sc.dynamics.kL = number("dynamics", "kL", 1.0);
  sc.dynamics.dt = number("dynamics", "dt", 0.01);
  sc.dynamics.horizon = number("dynamics", "horizon", 200.0);
  check(sc.dynamics.kU > 0, "dynamics.kU", "> 0", sc.dynamics.kU);
  check(sc.dynamics.kL > 0, "dynamics.kL", "> 0", sc.dynamics.kL);
  check(sc.dynamics.dt > 0, "dynamics.dt", "> 0", sc.dynamics.dt);
  check(sc.dynamics.horizon > 0, "dynamics.horizon", "> 0", sc.dynamics.horizon);

  // Anything left over is unknown.
  static const char* known_sections[] = {"", "market", "prob", "alpha",
                                         "beta", "demand", "dynamics"};
  for (const auto& [sec, keys] : raw.sections) {
    bool known = false;
    for (const char* s : known_sections) known = known || sec == s;
    if (!known) {
      errors.push_back("unknown section [" + sec + "]");
      continue;
    }
    for (const auto& [key, value] : keys) {
      errors.push_back("unknown key '" + field_path(sec, key) + "'");
    }
  }

  if (!errors.empty()) throw ScenarioError(std::move(errors));

  // Default dynamics start just above cost, mirroring the solver defaults.
  const UnitCosts costs = unit_costs(sc.market, sc.funcs);
  sc.dynamics.init = {costs.cU + 0.1, costs.cL + 0.1};
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError({"cannot open scenario file: " + path.string()});
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string name = path.stem().string();
  return parse_scenario(buffer.str(), name);
}

std::unique_ptr<DemandSystem> make_demand_system(const Scenario& scenario) {
  if (scenario.kind == DemandKind::linear) {
    return std::make_unique<LinearDemand>(*scenario.linear, scenario.market,
                                          scenario.funcs);
  }
  return std::make_unique<SpecificDemand>(scenario.market, scenario.funcs);
}

}  // namespace foodex
