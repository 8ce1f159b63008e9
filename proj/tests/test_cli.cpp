#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

// End-to-end runs of the command-line binary against the shipped scenarios.
// The binary path and scenario directory come from compile definitions.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(FOODEX_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string scenario(const char* name) {
  return std::string(FOODEX_SCENARIO_DIR) + "/" + name;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

}  // namespace

TEST_CASE("solve emits the baseline equilibrium") {
  const RunResult r = run_cli("solve " + scenario("S0.cfg"));
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].rfind("scenario,pUE,pLE,", 0) == 0);
  CHECK(lines[1].find("S0,1.33333333333,1.66666666667,") == 0);
  CHECK(lines[1].find("closed-form") != std::string::npos);
}

TEST_CASE("solver methods agree through the CLI") {
  const RunResult newton = run_cli("solve " + scenario("S0.cfg") + " --method newton");
  const RunResult iter = run_cli("solve " + scenario("S0.cfg") + " --method iterative");
  CHECK(newton.exit_code == 0);
  CHECK(iter.exit_code == 0);
  CHECK(newton.out.find("1.33333333333") != std::string::npos);
  CHECK(iter.out.find("S0,1.333333333") != std::string::npos);  // 1e-10 solver tol
}

TEST_CASE("statics emits derivative rows with verdicts") {
  const RunResult r = run_cli("statics " + scenario("S0.cfg") + " --param cL");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("S0,c_bar_L,dpUE,0.333333333333,") != std::string::npos);
  CHECK(r.out.find("S0,c_bar_L,dpLE,0.666666666667,") != std::string::npos);
  CHECK(r.out.find("verdict") != std::string::npos);

  SUBCASE("bad parameter name is an input error") {
    const RunResult bad = run_cli("statics " + scenario("S0.cfg") + " --param XX");
    CHECK(bad.exit_code == 2);
  }
}

TEST_CASE("dynamics emits a monotone trajectory") {
  const RunResult r =
      run_cli("dynamics " + scenario("S0.cfg") + " --p0 1.2,1.5 --steps 500");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() >= 3);
  CHECK(lines[0] == "t,pU,pL,Z2");
  CHECK(lines[1] == "0,1.2,1.5,0.0125");
}

TEST_CASE("policy emits the optimum row") {
  const RunResult r = run_cli("policy " + scenario("S0.cfg"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("G_E,W_E,") != std::string::npos);
  CHECK(r.out.find("S0,0.608626058637,0.431359368086,") != std::string::npos);

  SUBCASE("linear scenarios are rejected") {
    const RunResult bad = run_cli("policy " + scenario("linear.cfg"));
    CHECK(bad.exit_code == 2);
  }
}

TEST_CASE("extended solves its reference scenario and rejects the baseline") {
  const RunResult r = run_cli("extended " + scenario("SX.cfg"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("SX,0.5,1.15,1.3,0.75,0.25,") == r.out.find("SX,"));

  const RunResult no_interior = run_cli("extended " + scenario("S0.cfg"));
  CHECK(no_interior.exit_code == 3);
}

TEST_CASE("sweep of the location cost tracks the solve output") {
  const RunResult sweep = run_cli(
      "sweep " + scenario("S0.cfg") + " --param c_bar_L --from 0.1 --to 0.4 --steps 1");
  const RunResult solve = run_cli("solve " + scenario("S0.cfg"));
  CHECK(sweep.exit_code == 0);
  const auto sweep_lines = lines_of(sweep.out);
  const auto solve_lines = lines_of(solve.out);
  REQUIRE(sweep_lines.size() == 2);
  // sweep row = id,param,value + the solve columns + G_E,W_E
  const std::string& srow = sweep_lines[1];
  std::string solve_cols = solve_lines[1].substr(solve_lines[1].find(',') + 1);
  CHECK(srow.find("S0,c_bar_L,0.1," + solve_cols) == 0);

  SUBCASE("the optimal guidance column falls as the location cost rises") {
    const RunResult r = run_cli(
        "sweep " + scenario("S0.cfg") + " --param c_bar_L --from 0 --to 0.4 --steps 5");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 6);
    double prev = 1e300;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto pos = rows[i].find_last_of(',');
      const auto pos2 = rows[i].find_last_of(',', pos - 1);
      const double ge = std::stod(rows[i].substr(pos2 + 1, pos - pos2 - 1));
      CHECK(ge < prev);
      prev = ge;
    }
  }
}

TEST_CASE("curves emits series in the price plane") {
  const RunResult r = run_cli("curves " + scenario("S0.cfg") + " --points 7");
  CHECK(r.exit_code == 0);
  CHECK(lines_of(r.out)[0] == "scenario,series,x,y");
  CHECK(r.out.find("reaction_U") != std::string::npos);
  CHECK(r.out.find("reaction_L") != std::string::npos);
  CHECK(r.out.find("isoprofit_U_") != std::string::npos);
  CHECK(r.out.find("isoprofit_L_") != std::string::npos);

  SUBCASE("single producer selection") {
    const RunResult u = run_cli("curves " + scenario("S0.cfg") + " --producer U --points 5");
    CHECK(u.exit_code == 0);
    CHECK(u.out.find("reaction_L") == std::string::npos);
  }
}

TEST_CASE("check passes on every shipped scenario") {
  for (const char* name : {"S0.cfg", "SX.cfg", "linear.cfg", "price_drop.cfg"}) {
    const RunResult r = run_cli("check " + scenario(name) + " --trials 5");
    INFO(name, "\n", r.out);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
}

TEST_CASE("check output is byte-identical across runs") {
  const std::string args = "check " + scenario("S0.cfg") + " --trials 5 --seed 9";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("input errors use exit code 2") {
  CHECK(run_cli("solve /nonexistent.cfg").exit_code == 2);
  CHECK(run_cli("statics " + scenario("S0.cfg")).exit_code == 2);  // missing --param
  CHECK(run_cli("solve " + scenario("S0.cfg") + " --method fancy").exit_code == 2);
  CHECK(run_cli("solve " + scenario("linear.cfg") + " --method closed").exit_code == 2);

  namespace fs = std::filesystem;
  const fs::path bad = fs::temp_directory_path() / "foodex_bad.cfg";
  {
    std::ofstream out(bad);
    out << "[market]\nq = -1\n";
  }
  CHECK(run_cli("solve " + bad.string()).exit_code == 2);
  fs::remove(bad);
}

TEST_CASE("output redirection writes the same CSV to a file") {
  namespace fs = std::filesystem;
  const fs::path out = fs::temp_directory_path() / "foodex_out.csv";
  const RunResult direct = run_cli("solve " + scenario("S0.cfg"));
  const RunResult redirected =
      run_cli("solve " + scenario("S0.cfg") + " --out " + out.string());
  CHECK(redirected.exit_code == 0);
  CHECK(redirected.out.empty());
  std::ifstream in(out);
  std::string contents((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  CHECK(contents == direct.out);
  fs::remove(out);
}
