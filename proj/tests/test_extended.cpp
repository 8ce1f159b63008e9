#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "foodex/extended.hpp"
#include "oracles.hpp"

using namespace foodex;
using doctest::Approx;

namespace {
const MarketPrimitives kSX = oracles::extended_market();
const PolicyFunctions kFX = oracles::extended_functions();
}  // namespace

TEST_CASE("endogenous added value at the reference scenario") {
  const ExtendedEquilibrium eq = solve_extended(kSX, kFX);
  CHECK(eq.R_E == Approx(0.5).epsilon(1e-12));
  CHECK(eq.pL == Approx(1.3).epsilon(1e-12));
  CHECK(eq.pU == Approx(1.15).epsilon(1e-12));
  CHECK(eq.xU == Approx(0.75).epsilon(1e-12));
  CHECK(eq.xL == Approx(0.25).epsilon(1e-12));
  CHECK(eq.detJ3 == Approx(-0.2).epsilon(1e-12));
  CHECK(eq.soc_ok);
  CHECK(eq.d2piL_dR2 < 0);
  CHECK(std::fabs(eq.residual_price_U) <= 1e-10);
  CHECK(std::fabs(eq.residual_price_L) <= 1e-10);
  CHECK(std::fabs(eq.residual_added_value) <= 1e-10);
  CHECK(eq.conditions.all_hold());

  SUBCASE("Newton on the raw stacked optimality conditions agrees") {
    const double P = 0.4, cbar = 1.0, cbarL = 0.1, aR = 0.3;
    auto raw = [&](const std::array<double, 3>& x) -> std::array<double, 3> {
      const auto [pU, pL, R] = x;
      const double cL = cbar + cbarL + aR * R;
      const double xL = 1.0 - (pL - pU) / (P * R);
      return {pL + cbar - 2 * pU,                            // dpiU/dpU = 0
              P * R + pU + cL - 2 * pL,                      // dpiL/dpL = 0
              (pL - cL) * (pL - pU) / (P * R * R) - aR * xL  // dpiL/dR = 0
             };
    };
    const auto sol = oracles::newton3(raw, {1.1, 1.25, 0.4});
    CHECK(sol[0] == Approx(eq.pU).epsilon(1e-9));
    CHECK(sol[1] == Approx(eq.pL).epsilon(1e-9));
    CHECK(sol[2] == Approx(eq.R_E).epsilon(1e-9));
  }
}

TEST_CASE("interior solution requires a steep enough added-value cost") {
  SUBCASE("baseline parameters sit on the wrong side") {
    const MarketPrimitives m = oracles::baseline_market();
    const PolicyFunctions f = oracles::baseline_functions();
    CHECK_THROWS_WITH_AS(solve_extended(m, f), doctest::Contains("R_E <= 0"),
                         NoInteriorSolution);
  }
  SUBCASE("zero location cost gives a boundary solution") {
    MarketPrimitives m = kSX;
    m.c_bar_L = 0.0;
    CHECK_THROWS_WITH_AS(solve_extended(m, kFX), doctest::Contains("c_bar_L"),
                         NoInteriorSolution);
  }
  SUBCASE("the knife-edge case is singular") {
    PolicyFunctions f = kFX;
    f.alpha.a_R = 0.2;  // 2 dalpha/dR = P(G) = 0.4
    CHECK_THROWS_AS(solve_extended(kSX, f), SingularSystem);
  }
}

TEST_CASE("assembled system matrix matches the reduced determinant") {
  const ExtendedEquilibrium eq = solve_extended(kSX, kFX);
  const ExtendedJacobian jac = extended_jacobian(kSX, kFX, eq);
  CHECK(jac.detJ3 == Approx(-0.2).epsilon(1e-12));
  CHECK(jac.det_raw == Approx(jac.detJ3).epsilon(1e-12));
  CHECK(jac.ratio == Approx(1.0).epsilon(1e-12));
  CHECK(jac.matrix[0][0] == -2);
  CHECK(jac.matrix[1][2] == Approx(0.4 + 0.3));
  CHECK(jac.matrix[2][2] == Approx(-0.3));

  SUBCASE("determinants coincide across random parameter values") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.05, 0.9);
    for (int i = 0; i < 50; ++i) {
      MarketPrimitives m = kSX;
      PolicyFunctions f = kFX;
      f.prob.P0 = u(rng);
      f.alpha.a_R = u(rng);
      ExtendedEquilibrium fake{};
      fake.R_E = 0.5;
      const ExtendedJacobian j = extended_jacobian(m, f, fake);
      CHECK(j.det_raw == Approx(j.detJ3).epsilon(1e-12));
    }
  }
}

TEST_CASE("location-cost statics of the extended equilibrium") {
  const ExtendedStatics st = extended_statics_cbarL(kSX, kFX);
  CHECK(st.dpU == Approx(1.5).epsilon(1e-12));
  CHECK(st.dpL == Approx(3.0).epsilon(1e-12));
  CHECK(st.dR == Approx(5.0).epsilon(1e-12));

  SUBCASE("re-solve finite differences agree") {
    CHECK(oracles::rel_close(st.dpU, st.fd_dpU, 1e-5));
    CHECK(oracles::rel_close(st.dpL, st.fd_dpL, 1e-5));
    CHECK(oracles::rel_close(st.dR, st.fd_dR, 1e-5));
  }
  SUBCASE("demands do not move with the location cost") {
    CHECK(std::fabs(st.dxU_fd) < 1e-6);
    CHECK(std::fabs(st.dxL_fd) < 1e-6);
    MarketPrimitives m = kSX;
    m.c_bar_L = 0.11;
    const ExtendedEquilibrium bumped = solve_extended(m, kFX);
    CHECK(bumped.xU == Approx(0.75).epsilon(1e-12));
  }
  SUBCASE("the displayed textbook forms carry one sign slip") {
    CHECK_FALSE(st.displayed_matches_dpU);  // displayed has the opposite sign
    CHECK(st.displayed_dpU == Approx(-st.dpU).epsilon(1e-12));
    CHECK(st.displayed_matches_dpL);
    CHECK(st.displayed_matches_dR);
  }
}

TEST_CASE("guidance statics of the extended equilibrium, two routes") {
  SUBCASE("at the reference scenario (G = 0 edge)") {
    const ExtendedStaticsG st = extended_statics_G(kSX, kFX);
    CHECK(st.one_sided);
    // with lambda_alpha = 0 the added-value condition does not move, so the
    // response is the location-cost triple scaled by P'(G) R_E
    CHECK(st.dpU == Approx(0.45).epsilon(1e-12));
    CHECK(st.dpL == Approx(0.9).epsilon(1e-12));
    CHECK(st.dR == Approx(1.5).epsilon(1e-12));
    CHECK(oracles::rel_close(st.dpU, st.fd_dpU, 1e-4));
    CHECK(oracles::rel_close(st.dpL, st.fd_dpL, 1e-4));
    CHECK(oracles::rel_close(st.dR, st.fd_dR, 1e-4));
  }
  SUBCASE("with a decaying added-value cost, interior G") {
    MarketPrimitives m = kSX;
    m.G = 0.5;
    m.q = 2.0;
    PolicyFunctions f = kFX;
    f.prob.P0 = 0.3;
    f.alpha = {0.4, 0.3};
    const ExtendedStaticsG st = extended_statics_G(m, f);
    CHECK_FALSE(st.one_sided);
    CHECK(oracles::rel_close(st.dpU, st.fd_dpU, 1e-5, 1e-8));
    CHECK(oracles::rel_close(st.dpL, st.fd_dpL, 1e-5, 1e-8));
    CHECK(oracles::rel_close(st.dR, st.fd_dR, 1e-5, 1e-8));
  }
}

TEST_CASE("sign dichotomy across the added-value cost slope") {
  const auto sweep = extended_ar_sweep(kSX, kFX, 0.1, 0.3, 41);
  REQUIRE(sweep.size() == 41);
  const double P = 0.4;
  int flips = 0;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const auto& t = sweep[i];
    if (std::fabs(t.two_dalpha_dR - P) <= 1e-12) continue;  // singular point
    const bool above = t.two_dalpha_dR > P;
    if (above) {
      CHECK(t.dpU > 0);
      CHECK(t.dpL > 0);
      CHECK(t.dR > 0);
      CHECK(t.interior);
    } else {
      CHECK(t.dpU < 0);
      CHECK(t.dpL < 0);
      CHECK(t.dR < 0);
      CHECK_FALSE(t.interior);
    }
    if (i > 0 && (sweep[i - 1].two_dalpha_dR > P) != above) ++flips;
  }
  CHECK(flips >= 1);
}
