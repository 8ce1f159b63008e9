#include <doctest.h>

#include <cmath>
#include <random>

#include "foodex/demand.hpp"
#include "oracles.hpp"

using namespace foodex;
using doctest::Approx;

namespace {
const MarketPrimitives kS0 = oracles::baseline_market();
const PolicyFunctions kF0 = oracles::baseline_functions();
}  // namespace

TEST_CASE("specific demand values and price partials") {
  const SpecificDemand sys(kS0, kF0);
  const DemandEval e = sys.eval(4.0 / 3.0, 5.0 / 3.0, kS0.R, kS0.G);
  CHECK(e.xU == Approx(5.0 / 12.0).epsilon(1e-12));
  CHECK(e.xL == Approx(7.0 / 12.0).epsilon(1e-12));
  CHECK(e.dxU_dpU == Approx(-1.25).epsilon(1e-12));
  CHECK(e.dxU_dpL == Approx(1.25).epsilon(1e-12));
  CHECK(e.d2xU_dpUpU == 0.0);
  CHECK(e.d2xU_dpUpL == 0.0);

  SUBCASE("no price gap, all demand flows to L") {
    const DemandEval z = sys.eval(1.5, 1.5, kS0.R, kS0.G);
    CHECK(z.xU == 0.0);
    CHECK(z.xL == 1.0);
  }
  SUBCASE("adding-up and antisymmetric price partials") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(1.0, 2.5);
    for (int i = 0; i < 100; ++i) {
      const double pU = u(rng), pL = u(rng);
      const DemandEval r = sys.eval(pU, pL, kS0.R, kS0.G);
      CHECK(r.xU + r.xL == Approx(1.0).epsilon(1e-14));
      CHECK(r.dxU_dpU == Approx(-r.dxL_dpU).epsilon(1e-14));
      CHECK(r.dxU_dpL == Approx(-r.dxL_dpL).epsilon(1e-14));
    }
  }
  SUBCASE("sign conditions at points with pL > pU") {
    const DemandEval r = sys.eval(1.3, 1.7, kS0.R, kS0.G);
    CHECK(r.dxU_dpU < 0);
    CHECK(r.dxL_dpL < 0);
    CHECK(r.dxU_dpL > 0);
    CHECK(r.dxL_dpU > 0);
    CHECK(r.dxU_dR < 0);
    CHECK(r.dxL_dR > 0);
    CHECK(r.dxU_dG < 0);
    CHECK(r.dxL_dG > 0);
  }
}

TEST_CASE("specific demand guidance partial has the expected closed form") {
  const SpecificDemand sys(kS0, kF0);
  const double pU = 4.0 / 3.0, pL = 5.0 / 3.0;
  const DemandEval e = sys.eval(pU, pL, kS0.R, kS0.G);
  // -(pL - pU) P'(G) / (P^2 R)
  const double expected = -(pL - pU) * 0.6 / (0.16 * 2.0);
  CHECK(e.dxU_dG == Approx(expected).epsilon(1e-12));
  CHECK(expected == Approx(-0.625).epsilon(1e-12));
}

TEST_CASE("linear demand") {
  LinearDemandParams params{2.0, 1.0, 0.5, 0.1, 0.1};
  const LinearDemand sys(params, kS0, kF0);
  const DemandEval e = sys.eval(1.0, 1.0, 1.0, 0.0);
  CHECK(e.xU == Approx(1.4).epsilon(1e-14));
  CHECK(e.xL == Approx(1.6).epsilon(1e-14));
  CHECK(e.dxU_dpU == Approx(-1.0));
  CHECK(e.dxU_dpL == Approx(0.5));

  SUBCASE("cross slope must be strictly inside (0, B)") {
    LinearDemandParams bad = params;
    bad.C = 0.0;
    CHECK_THROWS_AS(LinearDemand(bad, kS0, kF0), std::invalid_argument);
    bad.C = 1.0;
    CHECK_THROWS_AS(LinearDemand(bad, kS0, kF0), std::invalid_argument);
  }
  SUBCASE("cost structure is shared with the threshold model") {
    const CostEval c = sys.costs(kS0.R, kS0.G);
    CHECK(c.cU == Approx(1.0));
    CHECK(c.cL == Approx(1.2));
    CHECK(c.dcL_dcbarL == 1.0);
    CHECK(c.dcL_dR == Approx(0.05));
    CHECK(c.dcL_dG == Approx(-0.05));
  }
}

TEST_CASE("finite-difference partials agree with the analytic ones") {
  const SpecificDemand specific(kS0, kF0);
  const LinearDemand linear({2.0, 1.0, 0.5, 0.1, 0.1}, kS0, kF0);
  const DemandSystem* systems[] = {&specific, &linear};

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(1.05, 2.2);
  std::uniform_real_distribution<double> g(0.1, 2.0);

  for (const DemandSystem* sys : systems) {
    for (int i = 0; i < 100; ++i) {
      const double pU = u(rng), pL = u(rng), R = 1 + u(rng), G = g(rng);
      const DemandEval a = sys->eval(pU, pL, R, G);
      const FdDemandEval fd = fd_partials(*sys, pU, pL, R, G);
      CHECK_FALSE(fd.one_sided);
      const DemandEval& b = fd.values;
      CHECK(oracles::rel_close(a.dxU_dpU, b.dxU_dpU, 1e-5));
      CHECK(oracles::rel_close(a.dxU_dpL, b.dxU_dpL, 1e-5));
      CHECK(oracles::rel_close(a.dxL_dpU, b.dxL_dpU, 1e-5));
      CHECK(oracles::rel_close(a.dxL_dpL, b.dxL_dpL, 1e-5));
      CHECK(oracles::rel_close(a.dxU_dR, b.dxU_dR, 1e-5, 1e-9));
      CHECK(oracles::rel_close(a.dxU_dG, b.dxU_dG, 1e-5, 1e-9));
      CHECK(oracles::rel_close(a.dxL_dR, b.dxL_dR, 1e-5, 1e-9));
      CHECK(oracles::rel_close(a.dxL_dG, b.dxL_dG, 1e-5, 1e-9));
      CHECK(oracles::rel_close(a.d2xU_dpU_dR, b.d2xU_dpU_dR, 1e-4, 1e-7));
      CHECK(oracles::rel_close(a.d2xU_dpU_dG, b.d2xU_dpU_dG, 1e-4, 1e-7));
      CHECK(oracles::rel_close(a.d2xL_dpL_dR, b.d2xL_dpL_dR, 1e-4, 1e-7));
      CHECK(oracles::rel_close(a.d2xL_dpL_dG, b.d2xL_dpL_dG, 1e-4, 1e-7));
    }
  }
}

TEST_CASE("linear second price partials are numerically zero") {
  const LinearDemand sys({2.0, 1.0, 0.5, 0.1, 0.1}, kS0, kF0);
  const FdDemandEval fd = fd_partials(sys, 1.3, 1.6, 2.0, 0.5);
  CHECK(std::fabs(fd.values.d2xU_dpUpU) < 1e-4);
  CHECK(std::fabs(fd.values.d2xU_dpUpL) < 1e-4);
  CHECK(std::fabs(fd.values.d2xL_dpLpL) < 1e-4);
}

TEST_CASE("one-sided stencils kick in at the G = 0 boundary") {
  const SpecificDemand sys(kS0, kF0);
  const FdDemandEval fd = fd_partials(sys, 4.0 / 3.0, 5.0 / 3.0, kS0.R, 0.0);
  CHECK(fd.one_sided);
  const DemandEval a = sys.eval(4.0 / 3.0, 5.0 / 3.0, kS0.R, 0.0);
  CHECK(oracles::rel_close(a.dxU_dG, fd.values.dxU_dG, 1e-4));
}
