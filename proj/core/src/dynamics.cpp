#include "foodex/dynamics.hpp"

#include <cmath>
#include <ostream>

#include "foodex/numeric.hpp"

namespace foodex {

void AdjustmentConfig::validate() const {
  auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
  if (!(std::isfinite(kU) && kU > 0)) fail("dynamics.kU: must be > 0");
  if (!(std::isfinite(kL) && kL > 0)) fail("dynamics.kL: must be > 0");
  if (!(std::isfinite(dt) && dt > 0)) fail("dynamics.dt: must be > 0");
  if (!(std::isfinite(horizon) && horizon > 0)) fail("dynamics.horizon: must be > 0");
  if (!std::isfinite(init[0]) || !std::isfinite(init[1]))
    fail("dynamics init prices must be finite");
}

double liapunov_z2(const AdjustmentConfig& config, const Equilibrium& eq,
                   double pU, double pL) {
  const double yU = eq.pU - pU, yL = eq.pL - pL;
  return config.kU * yU * yU + config.kL * yL * yL;
}

Trajectory simulate(const DemandSystem& system, const MarketPrimitives& prims,
                    const PolicyFunctions& funcs, const AdjustmentConfig& config) {
  config.validate();
  constexpr double conv_tol = 1e-8;

  // Rest point of the relaxation: the Nash equilibrium.
  const Equilibrium nash = solve_newton(system, prims, funcs);

  Trajectory traj;
  traj.nash = {nash.pU, nash.pL};
  const std::size_t max_steps =
      static_cast<std::size_t>(std::ceil(config.horizon / config.dt));
  traj.samples.reserve(max_steps + 1);

  double pU = config.init[0], pL = config.init[1];
  double t = 0;
  for (std::size_t step = 0; step <= max_steps; ++step) {
    double gapU, gapL;
    try {
      gapU = best_response(system, Producer::U, pL, prims.R, prims.G, pU) - pU;
      gapL = best_response(system, Producer::L, pU, prims.R, prims.G, pL) - pL;
    } catch (const NoBestResponse& err) {
      traj.truncated = true;
      traj.note = err.what();
      break;
    }
    const double z2 = config.kU * gapU * gapU + config.kL * gapL * gapL;
    traj.samples.push_back({t, pU, pL, z2});

    const double dist = std::max(std::fabs(nash.pU - pU), std::fabs(nash.pL - pL));
    if (dist < conv_tol) {
      traj.converged = true;
      break;
    }
    pU += config.dt * config.kU * gapU;
    pL += config.dt * config.kL * gapL;
    t += config.dt;
  }
  if (!traj.samples.empty()) {
    const auto& last = traj.samples.back();
    traj.final_distance =
        std::max(std::fabs(nash.pU - last.pU), std::fabs(nash.pL - last.pL));
  }
  return traj;
}

DescentVerdict check_descent(const Trajectory& trajectory, double tol) {
  const auto& s = trajectory.samples;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double prev = s[i - 1].z2, cur = s[i].z2;
    // strict decrease above tol; below tol the value must stay below tol
    if ((prev > tol && cur >= prev) || (prev <= tol && cur > tol)) {
      return {false, static_cast<std::ptrdiff_t>(i)};
    }
  }
  return {true, -1};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
  os << "t,pU,pL,Z2\n";
  for (const auto& s : trajectory.samples) {
    os << format_sig12(s.t) << ',' << format_sig12(s.pU) << ','
       << format_sig12(s.pL) << ',' << format_sig12(s.z2) << '\n';
  }
}

}  // namespace foodex
