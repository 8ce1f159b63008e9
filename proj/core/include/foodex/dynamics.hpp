#ifndef FOODEX_DYNAMICS_HPP
#define FOODEX_DYNAMICS_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "foodex/equilibrium.hpp"

namespace foodex {

struct AdjustmentConfig {
  double kU = 1;        // adjustment speed of producer U (> 0)
  double kL = 1;        // adjustment speed of producer L (> 0)
  double dt = 0.01;     // forward-Euler step (> 0)
  double horizon = 200; // total simulated time (> 0)
  std::array<double, 2> init = {0, 0};  // starting prices

  void validate() const;
};

struct TrajectorySample {
  double t = 0;
  double pU = 0, pL = 0;
  double z2 = 0;  // Liapunov value kU gapU^2 + kL gapL^2 (best-response gaps)
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::array<double, 2> nash = {0, 0};  // rest point the run is measured against
  bool converged = false;
  double final_distance = 0;  // max-norm distance to the rest point
  bool truncated = false;     // a best response failed mid-run
  std::string note;
};

/// Weighted squared distance of the given prices from the equilibrium:
/// kU (pUE - pU)^2 + kL (pLE - pL)^2.
double liapunov_z2(const AdjustmentConfig& config, const Equilibrium& eq,
                   double pU, double pL);

// Price adjustment over time: each producer relaxes toward its current best
// response, dp_j/dt = k_j (BR_j(p_rival) - p_j).  The recorded z2 uses the
// best-response gaps, which is the quadratic form whose decay certifies
// stability for every choice of adjustment speeds; convergence is declared
// when the max-norm distance to the Nash point drops below 1e-8.
Trajectory simulate(const DemandSystem& system, const MarketPrimitives& prims,
                    const PolicyFunctions& funcs, const AdjustmentConfig& config);

struct DescentVerdict {
  bool ok = false;
  std::ptrdiff_t first_violation = -1;  // sample index, -1 when none
};
/// z2 must fall strictly at every step while above tol and never rise.
DescentVerdict check_descent(const Trajectory& trajectory, double tol = 1e-12);

/// CSV with columns t,pU,pL,Z2.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

}  // namespace foodex

#endif  // FOODEX_DYNAMICS_HPP
