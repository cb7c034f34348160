#pragma once

// First-order finite-volume solver for the 1D isentropic Euler equations
//   rho_t + (rho u)_x = 0,  (rho u)_t + (rho u^2 + p)_x = 0,  p = A rho^gamma
// with a local Lax-Friedrichs flux, used to evolve the analytic data from
// t = -T and watch the vacuum boundary.

#include <cstddef>
#include <limits>
#include <memory>
#include <vector>

#include "ves/core.hpp"
#include "ves/profile.hpp"

namespace ves {

enum class RightBoundary {
  outflow,   ///< zero-gradient ghost cell
  analytic,  ///< ghost cell from the self-similar solution
};

struct FVState {
  double t;
  double x_lo, x_hi;
  int n;
  std::vector<double> rho;  ///< cell averages
  std::vector<double> mom;  ///< cell averages of rho u
  GasParams params;
  double floor = 1e-12;
  RightBoundary right = RightBoundary::outflow;
  std::shared_ptr<const GlobalSolution> source;  ///< required for analytic ghosts

  std::size_t floor_activations = 0;
  double boundary_mass_out = 0.0;  ///< cumulative net mass flux out of the domain
  double floor_mass_added = 0.0;   ///< cumulative mass change from flooring

  double dx() const { return (x_hi - x_lo) / n; }
};

/// Cell averages (8-point Gauss per cell) of the analytic fields at t = -T,
/// zeros for x < 0. Requires x_lo < 0 < x_hi, T > 0, n >= 64.
FVState init_grid(std::shared_ptr<const GlobalSolution> sol, double T, double x_lo, double x_hi,
                  int n, RightBoundary right = RightBoundary::outflow);

/// One forward-Euler Rusanov update with dt = min(cfl dx / max(|u|+c), dt_max).
/// Requires 0 < cfl <= 0.5. ComputationError on NaN.
FVState step(const FVState& state, double cfl,
             double dt_max = std::numeric_limits<double>::infinity());

double total_mass(const FVState& state);

/// Left edge of the leftmost cell with rho > threshold (x_hi if none).
double tracked_boundary(const FVState& state, double threshold = 1e-8);

struct TrajectorySample {
  double t;
  double b_num;
  double b_analytic;
};

struct EvolveResult {
  FVState state;
  std::vector<TrajectorySample> trajectory;  ///< initial state and every record_every-th step
  std::size_t steps;
};

/// Steps until t_end (the last step is shortened to land on it).
EvolveResult evolve(FVState state, double t_end, double cfl, int record_every = 1);

/// sum |rho_num - rho_exact| dx over cells inside [x_a, x_b], with rho_exact
/// the 8-point Gauss cell average of the analytic density at state.t.
double l1_density_error(const FVState& state, const GlobalSolution& sol, double x_a, double x_b);

}  // namespace ves
