#pragma once

// The global self-similar solution C -> A -> E -> D -> B and its physical
// fields. For t < 0 the profile is the CA piece of the special solution; for
// t > 0 it is AE (y > 0), ED (y_D <= y < 0) and the B-D curve (y_B <= y < y_D).
//
//   u = -+ delta |t|^(delta-1) y U(y)      (minus for t < 0)
//   h = delta^2 |t|^(2(delta-1)) y^2 H(y) / (gamma-1),  rho = h^(1/(gamma-1))
//   b(t) = 0 for t <= 0, y_B t^delta for t > 0

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "ves/bd_connector.hpp"
#include "ves/core.hpp"
#include "ves/sonic_local.hpp"
#include "ves/special_solution.hpp"

namespace ves {

struct AssembleOptions {
  ConnectOptions connect;
  double match_tol = 1e-8;  ///< E- and D-matching tolerance
};

struct MatchingReport {
  double e_left;   ///< y U just left of E (ED side)
  double e_right;  ///< y U just right of E (AE side)
  double d_jump_U; ///< |U_ED(y_D) - U_BD(y_D)|
  double d_jump_H;
};

struct GlobalSolution {
  GasParams params;
  double K;
  double y_D;
  double y_B;
  SpecialSolutionMap ca, ae, ed;
  std::shared_ptr<const BdBranch> bd;
  ProfileCurve bd_curve;  ///< accepted integration steps, y filled
  LocalExpansion d_left, d_right, b_right;
  LinearizationAtD lin_d;
  BetaFit beta_fit;
  MatchingReport matching;
  double terminal_miss;
};

/// Builds every branch and checks the E and D matching conditions.
/// Sub-construction failures are rethrown with the branch name prefixed.
GlobalSolution assemble(const GasParams& params, double K, const AssembleOptions& options = {});

/// 0 for t <= 0, y_B t^delta for t > 0.
double boundary(const GlobalSolution& sol, double t);

/// (U, H) on the given branch at y. Seams: y_D belongs to ED, y_B to BD.
PhasePoint profile_at(const GlobalSolution& sol, Branch branch, double y);

/// y U(y) on a branch, finite through E (y = 0 allowed on AE and ED).
double y_u_at(const GlobalSolution& sol, Branch branch, double y);

enum class Region {
  pre_singularity,
  post_interior,
  post_between_sonic_and_boundary,
  vacuum,
  boundary,
  sonic
};

std::string_view to_string(Region r);

struct PhysicalState {
  double rho;
  double u;
  double h;
  double c;
  Region region;
};

/// Physical fields at (t, x). DomainError at (0, 0) and for t < 0, x < 0.
/// At t = 0, x > 0 the common limit of both sides is returned.
PhysicalState eval_physical(const GlobalSolution& sol, double t, double x);

/// Branch that eval_physical uses at (t, x); empty for vacuum and for the
/// t = 0 and x = 0 boundary lines, where no profile is evaluated.
std::optional<Branch> branch_at(const GlobalSolution& sol, double t, double x);

struct InitialState {
  double rho0;
  double u0;
};

/// Data at t = -T. Requires T > 0 and x >= 0.
InitialState initial_data(const GlobalSolution& sol, double T, double x);

/// Coefficient c1 in u0(x) = -2x/((gamma+1)T) + c1 x^(1/(1-mu)) + ...
double initial_data_c1(const GlobalSolution& sol, double T);

/// h_x(t, b(t)+) from the first-order expansion at B, t > 0.
double boundary_enthalpy_slope(const GlobalSolution& sol, double t);

struct ProfileRow {
  double y;
  double U;
  double H;
  Branch branch;
};

/// Exactly `rows` plot-ready samples (rows >= 8) split evenly over CA, AE, ED
/// and BD: CA and AE log-spaced in y over [1e-4, 1e4] |y_D|, ED and BD uniform.
std::vector<ProfileRow> sample_profile(const GlobalSolution& sol, int rows);

}  // namespace ves
