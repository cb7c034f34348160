#pragma once

// Independent numerical checks of the assembled solution.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ves/profile.hpp"

namespace ves {

enum class CheckStatus { pass, fail, warn };

std::string_view to_string(CheckStatus s);

struct CheckReport {
  std::string check_name;
  CheckStatus status;
  double measured;
  std::optional<double> expected;
  double tolerance;
  std::string details;
};

/// pass iff |measured - expected| <= tolerance.
CheckReport compare_report(std::string name, double measured, double expected, double tolerance,
                           std::string details = {});

/// pass iff measured <= tolerance (no expected value).
CheckReport bound_report(std::string name, double measured, double tolerance,
                         std::string details = {});

/// Rectangle in (t, y), y = x / |t|^delta, entirely on one side of t = 0.
struct PdeRegion {
  std::string name;
  double t_lo, t_hi;
  double y_lo, y_hi;
};

struct PdeGrid {
  int nt = 5;          ///< sample times
  int ny = 9;          ///< sample y per time
  double step = 2e-3;  ///< coarsest difference step, relative to |t| and to the x extent
  int levels = 3;      ///< step, step/2, step/4, ...
};

/// The four smooth regions used by default: pre (t<0), AE, ED and BD (t>0).
std::vector<PdeRegion> default_pde_regions(const GlobalSolution& sol);

/// Central-difference residuals of
///   h_t + u h_x + (gamma-1) h u_x = 0,   u_t + u u_x + h_x = 0
/// at fixed sample points for each step level. measured = max residual at the
/// finest level; details carry the observed orders. Fails if the order is
/// below 1.9 or the residual above 1e-4. PreconditionError if any stencil
/// comes within 5 steps of t = 0, the sonic curve or the vacuum boundary.
CheckReport pde_residual(const GlobalSolution& sol, const PdeRegion& region,
                         const PdeGrid& grid = {});

/// max |u + 2c/(gamma-1)| / max(1, |u|) on a special-solution branch
/// (<= 1e-9), or min of the same quantity over the B-D interior (> 1e-6).
CheckReport simple_wave_check(const GlobalSolution& sol, Branch branch, int samples = 200);

struct WeakFormResult {
  double integral;  ///< I = int int rho phi_t + rho u phi_x
  double scale;     ///< int int |rho phi_t| + |rho u phi_x|
  double error_estimate;
};

/// Quadrature of the weak mass equation against the bump
/// phi = b(t/eps) b((x-x0)/sigma), b(s) = (1-s^2)^3, with H scaled by
/// (1 + perturbation) for t > 0. Gauss-Legendre, 64 nodes per axis on each
/// side of t = 0, repeated with 128 for the error estimate.
WeakFormResult weak_form_integral(const GlobalSolution& sol, double x0, double sigma, double eps,
                                  double perturbation);

/// measured = |I| / scale, expected 0, tolerance 1e-8.
CheckReport weak_form_check(const GlobalSolution& sol, double x0 = 1.0, double sigma = 0.5,
                            double eps = 0.1, double perturbation = 0.0);

struct OneSidedSlopes {
  double left;
  double right;
};

/// U'(y_D-) and U'(y_D+) from difference quotients of U recovered from u(t, x)
/// over offsets [1e-4, 1e-2] |y_D|, extrapolated to zero offset.
OneSidedSlopes fitted_sonic_slopes(const GlobalSolution& sol, double t);

/// Both fitted slopes within 1e-3 relative of the closed forms and unequal.
CheckReport sonic_jump_check(const GlobalSolution& sol, double t = 1.0);

/// h_x(t, b(t)+) extrapolated from one-sided quotients h(t, b+d)/d against the
/// expansion value; within 5%, positive and finite.
CheckReport physical_vacuum_check(const GlobalSolution& sol, double t);

/// Fits |u(t, 0)| = P t^e over t in [t_lo, t_hi] (0 < t_lo < t_hi <= 0.1), and
/// |u(+-1e-8, x)| = Q x^s over x in [1e-3, 1e-1]. Reports, in order:
/// time exponent (delta-1), prefactor (K delta), spatial exponent before and
/// after t = 0 (1-mu); all within 2% relative.
std::vector<CheckReport> holder_check(const GlobalSolution& sol, double t_lo = 1e-4,
                                      double t_hi = 1e-2);

/// Re-integrates the full (U, H) system in y with an independent
/// Runge-Kutta-Fehlberg 7(8) pair from the solution's value at y_start and
/// compares with the solution at y_end (relative deviation <= 1e-7).
/// PreconditionError if the interval leaves the branch or comes within 1e-4
/// of a critical y.
CheckReport ode_oracle_check(const GlobalSolution& sol, Branch branch, double y_start,
                             double y_end);

/// Every check with default arguments, in a fixed order.
std::vector<CheckReport> run_all_checks(const GlobalSolution& sol, double perturbation = 0.0);

/// Check names accepted by run_checks: pde, simple_wave, weak_form, sonic_jump,
/// physical_vacuum, holder, ode_oracle.
std::vector<std::string> check_families();

/// Runs the named families only. DomainError for an unknown name.
std::vector<CheckReport> run_checks(const GlobalSolution& sol,
                                    const std::vector<std::string>& families,
                                    double perturbation = 0.0);

}  // namespace ves
