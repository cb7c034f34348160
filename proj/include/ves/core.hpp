#pragma once

// Algebra of the self-similar reduction of the isentropic Euler equations
// written in (U, H) similarity variables:
//
//   y dH/dy = F(U,H) / Delta(U,H),   y dU/dy = G(U,H) / Delta(U,H)
//
//   F = 2H [H - (U^2 - k1 U + mu)]
//   G = H (U + k2) - U (U - 1)(U - mu)
//   Delta = (U - 1)^2 - H
//
// The sonic curve is Delta = 0.

#include <array>
#include <optional>
#include <string_view>

namespace ves {

/// Problem constants for one (gamma, mu) instance. Build with derived_constants().
struct GasParams {
  double gamma;       ///< adiabatic exponent, 1 < gamma < 3
  double mu;          ///< 1/delta, 0 < mu < 1
  double delta;       ///< similarity exponent
  double k1;          ///< ((gamma+1) + mu(3-gamma)) / 2
  double k2;          ///< 2(1-mu)/(gamma-1)
  double A_pressure;  ///< p = A rho^gamma with A gamma/(gamma-1) = 1
};

/// Validates 1<gamma<3, 0<mu<1 and fills the derived constants.
/// Throws DomainError naming the violated bound.
GasParams derived_constants(double gamma, double mu);

struct PhasePoint {
  double U;
  double H;
};

struct SlopeBranches {
  double c1;
  double c2;
};

struct Partials {
  double F_H, F_U, G_H, G_U;
};

enum class CriticalLabel { A, B, C, D, E };
enum class CriticalKind { triple, double_point };

std::string_view to_string(CriticalLabel label);
std::string_view to_string(CriticalKind kind);

struct CriticalPointInfo {
  CriticalLabel label;
  std::optional<PhasePoint> location;  ///< empty for E (U, H -> infinity)
  CriticalKind kind;
  std::optional<SlopeBranches> slopes;  ///< empty for E
};

double f_rhs(PhasePoint p, const GasParams& params);
double g_rhs(PhasePoint p, const GasParams& params);
double delta_fn(PhasePoint p);
Partials partials(PhasePoint p, const GasParams& params);

PhasePoint point_A();
PhasePoint point_B();
PhasePoint point_C(const GasParams& params);
PhasePoint point_D(const GasParams& params);
/// The double point (mu, 0). Diagnostic only; not on the trajectory.
PhasePoint extra_double_point(const GasParams& params);

/// Both limits of dH/dU = F/G at a finite critical point (A, B, C or D).
///
/// c1 is the branch that continues the special parabola H^sp at A, C, D and
/// the invariant line H = 0 at B; c2 is the other root. Labels come from
/// matching those reference slopes, not from the sign in the quadratic
/// formula, because that sign assignment flips with G_H.
SlopeBranches slope_branches(CriticalLabel label, const GasParams& params);

/// The five points A..E in order, with closed-form locations.
std::array<CriticalPointInfo, 5> critical_points(const GasParams& params);

}  // namespace ves
