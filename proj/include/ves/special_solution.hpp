#pragma once

// Closed-form special solution H^sp(U) = ((gamma-1)^2/4) U^2 and the implicit
// maps between y and U along its three pieces:
//
//   CA  t<0, y in (0, inf),     U in (0, U_C):   y =  K (U_C-U)^(1/mu-1) / U^(1/mu)
//   AE  t>0, y in (0, inf),     U in (-inf, 0):  y =  K (U_C-U)^(1/mu-1) / (-U)^(1/mu)
//   ED  t>0, y in (y_D, 0),     U in (U_D, inf): y = -K (U-U_C)^(1/mu-1) / U^(1/mu)
//
// Along each piece U(y) solves  y U' = -((gamma+1)U - 2mu) U / ((gamma+1)U - 2),
// the self-similar form of Burgers' equation.

#include <string_view>

#include "ves/core.hpp"

namespace ves {

enum class Branch { CA, AE, ED, BD };

std::string_view to_string(Branch b);

/// One piece of the special solution with integration constant K > 0.
struct SpecialSolutionMap {
  GasParams params;
  double K;
  Branch branch;  ///< never BD
};

/// Throws DomainError for K <= 0 or branch == BD.
SpecialSolutionMap make_special_map(const GasParams& params, double K, Branch branch);

double h_sp(double U, const GasParams& params);

/// y_D = -K (U_D - U_C)^(1/mu-1) / U_D^(1/mu): where ED meets the sonic point D.
double sonic_y(const GasParams& params, double K);

struct Interval {
  double lo;
  double hi;
};

/// Open U-range of the branch (infinite ends as +-inf).
Interval u_range(const SpecialSolutionMap& map);
/// Open y-range of the branch.
Interval y_range(const SpecialSolutionMap& map);

/// Closed form y(U). DomainError unless U is strictly inside u_range.
double y_of_u(double U, const SpecialSolutionMap& map);

/// Inverse of y_of_u by bracketed root finding on ln|y(U)|.
/// DomainError unless y is strictly inside y_range.
double u_of_y(double y, const SpecialSolutionMap& map, double tol = 1e-13);

/// y U(y), the quantity that stays finite through E. On AE and ED it equals
/// -K (1 - U_C/U)^(1/mu - 1); at y = 0 (only for AE/ED) it returns the limit -K.
double y_times_u(double y, const SpecialSolutionMap& map);

enum class AsymptoticPoint { C, A_right, A_left, E_right };

/// Leading-order behavior U ~ offset + coefficient * y^exponent near a point.
///   C (y->0+ on CA):         U_C - U_C^(1/(1-mu)) / K^(mu/(1-mu)) * y^(mu/(1-mu))
///   A_right (y->inf on CA):  K^mu U_C^(1-mu) y^-mu
///   A_left (y->inf on AE):  -K^mu U_C^(1-mu) y^-mu
///   E_right (y->0+ on AE):  -K / y
struct AsymptoticCoeffs {
  double offset;
  double coefficient;
  double exponent;
};

AsymptoticCoeffs asymptotic_coeffs(AsymptoticPoint point, const GasParams& params,
                                   double K);

/// |y U'(y) + ((gamma+1)U - 2mu) U / ((gamma+1)U - 2)| / max(1, |y U'(y)|) with
/// U'(y) obtained by implicit differentiation of the closed form.
/// DomainError at the pole (gamma+1)U = 2 or outside the branch.
double burgers_residual(double y, const SpecialSolutionMap& map);

}  // namespace ves
