#pragma once

// Local behavior at the two sonic triple points: D (weak discontinuity) and
// B (vacuum boundary).

#include <array>
#include <optional>

#include "ves/core.hpp"

namespace ves {

using Mat2 = std::array<std::array<double, 2>, 2>;
using Vec2 = std::array<double, 2>;

/// Linearization of (dH/ds, dU/ds) = (F, G) at D, state ordered (H, U).
struct LinearizationAtD {
  Mat2 matrix;
  double lambda1;  ///< slow eigenvalue 2(gamma-1)(mu-1)/(3-gamma)
  double lambda2;  ///< fast eigenvalue ((3-gamma)mu-gamma-1)/(3-gamma)
  Vec2 v1;         ///< (C2(D), 1)
  Vec2 v2;         ///< (C1(D), 1)
  double beta;     ///< lambda2 / lambda1 > 1
  bool resonant;   ///< beta within 1e-9 of an integer
};

/// Builds the matrix from partials() and cross-checks each entry against its
/// closed form; a mismatch above 1e-10 relative throws ComputationError.
LinearizationAtD linearize_at_d(const GasParams& params);

/// Closed-form matrix entries at D, for cross-checking.
Mat2 closed_form_matrix_at_d(const GasParams& params);

enum class ExpansionAnchor { D_left, D_right, B_right };
enum class Side { left, right };

/// One-sided expansion U = U0 + a_U (y - y0) [+ U_beta |y - y0|^beta] + ...
struct LocalExpansion {
  ExpansionAnchor anchor;
  double y0;
  PhasePoint value;  ///< (U, H) at y0
  double linear_coeff_U;
  double linear_coeff_H;
  std::optional<double> beta_coeff_U;  ///< D_left only; empty until fitted
  std::optional<double> beta_power;    ///< D_left only
  bool quadratic_tail = true;          ///< O(|y-y0|^2) terms are not modeled

  /// Truncated expansion at y (linear plus the beta term when known).
  PhasePoint evaluate(double y) const;
};

/// Right side: the special solution (regular series, direction v2).
/// Left side: the B-D curve (direction v1) with the |y - y_D|^beta correction.
LocalExpansion expansion_at_d(Side side, double y_D, const GasParams& params,
                              std::optional<double> U_beta = std::nullopt);

/// First-order expansion of the B-D curve at the vacuum boundary y_B < 0.
LocalExpansion expansion_at_b(double y_B, const GasParams& params);

/// dU/dz and dH/dz at B along the C2 branch, z = ln(-y).
struct ZDerivatives {
  double dU_dz;
  double dH_dz;
};
ZDerivatives z_derivatives_at_b(const GasParams& params);

/// Eigenvalues of the linearization at B: mu - 1 < 0 < (gamma-1)(1-mu).
struct SaddleData {
  double lambda1;
  double lambda2;
};
SaddleData saddle_data_at_b(const GasParams& params);

}  // namespace ves
