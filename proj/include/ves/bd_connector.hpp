#pragma once

// The integral curve joining the vacuum point B = (1, 0) to the sonic point D.
//
// The curve leaves B along the unstable direction of the saddle (slope
// C2(B) > 0) and is integrated in U as dH/dU = F/G, where it stays between
// the lower barrier H_G (the zero set of G) and the upper barrier H^sp.
// Alongside H we accumulate w(U) = int_1^U Delta/G dU', which equals
// z(U) - z_B for z = ln(-y); with z_D known from the special solution this
// fixes y on the whole curve, including y_B.

#include <cstddef>
#include <optional>
#include <vector>

#include "ves/core.hpp"
#include "ves/sonic_local.hpp"
#include "ves/special_solution.hpp"

namespace ves {

struct CurveSample {
  double y;  ///< NaN until parametrized
  double U;
  double H;
};

struct ProfileCurve {
  Branch branch;
  std::vector<CurveSample> samples;  ///< strictly monotone in y once parametrized
  Interval y_interval;
  GasParams params;
  double K;
};

/// H_G(U) = U(U-1)(U-mu)/(U+k2). DomainError at the pole U = -k2.
double h_g(double U, const GasParams& params);
/// dH_G/dU.
double h_g_prime(double U, const GasParams& params);

struct ConnectOptions {
  double seed_eps = 1e-6;      ///< start at U = 1 + seed_eps
  double rtol = 1e-11;
  double atol = 1e-13;
  double eps_D_factor = 1e-4;  ///< stop at U_D - eps_D, eps_D = factor (U_D - 1)
  double terminal_tol = 1e-6;  ///< allowed miss of the linear D expansion
};

/// Quadratic coefficient a of H = C2(B) e + a e^2 + O(e^3), e = U - 1.
double seed_quadratic_coeff(const GasParams& params);

/// lim Delta/G along the B-D curve at D (equals 1 / (y_D U'(y_D^-))).
double dz_du_at_d(const GasParams& params);

struct BdConnection {
  ProfileCurve curve;      ///< accepted steps from B to D; y unset
  std::vector<double> w;   ///< int_1^U Delta/G at each sample (B patch included)
  double w_total;          ///< int_1^{U_D} Delta/G (both patches included)
  double eps_D;
  double terminal_miss;    ///< |H(U_D - eps_D) - (H_D - C2(D) eps_D)| / max(1, H_D)
  double max_delta;        ///< max of Delta over samples (expected < 0)
  double min_g;            ///< min of G over samples (expected > 0)
  std::size_t barrier_checks;  ///< accepted steps checked against H_G < H < H^sp
  ConnectOptions options;
};

/// Integrates from B to D. Throws BarrierViolation if an accepted step
/// leaves H_G < H < H^sp, ComputationError if the D miss exceeds terminal_tol.
BdConnection connect_bd(const GasParams& params, const ConnectOptions& options = {});

struct ParametrizedBd {
  ProfileCurve curve;  ///< samples with y filled, ascending in y
  double y_B;
  double y_D;
  double z_B;
  double z_D;
};

/// Fills y = -exp(z) on the samples using z_D = ln(-y_D). Throws
/// ComputationError if G changes sign or Delta/G >= 0 in the interior.
ParametrizedBd parametrize_y(const BdConnection& connection, double y_D);

/// Evaluates the parametrized B-D curve at any y in [y_B, y_D] or U in [1, U_D]
/// by short integrations from the nearest stored sample.
class BdBranch {
 public:
  BdBranch(const BdConnection& connection, const ParametrizedBd& param);

  double y_B() const { return y_B_; }
  double y_D() const { return y_D_; }
  const GasParams& params() const { return params_; }

  PhasePoint at_y(double y) const;
  PhasePoint at_u(double U) const;
  /// y at which the curve takes the value U.
  double y_at_u(double U) const;

 private:
  struct Node {
    double U, H, z;
  };
  GasParams params_;
  std::vector<Node> nodes_;  ///< ascending U, descending z
  double y_B_, y_D_, z_B_, z_D_;
  double seed_a_;
  double c2_D_;
  LocalExpansion at_b_;
  LocalExpansion at_d_;
};

struct BetaFit {
  double U_beta;
  double beta;
  double residual_rms;
  std::size_t points;
  bool well_determined;  ///< false -> warning: beta term buried under the tail
};

/// Least-squares fit of U(y) - U_D - U'(y_D)(y - y_D) on the left of y_D over
/// |y - y_D| in [1e-4, 1e-2] |y_D|, modeled by integer powers 2..floor(beta)+1
/// plus U_beta |y - y_D|^beta (the beta column is dropped when resonant).
BetaFit fit_beta_coeff(const BdBranch& branch, const LinearizationAtD& lin);

/// Same data, exponent left free: returns the power p in [lo, hi] that best
/// fits the data together with the integer powers below it.
double fit_beta_exponent(const BdBranch& branch, double lo, double hi);

}  // namespace ves
