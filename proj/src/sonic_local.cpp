#include "ves/sonic_local.hpp"

#include <cmath>
#include <sstream>

#include "ves/errors.hpp"

namespace ves {

Mat2 closed_form_matrix_at_d(const GasParams& p) {
  const double g = p.gamma, mu = p.mu;
  const double a = 3.0 - g, gm1 = g - 1.0;
  const double poly = g * g - 2.0 * g + 5.0;
  return {{
      {2.0 * gm1 * gm1 / (a * a), -gm1 * gm1 * (poly - a * a * mu) / (a * a * a)},
      {(4.0 - 2.0 * a * mu) / (a * gm1), ((g + 1.0) * a * mu + g * g - 6.0 * g + 1.0) / (a * a)},
  }};
}

LinearizationAtD linearize_at_d(const GasParams& p) {
  const PhasePoint d = point_D(p);
  const Partials j = partials(d, p);
  LinearizationAtD lin{};
  lin.matrix = {{{j.F_H, j.F_U}, {j.G_H, j.G_U}}};

  const Mat2 ref = closed_form_matrix_at_d(p);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double diff = std::abs(lin.matrix[r][c] - ref[r][c]);
      if (diff > 1e-10 * std::max(1.0, std::abs(ref[r][c]))) {
        std::ostringstream os;
        os << "linearization at D: entry (" << r << "," << c << ") = " << lin.matrix[r][c]
           << " disagrees with closed form " << ref[r][c];
        throw ComputationError(os.str());
      }
    }
  }

  const double a = 3.0 - p.gamma;
  lin.lambda1 = 2.0 * (p.gamma - 1.0) * (p.mu - 1.0) / a;
  lin.lambda2 = (a * p.mu - p.gamma - 1.0) / a;
  const SlopeBranches s = slope_branches(CriticalLabel::D, p);
  lin.v1 = {s.c2, 1.0};
  lin.v2 = {s.c1, 1.0};
  lin.beta = lin.lambda2 / lin.lambda1;
  lin.resonant = std::abs(lin.beta - std::round(lin.beta)) < 1e-9;
  return lin;
}

PhasePoint LocalExpansion::evaluate(double y) const {
  const double dy = y - y0;
  PhasePoint out{value.U + linear_coeff_U * dy, value.H + linear_coeff_H * dy};
  if (beta_coeff_U && beta_power) out.U += *beta_coeff_U * std::pow(std::abs(dy), *beta_power);
  return out;
}

LocalExpansion expansion_at_d(Side side, double y_D, const GasParams& p,
                              std::optional<double> U_beta) {
  if (!(y_D < 0.0) || !std::isfinite(y_D)) throw DomainError("y_D must be finite and negative");
  const double g = p.gamma, mu = p.mu, a = 3.0 - g;
  LocalExpansion e{};
  e.y0 = y_D;
  e.value = point_D(p);
  if (side == Side::right) {
    e.anchor = ExpansionAnchor::D_right;
    e.linear_coeff_U = -(g + 1.0 - a * mu) / ((g - 1.0) * a * y_D);
    e.linear_coeff_H = slope_branches(CriticalLabel::D, p).c1 * e.linear_coeff_U;
  } else {
    e.anchor = ExpansionAnchor::D_left;
    e.linear_coeff_U = -(8.0 + 4.0 * (g - 3.0) * mu) / (a * (g + 1.0) * y_D);
    e.linear_coeff_H = 2.0 * (g - 1.0) * (a * a * mu - (g * g - 2.0 * g + 5.0)) /
                       (a * a * (g + 1.0) * y_D);
    e.beta_power = linearize_at_d(p).beta;
    e.beta_coeff_U = U_beta;
  }
  return e;
}

ZDerivatives z_derivatives_at_b(const GasParams& p) {
  return {(1.0 - p.gamma) * (1.0 + p.k2) / p.gamma, (p.gamma - 1.0) * (p.mu - 1.0)};
}

LocalExpansion expansion_at_b(double y_B, const GasParams& p) {
  if (!(y_B < 0.0) || !std::isfinite(y_B)) throw DomainError("y_B must be finite and negative");
  const ZDerivatives dz = z_derivatives_at_b(p);
  LocalExpansion e{};
  e.anchor = ExpansionAnchor::B_right;
  e.y0 = y_B;
  e.value = point_B();
  // dz/dy = 1/y for z = ln(-y)
  e.linear_coeff_U = dz.dU_dz / y_B;
  e.linear_coeff_H = dz.dH_dz / y_B;
  return e;
}

SaddleData saddle_data_at_b(const GasParams& p) {
  return {p.mu - 1.0, (p.gamma - 1.0) * (1.0 - p.mu)};
}

}  // namespace ves
