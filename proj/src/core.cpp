#include "ves/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "ves/errors.hpp"

namespace ves {

GasParams derived_constants(double gamma, double mu) {
  if (!std::isfinite(gamma) || !(gamma > 1.0)) {
    std::ostringstream os;
    os << "gamma must satisfy gamma > 1 (got " << gamma << ")";
    throw DomainError(os.str());
  }
  if (!(gamma < 3.0)) {
    std::ostringstream os;
    os << "gamma must satisfy gamma < 3 (got " << gamma << ")";
    throw DomainError(os.str());
  }
  if (!std::isfinite(mu) || !(mu > 0.0)) {
    std::ostringstream os;
    os << "mu must satisfy mu > 0 (got " << mu << ")";
    throw DomainError(os.str());
  }
  if (!(mu < 1.0)) {
    std::ostringstream os;
    os << "mu must satisfy mu < 1 (got " << mu << ")";
    throw DomainError(os.str());
  }
  GasParams p{};
  p.gamma = gamma;
  p.mu = mu;
  p.delta = 1.0 / mu;
  p.k1 = ((gamma + 1.0) + mu * (3.0 - gamma)) / 2.0;
  p.k2 = 2.0 * (1.0 - mu) / (gamma - 1.0);
  p.A_pressure = (gamma - 1.0) / gamma;
  if (std::abs(p.delta * p.mu - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) {
    throw ComputationError("delta*mu != 1 to machine precision");
  }
  return p;
}

std::string_view to_string(CriticalLabel label) {
  switch (label) {
    case CriticalLabel::A: return "A";
    case CriticalLabel::B: return "B";
    case CriticalLabel::C: return "C";
    case CriticalLabel::D: return "D";
    case CriticalLabel::E: return "E";
  }
  return "?";
}

std::string_view to_string(CriticalKind kind) {
  return kind == CriticalKind::triple ? "triple" : "double";
}

double f_rhs(PhasePoint p, const GasParams& c) {
  return 2.0 * p.H * (p.H - (p.U * p.U - c.k1 * p.U + c.mu));
}

double g_rhs(PhasePoint p, const GasParams& c) {
  return p.H * (p.U + c.k2) - p.U * (p.U - 1.0) * (p.U - c.mu);
}

double delta_fn(PhasePoint p) {
  return (p.U - 1.0) * (p.U - 1.0) - p.H;
}

Partials partials(PhasePoint p, const GasParams& c) {
  const double U = p.U, H = p.H;
  return Partials{
      4.0 * H - 2.0 * (U * U - c.k1 * U + c.mu),
      -2.0 * H * (2.0 * U - c.k1),
      U + c.k2,
      H - 3.0 * U * U + 2.0 * (1.0 + c.mu) * U - c.mu,
  };
}

PhasePoint point_A() { return {0.0, 0.0}; }
PhasePoint point_B() { return {1.0, 0.0}; }

PhasePoint point_C(const GasParams& c) {
  const double r = (c.gamma - 1.0) / (c.gamma + 1.0);
  return {2.0 * c.mu / (c.gamma + 1.0), r * r * c.mu * c.mu};
}

PhasePoint point_D(const GasParams& c) {
  const double r = (c.gamma - 1.0) / (3.0 - c.gamma);
  return {2.0 / (3.0 - c.gamma), r * r};
}

PhasePoint extra_double_point(const GasParams& c) { return {c.mu, 0.0}; }

namespace {

PhasePoint location_of(CriticalLabel label, const GasParams& c) {
  switch (label) {
    case CriticalLabel::A: return point_A();
    case CriticalLabel::B: return point_B();
    case CriticalLabel::C: return point_C(c);
    case CriticalLabel::D: return point_D(c);
    case CriticalLabel::E: break;
  }
  throw DomainError("slope branches are not defined at E (U, H at infinity)");
}

// Slope of the branch that c1 must continue.
double reference_slope(CriticalLabel label, const GasParams& c) {
  if (label == CriticalLabel::B) return 0.0;
  const PhasePoint p = location_of(label, c);
  return 0.5 * (c.gamma - 1.0) * (c.gamma - 1.0) * p.U;  // d/dU of H^sp
}

}  // namespace

SlopeBranches slope_branches(CriticalLabel label, const GasParams& c) {
  const PhasePoint p = location_of(label, c);
  const Partials d = partials(p, c);
  const double disc = (d.G_U - d.F_H) * (d.G_U - d.F_H) + 4.0 * d.F_U * d.G_H;
  if (disc < 0.0) {
    throw ComputationError("negative discriminant in slope branches at " +
                           std::string(to_string(label)));
  }
  const double root = std::sqrt(disc);
  const double b = d.F_H - d.G_U;
  // Cancellation-free pair of roots of G_H s^2 - b s - F_U = 0.
  const double q = 0.5 * (b + std::copysign(root, b));
  double s_plus, s_minus;
  if (q != 0.0) {
    s_plus = q / d.G_H;
    s_minus = -d.F_U / q;
  } else {
    s_plus = s_minus = 0.0;
  }
  const double ref = reference_slope(label, c);
  if (std::abs(s_plus - ref) <= std::abs(s_minus - ref)) return {s_plus, s_minus};
  return {s_minus, s_plus};
}

std::array<CriticalPointInfo, 5> critical_points(const GasParams& c) {
  auto finite = [&](CriticalLabel l, CriticalKind k) {
    return CriticalPointInfo{l, location_of(l, c), k, slope_branches(l, c)};
  };
  return {
      finite(CriticalLabel::A, CriticalKind::double_point),
      finite(CriticalLabel::B, CriticalKind::triple),
      finite(CriticalLabel::C, CriticalKind::double_point),
      finite(CriticalLabel::D, CriticalKind::triple),
      CriticalPointInfo{CriticalLabel::E, std::nullopt, CriticalKind::double_point,
                        std::nullopt},
  };
}

}  // namespace ves
