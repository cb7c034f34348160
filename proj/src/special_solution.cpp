#include "ves/special_solution.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "ves/errors.hpp"

namespace ves {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double u_c(const GasParams& p) { return 2.0 * p.mu / (p.gamma + 1.0); }
double u_d(const GasParams& p) { return 2.0 / (3.0 - p.gamma); }

// ln|y(U)| without range checks; U strictly inside the branch.
double log_abs_y(double U, const SpecialSolutionMap& m) {
  const double mu = m.params.mu;
  const double uc = u_c(m.params);
  return std::log(m.K) + (1.0 / mu - 1.0) * std::log(std::abs(U - uc)) -
         std::log(std::abs(U)) / mu;
}

[[noreturn]] void out_of_range(const char* what, double v, Branch b) {
  std::ostringstream os;
  os << what << " = " << v << " is outside the open range of branch " << to_string(b);
  throw DomainError(os.str());
}

}  // namespace

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::CA: return "CA";
    case Branch::AE: return "AE";
    case Branch::ED: return "ED";
    case Branch::BD: return "BD";
  }
  return "?";
}

SpecialSolutionMap make_special_map(const GasParams& params, double K, Branch branch) {
  if (!(K > 0.0) || !std::isfinite(K)) throw DomainError("integral constant K must be > 0");
  if (branch == Branch::BD) {
    throw DomainError("branch BD is not part of the special solution");
  }
  return {params, K, branch};
}

double h_sp(double U, const GasParams& p) {
  return 0.25 * (p.gamma - 1.0) * (p.gamma - 1.0) * U * U;
}

double sonic_y(const GasParams& p, double K) {
  const double ud = u_d(p);
  return -K * std::pow(ud - u_c(p), 1.0 / p.mu - 1.0) / std::pow(ud, 1.0 / p.mu);
}

Interval u_range(const SpecialSolutionMap& m) {
  switch (m.branch) {
    case Branch::CA: return {0.0, u_c(m.params)};
    case Branch::AE: return {-kInf, 0.0};
    case Branch::ED: return {u_d(m.params), kInf};
    case Branch::BD: break;
  }
  throw DomainError("branch BD is not part of the special solution");
}

Interval y_range(const SpecialSolutionMap& m) {
  switch (m.branch) {
    case Branch::CA:
    case Branch::AE: return {0.0, kInf};
    case Branch::ED: return {sonic_y(m.params, m.K), 0.0};
    case Branch::BD: break;
  }
  throw DomainError("branch BD is not part of the special solution");
}

double y_of_u(double U, const SpecialSolutionMap& m) {
  const Interval r = u_range(m);
  if (!(U > r.lo && U < r.hi)) out_of_range("U", U, m.branch);
  const double s = std::exp(log_abs_y(U, m));
  return m.branch == Branch::ED ? -s : s;
}

double u_of_y(double y, const SpecialSolutionMap& m, double tol) {
  const Interval yr = y_range(m);
  if (!(y > yr.lo && y < yr.hi)) out_of_range("y", y, m.branch);
  if (!(tol > 0.0)) throw DomainError("tolerance must be > 0");

  const double target = std::log(std::abs(y));
  auto f = [&](double U) { return log_abs_y(U, m) - target; };
  const double uc = u_c(m.params);

  // Bracket [a, b] with f(a), f(b) of opposite sign. ln|y| is decreasing in U
  // on CA and ED and increasing on AE.
  double a = 0.0, b = 0.0;
  switch (m.branch) {
    case Branch::CA: {
      b = std::nextafter(uc, 0.0);
      if (f(b) >= 0.0) return b;  // below the resolution of U near U_C
      a = 0.5 * uc;
      while (f(a) <= 0.0) {
        a *= 1e-3;
        if (a < std::numeric_limits<double>::min()) return a;
      }
      break;
    }
    case Branch::AE: {
      // y ~ K / |U| as U -> -inf, y ~ U^(-1/mu) as U -> 0-.
      a = -std::max(1.0, 4.0 * m.K / y);
      while (f(a) >= 0.0) a *= 4.0;
      b = -uc;
      while (f(b) <= 0.0) {
        b *= 1e-3;
        if (-b < std::numeric_limits<double>::min()) return b;
      }
      break;
    }
    case Branch::ED: {
      a = std::nextafter(u_d(m.params), kInf);
      if (f(a) <= 0.0) return a;
      b = std::max(2.0 * a, 4.0 * m.K / -y);
      while (f(b) >= 0.0) b *= 4.0;
      break;
    }
    case Branch::BD: break;
  }

  double fa = f(a), fb = f(b);
  if (fa * fb > 0.0) {
    throw ComputationError("u_of_y: failed to bracket the root (monotonicity violated)");
  }
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(
      f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
  const double ua = root.first, ub = root.second;
  const double fa2 = std::abs(f(ua)), fb2 = std::abs(f(ub));
  const double u = fa2 <= fb2 ? ua : ub;
  const double err = std::min(fa2, fb2);
  // The log-residual bounds the relative error in y. Near U_C the map is so
  // steep that a U pinned to a few ulps still leaves a larger y residual.
  const double width = std::abs(ub - ua);
  const bool collapsed = width <= 8.0 * std::numeric_limits<double>::epsilon() *
                                      std::max(std::abs(ua), std::abs(ub));
  if (err * std::abs(y) > tol * std::max(1.0, std::abs(y)) && !collapsed) {
    throw ComputationError("u_of_y: root finder did not reach the requested tolerance");
  }
  return u;
}

double y_times_u(double y, const SpecialSolutionMap& m) {
  if (y == 0.0 && (m.branch == Branch::AE || m.branch == Branch::ED)) return -m.K;
  const double U = u_of_y(y, m);
  if (m.branch == Branch::CA) return y * U;
  const double uc = u_c(m.params);
  return -m.K * std::pow(1.0 - uc / U, 1.0 / m.params.mu - 1.0);
}

AsymptoticCoeffs asymptotic_coeffs(AsymptoticPoint point, const GasParams& p, double K) {
  if (!(K > 0.0)) throw DomainError("integral constant K must be > 0");
  const double uc = u_c(p);
  const double mu = p.mu;
  switch (point) {
    case AsymptoticPoint::C:
      return {uc, -std::pow(uc, 1.0 / (1.0 - mu)) / std::pow(K, mu / (1.0 - mu)),
              mu / (1.0 - mu)};
    case AsymptoticPoint::A_right:
      return {0.0, std::pow(K, mu) * std::pow(uc, 1.0 - mu), -mu};
    case AsymptoticPoint::A_left:
      return {0.0, -std::pow(K, mu) * std::pow(uc, 1.0 - mu), -mu};
    case AsymptoticPoint::E_right:
      return {0.0, -K, -1.0};
  }
  throw DomainError("unknown asymptotic point");
}

double burgers_residual(double y, const SpecialSolutionMap& m) {
  const double U = u_of_y(y, m);
  const GasParams& p = m.params;
  const double pole = (p.gamma + 1.0) * U - 2.0;
  if (pole == 0.0) throw DomainError("burgers_residual: (gamma+1)U = 2 is a pole of the ODE");
  const double uc = u_c(p);
  // d ln|y| / dU from the closed form; y U' is its reciprocal.
  const double dlog = (1.0 / p.mu - 1.0) / (U - uc) - 1.0 / (p.mu * U);
  const double lhs = 1.0 / dlog;
  const double rhs = -((p.gamma + 1.0) * U - 2.0 * p.mu) * U / pole;
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

}  // namespace ves
