#include "ves/profile.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "ves/errors.hpp"

namespace ves {

namespace {

constexpr double kSeam = 4.0 * std::numeric_limits<double>::epsilon();

template <class F>
auto with_branch(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const BarrierViolation& e) {
    throw BarrierViolation(e.u(), std::string(name) + ": " + e.what());
  } catch (const ComputationError& e) {
    throw ComputationError(std::string(name) + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(std::string(name) + ": " + e.what());
  }
}

const SpecialSolutionMap& map_for(const GlobalSolution& s, Branch b) {
  switch (b) {
    case Branch::CA: return s.ca;
    case Branch::AE: return s.ae;
    case Branch::ED: return s.ed;
    case Branch::BD: break;
  }
  throw DomainError("BD has no closed-form map");
}

bool near(double a, double b) { return std::abs(a - b) <= kSeam * std::abs(b); }

}  // namespace

std::string_view to_string(Region r) {
  switch (r) {
    case Region::pre_singularity: return "pre_singularity";
    case Region::post_interior: return "post_interior";
    case Region::post_between_sonic_and_boundary: return "post_between_sonic_and_boundary";
    case Region::vacuum: return "vacuum";
    case Region::boundary: return "boundary";
    case Region::sonic: return "sonic";
  }
  return "?";
}

GlobalSolution assemble(const GasParams& params, double K, const AssembleOptions& opt) {
  GlobalSolution s{};
  s.params = params;
  s.K = K;
  s.ca = make_special_map(params, K, Branch::CA);
  s.ae = make_special_map(params, K, Branch::AE);
  s.ed = make_special_map(params, K, Branch::ED);
  s.y_D = sonic_y(params, K);

  const BdConnection conn = with_branch("BD", [&] { return connect_bd(params, opt.connect); });
  const ParametrizedBd pz = with_branch("BD", [&] { return parametrize_y(conn, s.y_D); });
  s.y_B = pz.y_B;
  s.bd_curve = pz.curve;
  s.bd_curve.K = K;
  s.terminal_miss = conn.terminal_miss;
  s.bd = std::make_shared<const BdBranch>(conn, pz);

  s.lin_d = linearize_at_d(params);
  s.beta_fit = with_branch("BD", [&] { return fit_beta_coeff(*s.bd, s.lin_d); });
  s.d_left = expansion_at_d(Side::left, s.y_D, params, s.beta_fit.U_beta);
  s.d_right = expansion_at_d(Side::right, s.y_D, params);
  s.b_right = expansion_at_b(s.y_B, params);

  const double off = 1e-12 * std::abs(s.y_D);
  s.matching.e_left = with_branch("ED", [&] { return y_times_u(-off, s.ed); });
  s.matching.e_right = with_branch("AE", [&] { return y_times_u(off, s.ae); });
  // One-sided values extrapolated back to y_D with their own slopes, so the
  // derivative jump across the sonic line does not enter the comparison.
  const double dy = 1e-10 * std::abs(s.y_D);
  const double u_ed = with_branch("ED", [&] { return u_of_y(s.y_D + dy, s.ed); });
  const PhasePoint bd = s.bd->at_y(s.y_D - dy);
  const double ue = u_ed - s.d_right.linear_coeff_U * dy;
  const double he = h_sp(u_ed, params) - s.d_right.linear_coeff_H * dy;
  s.matching.d_jump_U = std::abs(ue - (bd.U + s.d_left.linear_coeff_U * dy));
  s.matching.d_jump_H = std::abs(he - (bd.H + s.d_left.linear_coeff_H * dy));

  const MatchingReport& m = s.matching;
  std::ostringstream os;
  os.precision(17);
  if (std::abs(m.e_left - m.e_right) > opt.match_tol ||
      std::abs(m.e_left + K) > opt.match_tol * std::max(1.0, K)) {
    os << "E-matching failed: y U = " << m.e_left << " (left), " << m.e_right
       << " (right), expected " << -K;
    throw ComputationError(os.str());
  }
  if (m.d_jump_U > opt.match_tol || m.d_jump_H > opt.match_tol) {
    os << "D-matching failed: |dU| = " << m.d_jump_U << ", |dH| = " << m.d_jump_H;
    throw ComputationError(os.str());
  }
  return s;
}

double boundary(const GlobalSolution& s, double t) {
  return t > 0.0 ? s.y_B * std::pow(t, s.params.delta) : 0.0;
}

PhasePoint profile_at(const GlobalSolution& s, Branch b, double y) {
  if (b == Branch::BD) return s.bd->at_y(y);
  if (b == Branch::CA && y == 0.0) return point_C(s.params);
  if (b == Branch::ED && y == s.y_D) return point_D(s.params);
  const double U = u_of_y(y, map_for(s, b));
  return {U, h_sp(U, s.params)};
}

double y_u_at(const GlobalSolution& s, Branch b, double y) {
  if (b == Branch::BD) return y * s.bd->at_y(y).U;
  if (b == Branch::ED && y == s.y_D) return y * point_D(s.params).U;
  if (b == Branch::CA) return y == 0.0 ? 0.0 : y * u_of_y(y, s.ca);
  return y_times_u(y, map_for(s, b));
}

std::optional<Branch> branch_at(const GlobalSolution& s, double t, double x) {
  if (t < 0.0) return x > 0.0 ? std::optional<Branch>(Branch::CA) : std::nullopt;
  if (t == 0.0) return std::nullopt;
  const double y = x / std::pow(t, s.params.delta);
  if (y < s.y_B || near(y, s.y_B)) return std::nullopt;
  if (y < s.y_D && !near(y, s.y_D)) return Branch::BD;
  if (y < 0.0) return Branch::ED;
  return Branch::AE;
}

PhysicalState eval_physical(const GlobalSolution& s, double t, double x) {
  const GasParams& p = s.params;
  const double gm1 = p.gamma - 1.0, d = p.delta;
  if (t == 0.0 && x == 0.0) {
    throw DomainError("eval_physical: (0, 0) is the singular point, no pointwise value");
  }
  if (t < 0.0 && x < 0.0) throw DomainError("eval_physical: t < 0 requires x >= 0");
  if (!std::isfinite(t) || !std::isfinite(x)) throw DomainError("eval_physical: non-finite input");

  auto from_h = [&](double u, double h, Region r) {
    h = std::max(h, 0.0);
    return PhysicalState{std::pow(h, 1.0 / gm1), u, h, std::sqrt(gm1 * h), r};
  };

  if (t == 0.0) {
    if (x < 0.0) return {0.0, 0.0, 0.0, 0.0, Region::vacuum};
    const double uc = 2.0 * p.mu / (p.gamma + 1.0);
    const double a = std::pow(s.K, p.mu) * std::pow(uc, 1.0 - p.mu);
    const double u = -d * a * std::pow(x, 1.0 - p.mu);
    const double h = d * d * std::pow(x, 2.0 - 2.0 * p.mu) * gm1 * a * a / 4.0;
    return from_h(u, h, Region::post_interior);
  }

  const double at = std::abs(t);
  const double y = x / std::pow(at, d);
  const double su = t < 0.0 ? -d * std::pow(at, d - 1.0) : d * std::pow(at, d - 1.0);
  const double sh = d * d * std::pow(at, 2.0 * (d - 1.0)) / gm1;

  if (t < 0.0) {
    if (x == 0.0) return {0.0, 0.0, 0.0, 0.0, Region::boundary};
    const double yu = y_u_at(s, Branch::CA, y);
    return from_h(su * yu, sh * 0.25 * gm1 * gm1 * yu * yu, Region::pre_singularity);
  }

  if (near(y, s.y_B)) return {0.0, d * x / t, 0.0, 0.0, Region::boundary};
  if (y < s.y_B) return {0.0, 0.0, 0.0, 0.0, Region::vacuum};
  if (y < s.y_D && !near(y, s.y_D)) {
    const PhasePoint q = s.bd->at_y(y);
    return from_h(su * y * q.U, sh * y * y * q.H, Region::post_between_sonic_and_boundary);
  }
  if (near(y, s.y_D)) {
    const PhasePoint q = point_D(p);
    return from_h(su * s.y_D * q.U, sh * s.y_D * s.y_D * q.H, Region::sonic);
  }
  const Branch b = y < 0.0 ? Branch::ED : Branch::AE;
  const double yu = y_u_at(s, b, y);
  return from_h(su * yu, sh * 0.25 * gm1 * gm1 * yu * yu, Region::post_interior);
}

InitialState initial_data(const GlobalSolution& s, double T, double x) {
  if (!(T > 0.0)) throw DomainError("initial_data: T must be > 0");
  if (!(x >= 0.0)) throw DomainError("initial_data: x must be >= 0");
  const PhysicalState st = eval_physical(s, -T, x);
  return {st.rho, st.u};
}

double initial_data_c1(const GlobalSolution& s, double T) {
  if (!(T > 0.0)) throw DomainError("initial_data_c1: T must be > 0");
  const double mu = s.params.mu;
  const double uc = 2.0 * mu / (s.params.gamma + 1.0);
  return std::pow(uc, 1.0 / (1.0 - mu)) /
         (mu * std::pow(s.K, mu / (1.0 - mu)) * std::pow(T, (2.0 - mu) / (1.0 - mu)));
}

double boundary_enthalpy_slope(const GlobalSolution& s, double t) {
  if (!(t > 0.0)) throw DomainError("boundary_enthalpy_slope: t must be > 0");
  const double d = s.params.delta;
  return d * d * std::pow(t, d - 2.0) * s.y_B * s.y_B * s.b_right.linear_coeff_H /
         (s.params.gamma - 1.0);
}

std::vector<ProfileRow> sample_profile(const GlobalSolution& s, int total) {
  if (total < 8) throw DomainError("sample_profile: need at least 8 rows");
  std::vector<ProfileRow> rows;
  rows.reserve(static_cast<std::size_t>(total));
  const double ay = std::abs(s.y_D);
  const Branch order[] = {Branch::CA, Branch::AE, Branch::ED, Branch::BD};
  for (int bi = 0; bi < 4; ++bi) {
    const Branch b = order[bi];
    const int n = total / 4 + (bi < total % 4 ? 1 : 0);
    for (int k = 0; k < n; ++k) {
      double y = 0.0;
      switch (b) {
        case Branch::CA:
        case Branch::AE: y = ay * std::pow(10.0, -4.0 + 8.0 * k / (n - 1)); break;
        case Branch::ED: y = s.y_D * (1.0 - static_cast<double>(k) / n); break;
        case Branch::BD: y = k == n - 1 ? s.y_D : s.y_B + (s.y_D - s.y_B) * k / (n - 1); break;
      }
      const PhasePoint q = profile_at(s, b, y);
      rows.push_back({y, q.U, q.H, b});
    }
  }
  return rows;
}

}  // namespace ves
