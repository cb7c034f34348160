#include "ves/verifier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <boost/math/special_functions/legendre.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "ves/errors.hpp"

namespace ves {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int k = 0; k < n; ++k) v.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
  return v;
}

// Least-squares line through (log x, log |y|): returns (exponent, prefactor).
std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double e = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {e, std::exp((sy - e * sx) / n)};
}

struct GaussRule {
  std::vector<double> x, w;
};

const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule r;
  for (double z : boost::math::legendre_p_zeros<double>(n)) {
    const double dp = boost::math::legendre_p_prime(n, z);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x.push_back(z);
    r.w.push_back(w);
    if (z != 0.0) {
      r.x.push_back(-z);
      r.w.push_back(w);
    }
  }
  return cache.emplace(n, std::move(r)).first->second;
}

double bump(double s) {
  const double q = 1.0 - s * s;
  return std::abs(s) < 1.0 ? q * q * q : 0.0;
}

double bump_prime(double s) {
  const double q = 1.0 - s * s;
  return std::abs(s) < 1.0 ? -6.0 * s * q * q : 0.0;
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::warn: return "warn";
  }
  return "?";
}

CheckReport compare_report(std::string name, double measured, double expected, double tolerance,
                           std::string details) {
  const bool ok = std::abs(measured - expected) <= tolerance;
  return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, measured, expected,
          tolerance, std::move(details)};
}

CheckReport bound_report(std::string name, double measured, double tolerance,
                         std::string details) {
  const bool ok = measured <= tolerance;
  return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, measured, std::nullopt,
          tolerance, std::move(details)};
}

// ---------------------------------------------------------------------------
// PDE residual

std::vector<PdeRegion> default_pde_regions(const GlobalSolution& s) {
  const double yd = s.y_D, yb = s.y_B, gap = yd - yb;
  return {
      {"pre", -1.0, -0.5, 0.1, 2.0},
      {"AE", 0.5, 1.0, 0.05, 2.0},
      {"ED", 0.5, 1.0, yd + 0.1 * std::abs(yd), -0.05},
      {"BD", 0.5, 1.0, yb + 0.1 * gap, yd - 0.1 * gap},
  };
}

CheckReport pde_residual(const GlobalSolution& s, const PdeRegion& r, const PdeGrid& g) {
  const std::string name = "pde_residual[" + r.name + "]";
  if (!(r.t_lo < r.t_hi) || !(r.y_lo < r.y_hi) || g.nt < 1 || g.ny < 1 || g.levels < 2 ||
      !(g.step > 0.0)) {
    throw DomainError(name + ": empty region or invalid grid");
  }
  if (r.t_lo < 0.0 && r.t_hi > 0.0) throw PreconditionError(name + ": region straddles t = 0");
  if (r.t_lo <= 0.0 && r.t_hi >= 0.0) throw PreconditionError(name + ": region touches t = 0");
  const bool post = r.t_lo > 0.0;
  auto inside = [&](double v) { return r.y_lo <= v && v <= r.y_hi; };
  if (post && (inside(s.y_D) || inside(s.y_B))) {
    throw PreconditionError(name + ": region straddles the sonic curve or the vacuum boundary");
  }
  if (post && r.y_lo < s.y_B) throw PreconditionError(name + ": region extends into vacuum");
  if (!post && r.y_lo <= 0.0) throw PreconditionError(name + ": region touches x = 0");

  const GasParams& p = s.params;
  const double tmax = std::max(std::abs(r.t_lo), std::abs(r.t_hi));
  const double tmin = std::min(std::abs(r.t_lo), std::abs(r.t_hi));
  const double xs = std::pow(tmax, p.delta);

  std::vector<double> level_max;
  for (int lv = 0; lv < g.levels; ++lv) {
    const double k = g.step / std::pow(2.0, lv);
    const double dt = k * tmax, dx = k * xs;
    if (tmin < 5.0 * g.step * tmax) throw PreconditionError(name + ": stencil reaches t = 0");
    double worst = 0.0;
    for (int i = 0; i < g.nt; ++i) {
      const double t = g.nt == 1 ? r.t_lo : r.t_lo + (r.t_hi - r.t_lo) * i / (g.nt - 1);
      const double scale_x = std::pow(std::abs(t), p.delta);
      for (int j = 0; j < g.ny; ++j) {
        const double y = g.ny == 1 ? r.y_lo : r.y_lo + (r.y_hi - r.y_lo) * j / (g.ny - 1);
        const double x = y * scale_x;
        const double margin = 5.0 * g.step * xs;
        if (post && (std::abs(x - s.y_D * scale_x) < margin ||
                     std::abs(x - s.y_B * scale_x) < margin)) {
          throw PreconditionError(name + ": stencil within 5 steps of a seam");
        }
        if (!post && x < margin) throw PreconditionError(name + ": stencil within 5 steps of x = 0");
        const PhysicalState c = eval_physical(s, t, x);
        const PhysicalState tp = eval_physical(s, t + dt, x), tm = eval_physical(s, t - dt, x);
        const PhysicalState xp = eval_physical(s, t, x + dx), xm = eval_physical(s, t, x - dx);
        const double h_t = (tp.h - tm.h) / (2 * dt), h_x = (xp.h - xm.h) / (2 * dx);
        const double u_t = (tp.u - tm.u) / (2 * dt), u_x = (xp.u - xm.u) / (2 * dx);
        const double r1 = h_t + c.u * h_x + (p.gamma - 1.0) * c.h * u_x;
        const double r2 = u_t + c.u * u_x + h_x;
        worst = std::max({worst, std::abs(r1), std::abs(r2)});
      }
    }
    level_max.push_back(worst);
  }
  double order = std::numeric_limits<double>::infinity();
  std::ostringstream os;
  os << "max residual by level:";
  for (double v : level_max) os << ' ' << fmt(v);
  os << "; orders:";
  for (std::size_t i = 0; i + 1 < level_max.size(); ++i) {
    const double o = std::log2(level_max[i] / level_max[i + 1]);
    order = std::min(order, o);
    os << ' ' << fmt(o);
  }
  const double finest = level_max.back();
  CheckReport rep = bound_report(name, finest, 1e-4, os.str());
  if (!(order >= 1.9)) {
    rep.status = CheckStatus::fail;
    rep.details += "; observed order below 1.9";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Simple wave

CheckReport simple_wave_check(const GlobalSolution& s, Branch b, int samples) {
  if (samples < 2) throw DomainError("simple_wave_check: need at least 2 samples");
  const std::string name = "simple_wave[" + std::string(to_string(b)) + "]";
  const double gm1 = s.params.gamma - 1.0;
  auto w_rel = [&](double t, double y) {
    const PhysicalState st = eval_physical(s, t, y * std::pow(std::abs(t), s.params.delta));
    return std::abs(st.u + 2.0 * st.c / gm1) / std::max(1.0, std::abs(st.u));
  };
  const double ay = std::abs(s.y_D);
  if (b == Branch::BD) {
    const double ud = point_D(s.params).U;
    double lo = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
      const double U = 1.0 + (ud - 1.0) * (0.05 + 0.9 * k / (samples - 1));
      lo = std::min(lo, w_rel(1.0, s.bd->y_at_u(U)));
    }
    const bool ok = lo > 1e-6;
    return {name, ok ? CheckStatus::pass : CheckStatus::fail, lo, std::nullopt, 1e-6,
            "min over U in [1 + 0.05(U_D-1), U_D - 0.05(U_D-1)]; B-D is not a simple wave, "
            "pass iff measured > tolerance"};
  }
  double hi = 0.0;
  for (double t : {0.5, 1.0}) {
    const double tt = b == Branch::CA ? -t : t;
    for (int k = 0; k < samples; ++k) {
      double y;
      if (b == Branch::ED) {
        y = s.y_D * (1.0 - (k + 0.5) / samples);
      } else {
        y = ay * std::pow(10.0, -3.0 + 6.0 * k / (samples - 1));
      }
      hi = std::max(hi, w_rel(tt, y));
    }
  }
  return bound_report(name, hi, 1e-9, "max |u + 2c/(gamma-1)| / max(1,|u|) at t = +-0.5, +-1");
}

// ---------------------------------------------------------------------------
// Weak form

namespace {

double weak_integral(const GlobalSolution& s, double x0, double sigma, double eps, double pert,
                     int n, double* scale) {
  const GaussRule& g = gauss_rule(n);
  const double rho_factor = std::pow(1.0 + pert, 1.0 / (s.params.gamma - 1.0));
  double total = 0.0, abs_total = 0.0;
  for (int side = 0; side < 2; ++side) {
    const double ta = side == 0 ? -eps : 0.0;
    const double half_t = 0.5 * eps;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      const double t = ta + half_t * (g.x[i] + 1.0);
      const double bt = bump(t / eps), bpt = bump_prime(t / eps) / eps;
      for (std::size_t j = 0; j < g.x.size(); ++j) {
        const double x = x0 + sigma * g.x[j];
        const double bx = bump((x - x0) / sigma), bpx = bump_prime((x - x0) / sigma) / sigma;
        const PhysicalState st = eval_physical(s, t, x);
        const double rho = t > 0.0 ? st.rho * rho_factor : st.rho;
        const double a = rho * bpt * bx, c = rho * st.u * bt * bpx;
        const double w = g.w[i] * g.w[j] * half_t * sigma;
        total += w * (a + c);
        abs_total += w * (std::abs(a) + std::abs(c));
      }
    }
  }
  if (scale) *scale = abs_total;
  return total;
}

}  // namespace

WeakFormResult weak_form_integral(const GlobalSolution& s, double x0, double sigma, double eps,
                                  double perturbation) {
  if (!(sigma > 0.0) || !(eps > 0.0) || !(x0 - sigma > 0.0)) {
    throw DomainError("weak_form: need sigma > 0, eps > 0 and x0 - sigma > 0");
  }
  if (!(perturbation > -1.0)) throw DomainError("weak_form: perturbation must exceed -1");
  double scale = 0.0;
  const double i64 = weak_integral(s, x0, sigma, eps, perturbation, 64, &scale);
  const double i128 = weak_integral(s, x0, sigma, eps, perturbation, 128, nullptr);
  const double err = std::abs(i128 - i64);
  if (err > std::max(1e-10 * scale, 1e-6 * std::abs(i128))) {
    throw ComputationError("weak_form: quadrature did not converge (|I64 - I128| = " + fmt(err) +
                           ")");
  }
  return {i128, scale, err};
}

CheckReport weak_form_check(const GlobalSolution& s, double x0, double sigma, double eps,
                            double perturbation) {
  const WeakFormResult r = weak_form_integral(s, x0, sigma, eps, perturbation);
  const double m = r.scale > 0.0 ? std::abs(r.integral) / r.scale : 0.0;
  std::string name = "weak_form";
  if (perturbation != 0.0) name += "[perturb_H=" + fmt(perturbation) + "]";
  return compare_report(name, m, 0.0, 1e-8,
                        "|I|/scale with I = " + fmt(r.integral) + ", scale = " + fmt(r.scale) +
                            ", quadrature error estimate " + fmt(r.error_estimate));
}

// ---------------------------------------------------------------------------
// Sonic jump

OneSidedSlopes fitted_sonic_slopes(const GlobalSolution& s, double t) {
  if (!(t > 0.0)) throw DomainError("sonic_jump: t must be > 0");
  const GasParams& p = s.params;
  const double ud = point_D(p).U;
  const double tdel = std::pow(t, p.delta), su = p.delta * std::pow(t, p.delta - 1.0);
  const double beta = s.lin_d.beta;
  const std::vector<double> offs = logspace(1e-4 * std::abs(s.y_D), 1e-2 * std::abs(s.y_D), 31);

  auto fit_side = [&](double sign) {
    const bool left = sign < 0.0;
    // Columns: 1, s, s^2 and, on the left, s^(beta-1) when it is separable.
    const double e = beta - 1.0;
    const bool with_beta = left && !s.lin_d.resonant && e > 0.1 && e < 3.0 &&
                           std::abs(e - 1.0) > 0.1 && std::abs(e - 2.0) > 0.1;
    const Eigen::Index ncol = with_beta ? 4 : 3;
    Eigen::MatrixXd A(static_cast<Eigen::Index>(offs.size()), ncol);
    Eigen::VectorXd q(static_cast<Eigen::Index>(offs.size()));
    for (std::size_t k = 0; k < offs.size(); ++k) {
      const double y = s.y_D + sign * offs[k];
      const double U = eval_physical(s, t, y * tdel).u / (su * y);
      const Eigen::Index i = static_cast<Eigen::Index>(k);
      const double o = offs[k] / offs.back();
      A(i, 0) = 1.0;
      A(i, 1) = o;
      A(i, 2) = o * o;
      if (with_beta) A(i, 3) = std::pow(o, e);
      q(i) = (U - ud) / (y - s.y_D);
    }
    return A.colPivHouseholderQr().solve(q)(0);
  };
  return {fit_side(-1.0), fit_side(1.0)};
}

CheckReport sonic_jump_check(const GlobalSolution& s, double t) {
  const OneSidedSlopes f = fitted_sonic_slopes(s, t);
  const double left = s.d_left.linear_coeff_U, right = s.d_right.linear_coeff_U;
  const double err = std::max(rel(f.left, left), rel(f.right, right));
  std::ostringstream os;
  os << "fitted left " << fmt(f.left) << " (closed form " << fmt(left) << "), right "
     << fmt(f.right) << " (closed form " << fmt(right) << "), jump " << fmt(f.right - f.left);
  CheckReport rep = bound_report("sonic_jump", err, 1e-3, os.str());
  if (!(std::abs(f.right - f.left) > 10.0 * err * std::abs(right))) {
    rep.status = CheckStatus::fail;
    rep.details += "; jump not resolved";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Physical vacuum

CheckReport physical_vacuum_check(const GlobalSolution& s, double t) {
  if (!(t > 0.0)) throw DomainError("physical_vacuum: t must be > 0");
  const double b = boundary(s, t);
  const double len = std::abs(s.y_B) * std::pow(t, s.params.delta);
  auto quotient = [&](double f) { return eval_physical(s, t, b + f * len).h / (f * len); };
  const double d1 = 1e-5 * len, d2 = 1e-4 * len;
  const double q1 = quotient(1e-5), q2 = quotient(1e-4);
  const double q0 = q1 - d1 * (q2 - q1) / (d2 - d1);
  const double expv = boundary_enthalpy_slope(s, t);
  std::ostringstream os;
  os << "quotients at offsets 1e-6..1e-3:";
  for (double f : {1e-6, 1e-5, 1e-4, 1e-3}) os << ' ' << fmt(quotient(f));
  os << "; extrapolated " << fmt(q0) << ", expansion " << fmt(expv) << ", offsets agree to "
     << fmt(rel(q1, q2));
  CheckReport rep = compare_report("physical_vacuum[t=" + fmt(t) + "]", q0, expv,
                                   0.05 * std::abs(expv), os.str());
  if (!(q0 > 0.0 && std::isfinite(q0))) rep.status = CheckStatus::fail;
  return rep;
}

// ---------------------------------------------------------------------------
// Hoelder behavior at the singular point

std::vector<CheckReport> holder_check(const GlobalSolution& s, double t_lo, double t_hi) {
  if (!(t_lo > 0.0 && t_lo < t_hi && t_hi <= 0.1)) {
    throw DomainError("holder_check: need 0 < t_lo < t_hi <= 0.1");
  }
  const GasParams& p = s.params;
  const std::vector<double> ts = logspace(t_lo, t_hi, 21);
  std::vector<double> us;
  for (double t : ts) us.push_back(eval_physical(s, t, 0.0).u);
  const auto [e, pref] = loglog_fit(ts, us);
  const double ed = p.delta - 1.0, pd = s.K * p.delta;
  std::vector<CheckReport> out;
  out.push_back(compare_report("holder_time_exponent", e, ed, 0.02 * std::abs(ed),
                               "fit of |u(t,0)| over t in [" + fmt(t_lo) + ", " + fmt(t_hi) + "]"));
  out.push_back(compare_report("holder_time_prefactor", pref, pd, 0.02 * pd,
                               "expected K delta"));
  const std::vector<double> xs = logspace(1e-3, 1e-1, 21);
  for (double t : {-1e-8, 1e-8}) {
    std::vector<double> ux;
    for (double x : xs) ux.push_back(eval_physical(s, t, x).u);
    const double sx = loglog_fit(xs, ux).first;
    out.push_back(compare_report(t < 0 ? "holder_space_exponent[t=0-]" : "holder_space_exponent[t=0+]",
                                 sx, 1.0 - p.mu, 0.02 * (1.0 - p.mu),
                                 "fit of |u(t,x)| over x in [1e-3, 1e-1] at t = " + fmt(t)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// ODE oracle

CheckReport ode_oracle_check(const GlobalSolution& s, Branch b, double y0, double y1) {
  const std::string name = "ode_oracle[" + std::string(to_string(b)) + "]";
  const double margin = 1e-4;
  double lo = 0, hi = 0;
  switch (b) {
    case Branch::CA:
    case Branch::AE:
      lo = margin;
      hi = std::numeric_limits<double>::infinity();
      break;
    case Branch::ED:
      lo = s.y_D + margin;
      hi = -margin;
      break;
    case Branch::BD:
      lo = s.y_B + margin;
      hi = s.y_D - margin;
      break;
  }
  for (double y : {y0, y1}) {
    if (!(y >= lo && y <= hi)) {
      throw PreconditionError(name + ": y = " + fmt(y) + " outside the branch interior");
    }
  }
  const PhasePoint a = profile_at(s, b, y0), e = profile_at(s, b, y1);
  if (y0 == y1) return bound_report(name, 0.0, 1e-7, "zero-length interval");

  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  const GasParams& p = s.params;
  auto rhs = [&p](const State& st, State& ds, double y) {
    const PhasePoint q{st[0], st[1]};
    const double d = y * delta_fn(q);
    ds[0] = g_rhs(q, p) / d;
    ds[1] = f_rhs(q, p) / d;
  };
  State st{a.U, a.H};
  try {
    odeint::integrate_adaptive(
        odeint::make_controlled(1e-14, 1e-12, odeint::runge_kutta_fehlberg78<State>()), rhs, st,
        y0, y1, 1e-4 * (y1 - y0));
  } catch (const std::exception& ex) {
    throw PreconditionError(name + ": integration failed near the sonic curve: " + ex.what());
  }
  if (!std::isfinite(st[0]) || !std::isfinite(st[1])) {
    throw PreconditionError(name + ": integration diverged");
  }
  const double dev = std::max(std::abs(st[0] - e.U) / std::max(1.0, std::abs(e.U)),
                              std::abs(st[1] - e.H) / std::max(1.0, std::abs(e.H)));
  return bound_report(name, dev, 1e-7,
                      "y in [" + fmt(y0) + ", " + fmt(y1) + "], relative deviation at y_end");
}

// ---------------------------------------------------------------------------

std::vector<std::string> check_families() {
  return {"pde", "simple_wave", "weak_form", "sonic_jump", "physical_vacuum", "holder",
          "ode_oracle"};
}

std::vector<CheckReport> run_checks(const GlobalSolution& s, const std::vector<std::string>& fams,
                                    double perturbation) {
  const auto known = check_families();
  for (const auto& f : fams) {
    if (std::find(known.begin(), known.end(), f) == known.end()) {
      throw DomainError("unknown check family '" + f + "'");
    }
  }
  auto want = [&](const char* f) { return std::find(fams.begin(), fams.end(), f) != fams.end(); };
  std::vector<CheckReport> out;
  if (want("pde")) {
    for (const PdeRegion& r : default_pde_regions(s)) out.push_back(pde_residual(s, r));
  }
  if (want("simple_wave")) {
    for (Branch b : {Branch::CA, Branch::AE, Branch::ED, Branch::BD}) {
      out.push_back(simple_wave_check(s, b));
    }
  }
  if (want("weak_form")) out.push_back(weak_form_check(s, 1.0, 0.5, 0.1, perturbation));
  if (want("sonic_jump")) out.push_back(sonic_jump_check(s, 1.0));
  if (want("physical_vacuum")) {
    for (double t : {0.1, 0.5, 1.0}) out.push_back(physical_vacuum_check(s, t));
  }
  if (want("holder")) {
    for (auto& r : holder_check(s)) out.push_back(std::move(r));
  }
  if (want("ode_oracle")) {
    const double gap = s.y_D - s.y_B;
    out.push_back(ode_oracle_check(s, Branch::CA, 0.5, 5.0));
    out.push_back(ode_oracle_check(s, Branch::AE, 0.05, 5.0));
    out.push_back(ode_oracle_check(s, Branch::ED, s.y_D + 0.05 * std::abs(s.y_D), -0.01));
    out.push_back(ode_oracle_check(s, Branch::BD, s.y_B + 0.05 * gap, s.y_D - 0.05 * gap));
  }
  return out;
}

std::vector<CheckReport> run_all_checks(const GlobalSolution& s, double perturbation) {
  return run_checks(s, check_families(), perturbation);
}

}  // namespace ves
