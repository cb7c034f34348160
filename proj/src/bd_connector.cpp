#include "ves/bd_connector.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <boost/math/tools/minima.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "ves/errors.hpp"

namespace ves {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;
using Stepper = odeint::runge_kutta_dopri5<State>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double u_d(const GasParams& p) { return 2.0 / (3.0 - p.gamma); }

// Integrand Delta/G = dz/dU along the curve.
double dz_du(double U, double H, const GasParams& p) {
  return delta_fn({U, H}) / g_rhs({U, H}, p);
}

// (H, w) as functions of U.
struct USystem {
  const GasParams& p;
  void operator()(const State& s, State& ds, double U) const {
    const PhasePoint q{U, s[0]};
    const double g = g_rhs(q, p);
    ds[0] = f_rhs(q, p) / g;
    ds[1] = delta_fn(q) / g;
  }
};

// (U, H) as functions of z = ln(-y).
struct ZSystem {
  const GasParams& p;
  void operator()(const State& s, State& ds, double) const {
    const PhasePoint q{s[0], s[1]};
    const double d = delta_fn(q);
    ds[0] = g_rhs(q, p) / d;
    ds[1] = f_rhs(q, p) / d;
  }
};

State integrate_u(const GasParams& p, State s, double u0, double u1, double rtol, double atol) {
  if (u0 == u1) return s;
  const double dt = 1e-3 * (u1 - u0);
  odeint::integrate_adaptive(odeint::make_controlled(atol, rtol, Stepper()), USystem{p}, s, u0,
                             u1, dt);
  return s;
}

State integrate_z(const GasParams& p, State s, double z0, double z1) {
  if (z0 == z1) return s;
  const double dt = 1e-3 * (z1 - z0);
  odeint::integrate_adaptive(odeint::make_controlled(1e-15, 1e-13, Stepper()), ZSystem{p}, s, z0,
                             z1, dt);
  return s;
}

}  // namespace

double h_g(double U, const GasParams& p) {
  if (U + p.k2 == 0.0) throw DomainError("h_g: pole at U = -k2");
  return U * (U - 1.0) * (U - p.mu) / (U + p.k2);
}

double h_g_prime(double U, const GasParams& p) {
  const double den = U + p.k2;
  if (den == 0.0) throw DomainError("h_g_prime: pole at U = -k2");
  const double num = (2.0 * U - 1.0 - p.mu) * U * U +
                     p.k2 * (3.0 * U * U - 2.0 * (1.0 + p.mu) * U + p.mu);
  return num / (den * den);
}

double seed_quadratic_coeff(const GasParams& p) {
  const double c2 = slope_branches(CriticalLabel::B, p).c2;
  return c2 * (c2 + 2.0 * p.k1 - 2.0 - p.mu) / ((2.0 * p.gamma - 1.0) * (1.0 - p.mu));
}

double dz_du_at_d(const GasParams& p) {
  const PhasePoint d = point_D(p);
  const Partials j = partials(d, p);
  const double c2 = slope_branches(CriticalLabel::D, p).c2;
  // Along H - H_D = C2 (U - U_D): Delta ~ (2(U_D-1) - C2) e, G ~ (G_H C2 + G_U) e.
  return (2.0 * (d.U - 1.0) - c2) / (j.G_H * c2 + j.G_U);
}

BdConnection connect_bd(const GasParams& p, const ConnectOptions& opt) {
  if (!(opt.seed_eps > 0.0 && opt.seed_eps <= 1e-4)) {
    throw DomainError("connect_bd: seed_eps must lie in (0, 1e-4]");
  }
  if (!(opt.terminal_tol > 0.0) || !(opt.rtol > 0.0) || !(opt.atol > 0.0)) {
    throw DomainError("connect_bd: tolerances must be > 0");
  }
  const double ud = u_d(p);
  const PhasePoint d = point_D(p);
  const double c2B = slope_branches(CriticalLabel::B, p).c2;
  const double c2D = slope_branches(CriticalLabel::D, p).c2;
  const double a = seed_quadratic_coeff(p);

  BdConnection out{};
  out.options = opt;
  out.eps_D = opt.eps_D_factor * (ud - 1.0);
  out.max_delta = -std::numeric_limits<double>::infinity();
  out.min_g = std::numeric_limits<double>::infinity();
  out.curve.branch = Branch::BD;
  out.curve.params = p;
  out.curve.K = kNaN;
  out.curve.y_interval = {kNaN, kNaN};

  const double e = opt.seed_eps;
  const double u0 = 1.0 + e;
  const double h0 = c2B * e + a * e * e;
  // B patch: trapezoid between the limit 1/(dU/dz at B) and the seeded point.
  const double w_lim_B = 1.0 / z_derivatives_at_b(p).dU_dz;
  const double w0 = 0.5 * e * (w_lim_B + dz_du(u0, h0, p));
  const double u1 = ud - out.eps_D;

  State s{h0, w0};
  auto observer = [&](const State& st, double U) {
    const double H = st[0];
    const double lo = h_g(U, p), hi = h_sp(U, p);
    if (!(H > lo && H < hi)) {
      std::ostringstream os;
      os.precision(17);
      os << "connect_bd: barrier violated at U = " << U << " (H_G = " << lo << ", H = " << H
         << ", H^sp = " << hi << ")";
      throw BarrierViolation(U, os.str());
    }
    ++out.barrier_checks;
    out.curve.samples.push_back({kNaN, U, H});
    out.w.push_back(st[1]);
    out.max_delta = std::max(out.max_delta, delta_fn({U, H}));
    out.min_g = std::min(out.min_g, g_rhs({U, H}, p));
  };
  odeint::integrate_adaptive(odeint::make_controlled(opt.atol, opt.rtol, Stepper()), USystem{p},
                             s, u0, u1, 1e-3 * (u1 - u0), observer);

  if (out.curve.samples.empty() || out.curve.samples.back().U != u1) {
    throw ComputationError("connect_bd: integration did not reach U_D - eps_D");
  }
  const double h_end = s[0];
  out.terminal_miss = std::abs(h_end - (d.H - c2D * out.eps_D)) / std::max(1.0, d.H);
  if (!(out.terminal_miss <= opt.terminal_tol)) {
    std::ostringstream os;
    os << "connect_bd: terminal miss " << out.terminal_miss << " at U_D - eps_D exceeds "
       << opt.terminal_tol;
    throw ComputationError(os.str());
  }
  // Carry w closer to D before patching so the patch error stays below
  // integration noise; the tail is not stored.
  const double tail = 1e-3 * out.eps_D;
  const State t = integrate_u(p, s, u1, ud - tail, opt.rtol, opt.atol);
  out.w_total = t[1] + 0.5 * tail * (dz_du(ud - tail, t[0], p) + dz_du_at_d(p));
  return out;
}

ParametrizedBd parametrize_y(const BdConnection& c, double y_D) {
  if (!(y_D < 0.0) || !std::isfinite(y_D)) throw DomainError("parametrize_y: y_D must be < 0");
  if (c.curve.samples.size() < 2 || c.w.size() != c.curve.samples.size()) {
    throw PreconditionError("parametrize_y: curve does not come from connect_bd");
  }
  if (!(c.min_g > 0.0) || !(c.max_delta < 0.0)) {
    throw ComputationError("parametrize_y: G or Delta changes sign inside the B-D curve");
  }
  for (std::size_t i = 1; i < c.w.size(); ++i) {
    if (!(c.w[i] < c.w[i - 1])) {
      throw ComputationError("parametrize_y: z(U) is not strictly decreasing");
    }
  }
  if (!std::isfinite(c.w_total)) throw ComputationError("parametrize_y: quadrature failed");

  ParametrizedBd out{};
  out.y_D = y_D;
  out.z_D = std::log(-y_D);
  out.z_B = out.z_D - c.w_total;
  out.y_B = -std::exp(out.z_B);
  if (!(std::isfinite(out.y_B) && out.y_B < y_D)) {
    throw ComputationError("parametrize_y: y_B is not finite or not below y_D");
  }
  out.curve = c.curve;
  for (std::size_t i = 0; i < c.w.size(); ++i) {
    out.curve.samples[i].y = -std::exp(out.z_B + c.w[i]);
  }
  out.curve.y_interval = {out.y_B, y_D};
  return out;
}

BdBranch::BdBranch(const BdConnection& c, const ParametrizedBd& pz)
    : params_(c.curve.params),
      y_B_(pz.y_B),
      y_D_(pz.y_D),
      z_B_(pz.z_B),
      z_D_(pz.z_D),
      seed_a_(seed_quadratic_coeff(params_)),
      c2_D_(slope_branches(CriticalLabel::D, params_).c2),
      at_b_(expansion_at_b(pz.y_B, params_)),
      at_d_(expansion_at_d(Side::left, pz.y_D, params_)) {
  nodes_.reserve(c.w.size());
  for (std::size_t i = 0; i < c.w.size(); ++i) {
    nodes_.push_back({c.curve.samples[i].U, c.curve.samples[i].H, z_B_ + c.w[i]});
  }
}

PhasePoint BdBranch::at_y(double y) const {
  if (!(y >= y_B_ && y <= y_D_)) {
    std::ostringstream os;
    os.precision(17);
    os << "BdBranch::at_y: y = " << y << " outside [y_B, y_D] = [" << y_B_ << ", " << y_D_ << "]";
    throw DomainError(os.str());
  }
  if (std::abs(y - y_D_) <= 1e-9 * std::abs(y_D_)) {
    PhasePoint q = at_d_.evaluate(y);
    return q;
  }
  const double z = std::log(-y);
  if (z >= nodes_.front().z) {
    // Inside the seed patch, U - 1 <= seed_eps.
    const PhasePoint lin = at_b_.evaluate(y);
    const double e = lin.U - 1.0;
    return {lin.U, slope_branches(CriticalLabel::B, params_).c2 * e + seed_a_ * e * e};
  }
  // Nodes are descending in z; pick the nearest one.
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), z,
                             [](const Node& n, double v) { return n.z > v; });
  std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
  if (i == nodes_.size()) {
    i = nodes_.size() - 1;
  } else if (i > 0 && std::abs(nodes_[i - 1].z - z) < std::abs(nodes_[i].z - z)) {
    --i;
  }
  const Node& n = nodes_[i];
  const State s = integrate_z(params_, {n.U, n.H}, n.z, z);
  return {s[0], s[1]};
}

PhasePoint BdBranch::at_u(double U) const {
  const PhasePoint d = point_D(params_);
  if (!(U >= 1.0 && U <= d.U)) throw DomainError("BdBranch::at_u: U outside [1, U_D]");
  if (U <= nodes_.front().U) {
    const double e = U - 1.0;
    return {U, slope_branches(CriticalLabel::B, params_).c2 * e + seed_a_ * e * e};
  }
  if (d.U - U <= 1e-9) return {U, d.H - c2_D_ * (d.U - U)};
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), U,
                             [](const Node& n, double v) { return n.U < v; });
  std::size_t i = std::min(static_cast<std::size_t>(it - nodes_.begin()), nodes_.size() - 1);
  if (i > 0 && std::abs(nodes_[i - 1].U - U) < std::abs(nodes_[i].U - U)) --i;
  const Node& n = nodes_[i];
  const State s = integrate_u(params_, {n.H, n.z}, n.U, U, 1e-13, 1e-15);
  return {U, s[0]};
}

double BdBranch::y_at_u(double U) const {
  const PhasePoint d = point_D(params_);
  if (!(U >= 1.0 && U <= d.U)) throw DomainError("BdBranch::y_at_u: U outside [1, U_D]");
  if (U == 1.0) return y_B_;
  if (U <= nodes_.front().U) return y_B_ + (U - 1.0) / at_b_.linear_coeff_U;
  if (d.U - U <= 1e-9) return y_D_ - (d.U - U) / at_d_.linear_coeff_U;
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), U,
                             [](const Node& n, double v) { return n.U < v; });
  std::size_t i = std::min(static_cast<std::size_t>(it - nodes_.begin()), nodes_.size() - 1);
  if (i > 0 && std::abs(nodes_[i - 1].U - U) < std::abs(nodes_[i].U - U)) --i;
  const Node& n = nodes_[i];
  const State s = integrate_u(params_, {n.H, n.z}, n.U, U, 1e-13, 1e-15);
  return -std::exp(s[1]);
}

namespace {

struct FitData {
  std::vector<double> d;  // y - y_D < 0
  std::vector<double> r;  // U - U_D - U'(y_D)(y - y_D)
};

FitData sample_left_window(const BdBranch& b) {
  const double yD = b.y_D();
  const double slope = expansion_at_d(Side::left, yD, b.params()).linear_coeff_U;
  const double UD = point_D(b.params()).U;
  const int n = 41;
  FitData f;
  for (int k = 0; k < n; ++k) {
    const double s = std::pow(10.0, -4.0 + 2.0 * k / (n - 1));
    const double y = yD - s * std::abs(yD);
    const PhasePoint q = b.at_y(y);
    f.d.push_back(y - yD);
    f.r.push_back(q.U - UD - slope * (y - yD));
  }
  return f;
}

struct LsqResult {
  Eigen::VectorXd coeffs;
  double rms;
  double beta_stderr;  // standard error of the |d|^p coefficient
};

// Exponents of the left-sided expansion: d^i |d|^(j p) with i + j p in
// (1, max_exp], the linear term excluded. Column 0 is |d|^p.
std::vector<std::pair<int, int>> expansion_terms(double p, bool with_p, double max_exp) {
  std::vector<std::pair<int, int>> terms;
  std::vector<double> used;
  auto add = [&](int i, int j) {
    const double e = i + j * p;
    if (e <= 1.0 + 1e-12 || e > max_exp) return;
    for (double u : used) {
      if (std::abs(u - e) < 0.02) return;
    }
    used.push_back(e);
    terms.emplace_back(i, j);
  };
  if (with_p) add(0, 1);
  for (int i = 2; i <= static_cast<int>(max_exp); ++i) add(i, 0);
  if (with_p) {
    for (int j = 1; j * p <= max_exp; ++j) {
      for (int i = 0; i + j * p <= max_exp; ++i) add(i, j);
    }
  }
  return terms;
}

LsqResult solve_lsq(const FitData& f, double p, const std::vector<std::pair<int, int>>& terms,
                    bool with_p) {
  const Eigen::Index m = static_cast<Eigen::Index>(f.d.size());
  const Eigen::Index ncol = static_cast<Eigen::Index>(terms.size());
  Eigen::MatrixXd A(m, ncol);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double di = f.d[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < ncol; ++k) {
      const auto [pi, pj] = terms[static_cast<std::size_t>(k)];
      A(i, k) = std::pow(di, pi) * std::pow(std::abs(di), pj * p);
    }
    rhs(i) = f.r[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd scale = A.cwiseAbs().colwise().maxCoeff().transpose();
  for (Eigen::Index j = 0; j < ncol; ++j) A.col(j) /= scale(j);
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::VectorXd x = qr.solve(rhs);
  const Eigen::VectorXd res = A * x - rhs;
  LsqResult out;
  out.rms = std::sqrt(res.squaredNorm() / static_cast<double>(m));
  const double dof = static_cast<double>(std::max<Eigen::Index>(1, m - ncol));
  const Eigen::MatrixXd cov = (A.transpose() * A).inverse() * (res.squaredNorm() / dof);
  out.beta_stderr = with_p ? std::sqrt(std::max(0.0, cov(0, 0))) / scale(0) : 0.0;
  for (Eigen::Index j = 0; j < ncol; ++j) x(j) /= scale(j);
  out.coeffs = x;
  return out;
}

}  // namespace

BetaFit fit_beta_coeff(const BdBranch& b, const LinearizationAtD& lin) {
  const FitData f = sample_left_window(b);
  BetaFit out{};
  out.beta = lin.beta;
  out.points = f.d.size();
  if (lin.resonant) {
    // No pure |d|^beta term; report zero with a warning.
    out.U_beta = 0.0;
    out.residual_rms = solve_lsq(f, lin.beta, expansion_terms(lin.beta, false, 4.0), false).rms;
    out.well_determined = false;
    return out;
  }
  const LsqResult r = solve_lsq(
      f, lin.beta, expansion_terms(lin.beta, true, std::max(4.0, lin.beta + 2.0)), true);
  out.U_beta = r.coeffs(0);
  if (!std::isfinite(out.U_beta)) throw ComputationError("fit_beta_coeff: fit diverged");
  out.residual_rms = r.rms;
  out.well_determined = r.beta_stderr < 0.1 * std::abs(out.U_beta);
  return out;
}

double fit_beta_exponent(const BdBranch& b, double lo, double hi) {
  if (!(lo > 1.0 && hi > lo)) throw DomainError("fit_beta_exponent: need 1 < lo < hi");
  const FitData f = sample_left_window(b);
  // One column set for the whole interval so the objective is continuous in p.
  std::vector<std::pair<int, int>> terms{{0, 1}};
  for (int i = 2; i <= 4; ++i) terms.emplace_back(i, 0);
  for (int i = 1; i <= 2; ++i) terms.emplace_back(i, 1);
  terms.emplace_back(0, 2);
  auto objective = [&](double p) { return solve_lsq(f, p, terms, true).rms; };
  return boost::math::tools::brent_find_minima(objective, lo, hi, 40).first;
}

}  // namespace ves
