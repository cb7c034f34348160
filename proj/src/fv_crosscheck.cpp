#include "ves/fv_crosscheck.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <utility>

#include "ves/errors.hpp"

namespace ves {

namespace {

using Gauss8 = boost::math::quadrature::gauss<double, 8>;

// Gauss average of f over [a, b].
template <class F>
double cell_average(F&& f, double a, double b) {
  if (b <= a) return 0.0;
  return Gauss8::integrate(f, a, b) / (b - a);
}

struct Prim {
  double rho, u, p, c;
};

Prim primitive(double rho, double mom, const GasParams& g) {
  if (!(rho > 0.0)) return {0.0, 0.0, 0.0, 0.0};
  const double u = mom / rho;
  const double p = g.A_pressure * std::pow(rho, g.gamma);
  return {rho, u, p, std::sqrt(g.gamma * p / rho)};
}

double exact_rho(const GlobalSolution& s, double t, double x) {
  if (t < 0.0 && x <= 0.0) return 0.0;
  if (t == 0.0 && x == 0.0) return 0.0;
  return eval_physical(s, t, x).rho;
}

}  // namespace

FVState init_grid(std::shared_ptr<const GlobalSolution> sol, double T, double x_lo, double x_hi,
                  int n, RightBoundary right) {
  if (!sol) throw DomainError("init_grid: no solution");
  if (!(x_lo < 0.0 && 0.0 < x_hi)) throw DomainError("init_grid: need x_lo < 0 < x_hi");
  if (!(T > 0.0)) throw DomainError("init_grid: T must be > 0");
  if (n < 64) throw DomainError("init_grid: n must be >= 64");
  FVState s;
  s.t = -T;
  s.x_lo = x_lo;
  s.x_hi = x_hi;
  s.n = n;
  s.params = sol->params;
  s.right = right;
  s.source = sol;
  s.rho.assign(static_cast<std::size_t>(n), 0.0);
  s.mom.assign(static_cast<std::size_t>(n), 0.0);
  const double dx = s.dx();
  for (int i = 0; i < n; ++i) {
    const double a = x_lo + i * dx, b = a + dx;
    if (b <= 0.0) continue;
    const double lo = std::max(a, 0.0);
    auto rho = [&](double x) { return initial_data(*sol, T, x).rho0; };
    auto mom = [&](double x) {
      const InitialState st = initial_data(*sol, T, x);
      return st.rho0 * st.u0;
    };
    // Average over the whole cell; the x < 0 part contributes zero.
    const double frac = (b - lo) / dx;
    s.rho[static_cast<std::size_t>(i)] = frac * cell_average(rho, lo, b);
    s.mom[static_cast<std::size_t>(i)] = frac * cell_average(mom, lo, b);
  }
  return s;
}

FVState step(const FVState& in, double cfl, double dt_max) {
  if (!(cfl > 0.0 && cfl <= 0.5)) throw DomainError("step: cfl must lie in (0, 0.5]");
  if (!(dt_max > 0.0)) throw DomainError("step: dt_max must be > 0");
  const GasParams& g = in.params;
  const int n = in.n;
  const double dx = in.dx();

  // Primitives with one ghost cell on each side.
  std::vector<double> rho(static_cast<std::size_t>(n) + 2), mom(rho.size());
  std::copy(in.rho.begin(), in.rho.end(), rho.begin() + 1);
  std::copy(in.mom.begin(), in.mom.end(), mom.begin() + 1);
  rho.front() = in.rho.front();
  mom.front() = in.mom.front();
  if (in.right == RightBoundary::analytic) {
    if (!in.source) throw DomainError("step: analytic boundary needs a solution");
    const PhysicalState gs = eval_physical(*in.source, in.t, in.x_hi + 0.5 * dx);
    rho.back() = gs.rho;
    mom.back() = gs.rho * gs.u;
  } else {
    rho.back() = in.rho.back();
    mom.back() = in.mom.back();
  }
  std::vector<Prim> w(rho.size());
  double smax = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    w[i] = primitive(rho[i], mom[i], g);
    smax = std::max(smax, std::abs(w[i].u) + w[i].c);
  }
  const double dt = smax > 0.0 ? std::min(cfl * dx / smax, dt_max) : std::min(cfl * dx, dt_max);

  // Interface fluxes; interface k lies between ghost-indexed cells k and k+1.
  std::vector<double> f_rho(static_cast<std::size_t>(n) + 1), f_mom(f_rho.size());
  for (std::size_t k = 0; k < f_rho.size(); ++k) {
    const Prim& L = w[k];
    const Prim& R = w[k + 1];
    const double a = std::max(std::abs(L.u) + L.c, std::abs(R.u) + R.c);
    const double fl0 = mom[k], fr0 = mom[k + 1];
    const double fl1 = mom[k] * L.u + L.p, fr1 = mom[k + 1] * R.u + R.p;
    f_rho[k] = 0.5 * (fl0 + fr0) - 0.5 * a * (rho[k + 1] - rho[k]);
    f_mom[k] = 0.5 * (fl1 + fr1) - 0.5 * a * (mom[k + 1] - mom[k]);
  }

  FVState out = in;
  out.t = in.t + dt;
  const double r = dt / dx;
  for (int i = 0; i < n; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    double nr = in.rho[ui] - r * (f_rho[ui + 1] - f_rho[ui]);
    double nm = in.mom[ui] - r * (f_mom[ui + 1] - f_mom[ui]);
    if (!std::isfinite(nr) || !std::isfinite(nm)) {
      throw ComputationError("step: non-finite state at cell " + std::to_string(i));
    }
    if (nr < in.floor) {
      if (nr != 0.0 || nm != 0.0) {
        ++out.floor_activations;
        out.floor_mass_added -= nr * dx;
      }
      nr = 0.0;
      nm = 0.0;
    }
    out.rho[ui] = nr;
    out.mom[ui] = nm;
  }
  out.boundary_mass_out += dt * (f_rho.back() - f_rho.front());
  return out;
}

double total_mass(const FVState& s) {
  double m = 0.0;
  for (double r : s.rho) m += r;
  return m * s.dx();
}

double tracked_boundary(const FVState& s, double threshold) {
  for (int i = 0; i < s.n; ++i) {
    if (s.rho[static_cast<std::size_t>(i)] > threshold) return s.x_lo + i * s.dx();
  }
  return s.x_hi;
}

EvolveResult evolve(FVState state, double t_end, double cfl, int record_every) {
  if (!(t_end > state.t)) throw DomainError("evolve: t_end must exceed the current time");
  if (record_every < 1) throw DomainError("evolve: record_every must be >= 1");
  EvolveResult res{};
  auto record = [&](const FVState& s) {
    const double b = s.source ? boundary(*s.source, s.t) : 0.0;
    res.trajectory.push_back({s.t, tracked_boundary(s), b});
  };
  record(state);
  while (state.t < t_end) {
    state = step(state, cfl, t_end - state.t);
    ++res.steps;
    // Guard against a last step that rounds just short of t_end.
    if (t_end - state.t <= 1e-14 * std::max(1.0, std::abs(t_end))) state.t = t_end;
    if (res.steps % static_cast<std::size_t>(record_every) == 0 || state.t >= t_end) {
      record(state);
    }
  }
  res.state = std::move(state);
  return res;
}

double l1_density_error(const FVState& s, const GlobalSolution& sol, double x_a, double x_b) {
  const double dx = s.dx();
  double err = 0.0;
  for (int i = 0; i < s.n; ++i) {
    const double a = s.x_lo + i * dx, b = a + dx;
    if (a < x_a || b > x_b) continue;
    const double ex = cell_average([&](double x) { return exact_rho(sol, s.t, x); }, a, b);
    err += std::abs(s.rho[static_cast<std::size_t>(i)] - ex) * dx;
  }
  return err;
}

}  // namespace ves
