// Acceptance suite: one PASS/FAIL line per criterion.
//
//   ves_acceptance            run all ten criteria
//   ves_acceptance --only 4   run criterion 4
//
// Exit status is 0 iff every selected criterion passes.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ves/bd_connector.hpp"
#include "ves/core.hpp"
#include "ves/fv_crosscheck.hpp"
#include "ves/profile.hpp"
#include "ves/sonic_local.hpp"
#include "ves/special_solution.hpp"
#include "ves/verifier.hpp"

using namespace ves;

namespace {

struct Outcome {
  bool pass;
  std::string summary;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const GasParams& ref_params() {
  static const GasParams p = derived_constants(1.816, 0.716);
  return p;
}

std::shared_ptr<const GlobalSolution> ref_solution() {
  static const auto s = std::make_shared<const GlobalSolution>(assemble(ref_params(), 1.0));
  return s;
}

std::vector<std::pair<double, double>> grid20() {
  std::vector<std::pair<double, double>> g;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) g.emplace_back(1.05 + 0.1 * i, 0.05 + 0.9 * j / 19.0);
  }
  return g;
}

Outcome closed_form_regression() {
  const GasParams& p = ref_params();
  const double g = p.gamma, mu = p.mu;
  double worst = 0.0;
  auto cmp = [&](double got, double want) { worst = std::max(worst, rel_err(got, want)); };

  const PhasePoint C = point_C(p), D = point_D(p);
  cmp(C.U, 2.0 * mu / (g + 1.0));
  cmp(C.H, std::pow((g - 1.0) / (g + 1.0), 2) * mu * mu);
  cmp(D.U, 2.0 / (3.0 - g));
  cmp(D.H, std::pow((g - 1.0) / (3.0 - g), 2));
  const bool ab = point_A().U == 0.0 && point_A().H == 0.0 && point_B().U == 1.0 &&
                  point_B().H == 0.0;

  // Slopes at C and D: high-precision oracle values.
  const SlopeBranches sc = slope_branches(CriticalLabel::C, p);
  const SlopeBranches sd = slope_branches(CriticalLabel::D, p);
  const SlopeBranches sb = slope_branches(CriticalLabel::B, p);
  cmp(sc.c1, 0.16930145454545456);
  cmp(sc.c2, -0.34397926166263794);
  cmp(sd.c1, 0.56237837837837849);
  cmp(sd.c2, 1.0951986405423421);
  cmp(sb.c2, g * (1.0 - mu) / (1.0 + p.k2));
  const bool b1 = sb.c1 == 0.0;

  const LinearizationAtD lin = linearize_at_d(p);
  const double l1 = 2.0 * (g - 1.0) * (mu - 1.0) / (3.0 - g);
  const double l2 = ((3.0 - g) * mu - g - 1.0) / (3.0 - g);
  cmp(lin.lambda1, l1);
  cmp(lin.lambda2, l2);
  cmp(lin.beta, l2 / l1);
  cmp(lin.beta, 4.2466169566418112);

  const SaddleData s = saddle_data_at_b(p);
  cmp(s.lambda1, mu - 1.0);
  cmp(s.lambda2, (g - 1.0) * (1.0 - mu));

  return {worst <= 1e-12 && ab && b1,
          "max relative deviation " + sci(worst) + " (tol 1e-12)" +
              (ab && b1 ? "" : "; A/B location or C1(B) wrong")};
}

Outcome sign_sweep() {
  int violations = 0;
  for (auto [g, mu] : grid20()) {
    const GasParams p = derived_constants(g, mu);
    const SlopeBranches c = slope_branches(CriticalLabel::C, p);
    const SlopeBranches d = slope_branches(CriticalLabel::D, p);
    const LinearizationAtD lin = linearize_at_d(p);
    const SaddleData sb = saddle_data_at_b(p);
    if (!(c.c2 < 0.0 && 0.0 < c.c1)) ++violations;
    if (!(d.c2 > d.c1 && d.c1 > 0.0)) ++violations;
    if (!(lin.lambda2 < lin.lambda1 && lin.lambda1 < 0.0)) ++violations;
    if (!(lin.beta > 1.0)) ++violations;
    if (!(sb.lambda1 < 0.0 && 0.0 < sb.lambda2)) ++violations;
    const double ud = point_D(p).U;
    for (int k = 0; k <= 200; ++k) {
      if (!(h_g_prime(1.0 + (ud - 1.0) * k / 200.0, p) > 0.0)) ++violations;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over 400 pairs"};
}

Outcome special_oracle() {
  const GlobalSolution& s = *ref_solution();
  double worst_b = 0.0;
  for (Branch b : {Branch::CA, Branch::AE, Branch::ED}) {
    const SpecialSolutionMap& m = b == Branch::CA ? s.ca : b == Branch::AE ? s.ae : s.ed;
    for (int k = 0; k < 1000; ++k) {
      const double f = (k + 0.5) / 1000.0;
      double y;
      if (b == Branch::ED) {
        y = s.y_D * (1e-6 + (1.0 - 2e-6) * f);
      } else {
        y = std::exp(std::log(1e-6) + f * (std::log(1e6) - std::log(1e-6)));
      }
      worst_b = std::max(worst_b, burgers_residual(y, m));
    }
  }
  const double gap = s.y_D - s.y_B;
  double worst_o = 0.0;
  const std::vector<std::pair<Branch, std::pair<double, double>>> spans = {
      {Branch::CA, {0.5, 5.0}},
      {Branch::AE, {0.05, 5.0}},
      {Branch::ED, {s.y_D + 0.05 * std::abs(s.y_D), -0.01}},
      {Branch::BD, {s.y_B + 0.05 * gap, s.y_D - 0.05 * gap}}};
  for (const auto& [b, iv] : spans) {
    worst_o = std::max(worst_o, ode_oracle_check(s, b, iv.first, iv.second).measured);
  }
  return {worst_b <= 1e-10 && worst_o <= 1e-7,
          "burgers residual max " + sci(worst_b) + " (tol 1e-10, 3000 points); ODE oracle max " +
              sci(worst_o) + " (tol 1e-7, 4 branches)"};
}

Outcome bd_connection() {
  const GasParams& p = ref_params();
  const BdConnection c = connect_bd(p);
  bool barrier = c.barrier_checks == c.curve.samples.size();
  for (const CurveSample& q : c.curve.samples) {
    barrier = barrier && q.H > h_g(q.U, p) && q.H < h_sp(q.U, p);
  }
  const double yd = sonic_y(p, 1.0);
  const double yb = parametrize_y(c, yd).y_B;
  const bool order = std::isfinite(yb) && yb < yd && yd < 0.0;

  double seed_dev = 0.0;
  for (double e : {1e-5, 1e-7}) {
    ConnectOptions o;
    o.seed_eps = e;
    seed_dev = std::max(seed_dev, rel_err(parametrize_y(connect_bd(p, o), yd).y_B, yb));
  }
  ConnectOptions h;
  h.rtol *= 0.5;
  h.atol *= 0.5;
  const double tol_dev = rel_err(parametrize_y(connect_bd(p, h), yd).y_B, yb);

  double k_dev = 0.0;
  for (double K : {0.5, 2.0}) {
    const double ydk = sonic_y(p, K);
    const double ybk = parametrize_y(connect_bd(p), ydk).y_B;
    k_dev = std::max(k_dev, rel_err(ybk / ydk, yb / yd));
  }
  const bool ok = c.terminal_miss <= 1e-6 && barrier && order && seed_dev <= 1e-7 &&
                  tol_dev <= 1e-7 && k_dev <= 1e-8;
  std::ostringstream os;
  os.precision(15);
  os << "y_B = " << yb << "; terminal miss " << sci(c.terminal_miss) << "; barrier "
     << (barrier ? "100%" : "VIOLATED") << " of " << c.barrier_checks
     << " steps; seed dev " << sci(seed_dev) << ", tol-halving dev " << sci(tol_dev)
     << ", K-ratio dev " << sci(k_dev);
  return {ok, os.str()};
}

Outcome sonic_jump() {
  const GlobalSolution& s = *ref_solution();
  const double g = s.params.gamma, mu = s.params.mu, yd = s.y_D;
  const double want_r = -(g + 1.0 - (3.0 - g) * mu) / ((g - 1.0) * (3.0 - g) * yd);
  const double want_l = -(8.0 + 4.0 * (g - 3.0) * mu) / ((3.0 - g) * (g + 1.0) * yd);
  const OneSidedSlopes f = fitted_sonic_slopes(s, 1.0);
  const double err = std::max(rel_err(f.right, want_r), rel_err(f.left, want_l));
  int equal = 0;
  for (auto [gg, mm] : grid20()) {
    const GlobalSolution q = assemble(derived_constants(gg, mm), 1.0);
    const OneSidedSlopes fq = fitted_sonic_slopes(q, 1.0);
    if (!(std::abs(fq.left - fq.right) > 1e-3 * std::max(std::abs(fq.left), std::abs(fq.right)))) {
      ++equal;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "right %.6f, left %.6f; max rel err %s (tol 1e-3); equal slopes on %d of 400 "
                "grid pairs",
                f.right, f.left, sci(err).c_str(), equal);
  return {err <= 1e-3 && equal == 0, buf};
}

Outcome pde_residuals() {
  const GlobalSolution& s = *ref_solution();
  bool ok = true;
  std::string out;
  for (const PdeRegion& r : default_pde_regions(s)) {
    const CheckReport rep = pde_residual(s, r);
    ok = ok && rep.status == CheckStatus::pass;
    out += (out.empty() ? "" : "; ") + r.name + " max " + sci(rep.measured);
  }
  return {ok, out + " (tol 1e-4, order >= 1.9 required in each)"};
}

Outcome weak_form() {
  const GlobalSolution& s = *ref_solution();
  const CheckReport clean = weak_form_check(s);
  std::vector<double> m;
  for (double p : {0.01, 0.05, 0.1}) m.push_back(weak_form_check(s, 1.0, 0.5, 0.1, p).measured);
  const bool mono = m[0] < m[1] && m[1] < m[2];
  const bool ok = clean.measured <= 1e-8 && m[2] >= 1e-3 && mono;
  return {ok, "|I|/scale = " + sci(clean.measured) + " (tol 1e-8); perturbed 1%/5%/10%: " +
                  sci(m[0]) + "/" + sci(m[1]) + "/" + sci(m[2]) + (mono ? " monotone" : " NOT monotone")};
}

Outcome holder() {
  const GlobalSolution& s = *ref_solution();
  const auto r = holder_check(s, 1e-4, 1e-2);
  const double d = s.params.delta, mu = s.params.mu;
  const double e_t = rel_err(r[0].measured, d - 1.0);
  const double e_p = rel_err(r[1].measured, s.K * d);
  const double e_m = rel_err(r[2].measured, 1.0 - mu);
  const double e_pl = rel_err(r[3].measured, 1.0 - mu);
  const bool ok = e_t <= 0.02 && e_p <= 0.02 && e_m <= 0.02 && e_pl <= 0.02;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "time exponent %.6f (want %.6f), prefactor %.6f (want %.6f), space exponents "
                "%.6f / %.6f (want %.6f); tol 2%%",
                r[0].measured, d - 1.0, r[1].measured, s.K * d, r[2].measured, r[3].measured,
                1.0 - mu);
  return {ok, buf};
}

Outcome physical_vacuum() {
  const GlobalSolution& s = *ref_solution();
  bool ok = true;
  std::string out;
  for (double t : {0.1, 0.5, 1.0}) {
    const CheckReport r = physical_vacuum_check(s, t);
    const double dev = r.expected ? rel_err(r.measured, *r.expected) : 1.0;
    ok = ok && r.status == CheckStatus::pass && r.measured > 0.0 && std::isfinite(r.measured) &&
         dev <= 0.05;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%st=%g: h_x %.6g (dev %s)", out.empty() ? "" : "; ", t,
                  r.measured, sci(dev).c_str());
    out += buf;
  }
  return {ok, out + "; tol 5%"};
}

Outcome fv_crosscheck() {
  const auto sol = ref_solution();
  const int n = 4096;
  const FVState s0 = init_grid(sol, 1.0, -1.0, 3.0, n, RightBoundary::analytic);
  const EvolveResult r = evolve(s0, 0.5, 0.4);
  const double dx = s0.dx();
  double wait = 0.0, track = 0.0;
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& q : r.trajectory) {
    const double off = std::abs(q.b_num - q.b_analytic) / dx;
    if (q.t < 0.0) wait = std::max(wait, off);
    if (q.t > 0.0) {
      track = std::max(track, off);
      monotone = monotone && q.b_num <= prev;
      prev = q.b_num;
    }
  }
  std::vector<double> l1;
  for (int m : {512, 1024, 2048}) {
    const FVState a = init_grid(sol, 1.0, -1.0, 3.0, m, RightBoundary::analytic);
    const EvolveResult e = evolve(a, 0.5, 0.4, 1 << 30);
    const double xa = sol->y_D * std::pow(0.5, sol->params.delta) + 0.05;
    l1.push_back(l1_density_error(e.state, *sol, xa, 1.0));
  }
  const bool l1_down = l1[1] < l1[0] && l1[2] < l1[1];
  const bool ok = wait <= 1.0 && track <= 2.0 && l1_down;
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "n=%d CFL 0.4: waiting-phase max offset %.0f cells (tol 1); post-singularity "
                "max offset %.1f cells (tol 2); b_num monotone for t>0: %s; interior L1(rho) "
                "n=512/1024/2048: %s/%s/%s %s",
                n, wait, track, monotone ? "yes" : "no", sci(l1[0]).c_str(), sci(l1[1]).c_str(),
                sci(l1[2]).c_str(), l1_down ? "decreasing" : "NOT decreasing");
  return {ok, buf};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::vector<int> only;
  app.add_option("--only", only, "criterion numbers to run (default: all)")
      ->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {1, "closed-form regression", 1.0, closed_form_regression},
      {2, "sign/ordering sweep", 10.0, sign_sweep},
      {3, "special-solution oracle", 30.0, special_oracle},
      {4, "B-D connection", 60.0, bd_connection},
      {5, "sonic jump", 1e300, sonic_jump},
      {6, "PDE residual", 60.0, pde_residuals},
      {7, "weak form", 1e300, weak_form},
      {8, "Holder/time behavior", 1e300, holder},
      {9, "physical vacuum", 1e300, physical_vacuum},
      {10, "FV cross-check", 300.0, fv_crosscheck},
  };

  int failed = 0;
  for (const Criterion& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s %2d %s: %s; %.3f s%s\n", pass ? "PASS" : "FAIL", c.id, c.title,
                o.summary.c_str(), secs, in_time ? "" : " (over time budget)");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
