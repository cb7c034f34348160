// ves: construct, verify and evolve the self-similar waiting-time solution.
//
//   ves critical-points [--gamma G --mu M] [--json]
//   ves solve    [--samples N] [--fields]          -> profile.csv, summary.json
//   ves verify   [--checks a,b] [--perturb-H p]    -> verify.json
//   ves evolve   [--n N] [--t-end t] [--cfl c]     -> trajectory.csv, snapshot.csv,
//                                                     evolve_summary.json
//
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 numerical failure.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ves/core.hpp"
#include "ves/errors.hpp"
#include "ves/export.hpp"
#include "ves/fv_crosscheck.hpp"
#include "ves/profile.hpp"
#include "ves/sonic_local.hpp"
#include "ves/verifier.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace ves;

namespace {

enum Exit { kOk = 0, kCheckFail = 1, kUsage = 2, kNumerical = 3 };

struct Common {
  double gamma = 1.816;
  double mu = 0.716;
  double K = 1.0;
  double T = 1.0;
  std::string out = ".";
  bool json = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json num(double v) { return std::isfinite(v) ? json(v) : json(); }

fs::path out_dir(const Common& c) {
  fs::path p(c.out);
  fs::create_directories(p);
  return p;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw UsageError("cannot write " + p.string());
  return f;
}

json params_json(const GasParams& p) {
  return {{"gamma", p.gamma}, {"mu", p.mu},     {"delta", p.delta},
          {"k1", p.k1},       {"k2", p.k2},     {"A_pressure", p.A_pressure}};
}

int cmd_critical_points(const Common& c) {
  const GasParams p = derived_constants(c.gamma, c.mu);
  const auto pts = critical_points(p);
  const LinearizationAtD lin = linearize_at_d(p);
  const SaddleData sb = saddle_data_at_b(p);
  if (c.json) {
    json j;
    j["params"] = params_json(p);
    j["points"] = json::array();
    for (const auto& cp : pts) {
      json e{{"label", std::string(to_string(cp.label))},
             {"kind", std::string(to_string(cp.kind))},
             {"at_infinity", !cp.location.has_value()}};
      e["U"] = cp.location ? json(cp.location->U) : json();
      e["H"] = cp.location ? json(cp.location->H) : json();
      e["c1"] = cp.slopes ? json(cp.slopes->c1) : json();
      e["c2"] = cp.slopes ? json(cp.slopes->c2) : json();
      j["points"].push_back(e);
    }
    j["D_linearization"] = {{"matrix", lin.matrix}, {"lambda1", lin.lambda1},
                            {"lambda2", lin.lambda2}, {"beta", lin.beta},
                            {"v1", lin.v1},           {"v2", lin.v2},
                            {"resonant", lin.resonant}};
    j["B_saddle"] = {{"lambda1", sb.lambda1}, {"lambda2", sb.lambda2}};
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout.precision(10);
  std::cout << "gamma = " << p.gamma << ", mu = " << p.mu << ", delta = " << p.delta
            << ", k1 = " << p.k1 << ", k2 = " << p.k2 << "\n\n";
  std::cout << "point  kind          U              H              C1             C2\n";
  for (const auto& cp : pts) {
    std::ostringstream row;
    row.precision(10);
    row << "  " << to_string(cp.label) << "    " << to_string(cp.kind)
        << std::string(14 - to_string(cp.kind).size(), ' ');
    if (cp.location) {
      row << cp.location->U << "\t" << cp.location->H << "\t" << cp.slopes->c1 << "\t"
          << cp.slopes->c2;
    } else {
      row << "at infinity";
    }
    std::cout << row.str() << '\n';
  }
  std::cout << "\nD: lambda1 = " << lin.lambda1 << ", lambda2 = " << lin.lambda2
            << ", beta = " << lin.beta << (lin.resonant ? " (resonant)" : "") << '\n';
  std::cout << "B: lambda1 = " << sb.lambda1 << ", lambda2 = " << sb.lambda2 << '\n';
  return kOk;
}

GlobalSolution build(const Common& c) {
  return assemble(derived_constants(c.gamma, c.mu), c.K);
}

int cmd_solve(const Common& c, int samples, bool fields) {
  const GlobalSolution s = build(c);
  const fs::path dir = out_dir(c);
  {
    auto f = open_out(dir / "profile.csv");
    write_profile_csv(f, sample_profile(s, samples));
  }
  if (fields) {
    std::vector<FieldRow> rows;
    for (double t : {-1.0, -0.5, 0.5, 1.0}) {
      for (int k = 0; k <= 300; ++k) {
        const double x = -1.5 + 3.0 * k / 300;
        if (t < 0.0 && x < 0.0) continue;
        rows.push_back({t, x, eval_physical(s, t, x)});
      }
    }
    auto f = open_out(dir / "fields.csv");
    write_field_csv(f, rows);
  }
  json j;
  j["params"] = params_json(s.params);
  j["K"] = s.K;
  j["T"] = c.T;
  j["y_B"] = s.y_B;
  j["y_D"] = s.y_D;
  j["y_B_over_y_D"] = s.y_B / s.y_D;
  j["beta"] = s.lin_d.beta;
  j["U_beta"] = num(s.beta_fit.U_beta);
  j["U_beta_well_determined"] = s.beta_fit.well_determined;
  j["U_beta_fit_residual"] = s.beta_fit.residual_rms;
  j["slopes_at_D"] = {{"U_left", s.d_left.linear_coeff_U},
                      {"U_right", s.d_right.linear_coeff_U},
                      {"H_left", s.d_left.linear_coeff_H},
                      {"H_right", s.d_right.linear_coeff_H}};
  j["slopes_at_B"] = {{"U", s.b_right.linear_coeff_U}, {"H", s.b_right.linear_coeff_H}};
  j["initial_data_c1"] = initial_data_c1(s, c.T);
  j["terminal_miss"] = s.terminal_miss;
  j["matching"] = {{"E_left", s.matching.e_left},
                   {"E_right", s.matching.e_right},
                   {"D_jump_U", s.matching.d_jump_U},
                   {"D_jump_H", s.matching.d_jump_H}};
  j["profile_rows"] = samples;
  {
    auto f = open_out(dir / "summary.json");
    f << j.dump(2) << '\n';
  }
  if (c.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout.precision(12);
    std::cout << "y_D = " << s.y_D << "\ny_B = " << s.y_B << "\nbeta = " << s.lin_d.beta
              << "\nU'(y_D-) = " << s.d_left.linear_coeff_U
              << "\nU'(y_D+) = " << s.d_right.linear_coeff_U << "\nU_beta = " << s.beta_fit.U_beta
              << (s.beta_fit.well_determined ? "" : " (warning: poorly determined)")
              << "\nwrote " << (dir / "profile.csv").string() << " and "
              << (dir / "summary.json").string() << '\n';
  }
  return kOk;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_verify(const Common& c, const std::string& checks, double perturb) {
  const GlobalSolution s = build(c);
  const std::vector<std::string> fams = checks.empty() ? check_families() : split_list(checks);
  std::vector<CheckReport> reps;
  try {
    reps = run_checks(s, fams, perturb);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const std::string js = reports_to_json(reps);
  {
    auto f = open_out(out_dir(c) / "verify.json");
    f << js << '\n';
  }
  // With a perturbation the weak-form check is expected to fail: that is the
  // detection working. Its passing is then the failure.
  const bool expect_weak_fail = perturb != 0.0;
  std::vector<std::string> failed;
  for (const auto& r : reps) {
    const bool weak = r.check_name.rfind("weak_form", 0) == 0;
    const bool bad = weak && expect_weak_fail ? r.status != CheckStatus::fail
                                              : r.status == CheckStatus::fail;
    if (bad) failed.push_back(r.check_name);
  }
  if (c.json) {
    std::cout << js << '\n';
  } else {
    for (const auto& r : reps) {
      std::cout << (r.status == CheckStatus::pass ? "PASS " : r.status == CheckStatus::warn ? "WARN " : "FAIL ")
                << r.check_name << "  measured=" << format_double(r.measured) << "  tol="
                << format_double(r.tolerance) << '\n';
    }
  }
  if (expect_weak_fail) {
    std::cerr << "expected-fail mode: H perturbed by " << perturb
              << " for t > 0; weak_form must report fail\n";
  }
  if (!failed.empty()) {
    std::cerr << "failing checks:";
    for (const auto& n : failed) std::cerr << ' ' << n;
    std::cerr << '\n';
    return kCheckFail;
  }
  return kOk;
}

struct EvolveOpts {
  int n = 4096;
  double t_end = 0.5;
  double cfl = 0.4;
  double x_lo = -1.0;
  double x_hi = 3.0;
  std::string right_bc = "analytic";
  int record_every = 1;
};

int cmd_evolve(const Common& c, const EvolveOpts& o) {
  if (!(o.t_end > -c.T)) throw UsageError("--t-end must exceed -T");
  if (!(o.x_lo < 0.0 && o.x_hi > 0.0)) throw UsageError("need --x-lo < 0 < --x-hi");
  const auto s = std::make_shared<const GlobalSolution>(build(c));
  const RightBoundary rb =
      o.right_bc == "outflow" ? RightBoundary::outflow : RightBoundary::analytic;
  const FVState st0 = init_grid(s, c.T, o.x_lo, o.x_hi, o.n, rb);
  const double m0 = total_mass(st0);
  const EvolveResult r = evolve(st0, o.t_end, o.cfl, o.record_every);
  const fs::path dir = out_dir(c);
  {
    auto f = open_out(dir / "trajectory.csv");
    write_trajectory_csv(f, r.trajectory);
  }
  {
    auto f = open_out(dir / "snapshot.csv");
    write_snapshot_csv(f, r.state);
  }
  const double dx = st0.dx();
  double wait = 0.0, track = 0.0;
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& q : r.trajectory) {
    const double off = std::abs(q.b_num - q.b_analytic) / dx;
    if (q.t < 0.0) wait = std::max(wait, off);
    if (q.t > 0.0) {
      track = std::max(track, off);
      if (q.b_num > prev) monotone = false;
      prev = q.b_num;
    }
  }
  const FVState& fin = r.state;
  const double balance =
      (total_mass(fin) - m0 + fin.boundary_mass_out - fin.floor_mass_added) / m0;
  json j;
  j["n"] = o.n;
  j["dx"] = dx;
  j["cfl"] = o.cfl;
  j["x_lo"] = o.x_lo;
  j["x_hi"] = o.x_hi;
  j["T"] = c.T;
  j["t_end"] = o.t_end;
  j["right_bc"] = o.right_bc;
  j["steps"] = r.steps;
  j["floor_activations"] = fin.floor_activations;
  j["mass_balance_rel"] = balance;
  j["waiting_max_offset_cells"] = wait;
  j["tracking_max_offset_cells"] = track;
  j["b_num_monotone_after_0"] = monotone;
  j["b_num_final"] = tracked_boundary(fin);
  j["b_analytic_final"] = boundary(*s, fin.t);
  if (fin.t > 0.0) {
    const double xa = s->y_D * std::pow(fin.t, s->params.delta) + 0.05;
    j["l1_rho_interior"] = l1_density_error(fin, *s, xa, std::min(1.0, o.x_hi));
  } else {
    j["l1_rho_interior"] = l1_density_error(fin, *s, 0.05, std::min(1.0, o.x_hi));
  }
  {
    auto f = open_out(dir / "evolve_summary.json");
    f << j.dump(2) << '\n';
  }
  if (c.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "steps = " << r.steps << ", dx = " << dx << "\nmax waiting offset = " << wait
              << " cells\nmax tracking offset = " << track << " cells\nwrote "
              << (dir / "trajectory.csv").string() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ves: self-similar Euler flow with a vacuum boundary that waits, then moves"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file (flags take precedence)");

  Common c;
  auto* og = app.add_option("--gamma", c.gamma, "adiabatic exponent, 1 < gamma < 3");
  auto* om = app.add_option("--mu", c.mu, "1/delta, 0 < mu < 1");
  app.add_option("--K", c.K, "integration constant K > 0");
  app.add_option("--T", c.T, "initial time is -T");
  app.add_option("--out", c.out, "output directory")->envname("VES_OUT_DIR");
  app.add_flag("--json", c.json, "machine-readable output on stdout");

  auto* cp = app.add_subcommand("critical-points", "critical points, slopes and eigen-data");
  auto* so = app.add_subcommand("solve", "assemble the profile and export it");
  int samples = 2000;
  bool fields = false;
  so->add_option("--samples", samples, "profile CSV rows")->check(CLI::Range(8, 100000000));
  so->add_flag("--fields", fields, "also write fields.csv on a (t, x) grid");
  auto* ve = app.add_subcommand("verify", "run the verification suite");
  std::string checks;
  double perturb = 0.0;
  ve->add_option("--checks", checks, "comma-separated subset of: pde, simple_wave, weak_form, "
                                     "sonic_jump, physical_vacuum, holder, ode_oracle");
  ve->add_option("--perturb-H", perturb, "scale H by (1 + p) for t > 0 (detection demo)");
  auto* ev = app.add_subcommand("evolve", "finite-volume evolution from t = -T");
  EvolveOpts eo;
  ev->add_option("--n", eo.n, "cells (>= 64)")->check(CLI::Range(64, 1 << 24));
  ev->add_option("--t-end", eo.t_end, "final time");
  ev->add_option("--cfl", eo.cfl, "CFL number in (0, 0.5]")->check(CLI::Range(1e-6, 0.5));
  ev->add_option("--x-lo", eo.x_lo, "left end of the domain (< 0)");
  ev->add_option("--x-hi", eo.x_hi, "right end of the domain (> 0)");
  ev->add_option("--right-bc", eo.right_bc, "right boundary: analytic or outflow")
      ->check(CLI::IsMember({"analytic", "outflow"}));
  ev->add_option("--record-every", eo.record_every, "trajectory sampling in steps")
      ->check(CLI::Range(1, 1 << 30));
  for (auto* sub : {cp, so, ve, ev}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if ((og->count() > 0) != (om->count() > 0)) {
    std::cerr << "error: --gamma and --mu must be given together\n";
    return kUsage;
  }

  try {
    if (*cp) return cmd_critical_points(c);
    if (*so) return cmd_solve(c, samples, fields);
    if (*ve) return cmd_verify(c, checks, perturb);
    if (*ev) return cmd_evolve(c, eo);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ComputationError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
