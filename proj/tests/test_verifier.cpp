#include <doctest.h>

#include <cmath>
#include <string>

#include "fixtures.hpp"
#include "support.hpp"
#include "ves/errors.hpp"
#include "ves/verifier.hpp"

using namespace ves;
using ves::test::rel_close;

TEST_SUITE("verifier") {

TEST_CASE("report constructors") {
  const CheckReport a = compare_report("x", 1.0 + 1e-9, 1.0, 1e-6);
  CHECK(a.status == CheckStatus::pass);
  CHECK(a.expected.has_value());
  CHECK(compare_report("x", 1.1, 1.0, 1e-6).status == CheckStatus::fail);
  const CheckReport b = bound_report("y", 0.5, 1.0);
  CHECK(b.status == CheckStatus::pass);
  CHECK_FALSE(b.expected.has_value());
  CHECK(bound_report("y", std::nan(""), 1.0).status == CheckStatus::fail);
}

TEST_CASE("PDE residual converges in every smooth region") {
  const GlobalSolution& s = *ves::test::reference();
  const auto regions = default_pde_regions(s);
  CHECK(regions.size() == 4);
  for (const auto& r : regions) {
    const CheckReport rep = pde_residual(s, r);
    CAPTURE(rep.details);
    CHECK(rep.status == CheckStatus::pass);
    CHECK(rep.measured <= 1e-4);
  }
}

TEST_CASE("PDE residual refuses regions across a seam") {
  const GlobalSolution& s = *ves::test::reference();
  const PdeRegion across{"across", 0.5, 1.0, s.y_D * 1.1, s.y_D * 0.9};
  CHECK_THROWS_AS(pde_residual(s, across), PreconditionError);
  const PdeRegion through_zero{"through_zero", -0.5, 0.5, 0.1, 1.0};
  CHECK_THROWS_AS(pde_residual(s, through_zero), PreconditionError);
}

TEST_CASE("simple-wave invariant") {
  const GlobalSolution& s = *ves::test::reference();
  for (Branch b : {Branch::CA, Branch::AE, Branch::ED}) {
    CHECK(simple_wave_check(s, b).measured <= 1e-9);
  }
  const CheckReport bd = simple_wave_check(s, Branch::BD);
  CHECK(bd.status == CheckStatus::pass);
  CHECK(bd.measured > 1e-6);
}

TEST_CASE("weak form detects a perturbation and is monotone in it") {
  const GlobalSolution& s = *ves::test::reference();
  const CheckReport clean = weak_form_check(s);
  CHECK(clean.status == CheckStatus::pass);
  CHECK(clean.measured <= 1e-8);
  double prev = clean.measured;
  for (double p : {0.01, 0.05, 0.1}) {
    const CheckReport r = weak_form_check(s, 1.0, 0.5, 0.1, p);
    CHECK(r.status == CheckStatus::fail);
    CHECK(r.measured > prev);
    prev = r.measured;
  }
  CHECK(prev > 1e-3);
  CHECK_THROWS_AS(weak_form_check(s, 0.2, 0.5), DomainError);
}

TEST_CASE("fitted sonic slopes") {
  const GlobalSolution& s = *ves::test::reference();
  const OneSidedSlopes f = fitted_sonic_slopes(s, 1.0);
  CHECK(rel_close(f.right, 3.9665875325571624, 1e-3));
  CHECK(rel_close(f.left, 2.6915468045133205, 1e-3));
  CHECK(sonic_jump_check(s).status == CheckStatus::pass);
  const OneSidedSlopes g = fitted_sonic_slopes(s, 0.3);
  CHECK(rel_close(g.right, f.right, 1e-6));
}

TEST_CASE("physical vacuum slope") {
  const GlobalSolution& s = *ves::test::reference();
  for (double t : {0.1, 0.5, 1.0}) {
    const CheckReport r = physical_vacuum_check(s, t);
    CHECK(r.status == CheckStatus::pass);
    CHECK(r.measured > 0.0);
    CHECK(std::isfinite(r.measured));
  }
  // The expansion value scales like t^(delta - 2).
  const double d = s.params.delta;
  const double a = boundary_enthalpy_slope(s, 0.01), b = boundary_enthalpy_slope(s, 0.1);
  CHECK(std::log(b / a) / std::log(10.0) == doctest::Approx(d - 2.0).epsilon(1e-10));
}

TEST_CASE("Holder exponents and K-scaling of the prefactor") {
  const GlobalSolution& s = *ves::test::reference();
  const auto r1 = holder_check(s);
  REQUIRE(r1.size() == 4);
  for (const auto& r : r1) CHECK(r.status == CheckStatus::pass);
  CHECK(rel_close(r1[0].measured, s.params.delta - 1.0, 1e-3));
  CHECK(rel_close(r1[1].measured, s.params.delta, 1e-3));

  const GlobalSolution s2 = assemble(s.params, 2.0);
  const auto r2 = holder_check(s2);
  CHECK(rel_close(r2[0].measured, r1[0].measured, 1e-6));
  CHECK(rel_close(r2[1].measured, 2.0 * r1[1].measured, 1e-6));
}

TEST_CASE("independent ODE re-integration") {
  const GlobalSolution& s = *ves::test::reference();
  CHECK(ode_oracle_check(s, Branch::CA, 0.5, 5.0).measured <= 1e-7);
  const double gap = s.y_D - s.y_B;
  CHECK(ode_oracle_check(s, Branch::BD, s.y_B + 0.1 * gap, s.y_D - 0.1 * gap).measured <= 1e-7);
  CHECK(ode_oracle_check(s, Branch::AE, 0.7, 0.7).measured == 0.0);
}

TEST_CASE("check selection") {
  const GlobalSolution& s = *ves::test::reference();
  const auto h = run_checks(s, {"holder"});
  CHECK(h.size() == 4);
  for (const auto& r : h) CHECK(r.check_name.rfind("holder", 0) == 0);
  CHECK_THROWS_AS(run_checks(s, {"nope"}), DomainError);
  CHECK(check_families().size() == 7);
}

TEST_CASE("reports are reproducible") {
  const GlobalSolution& s = *ves::test::reference();
  const auto a = run_all_checks(s);
  const auto b = run_all_checks(s);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].check_name == b[i].check_name);
    CHECK(a[i].measured == b[i].measured);
    CHECK(a[i].status == CheckStatus::pass);
  }
}

}  // TEST_SUITE
