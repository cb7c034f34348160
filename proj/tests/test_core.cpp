#include <doctest.h>

#include "support.hpp"
#include "ves/core.hpp"
#include "ves/errors.hpp"
#include "ves/special_solution.hpp"

using namespace ves;
using ves::test::rel_close;

TEST_SUITE("core") {

TEST_CASE("derived constants") {
  const GasParams p = derived_constants(1.816, 0.716);
  CHECK(p.k1 == doctest::Approx(1.831872).epsilon(1e-14));
  CHECK(p.k2 == doctest::Approx(0.69607843137254904).epsilon(1e-14));
  CHECK(p.delta == doctest::Approx(1.3966480446927375).epsilon(1e-14));
  CHECK(p.A_pressure * p.gamma / (p.gamma - 1.0) == doctest::Approx(1.0));

  const GasParams q = derived_constants(2.0, 0.5);
  CHECK(q.k1 == 1.75);
  CHECK(q.k2 == 1.0);
  CHECK(q.delta == 2.0);
}

TEST_CASE("derived constants reject out-of-range parameters") {
  CHECK_THROWS_AS(derived_constants(3.0, 0.5), DomainError);
  CHECK_THROWS_AS(derived_constants(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(derived_constants(2.0, 0.0), DomainError);
  CHECK_THROWS_AS(derived_constants(2.0, 1.0), DomainError);
  CHECK_THROWS_WITH_AS(derived_constants(3.5, 0.5), doctest::Contains("gamma"), DomainError);
  CHECK_THROWS_WITH_AS(derived_constants(2.0, 1.5), doctest::Contains("mu"), DomainError);
}

TEST_CASE("right-hand sides at hand-evaluated points") {
  const GasParams q = derived_constants(2.0, 0.5);
  CHECK(f_rhs({1.0, 1.0}, q) == doctest::Approx(2.5));
  CHECK(g_rhs({1.0, 1.0}, q) == doctest::Approx(2.0));
  CHECK(f_rhs({0.37, 0.0}, q) == 0.0);
  CHECK(g_rhs({0.0, 0.0}, q) == 0.0);
  CHECK(g_rhs(point_B(), q) == 0.0);
  CHECK(delta_fn(point_B()) == 0.0);
  CHECK(delta_fn({0.0, 0.0}) == 1.0);
  CHECK(partials(point_B(), q).G_H == doctest::Approx(2.0));
  CHECK(partials({0.4, 0.0}, q).F_U == 0.0);
}

TEST_CASE("critical point locations") {
  const GasParams p = derived_constants(1.816, 0.716);
  const PhasePoint C = point_C(p), D = point_D(p);
  CHECK(rel_close(C.U, 0.50852272727272724, 1e-14));
  CHECK(rel_close(C.H, 0.043046818698347108, 1e-14));
  CHECK(rel_close(D.U, 1.6891891891891893, 1e-14));
  CHECK(rel_close(D.H, 0.47498173849525212, 1e-14));
  CHECK(point_A().U == 0.0);
  CHECK(point_A().H == 0.0);
  CHECK(point_B().U == 1.0);
  CHECK(point_B().H == 0.0);

  const auto cps = critical_points(p);
  CHECK(cps[0].label == CriticalLabel::A);
  CHECK(cps[1].kind == CriticalKind::triple);
  CHECK(cps[3].kind == CriticalKind::triple);
  CHECK(cps[2].kind == CriticalKind::double_point);
  CHECK_FALSE(cps[4].location.has_value());
  CHECK_FALSE(cps[4].slopes.has_value());
}

TEST_CASE("F_H at D equals the closed-form matrix entry") {
  const GasParams p = derived_constants(1.816, 0.716);
  const double fh = partials(point_D(p), p).F_H;
  CHECK(rel_close(fh, 0.94996347699050425, 1e-12));
  CHECK(rel_close(fh, 2.0 * std::pow(p.gamma - 1.0, 2) / std::pow(3.0 - p.gamma, 2), 1e-12));
}

TEST_CASE("slope branches at C, D and B") {
  const GasParams p = derived_constants(1.816, 0.716);
  const SlopeBranches c = slope_branches(CriticalLabel::C, p);
  CHECK(rel_close(c.c1, 0.16930145454545456, 1e-12));
  CHECK(rel_close(c.c2, -0.34397926166263794, 1e-12));
  const SlopeBranches d = slope_branches(CriticalLabel::D, p);
  CHECK(rel_close(d.c1, 0.56237837837837849, 1e-12));
  CHECK(rel_close(d.c2, 1.0951986405423421, 1e-12));
  const SlopeBranches b = slope_branches(CriticalLabel::B, p);
  CHECK(b.c1 == 0.0);
  CHECK(rel_close(b.c2, 0.30408027745664744, 1e-12));
  CHECK(rel_close(b.c2, p.gamma * (1.0 - p.mu) / (1.0 + p.k2), 1e-14));
}

TEST_CASE("extra double point lies on F = G = 0") {
  const GasParams p = derived_constants(1.816, 0.716);
  const PhasePoint e = extra_double_point(p);
  CHECK(std::abs(f_rhs(e, p)) < 1e-13);
  CHECK(std::abs(g_rhs(e, p)) < 1e-13);
}

}  // TEST_SUITE
