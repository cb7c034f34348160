#pragma once

// CSV and JSON writers. Floats are written with 17 significant digits.

#include <iosfwd>
#include <string>
#include <vector>

#include "ves/fv_crosscheck.hpp"
#include "ves/profile.hpp"
#include "ves/verifier.hpp"

namespace ves {

/// Header `y,U,H,branch`.
void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows);

struct FieldRow {
  double t;
  double x;
  PhysicalState state;
};

/// Header `t,x,rho,u,h,c,region`.
void write_field_csv(std::ostream& os, const std::vector<FieldRow>& rows);

/// Header `t,b_num,b_analytic`.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& traj);

/// Header `x,rho,u` at cell centers (u = 0 in vacuum cells).
void write_snapshot_csv(std::ostream& os, const FVState& state);

/// JSON array of {check_name, status, measured, expected, tolerance, details};
/// expected is null when absent.
std::string reports_to_json(const std::vector<CheckReport>& reports, int indent = 2);

/// Decimal with 17 significant digits (round-trips every double).
std::string format_double(double v);

}  // namespace ves
