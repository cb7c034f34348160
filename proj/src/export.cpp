#include "ves/export.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>

namespace ves {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows) {
  os << "y,U,H,branch\n";
  for (const auto& r : rows) {
    os << format_double(r.y) << ',' << format_double(r.U) << ',' << format_double(r.H) << ','
       << to_string(r.branch) << '\n';
  }
}

void write_field_csv(std::ostream& os, const std::vector<FieldRow>& rows) {
  os << "t,x,rho,u,h,c,region\n";
  for (const auto& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.x) << ',' << format_double(r.state.rho)
       << ',' << format_double(r.state.u) << ',' << format_double(r.state.h) << ','
       << format_double(r.state.c) << ',' << to_string(r.state.region) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& traj) {
  os << "t,b_num,b_analytic\n";
  for (const auto& s : traj) {
    os << format_double(s.t) << ',' << format_double(s.b_num) << ','
       << format_double(s.b_analytic) << '\n';
  }
}

void write_snapshot_csv(std::ostream& os, const FVState& s) {
  os << "x,rho,u\n";
  const double dx = s.dx();
  for (int i = 0; i < s.n; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    const double u = s.rho[k] > 0.0 ? s.mom[k] / s.rho[k] : 0.0;
    os << format_double(s.x_lo + (i + 0.5) * dx) << ',' << format_double(s.rho[k]) << ','
       << format_double(u) << '\n';
  }
}

std::string reports_to_json(const std::vector<CheckReport>& reports, int indent) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["check_name"] = r.check_name;
    j["status"] = std::string(to_string(r.status));
    j["measured"] = std::isfinite(r.measured) ? nlohmann::json(r.measured) : nlohmann::json();
    j["expected"] = r.expected ? nlohmann::json(*r.expected) : nlohmann::json();
    j["tolerance"] = r.tolerance;
    j["details"] = r.details;
    arr.push_back(std::move(j));
  }
  return arr.dump(indent);
}

}  // namespace ves
