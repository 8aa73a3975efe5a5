#include "asymbell/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace asymbell {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}
}  // namespace

double normalize_angle(double radians) {
  double y = std::remainder(radians, 2.0 * kPi);
  if (y <= -kPi) y += 2.0 * kPi;
  return y;
}

std::string pi_multiple(double radians) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", radians / kPi);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points,
                     const ConfigEcho& config, bool empty_when_infeasible) {
  for (const auto& [key, value] : config) out << "# " << key << " = " << value << "\n";
  out << "theta,noise_param,threshold,q,m_a,m_b,x\n";
  for (const SweepPoint& pt : points) {
    const double noise =
        pt.noise.background_p != 0.0 ? pt.noise.background_p : pt.noise.dark_a;
    out << num(pt.theta) << ',' << num(noise) << ',';
    if (!pt.feasible && empty_when_infeasible) {
      out << ",,,,\n";
      continue;
    }
    out << num(pt.threshold) << ',';
    if (pt.feasible)
      out << num(pt.breakdown.q) << ',' << num(pt.breakdown.m_a) << ','
          << num(pt.breakdown.m_b) << ',' << num(pt.breakdown.x) << '\n';
    else
      out << ",,,\n";
  }
}

std::string sweep_csv_string(const std::vector<SweepPoint>& points, const ConfigEcho& config,
                             bool empty_when_infeasible) {
  std::ostringstream os;
  write_sweep_csv(os, points, config, empty_when_infeasible);
  return os.str();
}

}  // namespace asymbell
