#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "asymbell/optimize.hpp"

namespace asymbell {

// Formats an angle as a multiple of pi, e.g. "-0.092400".
std::string pi_multiple(double radians);

// Normalizes to (-pi, pi].
double normalize_angle(double radians);

// `# key = value` lines prepended to CSV output so every file carries the
// config (seed included) that reproduces it.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

// CSV contract: header `theta,noise_param,threshold,q,m_a,m_b,x`, one row
// per point. Infeasible points either leave the threshold (and breakdown)
// fields empty or record threshold 1, depending on empty_when_infeasible.
// Output is byte-stable for identical inputs.
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points,
                     const ConfigEcho& config, bool empty_when_infeasible);

std::string sweep_csv_string(const std::vector<SweepPoint>& points,
                             const ConfigEcho& config,
                             bool empty_when_infeasible);

}  // namespace asymbell
