#pragma once

#include "sga/classical.hpp"
#include "sga/verify.hpp"

#include <string>
#include <vector>

namespace sga::report_io {

/// 17 significant digits; non-finite values become null.
std::string format_fixed17(double v);

/// Shortest representation that reads back to the same double.
std::string format_shortest(double v);

/// {check, residual, tolerance, pass, levels, seconds} in that order.
std::string check_to_json(const verify::CheckResult &c);

std::string report_to_json(const verify::VerificationReport &r);
std::string report_to_text(const verify::VerificationReport &r);

/// A bare list of checks, as produced by the classical suites.
std::string checks_to_json(const std::vector<verify::CheckResult> &checks);
std::string checks_to_text(const std::vector<verify::CheckResult> &checks);

std::string spectrum_to_text(const std::vector<verify::SpectrumRow> &rows);
std::string spectrum_to_json(const std::vector<verify::SpectrumRow> &rows);

/// Columns t, x1..x4, p1..p4, H, J12, J13, J14, J23, J24, J34.
std::string trajectory_to_csv(const classical::Trajectory &traj);
std::string trajectory_to_json(const classical::Trajectory &traj);

} // namespace sga::report_io
