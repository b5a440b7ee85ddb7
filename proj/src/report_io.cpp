#include "sga/report_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

namespace sga::report_io {

namespace {

std::string quoted(const std::string &s) { return nlohmann::json(s).dump(); }

std::string levels_json(const std::optional<std::pair<int, int>> &lv) {
  if (!lv)
    return "null";
  return "[" + std::to_string(lv->first) + "," + std::to_string(lv->second) + "]";
}

std::string number(double v, bool shortest) {
  if (!std::isfinite(v))
    return "null";
  char buf[64];
  const auto res = shortest ? std::to_chars(buf, buf + sizeof buf, v)
                            : std::to_chars(buf, buf + sizeof buf, v,
                                            std::chars_format::general, 17);
  return {buf, res.ptr};
}

std::string text_number(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 3);
  return {buf, res.ptr};
}

const char *kJLabels[6] = {"J12", "J13", "J14", "J23", "J24", "J34"};
constexpr int kJPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

} // namespace

std::string format_fixed17(double v) { return number(v, false); }
std::string format_shortest(double v) { return number(v, true); }

std::string check_to_json(const verify::CheckResult &c) {
  std::string s = "{\"check\":" + quoted(c.name);
  s += ",\"residual\":" + format_fixed17(c.residual);
  s += ",\"tolerance\":" + format_fixed17(c.tolerance);
  s += ",\"pass\":";
  s += c.pass ? "true" : "false";
  s += ",\"levels\":" + levels_json(c.levels);
  s += ",\"seconds\":" + (c.seconds ? format_fixed17(*c.seconds) : std::string("null"));
  if (!c.note.empty())
    s += ",\"note\":" + quoted(c.note);
  s += "}";
  return s;
}

std::string checks_to_json(const std::vector<verify::CheckResult> &checks) {
  std::string s = "[";
  for (std::size_t k = 0; k < checks.size(); ++k) {
    s += k ? ",\n  " : "\n  ";
    s += check_to_json(checks[k]);
  }
  s += checks.empty() ? "]" : "\n]";
  return s;
}

std::string report_to_json(const verify::VerificationReport &r) {
  std::string s = "{\"max_level\":" + std::to_string(r.max_level);
  s += ",\"dimension\":" + std::to_string(r.dimension);
  s += ",\"c\":" + format_fixed17(r.c);
  s += ",\"pass\":";
  s += r.pass() ? "true" : "false";
  s += ",\"failures\":" + std::to_string(r.failures());
  s += ",\"checks\":" + checks_to_json(r.checks) + "}\n";
  return s;
}

std::string checks_to_text(const std::vector<verify::CheckResult> &checks) {
  std::ostringstream os;
  for (const auto &c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << "  residual=" << text_number(c.residual)
       << " tol=" << text_number(c.tolerance);
    if (c.levels)
      os << " levels=" << c.levels->first << ".." << c.levels->second;
    if (c.seconds)
      os << " t=" << text_number(*c.seconds) << "s";
    if (!c.note.empty())
      os << " (" << c.note << ")";
    os << '\n';
  }
  return os.str();
}

std::string report_to_text(const verify::VerificationReport &r) {
  std::ostringstream os;
  os << "N=" << r.max_level << " dim=" << r.dimension << " c=" << r.c << '\n';
  os << checks_to_text(r.checks);
  os << (r.pass() ? "all " + std::to_string(r.checks.size()) + " checks passed"
                  : std::to_string(r.failures()) + " of " + std::to_string(r.checks.size()) +
                        " checks failed")
     << '\n';
  return os.str();
}

std::string spectrum_to_text(const std::vector<verify::SpectrumRow> &rows) {
  std::ostringstream os;
  os << "n  E=n(n+2)  degeneracy  found  measured  residual\n";
  for (const auto &r : rows)
    os << r.level << "  " << r.exact << "  " << r.degeneracy << "  " << r.measured_multiplicity
       << "  " << format_fixed17(r.measured) << "  " << text_number(r.residual) << '\n';
  return os.str();
}

std::string spectrum_to_json(const std::vector<verify::SpectrumRow> &rows) {
  std::string s = "[";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto &r = rows[k];
    s += k ? ",\n  " : "\n  ";
    s += "{\"n\":" + std::to_string(r.level) + ",\"E\":" + format_fixed17(r.exact) +
         ",\"degeneracy\":" + std::to_string(r.degeneracy) +
         ",\"found\":" + std::to_string(r.measured_multiplicity) +
         ",\"measured\":" + format_fixed17(r.measured) +
         ",\"residual\":" + format_fixed17(r.residual) + "}";
  }
  s += rows.empty() ? "]\n" : "\n]\n";
  return s;
}

std::string trajectory_to_csv(const classical::Trajectory &traj) {
  std::string s = "t,x1,x2,x3,x4,p1,p2,p3,p4,H";
  for (const char *l : kJLabels)
    s += std::string(",") + l;
  s += '\n';
  for (std::size_t n = 0; n < traj.states.size(); ++n) {
    const auto &st = traj.states[n];
    const auto g = classical::classical_generators(st);
    s += format_shortest(traj.times[n]);
    for (const double v : st.x)
      s += "," + format_shortest(v);
    for (const double v : st.p)
      s += "," + format_shortest(v);
    s += "," + format_shortest(g.H);
    for (const auto &ij : kJPairs)
      s += "," + format_shortest(g.J[ij[0]][ij[1]]);
    s += '\n';
  }
  return s;
}

std::string trajectory_to_json(const classical::Trajectory &traj) {
  std::string s = "{\"method\":" + quoted(classical::method_name(traj.method));
  s += ",\"degenerate\":";
  s += traj.degenerate ? "true" : "false";
  s += ",\"samples\":[";
  for (std::size_t n = 0; n < traj.states.size(); ++n) {
    const auto &st = traj.states[n];
    const auto g = classical::classical_generators(st);
    s += n ? ",\n  " : "\n  ";
    s += "{\"t\":" + format_shortest(traj.times[n]);
    for (int k = 0; k < 4; ++k)
      s += ",\"x" + std::to_string(k + 1) + "\":" + format_shortest(st.x[k]);
    for (int k = 0; k < 4; ++k)
      s += ",\"p" + std::to_string(k + 1) + "\":" + format_shortest(st.p[k]);
    s += ",\"H\":" + format_shortest(g.H);
    for (int k = 0; k < 6; ++k)
      s += ",\"" + std::string(kJLabels[k]) + "\":" +
           format_shortest(g.J[kJPairs[k][0]][kJPairs[k][1]]);
    s += "}";
  }
  s += traj.states.empty() ? "]}\n" : "\n]}\n";
  return s;
}

} // namespace sga::report_io
