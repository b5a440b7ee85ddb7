// sga: command-line front end for the so(4,2) verification library.
//
//   verify          run the quantum verification suite at level N
//   spectrum        eigenvalues of H against n(n+2)
//   eigenstates     harmonic polynomial of A+_{mu1} ... A+_{mun} psi_0
//   simulate        classical motion on S^3 plus constants-of-motion report
//   bracket-oracle  Dirac brackets against finite-difference Poisson brackets
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or I/O error.

#include "sga/classical.hpp"
#include "sga/operators.hpp"
#include "sga/report_io.hpp"
#include "sga/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string &text, const std::string &path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw UsageError("cannot open " + path + " for writing");
  f << text;
  if (!f)
    throw UsageError("failed writing " + path);
}

int status(const std::vector<sga::verify::CheckResult> &checks) {
  for (const auto &c : checks)
    if (!c.pass)
      return kFail;
  return kPass;
}

sga::classical::Vec4 to_vec4(const std::vector<double> &v, const char *flag) {
  if (v.size() != 4)
    throw UsageError(std::string(flag) + " needs exactly 4 components");
  return {v[0], v[1], v[2], v[3]};
}

// --tol KEY=VALUE overrides.
void apply_tolerances(sga::verify::VerifyOptions &opts, const std::vector<std::string> &overrides) {
  for (const auto &item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw UsageError("--tol expects KEY=VALUE, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1)
        throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw UsageError("--tol value for " + key + " is not a number");
    }
    if (!(value >= 0.0))
      throw UsageError("tolerance " + key + " must be non-negative");
    if (key == "default")
      opts.tolerance = value;
    else if (key == "chain")
      opts.chain_tolerance = value;
    else if (key == "f")
      opts.f_tolerance = value;
    else if (key == "spectrum")
      opts.spectrum_tolerance = value;
    else
      throw UsageError("unknown tolerance key '" + key +
                       "' (expected default, chain, f or spectrum)");
  }
}

struct VerifyArgs {
  int level = 6;
  double c = 2.0;
  std::vector<std::string> tol;
  std::string out;
  std::string format = "json";
  bool timings = false;
};

int cmd_verify(const VerifyArgs &a) {
  if (a.level < 2)
    throw UsageError("verify needs --level >= 2 so that interior levels exist");
  sga::verify::VerifyOptions opts;
  opts.c = a.c;
  opts.timings = a.timings;
  apply_tolerances(opts, a.tol);
  const auto report = sga::verify::run_suite(a.level, opts);
  emit(a.format == "text" ? sga::report_io::report_to_text(report)
                          : sga::report_io::report_to_json(report),
       a.out);
  if (!a.out.empty() && a.out != "-")
    std::cerr << (report.pass() ? "pass" : "FAIL") << ": " << report.failures() << " of "
              << report.checks.size() << " checks failed\n";
  return report.pass() ? kPass : kFail;
}

struct SpectrumArgs {
  int level = 6;
  std::string out;
  std::string format = "text";
};

int cmd_spectrum(const SpectrumArgs &a) {
  if (a.level < 0)
    throw UsageError("--level must be non-negative");
  const auto rep = sga::operators::build_representation(a.level);
  const auto rows = sga::verify::spectrum_table(rep);
  emit(a.format == "json" ? sga::report_io::spectrum_to_json(rows)
                          : sga::report_io::spectrum_to_text(rows),
       a.out);
  const auto check = sga::verify::check_spectrum(rep);
  return check.pass ? kPass : kFail;
}

struct EigenstateArgs {
  int level = 6;
  std::vector<int> indices;
};

int cmd_eigenstates(const EigenstateArgs &a) {
  if (a.level < 1)
    throw UsageError("--level must be at least 1");
  const auto rep = sga::operators::build_representation(a.level);
  sga::hilbert::Polynomial4 poly(0);
  try {
    poly = sga::verify::build_eigenstate(rep, a.indices);
  } catch (const std::out_of_range &e) {
    throw UsageError(e.what());
  }
  std::string label = "A+";
  for (const int mu : a.indices)
    label += std::to_string(mu);
  std::cout << (a.indices.empty() ? std::string("psi_0") : label + " psi_0") << " = "
            << poly.to_string() << '\n';
  const double lap = poly.is_zero() ? 0.0
                                    : sga::hilbert::laplacian(poly).max_abs() / poly.max_abs();
  std::cout << "degree " << poly.degree() << ", laplacian residual "
            << sga::report_io::format_fixed17(lap) << '\n';
  return lap <= 1e-10 ? kPass : kFail;
}

struct SimulateArgs {
  std::vector<double> x0{1.0, 0.0, 0.0, 0.0};
  std::vector<double> p0{0.0, 1.0, 0.0, 0.0};
  double t_end = 0.0;
  double periods = 10.0;
  double dt = 0.0;
  int steps_per_period = 1000;
  std::string method = "rk4";
  std::string out;
  std::string format = "csv";
  std::string report;
};

int cmd_simulate(const SimulateArgs &a) {
  namespace cl = sga::classical;
  cl::PhaseState s0{to_vec4(a.x0, "--x0"), to_vec4(a.p0, "--p0")};
  if (cl::constraint_residual(s0) > 1e-9) {
    try {
      s0 = cl::project(s0);
    } catch (const std::invalid_argument &e) {
      throw UsageError(e.what());
    }
    std::cerr << "warning: initial state is off the constraint surface; projected onto "
                 "x.x = 1, x.p = 0\n";
  }
  const bool degenerate = cl::classical_generators(s0).H == 0.0;
  // Degenerate states have no period; fall back to unit time scales.
  const double T = degenerate ? 1.0 : cl::period(s0);
  const double t_end = a.t_end > 0.0 ? a.t_end : a.periods * T;
  const double dt = a.dt > 0.0 ? a.dt : T / a.steps_per_period;

  cl::Trajectory traj;
  try {
    traj = a.method == "analytic" ? cl::sample_analytic(s0, t_end, dt)
                                  : cl::integrate(s0, t_end, dt);
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
  emit(a.format == "json" ? sga::report_io::trajectory_to_json(traj)
                          : sga::report_io::trajectory_to_csv(traj),
       a.out);

  auto checks = cl::check_motion_constants(traj);
  if (degenerate) {
    std::cerr << "status: degenerate fixed point (p0 = 0), constant trajectory\n";
  } else {
    const auto tol = cl::MotionTolerances::for_method(traj.method);
    checks.push_back(sga::verify::make_result("motion.deviation_from_analytic",
                                              cl::max_deviation_from_analytic(traj),
                                              traj.method == cl::Method::Rk4 ? 1e-6 : 1e-12));
    const double measured = cl::measure_period(traj);
    auto r = sga::verify::make_result("motion.period=pi/sqrt(H)",
                                      std::abs(measured - T) / T, tol.constants);
    if (std::isnan(measured)) {
      r.residual = measured;
      r.pass = false;
      r.note = "fewer than two zero crossings; run longer";
    } else {
      r.note = "measured=" + sga::report_io::format_fixed17(measured);
    }
    checks.push_back(std::move(r));
  }
  if (a.report.empty())
    std::cerr << sga::report_io::checks_to_text(checks);
  else
    emit(sga::report_io::checks_to_json(checks) + "\n", a.report);
  return status(checks);
}

struct OracleArgs {
  std::uint64_t seed = 1;
  int count = 20;
  double step = 1e-5;
  double tol = 1e-6;
  std::string format = "text";
  std::string out;
};

int cmd_bracket_oracle(const OracleArgs &a) {
  if (a.count < 1)
    throw UsageError("--count must be positive");
  const auto checks = sga::classical::check_bracket_oracle(a.seed, a.count, a.step, a.tol);
  emit(a.format == "json" ? sga::report_io::checks_to_json(checks) + "\n"
                          : sga::report_io::checks_to_text(checks),
       a.out);
  return status(checks);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"so(4,2) spectrum generating algebra of the free particle on S^3"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto *verify = app.add_subcommand("verify", "Run the quantum verification suite");
  verify->add_option("--level,-N", va.level, "Highest harmonic level N")->capture_default_str();
  verify->add_option("--c", va.c, "Shift constant c in T~_ab = T_ab + c g_ab")
      ->capture_default_str();
  verify->add_option("--tol", va.tol,
                     "Tolerance override KEY=VALUE; keys default, chain, f, spectrum");
  verify->add_option("--out,-o", va.out, "Report file (stdout if omitted)");
  verify->add_option("--format", va.format)
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  verify->add_flag("--timings", va.timings, "Record per-group wall-clock seconds");

  SpectrumArgs sa;
  auto *spectrum = app.add_subcommand("spectrum", "Spectrum of H on levels 0..N");
  spectrum->add_option("--level,-N", sa.level)->capture_default_str();
  spectrum->add_option("--out,-o", sa.out);
  spectrum->add_option("--format", sa.format)
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  EigenstateArgs ea;
  auto *eigen = app.add_subcommand("eigenstates", "Eigenstate polynomial from raising operators");
  eigen->add_option("--level,-N", ea.level, "Truncation level (needs N > number of indices)")
      ->capture_default_str();
  eigen->add_option("--indices", ea.indices, "Raising indices in 1..4, e.g. 1,2")
      ->delimiter(',');

  SimulateArgs ma;
  auto *sim = app.add_subcommand("simulate", "Classical motion on S^3");
  sim->add_option("--x0", ma.x0, "Initial position, 4 comma-separated reals")->delimiter(',');
  sim->add_option("--p0", ma.p0, "Initial momentum, 4 comma-separated reals")->delimiter(',');
  auto *t_end = sim->add_option("--t-end", ma.t_end, "End time");
  sim->add_option("--periods", ma.periods, "End time in periods pi/sqrt(H)")
      ->capture_default_str()
      ->excludes(t_end);
  auto *dt = sim->add_option("--dt", ma.dt, "Time step");
  sim->add_option("--steps-per-period", ma.steps_per_period)
      ->capture_default_str()
      ->excludes(dt);
  sim->add_option("--method", ma.method)
      ->check(CLI::IsMember({"rk4", "analytic"}))
      ->capture_default_str();
  sim->add_option("--out,-o", ma.out, "Trajectory file (stdout if omitted)");
  sim->add_option("--format", ma.format)
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sim->add_option("--report", ma.report, "Constants-of-motion report as JSON");

  OracleArgs oa;
  auto *oracle = app.add_subcommand("bracket-oracle", "Dirac brackets vs finite differences");
  oracle->add_option("--seed", oa.seed)->capture_default_str();
  oracle->add_option("--count", oa.count, "Number of random states")->capture_default_str();
  oracle->add_option("--step", oa.step)->capture_default_str();
  oracle->add_option("--tol", oa.tol)->capture_default_str();
  oracle->add_option("--format", oa.format)
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  oracle->add_option("--out,-o", oa.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (verify->parsed())
      return cmd_verify(va);
    if (spectrum->parsed())
      return cmd_spectrum(sa);
    if (eigen->parsed())
      return cmd_eigenstates(ea);
    if (sim->parsed())
      return cmd_simulate(ma);
    if (oracle->parsed())
      return cmd_bracket_oracle(oa);
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
