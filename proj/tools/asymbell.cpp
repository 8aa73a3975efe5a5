// asymbell: detection-efficiency thresholds for asymmetric Bell tests.
//
// Subcommands: value, bound, threshold, sweep, simulate. Measurement angles
// are read and printed as multiples of pi; state parameters (theta, noise
// knobs) are plain numbers, theta in radians. Every run echoes its resolved
// configuration, seed included, as `# key = value` lines so outputs are
// reproducible from their own header.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "asymbell/bell.hpp"
#include "asymbell/detection.hpp"
#include "asymbell/optimize.hpp"
#include "asymbell/quantum.hpp"
#include "asymbell/report.hpp"
#include "asymbell/simulate.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNoViolation = 3;
constexpr int kExitNumerical = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateSpec {
  asymbell::StateFamily family;
  double theta = 0.0;

  asymbell::DensityMatrix make() const { return family.state_at(theta); }
};

StateSpec parse_state(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw UsageError("state must look like pure:<theta>, background:<theta>,<p> or "
                     "dark:<theta>,<eps_a>,<eps_b>");
  const std::string kind = text.substr(0, colon);
  std::vector<double> args;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      args.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad number in state spec: '" + item + "'");
    }
  }
  StateSpec spec;
  if (kind == "pure" && args.size() == 1) {
    spec.family = asymbell::StateFamily::pure();
  } else if (kind == "background" && args.size() == 2) {
    spec.family = asymbell::StateFamily::background(args[1]);
  } else if (kind == "dark" && args.size() == 3) {
    spec.family = asymbell::StateFamily::dark(args[1], args[2]);
  } else {
    throw UsageError("unrecognized state spec '" + text + "'");
  }
  spec.theta = args[0];
  asymbell::NoiseParams params = spec.family.params_at(spec.theta);
  params.validate();  // domain errors before any computation
  return spec;
}

asymbell::BellPolynomial parse_inequality(const std::string& text) {
  if (text == "chsh" || text == "CHSH") return asymbell::chsh();
  if (text == "i3322" || text == "I3322") return asymbell::i3322();
  try {
    return asymbell::load_polynomial(text);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

std::vector<double> parse_angles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item) * kPi);
    } catch (const std::exception&) {
      throw UsageError("bad angle '" + item + "' (expected a multiple of pi)");
    }
  }
  if (out.empty()) throw UsageError("empty angle list");
  return out;
}

asymbell::NoDetectionStrategy parse_strategy(const std::string& text, int na, int nb) {
  if (text == "zeros") return asymbell::NoDetectionStrategy::all_zeros(na, nb);
  const auto semi = text.find(';');
  if (semi == std::string::npos)
    throw UsageError("strategy must be 'zeros' or '<alice bits>;<bob bits>'");
  const std::string a = text.substr(0, semi), b = text.substr(semi + 1);
  if (static_cast<int>(a.size()) != na || static_cast<int>(b.size()) != nb)
    throw UsageError("strategy bit counts must match the inequality's settings");
  asymbell::NoDetectionStrategy s;
  auto bits = [](const std::string& str, std::vector<int>& out) {
    for (char c : str) {
      if (c != '0' && c != '1') throw UsageError("strategy bits must be 0 or 1");
      out.push_back(c - '0');
    }
  };
  bits(a, s.alice_outputs);
  bits(b, s.bob_outputs);
  return s;
}

// lin:lo:hi:n, log:lo:hi:n, lo:hi:n (linear), or v1,v2,...
std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') == std::string::npos) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw UsageError("bad grid value '" + item + "'");
      }
    }
    if (out.empty()) throw UsageError("empty grid");
    return out;
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  bool log_spaced = false;
  if (parts.size() == 4) {
    if (parts[0] == "log")
      log_spaced = true;
    else if (parts[0] != "lin")
      throw UsageError("grid prefix must be lin or log");
    parts.erase(parts.begin());
  }
  if (parts.size() != 3) throw UsageError("range grid must be [lin|log:]lo:hi:count");
  double lo, hi;
  long n;
  try {
    lo = std::stod(parts[0]);
    hi = std::stod(parts[1]);
    n = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("bad range grid '" + text + "'");
  }
  if (n < 1) throw UsageError("grid count must be >= 1");
  if (log_spaced && !(lo > 0.0 && hi > 0.0))
    throw UsageError("log grid endpoints must be positive");
  std::vector<double> out;
  out.reserve(n);
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (long k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n - 1);
    out.push_back(log_spaced ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo));
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void echo(std::ostream& os, const asymbell::ConfigEcho& config) {
  for (const auto& [k, v] : config) os << "# " << k << " = " << v << "\n";
}

void print_settings(std::ostream& os, const asymbell::MeasurementSettings& s, bool full_bloch) {
  for (std::size_t i = 0; i < s.alice.size(); ++i) {
    os << "alpha_" << i + 1 << "/pi = " << asymbell::pi_multiple(s.alice[i].angle);
    if (full_bloch) os << "  (azimuth/pi = " << asymbell::pi_multiple(s.alice[i].azimuth) << ")";
    os << "\n";
  }
  for (std::size_t j = 0; j < s.bob.size(); ++j) {
    os << "beta_" << j + 1 << "/pi = " << asymbell::pi_multiple(s.bob[j].angle);
    if (full_bloch) os << "  (azimuth/pi = " << asymbell::pi_multiple(s.bob[j].azimuth) << ")";
    os << "\n";
  }
}

std::string strategy_bits(const asymbell::NoDetectionStrategy& st) {
  std::string out;
  for (int v : st.alice_outputs) out += static_cast<char>('0' + v);
  out += ';';
  for (int v : st.bob_outputs) out += static_cast<char>('0' + v);
  return out;
}

// ---------------------------------------------------------------------------

struct ValueArgs {
  std::string ineq, state, alice, bob;
  std::string strategy = "zeros";
  double eta_a = 1.0, eta_b = 1.0;
};

int run_value(const ValueArgs& a) {
  const asymbell::BellPolynomial poly = parse_inequality(a.ineq);
  const StateSpec state = parse_state(a.state);
  const auto alice = parse_angles(a.alice);
  const auto bob = parse_angles(a.bob);
  if (static_cast<int>(alice.size()) != poly.settings_a() ||
      static_cast<int>(bob.size()) != poly.settings_b())
    throw UsageError("angle counts must match the inequality's settings");
  if (!(a.eta_a >= 0 && a.eta_a <= 1 && a.eta_b >= 0 && a.eta_b <= 1))
    throw UsageError("efficiencies must lie in [0, 1]");
  const auto strat = parse_strategy(a.strategy, poly.settings_a(), poly.settings_b());

  echo(std::cout, {{"command", "value"},
                   {"ineq", poly.name},
                   {"state", a.state},
                   {"alice", a.alice},
                   {"bob", a.bob},
                   {"strategy", strategy_bits(strat)},
                   {"eta_a", fmt(a.eta_a)},
                   {"eta_b", fmt(a.eta_b)}});

  const auto settings = asymbell::MeasurementSettings::planar(alice, bob);
  const auto b = asymbell::score_breakdown(state.make(), settings, poly, strat);
  const double eff = asymbell::effective_value(b, {a.eta_a, a.eta_b});
  std::cout << "Q = " << fmt(b.q) << "\n"
            << "M_A = " << fmt(b.m_a) << "\n"
            << "M_B = " << fmt(b.m_b) << "\n"
            << "X = " << fmt(b.x) << "\n"
            << "effective_value = " << fmt(eff) << "\n";
  return kExitOk;
}

struct BoundArgs {
  std::string ineq;
};

int run_bound(const BoundArgs& a) {
  const asymbell::BellPolynomial poly = parse_inequality(a.ineq);
  echo(std::cout, {{"command", "bound"}, {"ineq", poly.name}});
  std::cout << "name = " << poly.name << "\n"
            << "settings = " << poly.settings_a() << " x " << poly.settings_b() << "\n"
            << "local_bound = " << fmt(poly.local_bound) << "\n"
            << "bruteforce_bound = " << fmt(asymbell::lhv_bound_bruteforce(poly)) << "\n";
  return kExitOk;
}

struct ThresholdArgs {
  std::string ineq, state;
  bool symmetric = false;
  bool full_bloch = false;
  double eta_a = 1.0;
  int restarts = 0;
  std::uint64_t seed = 12345;
  int threads = 0;
};

int run_threshold(const ThresholdArgs& a) {
  const asymbell::BellPolynomial poly = parse_inequality(a.ineq);
  const StateSpec state = parse_state(a.state);
  if (!(a.eta_a > 0 && a.eta_a <= 1)) throw UsageError("eta-a must lie in (0, 1]");

  asymbell::OptimizerOptions opt;
  opt.restarts = a.restarts;
  opt.seed = a.seed;
  opt.threads = a.threads;
  opt.full_bloch = a.full_bloch;

  echo(std::cout, {{"command", "threshold"},
                   {"ineq", poly.name},
                   {"state", a.state},
                   {"mode", a.symmetric ? "symmetric" : "asymmetric"},
                   {"eta_a", fmt(a.eta_a)},
                   {"restarts", std::to_string(opt.restarts_for(poly.settings_a(), poly.settings_b()))},
                   {"full_bloch", a.full_bloch ? "true" : "false"},
                   {"seed", std::to_string(a.seed)}});

  const asymbell::DensityMatrix rho = state.make();
  const asymbell::OptimizationResult r =
      a.symmetric ? asymbell::minimize_threshold_symmetric(rho, poly, opt)
                  : asymbell::minimize_threshold_asym(rho, poly, opt, a.eta_a);

  std::cout << "threshold = " << fmt(r.objective) << "\n";
  print_settings(std::cout, r.settings, a.full_bloch);
  std::cout << "strategy = " << strategy_bits(r.strategy) << "\n"
            << "Q = " << fmt(r.breakdown.q) << "\n"
            << "M_A = " << fmt(r.breakdown.m_a) << "\n"
            << "M_B = " << fmt(r.breakdown.m_b) << "\n"
            << "X = " << fmt(r.breakdown.x) << "\n"
            << "converged = " << (r.converged ? "true" : "false") << "\n";
  if (r.breakdown.x < -1e-12)
    std::cerr << "note: best strategy has X = " << fmt(r.breakdown.x)
              << " (below the local bound)\n";
  return kExitOk;
}

struct SweepArgs {
  std::string ineq;
  std::string family = "pure";
  std::string mode = "asym";
  std::string theta_grid, noise_grid;
  std::string output = "-";
  double p = 0.0, eps_a = 0.0, eps_b = 0.0;
  double eta_a = 1.0;
  double theta_floor = 0.005;
  int restarts = 0;
  std::uint64_t seed = 12345;
  int threads = 0;
};

int run_sweep(const SweepArgs& a) {
  const asymbell::BellPolynomial poly = parse_inequality(a.ineq);
  if (a.mode != "asym" && a.mode != "sym") throw UsageError("mode must be asym or sym");
  const asymbell::ThresholdMode mode = a.mode == "sym" ? asymbell::ThresholdMode::Symmetric
                                                       : asymbell::ThresholdMode::Asymmetric;
  if (a.theta_grid.empty() == a.noise_grid.empty())
    throw UsageError("exactly one of --theta-grid and --noise-grid is required");

  asymbell::StateFamily family;
  if (a.family == "pure")
    family = asymbell::StateFamily::pure();
  else if (a.family == "background")
    family = asymbell::StateFamily::background(a.p);
  else if (a.family == "dark")
    family = asymbell::StateFamily::dark(a.eps_a, a.eps_b);
  else
    throw UsageError("family must be pure, background or dark");

  asymbell::OptimizerOptions opt;
  opt.restarts = a.restarts;
  opt.seed = a.seed;
  opt.threads = a.threads;

  asymbell::ConfigEcho config{{"command", "sweep"},
                              {"ineq", poly.name},
                              {"family", a.family},
                              {"mode", a.mode},
                              {"eta_a", fmt(a.eta_a)},
                              {"seed", std::to_string(a.seed)},
                              {"restarts", std::to_string(opt.restarts_for(
                                               poly.settings_a(), poly.settings_b()))}};

  std::vector<asymbell::SweepPoint> points;
  bool theta_mode = !a.theta_grid.empty();
  if (theta_mode) {
    const auto grid = parse_grid(a.theta_grid);
    config.emplace_back("theta_grid", a.theta_grid);
    if (a.family == "background") config.emplace_back("p", fmt(a.p));
    if (a.family == "dark") {
      config.emplace_back("eps_a", fmt(a.eps_a));
      config.emplace_back("eps_b", fmt(a.eps_b));
    }
    points = asymbell::sweep_theta(poly, family, grid, mode, opt, a.eta_a);
    for (const auto& pt : points)
      if (!pt.feasible)
        std::cerr << "warning: no violation at theta = " << fmt(pt.theta) << "\n";
  } else {
    if (a.family == "pure") throw UsageError("--noise-grid requires family background or dark");
    const auto grid = parse_grid(a.noise_grid);
    config.emplace_back("noise_grid", a.noise_grid);
    config.emplace_back("theta_floor", fmt(a.theta_floor));
    points = asymbell::noise_tradeoff(poly,
                                      a.family == "dark" ? asymbell::StateFamily::Kind::DarkCount
                                                         : asymbell::StateFamily::Kind::Background,
                                      a.eta_a, grid, mode, opt, a.theta_floor);
  }

  const std::string csv = asymbell::sweep_csv_string(points, config, theta_mode);
  if (a.output == "-") {
    std::cout << csv;
  } else {
    std::ofstream out(a.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + a.output);
    out << csv;
    std::cout << "wrote " << points.size() << " rows to " << a.output << "\n";
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string ineq, state, alice, bob;
  std::string strategy = "zeros";
  std::string dump_records;
  double eta_a = 1.0, eta_b = 1.0;
  long long trials = 100000;
  std::uint64_t seed = 12345;
  bool bootstrap = false;
  int threads = 0;
};

int run_simulate(const SimulateArgs& a) {
  const asymbell::BellPolynomial poly = parse_inequality(a.ineq);
  const StateSpec state = parse_state(a.state);
  const auto alice = parse_angles(a.alice);
  const auto bob = parse_angles(a.bob);
  if (static_cast<int>(alice.size()) != poly.settings_a() ||
      static_cast<int>(bob.size()) != poly.settings_b())
    throw UsageError("angle counts must match the inequality's settings");
  if (a.trials < 1) throw UsageError("trials must be >= 1");
  if (!(a.eta_a >= 0 && a.eta_a <= 1 && a.eta_b >= 0 && a.eta_b <= 1))
    throw UsageError("efficiencies must lie in [0, 1]");
  const auto strat = parse_strategy(a.strategy, poly.settings_a(), poly.settings_b());

  echo(std::cout, {{"command", "simulate"},
                   {"ineq", poly.name},
                   {"state", a.state},
                   {"alice", a.alice},
                   {"bob", a.bob},
                   {"strategy", strategy_bits(strat)},
                   {"eta_a", fmt(a.eta_a)},
                   {"eta_b", fmt(a.eta_b)},
                   {"trials", std::to_string(a.trials)},
                   {"seed", std::to_string(a.seed)},
                   {"bootstrap", a.bootstrap ? "true" : "false"}});

  const auto settings = asymbell::MeasurementSettings::planar(alice, bob);
  const asymbell::DensityMatrix rho = state.make();
  const auto breakdown = asymbell::score_breakdown(rho, settings, poly, strat);
  const double analytic = asymbell::effective_value(breakdown, {a.eta_a, a.eta_b});

  asymbell::SimulationOptions so;
  so.trials = a.trials;
  so.seed = a.seed;
  so.bootstrap = a.bootstrap;
  so.threads = a.threads;

  std::ofstream dump;
  if (!a.dump_records.empty()) {
    dump.open(a.dump_records, std::ios::binary);
    if (!dump) throw std::runtime_error("cannot open record file: " + a.dump_records);
    so.record_sink = [&dump](const asymbell::TrialRecord& r) {
      dump << r.setting_a + 1 << ',' << r.setting_b + 1 << ',' << (r.fired_a ? 1 : 0) << ','
           << (r.fired_b ? 1 : 0) << ',' << r.outcome_a << ',' << r.outcome_b << '\n';
    };
  }

  const auto rep = asymbell::simulate(rho, settings, poly, strat, {a.eta_a, a.eta_b}, so);
  const double dev = std::abs(rep.bell_value - analytic) / rep.std_error;
  std::cout << "estimate = " << fmt(rep.bell_value) << " +- " << fmt(rep.std_error) << "\n";
  if (rep.bootstrap_std_error)
    std::cout << "bootstrap_std_error = " << fmt(*rep.bootstrap_std_error) << "\n";
  std::cout << "analytic = " << fmt(analytic) << "\n"
            << "deviation_sigma = " << fmt(dev) << "\n"
            << "consistent_4sigma = " << (dev <= 4.0 ? "PASS" : "FAIL") << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detection-efficiency thresholds for asymmetric Bell tests"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "asymbell 0.1.0");

  ValueArgs va;
  CLI::App* value = app.add_subcommand("value", "Evaluate Q, M_A, M_B, X and the efficiency-weighted value");
  value->add_option("--ineq", va.ineq, "chsh, i3322 or a polynomial file")->required();
  value->add_option("--state", va.state, "pure:<theta> | background:<theta>,<p> | dark:<theta>,<ea>,<eb>")->required();
  value->add_option("--alice", va.alice, "Alice angles, multiples of pi, comma separated")->required();
  value->add_option("--bob", va.bob, "Bob angles, multiples of pi, comma separated")->required();
  value->add_option("--strategy", va.strategy, "zeros or '<alice bits>;<bob bits>'");
  value->add_option("--eta-a", va.eta_a, "Alice detection efficiency");
  value->add_option("--eta-b", va.eta_b, "Bob detection efficiency");

  BoundArgs ba;
  CLI::App* bound = app.add_subcommand("bound", "Print the brute-force local bound of an inequality");
  bound->add_option("--ineq", ba.ineq, "chsh, i3322 or a polynomial file")->required();

  ThresholdArgs ta;
  CLI::App* threshold = app.add_subcommand("threshold", "Optimize the detection-efficiency threshold");
  threshold->add_option("--ineq", ta.ineq)->required();
  threshold->add_option("--state", ta.state)->required();
  threshold->add_flag("--symmetric", ta.symmetric, "eta_a = eta_b instead of eta_a fixed");
  threshold->add_option("--eta-a", ta.eta_a, "Alice efficiency (asymmetric mode)");
  threshold->add_option("--restarts", ta.restarts, "random restarts (0 = default)");
  threshold->add_option("--seed", ta.seed, "optimizer seed");
  threshold->add_option("--threads", ta.threads, "worker threads (0 = ASYMBELL_THREADS/auto)");
  threshold->add_flag("--full-bloch", ta.full_bloch, "optimize azimuths too");

  SweepArgs sa;
  CLI::App* sweep = app.add_subcommand("sweep", "Threshold curves over theta or noise, CSV output");
  sweep->add_option("--ineq", sa.ineq)->required();
  sweep->add_option("--family", sa.family, "pure | background | dark");
  sweep->add_option("--mode", sa.mode, "asym | sym");
  sweep->add_option("--theta-grid", sa.theta_grid, "[lin|log:]lo:hi:n or comma list (radians)");
  sweep->add_option("--noise-grid", sa.noise_grid, "noise values; theta is optimized per point");
  sweep->add_option("--p", sa.p, "background fraction for --family background");
  sweep->add_option("--eps-a", sa.eps_a, "dark-count rate, Alice");
  sweep->add_option("--eps-b", sa.eps_b, "dark-count rate, Bob");
  sweep->add_option("--eta-a", sa.eta_a, "Alice efficiency (asym mode)");
  sweep->add_option("--theta-floor", sa.theta_floor, "smallest theta tried in noise sweeps");
  sweep->add_option("--output", sa.output, "CSV path, '-' for stdout");
  sweep->add_option("--restarts", sa.restarts);
  sweep->add_option("--seed", sa.seed);
  sweep->add_option("--threads", sa.threads);

  SimulateArgs sma;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run of a lossy Bell experiment");
  simulate->add_option("--ineq", sma.ineq)->required();
  simulate->add_option("--state", sma.state)->required();
  simulate->add_option("--alice", sma.alice)->required();
  simulate->add_option("--bob", sma.bob)->required();
  simulate->add_option("--strategy", sma.strategy);
  simulate->add_option("--eta-a", sma.eta_a);
  simulate->add_option("--eta-b", sma.eta_b);
  simulate->add_option("--trials", sma.trials);
  simulate->add_option("--seed", sma.seed);
  simulate->add_flag("--bootstrap", sma.bootstrap, "bootstrap std error as cross-check");
  simulate->add_option("--dump-records", sma.dump_records, "write per-trial records (i,j,fired_a,fired_b,a,b)");
  simulate->add_option("--threads", sma.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (value->parsed()) return run_value(va);
    if (bound->parsed()) return run_bound(ba);
    if (threshold->parsed()) return run_threshold(ta);
    if (sweep->parsed()) return run_sweep(sa);
    if (simulate->parsed()) return run_simulate(sma);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const asymbell::NoViolationError& e) {
    std::cerr << "no violation: " << e.what() << "\n";
    return kExitNoViolation;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
