#include "asymbell/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

#include "asymbell/report.hpp"
#include "asymbell/rng.hpp"

namespace asymbell {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kQuarterPi = 0.78539816339744830962;
// Deterministic values of a bound-zero polynomial cannot exceed the bound;
// anything inside this band around zero is roundoff and is snapped to zero
// so that near-degenerate strategies do not fabricate tiny thresholds.
constexpr double kSnapTol = 1e-12;

int resolve_threads(int requested) {
  if (requested > 0) return std::min(requested, 64);
  if (const char* env = std::getenv("ASYMBELL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return std::min(v, 64);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Nelder-Mead simplex (minimization)

struct SimplexOutcome {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

SimplexOutcome nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                           const std::vector<double>& start, double step, double tol,
                           int max_iter) {
  const int n = static_cast<int>(start.size());
  std::vector<std::vector<double>> xs(n + 1, start);
  std::vector<double> fs(n + 1);
  for (int i = 0; i < n; ++i) xs[i + 1][i] += step;
  for (int i = 0; i <= n; ++i) fs[i] = f(xs[i]);

  std::vector<int> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  SimplexOutcome out;

  for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];

    double diameter = 0.0;
    for (int i = 0; i <= n; ++i)
      for (int d = 0; d < n; ++d)
        diameter = std::max(diameter, std::abs(xs[i][d] - xs[best][d]));
    if (diameter < tol) {
      out.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int d = 0; d < n; ++d) centroid[d] += xs[i][d];
    }
    for (int d = 0; d < n; ++d) centroid[d] /= n;

    for (int d = 0; d < n; ++d) xr[d] = centroid[d] + (centroid[d] - xs[worst][d]);
    const double fr = f(xr);

    if (fr < fs[best]) {
      for (int d = 0; d < n; ++d) xe[d] = centroid[d] + 2.0 * (xr[d] - centroid[d]);
      const double fe = f(xe);
      if (fe < fr) {
        xs[worst] = xe;
        fs[worst] = fe;
      } else {
        xs[worst] = xr;
        fs[worst] = fr;
      }
    } else if (fr < fs[second]) {
      xs[worst] = xr;
      fs[worst] = fr;
    } else {
      const bool outside = fr < fs[worst];
      const std::vector<double>& base = outside ? xr : xs[worst];
      for (int d = 0; d < n; ++d) xc[d] = centroid[d] + 0.5 * (base[d] - centroid[d]);
      const double fc = f(xc);
      if (fc < (outside ? fr : fs[worst])) {
        xs[worst] = xc;
        fs[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (int d = 0; d < n; ++d) xs[i][d] = xs[best][d] + 0.5 * (xs[i][d] - xs[best][d]);
          fs[i] = f(xs[i]);
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fs[i] < fs[best]) best = i;
  out.x = xs[best];
  out.value = fs[best];
  return out;
}

// ---------------------------------------------------------------------------
// Strategy enumeration

double snap(double v) { return std::abs(v) <= kSnapTol ? 0.0 : v; }

// Pieces of the breakdown that depend only on the polynomial: the
// deterministic double-miss value per strategy pair and the marginal-
// coefficient sums per mask. Bit i set in a mask means "output 1", so the
// setting contributes nothing.
struct StrategyTables {
  int na, nb;
  std::vector<double> alice_base;  // sum of d_i over outputs 0, per Alice mask
  std::vector<double> bob_base;    // sum of e_j over outputs 0, per Bob mask
  std::vector<double> x_table;     // full deterministic value, [ta << nb | sb]

  explicit StrategyTables(const BellPolynomial& p)
      : na(p.settings_a()), nb(p.settings_b()) {
    if (na < 1 || nb < 1 || na > 8 || nb > 8)
      throw std::invalid_argument("strategy enumeration supports 1..8 settings per side");
    const unsigned ca = 1u << na, cb = 1u << nb;
    alice_base.resize(ca);
    bob_base.resize(cb);
    x_table.resize(ca * cb);
    for (unsigned ta = 0; ta < ca; ++ta) {
      double d = 0.0;
      for (int i = 0; i < na; ++i)
        if (!(ta & (1u << i))) d += p.alice_coeffs(i);
      alice_base[ta] = d;
    }
    for (unsigned sb = 0; sb < cb; ++sb) {
      double e = 0.0;
      for (int j = 0; j < nb; ++j)
        if (!(sb & (1u << j))) e += p.bob_coeffs(j);
      bob_base[sb] = e;
    }
    for (unsigned ta = 0; ta < ca; ++ta)
      for (unsigned sb = 0; sb < cb; ++sb) {
        double joint = 0.0;
        for (int i = 0; i < na; ++i) {
          if (ta & (1u << i)) continue;
          for (int j = 0; j < nb; ++j)
            if (!(sb & (1u << j))) joint += p.joint_coeffs(i, j);
        }
        x_table[(ta << nb) | sb] = snap(alice_base[ta] + bob_base[sb] + joint);
      }
  }

  NoDetectionStrategy decode(unsigned ta, unsigned sb) const {
    NoDetectionStrategy s;
    s.alice_outputs.resize(na);
    s.bob_outputs.resize(nb);
    for (int i = 0; i < na; ++i) s.alice_outputs[i] = (ta >> i) & 1u;
    for (int j = 0; j < nb; ++j) s.bob_outputs[j] = (sb >> j) & 1u;
    return s;
  }
};

enum class ObjectiveKind { MaxViolation, AsymThreshold, SymThreshold };

struct PointEval {
  double objective = std::numeric_limits<double>::infinity();
  bool feasible = false;
  ScoreBreakdown breakdown;
  unsigned alice_mask = 0;
  unsigned bob_mask = 0;
};

PointEval evaluate_point(ObjectiveKind kind, const BellPolynomial& poly,
                         const StrategyTables& st, const ProbabilityTable& table,
                         double eta_a) {
  const int na = st.na, nb = st.nb;
  const unsigned ca = 1u << na, cb = 1u << nb;
  const double q = evaluate(poly, table);

  // single-miss values per mask of the still-detected party's opponent
  double m_a[256], m_b[256];
  {
    double g[8], h[8];
    for (int j = 0; j < nb; ++j) {
      g[j] = poly.bob_coeffs(j);
      for (int i = 0; i < na; ++i) g[j] += poly.joint_coeffs(i, j) * table.alice_marginals(i);
    }
    for (int i = 0; i < na; ++i) {
      h[i] = poly.alice_coeffs(i);
      for (int j = 0; j < nb; ++j) h[i] += poly.joint_coeffs(i, j) * table.bob_marginals(j);
    }
    const double base_a = poly.alice_coeffs.dot(table.alice_marginals);
    const double base_b = poly.bob_coeffs.dot(table.bob_marginals);
    for (unsigned sb = 0; sb < cb; ++sb) {
      double v = base_a;
      for (int j = 0; j < nb; ++j)
        if (!(sb & (1u << j))) v += g[j];
      m_a[sb] = snap(v);
    }
    for (unsigned ta = 0; ta < ca; ++ta) {
      double v = base_b;
      for (int i = 0; i < na; ++i)
        if (!(ta & (1u << i))) v += h[i];
      m_b[ta] = snap(v);
    }
  }

  PointEval ev;
  if (kind == ObjectiveKind::MaxViolation) {
    ev.objective = -q;
    ev.feasible = true;
    ev.breakdown = {q, m_a[0], m_b[0], st.x_table[0]};
    return ev;
  }

  if (kind == ObjectiveKind::AsymThreshold && eta_a == 1.0) {
    if (q <= kSnapTol) {
      ev.objective = 1.0 - q;  // 1 + |q|, continuous with threshold -> 1 at q -> 0+
      ev.breakdown = {q, m_a[0], m_b[0], st.x_table[0]};
      return ev;
    }
    double best = std::numeric_limits<double>::infinity();
    unsigned best_sb = 0;
    for (unsigned sb = 0; sb < cb; ++sb) {
      if (!(m_a[sb] < 0.0)) continue;
      const double th = 1.0 / (1.0 - q / m_a[sb]);
      if (th < best) {
        best = th;
        best_sb = sb;
      }
    }
    if (!std::isfinite(best)) {
      ev.objective = 1.0;
      ev.breakdown = {q, m_a[0], m_b[0], st.x_table[0]};
      return ev;
    }
    // Alice's outputs do not enter the eta_a = 1 threshold; pull the
    // double-miss value toward the bound.
    unsigned best_ta = 0;
    double best_x = -std::numeric_limits<double>::infinity();
    for (unsigned ta = 0; ta < ca; ++ta) {
      const double xv = st.x_table[(ta << nb) | best_sb];
      if (xv > best_x) {
        best_x = xv;
        best_ta = ta;
      }
    }
    ev.objective = best;
    ev.feasible = true;
    ev.breakdown = {q, m_a[best_sb], m_b[best_ta], best_x};
    ev.alice_mask = best_ta;
    ev.bob_mask = best_sb;
    return ev;
  }

  // general asymmetric (eta_a < 1) and symmetric modes: full pair scan
  const bool sym = kind == ObjectiveKind::SymThreshold;
  if (q <= kSnapTol) {
    ev.objective = 1.0 - q;
    ev.breakdown = {q, m_a[0], m_b[0], st.x_table[0]};
    return ev;
  }
  double best = std::numeric_limits<double>::infinity();
  unsigned best_ta = 0, best_sb = 0;
  for (unsigned ta = 0; ta < ca; ++ta)
    for (unsigned sb = 0; sb < cb; ++sb) {
      const ScoreBreakdown b{q, m_a[sb], m_b[ta], st.x_table[(ta << nb) | sb]};
      const auto th = sym ? try_threshold_symmetric(b) : try_threshold_eta_b(b, eta_a);
      if (th && *th < best) {
        best = *th;
        best_ta = ta;
        best_sb = sb;
      }
    }
  if (!std::isfinite(best)) {
    ev.objective = 1.0;
    ev.breakdown = {q, m_a[0], m_b[0], st.x_table[0]};
    return ev;
  }
  ev.objective = best;
  ev.feasible = true;
  ev.breakdown = {q, m_a[best_sb], m_b[best_ta], st.x_table[(best_ta << nb) | best_sb]};
  ev.alice_mask = best_ta;
  ev.bob_mask = best_sb;
  return ev;
}

// ---------------------------------------------------------------------------
// Angle packing

int angle_dims(int na, int nb, bool full_bloch) { return (full_bloch ? 2 : 1) * (na + nb); }

MeasurementSettings unpack_settings(const std::vector<double>& x, int na, int nb,
                                    bool full_bloch, int offset = 0) {
  MeasurementSettings s;
  s.alice.resize(na);
  s.bob.resize(nb);
  const double* p = x.data() + offset;
  if (full_bloch) {
    for (int i = 0; i < na; ++i) s.alice[i] = {p[2 * i], p[2 * i + 1]};
    p += 2 * na;
    for (int j = 0; j < nb; ++j) s.bob[j] = {p[2 * j], p[2 * j + 1]};
  } else {
    for (int i = 0; i < na; ++i) s.alice[i] = {p[i], 0.0};
    p += na;
    for (int j = 0; j < nb; ++j) s.bob[j] = {p[j], 0.0};
  }
  return s;
}

std::vector<double> pack_settings(const MeasurementSettings& s, bool full_bloch,
                                  int extra_front = 0) {
  std::vector<double> x(extra_front, 0.0);
  for (const Setting& a : s.alice) {
    x.push_back(a.angle);
    if (full_bloch) x.push_back(a.azimuth);
  }
  for (const Setting& b : s.bob) {
    x.push_back(b.angle);
    if (full_bloch) x.push_back(b.azimuth);
  }
  return x;
}

MeasurementSettings normalized(const MeasurementSettings& s) {
  MeasurementSettings out = s;
  for (Setting& a : out.alice) {
    a.angle = normalize_angle(a.angle);
    a.azimuth = normalize_angle(a.azimuth);
  }
  for (Setting& b : out.bob) {
    b.angle = normalize_angle(b.angle);
    b.azimuth = normalize_angle(b.azimuth);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Multistart driver

struct MultistartOutcome {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  int runs = 0;
};

// Random restarts mix full-circle starts with occasional narrow ones so
// that near-degenerate optima (weakly entangled states want tiny angles)
// are reached without state-specific knowledge. Warm starts, when present,
// come first and use a smaller initial simplex.
MultistartOutcome run_multistart(int dims,
                                 const std::function<double(const std::vector<double>&)>& f,
                                 const std::function<double(Rng&, int dim, int restart)>& sample,
                                 const std::vector<std::vector<double>>& warm_starts,
                                 int restarts, const OptimizerOptions& opt) {
  const int warm = static_cast<int>(warm_starts.size());
  const int runs = warm + restarts;
  std::vector<SimplexOutcome> outcomes(runs);

  parallel_for(runs, resolve_threads(opt.threads), [&](int run) {
    std::vector<double> start(dims);
    double step;
    if (run < warm) {
      start = warm_starts[run];
      step = 0.05;
    } else {
      const int k = run - warm;
      Rng rng(substream_seed(opt.seed, static_cast<std::uint64_t>(k)));
      for (int d = 0; d < dims; ++d) start[d] = sample(rng, d, k);
      step = 0.3;
    }
    outcomes[run] = nelder_mead(f, start, step, opt.simplex_tolerance, opt.max_iterations);
  });

  MultistartOutcome best;
  best.runs = runs;
  for (int i = 0; i < runs; ++i) {
    if (outcomes[i].value < best.value) {
      best.value = outcomes[i].value;
      best.x = outcomes[i].x;
      best.converged = outcomes[i].converged;
    }
  }
  return best;
}

// Uniform angle start, with every fourth restart narrowed around zero.
double sample_angle(Rng& rng, int restart) {
  const double scale = (restart % 4 == 3) ? 0.1 : kPi;
  return rng.uniform(-scale, scale);
}

struct FixedStateObjective {
  ObjectiveKind kind;
  const BellPolynomial* poly;
  const StrategyTables* tables;
  CorrelationRep rep;
  int na, nb;
  bool full_bloch;
  double eta_a;

  double operator()(const std::vector<double>& x) const {
    const MeasurementSettings s = unpack_settings(x, na, nb, full_bloch);
    return evaluate_point(kind, *poly, *tables, click_probabilities(rep, s), eta_a).objective;
  }
};

OptimizationResult finish_fixed_state(ObjectiveKind kind, const DensityMatrix& rho,
                                      const BellPolynomial& poly, const StrategyTables& tables,
                                      const MultistartOutcome& ms, int na, int nb,
                                      bool full_bloch, double eta_a) {
  OptimizationResult res;
  res.settings = normalized(unpack_settings(ms.x, na, nb, full_bloch));
  const ProbabilityTable table = click_probabilities(rho, res.settings);
  const PointEval ev = evaluate_point(kind, poly, tables, table, eta_a);
  res.strategy = tables.decode(ev.alice_mask, ev.bob_mask);
  res.breakdown = score_breakdown(table, poly, res.strategy);
  res.objective = kind == ObjectiveKind::MaxViolation ? -ev.objective : ev.objective;
  res.restarts_used = ms.runs;
  res.converged = ms.converged;
  if (kind != ObjectiveKind::MaxViolation && !ev.feasible)
    throw NoViolationError("no violation found: every restart stayed at q <= 0");
  return res;
}

void require_bound_zero(const BellPolynomial& poly) {
  if (poly.local_bound != 0.0)
    throw std::invalid_argument(
        "threshold analysis requires a polynomial normalized to local bound 0");
}

}  // namespace

int OptimizerOptions::restarts_for(int n_alice, int n_bob) const {
  if (restarts > 0) return restarts;
  return std::max(n_alice, n_bob) <= 2 ? 50 : 200;
}

namespace {

OptimizationResult optimize_fixed_state(ObjectiveKind kind, const DensityMatrix& rho,
                                        const BellPolynomial& poly, const OptimizerOptions& opt,
                                        double eta_a,
                                        const std::vector<MeasurementSettings>& warm = {}) {
  const int na = poly.settings_a(), nb = poly.settings_b();
  const StrategyTables tables(poly);
  FixedStateObjective obj{kind,        &poly, &tables, correlation_rep(rho), na, nb,
                          opt.full_bloch, eta_a};
  const int dims = angle_dims(na, nb, opt.full_bloch);

  std::vector<std::vector<double>> warm_starts;
  warm_starts.reserve(warm.size());
  for (const MeasurementSettings& w : warm) warm_starts.push_back(pack_settings(w, opt.full_bloch));

  const MultistartOutcome ms = run_multistart(
      dims, std::cref(obj), [](Rng& rng, int, int restart) { return sample_angle(rng, restart); },
      warm_starts, opt.restarts_for(na, nb), opt);
  return finish_fixed_state(kind, rho, poly, tables, ms, na, nb, opt.full_bloch, eta_a);
}

}  // namespace

OptimizationResult maximize_violation(const DensityMatrix& rho, const BellPolynomial& poly,
                                      const OptimizerOptions& opt) {
  return optimize_fixed_state(ObjectiveKind::MaxViolation, rho, poly, opt, 1.0);
}

OptimizationResult minimize_threshold_asym(const DensityMatrix& rho, const BellPolynomial& poly,
                                           const OptimizerOptions& opt, double eta_a) {
  require_bound_zero(poly);
  if (!(eta_a > 0.0 && eta_a <= 1.0)) throw std::domain_error("eta_a must lie in (0, 1]");
  return optimize_fixed_state(ObjectiveKind::AsymThreshold, rho, poly, opt, eta_a);
}

OptimizationResult minimize_threshold_symmetric(const DensityMatrix& rho,
                                                const BellPolynomial& poly,
                                                const OptimizerOptions& opt) {
  require_bound_zero(poly);
  return optimize_fixed_state(ObjectiveKind::SymThreshold, rho, poly, opt, 1.0);
}

std::vector<SweepPoint> sweep_theta(const BellPolynomial& poly, const StateFamily& family,
                                    const std::vector<double>& theta_grid, ThresholdMode mode,
                                    const OptimizerOptions& opt, double eta_a) {
  require_bound_zero(poly);
  if (theta_grid.empty()) throw std::invalid_argument("sweep_theta: empty grid");
  const ObjectiveKind kind = mode == ThresholdMode::Symmetric ? ObjectiveKind::SymThreshold
                                                              : ObjectiveKind::AsymThreshold;
  std::vector<SweepPoint> points;
  points.reserve(theta_grid.size());
  std::vector<MeasurementSettings> warm;

  for (std::size_t idx = 0; idx < theta_grid.size(); ++idx) {
    const double theta = theta_grid[idx];
    OptimizerOptions local = opt;
    local.seed = substream_seed(opt.seed, 0x5eedu + idx);

    SweepPoint pt;
    pt.theta = theta;
    pt.noise = family.params_at(theta);
    try {
      const DensityMatrix rho = family.state_at(theta);
      const OptimizationResult r = optimize_fixed_state(kind, rho, poly, local, eta_a, warm);
      pt.feasible = r.objective < 1.0;
      pt.threshold = pt.feasible ? r.objective : 1.0;
      pt.breakdown = r.breakdown;
      pt.settings = r.settings;
      pt.strategy = r.strategy;
      if (pt.feasible) warm.assign(1, r.settings);
    } catch (const NoViolationError&) {
      pt.feasible = false;
      pt.threshold = 1.0;
    }
    points.push_back(std::move(pt));
  }
  return points;
}

std::vector<SweepPoint> noise_tradeoff(const BellPolynomial& poly, StateFamily::Kind noise_model,
                                       double eta_a, const std::vector<double>& noise_grid,
                                       ThresholdMode mode, const OptimizerOptions& opt,
                                       double theta_floor) {
  require_bound_zero(poly);
  if (noise_grid.empty()) throw std::invalid_argument("noise_tradeoff: empty grid");
  if (noise_model == StateFamily::Kind::Pure)
    throw std::invalid_argument("noise_tradeoff: pick a noise model (background or dark)");
  if (!(theta_floor > 0.0 && theta_floor < kQuarterPi))
    throw std::domain_error("theta_floor must lie in (0, pi/4)");
  // states are built inside worker threads, so reject bad knobs up front
  for (double v : noise_grid)
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("noise values must lie in [0, 1]");
  const ObjectiveKind kind = mode == ThresholdMode::Symmetric ? ObjectiveKind::SymThreshold
                                                              : ObjectiveKind::AsymThreshold;
  const int na = poly.settings_a(), nb = poly.settings_b();
  const StrategyTables tables(poly);
  const int dims = 1 + angle_dims(na, nb, opt.full_bloch);

  std::vector<SweepPoint> points;
  points.reserve(noise_grid.size());
  std::vector<std::vector<double>> warm;

  for (std::size_t idx = 0; idx < noise_grid.size(); ++idx) {
    const StateFamily family = noise_model == StateFamily::Kind::Background
                                   ? StateFamily::background(noise_grid[idx])
                                   : StateFamily::dark(noise_grid[idx], 0.0);
    auto clamp_theta = [&](double t) { return std::clamp(t, theta_floor, kQuarterPi); };
    auto objective = [&](const std::vector<double>& x) {
      const double theta = clamp_theta(x[0]);
      const MeasurementSettings s = unpack_settings(x, na, nb, opt.full_bloch, 1);
      const ProbabilityTable table =
          click_probabilities(correlation_rep(family.state_at(theta)), s);
      const double overshoot = x[0] - theta;
      return evaluate_point(kind, poly, tables, table, eta_a).objective +
             10.0 * overshoot * overshoot;
    };
    auto sampler = [&](Rng& rng, int dim, int restart) {
      if (dim == 0) return rng.uniform(theta_floor, kQuarterPi);
      return sample_angle(rng, restart);
    };

    OptimizerOptions local = opt;
    local.seed = substream_seed(opt.seed, 0xb0b0u + idx);
    const MultistartOutcome ms =
        run_multistart(dims, objective, sampler, warm, opt.restarts_for(na, nb), local);

    SweepPoint pt;
    const double theta = clamp_theta(ms.x.empty() ? theta_floor : ms.x[0]);
    pt.theta = theta;
    pt.noise = family.params_at(theta);
    const MeasurementSettings settings =
        normalized(unpack_settings(ms.x, na, nb, opt.full_bloch, 1));
    const ProbabilityTable table = click_probabilities(family.state_at(theta), settings);
    const PointEval ev = evaluate_point(kind, poly, tables, table, eta_a);
    if (ev.feasible) {
      pt.feasible = true;
      pt.threshold = ev.objective;
      pt.strategy = tables.decode(ev.alice_mask, ev.bob_mask);
      pt.breakdown = score_breakdown(table, poly, pt.strategy);
      pt.settings = settings;
      std::vector<double> w = pack_settings(settings, opt.full_bloch, 1);
      w[0] = theta;
      warm.assign(1, std::move(w));
    } else {
      pt.feasible = false;
      pt.threshold = 1.0;  // no violation at this noise level
    }
    points.push_back(std::move(pt));
  }
  return points;
}

}  // namespace asymbell
