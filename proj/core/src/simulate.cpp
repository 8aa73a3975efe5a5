#include "asymbell/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "asymbell/rng.hpp"

namespace asymbell {

namespace {

constexpr long long kBatchSize = 1 << 16;

int resolve_threads(int requested) {
  if (requested > 0) return std::min(requested, 64);
  if (const char* env = std::getenv("ASYMBELL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return std::min(v, 64);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

struct Cell4 {
  double p[4];  // cumulative thresholds for outcomes 00,01,10,11
};

// Batch counts are summed over batches in index order, so the totals do not
// depend on how batches are scheduled across threads.
void run_batch(std::uint64_t seed, long long count, int na, int nb,
               const std::vector<Cell4>& dist, double eta_a, double eta_b,
               const std::vector<int>& alice_sub, const std::vector<int>& bob_sub,
               std::vector<CellCounts>& counts,
               const std::function<void(const TrialRecord&)>& sink) {
  Rng rng(seed);
  const std::uint64_t cells = static_cast<std::uint64_t>(na) * nb;
  for (long long t = 0; t < count; ++t) {
    const int cell = static_cast<int>(rng.next_below(cells));
    const int i = cell / nb, j = cell % nb;

    const double u = rng.next_double();
    const Cell4& c = dist[cell];
    int outcome = 3;
    if (u < c.p[0])
      outcome = 0;
    else if (u < c.p[1])
      outcome = 1;
    else if (u < c.p[2])
      outcome = 2;
    int a = outcome >> 1;
    int b = outcome & 1;

    const bool fired_a = rng.bernoulli(eta_a);
    const bool fired_b = rng.bernoulli(eta_b);
    if (!fired_a) a = alice_sub[i];
    if (!fired_b) b = bob_sub[j];

    CellCounts& cc = counts[cell];
    ++cc.n;
    ++cc.k[a][b];
    if (sink) sink({i, j, fired_a, fired_b, a, b});
  }
}

double bell_estimate(const BellPolynomial& poly, const std::vector<CellCounts>& counts,
                     int na, int nb) {
  double value = 0.0;
  for (int i = 0; i < na; ++i) {
    long long n_row = 0, zero_row = 0;
    for (int j = 0; j < nb; ++j) {
      const CellCounts& c = counts[i * nb + j];
      n_row += c.n;
      zero_row += c.alice_zero();
      if (c.n > 0) value += poly.joint_coeffs(i, j) * static_cast<double>(c.k[0][0]) / c.n;
    }
    if (n_row > 0) value += poly.alice_coeffs(i) * static_cast<double>(zero_row) / n_row;
  }
  for (int j = 0; j < nb; ++j) {
    long long n_col = 0, zero_col = 0;
    for (int i = 0; i < na; ++i) {
      const CellCounts& c = counts[i * nb + j];
      n_col += c.n;
      zero_col += c.bob_zero();
    }
    if (n_col > 0) value += poly.bob_coeffs(j) * static_cast<double>(zero_col) / n_col;
  }
  return value;
}

// Per-cell binomial variances propagated through the coefficients. The
// smoothed frequency (k + 1/2)/(n + 1) keeps every term positive, so the
// reported error never collapses to zero on degenerate counts.
double delta_method_error(const BellPolynomial& poly, const std::vector<CellCounts>& counts,
                          int na, int nb) {
  auto var_term = [](long long k, long long n) {
    const double p = (static_cast<double>(k) + 0.5) / (static_cast<double>(n) + 1.0);
    return p * (1.0 - p) / static_cast<double>(std::max<long long>(n, 1));
  };
  double var = 0.0;
  for (int i = 0; i < na; ++i) {
    long long n_row = 0, zero_row = 0;
    for (int j = 0; j < nb; ++j) {
      const CellCounts& c = counts[i * nb + j];
      n_row += c.n;
      zero_row += c.alice_zero();
      const double cij = poly.joint_coeffs(i, j);
      if (cij != 0.0) var += cij * cij * var_term(c.k[0][0], c.n);
    }
    const double di = poly.alice_coeffs(i);
    if (di != 0.0) var += di * di * var_term(zero_row, n_row);
  }
  for (int j = 0; j < nb; ++j) {
    long long n_col = 0, zero_col = 0;
    for (int i = 0; i < na; ++i) {
      const CellCounts& c = counts[i * nb + j];
      n_col += c.n;
      zero_col += c.bob_zero();
    }
    const double ej = poly.bob_coeffs(j);
    if (ej != 0.0) var += ej * ej * var_term(zero_col, n_col);
  }
  return std::sqrt(var);
}

// Nonparametric bootstrap: each replicate redraws all trials from the
// empirical (cell, outcome) distribution and re-applies the estimator.
double bootstrap_error(const BellPolynomial& poly, const std::vector<CellCounts>& counts,
                       int na, int nb, long long trials, std::uint64_t seed, int replicates) {
  const int cells = na * nb;
  std::vector<double> cumulative(cells * 4);
  double acc = 0.0;
  for (int c = 0; c < cells; ++c)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        acc += static_cast<double>(counts[c].k[a][b]) / static_cast<double>(trials);
        cumulative[c * 4 + a * 2 + b] = acc;
      }
  cumulative.back() = 1.0;

  std::vector<double> values(replicates);
  for (int r = 0; r < replicates; ++r) {
    Rng rng(substream_seed(seed, 0xb00dull + r));
    std::vector<CellCounts> resampled(cells);
    for (long long t = 0; t < trials; ++t) {
      const double u = rng.next_double();
      const int idx = static_cast<int>(
          std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      CellCounts& cc = resampled[idx / 4];
      ++cc.n;
      ++cc.k[(idx >> 1) & 1][idx & 1];
    }
    values[r] = bell_estimate(poly, resampled, na, nb);
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= replicates;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / (replicates - 1));
}

}  // namespace

EstimateReport simulate(const DensityMatrix& rho, const MeasurementSettings& settings,
                        const BellPolynomial& poly, const NoDetectionStrategy& strat,
                        const DetectionScenario& sc, const SimulationOptions& opt) {
  const int na = poly.settings_a(), nb = poly.settings_b();
  if (static_cast<int>(settings.alice.size()) != na ||
      static_cast<int>(settings.bob.size()) != nb)
    throw std::invalid_argument("simulate: settings do not match polynomial");
  if (static_cast<int>(strat.alice_outputs.size()) != na ||
      static_cast<int>(strat.bob_outputs.size()) != nb)
    throw std::invalid_argument("simulate: strategy does not match polynomial");
  if (opt.trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
  if (!(sc.eta_a >= 0.0 && sc.eta_a <= 1.0 && sc.eta_b >= 0.0 && sc.eta_b <= 1.0))
    throw std::domain_error("simulate: efficiencies must lie in [0, 1]");

  const CorrelationRep rep = correlation_rep(rho);
  std::vector<Cell4> dist(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      const auto p = outcome_distribution(rep, settings.alice[i], settings.bob[j]);
      Cell4& c = dist[i * nb + j];
      c.p[0] = p[0];
      c.p[1] = p[0] + p[1];
      c.p[2] = p[0] + p[1] + p[2];
      c.p[3] = 1.0;
    }

  const long long batches = (opt.trials + kBatchSize - 1) / kBatchSize;
  std::vector<std::vector<CellCounts>> batch_counts(batches,
                                                    std::vector<CellCounts>(na * nb));

  auto batch_len = [&](long long m) {
    return std::min<long long>(kBatchSize, opt.trials - m * kBatchSize);
  };
  auto batch_job = [&](long long m) {
    run_batch(substream_seed(opt.seed, static_cast<std::uint64_t>(m)), batch_len(m), na, nb,
              dist, sc.eta_a, sc.eta_b, strat.alice_outputs, strat.bob_outputs,
              batch_counts[m], opt.record_sink);
  };

  const int threads = opt.record_sink ? 1 : resolve_threads(opt.threads);
  if (threads <= 1 || batches == 1) {
    for (long long m = 0; m < batches; ++m) batch_job(m);
  } else {
    std::vector<std::thread> pool;
    const int used = static_cast<int>(std::min<long long>(threads, batches));
    pool.reserve(used);
    for (int t = 0; t < used; ++t)
      pool.emplace_back([&, t] {
        for (long long m = t; m < batches; m += used) batch_job(m);
      });
    for (auto& th : pool) th.join();
  }

  EstimateReport rep_out;
  rep_out.trials = opt.trials;
  rep_out.settings_a = na;
  rep_out.settings_b = nb;
  rep_out.cells.assign(na * nb, CellCounts{});
  for (long long m = 0; m < batches; ++m)
    for (int c = 0; c < na * nb; ++c) {
      rep_out.cells[c].n += batch_counts[m][c].n;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) rep_out.cells[c].k[a][b] += batch_counts[m][c].k[a][b];
    }

  rep_out.bell_value = bell_estimate(poly, rep_out.cells, na, nb);
  rep_out.std_error = delta_method_error(poly, rep_out.cells, na, nb);
  if (opt.bootstrap)
    rep_out.bootstrap_std_error = bootstrap_error(poly, rep_out.cells, na, nb, opt.trials,
                                                  opt.seed, opt.bootstrap_replicates);
  return rep_out;
}

}  // namespace asymbell
