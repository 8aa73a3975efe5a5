#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "asymbell/detection.hpp"

namespace asymbell {

struct TrialRecord {
  int setting_a = 0;  // 0-based
  int setting_b = 0;
  bool fired_a = true;
  bool fired_b = true;
  int outcome_a = 0;  // after no-detection substitution
  int outcome_b = 0;
};

// Outcome counts for one setting pair: k[a][b] tallies (a,b).
struct CellCounts {
  long long n = 0;
  long long k[2][2] = {{0, 0}, {0, 0}};
  long long alice_zero() const { return k[0][0] + k[0][1]; }
  long long bob_zero() const { return k[0][0] + k[1][0]; }
};

struct EstimateReport {
  double bell_value = 0.0;
  double std_error = 0.0;
  long long trials = 0;
  int settings_a = 0;
  int settings_b = 0;
  std::vector<CellCounts> cells;  // row-major (i * settings_b + j)
  std::optional<double> bootstrap_std_error;

  const CellCounts& cell(int i, int j) const { return cells[i * settings_b + j]; }
};

struct SimulationOptions {
  long long trials = 100000;
  std::uint64_t seed = 1;
  // Nonparametric bootstrap of the (cell,outcome) multinomial as a
  // cross-check on the delta-method error.
  bool bootstrap = false;
  int bootstrap_replicates = 200;
  // When set, trials run in deterministic batch order and every record is
  // passed through (used for the optional dump).
  std::function<void(const TrialRecord&)> record_sink;
  int threads = 0;  // 0: ASYMBELL_THREADS env, then hardware count
};

// Samples `trials` rounds: settings uniform i.i.d., outcomes from the full
// 4-outcome Born distribution, detection as independent Bernoulli(eta) per
// party, no-detection outputs substituted from the strategy. The Bell value
// is estimated from empirical cell frequencies; std_error is the per-cell
// binomial variance propagated through the polynomial coefficients.
// Identical seeds replay the identical trial stream.
EstimateReport simulate(const DensityMatrix& rho,
                        const MeasurementSettings& settings,
                        const BellPolynomial& poly,
                        const NoDetectionStrategy& strat,
                        const DetectionScenario& sc,
                        const SimulationOptions& opt);

}  // namespace asymbell
