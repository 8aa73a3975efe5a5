#pragma once

#include <cstdint>
#include <vector>

#include "asymbell/detection.hpp"

namespace asymbell {

struct OptimizerOptions {
  // 0 picks the per-size default: 50 restarts for two settings per side,
  // 200 for three or more.
  int restarts = 0;
  std::uint64_t seed = 1;
  // Adds an azimuth per setting so directions leave the (x,z) plane.
  // Exists to spot-check that planar optima are not beaten.
  bool full_bloch = false;
  int max_iterations = 2000;
  double simplex_tolerance = 1e-9;
  // 0 reads ASYMBELL_THREADS, falling back to the hardware count.
  int threads = 0;

  int restarts_for(int n_alice, int n_bob) const;
};

struct OptimizationResult {
  MeasurementSettings settings;
  NoDetectionStrategy strategy;
  ScoreBreakdown breakdown;
  double objective = 0.0;
  int restarts_used = 0;
  bool converged = false;
};

// Best q found by multi-start Nelder-Mead over the measurement angles.
// The reported value is always a certified lower bound: it is re-evaluated
// through the probability pipeline at the returned settings.
OptimizationResult maximize_violation(const DensityMatrix& rho,
                                      const BellPolynomial& poly,
                                      const OptimizerOptions& opt = {});

// Minimizes the eta_b threshold at fixed eta_a (default: Alice always
// detects). Bob's 2^N_B no-detection maps are enumerated exactly inside
// the objective; Alice's map is chosen afterwards to pull x toward the
// bound. Throws NoViolationError if every restart stays at q <= 0.
OptimizationResult minimize_threshold_asym(const DensityMatrix& rho,
                                           const BellPolynomial& poly,
                                           const OptimizerOptions& opt = {},
                                           double eta_a = 1.0);

// Minimizes the symmetric threshold with both parties' 2^(N_A+N_B)
// deterministic maps enumerated exactly.
OptimizationResult minimize_threshold_symmetric(const DensityMatrix& rho,
                                                const BellPolynomial& poly,
                                                const OptimizerOptions& opt = {});

enum class ThresholdMode { Asymmetric, Symmetric };

struct SweepPoint {
  double theta = 0.0;
  NoiseParams noise;
  bool feasible = false;
  // Threshold efficiency at this point; 1.0 records "no violation".
  double threshold = 1.0;
  ScoreBreakdown breakdown;
  MeasurementSettings settings;
  NoDetectionStrategy strategy;
};

// One threshold minimization per grid theta. Each point is warm-started
// from its predecessor's optimum on top of the usual random restarts, so
// the resulting curves are smooth. Infeasible points are recorded, not
// fatal.
std::vector<SweepPoint> sweep_theta(const BellPolynomial& poly,
                                    const StateFamily& family,
                                    const std::vector<double>& theta_grid,
                                    ThresholdMode mode,
                                    const OptimizerOptions& opt = {},
                                    double eta_a = 1.0);

// Fig.-2-style curve: for every noise value, minimize the threshold over
// theta as well as settings and strategies. theta is an extra simplex
// coordinate clamped to [theta_floor, pi/4]; the floor keeps the search
// away from the degenerate product state at theta = 0. Each point warm-
// starts from the previous noise value. Infeasible points keep
// threshold = 1.
std::vector<SweepPoint> noise_tradeoff(const BellPolynomial& poly,
                                       StateFamily::Kind noise_model,
                                       double eta_a,
                                       const std::vector<double>& noise_grid,
                                       ThresholdMode mode = ThresholdMode::Asymmetric,
                                       const OptimizerOptions& opt = {},
                                       double theta_floor = 0.005);

}  // namespace asymbell
