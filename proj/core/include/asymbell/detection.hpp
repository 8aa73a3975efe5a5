#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "asymbell/bell.hpp"
#include "asymbell/quantum.hpp"

namespace asymbell {

// Deterministic outputs each party announces when its detector does not
// fire, one bit per setting. A party cannot condition on the other side's
// detection, so the same map enters every firing pattern it appears in.
struct NoDetectionStrategy {
  std::vector<int> alice_outputs;  // 0/1 per Alice setting
  std::vector<int> bob_outputs;    // 0/1 per Bob setting

  static NoDetectionStrategy all_zeros(int n_alice, int n_bob);
};

struct DetectionScenario {
  double eta_a = 1.0;
  double eta_b = 1.0;
};

// Bell-polynomial value conditioned on which detectors fired:
// q both, m_a only Alice, m_b only Bob, x neither.
struct ScoreBreakdown {
  double q = 0.0;
  double m_a = 0.0;
  double m_b = 0.0;
  double x = 0.0;
};

class NoViolationError : public std::runtime_error {
 public:
  explicit NoViolationError(const std::string& what) : std::runtime_error(what) {}
};

class InvalidStrategyError : public std::runtime_error {
 public:
  explicit InvalidStrategyError(const std::string& what) : std::runtime_error(what) {}
};

// q from the quantum table; m_a from Alice's quantum marginals against
// Bob's no-detection outputs; m_b mirrored; x from both parties'
// deterministic outputs.
ScoreBreakdown score_breakdown(const ProbabilityTable& probs,
                               const BellPolynomial& poly,
                               const NoDetectionStrategy& strat);
ScoreBreakdown score_breakdown(const DensityMatrix& rho,
                               const MeasurementSettings& settings,
                               const BellPolynomial& poly,
                               const NoDetectionStrategy& strat);

// eta_a*eta_b*q + eta_a*(1-eta_b)*m_a + (1-eta_a)*eta_b*m_b
//   + (1-eta_a)*(1-eta_b)*x
double effective_value(const ScoreBreakdown& b, const DetectionScenario& sc);

// Minimal eta_b closing the bound-zero test when Alice always detects:
// 1/(1 - q/m_a). Requires q > 0 (else NoViolationError) and m_a < 0 (else
// InvalidStrategyError).
double threshold_eta_b(const ScoreBreakdown& b);

// Same at a fixed eta_a <= 1: the effective value is linear in eta_b, so
// the threshold is v0/(v0 - v1) with v0 the value at eta_b=0 and v1 at
// eta_b=1. Reduces to the above for eta_a = 1.
double threshold_eta_b(const ScoreBreakdown& b, double eta_a);

// Smallest eta in (0,1] with eta^2 q + eta(1-eta)(m_a+m_b) + (1-eta)^2 x
// = 0, i.e. the symmetric-efficiency threshold including the double-miss
// term. Throws NoViolationError when q <= 0 or no root lies in (0,1].
double threshold_symmetric(const ScoreBreakdown& b);

// Non-throwing variants used inside optimizer loops, where infeasible
// strategies are skipped rather than fatal.
std::optional<double> try_threshold_eta_b(const ScoreBreakdown& b, double eta_a = 1.0);
std::optional<double> try_threshold_symmetric(const ScoreBreakdown& b);

}  // namespace asymbell
