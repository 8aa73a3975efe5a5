#include "asymbell/detection.hpp"

#include <cmath>
#include <limits>

namespace asymbell {

namespace {

void check_strategy(const BellPolynomial& poly, const NoDetectionStrategy& strat) {
  if (static_cast<int>(strat.alice_outputs.size()) != poly.settings_a() ||
      static_cast<int>(strat.bob_outputs.size()) != poly.settings_b())
    throw std::invalid_argument("no-detection strategy length does not match polynomial");
  for (int v : strat.alice_outputs)
    if (v != 0 && v != 1) throw std::invalid_argument("strategy outputs must be 0 or 1");
  for (int v : strat.bob_outputs)
    if (v != 0 && v != 1) throw std::invalid_argument("strategy outputs must be 0 or 1");
}

}  // namespace

NoDetectionStrategy NoDetectionStrategy::all_zeros(int n_alice, int n_bob) {
  return {std::vector<int>(n_alice, 0), std::vector<int>(n_bob, 0)};
}

ScoreBreakdown score_breakdown(const ProbabilityTable& probs, const BellPolynomial& poly,
                               const NoDetectionStrategy& strat) {
  check_strategy(poly, strat);
  const int na = poly.settings_a();
  const int nb = poly.settings_b();
  if (probs.settings_a() != na || probs.settings_b() != nb)
    throw std::invalid_argument("probability table does not match polynomial");

  Eigen::VectorXd alice_det(na), bob_det(nb);
  for (int i = 0; i < na; ++i) alice_det(i) = strat.alice_outputs[i] == 0 ? 1.0 : 0.0;
  for (int j = 0; j < nb; ++j) bob_det(j) = strat.bob_outputs[j] == 0 ? 1.0 : 0.0;

  ScoreBreakdown b;
  b.q = evaluate(poly, probs);

  ProbabilityTable only_alice;  // Bob replaced by his deterministic outputs
  only_alice.joint = probs.alice_marginals * bob_det.transpose();
  only_alice.alice_marginals = probs.alice_marginals;
  only_alice.bob_marginals = bob_det;
  b.m_a = evaluate(poly, only_alice);

  ProbabilityTable only_bob;
  only_bob.joint = alice_det * probs.bob_marginals.transpose();
  only_bob.alice_marginals = alice_det;
  only_bob.bob_marginals = probs.bob_marginals;
  b.m_b = evaluate(poly, only_bob);

  ProbabilityTable neither;
  neither.joint = alice_det * bob_det.transpose();
  neither.alice_marginals = alice_det;
  neither.bob_marginals = bob_det;
  b.x = evaluate(poly, neither);
  return b;
}

ScoreBreakdown score_breakdown(const DensityMatrix& rho, const MeasurementSettings& settings,
                               const BellPolynomial& poly, const NoDetectionStrategy& strat) {
  return score_breakdown(click_probabilities(rho, settings), poly, strat);
}

double effective_value(const ScoreBreakdown& b, const DetectionScenario& sc) {
  const double ea = sc.eta_a, eb = sc.eta_b;
  return ea * eb * b.q + ea * (1.0 - eb) * b.m_a + (1.0 - ea) * eb * b.m_b +
         (1.0 - ea) * (1.0 - eb) * b.x;
}

double threshold_eta_b(const ScoreBreakdown& b) {
  if (!(b.q > 0.0)) throw NoViolationError("no violation: q <= 0");
  if (!(b.m_a < 0.0))
    throw InvalidStrategyError("invalid strategy: m_a >= 0 leaves the threshold undefined");
  return 1.0 / (1.0 - b.q / b.m_a);
}

double threshold_eta_b(const ScoreBreakdown& b, double eta_a) {
  if (!(eta_a >= 0.0 && eta_a <= 1.0))
    throw std::domain_error("eta_a must lie in [0, 1]");
  if (eta_a == 1.0) return threshold_eta_b(b);
  const double v1 = eta_a * b.q + (1.0 - eta_a) * b.m_b;    // value at eta_b = 1
  const double v0 = eta_a * b.m_a + (1.0 - eta_a) * b.x;    // value at eta_b = 0
  if (!(v1 > 0.0)) throw NoViolationError("no violation at eta_b = 1 for this eta_a");
  if (!(v0 < 0.0))
    throw InvalidStrategyError("invalid strategy: nonnegative value at eta_b = 0");
  return v0 / (v0 - v1);
}

std::optional<double> try_threshold_eta_b(const ScoreBreakdown& b, double eta_a) {
  const double v1 = eta_a * b.q + (1.0 - eta_a) * b.m_b;
  const double v0 = eta_a * b.m_a + (1.0 - eta_a) * b.x;
  if (!(v1 > 0.0) || !(v0 < 0.0)) return std::nullopt;
  return v0 / (v0 - v1);
}

std::optional<double> try_threshold_symmetric(const ScoreBreakdown& b) {
  if (!(b.q > 0.0)) return std::nullopt;
  const double s = b.m_a + b.m_b;
  // eta^2 q + eta(1-eta) s + (1-eta)^2 x as a polynomial in eta
  const double a2 = b.q - s + b.x;
  const double a1 = s - 2.0 * b.x;
  const double a0 = b.x;

  double best = std::numeric_limits<double>::infinity();
  auto consider = [&best](double root) {
    if (root > 0.0 && root <= 1.0 && root < best) best = root;
  };
  if (std::abs(a2) < 1e-30) {
    if (std::abs(a1) > 0.0) consider(-a0 / a1);
  } else {
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      // numerically stable pair via the co-root identity
      const double u = -0.5 * (a1 + (a1 >= 0.0 ? sq : -sq));
      consider(u / a2);
      if (u != 0.0) consider(a0 / u);
    }
  }
  if (!std::isfinite(best)) return std::nullopt;
  return best;
}

double threshold_symmetric(const ScoreBreakdown& b) {
  if (!(b.q > 0.0)) throw NoViolationError("no violation: q <= 0");
  const auto root = try_threshold_symmetric(b);
  if (!root) throw NoViolationError("no violation at any efficiency: no root in (0, 1]");
  return *root;
}

}  // namespace asymbell
