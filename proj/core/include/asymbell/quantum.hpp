#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "asymbell/probability_table.hpp"

namespace asymbell {

// Two-qubit density operator in the product basis |00>,|01>,|10>,|11>,
// Alice's qubit first. Construction goes through from_matrix(), which
// symmetrizes (rho + rho^dagger)/2 and rejects matrices that are not
// Hermitian (1e-12), trace-one (1e-12) or positive semidefinite (-1e-10).
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const Eigen::Matrix4cd& m);

  const Eigen::Matrix4cd& matrix() const { return m_; }

  double min_eigenvalue() const;

 private:
  explicit DensityMatrix(const Eigen::Matrix4cd& m) : m_(m) {}
  Eigen::Matrix4cd m_;
};

// Convex mixture (1-w)*a + w*b.
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double w);

// One dichotomic qubit observable u.sigma, u a unit Bloch vector.
// `angle` is the polar angle from +z; azimuth stays 0 in the default
// (x,z)-plane parameterization, so u = (sin angle, 0, cos angle) and the
// observable is cos(angle) sigma_z + sin(angle) sigma_x. Outcome "0" is
// tied to the +1 eigenspace, projector (1 + u.sigma)/2.
struct Setting {
  double angle = 0.0;
  double azimuth = 0.0;

  Eigen::Vector3d bloch_direction() const;
  Eigen::Matrix2cd observable() const;       // eigenvalues exactly +-1
  Eigen::Matrix2cd click_projector() const;  // (1 + u.sigma)/2
};

struct MeasurementSettings {
  std::vector<Setting> alice;
  std::vector<Setting> bob;

  static MeasurementSettings planar(const std::vector<double>& alice_angles,
                                    const std::vector<double>& bob_angles);
};

// Knobs of the two noise families plus the entanglement angle.
// theta is restricted to [0, pi/4] (basis relabeling covers the rest);
// a slack of 1e-4 absorbs decimal approximations of pi/4 like 0.7854.
struct NoiseParams {
  double theta = 0.0;
  double background_p = 0.0;
  double dark_a = 0.0;
  double dark_b = 0.0;

  void validate() const;  // throws std::domain_error
};

// |psi_theta> = cos(theta)|00> + sin(theta)|11>
DensityMatrix pure_entangled_state(double theta);

// (1-p) |psi_theta><psi_theta| + p * 1/4
DensityMatrix background_noise_state(double theta, double p);

// Independent detector-error model: each party's share is replaced by a
// maximally mixed qubit with probability eps. The four mixture weights are
// the independent-event products (1-eA)(1-eB), eA(1-eB), (1-eA)eB, eA eB,
// which is the unique reading that keeps the trace at one; the trace is
// asserted after construction.
DensityMatrix dark_count_state(double theta, double eps_a, double eps_b);

enum class Party { A, B };

// Reduced single-qubit state of one party.
Eigen::Matrix2cd partial_trace(const DensityMatrix& rho, Party party);

// Pauli summary of a two-qubit state: local Bloch vectors and the 3x3
// correlation matrix corr(k,l) = Tr[rho (sigma_k x sigma_l)], k,l = x,y,z.
// Click probabilities are linear in these, so optimizer loops compute the
// rep once per state and then evaluate settings with a few dot products.
struct CorrelationRep {
  Eigen::Vector3d alice_bloch;
  Eigen::Vector3d bob_bloch;
  Eigen::Matrix3d corr;
};

CorrelationRep correlation_rep(const DensityMatrix& rho);

// P(00|A_i,B_j) = Tr[(Pi_a x Pi_b) rho] for all pairs, plus the one-party
// click probabilities Tr[(Pi_a x 1) rho], Tr[(1 x Pi_b) rho]. Values are
// clamped to [0,1]; Born values may undershoot by at most ~1e-12.
ProbabilityTable click_probabilities(const DensityMatrix& rho,
                                     const MeasurementSettings& settings);
ProbabilityTable click_probabilities(const CorrelationRep& rep,
                                     const MeasurementSettings& settings);

// Full 4-outcome distribution {p00, p01, p10, p11} for one setting pair.
std::array<double, 4> outcome_distribution(const CorrelationRep& rep,
                                           const Setting& a, const Setting& b);

// One-knob state family swept by the optimizer front ends.
struct StateFamily {
  enum class Kind { Pure, Background, DarkCount };

  Kind kind = Kind::Pure;
  double background_p = 0.0;
  double dark_a = 0.0;
  double dark_b = 0.0;

  static StateFamily pure();
  static StateFamily background(double p);
  static StateFamily dark(double eps_a, double eps_b);

  DensityMatrix state_at(double theta) const;
  NoiseParams params_at(double theta) const;
  // The knob reported in sweep output: p for background, eps_a for dark
  // counts, 0 for pure states.
  double noise_value() const;
};

}  // namespace asymbell
