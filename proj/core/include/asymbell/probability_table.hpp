#pragma once

#include <Eigen/Dense>

namespace asymbell {

// "Outcome 0" joint and marginal probabilities for one choice of settings.
// joint(i,j) = P(00|A_i,B_j), alice_marginals(i) = P(0|A_i),
// bob_marginals(j) = P(0|B_j).
struct ProbabilityTable {
  Eigen::MatrixXd joint;
  Eigen::VectorXd alice_marginals;
  Eigen::VectorXd bob_marginals;

  int settings_a() const { return static_cast<int>(joint.rows()); }
  int settings_b() const { return static_cast<int>(joint.cols()); }

  // All entries in [0,1] and joint(i,j) <= min of its marginals, up to tol.
  bool consistent(double tol = 1e-10) const;
};

}  // namespace asymbell
