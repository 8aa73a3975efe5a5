#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "asymbell/probability_table.hpp"

namespace asymbell {

// Bell polynomial in Clauser-Horne probability form:
//   I = sum_ij joint(i,j) P(00|A_i,B_j)
//     + sum_i alice(i) P(0|A_i) + sum_j bob(j) P(0|B_j)
// with I <= local_bound for every local hidden variable model.
struct BellPolynomial {
  std::string name;
  Eigen::MatrixXd joint_coeffs;   // N_A x N_B
  Eigen::VectorXd alice_coeffs;   // N_A
  Eigen::VectorXd bob_coeffs;     // N_B
  double local_bound = 0.0;

  int settings_a() const { return static_cast<int>(joint_coeffs.rows()); }
  int settings_b() const { return static_cast<int>(joint_coeffs.cols()); }
};

// CH form of CHSH: P(A1B1)+P(A1B2)+P(A2B1)-P(A2B2)-P(A1)-P(B1) <= 0.
BellPolynomial chsh();

// The three-setting inequality
//   P(A1B1)+P(A1B2)+P(A1B3)+P(A2B1)+P(A2B2)-P(A2B3)+P(A3B1)-P(A3B2)
//   -2P(A1)-P(A2)-P(B1) <= 0.
BellPolynomial i3322();

// Throws std::invalid_argument on dimension mismatch.
double evaluate(const BellPolynomial& poly, const ProbabilityTable& probs);

// Maximum of the polynomial over all deterministic local strategies (each
// party fixes an output per setting). Those strategies are the vertices of
// the local polytope, so this equals the local bound. Exhaustive over
// 2^(N_A+N_B) assignments; refuses N > 8 per side.
double lhv_bound_bruteforce(const BellPolynomial& poly);

// Plain-text polynomial format, one `key = value` per line:
//   name = <string>     na = <int>      nb = <int>
//   joint i j = <float> alice i = <float>  bob j = <float>   (1-based)
//   bound = <float>
// '#' starts a comment. Missing coefficients are zero. A declared bound is
// cross-checked against lhv_bound_bruteforce (for N <= 8); a mismatch is a
// validation error, and a file without a bound gets the brute-force value.
BellPolynomial load_polynomial(const std::filesystem::path& path);
BellPolynomial parse_polynomial(std::istream& in,
                                const std::string& origin = "<stream>");

}  // namespace asymbell
