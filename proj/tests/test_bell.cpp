#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "asymbell/bell.hpp"
#include "asymbell/quantum.hpp"
#include "test_helpers.hpp"

using namespace asymbell;
using test_helpers::random_settings;
using test_helpers::random_state;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Plain reference for the local bound: every deterministic assignment is
// turned into a probability table and pushed through evaluate(). Slower and
// simpler than the library's per-column reduction.
double lhv_bound_reference(const BellPolynomial& poly) {
  const int na = poly.settings_a(), nb = poly.settings_b();
  double best = -1e300;
  for (unsigned ta = 0; ta < (1u << na); ++ta)
    for (unsigned sb = 0; sb < (1u << nb); ++sb) {
      ProbabilityTable t;
      t.joint.resize(na, nb);
      t.alice_marginals.resize(na);
      t.bob_marginals.resize(nb);
      for (int i = 0; i < na; ++i) t.alice_marginals(i) = (ta >> i) & 1u ? 0.0 : 1.0;
      for (int j = 0; j < nb; ++j) t.bob_marginals(j) = (sb >> j) & 1u ? 0.0 : 1.0;
      for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
          t.joint(i, j) = t.alice_marginals(i) * t.bob_marginals(j);
      best = std::max(best, evaluate(poly, t));
    }
  return best;
}

ProbabilityTable uniform_table(int na, int nb, double joint, double alice, double bob) {
  ProbabilityTable t;
  t.joint = Eigen::MatrixXd::Constant(na, nb, joint);
  t.alice_marginals = Eigen::VectorXd::Constant(na, alice);
  t.bob_marginals = Eigen::VectorXd::Constant(nb, bob);
  return t;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("chsh coefficients and bound") {
  const auto p = chsh();
  CHECK(p.settings_a() == 2);
  CHECK(p.settings_b() == 2);
  CHECK(p.joint_coeffs(0, 0) == 1);
  CHECK(p.joint_coeffs(1, 1) == -1);
  CHECK(p.alice_coeffs(0) == -1);
  CHECK(p.bob_coeffs(0) == -1);
  CHECK(p.local_bound == 0.0);
  CHECK(lhv_bound_bruteforce(p) == 0.0);
  CHECK(lhv_bound_reference(p) == 0.0);
}

TEST_CASE("i3322 coefficients and bound") {
  const auto p = i3322();
  CHECK(p.settings_a() == 3);
  CHECK(p.joint_coeffs(1, 2) == -1);
  CHECK(p.joint_coeffs(2, 1) == -1);
  CHECK(p.joint_coeffs(2, 2) == 0);
  CHECK(p.alice_coeffs(0) == -2);
  CHECK(p.alice_coeffs(1) == -1);
  CHECK(p.bob_coeffs(0) == -1);
  CHECK(lhv_bound_bruteforce(p) == 0.0);
  CHECK(lhv_bound_reference(p) == 0.0);
}

TEST_CASE("brute force bound agrees with the plain reference on random polynomials") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  std::uniform_int_distribution<int> size(1, 4);
  for (int k = 0; k < 40; ++k) {
    BellPolynomial p;
    const int na = size(gen), nb = size(gen);
    p.joint_coeffs = Eigen::MatrixXd::NullaryExpr(na, nb, [&] { return unif(gen); });
    p.alice_coeffs = Eigen::VectorXd::NullaryExpr(na, [&] { return unif(gen); });
    p.bob_coeffs = Eigen::VectorXd::NullaryExpr(nb, [&] { return unif(gen); });
    CHECK(lhv_bound_bruteforce(p) == doctest::Approx(lhv_bound_reference(p)).epsilon(1e-12));
  }
}

TEST_CASE("single positive joint coefficient has bound one") {
  BellPolynomial p;
  p.joint_coeffs = Eigen::MatrixXd::Zero(2, 2);
  p.joint_coeffs(0, 1) = 1.0;
  p.alice_coeffs = Eigen::VectorXd::Zero(2);
  p.bob_coeffs = Eigen::VectorXd::Zero(2);
  CHECK(lhv_bound_bruteforce(p) == 1.0);
}

TEST_CASE("brute force bound is invariant under relabelings") {
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    BellPolynomial p;
    p.joint_coeffs = Eigen::MatrixXd::NullaryExpr(3, 3, [&] { return unif(gen); });
    p.alice_coeffs = Eigen::VectorXd::NullaryExpr(3, [&] { return unif(gen); });
    p.bob_coeffs = Eigen::VectorXd::NullaryExpr(3, [&] { return unif(gen); });
    const double bound = lhv_bound_bruteforce(p);

    BellPolynomial swapped;  // exchange the parties
    swapped.joint_coeffs = p.joint_coeffs.transpose();
    swapped.alice_coeffs = p.bob_coeffs;
    swapped.bob_coeffs = p.alice_coeffs;
    CHECK(lhv_bound_bruteforce(swapped) == doctest::Approx(bound).epsilon(1e-12));

    BellPolynomial relabeled;  // cyclic shift of Alice's settings
    relabeled = p;
    Eigen::PermutationMatrix<3> perm;
    perm.indices() << 1, 2, 0;
    relabeled.joint_coeffs = perm * p.joint_coeffs;
    relabeled.alice_coeffs = perm * p.alice_coeffs;
    CHECK(lhv_bound_bruteforce(relabeled) == doctest::Approx(bound).epsilon(1e-12));
  }
}

TEST_CASE("lhv_bound_bruteforce refuses oversized polynomials") {
  BellPolynomial p;
  p.joint_coeffs = Eigen::MatrixXd::Zero(9, 2);
  p.alice_coeffs = Eigen::VectorXd::Zero(9);
  p.bob_coeffs = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(lhv_bound_bruteforce(p), std::invalid_argument);
}

TEST_CASE("evaluate on reference tables") {
  SUBCASE("deterministic all-click table saturates CHSH at zero") {
    CHECK(evaluate(chsh(), uniform_table(2, 2, 1.0, 1.0, 1.0)) == 0.0);
  }
  SUBCASE("zero table evaluates to zero") {
    CHECK(evaluate(chsh(), uniform_table(2, 2, 0.0, 0.0, 0.0)) == 0.0);
  }
  SUBCASE("maximally entangled state at the standard angles reaches the quantum maximum") {
    const auto t = click_probabilities(
        pure_entangled_state(kPi / 4),
        MeasurementSettings::planar({0.0, kPi / 2}, {kPi / 4, -kPi / 4}));
    CHECK(evaluate(chsh(), t) ==
          doctest::Approx(1.0 / std::sqrt(2.0) - 0.5).epsilon(1e-6));
  }
  SUBCASE("the worked single-click table evaluates to -1/2") {
    auto t = uniform_table(3, 3, 0.5, 0.5, 0.5);
    t.bob_marginals(0) = 1.0;
    CHECK(evaluate(i3322(), t) == doctest::Approx(-0.5).epsilon(1e-14));
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(evaluate(chsh(), uniform_table(3, 3, 0.1, 0.1, 0.1)),
                    std::invalid_argument);
  }
}

TEST_CASE("evaluate is linear in the table") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto p = i3322();
  auto random_table = [&] {
    ProbabilityTable t;
    t.joint = Eigen::MatrixXd::NullaryExpr(3, 3, [&] { return unif(gen); });
    t.alice_marginals = Eigen::VectorXd::NullaryExpr(3, [&] { return unif(gen); });
    t.bob_marginals = Eigen::VectorXd::NullaryExpr(3, [&] { return unif(gen); });
    return t;
  };
  for (int k = 0; k < 20; ++k) {
    const auto a = random_table();
    const auto b = random_table();
    const double w = unif(gen);
    ProbabilityTable m;
    m.joint = (1 - w) * a.joint + w * b.joint;
    m.alice_marginals = (1 - w) * a.alice_marginals + w * b.alice_marginals;
    m.bob_marginals = (1 - w) * a.bob_marginals + w * b.bob_marginals;
    CHECK(evaluate(p, m) ==
          doctest::Approx((1 - w) * evaluate(p, a) + w * evaluate(p, b)).epsilon(1e-12));
    ProbabilityTable scaled;
    scaled.joint = w * a.joint;
    scaled.alice_marginals = w * a.alice_marginals;
    scaled.bob_marginals = w * a.bob_marginals;
    CHECK(evaluate(p, scaled) == doctest::Approx(w * evaluate(p, a)).epsilon(1e-12));
  }
}

TEST_CASE("quantum values respect the violation rails") {
  std::mt19937_64 gen(41);
  for (int k = 0; k < 40; ++k) {
    const auto rho = random_state(gen);
    const double v2 = evaluate(chsh(), click_probabilities(rho, random_settings(gen, 2, 2)));
    CHECK(v2 >= -3.0 - 1e-9);
    CHECK(v2 <= 0.2072);
    const double v3 = evaluate(i3322(), click_probabilities(rho, random_settings(gen, 3, 3)));
    CHECK(v3 <= 0.2501);
  }
}

TEST_CASE("polynomial file round trips") {
  SUBCASE("chsh written by hand") {
    std::istringstream in(
        "# two-setting test\n"
        "name = CHSH-file\n"
        "na = 2\n"
        "nb = 2\n"
        "joint 1 1 = 1\n"
        "joint 1 2 = 1\n"
        "joint 2 1 = 1\n"
        "joint 2 2 = -1\n"
        "alice 1 = -1\n"
        "bob 1 = -1\n"
        "bound = 0\n");
    const auto p = parse_polynomial(in, "test");
    const auto ref = chsh();
    CHECK(p.name == "CHSH-file");
    CHECK((p.joint_coeffs - ref.joint_coeffs).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.alice_coeffs - ref.alice_coeffs).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.bob_coeffs - ref.bob_coeffs).cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.local_bound == 0.0);
  }
  SUBCASE("i3322 through an actual file") {
    const auto path = temp_file("asymbell_test_i3322.txt");
    {
      std::ofstream out(path);
      out << "name = I3322-file\nna = 3\nnb = 3\n";
      const auto ref = i3322();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (ref.joint_coeffs(i, j) != 0)
            out << "joint " << i + 1 << ' ' << j + 1 << " = " << ref.joint_coeffs(i, j) << "\n";
      for (int i = 0; i < 3; ++i)
        if (ref.alice_coeffs(i) != 0) out << "alice " << i + 1 << " = " << ref.alice_coeffs(i) << "\n";
      for (int j = 0; j < 3; ++j)
        if (ref.bob_coeffs(j) != 0) out << "bob " << j + 1 << " = " << ref.bob_coeffs(j) << "\n";
      out << "bound = 0\n";
    }
    const auto p = load_polynomial(path);
    CHECK((p.joint_coeffs - i3322().joint_coeffs).cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.local_bound == 0.0);
    std::filesystem::remove(path);
  }
}

TEST_CASE("polynomial file validation") {
  SUBCASE("declared bound must match the enumerated one") {
    std::istringstream in(
        "na = 2\nnb = 2\njoint 1 1 = 1\nbound = 0\n");  // actual bound is 1
    CHECK_THROWS_AS(parse_polynomial(in, "test"), std::runtime_error);
  }
  SUBCASE("missing sizes are rejected") {
    std::istringstream in("joint 1 1 = 1\n");
    CHECK_THROWS_AS(parse_polynomial(in, "test"), std::runtime_error);
  }
  SUBCASE("out-of-range index is rejected") {
    std::istringstream in("na = 2\nnb = 2\njoint 3 1 = 1\n");
    CHECK_THROWS_AS(parse_polynomial(in, "test"), std::runtime_error);
  }
  SUBCASE("unknown key is rejected") {
    std::istringstream in("na = 2\nnb = 2\ncharlie 1 = 1\n");
    CHECK_THROWS_AS(parse_polynomial(in, "test"), std::runtime_error);
  }
  SUBCASE("missing file is reported") {
    CHECK_THROWS_AS(load_polynomial("/definitely/not/here.txt"), std::runtime_error);
  }
  SUBCASE("undeclared bound is filled in by enumeration") {
    std::istringstream in("na = 2\nnb = 2\njoint 1 1 = 1\n");
    CHECK(parse_polynomial(in, "test").local_bound == 1.0);
  }
}
