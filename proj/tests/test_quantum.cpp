#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "asymbell/quantum.hpp"
#include "test_helpers.hpp"

using namespace asymbell;
using test_helpers::random_settings;
using test_helpers::random_state;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("pure entangled state at the separable limit") {
  const auto rho = pure_entangled_state(0.0).matrix();
  Eigen::Matrix4cd expect = Eigen::Matrix4cd::Zero();
  expect(0, 0) = 1.0;
  CHECK((rho - expect).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("pure entangled state at maximal entanglement") {
  const auto rho = pure_entangled_state(kPi / 4).matrix();
  CHECK(rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rho(0, 3).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rho(3, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rho(3, 3).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(rho(1, 1)) == doctest::Approx(0.0));
  CHECK(std::abs(rho(2, 2)) == doctest::Approx(0.0));
}

TEST_CASE("pure entangled state weight matches cos^2") {
  const double theta = kPi / 100;
  const auto rho = pure_entangled_state(theta).matrix();
  const double expect = std::cos(theta) * std::cos(theta);  // 0.999013...
  CHECK(rho(0, 0).real() == doctest::Approx(expect).epsilon(1e-14));
  CHECK(expect == doctest::Approx(0.999013).epsilon(1e-6));
}

TEST_CASE("pure entangled state rejects out-of-range theta") {
  CHECK_THROWS_AS(pure_entangled_state(-0.1), std::domain_error);
  CHECK_THROWS_AS(pure_entangled_state(0.9), std::domain_error);
  CHECK_NOTHROW(pure_entangled_state(0.7854));  // printed pi/4 is fine
}

TEST_CASE("background noise state") {
  const double theta = 0.4;
  SUBCASE("p = 0 reduces to the pure state") {
    CHECK((background_noise_state(theta, 0.0).matrix() - pure_entangled_state(theta).matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  }
  SUBCASE("p = 1 is maximally mixed for any theta") {
    const auto rho = background_noise_state(theta, 1.0).matrix();
    CHECK((rho - 0.25 * Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("half-depolarized Bell state entries") {
    const auto rho = background_noise_state(kPi / 4, 0.5).matrix();
    CHECK(rho(0, 0).real() == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(rho(1, 1).real() == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(rho(2, 2).real() == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(rho(3, 3).real() == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(rho(0, 3).real() == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("rejects bad p") {
    CHECK_THROWS_AS(background_noise_state(theta, -0.01), std::domain_error);
    CHECK_THROWS_AS(background_noise_state(theta, 1.01), std::domain_error);
  }
}

TEST_CASE("dark count state") {
  SUBCASE("noiseless detectors reduce to the pure state") {
    CHECK((dark_count_state(0.3, 0.0, 0.0).matrix() - pure_entangled_state(0.3).matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  }
  SUBCASE("certain Alice dark count on the Bell state is maximally mixed") {
    const auto rho = dark_count_state(kPi / 4, 1.0, 0.0).matrix();
    CHECK((rho - 0.25 * Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("construction keeps trace one and positivity") {
    const auto rho = dark_count_state(kPi / 6, 0.05, 0.0);
    CHECK(rho.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rho.min_eigenvalue() >= -1e-10);
    const auto rho2 = dark_count_state(0.2, 0.3, 0.4);
    CHECK(rho2.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rho2.min_eigenvalue() >= -1e-10);
  }
}

TEST_CASE("density matrix validation") {
  Eigen::Matrix4cd m = pure_entangled_state(0.5).matrix();
  SUBCASE("non-Hermitian input is rejected") {
    m(0, 1) += std::complex<double>(0.0, 1e-6);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(m), std::invalid_argument);
  }
  SUBCASE("wrong trace is rejected") {
    m *= 1.0 + 1e-6;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(m), std::invalid_argument);
  }
  SUBCASE("negative eigenvalue is rejected") {
    Eigen::Matrix4cd bad = 1.3 * pure_entangled_state(0.5).matrix() -
                           0.3 * pure_entangled_state(0.1).matrix();
    CHECK_THROWS_AS(DensityMatrix::from_matrix(bad), std::invalid_argument);
  }
  SUBCASE("tiny Hermitian deviation is symmetrized away") {
    m(0, 3) += 1e-14;
    const auto rho = DensityMatrix::from_matrix(m).matrix();
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("constructed states satisfy all invariants") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> utheta(0.0, kPi / 4), unif(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double theta = utheta(gen);
    const DensityMatrix rho = k % 3 == 0   ? pure_entangled_state(theta)
                              : k % 3 == 1 ? background_noise_state(theta, unif(gen))
                                           : dark_count_state(theta, unif(gen), unif(gen));
    const auto& m = rho.matrix();
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(m.trace().real() - 1.0) <= 1e-12);
    CHECK(rho.min_eigenvalue() >= -1e-10);
  }
}

TEST_CASE("partial trace") {
  SUBCASE("maximally entangled reduces to 1/2") {
    const auto r = partial_trace(pure_entangled_state(kPi / 4), Party::A);
    CHECK((r - 0.5 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("product state |00> reduces to |0><0| on both sides") {
    const auto rho = pure_entangled_state(0.0);
    for (Party p : {Party::A, Party::B}) {
      const auto r = partial_trace(rho, p);
      CHECK(r(0, 0).real() == doctest::Approx(1.0));
      CHECK(std::abs(r(1, 1)) == doctest::Approx(0.0));
    }
  }
  SUBCASE("Schmidt weights on the diagonal") {
    const double theta = 0.37;
    const auto r = partial_trace(pure_entangled_state(theta), Party::A);
    CHECK(r(0, 0).real() == doctest::Approx(std::cos(theta) * std::cos(theta)).epsilon(1e-14));
    CHECK(r(1, 1).real() == doctest::Approx(std::sin(theta) * std::sin(theta)).epsilon(1e-14));
    CHECK(std::abs(r(0, 1)) < 1e-14);
  }
  SUBCASE("reduced state is Hermitian trace-one for random states") {
    std::mt19937_64 gen(7);
    for (int k = 0; k < 20; ++k) {
      const auto r = partial_trace(random_state(gen), k % 2 ? Party::A : Party::B);
      CHECK(std::abs(r.trace().real() - 1.0) < 1e-12);
      CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("setting observables square to the identity") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unif(-kPi, kPi);
  for (int k = 0; k < 20; ++k) {
    const Setting s{unif(gen), k % 2 ? unif(gen) : 0.0};
    const auto o = s.observable();
    CHECK((o * o - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((o - o.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("click probabilities on reference points") {
  SUBCASE("|00> with sigma_z on both sides clicks deterministically") {
    const auto t = click_probabilities(pure_entangled_state(0.0),
                                       MeasurementSettings::planar({0.0}, {0.0}));
    CHECK(t.joint(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.alice_marginals(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.bob_marginals(0) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("Schmidt basis gives p00 = cos^2 theta") {
    const double theta = 0.31;
    const auto t = click_probabilities(pure_entangled_state(theta),
                                       MeasurementSettings::planar({0.0}, {0.0}));
    CHECK(t.joint(0, 0) == doctest::Approx(std::cos(theta) * std::cos(theta)).epsilon(1e-14));
  }
  SUBCASE("maximally entangled marginals are 1/2 for any setting") {
    const auto rho = pure_entangled_state(kPi / 4);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> unif(-kPi, kPi);
    for (int k = 0; k < 10; ++k) {
      const auto t = click_probabilities(rho, MeasurementSettings::planar({unif(gen)}, {unif(gen)}));
      CHECK(t.alice_marginals(0) == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(t.bob_marginals(0) == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
  SUBCASE("sigma_z marginal of the pure family is exactly cos^2") {
    for (double theta : {0.0, 0.1, 0.31, 0.62, kPi / 4}) {
      const auto t = click_probabilities(pure_entangled_state(theta),
                                         MeasurementSettings::planar({0.0}, {0.3}));
      CHECK(std::abs(t.alice_marginals(0) - std::cos(theta) * std::cos(theta)) <= 1e-12);
    }
  }
}

TEST_CASE("click probabilities match the projector-trace reference") {
  std::mt19937_64 gen(101);
  for (int k = 0; k < 30; ++k) {
    const auto rho = random_state(gen);
    const auto s = random_settings(gen, 3, 2, k % 2 == 0);
    const auto t = click_probabilities(rho, s);
    CHECK(t.consistent());
    for (int i = 0; i < 3; ++i) {
      CHECK(t.alice_marginals(i) ==
            doctest::Approx(test_helpers::born_alice(rho, s.alice[i])).epsilon(1e-12));
      for (int j = 0; j < 2; ++j)
        CHECK(t.joint(i, j) ==
              doctest::Approx(test_helpers::born_joint(rho, s.alice[i], s.bob[j])).epsilon(1e-12));
    }
    for (int j = 0; j < 2; ++j)
      CHECK(t.bob_marginals(j) ==
            doctest::Approx(test_helpers::born_bob(rho, s.bob[j])).epsilon(1e-12));
  }
}

TEST_CASE("no-signaling: marginals equal summed joint outcomes") {
  std::mt19937_64 gen(55);
  for (int k = 0; k < 25; ++k) {
    const auto rho = random_state(gen);
    const auto s = random_settings(gen, 2, 3, k % 2 == 0);
    const auto rep = correlation_rep(rho);
    const auto t = click_probabilities(rep, s);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) {
        const auto d = outcome_distribution(rep, s.alice[i], s.bob[j]);
        CHECK(std::abs(t.alice_marginals(i) - (d[0] + d[1])) < 1e-10);
        CHECK(std::abs(t.bob_marginals(j) - (d[0] + d[2])) < 1e-10);
      }
  }
}

TEST_CASE("click probabilities are linear in the state") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 15; ++k) {
    const auto a = random_state(gen);
    const auto b = random_state(gen);
    const double w = unif(gen);
    const auto s = random_settings(gen, 2, 2);
    const auto ta = click_probabilities(a, s);
    const auto tb = click_probabilities(b, s);
    const auto tm = click_probabilities(mix(a, b, w), s);
    CHECK((tm.joint - ((1 - w) * ta.joint + w * tb.joint)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((tm.alice_marginals - ((1 - w) * ta.alice_marginals + w * tb.alice_marginals))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("correlation rep of the pure family has the expected entries") {
  const double theta = 0.29;
  const auto rep = correlation_rep(pure_entangled_state(theta));
  CHECK(rep.alice_bloch(2) == doctest::Approx(std::cos(2 * theta)).epsilon(1e-14));
  CHECK(rep.alice_bloch(0) == doctest::Approx(0.0));
  CHECK(rep.corr(2, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.corr(0, 0) == doctest::Approx(std::sin(2 * theta)).epsilon(1e-14));
  CHECK(rep.corr(1, 1) == doctest::Approx(-std::sin(2 * theta)).epsilon(1e-14));
  CHECK(rep.corr(0, 2) == doctest::Approx(0.0));
}

TEST_CASE("noise params validation") {
  NoiseParams p;
  p.theta = 0.3;
  CHECK_NOTHROW(p.validate());
  p.background_p = 1.2;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p.background_p = 0.0;
  p.dark_a = -0.1;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
}
