#include "asymbell/quantum.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace asymbell {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = -1e-10;
constexpr double kQuarterPi = 0.78539816339744830962;
// Accepts decimal approximations of pi/4 such as 0.7854.
constexpr double kThetaSlack = 1e-4;

const Eigen::Matrix2cd& sigma(int k) {
  using C = std::complex<double>;
  static const Eigen::Matrix2cd sx = (Eigen::Matrix2cd() << C(0), C(1), C(1), C(0)).finished();
  static const Eigen::Matrix2cd sy =
      (Eigen::Matrix2cd() << C(0), C(0, -1), C(0, 1), C(0)).finished();
  static const Eigen::Matrix2cd sz = (Eigen::Matrix2cd() << C(1), C(0), C(0), C(-1)).finished();
  static const Eigen::Matrix2cd* const table[3] = {&sx, &sy, &sz};
  return *table[k];
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= kQuarterPi + kThetaSlack))
    throw std::domain_error("theta must lie in [0, pi/4]");
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error(std::string(what) + " must lie in [0, 1]");
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

bool ProbabilityTable::consistent(double tol) const {
  auto in_unit = [tol](double v) { return v >= -tol && v <= 1.0 + tol; };
  for (int i = 0; i < settings_a(); ++i)
    if (!in_unit(alice_marginals(i))) return false;
  for (int j = 0; j < settings_b(); ++j)
    if (!in_unit(bob_marginals(j))) return false;
  for (int i = 0; i < settings_a(); ++i)
    for (int j = 0; j < settings_b(); ++j) {
      const double p = joint(i, j);
      if (!in_unit(p)) return false;
      if (p > std::min(alice_marginals(i), bob_marginals(j)) + tol) return false;
    }
  return true;
}

DensityMatrix DensityMatrix::from_matrix(const Eigen::Matrix4cd& m) {
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermitianTol) throw std::invalid_argument("density matrix not Hermitian");
  Eigen::Matrix4cd h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) throw std::invalid_argument("density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kPsdTol)
    throw std::invalid_argument("density matrix not positive semidefinite");
  return DensityMatrix(h);
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double w) {
  check_probability(w, "mixture weight");
  return DensityMatrix::from_matrix((1.0 - w) * a.matrix() + w * b.matrix());
}

Eigen::Vector3d Setting::bloch_direction() const {
  return {std::sin(angle) * std::cos(azimuth), std::sin(angle) * std::sin(azimuth),
          std::cos(angle)};
}

Eigen::Matrix2cd Setting::observable() const {
  const Eigen::Vector3d u = bloch_direction();
  return u.x() * sigma(0) + u.y() * sigma(1) + u.z() * sigma(2);
}

Eigen::Matrix2cd Setting::click_projector() const {
  return 0.5 * (Eigen::Matrix2cd::Identity() + observable());
}

MeasurementSettings MeasurementSettings::planar(const std::vector<double>& alice_angles,
                                                const std::vector<double>& bob_angles) {
  MeasurementSettings s;
  s.alice.reserve(alice_angles.size());
  s.bob.reserve(bob_angles.size());
  for (double a : alice_angles) s.alice.push_back({a, 0.0});
  for (double b : bob_angles) s.bob.push_back({b, 0.0});
  return s;
}

void NoiseParams::validate() const {
  check_theta(theta);
  check_probability(background_p, "background_p");
  check_probability(dark_a, "dark_a");
  check_probability(dark_b, "dark_b");
}

DensityMatrix pure_entangled_state(double theta) {
  check_theta(theta);
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(0) = std::cos(theta);
  psi(3) = std::sin(theta);
  return DensityMatrix::from_matrix(psi * psi.adjoint());
}

DensityMatrix background_noise_state(double theta, double p) {
  check_probability(p, "background_p");
  const Eigen::Matrix4cd pure = pure_entangled_state(theta).matrix();
  return DensityMatrix::from_matrix((1.0 - p) * pure +
                                    p * 0.25 * Eigen::Matrix4cd::Identity());
}

DensityMatrix dark_count_state(double theta, double eps_a, double eps_b) {
  check_probability(eps_a, "dark_a");
  check_probability(eps_b, "dark_b");
  const DensityMatrix pure = pure_entangled_state(theta);
  const Eigen::Matrix2cd rho_a = partial_trace(pure, Party::A);
  const Eigen::Matrix2cd rho_b = partial_trace(pure, Party::B);
  const Eigen::Matrix2cd half = 0.5 * Eigen::Matrix2cd::Identity();

  Eigen::Matrix4cd m = (1.0 - eps_a) * (1.0 - eps_b) * pure.matrix() +
                       eps_a * (1.0 - eps_b) * kron2(half, rho_b) +
                       (1.0 - eps_a) * eps_b * kron2(rho_a, half) +
                       eps_a * eps_b * 0.25 * Eigen::Matrix4cd::Identity();
  if (std::abs(m.trace().real() - 1.0) > kTraceTol)
    throw std::logic_error("dark_count_state: weights failed to preserve the trace");
  return DensityMatrix::from_matrix(m);
}

Eigen::Matrix2cd partial_trace(const DensityMatrix& rho, Party party) {
  const Eigen::Matrix4cd& m = rho.matrix();
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  if (party == Party::A) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) out(i, j) += m(2 * i + k, 2 * j + k);
  } else {
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l)
        for (int i = 0; i < 2; ++i) out(k, l) += m(2 * i + k, 2 * i + l);
  }
  return out;
}

CorrelationRep correlation_rep(const DensityMatrix& rho) {
  const Eigen::Matrix4cd& m = rho.matrix();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  CorrelationRep rep;
  for (int k = 0; k < 3; ++k) {
    rep.alice_bloch(k) = (kron2(sigma(k), id) * m).trace().real();
    rep.bob_bloch(k) = (kron2(id, sigma(k)) * m).trace().real();
    for (int l = 0; l < 3; ++l) rep.corr(k, l) = (kron2(sigma(k), sigma(l)) * m).trace().real();
  }
  return rep;
}

ProbabilityTable click_probabilities(const CorrelationRep& rep,
                                     const MeasurementSettings& settings) {
  const int na = static_cast<int>(settings.alice.size());
  const int nb = static_cast<int>(settings.bob.size());
  std::vector<Eigen::Vector3d> ua(na), ub(nb);
  for (int i = 0; i < na; ++i) ua[i] = settings.alice[i].bloch_direction();
  for (int j = 0; j < nb; ++j) ub[j] = settings.bob[j].bloch_direction();

  ProbabilityTable t;
  t.joint.resize(na, nb);
  t.alice_marginals.resize(na);
  t.bob_marginals.resize(nb);
  for (int i = 0; i < na; ++i) t.alice_marginals(i) = clamp01(0.5 * (1.0 + rep.alice_bloch.dot(ua[i])));
  for (int j = 0; j < nb; ++j) t.bob_marginals(j) = clamp01(0.5 * (1.0 + rep.bob_bloch.dot(ub[j])));
  for (int i = 0; i < na; ++i) {
    const Eigen::Vector3d ta = rep.corr.transpose() * ua[i];
    const double ai = rep.alice_bloch.dot(ua[i]);
    for (int j = 0; j < nb; ++j) {
      const double p =
          0.25 * (1.0 + ai + rep.bob_bloch.dot(ub[j]) + ta.dot(ub[j]));
      t.joint(i, j) = clamp01(p);
    }
  }
  return t;
}

ProbabilityTable click_probabilities(const DensityMatrix& rho,
                                     const MeasurementSettings& settings) {
  if (settings.alice.empty() || settings.bob.empty())
    throw std::invalid_argument("click_probabilities: empty settings");
  return click_probabilities(correlation_rep(rho), settings);
}

std::array<double, 4> outcome_distribution(const CorrelationRep& rep, const Setting& a,
                                           const Setting& b) {
  const Eigen::Vector3d u = a.bloch_direction();
  const Eigen::Vector3d v = b.bloch_direction();
  const double ea = rep.alice_bloch.dot(u);
  const double eb = rep.bob_bloch.dot(v);
  const double eab = u.dot(rep.corr * v);
  std::array<double, 4> p = {
      0.25 * (1.0 + ea + eb + eab),   // 00
      0.25 * (1.0 + ea - eb - eab),   // 01
      0.25 * (1.0 - ea + eb - eab),   // 10
      0.25 * (1.0 - ea - eb + eab)};  // 11
  double total = 0.0;
  for (double& v4 : p) {
    v4 = clamp01(v4);
    total += v4;
  }
  for (double& v4 : p) v4 /= total;
  return p;
}

StateFamily StateFamily::pure() { return {}; }

StateFamily StateFamily::background(double p) {
  StateFamily f;
  f.kind = Kind::Background;
  f.background_p = p;
  return f;
}

StateFamily StateFamily::dark(double eps_a, double eps_b) {
  StateFamily f;
  f.kind = Kind::DarkCount;
  f.dark_a = eps_a;
  f.dark_b = eps_b;
  return f;
}

DensityMatrix StateFamily::state_at(double theta) const {
  switch (kind) {
    case Kind::Background:
      return background_noise_state(theta, background_p);
    case Kind::DarkCount:
      return dark_count_state(theta, dark_a, dark_b);
    case Kind::Pure:
    default:
      return pure_entangled_state(theta);
  }
}

NoiseParams StateFamily::params_at(double theta) const {
  NoiseParams p;
  p.theta = theta;
  p.background_p = background_p;
  p.dark_a = dark_a;
  p.dark_b = dark_b;
  return p;
}

double StateFamily::noise_value() const {
  switch (kind) {
    case Kind::Background:
      return background_p;
    case Kind::DarkCount:
      return dark_a;
    case Kind::Pure:
    default:
      return 0.0;
  }
}

}  // namespace asymbell
