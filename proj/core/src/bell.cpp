#include "asymbell/bell.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace asymbell {

namespace {

constexpr int kMaxBruteforceSettings = 8;
constexpr double kBoundCheckTol = 1e-9;

BellPolynomial make(const std::string& name, Eigen::MatrixXd joint, Eigen::VectorXd alice,
                    Eigen::VectorXd bob, double bound) {
  BellPolynomial p;
  p.name = name;
  p.joint_coeffs = std::move(joint);
  p.alice_coeffs = std::move(alice);
  p.bob_coeffs = std::move(bob);
  p.local_bound = bound;
  return p;
}

}  // namespace

BellPolynomial chsh() {
  Eigen::MatrixXd joint(2, 2);
  joint << 1, 1, 1, -1;
  Eigen::VectorXd alice(2), bob(2);
  alice << -1, 0;
  bob << -1, 0;
  return make("CHSH", joint, alice, bob, 0.0);
}

BellPolynomial i3322() {
  Eigen::MatrixXd joint(3, 3);
  joint << 1, 1, 1, 1, 1, -1, 1, -1, 0;
  Eigen::VectorXd alice(3), bob(3);
  alice << -2, -1, 0;
  bob << -1, 0, 0;
  return make("I3322", joint, alice, bob, 0.0);
}

double evaluate(const BellPolynomial& poly, const ProbabilityTable& probs) {
  if (probs.joint.rows() != poly.joint_coeffs.rows() ||
      probs.joint.cols() != poly.joint_coeffs.cols() ||
      probs.alice_marginals.size() != poly.alice_coeffs.size() ||
      probs.bob_marginals.size() != poly.bob_coeffs.size())
    throw std::invalid_argument("evaluate: table dimensions do not match polynomial");
  return poly.joint_coeffs.cwiseProduct(probs.joint).sum() +
         poly.alice_coeffs.dot(probs.alice_marginals) + poly.bob_coeffs.dot(probs.bob_marginals);
}

double lhv_bound_bruteforce(const BellPolynomial& poly) {
  const int na = poly.settings_a();
  const int nb = poly.settings_b();
  if (na < 1 || nb < 1) throw std::invalid_argument("lhv_bound_bruteforce: empty polynomial");
  if (na > kMaxBruteforceSettings || nb > kMaxBruteforceSettings)
    throw std::invalid_argument("lhv_bound_bruteforce: more than 8 settings per side");

  // For a fixed Alice assignment the value is linear in Bob's bits, so each
  // Bob setting is decided independently by the sign of its column term.
  double best = -std::numeric_limits<double>::infinity();
  for (unsigned am = 0; am < (1u << na); ++am) {
    // bit i set <=> Alice outputs 1 for setting i (so "0" contributes)
    double value = 0.0;
    for (int i = 0; i < na; ++i)
      if (!(am & (1u << i))) value += poly.alice_coeffs(i);
    for (int j = 0; j < nb; ++j) {
      double col = poly.bob_coeffs(j);
      for (int i = 0; i < na; ++i)
        if (!(am & (1u << i))) col += poly.joint_coeffs(i, j);
      if (col > 0.0) value += col;  // Bob outputs 0 on setting j iff it pays
    }
    best = std::max(best, value);
  }
  return best;
}

namespace {

void parse_error(const std::string& origin, int line, const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  throw std::runtime_error(os.str());
}

}  // namespace

BellPolynomial parse_polynomial(std::istream& in, const std::string& origin) {
  std::string name = "user";
  int na = -1, nb = -1;
  bool have_bound = false;
  double bound = 0.0;
  struct Entry {
    std::string key;
    int i, j;
    double value;
    int line;
  };
  std::vector<Entry> entries;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;  // blank or comment-only

    auto expect_eq = [&](std::istringstream& s) {
      std::string eq;
      if (!(s >> eq) || eq != "=") parse_error(origin, lineno, "expected '='");
    };

    if (key == "name") {
      expect_eq(ls);
      std::string rest;
      std::getline(ls, rest);
      const auto first = rest.find_first_not_of(" \t");
      const auto last = rest.find_last_not_of(" \t\r");
      if (first == std::string::npos) parse_error(origin, lineno, "empty name");
      name = rest.substr(first, last - first + 1);
    } else if (key == "na" || key == "nb") {
      expect_eq(ls);
      int v;
      if (!(ls >> v) || v < 1) parse_error(origin, lineno, "bad setting count");
      (key == "na" ? na : nb) = v;
    } else if (key == "bound") {
      expect_eq(ls);
      if (!(ls >> bound)) parse_error(origin, lineno, "bad bound value");
      have_bound = true;
    } else if (key == "joint") {
      int i, j;
      double v;
      if (!(ls >> i >> j)) parse_error(origin, lineno, "joint needs two indices");
      expect_eq(ls);
      if (!(ls >> v)) parse_error(origin, lineno, "bad joint value");
      entries.push_back({key, i, j, v, lineno});
    } else if (key == "alice" || key == "bob") {
      int i;
      double v;
      if (!(ls >> i)) parse_error(origin, lineno, "index required");
      expect_eq(ls);
      if (!(ls >> v)) parse_error(origin, lineno, "bad coefficient value");
      entries.push_back({key, i, 0, v, lineno});
    } else {
      parse_error(origin, lineno, "unknown key '" + key + "'");
    }
  }

  if (na < 1 || nb < 1) parse_error(origin, lineno, "na and nb are required");

  BellPolynomial poly;
  poly.name = name;
  poly.joint_coeffs = Eigen::MatrixXd::Zero(na, nb);
  poly.alice_coeffs = Eigen::VectorXd::Zero(na);
  poly.bob_coeffs = Eigen::VectorXd::Zero(nb);
  for (const Entry& e : entries) {
    if (e.key == "joint") {
      if (e.i < 1 || e.i > na || e.j < 1 || e.j > nb)
        parse_error(origin, e.line, "joint index out of range");
      poly.joint_coeffs(e.i - 1, e.j - 1) = e.value;
    } else if (e.key == "alice") {
      if (e.i < 1 || e.i > na) parse_error(origin, e.line, "alice index out of range");
      poly.alice_coeffs(e.i - 1) = e.value;
    } else {
      if (e.i < 1 || e.i > nb) parse_error(origin, e.line, "bob index out of range");
      poly.bob_coeffs(e.i - 1) = e.value;
    }
  }

  const bool can_bruteforce = na <= kMaxBruteforceSettings && nb <= kMaxBruteforceSettings;
  if (can_bruteforce) {
    const double brute = lhv_bound_bruteforce(poly);
    if (have_bound && std::abs(brute - bound) > kBoundCheckTol) {
      std::ostringstream os;
      os << origin << ": declared bound " << bound << " does not match the deterministic-strategy maximum "
         << brute;
      throw std::runtime_error(os.str());
    }
    poly.local_bound = have_bound ? bound : brute;
  } else {
    if (!have_bound)
      throw std::runtime_error(origin + ": bound required (too many settings to enumerate)");
    poly.local_bound = bound;
  }
  return poly;
}

BellPolynomial load_polynomial(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open polynomial file: " + path.string());
  return parse_polynomial(in, path.string());
}

}  // namespace asymbell
