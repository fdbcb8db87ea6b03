#include <algorithm>
#include <cmath>
#include <random>

#include "fiberphase/evolution_engine.hpp"
#include "fiberphase/harness.hpp"
#include "fiberphase/spin_algebra.hpp"

namespace fiberphase {

namespace {

double commutator_defect(const SpinTriple& s) {
  const Complex i{0.0, 1.0};
  double worst = 0.0;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    const Mat3c comm = s[a] * s[b] - s[b] * s[a];
    worst = std::max(worst, (comm - i * s[c]).cwiseAbs().maxCoeff());
  }
  return worst;
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 v(g(rng), g(rng), g(rng));
  return v.normalized();
}

}  // namespace

std::vector<CheckResult> self_check() {
  const SpinTriple s = spin1_matrices();
  const SpinTriple cart = cartesian_spin1_matrices();
  std::vector<CheckResult> out;

  const double comm = commutator_defect(s);
  out.push_back({"commutators [S_i, S_j] = i eps_ijk S_k", comm <= 1e-15, comm});

  const double comm_cart = commutator_defect(cart);
  out.push_back({"commutators, Cartesian representation (exact)", comm_cart == 0.0, comm_cart});

  const Mat3c casimir = s.s1 * s.s1 + s.s2 * s.s2 + s.s3 * s.s3;
  const double cas = (casimir - 2.0 * Mat3c::Identity()).cwiseAbs().maxCoeff();
  out.push_back({"Casimir S^2 = s(s+1) = 2", cas <= 1e-15, cas});

  const Mat3c u = cartesian_to_angular_basis();
  double change = (u * u.adjoint() - Mat3c::Identity()).cwiseAbs().maxCoeff();
  for (int a = 0; a < 3; ++a) change = std::max(change, (u * cart[a] * u.adjoint() - s[a]).cwiseAbs().maxCoeff());
  out.push_back({"Cartesian <-> angular-momentum basis change", change <= 1e-15, change});

  std::mt19937_64 rng(20031007);
  double herm = 0.0;
  double spectrum = 0.0;
  double eig_residual = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 k = random_unit(rng);
    const Mat3c op = helicity_operator(k, s);
    herm = std::max(herm, (op - op.adjoint()).cwiseAbs().maxCoeff());
    const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Mat3c>(op, Eigen::EigenvaluesOnly).eigenvalues();
    spectrum = std::max(spectrum, (ev - Eigen::Vector3d(-1, 0, 1)).cwiseAbs().maxCoeff());
    const HelicityBasis basis = helicity_eigenstates(k, s);
    for (int sigma = -1; sigma <= 1; ++sigma) {
      eig_residual = std::max(eig_residual, (op * basis.state(sigma) - sigma * basis.state(sigma)).norm());
    }
  }
  out.push_back({"helicity operator Hermitian (1000 directions)", herm < 1e-14, herm});
  out.push_back({"helicity spectrum {-1, 0, +1}", spectrum < 1e-10, spectrum});
  out.push_back({"helicity eigenvector residual", eig_residual < 1e-12, eig_residual});

  double unitarity = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 h = random_unit(rng) * (0.1 + trial);
    const Mat3c step = unitary_step(h, 0.01, s);
    unitarity = std::max(unitarity, (step.adjoint() * step - Mat3c::Identity()).cwiseAbs().maxCoeff());
  }
  out.push_back({"step propagator unitary", unitarity < 1e-13, unitarity});
  return out;
}

}  // namespace fiberphase
