#include "fiberphase/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace fiberphase {

namespace {

constexpr double kUnitTolerance = 1e-9;
constexpr double kTieTolerance = 1e-10;

void require_unit(const Vec3& k_hat) {
  if (!k_hat.allFinite() || std::abs(k_hat.norm() - 1.0) > kUnitTolerance) {
    throw std::invalid_argument("direction must be a unit vector (|k| = 1 within 1e-9)");
  }
}

}  // namespace

SpinTriple spin1_matrices() {
  const double r = std::sqrt(0.5);
  const Complex i{0.0, 1.0};
  SpinTriple s;
  s.s1 << 0, r, 0,
          r, 0, r,
          0, r, 0;
  s.s2 << 0, -i * r, 0,
          i * r, 0, -i * r,
          0, i * r, 0;
  s.s3 << 1, 0, 0,
          0, 0, 0,
          0, 0, -1;
  return s;
}

SpinTriple cartesian_spin1_matrices() {
  const Complex i{0.0, 1.0};
  SpinTriple s;
  s.s1 << 0, 0, 0,
          0, 0, -i,
          0, i, 0;
  s.s2 << 0, 0, i,
          0, 0, 0,
          -i, 0, 0;
  s.s3 << 0, -i, 0,
          i, 0, 0,
          0, 0, 0;
  return s;
}

Mat3c cartesian_to_angular_basis() {
  const double r = std::sqrt(0.5);
  const Complex i{0.0, 1.0};
  Mat3c u;
  u << -r, i * r, 0,
        0, 0, 1,
        r, i * r, 0;
  return u;
}

Mat3c helicity_operator(const Vec3& k_hat, const SpinTriple& spin) {
  require_unit(k_hat);
  return spin.dot(k_hat);
}

void fix_gauge(Spinor& v) {
  double largest = 0.0;
  for (int j = 0; j < 3; ++j) largest = std::max(largest, std::abs(v(j)));
  if (largest == 0.0) return;
  int pick = 0;
  for (int j = 0; j < 3; ++j) {
    if (std::abs(v(j)) >= largest * (1.0 - kTieTolerance)) {
      pick = j;
      break;
    }
  }
  const Complex anchor = v(pick);
  v *= std::conj(anchor) / std::abs(anchor);
  v(pick) = Complex{std::abs(v(pick)), 0.0};
}

HelicityBasis helicity_eigenstates(const Vec3& k_hat, const SpinTriple& spin) {
  const Mat3c op = helicity_operator(k_hat, spin);
  Eigen::SelfAdjointEigenSolver<Mat3c> solver(op);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("helicity eigensolver did not converge");
  }
  HelicityBasis basis;
  basis.direction = k_hat;
  // Eigenvalues come back ascending: -1, 0, +1.
  for (int j = 0; j < 3; ++j) {
    Spinor v = solver.eigenvectors().col(j);
    v.normalize();
    fix_gauge(v);
    basis.states[static_cast<std::size_t>(j)] = v;
  }
  return basis;
}

}  // namespace fiberphase
