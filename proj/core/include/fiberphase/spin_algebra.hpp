#pragma once

#include <array>
#include <string_view>

#include "fiberphase/types.hpp"

namespace fiberphase {

/// Spin-1 operators S1, S2, S3 (hbar = 1).
///
/// The canonical representation is the angular-momentum basis
/// {|m=+1>, |m=0>, |m=-1>}, in which S3 = diag(1, 0, -1). Component index 0
/// of every spinor in this library refers to m = +1.
struct SpinTriple {
  Mat3c s1;
  Mat3c s2;
  Mat3c s3;

  const Mat3c& operator[](int axis) const {
    switch (axis) {
      case 0: return s1;
      case 1: return s2;
      default: return s3;
    }
  }

  /// v1*S1 + v2*S2 + v3*S3 for an arbitrary (not necessarily unit) vector.
  Mat3c dot(const Vec3& v) const { return v.x() * s1 + v.y() * s2 + v.z() * s3; }
};

SpinTriple spin1_matrices();

/// Cartesian (adjoint) representation (S_i)_{jk} = -i eps_{ijk}. Entries are
/// exactly 0 or +-i, so commutators of these matrices are exact in floating
/// point. Related to spin1_matrices() by S = U S_cart U^dagger with U from
/// cartesian_to_angular_basis().
SpinTriple cartesian_spin1_matrices();

/// Unitary U with U(m, j) = <m|e_j>, for |+1> = -(x + iy)/sqrt2, |0> = z,
/// |-1> = (x - iy)/sqrt2 (Condon-Shortley phases).
Mat3c cartesian_to_angular_basis();

/// k_hat . S. Throws std::invalid_argument if |k_hat| deviates from 1 by more
/// than 1e-9.
Mat3c helicity_operator(const Vec3& k_hat, const SpinTriple& spin);

/// Eigenstates of k_hat . S for helicity -1, 0, +1.
///
/// Gauge: in every eigenvector the component of largest magnitude is real and
/// positive. Components whose magnitudes agree to a relative 1e-10 count as
/// tied and the lowest index wins.
struct HelicityBasis {
  static constexpr std::string_view kGauge = "largest-component-real-positive";

  Vec3 direction;
  std::array<Spinor, 3> states;  // indexed by helicity + 1

  const Spinor& state(int helicity) const { return states.at(static_cast<std::size_t>(helicity + 1)); }
};

HelicityBasis helicity_eigenstates(const Vec3& k_hat, const SpinTriple& spin);

/// Applies the documented gauge to a single vector in place.
void fix_gauge(Spinor& v);

}  // namespace fiberphase
