#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fiberphase/fiber_geometry.hpp"
#include "fiberphase/spin_algebra.hpp"

namespace fiberphase {

/// H_eff(t_i) = h . S with h = (k x k_dot)/k^2.
struct HamiltonianSample {
  Vec3 h;
  Mat3c matrix;
};

HamiltonianSample effective_hamiltonian(const FiberPath& path, const SpinTriple& spin, std::size_t i);

/// Coefficient vectors h(t_i) for every sample.
std::vector<Vec3> hamiltonian_coefficients(const FiberPath& path);

/// Hamiltonian assembled from the infinitesimal rotation between samples i and
/// i+1: (theta / dt) . S. Agrees with effective_hamiltonian to first order in dt.
Mat3c hamiltonian_from_rotation(const FiberPath& path, const SpinTriple& spin, std::size_t i);

/// exp(-i (h . S) dt), built from the spectral decomposition of h . S.
Mat3c unitary_step(const Vec3& h, double dt, const SpinTriple& spin);

struct SpinorTrajectory {
  std::vector<double> times;
  std::vector<Spinor> states;
  int initial_helicity = 1;
};

/// Integrates i d(psi)/dt = H_eff psi from the gauge-fixed helicity eigenstate
/// of k_hat(t_0). Each step applies the exact exponential of the Hamiltonian at
/// the interval midpoint (h linearly interpolated). helicity must be +1 or -1.
SpinorTrajectory evolve(const FiberPath& path, const SpinTriple& spin, int helicity);

/// Frobenius norm of dI/dt + (1/i)[I, H] at an interior sample, with
/// I = k_hat . S and dI/dt from central differences. The first overload uses
/// H_eff; the second takes any Hamiltonian (used as a negative control).
double invariant_residual(const FiberPath& path, const SpinTriple& spin, std::size_t i);
double invariant_residual(const FiberPath& path, const SpinTriple& spin, std::size_t i, const Mat3c& hamiltonian);

/// Phase record along a trajectory, in radians.
///
/// Sign convention: phases are phase lags, psi(t) ~ exp(-i phi) psi(0), so
///   total     = -arg <psi(0)|psi(t)>   (continuously unwrapped)
///   dynamical = +integral <psi|H|psi> dt   (trapezoidal)
///   geometric = total - dynamical.
/// In this convention a helicity-sigma photon carried once around a cone of
/// half-angle lambda picks up geometric phase +sigma * 2 pi (1 - cos lambda).
struct PhaseDecomposition {
  std::vector<double> total;
  std::vector<double> dynamical;
  std::vector<double> geometric;
  /// Samples with |<psi(0)|psi(t)>| < 1e-9; their total phase is interpolated
  /// from the nearest trusted neighbours.
  std::vector<std::size_t> flagged;
  std::vector<std::string> warnings;
};

PhaseDecomposition phase_decomposition(const SpinorTrajectory& trajectory, const FiberPath& path,
                                       const SpinTriple& spin);

/// Omega(t_i) = integral_0^{t_i} gamma_dot (1 - cos lambda) dt', trapezoidal,
/// gamma_dot from the same stencils as k_dot. Omega(0) = 0.
std::vector<double> swept_solid_angle(const SphericalAngles& angles);

/// sigma * Omega(t_i).
double analytic_noncyclic_phase(const SphericalAngles& angles, int sigma, std::size_t i);

}  // namespace fiberphase
