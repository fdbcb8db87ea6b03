#include "fiberphase/evolution_engine.hpp"

#include <cmath>
#include <stdexcept>

namespace fiberphase {

namespace {

constexpr double kOrthogonalOverlap = 1e-9;

void require_helicity(int sigma) {
  if (sigma != 1 && sigma != -1) {
    throw std::invalid_argument("photon helicity must be +1 or -1");
  }
}

double wrap_to_pi(double x) {
  return x - 2.0 * kPi * std::round(x / (2.0 * kPi));
}

}  // namespace

HamiltonianSample effective_hamiltonian(const FiberPath& path, const SpinTriple& spin, std::size_t i) {
  const double k2 = path.k_mag() * path.k_mag();
  HamiltonianSample sample;
  sample.h = path.k_vector(i).cross(k_dot_at(path, i)) / k2;
  sample.matrix = spin.dot(sample.h);
  return sample;
}

std::vector<Vec3> hamiltonian_coefficients(const FiberPath& path) {
  const double k2 = path.k_mag() * path.k_mag();
  std::vector<Vec3> out(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    out[i] = path.k_vector(i).cross(k_dot_at(path, i)) / k2;
  }
  return out;
}

Mat3c hamiltonian_from_rotation(const FiberPath& path, const SpinTriple& spin, std::size_t i) {
  return spin.dot(rotation_vector(path, i) / path.dt());
}

Mat3c unitary_step(const Vec3& h, double dt, const SpinTriple& spin) {
  if (h.squaredNorm() == 0.0) return Mat3c::Identity();
  Eigen::SelfAdjointEigenSolver<Mat3c> solver(spin.dot(h));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed while building the step propagator");
  }
  const auto& v = solver.eigenvectors();
  Eigen::Vector3cd phases;
  for (int j = 0; j < 3; ++j) phases(j) = std::polar(1.0, -solver.eigenvalues()(j) * dt);
  return v * phases.asDiagonal() * v.adjoint();
}

SpinorTrajectory evolve(const FiberPath& path, const SpinTriple& spin, int helicity) {
  require_helicity(helicity);
  const std::vector<Vec3> h = hamiltonian_coefficients(path);
  SpinorTrajectory traj;
  traj.times = path.times();
  traj.initial_helicity = helicity;
  traj.states.reserve(path.size());
  traj.states.push_back(helicity_eigenstates(path.direction(0), spin).state(helicity));
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Vec3 mid = 0.5 * (h[i] + h[i + 1]);
    traj.states.push_back(unitary_step(mid, path.dt(), spin) * traj.states.back());
  }
  return traj;
}

double invariant_residual(const FiberPath& path, const SpinTriple& spin, std::size_t i, const Mat3c& hamiltonian) {
  if (i == 0 || i + 1 >= path.size()) {
    throw std::out_of_range("invariant residual needs an interior sample");
  }
  const Mat3c invariant = spin.dot(path.direction(i));
  const Mat3c rate = spin.dot((path.direction(i + 1) - path.direction(i - 1)) / (2.0 * path.dt()));
  const Complex minus_i{0.0, -1.0};
  const Mat3c lhs = rate + minus_i * (invariant * hamiltonian - hamiltonian * invariant);
  return lhs.norm();
}

double invariant_residual(const FiberPath& path, const SpinTriple& spin, std::size_t i) {
  return invariant_residual(path, spin, i, effective_hamiltonian(path, spin, i).matrix);
}

PhaseDecomposition phase_decomposition(const SpinorTrajectory& trajectory, const FiberPath& path,
                                       const SpinTriple& spin) {
  const std::size_t n = trajectory.states.size();
  if (n != path.size() || trajectory.times.size() != n) {
    throw std::invalid_argument("trajectory and path must share the time grid");
  }
  PhaseDecomposition out;
  out.total.assign(n, 0.0);
  out.dynamical.assign(n, 0.0);
  out.geometric.assign(n, 0.0);

  const Spinor& initial = trajectory.states.front();
  std::vector<bool> trusted(n, true);
  double last = 0.0;
  std::size_t last_index = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const Complex overlap = initial.dot(trajectory.states[i]);  // conjugates the left operand
    if (std::abs(overlap) < kOrthogonalOverlap) {
      trusted[i] = false;
      out.flagged.push_back(i);
      continue;
    }
    const double lag = -std::arg(overlap);
    out.total[i] = last + wrap_to_pi(lag - last);
    last = out.total[i];
    // Fill any flagged run between the previous trusted sample and this one.
    for (std::size_t j = last_index + 1; j < i; ++j) {
      const double w = static_cast<double>(j - last_index) / static_cast<double>(i - last_index);
      out.total[j] = (1.0 - w) * out.total[last_index] + w * out.total[i];
    }
    last_index = i;
  }
  for (std::size_t j = last_index + 1; j < n; ++j) out.total[j] = out.total[last_index];

  if (!out.flagged.empty()) {
    out.warnings.push_back(std::to_string(out.flagged.size()) +
                           " sample(s) pass orthogonal to the initial state (first at t = " +
                           std::to_string(trajectory.times[out.flagged.front()]) +
                           "); their total phase is interpolated");
  }

  double previous_energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Spinor& psi = trajectory.states[i];
    const double energy = psi.dot(effective_hamiltonian(path, spin, i).matrix * psi).real();
    if (i > 0) out.dynamical[i] = out.dynamical[i - 1] + 0.5 * (energy + previous_energy) * path.dt();
    previous_energy = energy;
    out.geometric[i] = out.total[i] - out.dynamical[i];
  }
  return out;
}

std::vector<double> swept_solid_angle(const SphericalAngles& angles) {
  const std::size_t n = angles.size();
  std::vector<double> omega(n, 0.0);
  if (n < 3) return omega;
  std::vector<double> integrand(n);
  for (std::size_t i = 0; i < n; ++i) {
    integrand[i] = series_derivative(angles.gamma, angles.dt, i) * (1.0 - std::cos(angles.lambda[i]));
  }
  for (std::size_t i = 1; i < n; ++i) {
    omega[i] = omega[i - 1] + 0.5 * (integrand[i - 1] + integrand[i]) * angles.dt;
  }
  return omega;
}

double analytic_noncyclic_phase(const SphericalAngles& angles, int sigma, std::size_t i) {
  if (i >= angles.size()) throw std::out_of_range("sample index out of range");
  return static_cast<double>(sigma) * swept_solid_angle(angles)[i];
}

}  // namespace fiberphase
