#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "fiberphase/types.hpp"

namespace fiberphase {

/// Wave-vector trajectory k(t) = k_mag * k_hat(t) sampled on a uniform grid.
///
/// Construction validates: at least 3 samples, strictly increasing uniform
/// times (relative spacing tolerance 1e-6), unit directions within 1e-9,
/// adjacent directions closer than 0.5, and a positive finite k_mag.
class FiberPath {
 public:
  FiberPath(std::vector<double> times, std::vector<Vec3> k_hat, double k_mag);

  std::size_t size() const noexcept { return times_.size(); }
  std::size_t steps() const noexcept { return times_.size() - 1; }
  double dt() const noexcept { return dt_; }
  double k_mag() const noexcept { return k_mag_; }

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<Vec3>& k_hat() const noexcept { return k_hat_; }
  const Vec3& direction(std::size_t i) const { return k_hat_.at(i); }
  Vec3 k_vector(std::size_t i) const { return k_mag_ * k_hat_.at(i); }

 private:
  std::vector<double> times_;
  std::vector<Vec3> k_hat_;
  double k_mag_;
  double dt_;
};

/// Polar angle lambda in [0, pi] and continuously unwrapped azimuth gamma,
/// one entry per path sample. dt is the path's time step.
struct SphericalAngles {
  std::vector<double> lambda;
  std::vector<double> gamma;
  double dt = 0.0;

  std::size_t size() const noexcept { return lambda.size(); }
};

/// Cone path k_hat(t) = (sin l cos wt, sin l sin wt, cos l) on
/// [0, 2 pi n_cycles / w] with n_steps uniform intervals (n_steps + 1 samples).
/// Requires n_steps >= 16 per cycle.
FiberPath helix_path(double lambda, double omega, double k_mag, double n_cycles, std::size_t n_steps);

/// Samples an arbitrary direction function on [t0, t1]; each sample is
/// normalized before storage.
FiberPath sampled_path(const std::function<Vec3(double)>& direction, double t0, double t1,
                       std::size_t n_steps, double k_mag);

/// Reads the "t kx ky kz" text format. Blank lines and text after '#' are
/// ignored. k_mag is the norm of the first vector; later norms must agree to a
/// relative 1e-6. Throws PathFormatError on malformed records.
FiberPath read_path(std::istream& in);
FiberPath load_path(const std::filesystem::path& file);
void write_path(std::ostream& out, const FiberPath& path);

/// lambda from k_hat, gamma = atan2(ky, kx) unwrapped. Where sin(lambda) < 1e-9
/// gamma holds its previous value (0 at the first sample).
SphericalAngles spherical_angles(const FiberPath& path);

/// dk/dt at sample i: central differences inside, second-order one-sided
/// stencils at both ends.
Vec3 k_dot_at(const FiberPath& path, std::size_t i);
std::vector<Vec3> k_dot(const FiberPath& path);

/// |k_dot + k x (k x k_dot)/k^2| per sample. Identically zero for exact
/// constant-|k| motion, so the values measure discretization error.
std::vector<double> motion_residual(const FiberPath& path);

/// Infinitesimal rotation vector (k(t_i) x k(t_{i+1}))/k^2. Requires i < size()-1.
Vec3 rotation_vector(const FiberPath& path, std::size_t i);

/// Same stencil as k_dot applied to a scalar series sampled with step dt.
double series_derivative(const std::vector<double>& values, double dt, std::size_t i);

}  // namespace fiberphase
