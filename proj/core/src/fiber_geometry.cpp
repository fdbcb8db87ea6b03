#include "fiberphase/fiber_geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fiberphase {

namespace {

constexpr double kUnitTolerance = 1e-9;
constexpr double kSpacingTolerance = 1e-6;
constexpr double kMaxAdjacentJump = 0.5;
constexpr double kPoleTolerance = 1e-9;

// Second-order first-derivative stencil shared by vectors and scalars.
template <typename T, typename Get>
T derivative_stencil(Get&& at, std::size_t n, double dt, std::size_t i) {
  if (n < 3) throw std::invalid_argument("derivative needs at least 3 samples");
  if (i >= n) throw std::out_of_range("sample index out of range");
  if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * dt);
  if (i == n - 1) return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * dt);
  return (at(i + 1) - at(i - 1)) / (2.0 * dt);
}

}  // namespace

FiberPath::FiberPath(std::vector<double> times, std::vector<Vec3> k_hat, double k_mag)
    : times_(std::move(times)), k_hat_(std::move(k_hat)), k_mag_(k_mag), dt_(0.0) {
  if (times_.size() != k_hat_.size()) throw std::invalid_argument("times and directions differ in length");
  if (times_.size() < 3) throw std::invalid_argument("a path needs at least 3 samples");
  if (!std::isfinite(k_mag_) || k_mag_ <= 0.0) throw std::invalid_argument("k_mag must be positive and finite");

  const std::size_t n = times_.size();
  dt_ = (times_.back() - times_.front()) / static_cast<double>(n - 1);
  if (!std::isfinite(dt_) || dt_ <= 0.0) throw std::invalid_argument("times must be strictly increasing");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double step = times_[i + 1] - times_[i];
    if (!(step > 0.0)) throw std::invalid_argument("times must be strictly increasing");
    if (std::abs(step - dt_) > kSpacingTolerance * dt_) {
      throw std::invalid_argument("time grid must be uniform (step " + std::to_string(i) + " deviates)");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!k_hat_[i].allFinite() || std::abs(k_hat_[i].norm() - 1.0) > kUnitTolerance) {
      throw std::invalid_argument("direction " + std::to_string(i) + " is not a unit vector");
    }
    if (i > 0 && (k_hat_[i] - k_hat_[i - 1]).norm() >= kMaxAdjacentJump) {
      throw std::invalid_argument("directions " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                  " are too far apart for finite differencing");
    }
  }
}

FiberPath helix_path(double lambda, double omega, double k_mag, double n_cycles, std::size_t n_steps) {
  if (!(lambda >= 0.0 && lambda <= kPi)) throw std::domain_error("helix cone angle must lie in [0, pi]");
  if (omega == 0.0 || !std::isfinite(omega)) throw std::domain_error("helix angular rate must be nonzero");
  if (!(n_cycles > 0.0) || !std::isfinite(n_cycles)) throw std::domain_error("helix cycle count must be positive");
  if (static_cast<double>(n_steps) < 16.0 * n_cycles) {
    throw std::invalid_argument("helix needs at least 16 steps per cycle");
  }
  const double duration = 2.0 * kPi * n_cycles / std::abs(omega);
  const double s = std::sin(lambda);
  const double c = std::cos(lambda);
  std::vector<double> times(n_steps + 1);
  std::vector<Vec3> dirs(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i) {
    const double t = duration * static_cast<double>(i) / static_cast<double>(n_steps);
    times[i] = t;
    dirs[i] = Vec3(s * std::cos(omega * t), s * std::sin(omega * t), c);
  }
  return FiberPath(std::move(times), std::move(dirs), k_mag);
}

FiberPath sampled_path(const std::function<Vec3(double)>& direction, double t0, double t1,
                       std::size_t n_steps, double k_mag) {
  if (n_steps < 2) throw std::invalid_argument("a path needs at least 3 samples");
  std::vector<double> times(n_steps + 1);
  std::vector<Vec3> dirs(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n_steps);
    times[i] = t;
    dirs[i] = direction(t).normalized();
  }
  return FiberPath(std::move(times), std::move(dirs), k_mag);
}

SphericalAngles spherical_angles(const FiberPath& path) {
  SphericalAngles out;
  out.dt = path.dt();
  out.lambda.resize(path.size());
  out.gamma.resize(path.size());
  double previous = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Vec3& k = path.direction(i);
    const double rho = std::hypot(k.x(), k.y());
    out.lambda[i] = std::atan2(rho, k.z());
    if (rho < kPoleTolerance) {
      out.gamma[i] = previous;
      continue;
    }
    double g = std::atan2(k.y(), k.x());
    if (i > 0) {
      g += 2.0 * kPi * std::round((previous - g) / (2.0 * kPi));
    }
    out.gamma[i] = g;
    previous = g;
  }
  return out;
}

Vec3 k_dot_at(const FiberPath& path, std::size_t i) {
  const auto& dirs = path.k_hat();
  const Vec3 unit_rate =
      derivative_stencil<Vec3>([&](std::size_t j) -> const Vec3& { return dirs[j]; }, dirs.size(), path.dt(), i);
  return path.k_mag() * unit_rate;
}

std::vector<Vec3> k_dot(const FiberPath& path) {
  std::vector<Vec3> out(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) out[i] = k_dot_at(path, i);
  return out;
}

std::vector<double> motion_residual(const FiberPath& path) {
  const double k2 = path.k_mag() * path.k_mag();
  std::vector<double> out(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Vec3 k = path.k_vector(i);
    const Vec3 kd = k_dot_at(path, i);
    out[i] = (kd + k.cross(k.cross(kd) / k2)).norm();
  }
  return out;
}

Vec3 rotation_vector(const FiberPath& path, std::size_t i) {
  if (i + 1 >= path.size()) throw std::out_of_range("rotation vector needs a following sample");
  return path.direction(i).cross(path.direction(i + 1));
}

double series_derivative(const std::vector<double>& values, double dt, std::size_t i) {
  return derivative_stencil<double>([&](std::size_t j) { return values[j]; }, values.size(), dt, i);
}

}  // namespace fiberphase
