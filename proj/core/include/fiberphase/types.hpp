#pragma once

#include <complex>

#include <Eigen/Dense>

namespace fiberphase {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Spinor = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace fiberphase
