#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "fiberphase/errors.hpp"
#include "fiberphase/fiber_geometry.hpp"
#include "oracles.hpp"

namespace fiberphase {
namespace {

constexpr double kPi3 = oracle::kPi / 3.0;

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

FiberPath wobble(std::size_t n_steps) { return sampled_path(oracle::wobble_direction, 0.0, 6.0, n_steps, 1.0); }

TEST(HelixPath, DegenerateConeIsConstant) {
  const FiberPath p = helix_path(0.0, 1.0, 1.0, 1.0, 64);
  ASSERT_EQ(p.size(), 65u);
  for (const Vec3& k : p.k_hat()) EXPECT_TRUE(k == Vec3::UnitZ());
}

TEST(HelixPath, EquatorStaysInPlane) {
  const FiberPath p = helix_path(oracle::kPi / 2.0, 1.0, 1.0, 1.0, 256);
  for (const Vec3& k : p.k_hat()) EXPECT_LT(std::abs(k.z()), 1e-15);
  EXPECT_NEAR(p.times().back(), 2.0 * oracle::kPi, 1e-14);
}

TEST(HelixPath, AnglesRecoveredFromSamples) {
  const FiberPath p = helix_path(kPi3, 2.0, 5.0, 2.0, 512);
  const SphericalAngles a = spherical_angles(p);
  EXPECT_DOUBLE_EQ(p.k_mag(), 5.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_NEAR(a.lambda[i], kPi3, 1e-9);
    EXPECT_NEAR(a.gamma[i], 2.0 * p.times()[i], 1e-9);
  }
}

TEST(HelixPath, RejectsBadArguments) {
  EXPECT_THROW(helix_path(-0.1, 1.0, 1.0, 1.0, 64), std::domain_error);
  EXPECT_THROW(helix_path(3.2, 1.0, 1.0, 1.0, 64), std::domain_error);
  EXPECT_THROW(helix_path(1.0, 0.0, 1.0, 1.0, 64), std::domain_error);
  EXPECT_THROW(helix_path(1.0, 1.0, 1.0, 2.0, 31), std::invalid_argument);
  EXPECT_NO_THROW(helix_path(1.0, 1.0, 1.0, 2.0, 32));
}

TEST(SphericalAngles, PoleHoldsAzimuth) {
  const SphericalAngles a = spherical_angles(helix_path(0.0, 1.0, 1.0, 1.0, 64));
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.lambda[i], 0.0);
    EXPECT_EQ(a.gamma[i], 0.0);
  }
}

TEST(SphericalAngles, AzimuthUnwrapsMonotonically) {
  const SphericalAngles a = spherical_angles(helix_path(kPi3, 1.0, 1.0, 1.0, 256));
  for (std::size_t i = 1; i < a.size(); ++i) {
    EXPECT_GT(a.gamma[i], a.gamma[i - 1]);
    EXPECT_LT(a.gamma[i] - a.gamma[i - 1], oracle::kPi);
  }
  EXPECT_NEAR(a.gamma.back(), 2.0 * oracle::kPi, 1e-12);
}

TEST(SphericalAngles, ThreeCyclesWindSixPi) {
  const SphericalAngles a = spherical_angles(helix_path(kPi3, 1.0, 1.0, 3.0, 3 * 256));
  EXPECT_NEAR(a.gamma.back() - a.gamma.front(), 6.0 * oracle::kPi, 1e-6);
}

TEST(SphericalAngles, RoundTripReconstructsDirections) {
  for (double lambda : {0.1, kPi3, oracle::kPi / 2.0, 2.8}) {
    const FiberPath p = helix_path(lambda, 1.3, 1.0, 1.5, 300);
    const SphericalAngles a = spherical_angles(p);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Vec3 rebuilt(std::sin(a.lambda[i]) * std::cos(a.gamma[i]), std::sin(a.lambda[i]) * std::sin(a.gamma[i]),
                         std::cos(a.lambda[i]));
      worst = std::max(worst, (rebuilt - p.direction(i)).norm());
      worst = std::max(worst, std::abs(a.lambda[i] - lambda));
    }
    EXPECT_LT(worst, 1e-9) << "lambda = " << lambda;
  }
}

TEST(KDot, ConstantPathHasZeroDerivative) {
  for (const Vec3& v : k_dot(helix_path(0.0, 1.0, 2.0, 1.0, 64))) EXPECT_EQ(v.norm(), 0.0);
}

TEST(KDot, EquatorMatchesAnalyticDerivative) {
  const FiberPath p = helix_path(oracle::kPi / 2.0, 1.0, 1.0, 1.0, 256);
  const double dt2 = p.dt() * p.dt();
  const auto kd = k_dot(p);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_LT(std::abs(kd[i].norm() - 1.0), dt2);
    EXPECT_LT((kd[i] - oracle::cone_velocity(oracle::kPi / 2.0, 1.0, p.times()[i])).norm(), dt2);
  }
}

TEST(KDot, OrthogonalToDirectionForConstantMagnitude) {
  const FiberPath p = helix_path(kPi3, 1.0, 1.0, 1.0, 256);
  const auto kd = k_dot(p);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_LT(std::abs(kd[i].dot(p.direction(i))), p.dt() * p.dt());
}

TEST(KDot, SecondOrderOnWobblePath) {
  double err[2];
  for (int r = 0; r < 2; ++r) {
    const FiberPath p = wobble(512u << r);
    const auto kd = k_dot(p);
    err[r] = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      err[r] = std::max(err[r], (kd[i] - oracle::wobble_velocity(p.times()[i])).norm());
    }
  }
  EXPECT_NEAR(err[0] / err[1], 4.0, 0.4);
}

TEST(KDot, RejectsTooFewSamples) {
  EXPECT_THROW(series_derivative({1.0, 2.0}, 0.1, 0), std::invalid_argument);
}

TEST(MotionResidual, ConstantPathIsExactlyZero) {
  for (double r : motion_residual(helix_path(0.0, 1.0, 3.0, 1.0, 64))) EXPECT_EQ(r, 0.0);
}

TEST(MotionResidual, HelixSmallAndAtLeastSecondOrder) {
  // Uniform cones cancel the interior error exactly; the one-sided end
  // stencils leave an O(dt^3) remainder, so the ratio is at least 4.
  for (double lambda : {kPi3, oracle::kPi / 2.0}) {
    const double coarse = max_of(motion_residual(helix_path(lambda, 1.0, 1.0, 1.0, 512)));
    const double fine = max_of(motion_residual(helix_path(lambda, 1.0, 1.0, 1.0, 1024)));
    EXPECT_LT(coarse, 1e-3);
    EXPECT_GE(coarse / fine, 4.0 * 0.9) << "lambda = " << lambda;
  }
}

TEST(MotionResidual, ScalesWithWaveNumberAndRate) {
  const double k = 5.0;
  const double omega = 2.0;
  const double r = max_of(motion_residual(helix_path(kPi3, omega, k, 1.0, 512)));
  EXPECT_LT(r, 1e-3 * k * omega);
}

TEST(MotionResidual, SecondOrderOnWobblePath) {
  const double coarse = max_of(motion_residual(wobble(512)));
  const double fine = max_of(motion_residual(wobble(1024)));
  EXPECT_LT(coarse, 1e-3);
  EXPECT_NEAR(coarse / fine, 4.0, 0.4);
}

TEST(RotationVector, ConstantPathIsZero) {
  EXPECT_EQ(rotation_vector(helix_path(0.0, 1.0, 1.0, 1.0, 64), 10).norm(), 0.0);
}

TEST(RotationVector, EquatorStepIsAxial) {
  const FiberPath p = helix_path(oracle::kPi / 2.0, 1.0, 1.0, 1.0, 256);
  const double dt = p.dt();
  for (std::size_t i : {0u, 17u, 255u}) {
    EXPECT_LT((rotation_vector(p, i) - Vec3(0.0, 0.0, dt)).norm(), dt * dt * dt);
  }
}

TEST(RotationVector, ConvergesToEffectiveFieldRate) {
  double gap[2];
  for (int r = 0; r < 2; ++r) {
    const FiberPath p = helix_path(kPi3, 1.0, 1.0, 1.0, 512u << r);
    const auto kd = k_dot(p);
    gap[r] = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      const Vec3 expected = p.direction(i).cross(kd[i] / p.k_mag()) * p.dt();
      gap[r] = std::max(gap[r], (rotation_vector(p, i) - expected).norm());
    }
    EXPECT_LT(gap[r], p.dt() * p.dt());
  }
  EXPECT_NEAR(gap[0] / gap[1], 4.0, 0.4);  // the per-step difference is O(dt^2)
}

TEST(RotationVector, IndexOutOfRange) {
  const FiberPath p = helix_path(kPi3, 1.0, 1.0, 1.0, 64);
  EXPECT_THROW(rotation_vector(p, 64), std::out_of_range);
}

TEST(FiberPathValidation, RejectsInvalidSamples) {
  const std::vector<Vec3> dirs(4, Vec3::UnitZ());
  EXPECT_THROW(FiberPath({0, 1}, {Vec3::UnitZ(), Vec3::UnitZ()}, 1.0), std::invalid_argument);
  EXPECT_THROW(FiberPath({0, 1, 2, 4}, dirs, 1.0), std::invalid_argument);
  EXPECT_THROW(FiberPath({0, 1, 1, 2}, dirs, 1.0), std::invalid_argument);
  EXPECT_THROW(FiberPath({0, 1, 2, 3}, dirs, 0.0), std::invalid_argument);
  EXPECT_THROW(FiberPath({0, 1, 2, 3}, {Vec3::UnitZ(), Vec3::UnitZ(), Vec3(0, 0, 1.1), Vec3::UnitZ()}, 1.0),
               std::invalid_argument);
  EXPECT_THROW(FiberPath({0, 1, 2, 3}, {Vec3::UnitZ(), Vec3::UnitZ(), Vec3::UnitX(), Vec3::UnitX()}, 1.0),
               std::invalid_argument);
  EXPECT_NO_THROW(FiberPath({0, 1, 2, 3}, dirs, 1.0));
}

TEST(PathImport, ParsesRecordsAndComments) {
  std::istringstream in(
      "# t kx ky kz\n"
      "0.0  0 0 2   # start\n"
      "\n"
      "0.1  0.2 0 1.98997487421324\n"
      "0.2  0.4 0 1.95959179422654\n"
      "0.3  0.6 0 1.90787840283389\n");
  const FiberPath p = read_path(in);
  EXPECT_EQ(p.size(), 4u);
  EXPECT_DOUBLE_EQ(p.k_mag(), 2.0);
  EXPECT_NEAR(p.dt(), 0.1, 1e-15);
  EXPECT_NEAR(p.direction(1).x(), 0.1, 1e-12);
}

TEST(PathImport, RejectsMagnitudeDrift) {
  std::istringstream in("0 0 0 1\n1 0 0.1 1\n2 0 0.2 1\n");
  try {
    read_path(in);
    FAIL() << "expected PathFormatError";
  } catch (const PathFormatError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(PathImport, RejectsMalformedLines) {
  std::istringstream three("0 0 0 1\n1 0 1\n");
  EXPECT_THROW(read_path(three), PathFormatError);
  std::istringstream junk("0 0 0 1\n1 0 x 1\n");
  EXPECT_THROW(read_path(junk), PathFormatError);
  std::istringstream short_file("0 0 0 1\n1 0 0 1\n");
  EXPECT_THROW(read_path(short_file), PathFormatError);
  EXPECT_THROW(load_path("/nonexistent/path.txt"), IoError);
}

TEST(PathImport, WriteThenReadPreservesSamples) {
  const FiberPath p = helix_path(kPi3, 1.0, 3.0, 1.0, 64);
  std::stringstream buf;
  write_path(buf, p);
  const FiberPath q = read_path(buf);
  ASSERT_EQ(q.size(), p.size());
  EXPECT_NEAR(q.k_mag(), 3.0, 1e-15);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_LT((q.direction(i) - p.direction(i)).norm(), 1e-15);
}

}  // namespace
}  // namespace fiberphase
