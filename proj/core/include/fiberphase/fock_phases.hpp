#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fiberphase/fiber_geometry.hpp"

namespace fiberphase {

/// Operator ordering for the photon spin operator in second quantization.
/// Normal drops zero-point terms; Symmetric keeps (a^dagger a + a a^dagger)/2 = n + 1/2.
enum class Ordering { Normal, Symmetric };

std::string_view to_string(Ordering ordering);
Ordering parse_ordering(std::string_view text);

enum class Mode { Left, Right };

/// Two-mode occupation space {|n_L, n_R>} truncated at n_max per mode.
/// Basis index of |n_L, n_R> is n_L * (n_max + 1) + n_R.
class FockLadder {
 public:
  explicit FockLadder(int n_max = 8, Ordering ordering = Ordering::Symmetric);

  int n_max() const noexcept { return n_max_; }
  Ordering ordering() const noexcept { return ordering_; }
  std::size_t dimension() const noexcept {
    const auto m = static_cast<std::size_t>(n_max_ + 1);
    return m * m;
  }
  std::size_t index(int n_left, int n_right) const;
  int occupation(Mode mode, std::size_t index) const;

  /// Diagonal of the number operator for one mode.
  Eigen::VectorXd number_operator(Mode mode) const;

 private:
  int n_max_;
  Ordering ordering_;
};

/// Spin weight per mode: n (normal) or n + 1/2 (symmetric).
struct OrderedWeight {
  Ordering ordering;
  double operator()(int n) const;
};

struct CyclicPhases {
  double phi_left;
  double phi_right;
  double total() const { return phi_left + phi_right; }
};

/// Cyclic cone phases phi_L = -w(n_L) * 2pi(1 - cos l), phi_R = +w(n_R) * 2pi(1 - cos l).
/// Throws std::domain_error for negative occupations or lambda outside [0, pi].
CyclicPhases cyclic_phases(int n_left, int n_right, double lambda, Ordering ordering);

/// (n_R - n_L) * Omega(t_i).
double quantal_geometric_phase(int n_left, int n_right, const SphericalAngles& angles, std::size_t i);
double quantal_geometric_phase(int n_left, int n_right, double solid_angle);

/// sigma * Omega(t_i) / 2. sigma = +1 is the right-handed mode.
double vacuum_phase(int sigma, const SphericalAngles& angles, std::size_t i);
double vacuum_phase(int sigma, double solid_angle);

/// Diagonal phase-generating weights on the ladder basis. The per-mode parts
/// are kept separately so the vacuum halves stay visible.
struct FockWeightOperator {
  Eigen::VectorXd left;      // -w(n_L)
  Eigen::VectorXd right;     // +w(n_R)
  Eigen::VectorXd combined;  // right + left
};

FockWeightOperator fock_weight_operator(const FockLadder& ladder);

struct PhaseSpectrumRow {
  int n_left;
  int n_right;
  double phi_left;
  double phi_right;
  double phi_total;
};

/// Cyclic phases for every (n_L, n_R) in the ladder, n_L-major.
std::vector<PhaseSpectrumRow> phase_spectrum(const FockLadder& ladder, double lambda);

}  // namespace fiberphase
