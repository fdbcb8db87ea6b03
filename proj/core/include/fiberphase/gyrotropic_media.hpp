#pragma once

#include <cstddef>
#include <optional>

#include "fiberphase/fiber_geometry.hpp"

namespace fiberphase {

/// Gyrotropic permittivity/permeability tensors
///   eps = [[e1, i e2, 0], [-i e2, e1, 0], [0, 0, e3]]   (mu likewise)
/// for propagation along the third axis. e3 and m3 do not enter the on-axis
/// dispersion and are carried only for completeness.
struct GyrotropicMedium {
  double eps1 = 1.0;
  double eps2 = 0.0;
  double eps3 = 1.0;
  double mu1 = 1.0;
  double mu2 = 0.0;
  double mu3 = 1.0;

  static GyrotropicMedium free_space() { return {}; }
  /// Throws std::invalid_argument if any parameter is non-finite.
  void validate() const;
};

/// Circular polarization: Plus is right-handed (helicity +1), Minus is
/// left-handed (helicity -1).
enum class Polarization { Plus, Minus };

struct IndexSquared {
  double plus;
  double minus;
};

/// n^2_+- = (e1 +- e2)(m1 +- m2).
IndexSquared refractive_indices_squared(const GyrotropicMedium& medium);

struct ModeStatus {
  double n2_plus;
  double n2_minus;
  bool plus_propagates;   // n2_plus > 0
  bool minus_propagates;  // n2_minus > 0
};

ModeStatus mode_status(const GyrotropicMedium& medium);

/// True when a mode of wave number k is expelled from a chamber of size a,
/// i.e. k < pi / a. Throws std::domain_error unless k > 0 and a > 0.
bool casimir_cutoff(double k, double a);

/// n * k0 for a propagating polarization, std::nullopt when n^2 <= 0
/// (evanescent). Throws std::domain_error unless k0 > 0.
std::optional<double> effective_wave_vector(const GyrotropicMedium& medium, double k0, Polarization polarization);

struct NetVacuumPhase {
  double phase = 0.0;
  bool plus_survives = false;
  bool minus_survives = false;
  /// Set when neither polarization survives; phase is then 0.
  bool no_propagating_mode = false;
};

/// Sum of vacuum phases over the polarizations that propagate in the medium
/// and, when a chamber size is given, are not expelled by the cutoff.
/// The on-axis classification is applied uniformly along the whole path.
NetVacuumPhase net_vacuum_phase(const GyrotropicMedium& medium, double k0, std::optional<double> chamber,
                                double solid_angle);
NetVacuumPhase net_vacuum_phase(const GyrotropicMedium& medium, double k0, std::optional<double> chamber,
                                const SphericalAngles& angles, std::size_t i);

}  // namespace fiberphase
