#include "fiberphase/gyrotropic_media.hpp"

#include <cmath>
#include <stdexcept>

#include "fiberphase/evolution_engine.hpp"
#include "fiberphase/fock_phases.hpp"

namespace fiberphase {

void GyrotropicMedium::validate() const {
  for (double v : {eps1, eps2, eps3, mu1, mu2, mu3}) {
    if (!std::isfinite(v)) throw std::invalid_argument("medium parameters must be finite");
  }
}

IndexSquared refractive_indices_squared(const GyrotropicMedium& medium) {
  medium.validate();
  return {(medium.eps1 + medium.eps2) * (medium.mu1 + medium.mu2),
          (medium.eps1 - medium.eps2) * (medium.mu1 - medium.mu2)};
}

ModeStatus mode_status(const GyrotropicMedium& medium) {
  const IndexSquared n2 = refractive_indices_squared(medium);
  return {n2.plus, n2.minus, n2.plus > 0.0, n2.minus > 0.0};
}

bool casimir_cutoff(double k, double a) {
  if (!(k > 0.0) || !(a > 0.0)) throw std::domain_error("wave number and chamber size must be positive");
  return k < kPi / a;
}

std::optional<double> effective_wave_vector(const GyrotropicMedium& medium, double k0, Polarization polarization) {
  if (!(k0 > 0.0)) throw std::domain_error("vacuum wave number must be positive");
  const IndexSquared n2 = refractive_indices_squared(medium);
  const double value = polarization == Polarization::Plus ? n2.plus : n2.minus;
  if (!(value > 0.0)) return std::nullopt;
  return std::sqrt(value) * k0;
}

NetVacuumPhase net_vacuum_phase(const GyrotropicMedium& medium, double k0, std::optional<double> chamber,
                                double solid_angle) {
  const auto survives = [&](Polarization p) {
    const std::optional<double> k = effective_wave_vector(medium, k0, p);
    if (!k) return false;
    return !chamber || !casimir_cutoff(*k, *chamber);
  };
  NetVacuumPhase out;
  out.plus_survives = survives(Polarization::Plus);
  out.minus_survives = survives(Polarization::Minus);
  out.no_propagating_mode = !out.plus_survives && !out.minus_survives;
  if (out.plus_survives) out.phase += vacuum_phase(+1, solid_angle);
  if (out.minus_survives) out.phase += vacuum_phase(-1, solid_angle);
  return out;
}

NetVacuumPhase net_vacuum_phase(const GyrotropicMedium& medium, double k0, std::optional<double> chamber,
                                const SphericalAngles& angles, std::size_t i) {
  return net_vacuum_phase(medium, k0, chamber, analytic_noncyclic_phase(angles, 1, i));
}

}  // namespace fiberphase
