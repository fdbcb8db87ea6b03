#include "fiberphase/fock_phases.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fiberphase/evolution_engine.hpp"

namespace fiberphase {

namespace {

void require_occupation(int n) {
  if (n < 0) throw std::domain_error("occupation numbers must be non-negative");
}

double cone_solid_angle(double lambda) {
  if (!(lambda >= 0.0 && lambda <= kPi)) throw std::domain_error("cone angle must lie in [0, pi]");
  return 2.0 * kPi * (1.0 - std::cos(lambda));
}

}  // namespace

std::string_view to_string(Ordering ordering) {
  return ordering == Ordering::Normal ? "normal" : "symmetric";
}

Ordering parse_ordering(std::string_view text) {
  if (text == "normal") return Ordering::Normal;
  if (text == "symmetric") return Ordering::Symmetric;
  throw std::invalid_argument("ordering must be \"normal\" or \"symmetric\"");
}

FockLadder::FockLadder(int n_max, Ordering ordering) : n_max_(n_max), ordering_(ordering) {
  if (n_max < 1) throw std::invalid_argument("ladder truncation n_max must be at least 1");
}

std::size_t FockLadder::index(int n_left, int n_right) const {
  if (n_left < 0 || n_right < 0 || n_left > n_max_ || n_right > n_max_) {
    throw std::out_of_range("occupation outside the truncated ladder");
  }
  return static_cast<std::size_t>(n_left) * static_cast<std::size_t>(n_max_ + 1) + static_cast<std::size_t>(n_right);
}

int FockLadder::occupation(Mode mode, std::size_t index) const {
  if (index >= dimension()) throw std::out_of_range("ladder index out of range");
  const auto width = static_cast<std::size_t>(n_max_ + 1);
  return static_cast<int>(mode == Mode::Left ? index / width : index % width);
}

Eigen::VectorXd FockLadder::number_operator(Mode mode) const {
  Eigen::VectorXd diag(static_cast<Eigen::Index>(dimension()));
  for (std::size_t i = 0; i < dimension(); ++i) diag(static_cast<Eigen::Index>(i)) = occupation(mode, i);
  return diag;
}

double OrderedWeight::operator()(int n) const {
  require_occupation(n);
  return ordering == Ordering::Symmetric ? n + 0.5 : static_cast<double>(n);
}

CyclicPhases cyclic_phases(int n_left, int n_right, double lambda, Ordering ordering) {
  require_occupation(n_left);
  require_occupation(n_right);
  const double omega = cone_solid_angle(lambda);
  const OrderedWeight weight{ordering};
  return {-weight(n_left) * omega, weight(n_right) * omega};
}

double quantal_geometric_phase(int n_left, int n_right, double solid_angle) {
  require_occupation(n_left);
  require_occupation(n_right);
  return static_cast<double>(n_right - n_left) * solid_angle;
}

double quantal_geometric_phase(int n_left, int n_right, const SphericalAngles& angles, std::size_t i) {
  return quantal_geometric_phase(n_left, n_right, analytic_noncyclic_phase(angles, 1, i));
}

double vacuum_phase(int sigma, double solid_angle) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("vacuum phase helicity must be +1 or -1");
  return static_cast<double>(sigma) * 0.5 * solid_angle;
}

double vacuum_phase(int sigma, const SphericalAngles& angles, std::size_t i) {
  return vacuum_phase(sigma, analytic_noncyclic_phase(angles, 1, i));
}

FockWeightOperator fock_weight_operator(const FockLadder& ladder) {
  const auto dim = static_cast<Eigen::Index>(ladder.dimension());
  const OrderedWeight weight{ladder.ordering()};
  FockWeightOperator op{Eigen::VectorXd(dim), Eigen::VectorXd(dim), Eigen::VectorXd(dim)};
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    op.left(i) = -weight(ladder.occupation(Mode::Left, idx));
    op.right(i) = weight(ladder.occupation(Mode::Right, idx));
    op.combined(i) = op.right(i) + op.left(i);
  }
  return op;
}

std::vector<PhaseSpectrumRow> phase_spectrum(const FockLadder& ladder, double lambda) {
  std::vector<PhaseSpectrumRow> rows;
  rows.reserve(ladder.dimension());
  for (int nl = 0; nl <= ladder.n_max(); ++nl) {
    for (int nr = 0; nr <= ladder.n_max(); ++nr) {
      const CyclicPhases p = cyclic_phases(nl, nr, lambda, ladder.ordering());
      rows.push_back({nl, nr, p.phi_left, p.phi_right, p.total()});
    }
  }
  return rows;
}

}  // namespace fiberphase
