// Acceptance criteria: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fiberphase/evolution_engine.hpp"
#include "fiberphase/fock_phases.hpp"
#include "fiberphase/gyrotropic_media.hpp"
#include "fiberphase/harness.hpp"
#include "oracles.hpp"

using namespace fiberphase;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kLambda = oracle::kPi / 3.0;

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++failures;
}

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const SpinTriple& spin() {
  static const SpinTriple s = spin1_matrices();
  return s;
}

double final_geometric(const FiberPath& path, int sigma) {
  return phase_decomposition(evolve(path, spin(), sigma), path, spin()).geometric.back();
}

double max_invariant_residual(const FiberPath& p) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) worst = std::max(worst, invariant_residual(p, spin(), i));
  return worst;
}

double max_motion_residual(const FiberPath& p) {
  const auto r = motion_residual(p);
  return *std::max_element(r.begin(), r.end());
}

double max_rotation_gap(const FiberPath& p) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    worst = std::max(worst,
                     (hamiltonian_from_rotation(p, spin(), i) - effective_hamiltonian(p, spin(), i).matrix).norm());
  }
  return worst;
}

double commutator_defect(const SpinTriple& s) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    const Mat3c d = s[i] * s[j] - s[j] * s[i] - Complex(0.0, 1.0) * s[k];
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  return worst;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void cyclic_adiabatic_phase() {
  const auto start = Clock::now();
  const FiberPath path = helix_path(kLambda, 1.0, 1.0, 1.0, 4096);
  const double plus = final_geometric(path, 1);
  const double minus = final_geometric(path, -1);
  const double elapsed = seconds_since(start);
  const double err = std::max(std::abs(plus - oracle::kPi), std::abs(minus + oracle::kPi));
  report("AC1", err < 1e-3 && elapsed < 1.0,
         format("cyclic phase, lambda=pi/3, 4096 steps: sigma=+1 %.9f, sigma=-1 %.9f, max |err| %.2e (< 1e-3), "
                "runtime %.3f s (< 1 s)",
                plus, minus, err, elapsed));
}

void vacuum_cancellation() {
  double worst = 0.0;
  std::size_t samples = 0;
  for (double lambda : {oracle::kPi / 6.0, oracle::kPi / 3.0, oracle::kPi / 2.0}) {
    const SphericalAngles a = spherical_angles(helix_path(lambda, 1.0, 1.0, 1.0, 4096));
    for (std::size_t i = 0; i < a.size(); ++i, ++samples) {
      worst = std::max(worst, std::abs(vacuum_phase(1, a, i) + vacuum_phase(-1, a, i)));
    }
  }
  report("AC2", worst < 1e-14,
         format("vacuum halves cancel at %zu samples over lambda in {pi/6, pi/3, pi/2}: max |sum| %.2e (< 1e-14)",
                samples, worst));
}

void vacuum_isolation() {
  GyrotropicMedium m;
  m.eps1 = 2.0;
  m.eps2 = 3.0;
  m.mu1 = 2.0;
  m.mu2 = 1.0;
  const IndexSquared n = refractive_indices_squared(m);
  const NetVacuumPhase analytic = net_vacuum_phase(m, 1.0, std::nullopt, oracle::cone_solid_angle(kLambda));
  const SphericalAngles a = spherical_angles(helix_path(kLambda, 1.0, 1.0, 1.0, 4096));
  const NetVacuumPhase sampled = net_vacuum_phase(m, 1.0, std::nullopt, a, a.size() - 1);
  const double err = std::max(std::abs(analytic.phase - oracle::kPi / 2.0), std::abs(sampled.phase - oracle::kPi / 2.0));
  const bool ok = n.plus == 15.0 && n.minus == -1.0 && err < 1e-12 && analytic.plus_survives && !analytic.minus_survives;
  report("AC3", ok,
         format("gyrotropic (2,3,2,1): n2+ = %.17g, n2- = %.17g; net vacuum phase %.15f (path %.15f), "
                "|err| %.2e (< 1e-12)",
                n.plus, n.minus, analytic.phase, sampled.phase, err));
}

void ordering_ledger() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> occ(0, 20);
  std::uniform_real_distribution<double> lam(0.0, oracle::kPi);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int nl = occ(rng);
    const int nr = occ(rng);
    const double lambda = lam(rng);
    const double half = 0.5 * 2.0 * oracle::kPi * (1.0 - std::cos(lambda));
    const CyclicPhases s = cyclic_phases(nl, nr, lambda, Ordering::Symmetric);
    const CyclicPhases n = cyclic_phases(nl, nr, lambda, Ordering::Normal);
    worst = std::max(worst, std::abs((s.phi_left - n.phi_left) + half));
    worst = std::max(worst, std::abs((s.phi_right - n.phi_right) - half));
  }
  report("AC4", worst < 1e-12,
         format("symmetric minus normal ordering over 50 random (n_L, n_R, lambda): max deviation from "
                "(-1/2, +1/2) x cone area %.2e (< 1e-12)",
                worst));
}

// Convergence under step halving. A ratio below the roundoff floor on both
// grids means the stencil is already exact for this path.
bool converges(double coarse, double fine, double min_ratio) {
  if (coarse <= kRoundoffFloor && fine <= kRoundoffFloor) return true;
  return fine > 0.0 ? coarse / fine >= min_ratio : coarse > 0.0;
}

void method_consistency() {
  const auto start = Clock::now();
  const FiberPath coarse = helix_path(kLambda, 1.0, 1.0, 1.0, 1024);
  const FiberPath fine = helix_path(kLambda, 1.0, 1.0, 1.0, 2048);
  const double gap_c = max_rotation_gap(coarse);
  const double gap_f = max_rotation_gap(fine);
  const double inv_c = max_invariant_residual(coarse);
  const double inv_f = max_invariant_residual(fine);
  const double mot_c = max_motion_residual(coarse);
  const double mot_f = max_motion_residual(fine);
  // A cone traversed at varying angular speed, where the stencils are not exact.
  const FiberPath wob_c = sampled_path(oracle::wobble_direction, 0.0, 2.0 * oracle::kPi, 1024, 1.0);
  const FiberPath wob_f = sampled_path(oracle::wobble_direction, 0.0, 2.0 * oracle::kPi, 2048, 1.0);
  const double winv_c = max_invariant_residual(wob_c);
  const double winv_f = max_invariant_residual(wob_f);
  const double wmot_c = max_motion_residual(wob_c);
  const double wmot_f = max_motion_residual(wob_f);
  const double elapsed = seconds_since(start);

  const bool a = converges(gap_c, gap_f, 1.8);
  const bool b = inv_c < 1e-3 && converges(inv_c, inv_f, 3.6) && converges(winv_c, winv_f, 3.6) && winv_c < 1e-3;
  const bool c = converges(mot_c, mot_f, 3.6) && converges(wmot_c, wmot_f, 3.6);
  report("AC5", a && b && c && elapsed < 5.0,
         format("1024 -> 2048 steps: (a) |H_rot - H_eff| %.3e -> %.3e (ratio %.2f, >= 1.8); "
                "(b) invariant residual %.3e -> %.3e on the helix, %.3e -> %.3e (ratio %.2f) on a modulated cone; "
                "(c) motion residual %.3e -> %.3e (ratio %.2f) on the helix, ratio %.2f on the modulated cone; "
                "runtime %.3f s (< 5 s)",
                gap_c, gap_f, gap_c / gap_f, inv_c, inv_f, winv_c, winv_f, winv_c / winv_f, mot_c, mot_f,
                mot_c / mot_f, wmot_c / wmot_f, elapsed));
}

void noncyclic_formula() {
  const FiberPath half = helix_path(kLambda, 1.0, 1.0, 0.5, 2048);
  const SphericalAngles a = spherical_angles(half);
  const double plus = final_geometric(half, 1);
  const double minus = final_geometric(half, -1);
  const double target = oracle::kPi / 2.0;
  const double err = std::max(std::abs(plus - target), std::abs(minus + target));
  const double formula_err = std::abs(analytic_noncyclic_phase(a, 1, half.steps()) - target);
  report("AC6", err < 5e-3 && formula_err < 5e-3,
         format("half cycle, lambda=pi/3: sigma=+1 %.9f, sigma=-1 %.9f vs +-pi/2, max |err| %.2e (< 5e-3)", plus, minus,
                err));
}

void property_suite() {
  const double comm = commutator_defect(spin1_matrices());
  const double comm_cart = commutator_defect(cartesian_spin1_matrices());

  const FiberPath long_path = helix_path(kLambda, 1.0, 1.0, 3.0, 12000);
  const SpinorTrajectory tr = evolve(long_path, spin(), 1);
  double norm_drift = 0.0;
  for (const Spinor& psi : tr.states) norm_drift = std::max(norm_drift, std::abs(psi.norm() - 1.0));

  double hel_drift = 0.0;
  const FiberPath cycle = helix_path(kLambda, 1.0, 1.0, 1.0, 4096);
  for (int sigma : {1, -1}) {
    const SpinorTrajectory t = evolve(cycle, spin(), sigma);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const double h = t.states[i].dot(helicity_operator(cycle.direction(i), spin()) * t.states[i]).real();
      hel_drift = std::max(hel_drift, std::abs(h - sigma));
    }
  }

  const fs::path base = fs::temp_directory_path() / "fiberphase_acceptance";
  fs::remove_all(base);
  Scenario sc;
  sc.helix = HelixSpec{};
  sc.n_steps = 1024;
  sc.n_right = 1;
  bool identical = false;
  try {
    run_scenario(sc, base / "a");
    run_scenario(sc, base / "b");
    identical = true;
    for (const char* f : {"results.csv", "summary.json", "phase_spectrum.csv", "plot_geometric_sigma_p1.dat"}) {
      const std::string x = slurp(base / "a" / f);
      identical = identical && !x.empty() && x == slurp(base / "b" / f);
    }
  } catch (const std::exception& e) {
    std::printf("    determinism run failed: %s\n", e.what());
  }
  fs::remove_all(base);

  const bool ok = comm <= 1e-15 && comm_cart == 0.0 && norm_drift < 1e-10 && hel_drift < 1e-5 && identical;
  report("AC7", ok,
         format("commutator defect %.1e (m basis, <= 1e-15) / %.1e (Cartesian, exact); norm drift over %zu steps "
                "%.2e (< 1e-10); helicity drift %.2e (< 1e-5); outputs byte-identical across runs: %s",
                comm, comm_cart, long_path.steps(), norm_drift, hel_drift, identical ? "yes" : "no"));
}

}  // namespace

int main() {
  cyclic_adiabatic_phase();
  vacuum_cancellation();
  vacuum_isolation();
  ordering_ledger();
  method_consistency();
  noncyclic_formula();
  property_suite();
  std::printf("%s: %d of 7 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
