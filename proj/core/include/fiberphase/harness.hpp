#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fiberphase/fiber_geometry.hpp"
#include "fiberphase/fock_phases.hpp"
#include "fiberphase/gyrotropic_media.hpp"

namespace fiberphase {

inline constexpr int kSummarySchemaVersion = 1;

struct HelixSpec {
  double lambda = kPi / 3.0;
  double omega = 1.0;
  double k_mag = 1.0;
  double n_cycles = 1.0;
};

enum class SweepParameter { Lambda, NSteps, Occupations };

struct SweepSpec {
  SweepParameter parameter = SweepParameter::Lambda;
  std::vector<double> lambdas;
  std::vector<std::size_t> n_steps;
  std::vector<std::pair<int, int>> occupations;  // (n_L, n_R)

  std::size_t size() const;
};

/// One simulation configuration. Exactly one of helix / path_file is set.
struct Scenario {
  std::optional<HelixSpec> helix;
  std::optional<std::filesystem::path> path_file;
  std::size_t n_steps = 4096;
  std::vector<int> sigmas{1, -1};
  int n_left = 0;
  int n_right = 0;
  Ordering ordering = Ordering::Symmetric;
  int n_max = 8;
  std::optional<GyrotropicMedium> medium;
  std::optional<double> chamber_length;
  double k0 = 1.0;
  std::filesystem::path output_dir = "fiberphase_out";
  std::optional<SweepSpec> sweep;
};

/// Parses the JSON scenario format. Angles are radians, or strings with a
/// "deg" suffix. Relative path_file entries resolve against base_dir.
/// Throws ConfigError naming the field (and line for syntax errors).
Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& file);

/// Parses an angle given as "<number>" (radians) or "<number>deg".
double parse_angle(const std::string& text);

/// Builds the scenario's path (generated helix or imported file).
FiberPath build_path(const Scenario& scenario);

/// One results.csv record.
struct ResultRow {
  int sigma;
  double t;
  double lambda;
  double gamma;
  double phase_total;
  double phase_dynamical;
  double phase_geometric;
  double phase_analytic;
  double phase_quantal;
  double phase_vacuum_left;
  double phase_vacuum_right;
  double phase_vacuum_net;
  double norm_drift;
  double helicity_drift;
  std::optional<double> invariant_residual;  // absent at the path endpoints
  double motion_residual;
  bool flagged;
};

struct HelicityRunSummary {
  int sigma;
  double phase_total;
  double phase_dynamical;
  double phase_geometric;
  double phase_analytic;
  double max_norm_drift;
  double max_helicity_drift;
  std::size_t flagged_samples;
};

struct RunSummary {
  std::size_t n_samples = 0;
  double dt = 0.0;
  double duration = 0.0;
  double k_mag = 0.0;
  std::vector<HelicityRunSummary> runs;
  double solid_angle = 0.0;
  double phase_quantal = 0.0;
  double phase_vacuum_left = 0.0;
  double phase_vacuum_right = 0.0;
  NetVacuumPhase vacuum_net;
  ModeStatus modes{};
  std::optional<double> k_plus;
  std::optional<double> k_minus;
  std::optional<CyclicPhases> cyclic;  // helix paths only
  double max_invariant_residual = 0.0;
  double max_motion_residual = 0.0;
  double max_rotation_gap = 0.0;
  std::vector<std::string> warnings;

  const HelicityRunSummary* run_for(int sigma) const;
};

struct ScenarioResult {
  std::vector<ResultRow> rows;
  RunSummary summary;
  std::vector<PhaseSpectrumRow> spectrum;  // helix paths only
};

/// Runs every pipeline of the scenario without touching the filesystem
/// (except reading an imported path). Throws NumericalError on NaN/Inf.
ScenarioResult simulate(const Scenario& scenario);

/// Writes results.csv, summary.json, phase_spectrum.csv (helix) and plot_*.dat.
void write_results(const ScenarioResult& result, const Scenario& scenario, const std::filesystem::path& out_dir);

/// simulate + write_results.
ScenarioResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir);

struct SweepPoint {
  double lambda;
  std::size_t n_steps;
  int n_left;
  int n_right;
  RunSummary summary;
};

struct SweepResult {
  SweepParameter parameter;
  std::vector<SweepPoint> points;  // sorted by sweep key
  /// Observed orders log(r_a / r_b) / log(n_b / n_a) between consecutive
  /// n_steps points; nullopt when both residuals sit below the roundoff floor.
  std::vector<std::optional<double>> invariant_orders;
  std::vector<std::optional<double>> motion_orders;
};

/// Residual magnitude below which convergence orders are not meaningful.
inline constexpr double kRoundoffFloor = 1e-12;

std::optional<double> observed_order(double coarse, double fine, double refinement);

SweepResult sweep(const Scenario& scenario);
void write_sweep(const SweepResult& result, const Scenario& scenario, const std::filesystem::path& out_dir);
SweepResult run_sweep(const Scenario& scenario, const std::filesystem::path& out_dir);

std::string_view to_string(SweepParameter parameter);

}  // namespace fiberphase

namespace fiberphase {

struct CheckResult {
  std::string name;
  bool passed;
  double worst;  // largest deviation observed
};

/// Self-test of the spin algebra and propagator invariants (the CLI `check`).
std::vector<CheckResult> self_check();

}  // namespace fiberphase
