#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <system_error>

#include <json.hpp>

#include "fiberphase/errors.hpp"
#include "fiberphase/evolution_engine.hpp"
#include "fiberphase/harness.hpp"
#include "fiberphase/spin_algebra.hpp"

namespace fiberphase {

namespace {

using nlohmann::json;

constexpr std::size_t kMinSteps = 64;

struct HelicityRun {
  HelicityRunSummary summary;
  std::vector<ResultRow> rows;
  std::vector<std::string> warnings;
};

// Quantities shared by every helicity of one scenario.
struct PathAnalysis {
  SphericalAngles angles;
  std::vector<double> solid_angle;
  std::vector<double> motion;
  std::vector<std::optional<double>> invariant;
  std::vector<double> vacuum_net;
};

HelicityRun run_helicity(const FiberPath& path, const SpinTriple& spin, const PathAnalysis& shared,
                         const Scenario& sc, int sigma) {
  const SpinorTrajectory traj = evolve(path, spin, sigma);
  const PhaseDecomposition phases = phase_decomposition(traj, path, spin);

  HelicityRun run;
  run.warnings = phases.warnings;
  std::vector<bool> flagged(path.size(), false);
  for (std::size_t i : phases.flagged) flagged[i] = true;

  HelicityRunSummary& s = run.summary;
  s.sigma = sigma;
  s.max_norm_drift = 0.0;
  s.max_helicity_drift = 0.0;
  s.flagged_samples = phases.flagged.size();
  run.rows.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Spinor& psi = traj.states[i];
    const double norm_drift = std::abs(psi.norm() - 1.0);
    const double helicity = psi.dot(spin.dot(path.direction(i)) * psi).real();
    const double helicity_drift = std::abs(helicity - sigma);
    s.max_norm_drift = std::max(s.max_norm_drift, norm_drift);
    s.max_helicity_drift = std::max(s.max_helicity_drift, helicity_drift);

    const double omega = shared.solid_angle[i];
    ResultRow row{};
    row.sigma = sigma;
    row.t = path.times()[i];
    row.lambda = shared.angles.lambda[i];
    row.gamma = shared.angles.gamma[i];
    row.phase_total = phases.total[i];
    row.phase_dynamical = phases.dynamical[i];
    row.phase_geometric = phases.geometric[i];
    row.phase_analytic = sigma * omega;
    row.phase_quantal = quantal_geometric_phase(sc.n_left, sc.n_right, omega);
    row.phase_vacuum_left = vacuum_phase(-1, omega);
    row.phase_vacuum_right = vacuum_phase(+1, omega);
    row.phase_vacuum_net = shared.vacuum_net[i];
    row.norm_drift = norm_drift;
    row.helicity_drift = helicity_drift;
    row.invariant_residual = shared.invariant[i];
    row.motion_residual = shared.motion[i];
    row.flagged = flagged[i];
    run.rows.push_back(row);
  }
  const std::size_t last = path.size() - 1;
  s.phase_total = phases.total[last];
  s.phase_dynamical = phases.dynamical[last];
  s.phase_geometric = phases.geometric[last];
  s.phase_analytic = sigma * shared.solid_angle[last];
  return run;
}

bool finite(double v) { return std::isfinite(v); }

void check_finite(const ScenarioResult& r) {
  for (const ResultRow& row : r.rows) {
    const double values[] = {row.t, row.lambda, row.gamma, row.phase_total, row.phase_dynamical,
                             row.phase_geometric, row.phase_analytic, row.phase_quantal, row.phase_vacuum_left,
                             row.phase_vacuum_right, row.phase_vacuum_net, row.norm_drift, row.helicity_drift,
                             row.motion_residual, row.invariant_residual.value_or(0.0)};
    if (!std::all_of(std::begin(values), std::end(values), finite)) {
      throw NumericalError("non-finite value at t = " + std::to_string(row.t) + " (sigma " +
                           std::to_string(row.sigma) + ")");
    }
  }
  const RunSummary& s = r.summary;
  if (!finite(s.max_invariant_residual) || !finite(s.max_motion_residual) || !finite(s.max_rotation_gap) ||
      !finite(s.vacuum_net.phase) || !finite(s.phase_quantal)) {
    throw NumericalError("non-finite value in run summary");
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

std::string sigma_tag(int sigma) { return sigma > 0 ? "p1" : "m1"; }

std::ofstream open_output(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + file.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& file) {
  out.flush();
  if (!out) throw IoError("write failed for " + file.string());
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
  }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json summary_json(const RunSummary& s, const Scenario& sc) {
  json j;
  j["schema_version"] = kSummarySchemaVersion;

  json path;
  path["source"] = sc.helix ? "helix" : "file";
  if (sc.helix) {
    path["helix"] = {{"lambda", sc.helix->lambda},
                     {"omega", sc.helix->omega},
                     {"k_mag", sc.helix->k_mag},
                     {"n_cycles", sc.helix->n_cycles}};
  } else {
    path["file"] = sc.path_file->generic_string();
  }
  path["n_samples"] = s.n_samples;
  path["dt"] = s.dt;
  path["duration"] = s.duration;
  path["k_mag"] = s.k_mag;
  j["path"] = path;

  json runs = json::array();
  for (const HelicityRunSummary& r : s.runs) {
    runs.push_back({{"sigma", r.sigma},
                    {"phase_total", r.phase_total},
                    {"phase_dynamical", r.phase_dynamical},
                    {"phase_geometric", r.phase_geometric},
                    {"phase_analytic", r.phase_analytic},
                    {"max_norm_drift", r.max_norm_drift},
                    {"max_helicity_drift", r.max_helicity_drift},
                    {"flagged_samples", r.flagged_samples}});
  }
  j["helicity_runs"] = runs;
  j["solid_angle"] = s.solid_angle;
  j["quantal"] = {{"n_L", sc.n_left}, {"n_R", sc.n_right}, {"phase", s.phase_quantal}};
  if (s.cyclic) {
    j["cyclic_per_cycle"] = {{"ordering", std::string(to_string(sc.ordering))},
                             {"phi_L", s.cyclic->phi_left},
                             {"phi_R", s.cyclic->phi_right},
                             {"phi_total", s.cyclic->total()}};
  }
  j["vacuum"] = {{"phase_L", s.phase_vacuum_left},
                 {"phase_R", s.phase_vacuum_right},
                 {"net", s.vacuum_net.phase},
                 {"plus_survives", s.vacuum_net.plus_survives},
                 {"minus_survives", s.vacuum_net.minus_survives},
                 {"no_propagating_mode", s.vacuum_net.no_propagating_mode}};
  const GyrotropicMedium m = sc.medium.value_or(GyrotropicMedium::free_space());
  j["medium"] = {{"eps1", m.eps1},
                 {"eps2", m.eps2},
                 {"eps3", m.eps3},
                 {"mu1", m.mu1},
                 {"mu2", m.mu2},
                 {"mu3", m.mu3},
                 {"n2_plus", s.modes.n2_plus},
                 {"n2_minus", s.modes.n2_minus},
                 {"plus_propagates", s.modes.plus_propagates},
                 {"minus_propagates", s.modes.minus_propagates},
                 {"k0", sc.k0},
                 {"k_plus", optional_number(s.k_plus)},
                 {"k_minus", optional_number(s.k_minus)},
                 {"chamber_length", optional_number(sc.chamber_length)}};
  j["diagnostics"] = {{"max_invariant_residual", s.max_invariant_residual},
                      {"max_motion_residual", s.max_motion_residual},
                      {"max_rotation_gap", s.max_rotation_gap}};
  j["warnings"] = s.warnings;
  return j;
}

void write_series(const std::filesystem::path& file, const std::vector<ResultRow>& rows, int sigma,
                  double ResultRow::*field) {
  std::ofstream out = open_output(file);
  for (const ResultRow& row : rows) {
    if (row.sigma != sigma) continue;
    out << fmt(row.t) << ' ' << fmt(row.*field) << '\n';
  }
  finish(out, file);
}

}  // namespace

const HelicityRunSummary* RunSummary::run_for(int sigma) const {
  for (const auto& r : runs) {
    if (r.sigma == sigma) return &r;
  }
  return nullptr;
}

FiberPath build_path(const Scenario& sc) {
  if (sc.helix.has_value() == sc.path_file.has_value()) {
    throw ConfigError("path", "exactly one of 'helix' or 'file' must be given");
  }
  if (sc.helix) {
    const HelixSpec& h = *sc.helix;
    try {
      return helix_path(h.lambda, h.omega, h.k_mag, h.n_cycles, sc.n_steps);
    } catch (const std::logic_error& e) {
      throw ConfigError("path.helix", e.what());
    }
  }
  FiberPath path = [&] {
    try {
      return load_path(*sc.path_file);
    } catch (const PathFormatError& e) {
      throw ConfigError("path.file", sc.path_file->string() + ": " + e.what(), e.line());
    }
  }();
  if (path.steps() < kMinSteps) {
    throw ConfigError("path.file", "imported path has " + std::to_string(path.steps()) +
                                       " steps; at least 64 are required");
  }
  return path;
}

ScenarioResult simulate(const Scenario& sc) {
  if (sc.sigmas.empty()) throw ConfigError("sigma", "expected a non-empty array of +1/-1");
  const FiberPath path = build_path(sc);
  const SpinTriple spin = spin1_matrices();
  const GyrotropicMedium medium = sc.medium.value_or(GyrotropicMedium::free_space());
  try {
    medium.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("medium", e.what());
  }

  PathAnalysis shared;
  shared.angles = spherical_angles(path);
  shared.solid_angle = swept_solid_angle(shared.angles);
  shared.motion = motion_residual(path);
  shared.invariant.assign(path.size(), std::nullopt);
  shared.vacuum_net.resize(path.size());

  ScenarioResult result;
  RunSummary& s = result.summary;
  s.n_samples = path.size();
  s.dt = path.dt();
  s.duration = path.times().back() - path.times().front();
  s.k_mag = path.k_mag();

  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    shared.invariant[i] = invariant_residual(path, spin, i);
    s.max_invariant_residual = std::max(s.max_invariant_residual, *shared.invariant[i]);
  }
  s.max_motion_residual = *std::max_element(shared.motion.begin(), shared.motion.end());
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double gap = (hamiltonian_from_rotation(path, spin, i) - effective_hamiltonian(path, spin, i).matrix).norm();
    s.max_rotation_gap = std::max(s.max_rotation_gap, gap);
  }

  for (std::size_t i = 0; i < path.size(); ++i) {
    shared.vacuum_net[i] = net_vacuum_phase(medium, sc.k0, sc.chamber_length, shared.solid_angle[i]).phase;
  }
  const std::size_t last = path.size() - 1;
  s.solid_angle = shared.solid_angle[last];
  s.phase_quantal = quantal_geometric_phase(sc.n_left, sc.n_right, s.solid_angle);
  s.phase_vacuum_left = vacuum_phase(-1, s.solid_angle);
  s.phase_vacuum_right = vacuum_phase(+1, s.solid_angle);
  s.vacuum_net = net_vacuum_phase(medium, sc.k0, sc.chamber_length, s.solid_angle);
  s.modes = mode_status(medium);
  s.k_plus = effective_wave_vector(medium, sc.k0, Polarization::Plus);
  s.k_minus = effective_wave_vector(medium, sc.k0, Polarization::Minus);
  if (s.vacuum_net.no_propagating_mode) {
    s.warnings.push_back("no propagating vacuum mode: both polarizations are suppressed");
  }
  if (sc.helix) {
    s.cyclic = cyclic_phases(sc.n_left, sc.n_right, sc.helix->lambda, sc.ordering);
    result.spectrum = phase_spectrum(FockLadder(sc.n_max, sc.ordering), sc.helix->lambda);
  }

  // Helicity runs are independent; rows are appended in configuration order.
  std::vector<std::future<HelicityRun>> pending;
  for (int sigma : sc.sigmas) {
    pending.push_back(std::async(std::launch::async, run_helicity, std::cref(path), std::cref(spin),
                                 std::cref(shared), std::cref(sc), sigma));
  }
  for (auto& f : pending) {
    HelicityRun run = f.get();
    s.runs.push_back(run.summary);
    for (const std::string& w : run.warnings) s.warnings.push_back("sigma " + std::to_string(run.summary.sigma) + ": " + w);
    result.rows.insert(result.rows.end(), run.rows.begin(), run.rows.end());
  }
  check_finite(result);
  return result;
}

void write_results(const ScenarioResult& result, const Scenario& sc, const std::filesystem::path& out_dir) {
  ensure_directory(out_dir);

  const auto csv_path = out_dir / "results.csv";
  std::ofstream csv = open_output(csv_path);
  csv << "sigma,t,lambda,gamma,phase_total,phase_dynamical,phase_geometric,phase_analytic,phase_quantal,"
         "phase_vacuum_L,phase_vacuum_R,phase_vacuum_net,norm_drift,helicity_drift,invariant_residual,"
         "motion_residual,flagged\n";
  for (const ResultRow& r : result.rows) {
    csv << r.sigma << ',' << fmt(r.t) << ',' << fmt(r.lambda) << ',' << fmt(r.gamma) << ',' << fmt(r.phase_total)
        << ',' << fmt(r.phase_dynamical) << ',' << fmt(r.phase_geometric) << ',' << fmt(r.phase_analytic) << ','
        << fmt(r.phase_quantal) << ',' << fmt(r.phase_vacuum_left) << ',' << fmt(r.phase_vacuum_right) << ','
        << fmt(r.phase_vacuum_net) << ',' << fmt(r.norm_drift) << ',' << fmt(r.helicity_drift) << ','
        << (r.invariant_residual ? fmt(*r.invariant_residual) : std::string("NA")) << ','
        << fmt(r.motion_residual) << ',' << (r.flagged ? 1 : 0) << '\n';
  }
  finish(csv, csv_path);

  const auto summary_path = out_dir / "summary.json";
  std::ofstream summary = open_output(summary_path);
  summary << summary_json(result.summary, sc).dump(2) << '\n';
  finish(summary, summary_path);

  if (!result.spectrum.empty()) {
    const auto spectrum_path = out_dir / "phase_spectrum.csv";
    std::ofstream out = open_output(spectrum_path);
    out << "n_L,n_R,phi_L,phi_R,phi_total\n";
    for (const PhaseSpectrumRow& row : result.spectrum) {
      out << row.n_left << ',' << row.n_right << ',' << fmt(row.phi_left) << ',' << fmt(row.phi_right) << ','
          << fmt(row.phi_total) << '\n';
    }
    finish(out, spectrum_path);
  }

  for (const HelicityRunSummary& run : result.summary.runs) {
    const std::string tag = sigma_tag(run.sigma);
    write_series(out_dir / ("plot_geometric_sigma_" + tag + ".dat"), result.rows, run.sigma,
                 &ResultRow::phase_geometric);
    write_series(out_dir / ("plot_analytic_sigma_" + tag + ".dat"), result.rows, run.sigma,
                 &ResultRow::phase_analytic);
  }
  const int first = result.summary.runs.front().sigma;
  write_series(out_dir / "plot_quantal.dat", result.rows, first, &ResultRow::phase_quantal);
  write_series(out_dir / "plot_vacuum_L.dat", result.rows, first, &ResultRow::phase_vacuum_left);
  write_series(out_dir / "plot_vacuum_R.dat", result.rows, first, &ResultRow::phase_vacuum_right);
  write_series(out_dir / "plot_vacuum_net.dat", result.rows, first, &ResultRow::phase_vacuum_net);
}

ScenarioResult run_scenario(const Scenario& sc, const std::filesystem::path& out_dir) {
  ScenarioResult result = simulate(sc);
  write_results(result, sc, out_dir);
  return result;
}

std::optional<double> observed_order(double coarse, double fine, double refinement) {
  if (coarse <= kRoundoffFloor || fine <= kRoundoffFloor) return std::nullopt;
  return std::log(coarse / fine) / std::log(refinement);
}

SweepResult sweep(const Scenario& sc) {
  if (!sc.sweep || sc.sweep->size() == 0) throw ConfigError("sweep", "empty sweep range");
  const SweepSpec& spec = *sc.sweep;

  std::vector<Scenario> variants;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    Scenario v = sc;
    v.sweep.reset();
    switch (spec.parameter) {
      case SweepParameter::Lambda: v.helix->lambda = spec.lambdas[k]; break;
      case SweepParameter::NSteps: v.n_steps = spec.n_steps[k]; break;
      case SweepParameter::Occupations:
        v.n_left = spec.occupations[k].first;
        v.n_right = spec.occupations[k].second;
        break;
    }
    variants.push_back(std::move(v));
  }
  const auto key = [&](const Scenario& v) {
    return std::make_tuple(v.helix ? v.helix->lambda : 0.0, v.n_steps, v.n_left, v.n_right);
  };
  std::stable_sort(variants.begin(), variants.end(), [&](const Scenario& a, const Scenario& b) { return key(a) < key(b); });

  std::vector<std::future<RunSummary>> pending;
  for (const Scenario& v : variants) {
    pending.push_back(std::async(std::launch::async, [&v] { return simulate(v).summary; }));
  }

  SweepResult result;
  result.parameter = spec.parameter;
  for (std::size_t k = 0; k < variants.size(); ++k) {
    const Scenario& v = variants[k];
    result.points.push_back({v.helix ? v.helix->lambda : 0.0, v.n_steps, v.n_left, v.n_right, pending[k].get()});
  }
  if (spec.parameter == SweepParameter::NSteps) {
    for (std::size_t k = 0; k + 1 < result.points.size(); ++k) {
      const SweepPoint& a = result.points[k];
      const SweepPoint& b = result.points[k + 1];
      const double refinement = static_cast<double>(b.n_steps) / static_cast<double>(a.n_steps);
      result.invariant_orders.push_back(
          observed_order(a.summary.max_invariant_residual, b.summary.max_invariant_residual, refinement));
      result.motion_orders.push_back(
          observed_order(a.summary.max_motion_residual, b.summary.max_motion_residual, refinement));
    }
  }
  return result;
}

void write_sweep(const SweepResult& result, const Scenario& sc, const std::filesystem::path& out_dir) {
  ensure_directory(out_dir);
  const auto csv_path = out_dir / "sweep.csv";
  std::ofstream csv = open_output(csv_path);
  csv << "lambda,n_steps,n_L,n_R";
  for (int sigma : sc.sigmas) {
    const std::string tag = sigma_tag(sigma);
    csv << ",phase_geometric_sigma_" << tag << ",phase_analytic_sigma_" << tag;
  }
  csv << ",phase_quantal,phase_vacuum_net,max_invariant_residual,max_motion_residual,max_rotation_gap,"
         "invariant_order,motion_order\n";
  const auto order_cell = [](const std::vector<std::optional<double>>& orders, std::size_t k) {
    if (k == 0 || k > orders.size() || !orders[k - 1]) return std::string("NA");
    return fmt(*orders[k - 1]);
  };
  json points = json::array();
  for (std::size_t k = 0; k < result.points.size(); ++k) {
    const SweepPoint& p = result.points[k];
    csv << fmt(p.lambda) << ',' << p.n_steps << ',' << p.n_left << ',' << p.n_right;
    json point = {{"lambda", p.lambda}, {"n_steps", p.n_steps}, {"n_L", p.n_left}, {"n_R", p.n_right}};
    json runs = json::array();
    for (int sigma : sc.sigmas) {
      const HelicityRunSummary* run = p.summary.run_for(sigma);
      csv << ',' << fmt(run->phase_geometric) << ',' << fmt(run->phase_analytic);
      runs.push_back({{"sigma", sigma},
                      {"phase_geometric", run->phase_geometric},
                      {"phase_analytic", run->phase_analytic},
                      {"flagged_samples", run->flagged_samples}});
    }
    csv << ',' << fmt(p.summary.phase_quantal) << ',' << fmt(p.summary.vacuum_net.phase) << ','
        << fmt(p.summary.max_invariant_residual) << ',' << fmt(p.summary.max_motion_residual) << ','
        << fmt(p.summary.max_rotation_gap) << ',' << order_cell(result.invariant_orders, k) << ','
        << order_cell(result.motion_orders, k) << '\n';
    point["helicity_runs"] = runs;
    point["phase_quantal"] = p.summary.phase_quantal;
    point["phase_vacuum_net"] = p.summary.vacuum_net.phase;
    point["max_invariant_residual"] = p.summary.max_invariant_residual;
    point["max_motion_residual"] = p.summary.max_motion_residual;
    point["max_rotation_gap"] = p.summary.max_rotation_gap;
    points.push_back(point);
  }
  finish(csv, csv_path);

  json j;
  j["schema_version"] = kSummarySchemaVersion;
  j["parameter"] = std::string(to_string(result.parameter));
  j["points"] = points;
  if (result.parameter == SweepParameter::NSteps) {
    json inv = json::array();
    json mot = json::array();
    for (const auto& o : result.invariant_orders) inv.push_back(optional_number(o));
    for (const auto& o : result.motion_orders) mot.push_back(optional_number(o));
    j["convergence"] = {{"invariant_residual_orders", inv},
                        {"motion_residual_orders", mot},
                        {"roundoff_floor", kRoundoffFloor}};
  }
  const auto summary_path = out_dir / "sweep_summary.json";
  std::ofstream summary = open_output(summary_path);
  summary << j.dump(2) << '\n';
  finish(summary, summary_path);
}

SweepResult run_sweep(const Scenario& sc, const std::filesystem::path& out_dir) {
  SweepResult result = sweep(sc);
  write_sweep(result, sc, out_dir);
  return result;
}

}  // namespace fiberphase
