// fiberphase: geometric phases of photons in a noncoplanarly curved fiber.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fiberphase/errors.hpp"
#include "fiberphase/harness.hpp"

namespace {

enum ExitCode { kOk = 0, kUnexpected = 1, kConfig = 2, kNumerical = 3, kIo = 4 };

std::filesystem::path output_dir(const fiberphase::Scenario& sc, const std::string& override_dir) {
  return override_dir.empty() ? sc.output_dir : std::filesystem::path(override_dir);
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int do_run(const std::string& config, const std::string& out, bool quiet) {
  const fiberphase::Scenario sc = fiberphase::load_scenario(config);
  const auto dir = output_dir(sc, out);
  const fiberphase::ScenarioResult result = fiberphase::run_scenario(sc, dir);
  print_warnings(result.summary.warnings);
  if (!quiet) {
    const auto& s = result.summary;
    std::printf("%zu samples, dt = %.6g, solid angle swept = %.12f\n", s.n_samples, s.dt, s.solid_angle);
    for (const auto& r : s.runs) {
      std::printf("sigma %+d: geometric %.12f  analytic %.12f  dynamical %.3e  flagged %zu\n", r.sigma,
                  r.phase_geometric, r.phase_analytic, r.phase_dynamical, r.flagged_samples);
    }
    std::printf("quantal %.12f  vacuum L %.12f  R %.12f  net %.12f\n", s.phase_quantal, s.phase_vacuum_left,
                s.phase_vacuum_right, s.vacuum_net.phase);
    std::printf("n2+ = %.12g (%s), n2- = %.12g (%s)\n", s.modes.n2_plus,
                s.modes.plus_propagates ? "propagating" : "evanescent", s.modes.n2_minus,
                s.modes.minus_propagates ? "propagating" : "evanescent");
    std::printf("wrote %s\n", dir.string().c_str());
  }
  return kOk;
}

int do_sweep(const std::string& config, const std::string& out, bool quiet) {
  const fiberphase::Scenario sc = fiberphase::load_scenario(config);
  if (!sc.sweep) throw fiberphase::ConfigError("sweep", "the sweep command needs a 'sweep' section");
  const auto dir = output_dir(sc, out);
  const fiberphase::SweepResult result = fiberphase::run_sweep(sc, dir);
  for (const auto& p : result.points) print_warnings(p.summary.warnings);
  if (!quiet) {
    std::printf("%zu sweep points over %s\n", result.points.size(),
                std::string(fiberphase::to_string(result.parameter)).c_str());
    for (std::size_t k = 0; k < result.invariant_orders.size(); ++k) {
      const auto show = [](const std::optional<double>& o) {
        return o ? std::to_string(*o) : std::string("below roundoff");
      };
      std::printf("n_steps %zu -> %zu: invariant order %s, motion order %s\n", result.points[k].n_steps,
                  result.points[k + 1].n_steps, show(result.invariant_orders[k]).c_str(),
                  show(result.motion_orders[k]).c_str());
    }
    std::printf("wrote %s\n", dir.string().c_str());
  }
  return kOk;
}

int do_check(bool quiet) {
  bool ok = true;
  for (const auto& c : fiberphase::self_check()) {
    ok = ok && c.passed;
    if (!quiet || !c.passed) {
      std::printf("[%s] %s (worst %.3e)\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.worst);
    }
  }
  return ok ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric phases of photons in a noncoplanarly curved optical fiber"};
  app.require_subcommand(1);

  std::string out;
  bool quiet = false;
  app.add_option("--out", out, "Output directory (overrides the config's 'output')");
  app.add_flag("--quiet", quiet, "Suppress informational output");

  std::string config;
  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("config", config, "Scenario JSON file")->required();
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("config", config, "Scenario JSON file with a 'sweep' section")->required();
  auto* check = app.add_subcommand("check", "Self-test of the spin algebra invariants");

  for (auto* sub : {run, sweep, check}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return do_run(config, out, quiet);
    if (*sweep) return do_sweep(config, out, quiet);
    if (*check) return do_check(quiet);
  } catch (const fiberphase::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const fiberphase::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const fiberphase::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnexpected;
  }
  return kUnexpected;
}
