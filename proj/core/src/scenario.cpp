#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fiberphase/errors.hpp"
#include "fiberphase/harness.hpp"

namespace fiberphase {

namespace {

using nlohmann::json;

constexpr std::size_t kMinSteps = 64;

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

void reject_unknown_keys(const json& object, const std::string& where, std::initializer_list<const char*> allowed) {
  for (const auto& item : object.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
    if (!known) {
      throw ConfigError(where.empty() ? item.key() : where + "." + item.key(), "unknown key");
    }
  }
}

const json& require_object(const json& value, const std::string& field) {
  if (!value.is_object()) throw ConfigError(field, "expected an object");
  return value;
}

double number(const json& value, const std::string& field) {
  if (!value.is_number()) throw ConfigError(field, "expected a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
  return v;
}

double positive(const json& value, const std::string& field) {
  const double v = number(value, field);
  if (!(v > 0.0)) throw ConfigError(field, "must be positive");
  return v;
}

long long integer(const json& value, const std::string& field) {
  if (!value.is_number_integer()) throw ConfigError(field, "expected an integer");
  return value.get<long long>();
}

double angle(const json& value, const std::string& field) {
  double v = 0.0;
  if (value.is_number()) {
    v = value.get<double>();
  } else if (value.is_string()) {
    try {
      v = parse_angle(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(field, e.what());
    }
  } else {
    throw ConfigError(field, "expected an angle (radians, or a string with a 'deg' suffix)");
  }
  if (!(v >= 0.0 && v <= kPi)) throw ConfigError(field, "cone angle must lie in [0, pi]");
  return v;
}

std::size_t step_count(const json& value, const std::string& field) {
  const long long n = integer(value, field);
  if (n < static_cast<long long>(kMinSteps)) throw ConfigError(field, "must be at least 64");
  return static_cast<std::size_t>(n);
}

int occupation(const json& value, const std::string& field) {
  const long long n = integer(value, field);
  if (n < 0) throw ConfigError(field, "occupation numbers must be non-negative");
  if (n > 1000000) throw ConfigError(field, "occupation number is unreasonably large");
  return static_cast<int>(n);
}

HelixSpec parse_helix(const json& node) {
  require_object(node, "path.helix");
  reject_unknown_keys(node, "path.helix", {"lambda", "omega", "k_mag", "n_cycles"});
  HelixSpec h;
  if (!node.contains("lambda")) throw ConfigError("path.helix.lambda", "required");
  h.lambda = angle(node["lambda"], "path.helix.lambda");
  if (node.contains("omega")) {
    h.omega = number(node["omega"], "path.helix.omega");
    if (h.omega == 0.0) throw ConfigError("path.helix.omega", "must be nonzero");
  }
  if (node.contains("k_mag")) h.k_mag = positive(node["k_mag"], "path.helix.k_mag");
  if (node.contains("n_cycles")) h.n_cycles = positive(node["n_cycles"], "path.helix.n_cycles");
  return h;
}

SweepSpec parse_sweep(const json& node, const Scenario& base) {
  require_object(node, "sweep");
  reject_unknown_keys(node, "sweep", {"parameter", "values"});
  if (!node.contains("parameter") || !node["parameter"].is_string()) {
    throw ConfigError("sweep.parameter", "expected one of \"lambda\", \"n_steps\", \"occupations\"");
  }
  if (!node.contains("values") || !node["values"].is_array()) throw ConfigError("sweep.values", "expected an array");
  const json& values = node["values"];
  if (values.empty()) throw ConfigError("sweep.values", "empty sweep range");

  SweepSpec spec;
  const std::string parameter = node["parameter"].get<std::string>();
  if (parameter == "lambda") {
    spec.parameter = SweepParameter::Lambda;
    for (std::size_t i = 0; i < values.size(); ++i) {
      spec.lambdas.push_back(angle(values[i], "sweep.values[" + std::to_string(i) + "]"));
    }
  } else if (parameter == "n_steps") {
    spec.parameter = SweepParameter::NSteps;
    for (std::size_t i = 0; i < values.size(); ++i) {
      spec.n_steps.push_back(step_count(values[i], "sweep.values[" + std::to_string(i) + "]"));
    }
  } else if (parameter == "occupations") {
    spec.parameter = SweepParameter::Occupations;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string field = "sweep.values[" + std::to_string(i) + "]";
      if (!values[i].is_array() || values[i].size() != 2) throw ConfigError(field, "expected [n_L, n_R]");
      spec.occupations.emplace_back(occupation(values[i][0], field), occupation(values[i][1], field));
    }
  } else {
    throw ConfigError("sweep.parameter", "expected one of \"lambda\", \"n_steps\", \"occupations\"");
  }
  if (spec.parameter != SweepParameter::Occupations && !base.helix) {
    throw ConfigError("sweep.parameter", "lambda and n_steps sweeps need a generated helix path");
  }
  return spec;
}

}  // namespace

std::size_t SweepSpec::size() const {
  switch (parameter) {
    case SweepParameter::Lambda: return lambdas.size();
    case SweepParameter::NSteps: return n_steps.size();
    case SweepParameter::Occupations: return occupations.size();
  }
  return 0;
}

double parse_angle(const std::string& text) {
  std::string body = text;
  body.erase(std::remove_if(body.begin(), body.end(), [](unsigned char c) { return std::isspace(c); }), body.end());
  double scale = 1.0;
  if (body.size() > 3 && body.compare(body.size() - 3, 3, "deg") == 0) {
    body.resize(body.size() - 3);
    scale = kPi / 180.0;
  } else if (body.size() > 3 && body.compare(body.size() - 3, 3, "rad") == 0) {
    body.resize(body.size() - 3);
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(body, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (body.empty() || used != body.size() || !std::isfinite(value)) {
    throw std::invalid_argument("cannot parse angle '" + text + "'");
  }
  return value * scale;
}

Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what(), line_of_offset(text, e.byte));
  }
  require_object(root, "<root>");
  reject_unknown_keys(root, "",
                      {"path", "n_steps", "sigma", "occupations", "ordering", "n_max", "medium", "chamber_length",
                       "k0", "output", "sweep"});

  Scenario sc;
  if (!root.contains("path")) throw ConfigError("path", "required");
  const json& path = require_object(root["path"], "path");
  reject_unknown_keys(path, "path", {"helix", "file"});
  const bool has_helix = path.contains("helix");
  const bool has_file = path.contains("file");
  if (has_helix == has_file) throw ConfigError("path", "exactly one of 'helix' or 'file' must be given");
  if (has_helix) {
    sc.helix = parse_helix(path["helix"]);
  } else {
    if (!path["file"].is_string()) throw ConfigError("path.file", "expected a file name");
    std::filesystem::path file = path["file"].get<std::string>();
    if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
    sc.path_file = file;
  }

  if (root.contains("n_steps")) {
    if (has_file) throw ConfigError("n_steps", "not allowed with an imported path (the file fixes the grid)");
    sc.n_steps = step_count(root["n_steps"], "n_steps");
  }
  if (sc.helix && static_cast<double>(sc.n_steps) < 16.0 * sc.helix->n_cycles) {
    throw ConfigError("n_steps", "helix needs at least 16 steps per cycle");
  }

  if (root.contains("sigma")) {
    const json& s = root["sigma"];
    if (!s.is_array() || s.empty()) throw ConfigError("sigma", "expected a non-empty array of +1/-1");
    sc.sigmas.clear();
    std::set<int> seen;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string field = "sigma[" + std::to_string(i) + "]";
      const long long v = integer(s[i], field);
      if (v != 1 && v != -1) throw ConfigError(field, "photon helicity must be +1 or -1");
      if (!seen.insert(static_cast<int>(v)).second) throw ConfigError(field, "duplicate helicity");
      sc.sigmas.push_back(static_cast<int>(v));
    }
  }

  if (root.contains("occupations")) {
    const json& occ = require_object(root["occupations"], "occupations");
    reject_unknown_keys(occ, "occupations", {"n_L", "n_R"});
    if (occ.contains("n_L")) sc.n_left = occupation(occ["n_L"], "occupations.n_L");
    if (occ.contains("n_R")) sc.n_right = occupation(occ["n_R"], "occupations.n_R");
  }

  if (root.contains("ordering")) {
    if (!root["ordering"].is_string()) throw ConfigError("ordering", "expected \"normal\" or \"symmetric\"");
    try {
      sc.ordering = parse_ordering(root["ordering"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("ordering", e.what());
    }
  }

  if (root.contains("n_max")) {
    const long long n = integer(root["n_max"], "n_max");
    if (n < 1 || n > 1000) throw ConfigError("n_max", "must lie in [1, 1000]");
    sc.n_max = static_cast<int>(n);
  }

  if (root.contains("medium")) {
    const json& m = require_object(root["medium"], "medium");
    reject_unknown_keys(m, "medium", {"eps1", "eps2", "eps3", "mu1", "mu2", "mu3"});
    GyrotropicMedium medium;
    const auto read = [&](const char* key, double& target) {
      if (m.contains(key)) target = number(m[key], std::string("medium.") + key);
    };
    read("eps1", medium.eps1);
    read("eps2", medium.eps2);
    read("eps3", medium.eps3);
    read("mu1", medium.mu1);
    read("mu2", medium.mu2);
    read("mu3", medium.mu3);
    sc.medium = medium;
  }

  if (root.contains("chamber_length")) sc.chamber_length = positive(root["chamber_length"], "chamber_length");
  if (root.contains("k0")) sc.k0 = positive(root["k0"], "k0");

  if (root.contains("output")) {
    if (!root["output"].is_string() || root["output"].get<std::string>().empty()) {
      throw ConfigError("output", "expected a directory name");
    }
    sc.output_dir = root["output"].get<std::string>();
  }

  if (root.contains("sweep")) sc.sweep = parse_sweep(root["sweep"], sc);
  return sc;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open config " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), file.parent_path());
}

std::string_view to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::Lambda: return "lambda";
    case SweepParameter::NSteps: return "n_steps";
    case SweepParameter::Occupations: return "occupations";
  }
  return "";
}

}  // namespace fiberphase
