#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "fiberphase/errors.hpp"
#include "fiberphase/fiber_geometry.hpp"

namespace fiberphase {

namespace {

constexpr double kNormTolerance = 1e-6;

}  // namespace

FiberPath read_path(std::istream& in) {
  std::vector<double> times;
  std::vector<Vec3> dirs;
  double k_mag = 0.0;
  int first_line = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    fields.imbue(std::locale::classic());
    double values[4];
    int count = 0;
    std::string token;
    while (fields >> token) {
      if (count == 4) throw PathFormatError(line_no, "expected 4 fields \"t kx ky kz\", found more");
      std::size_t used = 0;
      try {
        values[count] = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size() || !std::isfinite(values[count])) {
        throw PathFormatError(line_no, "field '" + token + "' is not a finite number");
      }
      ++count;
    }
    if (count == 0) continue;
    if (count != 4) throw PathFormatError(line_no, "expected 4 fields \"t kx ky kz\", found " + std::to_string(count));

    const Vec3 k(values[1], values[2], values[3]);
    const double norm = k.norm();
    if (dirs.empty()) {
      if (!(norm > 0.0)) throw PathFormatError(line_no, "first wave vector has zero length");
      k_mag = norm;
      first_line = line_no;
    } else if (std::abs(norm - k_mag) > kNormTolerance * k_mag) {
      throw PathFormatError(line_no, "|k| = " + std::to_string(norm) + " differs from |k| = " +
                                         std::to_string(k_mag) + " on line " + std::to_string(first_line) +
                                         " (|k| must be conserved)");
    }
    times.push_back(values[0]);
    dirs.push_back(k / norm);
  }
  if (dirs.size() < 3) throw PathFormatError(line_no, "path file needs at least 3 samples");
  try {
    return FiberPath(std::move(times), std::move(dirs), k_mag);
  } catch (const std::invalid_argument& e) {
    throw PathFormatError(line_no, e.what());
  }
}

FiberPath load_path(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open path file " + file.string());
  return read_path(in);
}

void write_path(std::ostream& out, const FiberPath& path) {
  out << "# t kx ky kz\n";
  char buf[128];
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Vec3 k = path.k_vector(i);
    std::snprintf(buf, sizeof buf, "%.16e %.16e %.16e %.16e\n", path.times()[i], k.x(), k.y(), k.z());
    out << buf;
  }
}

}  // namespace fiberphase
