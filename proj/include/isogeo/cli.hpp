#pragma once

// Command-line front end: JSON surface specs, CSV/OBJ writers, verification
// suites. Everything here writes to streams so it can be driven in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isogeo/catalog.hpp"
#include "isogeo/geodesic.hpp"
#include "isogeo/surface.hpp"

namespace isogeo::cli {

enum ExitCode : int {
  kOk = 0,
  kSpecError = 2,
  kIoError = 3,
  kGeometryError = 4,
  kVerifyFailed = 5,
};

/// Malformed spec or flag value.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedSurface {
  SurfacePatch patch;
  /// Set for builtin specs.
  std::optional<CatalogEntry> entry;
};

/// {"space": "i3"|"ip3", "surface": {...}, "domain": [u0, u1, v0, v1]}.
/// Throws SpecError.
LoadedSurface parse_spec(const std::string& json_text);

/// Inline JSON if the argument starts with '{', otherwise a file path.
/// Throws IoError when the file cannot be read.
std::string read_spec_argument(const std::string& arg);

/// Shortest decimal that reads back to the same double.
std::string format_number(double x);

/// "NUxNV". Throws SpecError.
std::pair<int, int> parse_grid(const std::string& text);

void write_curvature_csv(const SurfacePatch& s, int nu, int nv, std::ostream& out);

/// Throws GeometryError when the start is invalid; returns the trace so the
/// caller can report an early stop.
GeodesicTrace write_geodesic_csv(const SurfacePatch& s, GeodesicKind kind, double u0, double v0,
                                 double du0, double dv0, double t_end, double step,
                                 std::ostream& out);

enum class MeshFormat { Obj, Csv };
void write_mesh(const SurfacePatch& s, int nu, int nv, MeshFormat format, std::ostream& out);

struct VerifyOptions {
  std::string suite = "all";
  int samples = 100;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  /// Absolute step; default is 1e-4 times each domain's diameter.
  std::optional<double> fd_step;
  bool all_catalog = false;
  /// Used when all_catalog is false.
  std::optional<LoadedSurface> surface;
};

struct VerifyCheck {
  std::string name;
  std::string surface;
  int points = 0;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = true;
  std::string note;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<VerifyCheck> checks;
  bool overall() const;
};

/// Suites: flatness, egregium, codazzi, umbilic, minimal, sphere-geodesics,
/// all. Throws SpecError for an unknown suite.
VerifyReport run_verify(const VerifyOptions& options);
std::string to_json(const VerifyReport& report);

/// Full command line, argv[0] included. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isogeo::cli
