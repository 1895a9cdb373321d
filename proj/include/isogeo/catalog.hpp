#pragma once

// Builtin surfaces with closed-form curvature where it is known.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isogeo/surface.hpp"

namespace isogeo {

/// Numeric and expression-valued constructor parameters, by name.
struct CatalogParams {
  std::map<std::string, double> numbers;
  std::map<std::string, std::string> exprs;
};

using ScalarField = std::function<double(double u, double v)>;

struct CatalogEntry {
  std::string id;
  SurfacePatch patch;
  /// Closed forms in the patch's own parameters; empty when unknown.
  ScalarField K, H, discriminant;
  bool admissible = true;
  /// True / false when every point is known to be umbilic / non-umbilic.
  std::optional<bool> totally_umbilic;
};

/// parabolic_sphere, cylindrical_sphere, plane, ruled_nondiag, helicoid,
/// revolution, minimal_wave, minimal_harmonic.
const std::vector<std::string>& catalog_ids();

/// Throws GeometryError(BadParam) for unknown ids or parameters, values out
/// of range, or an entry that does not exist in the requested space.
CatalogEntry make(std::string_view id, SpaceKind kind, const CatalogParams& params = {});
CatalogEntry make(std::string_view id, SpaceKind kind, const CatalogParams& params,
                  const Domain& domain);

/// Every (id, space) combination that exists, with default parameters.
std::vector<CatalogEntry> full_catalog();

}  // namespace isogeo
