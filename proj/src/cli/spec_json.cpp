#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isogeo/cli.hpp"
#include "isogeo/errors.hpp"
#include "isogeo/expr.hpp"

namespace isogeo::cli {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(std::string(where) + ": missing \"" + key + "\"");
  return *it;
}

std::string require_string(const json& obj, const char* key, const char* where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) throw SpecError(std::string(where) + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

Expr parse_field(const json& obj, const char* key, const char* where) {
  const std::string text = require_string(obj, key, where);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw SpecError(std::string(where) + "." + key + ": " + e.what() + " in \"" + text + "\"");
  }
}

Domain parse_domain(const json& d) {
  if (!d.is_array() || d.size() != 4) {
    throw SpecError("domain must be an array [u0, u1, v0, v1]");
  }
  for (const auto& x : d) {
    if (!x.is_number()) throw SpecError("domain entries must be numbers");
  }
  Domain out{d[0].get<double>(), d[1].get<double>(), d[2].get<double>(), d[3].get<double>()};
  if (!(out.u0 < out.u1) || !(out.v0 < out.v1)) throw SpecError("domain must satisfy u0 < u1 and v0 < v1");
  return out;
}

}  // namespace

std::string read_spec_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  std::ifstream in(arg);
  if (!in) throw IoError("cannot read spec file '" + arg + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading spec file '" + arg + "'");
  return ss.str();
}

LoadedSurface parse_spec(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw SpecError("spec must be a JSON object");

  const std::string space = require_string(root, "space", "spec");
  SpaceKind kind;
  if (space == "i3") {
    kind = SpaceKind::SimplyIsotropic;
  } else if (space == "ip3") {
    kind = SpaceKind::PseudoIsotropic;
  } else {
    throw SpecError("space must be \"i3\" or \"ip3\", got \"" + space + "\"");
  }

  const json& surface = require(root, "surface", "spec");
  if (!surface.is_object()) throw SpecError("surface must be an object");
  const std::string form = require_string(surface, "kind", "surface");
  std::optional<Domain> domain;
  if (root.contains("domain")) domain = parse_domain(root["domain"]);

  if (form == "graph") {
    if (!domain) throw SpecError("graph surfaces need a domain");
    return {SurfacePatch::graph(kind, parse_field(surface, "f", "surface"), *domain), {}};
  }
  if (form == "parametric") {
    if (!domain) throw SpecError("parametric surfaces need a domain");
    return {SurfacePatch::parametric(kind, parse_field(surface, "x", "surface"),
                                     parse_field(surface, "y", "surface"),
                                     parse_field(surface, "z", "surface"), *domain),
            {}};
  }
  if (form == "builtin") {
    const std::string name = require_string(surface, "name", "surface");
    CatalogParams params;
    if (surface.contains("params")) {
      const json& p = surface["params"];
      if (!p.is_object()) throw SpecError("surface.params must be an object");
      for (const auto& [key, value] : p.items()) {
        if (value.is_number()) {
          params.numbers[key] = value.get<double>();
        } else if (value.is_string()) {
          params.exprs[key] = value.get<std::string>();
        } else {
          throw SpecError("surface.params." + key + " must be a number or an expression string");
        }
      }
    }
    try {
      CatalogEntry entry = domain ? make(name, kind, params, *domain) : make(name, kind, params);
      SurfacePatch patch = entry.patch;
      return {std::move(patch), std::move(entry)};
    } catch (const GeometryError& e) {
      throw SpecError(e.what());
    } catch (const ParseError& e) {
      throw SpecError(std::string("surface.params: ") + e.what());
    }
  }
  throw SpecError("surface.kind must be graph, parametric or builtin, got \"" + form + "\"");
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  int nu = 0, nv = 0;
  if (x == std::string::npos) throw SpecError("grid must look like NUxNV, got \"" + text + "\"");
  const char* b = text.data();
  const auto r1 = std::from_chars(b, b + x, nu);
  const auto r2 = std::from_chars(b + x + 1, b + text.size(), nv);
  if (r1.ec != std::errc() || r1.ptr != b + x || r2.ec != std::errc() ||
      r2.ptr != b + text.size() || nu < 1 || nv < 1) {
    throw SpecError("grid must look like NUxNV with positive counts, got \"" + text + "\"");
  }
  return {nu, nv};
}

}  // namespace isogeo::cli
