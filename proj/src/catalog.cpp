#include "isogeo/catalog.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "isogeo/errors.hpp"
#include "isogeo/expr.hpp"

namespace isogeo {

namespace {

class ParamReader {
 public:
  ParamReader(std::string_view id, const CatalogParams& p) : id_(id), p_(p) {}

  double number(const std::string& name, double fallback) {
    used_.insert(name);
    if (p_.exprs.count(name)) bad("parameter '" + name + "' must be a number");
    auto it = p_.numbers.find(name);
    return it == p_.numbers.end() ? fallback : it->second;
  }

  Expr expr(const std::string& name, const std::string& fallback) {
    used_.insert(name);
    if (p_.numbers.count(name)) bad("parameter '" + name + "' must be an expression");
    auto it = p_.exprs.find(name);
    return parse(it == p_.exprs.end() ? fallback : it->second);
  }

  void finish() const {
    for (const auto& [name, value] : p_.numbers) {
      if (!used_.count(name)) bad("unknown parameter '" + name + "'");
    }
    for (const auto& [name, value] : p_.exprs) {
      if (!used_.count(name)) bad("unknown parameter '" + name + "'");
    }
  }

  [[noreturn]] void bad(const std::string& msg) const {
    throw GeometryError(ErrorKind::BadParam, std::string(id_) + ": " + msg);
  }

 private:
  std::string_view id_;
  const CatalogParams& p_;
  std::set<std::string> used_;
};

bool simply(SpaceKind kind) { return kind == SpaceKind::SimplyIsotropic; }

// cos/sin in I3, cosh/sinh in Ip3.
Jet2d circ_c(SpaceKind kind, const Jet2d& t) { return simply(kind) ? cos(t) : cosh(t); }
Jet2d circ_s(SpaceKind kind, const Jet2d& t) { return simply(kind) ? sin(t) : sinh(t); }

/// Derivatives of a one-variable expression in u.
struct Profile {
  double d0, d1, d2;
};
Profile profile(const Expr& e, double t) {
  const Jet2d j = eval_jet2(e, t, 0.0);
  return {j.val, j.du, j.duu};
}

CatalogEntry parabolic_sphere(SpaceKind kind, ParamReader& r) {
  const double p = r.number("p", 2.0);
  if (!(p != 0) || !std::isfinite(p)) r.bad("p must be non-zero");
  const double s = metric_sign(kind);
  const double w = 0.7 * std::abs(p);
  Immersion imm = [p, s](const Jet2d& u, const Jet2d& v) {
    return Jet2Vec3(u, v, (u * u + s * (v * v)) / (2.0 * p) - p / 2.0);
  };
  CatalogEntry e{"parabolic_sphere",
                 SurfacePatch::builtin(kind, "parabolic_sphere", std::move(imm), {-w, w, -w, w}),
                 [p](double, double) { return 1.0 / (p * p); },
                 [p](double, double) { return 1.0 / p; },
                 [](double, double) { return 0.0; }};
  e.totally_umbilic = true;
  return e;
}

CatalogEntry cylindrical_sphere(SpaceKind kind, ParamReader& r) {
  const double rad = r.number("r", 1.0);
  if (!(rad > 0)) r.bad("r must be positive");
  Immersion imm = [rad, kind](const Jet2d& u, const Jet2d& v) {
    return Jet2Vec3(rad * circ_c(kind, u), rad * circ_s(kind, u), v);
  };
  const double span = simply(kind) ? std::numbers::pi : 1.0;
  CatalogEntry e{"cylindrical_sphere",
                 SurfacePatch::builtin(kind, "cylindrical_sphere", std::move(imm),
                                       {-span, span, -1, 1}),
                 {}, {}, {}};
  e.admissible = false;
  return e;
}

CatalogEntry plane(SpaceKind kind, ParamReader& r) {
  const double a = r.number("a", 0.3), b = r.number("b", -0.2), c = r.number("c", 0.1);
  Immersion imm = [a, b, c](const Jet2d& u, const Jet2d& v) {
    return Jet2Vec3(u, v, a * u + b * v + c);
  };
  auto zero = [](double, double) { return 0.0; };
  CatalogEntry e{"plane", SurfacePatch::builtin(kind, "plane", std::move(imm), {-1, 1, -1, 1}),
                 zero, zero, zero};
  e.totally_umbilic = true;
  return e;
}

CatalogEntry ruled_nondiag(SpaceKind kind, ParamReader& r) {
  const double b = r.number("b", 2.0);
  if (!(b > 0)) r.bad("b must be positive");
  Immersion imm = [b](const Jet2d& u, const Jet2d& v) { return Jet2Vec3(u, u + b * v, u * v); };
  const double K = (simply(kind) ? -1.0 : 1.0) / (b * b);
  const double H = -1.0 / b;
  CatalogEntry e{"ruled_nondiag",
                 SurfacePatch::builtin(kind, "ruled_nondiag", std::move(imm),
                                       {-0.9, 0.9, -0.9, 0.9}),
                 [K](double, double) { return K; }, [H](double, double) { return H; },
                 [K, H](double, double) { return H * H - K; }};
  e.totally_umbilic = false;
  return e;
}

CatalogEntry helicoid(SpaceKind kind, ParamReader& r) {
  const double c = r.number("c", 1.0);
  if (!(c > 0)) r.bad("c must be positive");
  Immersion imm = [c, kind](const Jet2d& u, const Jet2d& v) {
    return Jet2Vec3(u * circ_c(kind, v), u * circ_s(kind, v), c * v);
  };
  const double sign = simply(kind) ? -1.0 : 1.0;
  auto K = [c, sign](double u, double) { return sign * c * c / (u * u * u * u); };
  CatalogEntry e{"helicoid",
                 SurfacePatch::builtin(kind, "helicoid", std::move(imm), {1.5 * c, 3 * c, -1, 1}),
                 K, [](double, double) { return 0.0; },
                 [K](double u, double v) { return -K(u, v); }};
  e.totally_umbilic = false;
  return e;
}

CatalogEntry revolution(SpaceKind kind, ParamReader& r) {
  const Expr z = r.expr("z", "log(u)");
  if (depends_on(z, Variable::V)) r.bad("z must depend on u only");
  Immersion imm = [z, kind](const Jet2d& u, const Jet2d& v) {
    return Jet2Vec3(u * circ_c(kind, v), u * circ_s(kind, v), evaluate(z, u, Jet2d(0.0)));
  };
  return {"revolution",
          SurfacePatch::builtin(kind, "revolution", std::move(imm), {0.5, 2, -1, 1}),
          [z](double u, double) {
            const Profile p = profile(z, u);
            return p.d1 * p.d2 / u;
          },
          [z](double u, double) {
            const Profile p = profile(z, u);
            return 0.5 * p.d2 + p.d1 / (2 * u);
          },
          [z](double u, double) {
            const Profile p = profile(z, u);
            const double d = 0.5 * p.d2 - p.d1 / (2 * u);
            return d * d;
          }};
}

CatalogEntry minimal_wave(SpaceKind kind, ParamReader& r) {
  const Expr f = r.expr("f", "exp(u)");
  const Expr g = r.expr("g", "exp(0.5*u)+u");
  if (simply(kind)) r.bad("wave-form minimal surfaces live in pseudo-isotropic space");
  if (depends_on(f, Variable::V) || depends_on(g, Variable::V)) {
    r.bad("f and g must depend on u only");
  }
  Immersion imm = [f, g](const Jet2d& u, const Jet2d& v) {
    const Jet2d zero(0.0);
    return Jet2Vec3(u, v, evaluate(f, u + v, zero) + evaluate(g, u - v, zero));
  };
  return {"minimal_wave",
          SurfacePatch::builtin(kind, "minimal_wave", std::move(imm), {-0.5, 0.5, -0.5, 0.5}),
          [f, g](double u, double v) {
            return -4.0 * profile(f, u + v).d2 * profile(g, u - v).d2;
          },
          [](double, double) { return 0.0; }, {}};
}

CatalogEntry minimal_harmonic(SpaceKind kind, ParamReader& r) {
  const Expr f = r.expr("f", "exp(u)*cos(v)");
  if (!simply(kind)) r.bad("harmonic minimal graphs live in simply isotropic space");
  const Domain dom{-1, 1, -1, 1};
  for (const auto& [u, v] : grid_points(dom, 20, 20)) {
    const Jet2d j = eval_jet2(f, u, v);
    if (!(std::abs(j.duu + j.dvv) <= 1e-8)) r.bad("f is not harmonic");
  }
  Immersion imm = [f](const Jet2d& u, const Jet2d& v) {
    return Jet2Vec3(u, v, evaluate(f, u, v));
  };
  return {"minimal_harmonic",
          SurfacePatch::builtin(kind, "minimal_harmonic", std::move(imm), dom),
          [f](double u, double v) {
            const Jet2d j = eval_jet2(f, u, v);
            return -(j.duu * j.duu + j.duv * j.duv);
          },
          [](double, double) { return 0.0; }, {}};
}

}  // namespace

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids{
      "parabolic_sphere", "cylindrical_sphere", "plane",        "ruled_nondiag",
      "helicoid",         "revolution",         "minimal_wave", "minimal_harmonic"};
  return ids;
}

CatalogEntry make(std::string_view id, SpaceKind kind, const CatalogParams& params) {
  ParamReader r(id, params);
  CatalogEntry e = [&]() -> CatalogEntry {
    if (id == "parabolic_sphere") return parabolic_sphere(kind, r);
    if (id == "cylindrical_sphere") return cylindrical_sphere(kind, r);
    if (id == "plane") return plane(kind, r);
    if (id == "ruled_nondiag") return ruled_nondiag(kind, r);
    if (id == "helicoid") return helicoid(kind, r);
    if (id == "revolution") return revolution(kind, r);
    if (id == "minimal_wave") return minimal_wave(kind, r);
    if (id == "minimal_harmonic") return minimal_harmonic(kind, r);
    r.bad("unknown catalog entry");
  }();
  r.finish();
  return e;
}

CatalogEntry make(std::string_view id, SpaceKind kind, const CatalogParams& params,
                  const Domain& domain) {
  CatalogEntry e = make(id, kind, params);
  e.patch = e.patch.with_domain(domain);
  return e;
}

std::vector<CatalogEntry> full_catalog() {
  std::vector<CatalogEntry> out;
  for (SpaceKind kind : {SpaceKind::SimplyIsotropic, SpaceKind::PseudoIsotropic}) {
    for (const auto& id : catalog_ids()) {
      if (id == "minimal_wave" && kind == SpaceKind::SimplyIsotropic) continue;
      if (id == "minimal_harmonic" && kind == SpaceKind::PseudoIsotropic) continue;
      out.push_back(make(id, kind));
    }
  }
  return out;
}

}  // namespace isogeo
