#include "isogeo/surface.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "isogeo/errors.hpp"

namespace isogeo {

SurfacePatch SurfacePatch::graph(SpaceKind kind, Expr f, Domain domain) {
  std::string name = "graph z = " + to_string(f);
  Immersion imm = [f = std::move(f)](const Jet2d& u, const Jet2d& v) {
    return Jet2Vec3(u, v, isogeo::evaluate(f, u, v));
  };
  return {kind, Form::Graph, std::move(name), std::move(imm), domain};
}

SurfacePatch SurfacePatch::parametric(SpaceKind kind, Expr x, Expr y, Expr z, Domain domain) {
  std::string name =
      "parametric (" + to_string(x) + ", " + to_string(y) + ", " + to_string(z) + ")";
  Immersion imm = [x = std::move(x), y = std::move(y), z = std::move(z)](const Jet2d& u,
                                                                          const Jet2d& v) {
    return Jet2Vec3(isogeo::evaluate(x, u, v), isogeo::evaluate(y, u, v), isogeo::evaluate(z, u, v));
  };
  return {kind, Form::Parametric, std::move(name), std::move(imm), domain};
}

SurfacePatch SurfacePatch::builtin(SpaceKind kind, std::string name, Immersion immersion,
                                   Domain domain) {
  return {kind, Form::Builtin, std::move(name), std::move(immersion), domain};
}

SurfacePatch SurfacePatch::with_domain(Domain domain) const {
  SurfacePatch copy = *this;
  copy.domain_ = domain;
  return copy;
}

SurfacePatch SurfacePatch::transformed(const Motion& motion) const {
  if (motion.kind != kind_) {
    throw GeometryError(ErrorKind::WrongSpace, "motion and patch live in different spaces");
  }
  Immersion inner = immersion_;
  Immersion imm = [inner = std::move(inner), motion](const Jet2d& u, const Jet2d& v) {
    return apply_motion(motion, Vector3<Jet2d>(inner(u, v)));
  };
  return {kind_, form_, name_ + " (moved)", std::move(imm), domain_};
}

double admissibility_threshold(const Vec3& x1, const Vec3& x2) {
  return 1e-12 * (1.0 + x1.norm() * x2.norm());
}

PointFrame frame_from_jets(SpaceKind kind, const Jet2Vec3& jets, double u, double v) {
  PointFrame f;
  f.kind = kind;
  f.u = u;
  f.v = v;
  f.position = value(jets);
  f.x1 = partial_u(jets);
  f.x2 = partial_v(jets);
  f.x11 = partial_uu(jets);
  f.x12 = partial_uv(jets);
  f.x22 = partial_vv(jets);

  if (!f.position.allFinite() || !f.x1.allFinite() || !f.x2.allFinite() ||
      !f.x11.allFinite() || !f.x12.allFinite() || !f.x22.allFinite()) {
    throw GeometryError(ErrorKind::DomainError, "immersion is not finite at this point");
  }

  double X12 = f.x1[0] * f.x2[1] - f.x2[0] * f.x1[1];
  if (!(std::abs(X12) > admissibility_threshold(f.x1, f.x2))) {
    std::ostringstream msg;
    msg << "isotropic tangent plane at (" << u << ", " << v << "), X12 = " << X12;
    throw GeometryError(ErrorKind::NotAdmissible, msg.str());
  }
  if (X12 < 0) {
    std::swap(f.x1, f.x2);
    std::swap(f.x11, f.x22);
    f.swapped = true;
  }

  const Vec3& a = f.x1;
  const Vec3& b = f.x2;
  f.X12 = a[0] * b[1] - b[0] * a[1];
  f.X23 = a[1] * b[2] - b[1] * a[2];
  f.X31 = a[2] * b[0] - b[2] * a[0];
  f.X13 = -f.X31;

  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) f.g(i, j) = dot(kind, f.x(i), f.x(j));
  }
  f.det_g = f.g.determinant();
  f.g_inv = f.g.inverse();

  const double A = f.X23 / f.X12;
  const double B = (kind == SpaceKind::SimplyIsotropic ? f.X31 : f.X13) / f.X12;
  const double s = metric_sign(kind);
  f.N_h = Vec3(A, B, 1.0);
  f.xi = Vec3(A, B, 0.5 * (1.0 - (A * A + s * B * B)));

  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) f.h(i, j) = background_dot(kind, f.N_h, f.xx(i, j));
  }
  f.A = -f.h * f.g_inv;
  return f;
}

PointFrame frame_at(const SurfacePatch& s, double u, double v) {
  if (!s.domain().contains(u, v)) {
    std::ostringstream msg;
    msg << "(" << u << ", " << v << ") lies outside the patch domain";
    throw GeometryError(ErrorKind::DomainError, msg.str());
  }
  return frame_from_jets(s.kind(), s.evaluate(u, v), u, v);
}

const char* to_string(PointClass c) noexcept {
  switch (c) {
    case PointClass::Diagonalizable: return "diagonalizable";
    case PointClass::NonDiagonalizableReal: return "nondiagonalizable_real";
    case PointClass::ComplexPrincipal: return "complex_principal";
    case PointClass::UmbilicPoint: return "umbilic";
  }
  return "unknown";
}

CurvatureReport curvatures_from_frame(const PointFrame& f, double tol) {
  const Eigen::Matrix2d& g = f.g;
  const Eigen::Matrix2d& h = f.h;
  CurvatureReport r;
  r.K = (h(0, 0) * h(1, 1) - h(0, 1) * h(0, 1)) / f.det_g;
  r.H = 0.5 * (g(0, 0) * h(1, 1) - 2.0 * g(0, 1) * h(0, 1) + g(1, 1) * h(0, 0)) / f.det_g;
  r.discriminant = r.H * r.H - r.K;
  if (r.discriminant > tol) {
    const double root = std::sqrt(r.discriminant);
    r.point_class = PointClass::Diagonalizable;
    r.kappa1 = r.H + root;
    r.kappa2 = r.H - root;
  } else if (r.discriminant < -tol) {
    r.point_class = PointClass::ComplexPrincipal;
  } else if ((h - r.H * g).norm() <= tol * g.norm()) {
    r.point_class = PointClass::UmbilicPoint;
    r.lambda = r.H;
    r.kappa1 = r.kappa2 = r.H;
  } else {
    r.point_class = PointClass::NonDiagonalizableReal;
  }
  return r;
}

CurvatureReport curvatures_at(const SurfacePatch& s, double u, double v, double tol) {
  return curvatures_from_frame(frame_at(s, u, v), tol);
}

double normal_curvature(const SurfacePatch& s, double u, double v, const Eigen::Vector2d& w) {
  const PointFrame f = frame_at(s, u, v);
  const Eigen::Vector2d w_frame = f.swapped ? Eigen::Vector2d(w[1], w[0]) : w;
  const double first = w_frame.dot(f.g * w_frame);
  if (std::abs(first) <= 1e-12) {
    throw GeometryError(s.kind() == SpaceKind::PseudoIsotropic ? ErrorKind::LightlikeDirection
                                                               : ErrorKind::BadParam,
                        "direction has zero isotropic length");
  }
  if (std::abs(std::abs(first) - 1.0) > 1e-9) {
    throw GeometryError(ErrorKind::BadParam, "direction is not unit in the induced metric");
  }
  return w_frame.dot(f.h * w_frame);
}

std::vector<std::pair<double, double>> grid_points(const Domain& d, int nu, int nv) {
  auto axis = [](double lo, double hi, int n, int i) {
    if (n <= 1) return 0.5 * (lo + hi);
    if (i == n - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(std::max(nu, 0)) * static_cast<std::size_t>(std::max(nv, 0)));
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) pts.emplace_back(axis(d.u0, d.u1, nu, i), axis(d.v0, d.v1, nv, j));
  }
  return pts;
}

AdmissibilityReport is_admissible(const SurfacePatch& s, int nu, int nv) {
  AdmissibilityReport r;
  r.min_abs_X12 = std::numeric_limits<double>::infinity();
  for (const auto& [u, v] : grid_points(s.domain(), nu, nv)) {
    ++r.points;
    Jet2Vec3 jets;
    try {
      jets = s.evaluate(u, v);
    } catch (const GeometryError&) {
      continue;
    }
    const Vec3 x1 = partial_u(jets), x2 = partial_v(jets);
    r.min_abs_X12 = std::min(r.min_abs_X12, std::abs(x1[0] * x2[1] - x2[0] * x1[1]));
    try {
      const PointFrame f = frame_from_jets(s.kind(), jets, u, v);
      ++r.admissible_points;
      if (s.kind() == SpaceKind::PseudoIsotropic && !(f.det_g < 0)) r.timelike = false;
    } catch (const GeometryError&) {
    }
  }
  return r;
}

double lightlike_indicator(const PointFrame& f) {
  const double s = metric_sign(f.kind);
  return (f.X23 * f.X23 + s * f.X13 * f.X13 + f.X12 * f.X12) / (f.X12 * f.X12);
}

namespace {

std::optional<double> indicator_at(const SurfacePatch& s, double u, double v) {
  try {
    return lightlike_indicator(frame_at(s, u, v));
  } catch (const GeometryError&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<std::pair<double, double>> lightlike_points(const SurfacePatch& s, int nu, int nv) {
  if (s.kind() != SpaceKind::PseudoIsotropic) {
    throw GeometryError(ErrorKind::WrongSpace,
                        "lightlike points exist only in pseudo-isotropic space");
  }
  const auto pts = grid_points(s.domain(), nu, nv);
  std::vector<std::optional<double>> values;
  values.reserve(pts.size());
  for (const auto& [u, v] : pts) values.push_back(indicator_at(s, u, v));

  std::vector<std::pair<double, double>> found;
  auto refine = [&](std::pair<double, double> a, double fa, std::pair<double, double> b) {
    for (int it = 0; it < 80; ++it) {
      const std::pair<double, double> m{0.5 * (a.first + b.first), 0.5 * (a.second + b.second)};
      const auto fm = indicator_at(s, m.first, m.second);
      if (!fm) break;
      if (*fm == 0.0) return m;
      if ((*fm > 0) == (fa > 0)) {
        a = m;
        fa = *fm;
      } else {
        b = m;
      }
    }
    return std::pair<double, double>{0.5 * (a.first + b.first), 0.5 * (a.second + b.second)};
  };

  const auto index = [nv](int i, int j) { return static_cast<std::size_t>(i * nv + j); };
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const auto& here = values[index(i, j)];
      if (!here) continue;
      if (std::abs(*here) <= 1e-12) {
        found.push_back(pts[index(i, j)]);
        continue;
      }
      for (const auto& [di, dj] : {std::pair{1, 0}, std::pair{0, 1}}) {
        if (i + di >= nu || j + dj >= nv) continue;
        const auto& there = values[index(i + di, j + dj)];
        if (!there || std::abs(*there) <= 1e-12) continue;
        if ((*here > 0) != (*there > 0)) {
          found.push_back(refine(pts[index(i, j)], *here, pts[index(i + di, j + dj)]));
        }
      }
    }
  }
  return found;
}

}  // namespace isogeo
