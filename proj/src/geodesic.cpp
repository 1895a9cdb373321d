#include "isogeo/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "isogeo/catalog.hpp"
#include "isogeo/connection.hpp"
#include "isogeo/errors.hpp"

namespace isogeo {

const char* to_string(GeodesicKind k) noexcept {
  return k == GeodesicKind::LeviCivita ? "levi_civita" : "relative";
}

const char* to_string(TraceStatus s) noexcept {
  switch (s) {
    case TraceStatus::Completed: return "completed";
    case TraceStatus::LeftDomain: return "left_domain";
    case TraceStatus::LightlikeHit: return "lightlike_hit";
  }
  return "unknown";
}

const char* to_string(PlaneSection::Branch b) noexcept {
  switch (b) {
    case PlaneSection::Branch::Trig: return "trig";
    case PlaneSection::Branch::HyperbolicCosh: return "cosh";
    case PlaneSection::Branch::HyperbolicSinh: return "sinh";
    case PlaneSection::Branch::LinePair: return "line_pair";
  }
  return "unknown";
}

namespace {

using State = Eigen::Vector4d;

// Raised inside the integrator to stop a trace early.
struct Halt {
  TraceStatus status;
  std::string note;
};

int sample_count(double t_end, double step) {
  return static_cast<int>(std::floor(t_end / step + 1e-9));
}

double parallel_residual(const Vec3& acc, const Vec3& n, SpaceKind kind, bool ambient_cross) {
  const double a = acc.norm();
  if (a <= 1e-10) return 0.0;
  const Vec3 c = ambient_cross ? background_cross(kind, acc, n) : acc.cross(n);
  return c.norm() / a;
}

struct Evaluated {
  PointFrame frame;
  ConnectionCoeffs coeffs;
  Eigen::Vector2d w;    // velocity, frame order
  Eigen::Vector2d acc;  // u''^k, frame order
};

Evaluated evaluate_state(const SurfacePatch& s, GeodesicKind kind, const State& y) {
  Evaluated e;
  try {
    e.frame = frame_at(s, y[0], y[1]);
    e.coeffs = coeffs_from_frame(e.frame);
  } catch (const GeometryError& err) {
    switch (err.kind()) {
      case ErrorKind::DomainError: throw Halt{TraceStatus::LeftDomain, "left the parameter domain"};
      case ErrorKind::NotAdmissible: throw Halt{TraceStatus::LeftDomain, "reached an inadmissible point"};
      case ErrorKind::LightlikePoint:
        if (kind == GeodesicKind::Relative) throw Halt{TraceStatus::LightlikeHit, "reached a lightlike point"};
        break;
      default: throw;
    }
  }
  if (kind == GeodesicKind::Relative && !e.coeffs.reliable) {
    throw Halt{TraceStatus::LightlikeHit, "approaching a lightlike point"};
  }
  e.w = e.frame.swapped ? Eigen::Vector2d(y[3], y[2]) : Eigen::Vector2d(y[2], y[3]);
  const Christoffel& c = kind == GeodesicKind::Relative ? e.coeffs.xi : e.coeffs.gamma;
  for (int k = 0; k < 2; ++k) e.acc[k] = -e.w.dot(c[k] * e.w);
  return e;
}

// The Levi-Civita coefficients exist at lightlike points too; recompute them
// there without the relative guard.
Evaluated evaluate_lc_fallback(const SurfacePatch& s, const State& y) {
  Evaluated e;
  e.frame = frame_at(s, y[0], y[1]);
  Eigen::Matrix2d J;
  J << e.frame.x1[0], e.frame.x2[0], e.frame.x1[1], e.frame.x2[1];
  const Eigen::Matrix2d J_inv = J.inverse();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Vec3& xij = e.frame.xx(i, j);
      const Eigen::Vector2d gam = J_inv * Eigen::Vector2d(xij[0], xij[1]);
      e.coeffs.gamma[0](i, j) = gam[0];
      e.coeffs.gamma[1](i, j) = gam[1];
    }
  }
  e.w = e.frame.swapped ? Eigen::Vector2d(y[3], y[2]) : Eigen::Vector2d(y[2], y[3]);
  for (int k = 0; k < 2; ++k) e.acc[k] = -e.w.dot(e.coeffs.gamma[k] * e.w);
  return e;
}

Evaluated evaluate_any(const SurfacePatch& s, GeodesicKind kind, const State& y) {
  if (kind == GeodesicKind::LeviCivita) {
    try {
      return evaluate_state(s, kind, y);
    } catch (const GeometryError& err) {
      if (err.kind() != ErrorKind::LightlikePoint) throw;
    }
    try {
      return evaluate_lc_fallback(s, y);
    } catch (const GeometryError& err) {
      if (err.kind() == ErrorKind::DomainError) throw Halt{TraceStatus::LeftDomain, "left the parameter domain"};
      if (err.kind() == ErrorKind::NotAdmissible) throw Halt{TraceStatus::LeftDomain, "reached an inadmissible point"};
      throw;
    }
  }
  return evaluate_state(s, kind, y);
}

State derivative(const SurfacePatch& s, GeodesicKind kind, const State& y) {
  const Evaluated e = evaluate_any(s, kind, y);
  const Eigen::Vector2d acc = e.frame.swapped ? Eigen::Vector2d(e.acc[1], e.acc[0]) : e.acc;
  return {y[2], y[3], acc[0], acc[1]};
}

GeodesicSample make_sample(const SurfacePatch& s, GeodesicKind kind, double t, const State& y) {
  const Evaluated e = evaluate_any(s, kind, y);
  const PointFrame& f = e.frame;
  GeodesicSample out;
  out.t = t;
  out.u = y[0];
  out.v = y[1];
  out.du = y[2];
  out.dv = y[3];
  out.position = f.position;
  Vec3 gamma_dd = f.x1 * e.acc[0] + f.x2 * e.acc[1];
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) gamma_dd += f.xx(i, j) * (e.w[i] * e.w[j]);
  }
  if (kind == GeodesicKind::Relative) {
    out.parallel_residual = parallel_residual(gamma_dd, f.xi, s.kind(), true);
  } else {
    out.parallel_residual = parallel_residual(gamma_dd, Vec3::UnitZ(), s.kind(), false);
  }
  out.speed = std::sqrt(std::abs(e.w.dot(f.g * e.w)));
  return out;
}

}  // namespace

GeodesicTrace integrate(const SurfacePatch& s, GeodesicKind kind, double u0, double v0,
                        double du0, double dv0, double t_end, double step) {
  if (!(step > 0)) throw GeometryError(ErrorKind::StepNotPositive, "step must be positive");
  if (!s.domain().contains(u0, v0)) {
    throw GeometryError(ErrorKind::LeftDomain, "start point at t = 0 is outside the domain");
  }
  {
    const PointFrame f = frame_at(s, u0, v0);  // NotAdmissible propagates
    if (kind == GeodesicKind::Relative) {
      const ConnectionCoeffs c = coeffs_from_frame(f);  // LightlikePoint propagates
      if (!c.reliable) {
        throw GeometryError(ErrorKind::LightlikePoint, "start point is too close to the lightlike locus");
      }
    }
  }

  GeodesicTrace trace;
  trace.kind = kind;
  State y(u0, v0, du0, dv0);
  const int n = sample_count(t_end, step);
  trace.samples.reserve(static_cast<std::size_t>(std::max(n, 0) + 1));
  trace.samples.push_back(make_sample(s, kind, 0.0, y));
  try {
    for (int i = 1; i <= n; ++i) {
      const State k1 = derivative(s, kind, y);
      const State k2 = derivative(s, kind, y + 0.5 * step * k1);
      const State k3 = derivative(s, kind, y + 0.5 * step * k2);
      const State k4 = derivative(s, kind, y + step * k3);
      const State next = y + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      GeodesicSample sample = make_sample(s, kind, step * i, next);
      y = next;
      trace.samples.push_back(sample);
    }
  } catch (const Halt& h) {
    trace.status = h.status;
    trace.note = h.note;
  }
  trace.t_stop = trace.samples.back().t;
  return trace;
}

PlaneSection PlaneSection::make(SpaceKind kind, double p, double a, double b, double theta0,
                                 double theta_dot0, int line_sign) {
  if (!(p != 0) || !std::isfinite(p) || !std::isfinite(a) || !std::isfinite(b)) {
    throw GeometryError(ErrorKind::BadParam, "plane section needs finite p != 0, a, b");
  }
  PlaneSection ps;
  ps.kind = kind;
  ps.p = p;
  ps.a = a;
  ps.b = b;
  ps.theta0 = theta0;
  ps.theta_dot0 = theta_dot0;
  ps.line_sign = line_sign >= 0 ? 1 : -1;
  const double R2 = 1 + a * a + metric_sign(kind) * b * b;
  if (kind == SpaceKind::SimplyIsotropic) {
    ps.branch = Branch::Trig;
    ps.R = std::sqrt(R2);
  } else if (std::abs(R2) <= 1e-12) {
    ps.branch = Branch::LinePair;
    ps.R = 0;
  } else if (R2 > 0) {
    ps.branch = Branch::HyperbolicCosh;
    ps.R = std::sqrt(R2);
  } else {
    ps.branch = Branch::HyperbolicSinh;
    ps.R = std::sqrt(-R2);
  }
  return ps;
}

Vec3 PlaneSection::point(double t) const {
  switch (branch) {
    case Branch::Trig: {
      const double c = std::cos(t), s = std::sin(t);
      return p * Vec3(R * c + a, R * s + b, -a * a - b * b - R * (a * c + b * s));
    }
    case Branch::HyperbolicCosh: {
      const double c = std::cosh(t), s = std::sinh(t);
      return p * Vec3(R * c + a, R * s + b, -a * a + b * b - R * (a * c - b * s));
    }
    case Branch::HyperbolicSinh: {
      const double c = std::cosh(t), s = std::sinh(t);
      return p * Vec3(R * s + a, R * c + b, b * b - a * a - R * (a * s - b * c));
    }
    case Branch::LinePair: {
      const double sg = line_sign;
      return p * Vec3(a + t, b + sg * t, b * b - a * a + t * (sg * b - a));
    }
  }
  return Vec3::Zero();
}

Vec3 PlaneSection::tangent(double t) const {
  switch (branch) {
    case Branch::Trig: {
      const double c = std::cos(t), s = std::sin(t);
      return p * Vec3(-R * s, R * c, -R * (-a * s + b * c));
    }
    case Branch::HyperbolicCosh: {
      const double c = std::cosh(t), s = std::sinh(t);
      return p * Vec3(R * s, R * c, -R * (a * s - b * c));
    }
    case Branch::HyperbolicSinh: {
      const double c = std::cosh(t), s = std::sinh(t);
      return p * Vec3(R * c, R * s, -R * (a * c - b * s));
    }
    case Branch::LinePair: {
      const double sg = line_sign;
      return p * Vec3(1, sg, sg * b - a);
    }
  }
  return Vec3::Zero();
}

Vec3 PlaneSection::second(double t) const {
  switch (branch) {
    case Branch::Trig: {
      const double c = std::cos(t), s = std::sin(t);
      return p * Vec3(-R * c, -R * s, R * (a * c + b * s));
    }
    case Branch::HyperbolicCosh: {
      const double c = std::cosh(t), s = std::sinh(t);
      return p * Vec3(R * c, R * s, -R * (a * c - b * s));
    }
    case Branch::HyperbolicSinh: {
      const double c = std::cosh(t), s = std::sinh(t);
      return p * Vec3(R * s, R * c, -R * (a * s - b * c));
    }
    case Branch::LinePair: return Vec3::Zero();
  }
  return Vec3::Zero();
}

double PlaneSection::D(double t) const {
  switch (branch) {
    case Branch::Trig: return R + a * std::cos(t) + b * std::sin(t);
    case Branch::HyperbolicCosh: return R + a * std::cosh(t) - b * std::sinh(t);
    case Branch::HyperbolicSinh: return R - a * std::sinh(t) + b * std::cosh(t);
    case Branch::LinePair: return 1.0;
  }
  return 1.0;
}

double PlaneSection::dD(double t) const {
  switch (branch) {
    case Branch::Trig: return -a * std::sin(t) + b * std::cos(t);
    case Branch::HyperbolicCosh: return a * std::sinh(t) - b * std::cosh(t);
    case Branch::HyperbolicSinh: return -a * std::cosh(t) + b * std::sinh(t);
    case Branch::LinePair: return 0.0;
  }
  return 0.0;
}

double plane_residual(const PlaneSection& ps, const Vec3& x) {
  return std::abs(x[2] + ps.a * x[0] + metric_sign(ps.kind) * ps.b * x[1]);
}

double sphere_residual(const PlaneSection& ps, const Vec3& x) {
  return std::abs(x[2] - ps.p / 2 + (x[0] * x[0] + metric_sign(ps.kind) * x[1] * x[1]) / (2 * ps.p));
}

namespace {

// Theta(theta) = theta' as a function of theta, tabulated by RK4 in theta
// and read back by cubic Hermite interpolation. The table grows on demand in
// both directions from theta0.
class ThetaTable {
 public:
  ThetaTable(const PlaneSection& ps, double h) : ps_(ps), h_(h) {
    forward_.push_back(ps.theta_dot0);
    backward_.push_back(ps.theta_dot0);
  }

  double slope(double theta, double value) const {
    const double d = ps_.D(theta);
    if (std::abs(d) < 1e-9) {
      throw GeometryError(ErrorKind::DegenerateBranch, "plane section passes a lightlike point");
    }
    return -ps_.dD(theta) / d * value;
  }

  double operator()(double theta) {
    const double x = (theta - ps_.theta0) / h_;
    std::vector<double>& nodes = x >= 0 ? forward_ : backward_;
    const double dir = x >= 0 ? 1.0 : -1.0;
    const double ax = std::abs(x);
    const auto i = static_cast<std::size_t>(std::floor(ax));
    while (nodes.size() < i + 2) extend(nodes, dir);
    const double t0 = ps_.theta0 + dir * h_ * static_cast<double>(i);
    const double t1 = t0 + dir * h_;
    const double y0 = nodes[i], y1 = nodes[i + 1];
    const double m0 = slope(t0, y0) * dir * h_, m1 = slope(t1, y1) * dir * h_;
    const double s = ax - static_cast<double>(i);
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * m1;
  }

 private:
  void extend(std::vector<double>& nodes, double dir) {
    const double h = dir * h_;
    const double t = ps_.theta0 + h * static_cast<double>(nodes.size() - 1);
    const double y = nodes.back();
    const double k1 = slope(t, y);
    const double k2 = slope(t + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = slope(t + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = slope(t + h, y + h * k3);
    nodes.push_back(y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4));
  }

  const PlaneSection& ps_;
  double h_;
  std::vector<double> forward_, backward_;
};

constexpr double kThetaStep = 1e-3;

PointFrame sphere_frame(const SurfacePatch& sphere, double x, double y) {
  return frame_from_jets(sphere.kind(), sphere.evaluate(x, y), x, y);
}

}  // namespace

SurfacePatch sphere_for_section(const PlaneSection& ps, double half_width) {
  CatalogParams params;
  params.numbers["p"] = -ps.p;
  return make("parabolic_sphere", ps.kind, params, {-half_width, half_width, -half_width, half_width})
      .patch;
}

GeodesicTrace plane_section(const PlaneSection& ps, double t_end, double step) {
  if (!(step > 0)) throw GeometryError(ErrorKind::StepNotPositive, "step must be positive");
  GeodesicTrace trace;
  trace.kind = GeodesicKind::Relative;
  const SurfacePatch sphere = sphere_for_section(ps, 1.0);
  const double sg = metric_sign(ps.kind);
  ThetaTable Theta(ps, kThetaStep);

  auto sample_at = [&](double t, double theta) {
    const double rate = Theta(theta);
    const double accel = Theta.slope(theta, rate) * rate;
    GeodesicSample s;
    s.t = t;
    s.position = ps.point(theta);
    const Vec3 vel = ps.tangent(theta) * rate;
    const Vec3 acc = ps.second(theta) * rate * rate + ps.tangent(theta) * accel;
    s.u = s.position[0];
    s.v = s.position[1];
    s.du = vel[0];
    s.dv = vel[1];
    s.speed = std::sqrt(std::abs(vel[0] * vel[0] + sg * vel[1] * vel[1]));
    const PointFrame f = sphere_frame(sphere, s.u, s.v);
    s.parallel_residual = parallel_residual(acc, f.xi, ps.kind, true);
    s.plane_residual = plane_residual(ps, s.position);
    s.sphere_residual = sphere_residual(ps, s.position);
    return s;
  };

  const int n = sample_count(t_end, step);
  double theta = ps.theta0;
  try {
    if (ps.branch == PlaneSection::Branch::LinePair) {
      for (int i = 0; i <= n; ++i) {
        theta = ps.theta0 + ps.theta_dot0 * step * i;
        trace.samples.push_back(sample_at(step * i, theta));
      }
    } else {
      trace.samples.push_back(sample_at(0.0, theta));
      for (int i = 1; i <= n; ++i) {
        const double k1 = Theta(theta);
        const double k2 = Theta(theta + 0.5 * step * k1);
        const double k3 = Theta(theta + 0.5 * step * k2);
        const double k4 = Theta(theta + step * k3);
        const double next = theta + step / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        GeodesicSample s = sample_at(step * i, next);
        theta = next;
        trace.samples.push_back(s);
      }
    }
  } catch (const GeometryError& err) {
    if (err.kind() != ErrorKind::DegenerateBranch && err.kind() != ErrorKind::NotAdmissible) throw;
    if (trace.samples.empty()) throw;
    trace.status = TraceStatus::LightlikeHit;
    trace.note = err.what();
  }
  trace.t_stop = trace.samples.back().t;
  return trace;
}

SphereCrossCheck cross_check_sphere_geodesic(double p, double a, double b, SpaceKind kind,
                                             double t_end, double step) {
  SphereCrossCheck out;
  out.section = PlaneSection::make(kind, p, a, b);
  out.explicit_trace = plane_section(out.section, t_end, step);

  double reach = 0;
  for (const auto& s : out.explicit_trace.samples) {
    reach = std::max({reach, std::abs(s.u), std::abs(s.v)});
  }
  const SurfacePatch sphere = sphere_for_section(out.section, 1.5 * reach + 1.0);
  const GeodesicSample& s0 = out.explicit_trace.samples.front();
  out.integrated_trace =
      integrate(sphere, GeodesicKind::Relative, s0.u, s0.v, s0.du, s0.dv, t_end, step);
  for (auto& s : out.integrated_trace.samples) {
    s.plane_residual = plane_residual(out.section, s.position);
    s.sphere_residual = sphere_residual(out.section, s.position);
  }

  const auto& ex = out.explicit_trace.samples;
  const auto& in = out.integrated_trace.samples;
  const std::size_t n = std::min(ex.size(), in.size());
  if (ex.size() != in.size()) out.max_deviation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    out.max_deviation = std::max(out.max_deviation, (ex[i].position - in[i].position).norm());
  }
  double vmin = std::numeric_limits<double>::infinity(), vmax = 0;
  for (const auto* trace : {&ex, &in}) {
    for (const auto& s : *trace) {
      out.max_plane_residual = std::max(out.max_plane_residual, s.plane_residual.value_or(0));
      out.max_sphere_residual = std::max(out.max_sphere_residual, s.sphere_residual.value_or(0));
      out.max_parallel_residual = std::max(out.max_parallel_residual, s.parallel_residual);
    }
  }
  for (const auto& s : in) {
    vmin = std::min(vmin, s.speed);
    vmax = std::max(vmax, s.speed);
  }
  out.speed_variation = vmax > 0 ? (vmax - vmin) / vmax : 0;
  return out;
}

}  // namespace isogeo
