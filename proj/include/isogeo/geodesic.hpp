#pragma once

// Geodesics of the Levi-Civita and relative connections, and the explicit
// plane-section r-geodesics of parabolic spheres.

#include <optional>
#include <string>
#include <vector>

#include "isogeo/surface.hpp"

namespace isogeo {

enum class GeodesicKind { LeviCivita, Relative };

enum class TraceStatus {
  Completed,
  /// Stopped because the next step would leave the parameter domain.
  LeftDomain,
  /// Stopped near a lightlike point (relative kind, pseudo space) or where
  /// the plane-section parameterisation degenerates.
  LightlikeHit,
};

const char* to_string(GeodesicKind k) noexcept;
const char* to_string(TraceStatus s) noexcept;

struct GeodesicSample {
  double t = 0;
  /// Parameters and their derivatives in the patch's own order.
  double u = 0, v = 0, du = 0, dv = 0;
  Vec3 position = Vec3::Zero();
  /// |gamma'' x n| / |gamma''| with n = xi (relative) or e3 (Levi-Civita);
  /// zero when |gamma''| <= 1e-10.
  double parallel_residual = 0;
  /// sqrt(|I(gamma', gamma')|).
  double speed = 0;
  std::optional<double> plane_residual;
  std::optional<double> sphere_residual;
};

struct GeodesicTrace {
  GeodesicKind kind = GeodesicKind::Relative;
  std::vector<GeodesicSample> samples;
  TraceStatus status = TraceStatus::Completed;
  /// Time of the last sample.
  double t_stop = 0;
  std::string note;
};

/// Fixed-step RK4 on (u, v, u', v') for u''^k + C_ij^k u'^i u'^j = 0 with
/// C = Gamma or Xi. Samples at t = n * step for n = 0 .. floor(t_end / step).
/// Throws StepNotPositive, LeftDomain (start outside the domain),
/// NotAdmissible, or LightlikePoint (relative kind starting at or near a
/// lightlike point). Later failures stop the trace and set its status.
GeodesicTrace integrate(const SurfacePatch& s, GeodesicKind kind, double u0, double v0,
                        double du0, double dv0, double t_end, double step);

/// Intersection of the parabolic sphere z = p/2 - (x^2 +/- y^2) / (2p) with a
/// plane through its centre, z = -a x - b y (simply) or z = -a x + b y (pseudo).
struct PlaneSection {
  enum class Branch { Trig, HyperbolicCosh, HyperbolicSinh, LinePair };

  SpaceKind kind = SpaceKind::SimplyIsotropic;
  double p = 1, a = 0, b = 0;
  Branch branch = Branch::Trig;
  /// sqrt(|1 + a^2 +/- b^2|); zero for the line pair.
  double R = 1;
  double theta0 = 0, theta_dot0 = 1;
  /// Which of the two lines (slope +1 or -1 in the top view) for LinePair.
  int line_sign = 1;

  /// Picks the branch from the sign of R^2 (|R^2| <= 1e-12 gives LinePair).
  static PlaneSection make(SpaceKind kind, double p, double a, double b, double theta0 = 0,
                           double theta_dot0 = 1, int line_sign = 1);

  /// Point of the section at curve parameter theta (lambda for LinePair).
  Vec3 point(double theta) const;
  /// d point / d theta and d^2 point / d theta^2.
  Vec3 tangent(double theta) const;
  Vec3 second(double theta) const;
  /// D(theta); the reduced equation reads dTheta/dtheta = -(D'/D) Theta.
  double D(double theta) const;
  double dD(double theta) const;
};

const char* to_string(PlaneSection::Branch b) noexcept;

double plane_residual(const PlaneSection& ps, const Vec3& x);
double sphere_residual(const PlaneSection& ps, const Vec3& x);

/// The section as a timed trace on t = n * step. theta' is found in two
/// stages: dTheta/dtheta = -(D'/D) Theta is integrated in theta, then
/// theta' = Theta(theta) is integrated in t, both by RK4.
GeodesicTrace plane_section(const PlaneSection& ps, double t_end, double step);

/// Parabolic sphere patch (parameter -p) containing the section for t in
/// [0, t_end], large enough for the cross-check.
SurfacePatch sphere_for_section(const PlaneSection& ps, double half_width);

struct SphereCrossCheck {
  PlaneSection section;
  GeodesicTrace explicit_trace;
  GeodesicTrace integrated_trace;
  double max_deviation = 0;
  double max_plane_residual = 0;   // both traces
  double max_sphere_residual = 0;  // both traces
  double max_parallel_residual = 0;  // both traces
  /// Relative variation (max - min) / max of the induced speed along the
  /// integrated trace.
  double speed_variation = 0;
};

SphereCrossCheck cross_check_sphere_geodesic(double p, double a, double b, SpaceKind kind,
                                             double t_end, double step);

}  // namespace isogeo
