#pragma once

// Ambient algebra of simply isotropic and pseudo-isotropic space.
//
// Both spaces are R^3 with the degenerate metric dx^2 + dy^2 (simply) or
// dx^2 - dy^2 (pseudo); e3 = (0, 0, 1) is the isotropic direction. The
// non-degenerate background products <,> (Euclidean) and <,>_1 (Lorentzian,
// signature + - +) and their cross products are provided alongside.

#include <cmath>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace isogeo {

enum class SpaceKind { SimplyIsotropic, PseudoIsotropic };

using Vec3 = Eigen::Vector3d;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

/// "i3" / "ip3".
std::string_view to_string(SpaceKind kind) noexcept;

/// +1 in simply isotropic space, -1 in pseudo-isotropic space.
constexpr double metric_sign(SpaceKind kind) noexcept {
  return kind == SpaceKind::SimplyIsotropic ? 1.0 : -1.0;
}

/// Isotropic inner product: u1 v1 +/- u2 v2. The third components never enter.
template <typename Scalar>
Scalar dot(SpaceKind kind, const Vector3<Scalar>& u, const Vector3<Scalar>& v) {
  return u[0] * v[0] + metric_sign(kind) * (u[1] * v[1]);
}

/// Semi-norm sqrt(|<u,u>|).
inline double norm(SpaceKind kind, const Vec3& u) {
  return std::sqrt(std::abs(dot(kind, u, u)));
}

inline Vec3 top_view(const Vec3& u) { return {u[0], u[1], 0.0}; }

/// |v3 - u3|, meaningful for points with the same top view.
inline double codistance(const Vec3& u, const Vec3& v) { return std::abs(v[2] - u[2]); }

inline double dot_euclid(const Vec3& u, const Vec3& v) { return u.dot(v); }

/// Lorentzian background product u1 v1 - u2 v2 + u3 v3.
inline double dot_lorentz(const Vec3& u, const Vec3& v) {
  return u[0] * v[0] - u[1] * v[1] + u[2] * v[2];
}

inline Vec3 cross_euclid(const Vec3& u, const Vec3& v) { return u.cross(v); }

/// u x_1 v = (u2 v3 - u3 v2, u1 v3 - u3 v1, u1 v2 - u2 v1).
inline Vec3 cross_lorentz(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[0] * v[2] - u[2] * v[0],
          u[0] * v[1] - u[1] * v[0]};
}

/// Background product matching the space: Euclidean for I3, Lorentzian for Ip3.
inline double background_dot(SpaceKind kind, const Vec3& u, const Vec3& v) {
  return kind == SpaceKind::SimplyIsotropic ? dot_euclid(u, v) : dot_lorentz(u, v);
}

inline Vec3 background_cross(SpaceKind kind, const Vec3& u, const Vec3& v) {
  return kind == SpaceKind::SimplyIsotropic ? cross_euclid(u, v) : cross_lorentz(u, v);
}

/// Rigid motion of the isotropic group: a rotation (simply) or boost (pseudo)
/// by `phi` of the top view, translation (a, b, c) and the shear
/// z -> z + c1 x + c2 y.
struct Motion {
  double a = 0, b = 0, c = 0, c1 = 0, c2 = 0, phi = 0;
  SpaceKind kind = SpaceKind::SimplyIsotropic;

  /// Linear part acting on the top view.
  Eigen::Matrix2d planar() const {
    Eigen::Matrix2d m;
    if (kind == SpaceKind::SimplyIsotropic) {
      m << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    } else {
      m << std::cosh(phi), std::sinh(phi), std::sinh(phi), std::cosh(phi);
    }
    return m;
  }

  /// Homogeneous 4x4 matrix of the affine map.
  Eigen::Matrix4d to_affine() const;
};

/// Applies the motion to a point (or a point's jets: the map is affine, so
/// derivatives transform by the linear part).
template <typename Scalar>
Vector3<Scalar> apply_motion(const Motion& m, const Vector3<Scalar>& p) {
  const Eigen::Matrix2d r = m.planar();
  Vector3<Scalar> out;
  out[0] = r(0, 0) * p[0] + r(0, 1) * p[1] + m.a;
  out[1] = r(1, 0) * p[0] + r(1, 1) * p[1] + m.b;
  out[2] = m.c1 * p[0] + m.c2 * p[1] + p[2] + m.c;
  return out;
}

/// Linear part only, for difference vectors.
inline Vec3 apply_motion_linear(const Motion& m, const Vec3& d) {
  const Eigen::Matrix2d r = m.planar();
  return {r(0, 0) * d[0] + r(0, 1) * d[1], r(1, 0) * d[0] + r(1, 1) * d[1],
          m.c1 * d[0] + m.c2 * d[1] + d[2]};
}

/// second after first. Throws GeometryError(WrongSpace) for mixed kinds.
Motion compose(const Motion& second, const Motion& first);

}  // namespace isogeo
