#include "isogeo/isotropy.hpp"

#include "isogeo/errors.hpp"

namespace isogeo {

std::string_view to_string(SpaceKind kind) noexcept {
  return kind == SpaceKind::SimplyIsotropic ? "i3" : "ip3";
}

Eigen::Matrix4d Motion::to_affine() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<2, 2>() = planar();
  m(2, 0) = c1;
  m(2, 1) = c2;
  m(0, 3) = a;
  m(1, 3) = b;
  m(2, 3) = c;
  return m;
}

Motion compose(const Motion& second, const Motion& first) {
  if (second.kind != first.kind) {
    throw GeometryError(ErrorKind::WrongSpace, "cannot compose motions of different spaces");
  }
  // Rotations (boosts) add their angles (rapidities); the translation and
  // shear of `second` are pulled back through the linear part of `first`.
  const Eigen::Matrix2d r1 = first.planar();
  const Eigen::Matrix2d r2 = second.planar();
  const Eigen::Vector2d t = r2 * Eigen::Vector2d(first.a, first.b) +
                            Eigen::Vector2d(second.a, second.b);
  const Eigen::Vector2d shear = r1.transpose() * Eigen::Vector2d(second.c1, second.c2) +
                                Eigen::Vector2d(first.c1, first.c2);
  Motion out;
  out.kind = first.kind;
  out.phi = first.phi + second.phi;
  out.a = t[0];
  out.b = t[1];
  out.c = second.c + first.c + second.c1 * first.a + second.c2 * first.b;
  out.c1 = shear[0];
  out.c2 = shear[1];
  return out;
}

}  // namespace isogeo
