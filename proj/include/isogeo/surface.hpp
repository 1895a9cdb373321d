#pragma once

// Pointwise extrinsic geometry of admissible surface patches.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "isogeo/expr.hpp"
#include "isogeo/isotropy.hpp"
#include "isogeo/jet.hpp"

namespace isogeo {

/// Closed parameter rectangle [u0, u1] x [v0, v1].
struct Domain {
  double u0 = -1, u1 = 1, v0 = -1, v1 = 1;

  bool contains(double u, double v) const {
    return u >= u0 && u <= u1 && v >= v0 && v <= v1;
  }
  double diameter() const { return std::hypot(u1 - u0, v1 - v0); }
};

/// Immersion evaluated on seeded parameter jets.
using Immersion = std::function<Jet2Vec3(const Jet2d& u, const Jet2d& v)>;

/// An evaluatable immersion x(u, v) into I3 or Ip3.
class SurfacePatch {
 public:
  enum class Form { Graph, Parametric, Builtin };

  /// Normal form (u, v, f(u, v)).
  static SurfacePatch graph(SpaceKind kind, Expr f, Domain domain);
  static SurfacePatch parametric(SpaceKind kind, Expr x, Expr y, Expr z, Domain domain);
  /// Arbitrary immersion; `name` identifies it in reports.
  static SurfacePatch builtin(SpaceKind kind, std::string name, Immersion immersion,
                              Domain domain);

  SpaceKind kind() const { return kind_; }
  Form form() const { return form_; }
  const Domain& domain() const { return domain_; }
  const std::string& name() const { return name_; }

  /// Value, first and second partials of the immersion at (u, v). No domain
  /// check; frame_at and friends enforce the domain.
  Jet2Vec3 evaluate(double u, double v) const {
    return immersion_(Jet2d::seed_u(u), Jet2d::seed_v(v));
  }
  Jet2Vec3 evaluate(const Jet2d& u, const Jet2d& v) const { return immersion_(u, v); }

  /// The same patch with a different parameter rectangle.
  SurfacePatch with_domain(Domain domain) const;
  /// The image of this patch under a rigid motion of the same space.
  SurfacePatch transformed(const Motion& motion) const;

 private:
  SurfacePatch(SpaceKind kind, Form form, std::string name, Immersion immersion,
               Domain domain)
      : kind_(kind), form_(form), name_(std::move(name)),
        immersion_(std::move(immersion)), domain_(domain) {}

  SpaceKind kind_;
  Form form_;
  std::string name_;
  Immersion immersion_;
  Domain domain_;
};

/// Everything about the patch at one point. When the parameterisation has
/// X12 < 0 the parameter roles are exchanged (`swapped`) so that X12 > 0; all
/// indexed quantities below then refer to the exchanged order.
struct PointFrame {
  SpaceKind kind = SpaceKind::SimplyIsotropic;
  bool swapped = false;
  double u = 0, v = 0;

  Vec3 position = Vec3::Zero();
  Vec3 x1 = Vec3::Zero(), x2 = Vec3::Zero();
  Vec3 x11 = Vec3::Zero(), x12 = Vec3::Zero(), x22 = Vec3::Zero();

  // 2x2 minors of the Jacobian rows x1, x2: X_ij = x1^i x2^j - x2^i x1^j.
  double X12 = 0, X23 = 0, X31 = 0, X13 = 0;

  Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d g_inv = Eigen::Matrix2d::Zero();
  double det_g = 0;

  Vec3 N_h = Vec3::Zero();
  /// Parabolic Gauss map, on the unit sphere z = (1 - (x^2 +/- y^2)) / 2.
  Vec3 xi = Vec3::Zero();

  Eigen::Matrix2d h = Eigen::Matrix2d::Zero();
  /// Row i, column k holds A_i^k, with L(x_i) = -A_i^k x_k and h = -A g.
  Eigen::Matrix2d A = Eigen::Matrix2d::Zero();

  /// Matrix of the shape operator in the basis {x1, x2}: column i holds the
  /// components of L(x_i). Equals g^{-1} h.
  Eigen::Matrix2d shape_operator() const { return -A.transpose(); }

  const Vec3& x(int i) const { return i == 0 ? x1 : x2; }
  const Vec3& xx(int i, int j) const {
    return i != j ? x12 : (i == 0 ? x11 : x22);
  }
  /// Tangent components along e3: (x1^3, x2^3).
  Eigen::Vector2d x3() const { return {x1[2], x2[2]}; }
};

enum class PointClass { Diagonalizable, NonDiagonalizableReal, ComplexPrincipal, UmbilicPoint };

const char* to_string(PointClass c) noexcept;

struct CurvatureReport {
  double K = 0;
  double H = 0;
  double discriminant = 0;  // H^2 - K
  PointClass point_class = PointClass::Diagonalizable;
  /// kappa1 >= kappa2 when Diagonalizable; both equal lambda at an umbilic.
  double kappa1 = 0, kappa2 = 0;
  double lambda = 0;
};

inline constexpr double kUmbilicTolerance = 1e-9;

/// Admissibility threshold: |X12| must exceed 1e-12 (1 + |x1| |x2|).
double admissibility_threshold(const Vec3& x1, const Vec3& x2);

PointFrame frame_at(const SurfacePatch& s, double u, double v);

/// Frame from already evaluated jets; (u, v) are only recorded.
PointFrame frame_from_jets(SpaceKind kind, const Jet2Vec3& jets, double u, double v);

CurvatureReport curvatures_from_frame(const PointFrame& f, double tol = kUmbilicTolerance);
CurvatureReport curvatures_at(const SurfacePatch& s, double u, double v,
                              double tol = kUmbilicTolerance);

/// II(w, w) for a tangent vector w = w^1 x_u + w^2 x_v given in the patch's
/// own parameter order, with |I(w, w)| = 1.
double normal_curvature(const SurfacePatch& s, double u, double v, const Eigen::Vector2d& w);

struct AdmissibilityReport {
  int points = 0;
  int admissible_points = 0;
  double min_abs_X12 = 0;
  /// Pseudo-isotropic only: det g < 0 at every admissible point.
  bool timelike = true;

  bool admissible_everywhere() const { return points > 0 && admissible_points == points; }
  bool admissible_nowhere() const { return admissible_points == 0; }
};

/// Uniform nu x nv grid over the patch domain, endpoints included.
std::vector<std::pair<double, double>> grid_points(const Domain& d, int nu, int nv);

AdmissibilityReport is_admissible(const SurfacePatch& s, int nu, int nv);

/// (X23^2 -/+ X13^2 + X12^2) / X12^2. Zero exactly at lightlike points of a
/// pseudo-isotropic surface; always >= 1 in simply isotropic space.
double lightlike_indicator(const PointFrame& f);

/// Pseudo-isotropic only. Returns points on the lightlike locus found on the
/// grid: grid nodes where the indicator vanishes, and sign changes along grid
/// edges refined by bisection.
std::vector<std::pair<double, double>> lightlike_points(const SurfacePatch& s, int nu, int nv);

}  // namespace isogeo
