#pragma once

// Levi-Civita and relative connections of an admissible patch, their
// curvature tensors and the Gauss / Codazzi identities.

#include <array>

#include <Eigen/Core>

#include "isogeo/surface.hpp"

namespace isogeo {

/// C[k](i, j) = C_ij^k.
using Christoffel = std::array<Eigen::Matrix2d, 2>;

/// Four-index array, R(l, i, j, k) = R^l_ijk (or R_lijk when lowered).
struct Rank4 {
  std::array<double, 16> c{};

  double& operator()(int l, int i, int j, int k) { return c[static_cast<std::size_t>(((l * 2 + i) * 2 + j) * 2 + k)]; }
  double operator()(int l, int i, int j, int k) const {
    return c[static_cast<std::size_t>(((l * 2 + i) * 2 + j) * 2 + k)];
  }
  double max_abs() const;
  double max_abs_difference(const Rank4& other) const;
};

inline constexpr double kLightlikeDenom = 1e-10;
inline constexpr double kUnreliableDenom = 1e-6;

struct ConnectionCoeffs {
  Christoffel gamma{Eigen::Matrix2d::Zero(), Eigen::Matrix2d::Zero()};
  Christoffel xi{Eigen::Matrix2d::Zero(), Eigen::Matrix2d::Zero()};
  Eigen::Matrix2d rho = Eigen::Matrix2d::Zero();
  /// |xi~|^2 + xi^3 with the norm of the space (signed in pseudo).
  double denom = 0;
  /// False when |denom| < 1e-6: rho and xi are computed but near blow-up.
  bool reliable = true;
};

/// Throws LightlikePoint when |denom| <= 1e-10.
ConnectionCoeffs coeffs_from_frame(const PointFrame& f);
ConnectionCoeffs coeffs_at(const SurfacePatch& s, double u, double v);

/// |xi~|^2 + xi^3 at a frame, without any guard.
double relative_denominator(const PointFrame& f);

struct CurvatureTensorSample {
  Rank4 R_lc;
  Rank4 R_rel;
  Rank4 R_lowered;
  double fd_step = 0;
  PointFrame frame;
  ConnectionCoeffs coeffs;
  /// d/dq_c of rho_ab, indexed [c](a, b), in frame order.
  std::array<Eigen::Matrix2d, 2> d_rho;
  std::array<Eigen::Matrix2d, 2> d_h;
};

/// Default finite-difference step: 1e-4 times the domain diameter.
double default_fd_step(const SurfacePatch& s);

/// Coefficient derivatives by second-order central differences on the
/// five-point cross stencil. Throws StencilOutsideDomain if a stencil point
/// leaves the domain.
CurvatureTensorSample curvature_tensors_at(const SurfacePatch& s, double u, double v,
                                           double fd_step);

/// R^l_ijk = C^l_ij,k - C^l_ik,j + C^s_ij C^l_sk - C^s_ik C^l_sj.
Rank4 curvature_tensor(const Christoffel& c, const std::array<Christoffel, 2>& dc);

struct EgregiumResult {
  double K_from_tensor = 0;
  double K_extrinsic = 0;
  /// Relative error, or absolute error when |K_extrinsic| <= 1e-6.
  double rel_err = 0;
};

EgregiumResult egregium_from_sample(const CurvatureTensorSample& t);
EgregiumResult egregium_check(const SurfacePatch& s, double u, double v, double fd_step);

struct CodazziResult {
  double relative = 0;
  double levi_civita = 0;
};

CodazziResult codazzi_from_sample(const CurvatureTensorSample& t);
CodazziResult codazzi_residual(const SurfacePatch& s, double u, double v, double fd_step);

/// The three right-hand sides of the relative Gauss equation, as R^e_abc:
/// (rho_ab h_cd - rho_ac h_bd) g^ed, (h_ab h_cd - h_ac h_bd) g^ed / denom and
/// denom (rho_ab rho_cd - rho_ac rho_bd) g^ed.
std::array<Rank4, 3> gauss_rhs(const PointFrame& f, const ConnectionCoeffs& c);

}  // namespace isogeo
