#include "isogeo/connection.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "isogeo/errors.hpp"

namespace isogeo {

double Rank4::max_abs() const {
  double m = 0;
  for (double x : c) m = std::max(m, std::abs(x));
  return m;
}

double Rank4::max_abs_difference(const Rank4& other) const {
  double m = 0;
  for (std::size_t i = 0; i < c.size(); ++i) m = std::max(m, std::abs(c[i] - other.c[i]));
  return m;
}

double relative_denominator(const PointFrame& f) {
  return f.xi[0] * f.xi[0] + metric_sign(f.kind) * f.xi[1] * f.xi[1] + f.xi[2];
}

ConnectionCoeffs coeffs_from_frame(const PointFrame& f) {
  ConnectionCoeffs c;
  c.denom = relative_denominator(f);
  if (std::abs(c.denom) <= kLightlikeDenom) {
    throw GeometryError(ErrorKind::LightlikePoint, "relative connection is singular here");
  }
  c.reliable = std::abs(c.denom) >= kUnreliableDenom;

  Eigen::Matrix2d J;
  J << f.x1[0], f.x2[0], f.x1[1], f.x2[1];
  const Eigen::Matrix2d J_inv = J.inverse();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Vec3& xij = f.xx(i, j);
      const Eigen::Vector2d gam = J_inv * Eigen::Vector2d(xij[0], xij[1]);
      c.gamma[0](i, j) = gam[0];
      c.gamma[1](i, j) = gam[1];
    }
  }
  c.rho = f.h / c.denom;
  const Eigen::Vector2d w = f.g_inv * f.x3();
  for (int k = 0; k < 2; ++k) c.xi[k] = c.gamma[k] + w[k] * c.rho;
  return c;
}

ConnectionCoeffs coeffs_at(const SurfacePatch& s, double u, double v) {
  return coeffs_from_frame(frame_at(s, u, v));
}

double default_fd_step(const SurfacePatch& s) { return 1e-4 * s.domain().diameter(); }

Rank4 curvature_tensor(const Christoffel& c, const std::array<Christoffel, 2>& dc) {
  Rank4 r;
  for (int l = 0; l < 2; ++l) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
          double v = dc[k][l](i, j) - dc[j][l](i, k);
          for (int s = 0; s < 2; ++s) v += c[s](i, j) * c[l](s, k) - c[s](i, k) * c[l](s, j);
          r(l, i, j, k) = v;
        }
      }
    }
  }
  return r;
}

namespace {

struct StencilValue {
  PointFrame frame;
  ConnectionCoeffs coeffs;
};

StencilValue stencil_value(const SurfacePatch& s, double u, double v, bool swapped) {
  if (!s.domain().contains(u, v)) {
    throw GeometryError(ErrorKind::StencilOutsideDomain,
                        "finite-difference stencil leaves the patch domain");
  }
  StencilValue out{frame_at(s, u, v), {}};
  if (out.frame.swapped != swapped) {
    throw GeometryError(ErrorKind::NotAdmissible,
                        "orientation changes inside the finite-difference stencil");
  }
  out.coeffs = coeffs_from_frame(out.frame);
  return out;
}

}  // namespace

CurvatureTensorSample curvature_tensors_at(const SurfacePatch& s, double u, double v,
                                           double fd_step) {
  if (!(fd_step > 0)) throw GeometryError(ErrorKind::BadParam, "fd_step must be positive");
  CurvatureTensorSample out;
  out.fd_step = fd_step;
  out.frame = frame_at(s, u, v);
  out.coeffs = coeffs_from_frame(out.frame);
  const bool swapped = out.frame.swapped;

  std::array<Christoffel, 2> d_gamma, d_xi;
  for (int c = 0; c < 2; ++c) {
    // Frame coordinate c is parameter 1 - c when the roles are exchanged.
    const int param = swapped ? 1 - c : c;
    const double du = param == 0 ? fd_step : 0.0;
    const double dv = param == 1 ? fd_step : 0.0;
    const StencilValue plus = stencil_value(s, u + du, v + dv, swapped);
    const StencilValue minus = stencil_value(s, u - du, v - dv, swapped);
    const double inv = 1.0 / (2.0 * fd_step);
    for (int k = 0; k < 2; ++k) {
      d_gamma[c][k] = (plus.coeffs.gamma[k] - minus.coeffs.gamma[k]) * inv;
      d_xi[c][k] = (plus.coeffs.xi[k] - minus.coeffs.xi[k]) * inv;
    }
    out.d_rho[c] = (plus.coeffs.rho - minus.coeffs.rho) * inv;
    out.d_h[c] = (plus.frame.h - minus.frame.h) * inv;
  }

  out.R_lc = curvature_tensor(out.coeffs.gamma, d_gamma);
  out.R_rel = curvature_tensor(out.coeffs.xi, d_xi);
  for (int d = 0; d < 2; ++d) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int c = 0; c < 2; ++c) {
          double v = 0;
          for (int e = 0; e < 2; ++e) v += out.frame.g(e, d) * out.R_rel(e, a, b, c);
          out.R_lowered(d, a, b, c) = v;
        }
      }
    }
  }
  return out;
}

EgregiumResult egregium_from_sample(const CurvatureTensorSample& t) {
  EgregiumResult r;
  r.K_from_tensor = t.coeffs.denom * t.R_lowered(1, 0, 0, 1) / t.frame.det_g;
  r.K_extrinsic = curvatures_from_frame(t.frame).K;
  const double diff = std::abs(r.K_from_tensor - r.K_extrinsic);
  r.rel_err = std::abs(r.K_extrinsic) > 1e-6 ? diff / std::abs(r.K_extrinsic) : diff;
  return r;
}

EgregiumResult egregium_check(const SurfacePatch& s, double u, double v, double fd_step) {
  return egregium_from_sample(curvature_tensors_at(s, u, v, fd_step));
}

CodazziResult codazzi_from_sample(const CurvatureTensorSample& t) {
  const auto& rho = t.coeffs.rho;
  const auto& xi = t.coeffs.xi;
  const auto& gamma = t.coeffs.gamma;
  const auto& h = t.frame.h;
  CodazziResult r;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        double rel = t.d_rho[c](a, b) - t.d_rho[b](a, c);
        double lc = t.d_h[c](a, b) - t.d_h[b](a, c);
        for (int d = 0; d < 2; ++d) {
          rel += xi[d](a, b) * rho(c, d) - xi[d](a, c) * rho(b, d);
          lc += gamma[d](a, b) * h(d, c) - gamma[d](a, c) * h(d, b);
        }
        r.relative = std::max(r.relative, std::abs(rel));
        r.levi_civita = std::max(r.levi_civita, std::abs(lc));
      }
    }
  }
  return r;
}

CodazziResult codazzi_residual(const SurfacePatch& s, double u, double v, double fd_step) {
  return codazzi_from_sample(curvature_tensors_at(s, u, v, fd_step));
}

std::array<Rank4, 3> gauss_rhs(const PointFrame& f, const ConnectionCoeffs& c) {
  std::array<Rank4, 3> out;
  const auto& h = f.h;
  const auto& rho = c.rho;
  const auto& gi = f.g_inv;
  for (int e = 0; e < 2; ++e) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int cc = 0; cc < 2; ++cc) {
          double v0 = 0, v1 = 0, v2 = 0;
          for (int d = 0; d < 2; ++d) {
            v0 += (rho(a, b) * h(cc, d) - rho(a, cc) * h(b, d)) * gi(e, d);
            v1 += (h(a, b) * h(cc, d) - h(a, cc) * h(b, d)) * gi(e, d);
            v2 += (rho(a, b) * rho(cc, d) - rho(a, cc) * rho(b, d)) * gi(e, d);
          }
          out[0](e, a, b, cc) = v0;
          out[1](e, a, b, cc) = v1 / c.denom;
          out[2](e, a, b, cc) = c.denom * v2;
        }
      }
    }
  }
  return out;
}

}  // namespace isogeo
