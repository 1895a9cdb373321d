#include <doctest.h>

#include <cmath>

#include "isogeo/catalog.hpp"
#include "isogeo/errors.hpp"
#include "isogeo/rng.hpp"
#include "isogeo/surface.hpp"
#include "oracles.hpp"

using namespace isogeo;

namespace {

constexpr SpaceKind kSimply = SpaceKind::SimplyIsotropic;
constexpr SpaceKind kPseudo = SpaceKind::PseudoIsotropic;

SurfacePatch graph(SpaceKind kind, const std::string& f, Domain d = {-3, 3, -3, 3}) {
  return SurfacePatch::graph(kind, parse(f), d);
}

ErrorKind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  FAIL("expected a GeometryError");
  return ErrorKind::BadParam;
}

// Random cubic polynomial in u, v, as text.
std::string random_poly(SplitMix64& rng) {
  const char* monomials[] = {"u", "v", "u^2", "u*v", "v^2", "u^3", "u^2*v", "u*v^2", "v^3"};
  std::string s = "0";
  for (const char* m : monomials) s += "+(" + std::to_string(rng.uniform(-0.5, 0.5)) + ")*" + m;
  return s;
}

}  // namespace

TEST_CASE("frame of the parabolic sphere graph") {
  const SurfacePatch s = graph(kSimply, "(u^2+v^2)/4 - 1");
  const PointFrame apex = frame_at(s, 0, 0);
  CHECK(apex.xi == Vec3(0, 0, 0.5));
  CHECK(apex.g == Eigen::Matrix2d::Identity());
  CHECK(apex.h.isApprox(0.5 * Eigen::Matrix2d::Identity()));
  CHECK_FALSE(apex.swapped);

  const PointFrame side = frame_at(s, 2, 0);
  CHECK(side.X12 == 1);
  CHECK(side.X23 == -1);
  CHECK(side.X31 == 0);
  CHECK(side.xi.isApprox(Vec3(-1, 0, 0)));
}

TEST_CASE("frame of a pseudo-isotropic graph") {
  const SurfacePatch s = graph(kPseudo, "(u^2-v^2)/4");
  const PointFrame f = frame_at(s, 0, 2);
  CHECK(f.X12 == 1);
  CHECK(f.X23 == 0);
  CHECK(f.X13 == -1);
  CHECK(f.xi.isApprox(Vec3(0, -1, 1)));
  CHECK(f.det_g == -1);
}

TEST_CASE("frame invariants on random graphs") {
  SplitMix64 rng(41);
  for (SpaceKind kind : {kSimply, kPseudo}) {
    for (int i = 0; i < 50; ++i) {
      const std::string text = random_poly(rng);
      const SurfacePatch s = graph(kind, text);
      const double u = rng.uniform(-1, 1), v = rng.uniform(-1, 1);
      const PointFrame f = frame_at(s, u, v);
      const Jet2d j = eval_jet2(parse(text), u, v);
      const oracle::GraphData d{j.du, j.dv, j.duu, j.duv, j.dvv};
      const double sg = oracle::sgn(kind);

      CHECK(f.det_g == doctest::Approx(sg * f.X12 * f.X12).epsilon(1e-12));
      CHECK(top_view(f.xi).isApprox(top_view(f.N_h)));
      CHECK(f.xi[2] == doctest::Approx(0.5 - 0.5 * (f.xi[0] * f.xi[0] + sg * f.xi[1] * f.xi[1])));
      CHECK((f.h + f.A * f.g).norm() <= 1e-12);
      CHECK((f.shape_operator() - f.g_inv * f.h).norm() <= 1e-12);
      CHECK((f.xi - oracle::graph_xi(kind, d)).norm() <= 1e-12);

      const CurvatureReport c = curvatures_from_frame(f);
      CHECK(std::abs(c.K - oracle::graph_K(kind, d)) <= 1e-10);
      CHECK(std::abs(c.H - oracle::graph_H(kind, d)) <= 1e-10);
      if (kind == kSimply) {
        CHECK(c.discriminant >= -1e-12);
        const double lhs = cross_euclid(f.x1, f.x2).dot(f.xi);
        const double rhs = (f.X23 * f.X23 + f.X31 * f.X31 + f.X12 * f.X12) / (2 * f.X12);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        CHECK(lhs > 0);
      }
      if (c.point_class == PointClass::Diagonalizable) {
        CHECK(c.kappa1 * c.kappa2 == doctest::Approx(c.K).epsilon(1e-10));
        CHECK(c.kappa1 + c.kappa2 == doctest::Approx(2 * c.H).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("curvature examples") {
  for (SpaceKind kind : {kSimply, kPseudo}) {
    const SurfacePatch s = graph(kind, kind == kSimply ? "(u^2+v^2)/4 - 1" : "(u^2-v^2)/4 - 1");
    const CurvatureReport c = curvatures_at(s, 0.4, -0.3);
    CHECK(c.K == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(c.H == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.point_class == PointClass::UmbilicPoint);
    CHECK(c.lambda == doctest::Approx(0.5));
  }

  const SurfacePatch ruled = make("ruled_nondiag", kPseudo).patch;
  const CurvatureReport r = curvatures_at(ruled, 0.3, -0.4);
  CHECK(r.K == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.H == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(r.point_class == PointClass::NonDiagonalizableReal);
  Eigen::Matrix2d L;
  L << -0.5, 1, 0, -0.5;
  CHECK((frame_at(ruled, 0.3, -0.4).shape_operator() - L).norm() <= 1e-12);

  const CurvatureReport h = curvatures_at(make("helicoid", kPseudo).patch, 2, 0.3);
  CHECK(h.K == doctest::Approx(1.0 / 16).epsilon(1e-12));
  CHECK(std::abs(h.H) <= 1e-12);
  CHECK(h.point_class == PointClass::ComplexPrincipal);

  const CurvatureReport rev = curvatures_at(make("revolution", kPseudo).patch, 1, 0.2);
  CHECK(rev.K == doctest::Approx(-1).epsilon(1e-12));
  CHECK(std::abs(rev.H) <= 1e-12);
  CHECK(rev.point_class == PointClass::Diagonalizable);
}

TEST_CASE("exchanged parameters give the same geometry") {
  const SurfacePatch s = SurfacePatch::parametric(kSimply, parse("v"), parse("u"),
                                                  parse("(u^2+v^2)/4 - 1"), {-1, 1, -1, 1});
  const PointFrame f = frame_at(s, 0.3, 0.5);
  CHECK(f.swapped);
  CHECK(f.X12 > 0);
  const CurvatureReport c = curvatures_from_frame(f);
  CHECK(c.K == doctest::Approx(0.25));
  CHECK(c.H == doctest::Approx(0.5));

  // Non-umbilic case: z = u^2 + 0.3 u v with parameters exchanged.
  const SurfacePatch a = graph(kPseudo, "u^2+0.3*u*v", {-1, 1, -1, 1});
  const SurfacePatch b = SurfacePatch::parametric(kPseudo, parse("v"), parse("u"),
                                                  parse("v^2+0.3*u*v"), {-1, 1, -1, 1});
  const PointFrame fa = frame_at(a, 0.2, 0.6), fb = frame_at(b, 0.6, 0.2);
  CHECK_FALSE(fa.swapped);
  CHECK(fb.swapped);
  CHECK((fa.h - fb.h).norm() <= 1e-14);
  CHECK((fa.xi - fb.xi).norm() <= 1e-14);
  CHECK(curvatures_from_frame(fa).K == doctest::Approx(curvatures_from_frame(fb).K));
  CHECK(normal_curvature(a, 0.2, 0.6, {1, 0}) ==
        doctest::Approx(normal_curvature(b, 0.6, 0.2, {0, 1})));
}

TEST_CASE("rigid motions leave K and H unchanged") {
  SplitMix64 rng(42);
  for (SpaceKind kind : {kSimply, kPseudo}) {
    const SurfacePatch s = graph(kind, "0.3*u^2 - 0.2*u*v + 0.4*v^3 + sin(u)", {-1, 1, -1, 1});
    for (int i = 0; i < 20; ++i) {
      Motion m;
      m.kind = kind;
      m.a = rng.uniform(-2, 2);
      m.b = rng.uniform(-2, 2);
      m.c = rng.uniform(-2, 2);
      m.c1 = rng.uniform(-1, 1);
      m.c2 = rng.uniform(-1, 1);
      m.phi = rng.uniform(-1, 1);
      const SurfacePatch t = s.transformed(m);
      const double u = rng.uniform(-0.9, 0.9), v = rng.uniform(-0.9, 0.9);
      const CurvatureReport a = curvatures_at(s, u, v), b = curvatures_at(t, u, v);
      CHECK(std::abs(a.K - b.K) <= 1e-9);
      CHECK(std::abs(a.H - b.H) <= 1e-9);
    }
  }
}

TEST_CASE("normal curvature") {
  SplitMix64 rng(43);
  const SurfacePatch sphere = graph(kSimply, "(u^2+v^2)/4 - 1");
  for (int i = 0; i < 10; ++i) {
    const double t = rng.uniform(0, 6.28);
    CHECK(normal_curvature(sphere, 0.3, 0.1, {std::cos(t), std::sin(t)}) == doctest::Approx(0.5));
  }
  CHECK(normal_curvature(graph(kSimply, "0"), 0.1, 0.2, {0.6, 0.8}) == 0);
  CHECK(normal_curvature(graph(kPseudo, "(u^2-v^2)/4"), 0, 0, {1, 0}) == doctest::Approx(0.5));
  CHECK(error_kind([] { normal_curvature(graph(kPseudo, "u*v"), 0, 0, {1, 1}); }) ==
        ErrorKind::LightlikeDirection);
  CHECK(error_kind([&] { normal_curvature(sphere, 0, 0, {2, 0}); }) == ErrorKind::BadParam);
}

TEST_CASE("admissibility") {
  for (SpaceKind kind : {kSimply, kPseudo}) {
    const CatalogEntry cyl = make("cylindrical_sphere", kind);
    const AdmissibilityReport rc = is_admissible(cyl.patch, 20, 20);
    CHECK(rc.admissible_nowhere());
    CHECK(rc.min_abs_X12 <= 1e-12);
    CHECK(error_kind([&] { frame_at(cyl.patch, 0.1, 0.1); }) == ErrorKind::NotAdmissible);

    const AdmissibilityReport rg = is_admissible(graph(kind, "sin(u)*v"), 20, 20);
    CHECK(rg.admissible_everywhere());
    CHECK(rg.min_abs_X12 == 1);
  }
  const SurfacePatch hel = make("helicoid", kPseudo).patch;
  const AdmissibilityReport rh = is_admissible(hel, 20, 20);
  CHECK(rh.admissible_everywhere());
  CHECK(rh.timelike);
  CHECK(frame_at(hel, 2, 0.5).det_g == doctest::Approx(-4));

  CHECK(error_kind([] { frame_at(graph(kSimply, "u"), 5, 0); }) == ErrorKind::DomainError);
}

TEST_CASE("lightlike points") {
  const SurfacePatch s = graph(kPseudo, "(u^2-v^2)/4", {-1, 1, 1.5, 3});
  const auto pts = lightlike_points(s, 21, 21);
  REQUIRE(pts.size() >= 10);
  for (const auto& [u, v] : pts) CHECK(u * u - v * v == doctest::Approx(-4).epsilon(1e-9));

  CHECK(lightlike_points(graph(kPseudo, "0"), 10, 10).empty());
  CHECK(lightlike_points(graph(kPseudo, "u"), 10, 10).empty());
  CHECK(lightlike_indicator(frame_at(graph(kPseudo, "u"), 0.2, 0.3)) == 2);
  CHECK(error_kind([] { lightlike_points(graph(kSimply, "u"), 5, 5); }) == ErrorKind::WrongSpace);
}

TEST_CASE("grid") {
  const auto pts = grid_points({0, 1, 2, 4}, 3, 2);
  REQUIRE(pts.size() == 6);
  CHECK(pts.front() == std::pair<double, double>{0, 2});
  CHECK(pts[1] == std::pair<double, double>{0, 4});
  CHECK(pts.back() == std::pair<double, double>{1, 4});
}
