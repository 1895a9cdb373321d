#include <doctest.h>

#include <cmath>

#include "isogeo/catalog.hpp"
#include "isogeo/errors.hpp"
#include "isogeo/rng.hpp"

using namespace isogeo;

namespace {

constexpr SpaceKind kSimply = SpaceKind::SimplyIsotropic;
constexpr SpaceKind kPseudo = SpaceKind::PseudoIsotropic;

ErrorKind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  FAIL("expected a GeometryError");
  return ErrorKind::NotAdmissible;
}

}  // namespace

TEST_CASE("ids and the full catalog") {
  CHECK(catalog_ids().size() == 8);
  const auto all = full_catalog();
  CHECK(all.size() == 14);
  for (const auto& e : all) CHECK(e.patch.name() == e.id);
}

TEST_CASE("closed forms agree with the pipeline on a 20x20 grid") {
  for (const CatalogEntry& e : full_catalog()) {
    if (!e.admissible) continue;
    CAPTURE(e.id);
    CAPTURE(to_string(e.patch.kind()));
    REQUIRE(e.K);
    REQUIRE(e.H);
    for (const auto& [u, v] : grid_points(e.patch.domain(), 20, 20)) {
      const CurvatureReport c = curvatures_at(e.patch, u, v);
      const double K = e.K(u, v), H = e.H(u, v);
      CHECK(std::abs(c.K - K) <= 1e-10 * std::max(1.0, std::abs(K)));
      CHECK(std::abs(c.H - H) <= 1e-10 * std::max(1.0, std::abs(H)));
      if (e.discriminant) {
        CHECK(std::abs(c.discriminant - e.discriminant(u, v)) <= 1e-9);
      }
      if (e.totally_umbilic.has_value()) {
        CHECK((c.point_class == PointClass::UmbilicPoint) == *e.totally_umbilic);
      }
    }
  }
}

TEST_CASE("parabolic spheres for several p") {
  for (SpaceKind kind : {kSimply, kPseudo}) {
    for (double p : {0.5, 1.0, 2.0, -1.0}) {
      CatalogParams params;
      params.numbers["p"] = p;
      const CatalogEntry e = make("parabolic_sphere", kind, params);
      for (const auto& [u, v] : grid_points(e.patch.domain(), 5, 5)) {
        const CurvatureReport c = curvatures_at(e.patch, u, v);
        CHECK(std::abs(c.K - 1 / (p * p)) <= 1e-10);
        CHECK(std::abs(c.H - 1 / p) <= 1e-10);
        CHECK(c.point_class == PointClass::UmbilicPoint);
      }
    }
  }
}

TEST_CASE("cylindrical spheres are not admissible") {
  for (SpaceKind kind : {kSimply, kPseudo}) {
    const CatalogEntry e = make("cylindrical_sphere", kind);
    CHECK_FALSE(e.admissible);
    CHECK(is_admissible(e.patch, 10, 10).admissible_nowhere());
  }
}

TEST_CASE("random cubic waves are pseudo-isotropic minimal") {
  SplitMix64 rng(61);
  auto cubic = [&] {
    std::string s;
    for (int k = 0; k <= 3; ++k) {
      s += (k ? "+(" : "(") + std::to_string(rng.uniform(-1, 1)) + ")*u^" + std::to_string(k);
    }
    return s;
  };
  for (int i = 0; i < 20; ++i) {
    CatalogParams params;
    params.exprs["f"] = cubic();
    params.exprs["g"] = cubic();
    const CatalogEntry e = make("minimal_wave", kPseudo, params);
    for (int j = 0; j < 5; ++j) {
      const double u = rng.uniform(-0.5, 0.5), v = rng.uniform(-0.5, 0.5);
      const CurvatureReport c = curvatures_at(e.patch, u, v);
      CHECK(std::abs(c.H) <= 1e-10);
      CHECK(c.K == doctest::Approx(e.K(u, v)).epsilon(1e-10).scale(1));
    }
  }
}

TEST_CASE("harmonic graphs are simply isotropic minimal") {
  CatalogParams params;
  params.exprs["f"] = "u^3 - 3*u*v^2";
  const CatalogEntry e = make("minimal_harmonic", kSimply, params);
  for (const auto& [u, v] : grid_points(e.patch.domain(), 7, 7)) {
    CHECK(std::abs(curvatures_at(e.patch, u, v).H) <= 1e-8);
  }
}

TEST_CASE("bad parameters") {
  auto with_number = [](const char* name, double x) {
    CatalogParams p;
    p.numbers[name] = x;
    return p;
  };
  auto with_expr = [](const char* name, const char* x) {
    CatalogParams p;
    p.exprs[name] = x;
    return p;
  };
  CHECK(error_kind([] { make("torus", kSimply); }) == ErrorKind::BadParam);
  CHECK(error_kind([&] { make("plane", kSimply, with_number("q", 1)); }) == ErrorKind::BadParam);
  CHECK(error_kind([&] { make("parabolic_sphere", kSimply, with_number("p", 0)); }) ==
        ErrorKind::BadParam);
  CHECK(error_kind([&] { make("helicoid", kPseudo, with_number("c", -1)); }) == ErrorKind::BadParam);
  CHECK(error_kind([&] { make("parabolic_sphere", kSimply, with_expr("p", "2")); }) ==
        ErrorKind::BadParam);
  CHECK(error_kind([&] { make("plane", kSimply, with_expr("a", "u")); }) == ErrorKind::BadParam);
  CHECK(error_kind([&] { make("revolution", kSimply, with_expr("z", "u*v")); }) ==
        ErrorKind::BadParam);
  CHECK(error_kind([&] { make("minimal_harmonic", kSimply, with_expr("f", "u^2")); }) ==
        ErrorKind::BadParam);
  CHECK(error_kind([] { make("minimal_wave", kSimply); }) == ErrorKind::BadParam);
  CHECK(error_kind([] { make("minimal_harmonic", kPseudo); }) == ErrorKind::BadParam);
  CHECK_THROWS_AS(make("revolution", kSimply, with_expr("z", "u+")), ParseError);
}

TEST_CASE("domain override") {
  const CatalogEntry e = make("plane", kSimply, {}, {0, 2, 0, 3});
  CHECK(e.patch.domain().u1 == 2);
  CHECK(e.patch.domain().v1 == 3);
}
