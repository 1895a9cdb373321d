#include <doctest.h>

#include <cmath>

#include "isogeo/errors.hpp"
#include "isogeo/jet.hpp"
#include "isogeo/rng.hpp"
#include "oracles.hpp"

using isogeo::Jet2d;

namespace {

Jet2d random_jet(isogeo::SplitMix64& rng) {
  return {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
          rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
}

// Multiples of 1/8 in a small range: sums of these are exact in binary.
Jet2d dyadic_jet(isogeo::SplitMix64& rng) {
  auto d = [&] { return static_cast<double>(static_cast<int>(rng.next() % 257) - 128) / 8.0; };
  return {d(), d(), d(), d(), d(), d()};
}

}  // namespace

TEST_CASE("seeds and constants") {
  CHECK(Jet2d::seed_u(2) == Jet2d(2, 1, 0, 0, 0, 0));
  CHECK(Jet2d::constant(5) == Jet2d(5, 0, 0, 0, 0, 0));
  CHECK(Jet2d::seed_v(0) == Jet2d(0, 0, 1, 0, 0, 0));
  CHECK(Jet2d::constant(5).has_zero_derivatives());
}

TEST_CASE("product rule examples") {
  const Jet2d sq = Jet2d::seed_u(3) * Jet2d::seed_u(3);
  CHECK(sq.val == 9);
  CHECK(sq.du == 6);
  CHECK(sq.duu == 2);
  CHECK(sq.dv == 0);

  const Jet2d s = sin(Jet2d::seed_u(0));
  CHECK(s.val == 0);
  CHECK(s.du == 1);
  CHECK(s.duu == 0);

  const Jet2d uv = Jet2d::seed_u(2) * Jet2d::seed_v(3);
  CHECK(uv == Jet2d(6, 3, 2, 0, 1, 0));
}

TEST_CASE("multiplication commutes exactly") {
  isogeo::SplitMix64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Jet2d a = random_jet(rng), b = random_jet(rng);
    REQUIRE(a * b == b * a);
    REQUIRE(a + b == b + a);
  }
}

TEST_CASE("addition is associative on exactly representable jets") {
  isogeo::SplitMix64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Jet2d a = dyadic_jet(rng), b = dyadic_jet(rng), c = dyadic_jet(rng);
    REQUIRE((a + b) + c == a + (b + c));
  }
}

TEST_CASE("chain rule agrees with finite differences") {
  // f(g(x(u))) for x(u) = 0.3 + 0.4 u, compared along u.
  using Fn = Jet2d (*)(const Jet2d&);
  struct Named {
    Fn jet;
    double (*real)(double);
  };
  const Named fns[] = {
      {[](const Jet2d& x) { return sin(x); }, [](double x) { return std::sin(x); }},
      {[](const Jet2d& x) { return cos(x); }, [](double x) { return std::cos(x); }},
      {[](const Jet2d& x) { return tan(x); }, [](double x) { return std::tan(x); }},
      {[](const Jet2d& x) { return sinh(x); }, [](double x) { return std::sinh(x); }},
      {[](const Jet2d& x) { return cosh(x); }, [](double x) { return std::cosh(x); }},
      {[](const Jet2d& x) { return tanh(x); }, [](double x) { return std::tanh(x); }},
      {[](const Jet2d& x) { return exp(x); }, [](double x) { return std::exp(x); }},
      {[](const Jet2d& x) { return log(x + 2.0); }, [](double x) { return std::log(x + 2.0); }},
      {[](const Jet2d& x) { return sqrt(x + 2.0); }, [](double x) { return std::sqrt(x + 2.0); }},
  };
  isogeo::SplitMix64 rng(13);
  for (const auto& f : fns) {
    for (const auto& g : fns) {
      const double u = rng.uniform(-0.5, 0.5);
      const Jet2d x = 0.3 + 0.4 * Jet2d::seed_u(u);
      const Jet2d jet = f.jet(g.jet(x));
      auto real = [&](double t) { return f.real(g.real(0.3 + 0.4 * t)); };
      CHECK(oracle::rel_err(jet.du, oracle::central(real, u, 1e-5)) <= 1e-6);
      CHECK(oracle::rel_err(jet.duu, oracle::central2(real, u, 1e-4)) <= 1e-4);
      CHECK(jet.dv == 0);
      CHECK(jet.dvv == 0);
    }
  }
}

TEST_CASE("mixed partial of a two-variable composite") {
  // exp(u v) at (0.5, 0.7): d^2/dudv = (1 + uv) exp(uv).
  const Jet2d j = exp(Jet2d::seed_u(0.5) * Jet2d::seed_v(0.7));
  CHECK(j.duv == doctest::Approx((1 + 0.35) * std::exp(0.35)).epsilon(1e-14));
  CHECK(j.duu == doctest::Approx(0.49 * std::exp(0.35)).epsilon(1e-14));
}

TEST_CASE("quotient and powers") {
  const Jet2d u = Jet2d::seed_u(2.0);
  const Jet2d q = Jet2d(1.0) / u;
  CHECK(q.val == 0.5);
  CHECK(q.du == -0.25);
  CHECK(q.duu == 0.25);

  const Jet2d cube = pow(Jet2d::seed_u(-2.0), std::int64_t{3});
  CHECK(cube == Jet2d(-8, 12, 0, -12, 0, 0));
  const Jet2d inv2 = pow(Jet2d::seed_u(-2.0), std::int64_t{-2});
  CHECK(inv2.val == 0.25);
  CHECK(inv2.du == doctest::Approx(0.25));

  const Jet2d real = pow(Jet2d::seed_u(2.0), Jet2d(0.5));
  CHECK(real.val == doctest::Approx(std::sqrt(2.0)));
  CHECK(real.du == doctest::Approx(0.5 / std::sqrt(2.0)));
}

TEST_CASE("domain errors") {
  using isogeo::ErrorKind;
  using isogeo::GeometryError;
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const GeometryError& e) {
      return e.kind();
    }
    return ErrorKind::BadParam;
  };
  CHECK(kind_of([] { (void)(Jet2d(1.0) / Jet2d(0.0)); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { (void)log(Jet2d(-1.0)); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { (void)sqrt(Jet2d(-1.0)); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { (void)pow(Jet2d(-2.0), Jet2d(0.5)); }) == ErrorKind::DomainError);
}

TEST_CASE("vector extraction") {
  const Jet2d u = Jet2d::seed_u(1.5), v = Jet2d::seed_v(-0.5);
  const isogeo::Jet2Vec3 x(u, v, u * u * v);
  CHECK(isogeo::value(x).isApprox(Eigen::Vector3d(1.5, -0.5, -1.125)));
  CHECK(isogeo::partial_u(x).isApprox(Eigen::Vector3d(1, 0, 2 * 1.5 * -0.5)));
  CHECK(isogeo::partial_v(x).isApprox(Eigen::Vector3d(0, 1, 2.25)));
  CHECK(isogeo::partial_uu(x).isApprox(Eigen::Vector3d(0, 0, -1)));
  CHECK(isogeo::partial_uv(x).isApprox(Eigen::Vector3d(0, 0, 3)));
  CHECK(isogeo::partial_vv(x).norm() == 0);

  // Eigen expressions over jets.
  const isogeo::Jet2Vec3 y = 2.0 * x + x;
  CHECK(isogeo::partial_v(y).isApprox(3 * isogeo::partial_v(x)));
}
