#pragma once

// Second-order forward-mode differentiation in two parameters.
//
// A Jet2 carries a value together with its first and second partial
// derivatives with respect to (u, v). The mixed partial is stored once, so
// symmetry of second derivatives holds by construction.

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>

#include <Eigen/Core>

#include "isogeo/errors.hpp"

namespace isogeo {

template <typename Scalar>
struct Jet2 {
  Scalar val{};
  Scalar du{};
  Scalar dv{};
  Scalar duu{};
  Scalar duv{};
  Scalar dvv{};

  constexpr Jet2() = default;
  // Implicit so that scalar literals mix freely with jets (Eigen needs this).
  constexpr Jet2(Scalar value) : val(value) {}
  constexpr Jet2(Scalar value, Scalar d_u, Scalar d_v, Scalar d_uu, Scalar d_uv,
                 Scalar d_vv)
      : val(value), du(d_u), dv(d_v), duu(d_uu), duv(d_uv), dvv(d_vv) {}

  static constexpr Jet2 constant(Scalar value) { return Jet2(value); }
  static constexpr Jet2 seed_u(Scalar value) { return {value, 1, 0, 0, 0, 0}; }
  static constexpr Jet2 seed_v(Scalar value) { return {value, 0, 1, 0, 0, 0}; }

  bool has_zero_derivatives() const {
    return du == 0 && dv == 0 && duu == 0 && duv == 0 && dvv == 0;
  }

  Jet2& operator+=(const Jet2& o) { return *this = *this + o; }
  Jet2& operator-=(const Jet2& o) { return *this = *this - o; }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }
  Jet2& operator/=(const Jet2& o) { return *this = *this / o; }

  friend constexpr Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.val + b.val, a.du + b.du,   a.dv + b.dv,
            a.duu + b.duu, a.duv + b.duv, a.dvv + b.dvv};
  }
  friend constexpr Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.val - b.val, a.du - b.du,   a.dv - b.dv,
            a.duu - b.duu, a.duv - b.duv, a.dvv - b.dvv};
  }
  friend constexpr Jet2 operator-(const Jet2& a) {
    return {-a.val, -a.du, -a.dv, -a.duu, -a.duv, -a.dvv};
  }
  friend constexpr Jet2 operator+(const Jet2& a) { return a; }

  // Leibniz rule through second order. Each field is written so that the
  // expression is symmetric in (a, b), which makes a*b == b*a bitwise.
  friend constexpr Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.val * b.val,
            a.du * b.val + a.val * b.du,
            a.dv * b.val + a.val * b.dv,
            (a.duu * b.val + a.val * b.duu) + 2 * (a.du * b.du),
            (a.duv * b.val + a.val * b.duv) + (a.du * b.dv + a.dv * b.du),
            (a.dvv * b.val + a.val * b.dvv) + 2 * (a.dv * b.dv)};
  }

  friend Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (b.val == Scalar(0)) {
      throw GeometryError(ErrorKind::DomainError, "division by zero");
    }
    // q = a / b  =>  a = q b, solved order by order.
    const Scalar inv = Scalar(1) / b.val;
    Jet2 q;
    q.val = a.val * inv;
    q.du = (a.du - q.val * b.du) * inv;
    q.dv = (a.dv - q.val * b.dv) * inv;
    q.duu = (a.duu - 2 * q.du * b.du - q.val * b.duu) * inv;
    q.duv = (a.duv - q.du * b.dv - q.dv * b.du - q.val * b.duv) * inv;
    q.dvv = (a.dvv - 2 * q.dv * b.dv - q.val * b.dvv) * inv;
    return q;
  }

  friend constexpr bool operator==(const Jet2& a, const Jet2& b) {
    return a.val == b.val && a.du == b.du && a.dv == b.dv && a.duu == b.duu &&
           a.duv == b.duv && a.dvv == b.dvv;
  }

  friend std::ostream& operator<<(std::ostream& os, const Jet2& j) {
    return os << "[" << j.val << "; " << j.du << ", " << j.dv << "; " << j.duu
              << ", " << j.duv << ", " << j.dvv << "]";
  }
};

using Jet2d = Jet2<double>;

template <typename S> constexpr Jet2<S> operator+(const Jet2<S>& a, S b) { return a + Jet2<S>(b); }
template <typename S> constexpr Jet2<S> operator+(S a, const Jet2<S>& b) { return Jet2<S>(a) + b; }
template <typename S> constexpr Jet2<S> operator-(const Jet2<S>& a, S b) { return a - Jet2<S>(b); }
template <typename S> constexpr Jet2<S> operator-(S a, const Jet2<S>& b) { return Jet2<S>(a) - b; }
template <typename S> constexpr Jet2<S> operator*(const Jet2<S>& a, S b) {
  return {a.val * b, a.du * b, a.dv * b, a.duu * b, a.duv * b, a.dvv * b};
}
template <typename S> constexpr Jet2<S> operator*(S a, const Jet2<S>& b) { return b * a; }
template <typename S> Jet2<S> operator/(const Jet2<S>& a, S b) { return a / Jet2<S>(b); }
template <typename S> Jet2<S> operator/(S a, const Jet2<S>& b) { return Jet2<S>(a) / b; }

/// Applies a scalar function with value f0, first derivative f1 and second
/// derivative f2 (all at a.val) to a jet via the second-order chain rule.
template <typename S>
constexpr Jet2<S> chain(const Jet2<S>& a, S f0, S f1, S f2) {
  return {f0,
          f1 * a.du,
          f1 * a.dv,
          f2 * a.du * a.du + f1 * a.duu,
          f2 * a.du * a.dv + f1 * a.duv,
          f2 * a.dv * a.dv + f1 * a.dvv};
}

template <typename S> Jet2<S> sin(const Jet2<S>& a) {
  const S s = std::sin(a.val), c = std::cos(a.val);
  return chain(a, s, c, -s);
}
template <typename S> Jet2<S> cos(const Jet2<S>& a) {
  const S s = std::sin(a.val), c = std::cos(a.val);
  return chain(a, c, -s, -c);
}
template <typename S> Jet2<S> tan(const Jet2<S>& a) {
  const S c = std::cos(a.val);
  if (std::abs(c) < std::numeric_limits<S>::epsilon()) {
    throw GeometryError(ErrorKind::DomainError, "tan at a pole");
  }
  const S t = std::tan(a.val);
  const S sec2 = 1 + t * t;
  return chain(a, t, sec2, 2 * t * sec2);
}
template <typename S> Jet2<S> sinh(const Jet2<S>& a) {
  const S s = std::sinh(a.val), c = std::cosh(a.val);
  return chain(a, s, c, s);
}
template <typename S> Jet2<S> cosh(const Jet2<S>& a) {
  const S s = std::sinh(a.val), c = std::cosh(a.val);
  return chain(a, c, s, c);
}
template <typename S> Jet2<S> tanh(const Jet2<S>& a) {
  const S t = std::tanh(a.val);
  const S sech2 = 1 - t * t;
  return chain(a, t, sech2, -2 * t * sech2);
}
template <typename S> Jet2<S> exp(const Jet2<S>& a) {
  const S e = std::exp(a.val);
  return chain(a, e, e, e);
}
template <typename S> Jet2<S> log(const Jet2<S>& a) {
  if (!(a.val > 0)) {
    throw GeometryError(ErrorKind::DomainError, "log of non-positive argument");
  }
  const S inv = 1 / a.val;
  return chain(a, std::log(a.val), inv, -inv * inv);
}
template <typename S> Jet2<S> sqrt(const Jet2<S>& a) {
  if (!(a.val > 0)) {
    throw GeometryError(ErrorKind::DomainError,
                        "sqrt needs a positive argument to be differentiable");
  }
  const S r = std::sqrt(a.val);
  return chain(a, r, S(0.5) / r, S(-0.25) / (r * a.val));
}
template <typename S> Jet2<S> abs(const Jet2<S>& a) {
  if (a.val == 0) {
    throw GeometryError(ErrorKind::DomainError, "abs is not differentiable at 0");
  }
  const S sign = a.val > 0 ? S(1) : S(-1);
  return chain(a, std::abs(a.val), sign, S(0));
}

/// Integer power by repeated squaring; negative exponents divide.
template <typename S> Jet2<S> pow(const Jet2<S>& base, std::int64_t exponent) {
  Jet2<S> result(S(1));
  Jet2<S> factor = base;
  std::uint64_t n = exponent < 0 ? static_cast<std::uint64_t>(-exponent)
                                 : static_cast<std::uint64_t>(exponent);
  while (n > 0) {
    if (n & 1u) result = result * factor;
    n >>= 1u;
    if (n > 0) factor = factor * factor;
  }
  return exponent < 0 ? Jet2<S>(S(1)) / result : result;
}

/// Real power exp(e * log(b)); requires b > 0.
template <typename S> Jet2<S> pow(const Jet2<S>& base, const Jet2<S>& exponent) {
  if (!(base.val > 0)) {
    throw GeometryError(ErrorKind::DomainError,
                        "non-integer power of a non-positive base");
  }
  return exp(exponent * log(base));
}

}  // namespace isogeo

namespace Eigen {

template <typename S>
struct NumTraits<isogeo::Jet2<S>> : GenericNumTraits<isogeo::Jet2<S>> {
  using Real = isogeo::Jet2<S>;
  using NonInteger = isogeo::Jet2<S>;
  using Nested = isogeo::Jet2<S>;
  using Literal = S;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 6,
    MulCost = 20,
  };

  static inline Real epsilon() { return Real(NumTraits<S>::epsilon()); }
  static inline Real dummy_precision() { return Real(NumTraits<S>::dummy_precision()); }
  static inline Real highest() { return Real(NumTraits<S>::highest()); }
  static inline Real lowest() { return Real(NumTraits<S>::lowest()); }
  static inline int digits10() { return NumTraits<S>::digits10(); }
};

template <typename S, typename BinaryOp>
struct ScalarBinaryOpTraits<isogeo::Jet2<S>, S, BinaryOp> {
  using ReturnType = isogeo::Jet2<S>;
};
template <typename S, typename BinaryOp>
struct ScalarBinaryOpTraits<S, isogeo::Jet2<S>, BinaryOp> {
  using ReturnType = isogeo::Jet2<S>;
};

}  // namespace Eigen

namespace isogeo {

/// Immersion value with all partials: x, x_i and x_ij per coordinate.
using Jet2Vec3 = Eigen::Matrix<Jet2d, 3, 1>;

inline Eigen::Vector3d value(const Jet2Vec3& x) {
  return {x[0].val, x[1].val, x[2].val};
}
inline Eigen::Vector3d partial_u(const Jet2Vec3& x) {
  return {x[0].du, x[1].du, x[2].du};
}
inline Eigen::Vector3d partial_v(const Jet2Vec3& x) {
  return {x[0].dv, x[1].dv, x[2].dv};
}
inline Eigen::Vector3d partial_uu(const Jet2Vec3& x) {
  return {x[0].duu, x[1].duu, x[2].duu};
}
inline Eigen::Vector3d partial_uv(const Jet2Vec3& x) {
  return {x[0].duv, x[1].duv, x[2].duv};
}
inline Eigen::Vector3d partial_vv(const Jet2Vec3& x) {
  return {x[0].dvv, x[1].dvv, x[2].dvv};
}

}  // namespace isogeo
