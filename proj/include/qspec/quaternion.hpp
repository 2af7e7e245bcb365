#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "qspec/error.hpp"

namespace qspec {

/// Real quaternion w + x i + y j + z k with the Hamilton product.
template <typename Real>
struct basic_quaternion {
  using value_type = Real;

  Real w{}, x{}, y{}, z{};

  constexpr basic_quaternion() = default;
  constexpr basic_quaternion(Real w_) : w(w_) {}  // NOLINT: reals embed implicitly
  constexpr basic_quaternion(Real w_, Real x_, Real y_, Real z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr basic_quaternion i() { return {0, 1, 0, 0}; }
  static constexpr basic_quaternion j() { return {0, 0, 1, 0}; }
  static constexpr basic_quaternion k() { return {0, 0, 0, 1}; }

  constexpr Real real() const { return w; }
  constexpr basic_quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr Real norm2() const { return w * w + x * x + y * y + z * z; }
  Real abs() const { return std::sqrt(norm2()); }
  Real imag_abs() const { return std::sqrt(x * x + y * y + z * z); }
  constexpr std::array<Real, 4> coords() const { return {w, x, y, z}; }
  constexpr bool is_zero() const { return w == 0 && x == 0 && y == 0 && z == 0; }

  constexpr basic_quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr basic_quaternion& operator+=(const basic_quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr basic_quaternion& operator-=(const basic_quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr basic_quaternion& operator*=(Real s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr basic_quaternion& operator/=(Real s) {
    w /= s; x /= s; y /= s; z /= s;
    return *this;
  }

  friend constexpr basic_quaternion operator+(basic_quaternion a, const basic_quaternion& b) { return a += b; }
  friend constexpr basic_quaternion operator-(basic_quaternion a, const basic_quaternion& b) { return a -= b; }
  friend constexpr basic_quaternion operator*(basic_quaternion a, Real s) { return a *= s; }
  friend constexpr basic_quaternion operator*(Real s, basic_quaternion a) { return a *= s; }
  friend constexpr basic_quaternion operator/(basic_quaternion a, Real s) { return a /= s; }

  // Hamilton product: ij = k = -ji, jk = i = -kj, ki = j = -ik.
  friend constexpr basic_quaternion operator*(const basic_quaternion& p, const basic_quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
  }

  friend constexpr bool operator==(const basic_quaternion&, const basic_quaternion&) = default;

  friend std::ostream& operator<<(std::ostream& os, const basic_quaternion& q) {
    return os << '(' << q.w << ',' << q.x << ',' << q.y << ',' << q.z << ')';
  }
};

using Quaternion = basic_quaternion<double>;

inline constexpr Quaternion qmul(const Quaternion& p, const Quaternion& q) { return p * q; }

inline Quaternion qinv(const Quaternion& q) {
  const double n2 = q.norm2();
  if (n2 == 0.0) throw ZeroDivisor();
  return q.conj() / n2;
}

inline Quaternion conj(const Quaternion& q) { return q.conj(); }
inline double abs(const Quaternion& q) { return q.abs(); }

/// Canonical point (Re q, |Im q|) of the similarity sphere [q].
struct SphereCoord {
  double a = 0.0;
  double r = 0.0;
};

inline SphereCoord canonical_rep(const Quaternion& q) { return {q.w, q.imag_abs()}; }

/// Largest coefficient difference; used by tests and tolerance checks.
inline double max_abs_diff(const Quaternion& p, const Quaternion& q) {
  const auto d = p - q;
  return std::max({std::abs(d.w), std::abs(d.x), std::abs(d.y), std::abs(d.z)});
}

}  // namespace qspec
