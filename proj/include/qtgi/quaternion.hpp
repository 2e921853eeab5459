#pragma once

#include <cmath>
#include <iosfwd>

namespace qtgi {

/// Real quaternion w + x i + y j + z k over binary64 components.
///
/// Multiplication is the Hamilton product (i^2 = j^2 = k^2 = ijk = -1) and is
/// not commutative. There is deliberately no division operator: q * qinv(p)
/// and qinv(p) * q differ, so callers spell out the side.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_) : w(w_) {}  // NOLINT(google-explicit-constructor): reals embed in H
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w;
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w;
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s;
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

/// Hamilton product.
constexpr Quaternion qmul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) { return qmul(a, b); }

constexpr Quaternion qconj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double qnorm2(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }

inline double qabs(const Quaternion& q) { return std::sqrt(qnorm2(q)); }

/// conj(q) / |q|^2. Throws ZeroDivisor for q == 0.
Quaternion qinv(const Quaternion& q);

constexpr Quaternion re(const Quaternion& q) { return {q.w, 0.0, 0.0, 0.0}; }
constexpr Quaternion im(const Quaternion& q) { return {0.0, q.x, q.y, q.z}; }

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qtgi
