#pragma once

#include <algorithm>
#include <cmath>

namespace epint {

// Plain 3-vector with value semantics. Positions, velocities and field
// values all live here; everything the integrators need is a handful of
// products, so this stays deliberately minimal.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  constexpr Vec3& operator/=(double s) {
    x /= s;
    y /= s;
    z /= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) { return a /= s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vec3& a) { return std::max({std::abs(a.x), std::abs(a.y), std::abs(a.z)}); }

inline double max_abs_diff(const Vec3& a, const Vec3& b) { return norm_inf(a - b); }

inline bool all_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Skew-symmetric matrix generated by a 3-vector b, acting as  M w = w x b.
// Stored by its generating vector; entry() materializes the matrix on demand
// (row i, column j):
//
//   M = [  0   b3  -b2 ]
//       [ -b3   0   b1 ]
//       [  b2  -b1   0 ]
struct SkewMatrix3 {
  Vec3 b;

  constexpr Vec3 apply(const Vec3& w) const { return cross(w, b); }

  constexpr double entry(int i, int j) const {
    const double m[3][3] = {{0.0, b.z, -b.y}, {-b.z, 0.0, b.x}, {b.y, -b.x, 0.0}};
    return m[i][j];
  }

  constexpr SkewMatrix3 transposed() const { return {-b}; }
};

// Generator of a one-parameter rotation family: (S w) = w x g for a fixed
// axis vector g. exp(tau S) is then a rotation about g by angle -tau |g|.
struct RotationGenerator {
  SkewMatrix3 S;

  static constexpr RotationGenerator about(const Vec3& axis) { return {SkewMatrix3{axis}}; }

  constexpr Vec3 apply(const Vec3& w) const { return S.apply(w); }
};

// exp(tau S) w in closed form (Rodrigues): exact rotation, no series
// truncation. With g = S.b, k = g/|g| and ang = tau |g|,
//
//   exp(tau S) w = w cos(ang) - (k x w) sin(ang) + k (k.w)(1 - cos(ang)).
inline Vec3 rotate(const RotationGenerator& g, double tau, const Vec3& w) {
  const Vec3& axis = g.S.b;
  const double len = norm(axis);
  if (len == 0.0 || tau == 0.0) return w;
  const Vec3 k = axis / len;
  const double ang = tau * len;
  const double c = std::cos(ang);
  const double s = std::sin(ang);
  return c * w - s * cross(k, w) + ((1.0 - c) * dot(k, w)) * k;
}

}  // namespace epint
