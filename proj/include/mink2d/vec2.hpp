#pragma once

#include <cmath>

namespace mink2d {

/// Point or vector of the plane in the fixed coordinate basis.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator*(double t, Vec2 v) { return {t * v.x, t * v.y}; }
constexpr Vec2 operator*(Vec2 v, double t) { return {t * v.x, t * v.y}; }
constexpr Vec2 operator/(Vec2 v, double t) { return {v.x / t, v.y / t}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double euclidean_length(Vec2 v) { return std::hypot(v.x, v.y); }
inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Signed angle turning a into b, in (-pi, pi].
inline double angle_between(Vec2 a, Vec2 b) { return std::atan2(cross(a, b), dot(a, b)); }

/// Coordinates (c0, c1) with c0*e0 + c1*e1 = v. Caller checks the determinant.
inline Vec2 solve_in_frame(Vec2 e0, Vec2 e1, Vec2 v) {
  const double det = cross(e0, e1);
  return {cross(v, e1) / det, cross(e0, v) / det};
}

/// 2x2 matrix acting on column vectors; row-major entries.
struct LinearMap2 {
  double a11 = 1.0, a12 = 0.0;
  double a21 = 0.0, a22 = 1.0;

  static constexpr LinearMap2 identity() { return {}; }
  /// Matrix whose columns are c0 and c1.
  static constexpr LinearMap2 from_columns(Vec2 c0, Vec2 c1) { return {c0.x, c1.x, c0.y, c1.y}; }
  static LinearMap2 rotation(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c, -s, s, c};
  }

  constexpr Vec2 operator()(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
  constexpr double det() const { return a11 * a22 - a12 * a21; }
  constexpr LinearMap2 inverse() const {
    const double d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }
  friend constexpr LinearMap2 operator*(const LinearMap2& p, const LinearMap2& q) {
    return {p.a11 * q.a11 + p.a12 * q.a21, p.a11 * q.a12 + p.a12 * q.a22,
            p.a21 * q.a11 + p.a22 * q.a21, p.a21 * q.a12 + p.a22 * q.a22};
  }
  friend constexpr bool operator==(const LinearMap2&, const LinearMap2&) = default;
};

/// Largest absolute entrywise difference.
inline double max_entry_difference(const LinearMap2& p, const LinearMap2& q) {
  return std::fmax(std::fmax(std::abs(p.a11 - q.a11), std::abs(p.a12 - q.a12)),
                   std::fmax(std::abs(p.a21 - q.a21), std::abs(p.a22 - q.a22)));
}

}  // namespace mink2d
