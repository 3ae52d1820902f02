#ifndef GYROVP_VEC2_HPP
#define GYROVP_VEC2_HPP

#include <cmath>

namespace gyrovp {

/// Point / vector in the plane.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  constexpr bool operator==(const Vec2&) const = default;

  /// Counterclockwise quarter turn: (x, y) -> (-y, x).
  constexpr Vec2 perp() const { return {-y, x}; }

  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  constexpr double norm2() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Counterclockwise rotation by angle theta.
inline Vec2 rotate(Vec2 v, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// 2x2 matrix, row major.
struct Mat2 {
  double xx = 0.0, xy = 0.0;
  double yx = 0.0, yy = 0.0;

  constexpr Vec2 operator*(Vec2 v) const {
    return {xx * v.x + xy * v.y, yx * v.x + yy * v.y};
  }
  constexpr Mat2 operator+(const Mat2& o) const {
    return {xx + o.xx, xy + o.xy, yx + o.yx, yy + o.yy};
  }
  constexpr Mat2 operator-(const Mat2& o) const {
    return {xx - o.xx, xy - o.xy, yx - o.yx, yy - o.yy};
  }
  constexpr Mat2 operator*(double s) const {
    return {xx * s, xy * s, yx * s, yy * s};
  }
  Mat2& operator+=(const Mat2& o) {
    xx += o.xx; xy += o.xy; yx += o.yx; yy += o.yy;
    return *this;
  }

  constexpr double trace() const { return xx + yy; }

  /// Frobenius inner product A:B.
  constexpr double contract(const Mat2& o) const {
    return xx * o.xx + xy * o.xy + yx * o.yx + yy * o.yy;
  }

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 outer(Vec2 a, Vec2 b) {
    return {a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y};
  }

  /// Spectral norm of a symmetric matrix (callers pass symmetric input).
  double sym_spectral_norm() const {
    const double mean = 0.5 * (xx + yy);
    const double disc = std::hypot(0.5 * (xx - yy), xy);
    return std::max(std::abs(mean + disc), std::abs(mean - disc));
  }
};

}  // namespace gyrovp

#endif  // GYROVP_VEC2_HPP
