#pragma once

#include <cmath>
#include <numbers>

namespace tess {

inline constexpr double kPi = std::numbers::pi;

// Node positions closer than kSnapTol are merged during planarization;
// separations in [kSnapTol, kGuardTol) are rejected as ToleranceFailure.
inline constexpr double kSnapTol = 1e-9;
inline constexpr double kGuardTol = 1e-7;

// Angular gaps within kAngleTol of pi count as flat.
inline constexpr double kAngleTol = 1e-9;

// Circuit turning sums must land within kTurnSumTol of a multiple of 2*pi.
inline constexpr double kTurnSumTol = 1e-6;

// Relative tolerance for floating-point aggregate identities (area, perimeter).
inline constexpr double kRelTol = 1e-6;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

// Wraps an angle into [-pi, pi).
inline double wrap_pm_pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < -kPi) a += 2.0 * kPi;
  if (a >= kPi) a -= 2.0 * kPi;
  return a;
}

// Wraps an angle into [0, 2*pi).
inline double wrap_2pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0) a += 2.0 * kPi;
  if (a >= 2.0 * kPi) a -= 2.0 * kPi;
  return a;
}

// Distance from point p to segment [a, b].
inline double point_segment_dist(Point2 p, Point2 a, Point2 b) {
  Point2 d = b - a;
  double len2 = norm2(d);
  if (len2 == 0.0) return dist(p, a);
  double t = dot(p - a, d) / len2;
  if (t < 0.0) t = 0.0;
  if (t > 1.0) t = 1.0;
  return dist(p, a + t * d);
}

}  // namespace tess
