#pragma once

#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <stdexcept>

// Geometry of the unit disk and the inscribed regular n-gon whose vertices
// sit at angles 2*pi*i/n on the unit circle.  Everything here is exact up to
// double rounding; no tolerances are baked in.

namespace wgs {

using Point = Eigen::Vector2d;

inline constexpr double kPi = std::numbers::pi_v<double>;
inline constexpr double kTau = 2.0 * std::numbers::pi_v<double>;

inline void require_ngon(int n) {
  if (n < 3) throw std::invalid_argument("regular n-gon needs n >= 3");
}

// Vertex i of the n-gon, indices taken mod n.
inline Point vertex_position(int i, int n) {
  require_ngon(n);
  int r = i % n;
  if (r < 0) r += n;
  const double a = kTau * static_cast<double>(r) / static_cast<double>(n);
  return Point(std::cos(a), std::sin(a));
}

// Cyclic gap min(|i-i'| mod n, |i'-i| mod n) in {0, ..., floor(n/2)}.
inline int circular_gap(int i, int ip, int n) {
  require_ngon(n);
  int d = (i - ip) % n;
  if (d < 0) d += n;
  return std::min(d, n - d);
}

// Chord spanned by a cyclic gap of k vertices: 2*sin(pi*k/n).
inline double chord_from_gap(int k, int n) {
  require_ngon(n);
  if (k < 0 || 2 * k > n) throw std::out_of_range("gap outside [0, n/2]");
  return 2.0 * std::sin(kPi * static_cast<double>(k) / static_cast<double>(n));
}

// Euclidean distance between vertices i and i' (equals the gap-k chord).
inline double chord_length(int i, int ip, int n) {
  return chord_from_gap(circular_gap(i, ip, n), n);
}

// Point at angle t on the unit circle.
inline Point circle_point(double t) { return Point(std::cos(t), std::sin(t)); }

// Affine interpolation a + t*(b - a); t in [0,1] stays on the segment but we
// deliberately allow extrapolation for callers that clamp themselves.
inline Point segment_point(double t, const Point& a, const Point& b) {
  return a + t * (b - a);
}

}  // namespace wgs
