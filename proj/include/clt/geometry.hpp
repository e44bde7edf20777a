#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace clt {

/// Chart coordinates. (t, x) for the Minkowski-type models, (u', v') for the
/// conformal square.
using Point = std::array<double, 2>;

/// Null coordinates: chronology is strict dominance in both components.
struct NullCoord {
  double u = 0.0;
  double v = 0.0;
};

/// Slack used by every chronology comparison so that grid points lying on a
/// light ray compare as null-related despite rounding in their coordinates.
inline constexpr double kCausalEps = 1e-9;

inline bool strictly_below(NullCoord a, NullCoord b) {
  return b.u - a.u > kCausalEps && b.v - a.v > kCausalEps;
}

inline bool causally_below(NullCoord a, NullCoord b) {
  return b.u - a.u >= -kCausalEps && b.v - a.v >= -kCausalEps;
}

inline double euclidean(const Point &a, const Point &b) {
  const double d0 = a[0] - b[0];
  const double d1 = a[1] - b[1];
  return std::sqrt(d0 * d0 + d1 * d1);
}

/// u = t - x, v = t + x, so that -du dv = -dt^2 + dx^2.
inline NullCoord null_from_tx(const Point &p) { return {p[0] - p[1], p[0] + p[1]}; }
inline Point tx_from_null(NullCoord n) { return {0.5 * (n.u + n.v), 0.5 * (n.v - n.u)}; }

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

} // namespace clt
