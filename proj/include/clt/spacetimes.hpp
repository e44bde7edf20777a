#pragma once

// Flat 2D model spacetimes with closed-form chronology, their samplers and
// curves, and the arctan conformal extension of the Minkowski plane.
//
//   Mink2   the whole (t, x) plane
//   HStrip  the closed strip |t| <= 1 (spacelike boundary)
//   VStrip  the closed strip |x| <= 1 (timelike boundary lines x = +-1)
//   Square  the closed square [-pi/2, pi/2]^2 in null coordinates (u', v')
//
// All four charts are convex, so p << q iff both null coordinates increase.

#include "clt/geometry.hpp"
#include "clt/setlimits.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace clt {

enum class ModelId { Mink2, HStrip, VStrip, Square };

std::string to_string(ModelId id);
ModelId model_from_string(const std::string &name);

class ModelSpacetime {
public:
  explicit ModelSpacetime(ModelId id) : id_(id) {}
  static ModelSpacetime mink2() { return ModelSpacetime(ModelId::Mink2); }
  static ModelSpacetime hstrip() { return ModelSpacetime(ModelId::HStrip); }
  static ModelSpacetime vstrip() { return ModelSpacetime(ModelId::VStrip); }
  static ModelSpacetime square() { return ModelSpacetime(ModelId::Square); }

  ModelId id() const { return id_; }
  std::string name() const { return to_string(id_); }

  bool in_chart(const Point &p) const;
  /// VStrip: |x| < 1; Square: open square; others: the chart itself.
  bool in_interior(const Point &p) const;
  /// Throws InputError outside the chart.
  NullCoord null_coords(const Point &p) const;
  Point from_null(NullCoord n) const;

  bool chron(const Point &p, const Point &q) const;
  bool caus(const Point &p, const Point &q) const;

  /// Analytic attribute; HStrip is only ever used as a chronological set.
  bool globally_hyperbolic() const { return id_ != ModelId::HStrip; }

private:
  ModelId id_;
};

struct Rect {
  double lo0 = 0.0, hi0 = 0.0, lo1 = 0.0, hi1 = 0.0;
};

enum class Frame {
  Chart, // rectangle in chart coordinates
  Null,  // rectangle in (u, v) = (t - x, t + x), i.e. a causal diamond
};

struct Window {
  Frame frame = Frame::Chart;
  Rect rect;
  /// Shrink the step so that both ends of each axis are sampled.
  bool snap_to_edges = false;
};

/// Regular grid of metric spacing h over the window, clipped to the chart.
/// Deterministic; throws InputError on an empty intersection.
CloudPtr sample(const ModelSpacetime &model, double h, const Window &window);

enum class CurveKind { TimelikeGeodesic, NullGeodesic, Parametrized };
enum class Spacing { Linear, Geometric };

struct CurveDescriptor {
  CurveKind kind = CurveKind::TimelikeGeodesic;
  Point offset{0.0, 0.0};
  Point direction{1.0, 0.0}; // (dt, dx) in chart coordinates
  double a = 0.0;
  double b = std::numeric_limits<double>::infinity();
  bool affine_complete_future = true;
  /// Sampling of unbounded domains: s_i = a + step * i, or
  /// a + step * (2^i - 1).
  Spacing spacing = Spacing::Linear;
  double step = 1.0;
  std::function<Point(double)> param; // Parametrized kind only
  std::string label;

  Point at(double s) const;
  bool unbounded() const { return b == std::numeric_limits<double>::infinity(); }

  static CurveDescriptor timelike(Point offset, Point direction, double a = 0.0,
                                  double b = std::numeric_limits<double>::infinity());
  /// Future-directed null ray along which u = c (v grows).
  static CurveDescriptor null_ray_u(double c);
  /// Future-directed null ray along which v = c (u grows).
  static CurveDescriptor null_ray_v(double c);
};

/// k strictly parameter-increasing points tending to the future end of the
/// domain. Finite domains are approached geometrically, the last point
/// within 2^-20 (b - a) of b. Validates the causal character of the chain.
std::vector<Point> curve_points(const ModelSpacetime &model, const CurveDescriptor &c, std::size_t k);

/// The future endpoint in the chart, if the domain is finite and the limit
/// point lies in the chart.
std::optional<Point> future_endpoint(const ModelSpacetime &model, const CurveDescriptor &c);
bool is_future_inextendible(const ModelSpacetime &model, const CurveDescriptor &c);

/// (t, x) -> (arctan u, arctan v).
Point to_extension(const Point &tx);
/// cos u' cos v' on the closed square.
double conformal_factor(const Point &sq);
Point conformal_factor_gradient(const Point &sq);

struct ConformalExtension {
  ModelSpacetime base = ModelSpacetime::mink2();
  ModelSpacetime ambient = ModelSpacetime::square();
  std::function<Point(const Point &)> embed;
  /// Membership in the embedded image, on ambient coordinates.
  std::function<bool(const Point &)> in_image;
  /// Ambient global hyperbolicity: analytic, recorded not computed.
  bool ambient_globally_hyperbolic = true;
  std::string label;

  /// Conformal factor pulled back to the base.
  double omega(const Point &base_point) const { return conformal_factor(embed(base_point)); }
  /// Point of the boundary of the image that lies in the chronological
  /// future of the image: the edges u' = pi/2 or v' = pi/2, minus the two
  /// corners with the other coordinate at -pi/2.
  bool in_future_boundary(const Point &sq, double tol = 1e-12) const;
  /// n interior points per future edge plus the corner i+.
  std::vector<Point> future_boundary_samples(std::size_t per_edge) const;

  static ConformalExtension mink2_to_square();
  /// Same embedding with the image cut down to x' < 0 (v' < u'); not
  /// causally convex.
  static ConformalExtension truncated_half();
};

} // namespace clt
