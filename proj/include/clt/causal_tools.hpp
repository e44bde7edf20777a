#pragma once

// Causal convexity, future precompactness, future boundaries and
// achronality of sampled regions, and the future-nesting check of a
// conformal extension.

#include "clt/kernels.hpp"
#include "clt/setlimits.hpp"
#include "clt/spacetimes.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace clt {

struct Region {
  std::function<bool(const Point &)> contains;
  std::string description;

  PointSet sample(const PointCloud &cloud) const;

  static Region all();
  static Region none();
  /// Closed rectangle in chart coordinates.
  static Region rect(double lo0, double hi0, double lo1, double hi1);
  /// Open Euclidean ball.
  static Region ball(Point centre, double r);
  /// Closed Euclidean ball.
  static Region closed_ball(Point centre, double r);
  /// {a p0 + b p1 < c}
  static Region half_plane(double a, double b, double c);
  static Region past_cone(const ModelSpacetime &model, Point apex);
  static Region future_cone(const ModelSpacetime &model, Point apex);
  static Region point(Point p);

  Region operator|(const Region &o) const;
  Region operator&(const Region &o) const;
  Region operator!() const;
};

struct ConvexityResult {
  bool convex = true;
  std::optional<kernels::TripleWitness> witness;
};

/// Exact sampled causal convexity: no non-member is causally between two
/// members. Reports the first violating middle point, then the first member
/// below it and the first above it. Throws ContractError on an empty sample.
ConvexityResult is_causally_convex(const ModelSpacetime &model, const Region &a, const PointCloud &cloud);
ConvexityResult is_causally_convex(const PointCloud &cloud, const PointSet &members);

struct PrecompactResult {
  bool precompact = true;
  std::optional<std::size_t> witness; // first member with nothing of K above
};

/// Every sample of A lies in the chronological past of some point of K.
PrecompactResult is_future_precompact(const ModelSpacetime &model, const Region &a, const PointCloud &cloud,
                                      const std::vector<Point> &k);

/// Samples of I+(A) on the outer sampled frontier of A: non-members with a
/// member among their nearest grid neighbours (within h off-grid).
SampledSet future_boundary(const ModelSpacetime &model, const Region &a, const CloudPtr &cloud);
SampledSet future_boundary(const SampledSet &a);

struct AchronalResult {
  bool achronal = true;
  std::optional<kernels::PairWitness> witness;
};

AchronalResult is_achronal(const SampledSet &s);
AchronalResult is_achronal(const ModelSpacetime &model, const std::vector<Point> &points);

struct NestingReport {
  bool causally_convex = false;
  std::optional<kernels::TripleWitness> convexity_witness;
  bool future_precompact = false;
  bool boundary_achronal = false;
  /// Analytic attribute of the ambient model, not computed.
  bool ambient_globally_hyperbolic = false;
  std::size_t image_samples = 0;

  bool passed() const {
    return causally_convex && future_precompact && boundary_achronal && ambient_globally_hyperbolic;
  }
};

/// `ambient` must sample the closed square including its edges. K is the
/// set of edge samples with u' = pi/2 or v' = pi/2.
NestingReport check_future_nesting(const ConformalExtension &ext, const CloudPtr &ambient);

struct FlowReport {
  std::size_t checked = 0;
  std::size_t hits_on_boundary = 0; // exactly one exit point on the future boundary
  bool injective = true;            // exit points strictly ordered along the boundary
  double max_last_step = 0.0;       // distance from the last inside step to the exit
  std::vector<Point> exits;

  bool passed() const { return hits_on_boundary == checked && injective; }
};

/// Flows embedded points of `line` (ordered by x) along d/du' + d/dv' in
/// steps of metric length h until they leave the image, recording the exit
/// point on the future boundary.
FlowReport flow_to_future_boundary(const ConformalExtension &ext, const std::vector<Point> &line, double h);

} // namespace clt
