#pragma once

// Sampled future c-completions: indecomposable pasts built from points and
// curves, the completion chronology, boundary catalogues, the VStrip
// restriction map and the correspondence with the conformal square.

#include "clt/setlimits.hpp"
#include "clt/spacetimes.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace clt {

struct Interior {
  Point point;
};
struct BoundaryTIP {
  CurveDescriptor curve;
};
using CompletionTag = std::variant<Interior, BoundaryTIP>;

struct CompletionPoint {
  std::string label;
  CompletionTag tag;
  SampledSet indicator;
  std::optional<double> family_param;
  /// Some member has no cloud point strictly to its future, so the window
  /// cuts the set off (always the case for i+).
  bool window_truncated = false;

  bool is_boundary() const { return std::holds_alternative<BoundaryTIP>(tag); }
  const DistanceProfile &profile() const;

private:
  mutable std::optional<DistanceProfile> profile_;
};

/// Members are closed under chron-predecessors within the cloud. Sweep
/// version of kernels::*::down_set_violation.
bool is_sampled_down_set(const PointCloud &cloud, const PointSet &members);

/// Indicator {x : x << p}. Throws ResolutionError when it is empty.
CompletionPoint ip_of_point(const ModelSpacetime &model, const CloudPtr &cloud, const Point &p);

/// Union of the pasts of k curve samples, checked against 2k samples
/// (ResolutionError when they differ). BoundaryTIP-tagged when the curve is
/// future-inextendible in the model, otherwise Interior at its endpoint.
CompletionPoint ip_of_curve(const ModelSpacetime &model, const CloudPtr &cloud, const CurveDescriptor &c,
                            std::size_t k = 64);

/// P <<^ Q: some x in Q \ P has every member of P in its strict past.
/// Requires both on the same cloud and P non-empty.
bool completion_rel(const CompletionPoint &p, const CompletionPoint &q);

struct BoundaryCatalogue {
  ModelSpacetime model = ModelSpacetime::mink2();
  double h = 0.0;
  std::vector<CompletionPoint> entries;

  /// Throws ContractError on duplicate labels or identical indicators.
  void validate() const;
};

/// Null-ray families u = c and v = c for every c in `params`, plus i+.
BoundaryCatalogue mink2_null_catalogue(const CloudPtr &cloud, const std::vector<double> &params);

/// CSV: label,tag,family,cardinality,profile.
void write_catalogue_table(std::ostream &out, const BoundaryCatalogue &cat,
                           const std::string &profile_prefix = "");

struct AchronalityReport {
  std::size_t pairs_checked = 0;
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  bool passed() const { return violations.empty(); }
};

/// completion_rel must fail on every ordered pair of boundary entries.
AchronalityReport check_boundary_achronal(const BoundaryCatalogue &cat);

/// The interior |x| < 1 of a VStrip sample and the restriction onto it.
class VStripRestriction {
public:
  enum class ImageKind { InteriorPast, BoundaryPoint, TIP };

  explicit VStripRestriction(CloudPtr vstrip_cloud);

  const CloudPtr &interior_cloud() const { return interior_; }
  /// Indicator intersected with the interior samples; ResolutionError when
  /// that is empty.
  CompletionPoint restrict_F(const CompletionPoint &p) const;
  /// The whole interior sample is the TIP image; otherwise the sampled apex
  /// x* = (sup v - sup u) / 2 decides: |x*| > 1 - 2h means a boundary apex.
  ImageKind classify(const CompletionPoint &image) const;

private:
  CloudPtr full_;
  CloudPtr interior_;
  std::vector<std::size_t> parent_;
};

std::string to_string(VStripRestriction::ImageKind k);

/// Limit in the closed square of the embedded chain, declared once the last
/// two embedded points are within h/4; coordinates within h/4 of pi/2 snap
/// to pi/2. Throws ResolutionError if the tail is not Cauchy or the limit is
/// not on the future boundary.
Point chain_endpoint_in_extension(const ConformalExtension &ext, const std::vector<Point> &chain, double h);

/// Indicator {x : embed(x) << p in the square}, BoundaryTIP-tagged.
CompletionPoint psi(const ConformalExtension &ext, const Point &p, const CloudPtr &cloud);

struct NullEndpointReport {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<Point> endpoints;
  bool passed() const { return failures == 0; }
};

/// Every ray must have a future endpoint on the future boundary. Rays are
/// sampled geometrically; k = 20 keeps null coordinates exact to ~1e-10.
/// Timelike curves violate the precondition (ContractError).
NullEndpointReport null_endpoint_check(const ConformalExtension &ext, const std::vector<CurveDescriptor> &rays,
                                       double h, std::size_t k = 20);

} // namespace clt
