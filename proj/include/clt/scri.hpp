#pragma once

// Null infinity of the sampled Minkowski c-boundary: classification of
// boundary pasts, the set of boundary points seen from a compact set,
// ampleness, past-completeness, and the conformal counterpart on the square.

#include "clt/cboundary.hpp"
#include "clt/causal_tools.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace clt {

enum class ScriLabel { NullInfinity, TimelikeInfinity, Unclassified };
std::string to_string(ScriLabel l);

struct Generator {
  CurveDescriptor curve;
  bool future_complete = false;
};

struct ScriClassification {
  std::size_t entry = 0;
  ScriLabel label = ScriLabel::Unclassified;
  std::vector<Generator> generators;
  /// Which half-plane family matched, and its parameter.
  std::optional<char> family; // 'u' or 'v'
  std::optional<double> parameter;
  double match_distance = 0.0;
  std::string diagnostics;
};

/// Mink2 only. The full window is timelike infinity; an indicator within
/// Hausdorff distance 2h of the sampled half-plane {u <= sup u} (or
/// {v <= sup v}) is null infinity, generated by the ray u = const (v =
/// const), which is affinely complete. Anything else is unclassified.
/// Throws ContractError for interior points.
ScriClassification classify_boundary_ip(const ModelSpacetime &model, const CompletionPoint &p);

/// Catalogue entries containing the sampled past of some point of C. Points
/// whose sampled past is empty are skipped and counted.
struct IPlusTilde {
  std::vector<std::size_t> entries;
  std::size_t skipped_points = 0;
};
IPlusTilde i_plus_tilde(const std::vector<Point> &c, const BoundaryCatalogue &cat);
/// C sampled on the catalogue's cloud.
IPlusTilde i_plus_tilde(const Region &c, const BoundaryCatalogue &cat);

struct ScriComponents {
  std::vector<std::size_t> members;   // all null-infinity entries
  std::vector<std::vector<std::size_t>> components;
};

/// Null-infinity entries split into the u-family and v-family components.
ScriComponents scri_components(const BoundaryCatalogue &cat);

struct AmpleReport {
  bool ample = true;
  std::vector<std::size_t> escape_counts; // per component, members outside i_plus_tilde(C)
  std::string caveat;
};

/// Every component has a member outside i_plus_tilde(C).
AmpleReport check_ample(const BoundaryCatalogue &cat, const ScriComponents &scri, const Region &c);
AmpleReport check_ample(const BoundaryCatalogue &cat, const ScriComponents &scri, const std::vector<Point> &c);

struct PastCompleteReport {
  bool complete = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness; // (P in scri, P' outside with P' inside P)
};

PastCompleteReport check_past_complete(const BoundaryCatalogue &cat, const ScriComponents &scri);

/// Boundary points of the square where the conformal factor vanishes with
/// non-zero gradient, restricted to the future edges.
bool in_conformal_scri(const ConformalExtension &ext, const Point &sq, double tol = 1e-12);
std::vector<Point> conformal_scri(const ConformalExtension &ext, std::size_t per_edge);

struct VoilaReport {
  std::size_t checked = 0;
  std::size_t null_infinity = 0;
  std::vector<Point> failures;
  bool passed() const { return failures.empty(); }
};

/// psi of every sampled conformal-scri point must classify as null infinity.
VoilaReport check_voila(const ConformalExtension &ext, const CloudPtr &cloud, std::size_t per_edge = 21);

/// CSV: label,family,parameter,classification,generators,conformal
void write_classification_table(std::ostream &out, const BoundaryCatalogue &cat,
                                const std::vector<ScriClassification> &cls);

} // namespace clt
