#pragma once

// Upper/lower limits of set sequences, the closed limit, distance profiles
// and convergence of profiles.
//
// A finite sequence stands for an infinite one through its tail window
// [tail_start, N): every point's membership pattern on the tail must either
// repeat with some period p <= len/2 (constant patterns have p = 1) or switch
// exactly once. Periodic points keep cycling forever, single-switch points
// keep their final value. One period of that extension (the "limit window")
// is enough to evaluate every "infinitely many n" and "all but finitely many
// n" quantifier exactly.

#include "clt/geometry.hpp"
#include "clt/kernels.hpp"
#include "clt/pointset.hpp"

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace clt {

struct PointCloud {
  std::vector<Point> points;
  /// Null coordinates of each point; empty for clouds without a causal model.
  std::vector<NullCoord> null;
  /// Characteristic spacing.
  double h = 0.0;
  /// Present when the cloud sits on a square-cell grid; cell_of_point maps
  /// each point to its grid cell.
  std::optional<kernels::GridLayout> grid;
  std::vector<std::size_t> cell_of_point;

  std::size_t size() const { return points.size(); }
  bool has_causal_structure() const { return null.size() == points.size(); }
  double distance(std::size_t i, std::size_t j) const { return euclidean(points[i], points[j]); }

  /// The sub-cloud on `keep`, with the same grid (distances are unchanged).
  PointCloud subset(const PointSet &keep, std::vector<std::size_t> *parent_index = nullptr) const;

  /// Spot-checks symmetry, zero diagonal and the triangle inequality on
  /// `samples` random triples.
  bool metric_spot_check(std::size_t samples, std::mt19937_64 &rng) const;
};

using CloudPtr = std::shared_ptr<const PointCloud>;

/// 1D grid on [lo, hi] embedded on the first axis (second coordinate 0).
CloudPtr make_line_cloud(double lo, double hi, double h);
/// Square-cell grid on [lo0, hi0] x [lo1, hi1] without a causal model.
CloudPtr make_grid_cloud(double lo0, double hi0, double lo1, double hi1, double h);

enum class Provenance { Explicit, PastOfPoint, PastOfCurve, Formula };

struct SampledSet {
  CloudPtr cloud;
  PointSet members;
  Provenance provenance = Provenance::Explicit;

  static SampledSet empty(CloudPtr c) { return SampledSet{c, PointSet(c->size())}; }
  std::size_t count() const { return members.count(); }
  bool operator==(const SampledSet &o) const { return cloud == o.cloud && members == o.members; }
};

/// Set sequence with the tail contract described above, over any ground set.
class MembershipSequence {
public:
  MembershipSequence() = default;
  /// Throws InputError on size mismatch, tail_start > N - 2, or a tail
  /// pattern that is neither periodic nor single-switch.
  MembershipSequence(std::vector<PointSet> sets, std::size_t tail_start);

  std::size_t length() const { return sets_.size(); }
  std::size_t tail_start() const { return tail_start_; }
  const PointSet &at(std::size_t n) const { return sets_.at(n); }
  const std::vector<PointSet> &sets() const { return sets_; }
  /// One period of the infinite extension past index N - 1.
  const std::vector<PointSet> &limit_window() const { return window_; }

  /// limsup^o / liminf^o: membership in infinitely many / all but finitely
  /// many sets.
  PointSet limsup_open() const;
  PointSet liminf_open() const;

  /// Sequence along strictly increasing `indices`; the tail restarts at the
  /// first selected index that is >= tail_start().
  MembershipSequence subsequence(const std::vector<std::size_t> &indices) const;

private:
  std::vector<PointSet> sets_;
  std::size_t tail_start_ = 0;
  std::vector<PointSet> window_;
};

class SetSequence {
public:
  SetSequence(CloudPtr cloud, std::vector<PointSet> sets, std::size_t tail_start);
  SetSequence(CloudPtr cloud, MembershipSequence seq);

  const CloudPtr &cloud() const { return cloud_; }
  const MembershipSequence &membership() const { return seq_; }
  std::size_t length() const { return seq_.length(); }
  SampledSet at(std::size_t n) const { return SampledSet{cloud_, seq_.at(n)}; }
  SetSequence subsequence(const std::vector<std::size_t> &indices) const;

private:
  CloudPtr cloud_;
  MembershipSequence seq_;
};

struct DistanceProfile {
  std::vector<double> values;

  double sup_gap(const DistanceProfile &o) const;
};

struct SetLimits {
  SampledSet limsup;
  SampledSet liminf;
};

/// Ball neighbourhoods are open: y is in ball(x, r) iff d(x, y) < r, with a
/// relative slack of 1e-9 so that grid neighbours at exactly r stay out.
/// Throws ToleranceError when r < h/2.
SetLimits limsup_liminf_metric(const SetSequence &seq, double r);
std::optional<SampledSet> closed_limit(const SetSequence &seq, double r);
SetLimits limsup_liminf_open(const SetSequence &seq);

/// d(x, S) for every cloud point; grid clouds use the exact distance
/// transform, others the OpenMP brute force. Throws DomainError on empty S.
DistanceProfile dist_profile(const SampledSet &s);
/// Hausdorff distance of two sampled sets; +inf if exactly one is empty.
double hausdorff_distance(const SampledSet &a, const SampledSet &b);

struct ConvergenceReport {
  bool converged = false;
  std::vector<double> gaps;       // sup-gap for every index 0..N-1
  std::vector<double> limit_gaps; // sup-gap for each limit-window set
  double final_gap() const { return gaps.empty() ? 0.0 : gaps.back(); }
};

/// Uniform convergence of distance profiles to that of S: converged iff
/// every limit-window set is within `tol` of S in sup norm. Throws
/// ToleranceError when tol < h and ContractError on empty sets.
ConvergenceReport tauc_converges(const SetSequence &seq, const SampledSet &s, double tol);

/// Catalogue entries equal to both open limits (symmetric difference at most
/// `tolerance` points each).
std::vector<std::size_t> l_h(const MembershipSequence &seq, const std::vector<PointSet> &catalogue,
                             std::size_t tolerance = 0);
/// Catalogue entries inside liminf^o that are inclusion-maximal among the
/// catalogue entries inside limsup^o.
std::vector<std::size_t> l_chr(const MembershipSequence &seq, const std::vector<PointSet> &catalogue,
                               std::size_t tolerance = 0);

struct LimitComparison {
  std::size_t sequences = 0;
  std::size_t containment_violations = 0; // L_H not inside L_chr
  std::size_t non_hausdorff_witnesses = 0; // |L_chr| >= 2
  std::size_t separation_witnesses = 0;   // L_chr \ L_H non-empty
  bool all_chr_at_most_one = true;
  std::size_t equality_violations = 0;    // L_H != L_chr while all |L_chr| <= 1
  std::size_t catalogue_size = 0;
  std::vector<std::size_t> witness_sequences;

  bool passed() const {
    return containment_violations == 0 && (!all_chr_at_most_one || equality_violations == 0);
  }
};

LimitComparison compare_limits(const std::vector<MembershipSequence> &batch,
                               const std::vector<PointSet> &catalogue);

/// CSV with header `index,x,y,value`, full double precision.
void write_profile_csv(std::ostream &out, const PointCloud &cloud, const DistanceProfile &p);
DistanceProfile read_profile_csv(std::istream &in);

} // namespace clt
