#pragma once

// Finite chronological sets: a ground set with an explicit, transitively
// closed strict relation. Pasts and future limits keep the strict reading
// of the relation; indecomposable past sets and the future completion run on
// reflexive down-sets, which is how open continuum past sets show up on a
// finite order (an IP there is exactly a principal down-set).

#include "clt/pointset.hpp"

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace clt {

class ChronoSet {
public:
  ChronoSet() = default;

  /// Builds from a full relation matrix (`rel[x][y]` means x << y).
  /// Throws InputError unless the matrix is irreflexive, antisymmetric and
  /// transitively closed.
  static ChronoSet from_relation(std::vector<std::string> labels,
                                 const std::vector<std::vector<bool>> &rel);

  /// Builds from cover (or any generating) pairs; the transitive closure is
  /// taken. Cycles are rejected.
  static ChronoSet from_covers(std::vector<std::string> labels,
                               const std::vector<std::pair<std::size_t, std::size_t>> &covers);

  /// Adjacency-list text: one `label: succ1 succ2 ...` line per point,
  /// `#` starts a comment. Successors need not be declared on their own line.
  static ChronoSet parse(std::string_view text);

  /// Inverse of parse; lists the cover relation (Hasse diagram) only.
  std::string serialize() const;

  std::size_t size() const { return labels_.size(); }
  const std::string &label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string> &labels() const { return labels_; }
  std::size_t index_of(std::string_view label) const;
  PointSet set_of(const std::vector<std::string> &labels) const;
  PointSet empty_set() const { return PointSet(size()); }
  PointSet full_set() const { return PointSet(size()).set(); }

  bool precedes(std::size_t x, std::size_t y) const { return succ_[x].test(y); }
  /// Strict future I+(x) and past I-(x) of a single point.
  const PointSet &future_of_point(std::size_t x) const { return succ_[x]; }
  const PointSet &past_of_point(std::size_t x) const { return pred_[x]; }

  /// Condition C1: every point is related to some other point. Reported, not
  /// enforced, so that antichains stay constructible as test fixtures.
  bool satisfies_c1() const;

  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

private:
  void build_predecessors();

  std::vector<std::string> labels_;
  std::vector<PointSet> succ_;
  std::vector<PointSet> pred_;
};

enum class Convention { Strict, Reflexive };

struct DownSet {
  PointSet members;
  Convention convention = Convention::Reflexive;

  bool operator==(const DownSet &) const = default;
};

struct CategoryFlags {
  bool past_regular = false;
  bool past_determined = false;
  bool past_distinguishing = false;
  bool future_distinguishing = false;
  bool future_complete = false;

  bool operator==(const CategoryFlags &) const = default;
};

/// { x : exists y in A with x << y }.
PointSet past_of(const ChronoSet &c, const PointSet &a);
PointSet future_of(const ChronoSet &c, const PointSet &a);

/// Reflexive down-closure A u I-(A).
DownSet down_of(const ChronoSet &c, const PointSet &a);
/// Reflexive up-closure A u I+(A).
PointSet up_of(const ChronoSet &c, const PointSet &a);

bool is_down_closed(const ChronoSet &c, const PointSet &a);
bool is_up_closed(const ChronoSet &c, const PointSet &a);

/// Decomposition test: a non-empty reflexive down-set is an IP when it is
/// not the union of two proper reflexive down-subsets. Exhaustive over the
/// down-subsets of P.
bool is_ip(const ChronoSet &c, const DownSet &p);

/// Time-dual of is_ip for reflexive up-sets.
bool is_if(const ChronoSet &c, const PointSet &up);

/// Directedness under strict <<: every pair in P has a common strict upper
/// bound in P. Diagnostic only; a finite non-empty set never passes.
bool is_directed_strict(const ChronoSet &c, const PointSet &p);

/// Future limits of A under strict <<.
PointSet future_limits(const ChronoSet &c, const PointSet &a);

struct IpClass {
  enum Kind { PIP, TIP } kind;
  PointSet witnesses;
};

/// Throws ContractError when P is not an IP.
IpClass classify_ip(const ChronoSet &c, const DownSet &p);

CategoryFlags category_flags(const ChronoSet &c);
bool is_future_regular(const ChronoSet &c);

/// Every reflexive down-set of C. Exponential; limited to 24 points.
std::vector<PointSet> enumerate_down_sets(const ChronoSet &c);

/// All non-empty reflexive IPs, ordered by their first maximal point.
std::vector<DownSet> enumerate_ips(const ChronoSet &c);

struct Completion {
  ChronoSet order;                   // ground set = IPs of the source
  std::vector<DownSet> ips;          // ips[i] is the IP behind order point i
  std::vector<std::size_t> inclusion; // source point p -> index of down(p)
  CategoryFlags source_flags;
};

/// P <<^ P' iff some x in P' \ P has P inside the strict past of x.
bool completion_precedes(const ChronoSet &c, const DownSet &p, const DownSet &q);

Completion future_completion(const ChronoSet &c);

struct ChronoMap {
  const ChronoSet *source = nullptr;
  const ChronoSet *target = nullptr;
  std::vector<std::size_t> image;
};

bool preserves_chronology(const ChronoMap &f);
bool is_future_continuous(const ChronoMap &f);

ChronoSet time_dual(const ChronoSet &c);

/// Random strict order: a DAG on a hidden random linear extension with
/// independent edge probability `density`, transitively closed.
ChronoSet random_chronoset(std::size_t n, double density, std::mt19937_64 &rng);

} // namespace clt
