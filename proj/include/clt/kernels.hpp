#pragma once

// Data-parallel inner loops. Each kernel has a plain serial reference in
// `serial::` and an OpenMP version in `parallel::` with identical results:
// every output slot is computed independently in a fixed order, and
// reductions are over integers (min index, counts), so the parallel schedule
// never changes a bit of the output.

#include "clt/geometry.hpp"
#include "clt/pointset.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace clt::kernels {

/// Index-space layout of a square-cell grid: point (i, j) has metric
/// distance h * |(i, j) - (i', j')| to point (i', j').
struct GridLayout {
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  double h = 0.0;

  std::size_t cells() const { return n0 * n1; }
};

struct PairWitness {
  std::size_t below = 0;
  std::size_t above = 0;
};

struct TripleWitness {
  std::size_t lower = 0;
  std::size_t middle = 0;
  std::size_t upper = 0;
};

namespace serial {

/// d(x, S) for every cloud point by exhaustive minimum. +inf when S is empty.
std::vector<double> distance_profile(std::span<const Point> points, const PointSet &members);

/// Membership in the strict past of `apex`.
std::vector<std::uint8_t> past_indicator(std::span<const NullCoord> coords, NullCoord apex);

/// Membership in the union of the strict pasts of `apexes`.
std::vector<std::uint8_t> union_of_pasts(std::span<const NullCoord> coords,
                                         std::span<const NullCoord> apexes);

/// First pair (lexicographic in (above, below)) with `above` a member,
/// `below` a non-member and below << above. Exhaustive O(n^2).
std::optional<PairWitness> down_set_violation(std::span<const NullCoord> coords,
                                              const PointSet &members);

/// First (lower, middle, upper) with lower, upper members, middle a
/// non-member and lower <= middle <= upper causally. Exhaustive O(n^3).
std::optional<TripleWitness> convexity_violation(std::span<const NullCoord> coords,
                                                 const PointSet &members);

/// Squared-distance transform on the index grid (two 1D passes).
std::vector<double> grid_distance_profile(const GridLayout &grid,
                                          std::span<const std::size_t> cell_of_point,
                                          const PointSet &members);

} // namespace serial

namespace parallel {

std::vector<double> distance_profile(std::span<const Point> points, const PointSet &members);
std::vector<std::uint8_t> past_indicator(std::span<const NullCoord> coords, NullCoord apex);
std::vector<std::uint8_t> union_of_pasts(std::span<const NullCoord> coords,
                                         std::span<const NullCoord> apexes);
std::optional<PairWitness> down_set_violation(std::span<const NullCoord> coords,
                                              const PointSet &members);
std::optional<TripleWitness> convexity_violation(std::span<const NullCoord> coords,
                                                 const PointSet &members);
std::vector<double> grid_distance_profile(const GridLayout &grid,
                                          std::span<const std::size_t> cell_of_point,
                                          const PointSet &members);

} // namespace parallel

/// Sorted sweep structure answering "is some indexed point strictly (or
/// causally) above/below q" in O(log n). Agrees exactly with
/// strictly_below / causally_below from geometry.hpp.
class DominanceIndex {
public:
  DominanceIndex() = default;
  DominanceIndex(std::span<const NullCoord> coords, const PointSet &members);

  bool empty() const { return u_.empty(); }
  bool any_strictly_above(NullCoord q) const;
  bool any_strictly_below(NullCoord q) const;
  bool any_causally_above(NullCoord q) const;
  bool any_causally_below(NullCoord q) const;

private:
  std::vector<double> u_;           // ascending
  std::vector<double> prefix_min_v_; // min v over u_[0..i]
  std::vector<double> suffix_max_v_; // max v over u_[i..]
};

} // namespace clt::kernels
