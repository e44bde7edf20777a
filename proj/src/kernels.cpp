#include "clt/kernels.hpp"

#include "clt/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace clt::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double min_distance(const Point &x, std::span<const Point> points,
                    const std::vector<std::size_t> &members) {
  double best = kInf;
  for (auto j : members) best = std::min(best, euclidean(x, points[j]));
  return best;
}

std::uint8_t in_union(NullCoord x, std::span<const NullCoord> apexes) {
  for (const auto &a : apexes)
    if (strictly_below(x, a)) return 1;
  return 0;
}

// Felzenszwalb-Huttenlocher lower envelope of parabolas, one line.
void squared_dt_1d(const double *f, double *d, std::size_t n, std::size_t stride,
                   std::vector<int> &v, std::vector<double> &z, std::vector<double> &buf) {
  buf.resize(n);
  for (std::size_t q = 0; q < n; ++q) buf[q] = f[q * stride];
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  int k = -1;
  for (std::size_t q = 0; q < n; ++q) {
    if (buf[q] == kInf) continue;
    const double fq = buf[q] + double(q) * double(q);
    while (k >= 0) {
      const double fv = buf[v[k]] + double(v[k]) * double(v[k]);
      const double s = (fq - fv) / (2.0 * (double(q) - double(v[k])));
      if (s <= z[k]) {
        --k;
        continue;
      }
      ++k;
      v[k] = int(q);
      z[k] = s;
      z[k + 1] = kInf;
      break;
    }
    if (k < 0) {
      k = 0;
      v[0] = int(q);
      z[0] = -kInf;
      z[1] = kInf;
    }
  }
  if (k < 0) {
    for (std::size_t q = 0; q < n; ++q) d[q * stride] = kInf;
    return;
  }
  int j = 0;
  for (std::size_t q = 0; q < n; ++q) {
    while (z[j + 1] < double(q)) ++j;
    const double dq = double(q) - double(v[j]);
    d[q * stride] = dq * dq + buf[v[j]];
  }
}

std::vector<double> seed_grid(const GridLayout &grid, std::span<const std::size_t> cell_of_point,
                              const PointSet &members) {
  if (cell_of_point.size() != members.size())
    throw InputError("grid_distance_profile: membership size does not match the cloud");
  std::vector<double> f(grid.cells(), kInf);
  for (auto i = members.find_first(); i != PointSet::npos; i = members.find_next(i))
    f[cell_of_point[i]] = 0.0;
  return f;
}

std::vector<double> read_back(const GridLayout &grid, const std::vector<double> &sq,
                              std::span<const std::size_t> cell_of_point) {
  std::vector<double> out(cell_of_point.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double s = sq[cell_of_point[i]];
    out[i] = s == kInf ? kInf : grid.h * std::sqrt(s);
  }
  return out;
}

} // namespace

// ---------------------------------------------------------------------------

namespace serial {

std::vector<double> distance_profile(std::span<const Point> points, const PointSet &members) {
  const auto m = members_of(members);
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = min_distance(points[i], points, m);
  return out;
}

std::vector<std::uint8_t> past_indicator(std::span<const NullCoord> coords, NullCoord apex) {
  std::vector<std::uint8_t> out(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) out[i] = strictly_below(coords[i], apex);
  return out;
}

std::vector<std::uint8_t> union_of_pasts(std::span<const NullCoord> coords,
                                         std::span<const NullCoord> apexes) {
  std::vector<std::uint8_t> out(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) out[i] = in_union(coords[i], apexes);
  return out;
}

std::optional<PairWitness> down_set_violation(std::span<const NullCoord> coords,
                                              const PointSet &members) {
  for (std::size_t a = 0; a < coords.size(); ++a) {
    if (!members.test(a)) continue;
    for (std::size_t b = 0; b < coords.size(); ++b)
      if (!members.test(b) && strictly_below(coords[b], coords[a])) return PairWitness{b, a};
  }
  return std::nullopt;
}

std::optional<TripleWitness> convexity_violation(std::span<const NullCoord> coords,
                                                 const PointSet &members) {
  const std::size_t n = coords.size();
  for (std::size_t z = 0; z < n; ++z) {
    if (members.test(z)) continue;
    for (std::size_t x = 0; x < n; ++x) {
      if (!members.test(x) || !causally_below(coords[x], coords[z])) continue;
      for (std::size_t y = 0; y < n; ++y)
        if (members.test(y) && causally_below(coords[z], coords[y])) return TripleWitness{x, z, y};
    }
  }
  return std::nullopt;
}

std::vector<double> grid_distance_profile(const GridLayout &grid,
                                          std::span<const std::size_t> cell_of_point,
                                          const PointSet &members) {
  auto f = seed_grid(grid, cell_of_point, members);
  std::vector<double> tmp(grid.cells());
  std::vector<int> v;
  std::vector<double> z, buf;
  for (std::size_t i = 0; i < grid.n0; ++i)
    squared_dt_1d(f.data() + i * grid.n1, tmp.data() + i * grid.n1, grid.n1, 1, v, z, buf);
  for (std::size_t j = 0; j < grid.n1; ++j)
    squared_dt_1d(tmp.data() + j, f.data() + j, grid.n0, grid.n1, v, z, buf);
  return read_back(grid, f, cell_of_point);
}

} // namespace serial

// ---------------------------------------------------------------------------

namespace parallel {

std::vector<double> distance_profile(std::span<const Point> points, const PointSet &members) {
  const auto m = members_of(members);
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  std::vector<double> out(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = min_distance(points[i], points, m);
  return out;
}

std::vector<std::uint8_t> past_indicator(std::span<const NullCoord> coords, NullCoord apex) {
  const auto n = static_cast<std::ptrdiff_t>(coords.size());
  std::vector<std::uint8_t> out(coords.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = strictly_below(coords[i], apex);
  return out;
}

std::vector<std::uint8_t> union_of_pasts(std::span<const NullCoord> coords,
                                         std::span<const NullCoord> apexes) {
  const auto n = static_cast<std::ptrdiff_t>(coords.size());
  std::vector<std::uint8_t> out(coords.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = in_union(coords[i], apexes);
  return out;
}

std::optional<PairWitness> down_set_violation(std::span<const NullCoord> coords,
                                              const PointSet &members) {
  // Lexicographically smallest (above, below) via an integer min-reduction.
  const auto n = static_cast<std::ptrdiff_t>(coords.size());
  const auto none = std::numeric_limits<std::size_t>::max();
  std::size_t best = none;
#pragma omp parallel for schedule(dynamic, 64) reduction(min : best)
  for (std::ptrdiff_t a = 0; a < n; ++a) {
    if (!members.test(a)) continue;
    for (std::ptrdiff_t b = 0; b < n; ++b)
      if (!members.test(b) && strictly_below(coords[b], coords[a])) {
        best = std::min(best, std::size_t(a) * coords.size() + std::size_t(b));
        break;
      }
  }
  if (best == none) return std::nullopt;
  return PairWitness{best % coords.size(), best / coords.size()};
}

std::optional<TripleWitness> convexity_violation(std::span<const NullCoord> coords,
                                                 const PointSet &members) {
  const auto n = static_cast<std::ptrdiff_t>(coords.size());
  const auto none = std::numeric_limits<std::size_t>::max();
  std::size_t best_z = none;
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best_z)
  for (std::ptrdiff_t z = 0; z < n; ++z) {
    if (members.test(z)) continue;
    bool below = false, above = false;
    for (std::ptrdiff_t x = 0; x < n && !below; ++x)
      below = members.test(x) && causally_below(coords[x], coords[z]);
    for (std::ptrdiff_t y = 0; y < n && !above; ++y)
      above = members.test(y) && causally_below(coords[z], coords[y]);
    if (below && above) best_z = std::min(best_z, std::size_t(z));
  }
  if (best_z == none) return std::nullopt;
  // Same witness the serial scan reports for this middle point.
  TripleWitness w{0, best_z, 0};
  for (std::size_t x = 0; x < coords.size(); ++x)
    if (members.test(x) && causally_below(coords[x], coords[best_z])) {
      w.lower = x;
      break;
    }
  for (std::size_t y = 0; y < coords.size(); ++y)
    if (members.test(y) && causally_below(coords[best_z], coords[y])) {
      w.upper = y;
      break;
    }
  return w;
}

std::vector<double> grid_distance_profile(const GridLayout &grid,
                                          std::span<const std::size_t> cell_of_point,
                                          const PointSet &members) {
  auto f = seed_grid(grid, cell_of_point, members);
  std::vector<double> tmp(grid.cells());
  const auto rows = static_cast<std::ptrdiff_t>(grid.n0);
  const auto cols = static_cast<std::ptrdiff_t>(grid.n1);
#pragma omp parallel
  {
    std::vector<int> v;
    std::vector<double> z, buf;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i)
      squared_dt_1d(f.data() + i * grid.n1, tmp.data() + i * grid.n1, grid.n1, 1, v, z, buf);
#pragma omp for schedule(static)
    for (std::ptrdiff_t j = 0; j < cols; ++j)
      squared_dt_1d(tmp.data() + j, f.data() + j, grid.n0, grid.n1, v, z, buf);
  }
  return read_back(grid, f, cell_of_point);
}

} // namespace parallel

// ---------------------------------------------------------------------------

DominanceIndex::DominanceIndex(std::span<const NullCoord> coords, const PointSet &members) {
  std::vector<NullCoord> pts;
  pts.reserve(members.count());
  for (auto i = members.find_first(); i != PointSet::npos; i = members.find_next(i))
    pts.push_back(coords[i]);
  std::sort(pts.begin(), pts.end(), [](NullCoord a, NullCoord b) { return a.u < b.u; });
  const std::size_t n = pts.size();
  u_.resize(n);
  prefix_min_v_.resize(n);
  suffix_max_v_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    u_[i] = pts[i].u;
    prefix_min_v_[i] = i == 0 ? pts[i].v : std::min(prefix_min_v_[i - 1], pts[i].v);
  }
  for (std::size_t i = n; i-- > 0;)
    suffix_max_v_[i] = i + 1 == n ? pts[i].v : std::max(suffix_max_v_[i + 1], pts[i].v);
}

// The comparisons below are written in the same subtraction form as
// strictly_below / causally_below so that boundary cases round identically.

bool DominanceIndex::any_strictly_above(NullCoord q) const {
  // m.u - q.u > eps and m.v - q.v > eps
  auto it = std::partition_point(u_.begin(), u_.end(),
                                 [&](double u) { return !(u - q.u > kCausalEps); });
  if (it == u_.end()) return false;
  return suffix_max_v_[std::size_t(it - u_.begin())] - q.v > kCausalEps;
}

bool DominanceIndex::any_strictly_below(NullCoord q) const {
  // q.u - m.u > eps and q.v - m.v > eps
  auto it = std::partition_point(u_.begin(), u_.end(),
                                 [&](double u) { return q.u - u > kCausalEps; });
  if (it == u_.begin()) return false;
  return q.v - prefix_min_v_[std::size_t(it - u_.begin()) - 1] > kCausalEps;
}

bool DominanceIndex::any_causally_above(NullCoord q) const {
  auto it = std::partition_point(u_.begin(), u_.end(),
                                 [&](double u) { return !(u - q.u >= -kCausalEps); });
  if (it == u_.end()) return false;
  return suffix_max_v_[std::size_t(it - u_.begin())] - q.v >= -kCausalEps;
}

bool DominanceIndex::any_causally_below(NullCoord q) const {
  auto it = std::partition_point(u_.begin(), u_.end(),
                                 [&](double u) { return q.u - u >= -kCausalEps; });
  if (it == u_.begin()) return false;
  return q.v - prefix_min_v_[std::size_t(it - u_.begin()) - 1] >= -kCausalEps;
}

} // namespace clt::kernels
