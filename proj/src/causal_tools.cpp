#include "clt/causal_tools.hpp"

#include "clt/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace clt {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::string fmt(const Point &p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%g,%g)", p[0], p[1]);
  return buf;
}

// Indices of the sampled neighbours of point i: the four grid neighbours on
// grid clouds, otherwise every point within h.
template <class F> void for_each_neighbour(const PointCloud &cloud, const std::vector<std::size_t> &at_cell,
                                           std::size_t i, F &&f) {
  if (cloud.grid) {
    const std::size_t n1 = cloud.grid->n1, c = cloud.cell_of_point[i];
    const std::size_t r = c / n1, col = c % n1;
    auto visit = [&](std::size_t rr, std::size_t cc) {
      const std::size_t j = at_cell[rr * n1 + cc];
      if (j != kNone) f(j);
    };
    if (r > 0) visit(r - 1, col);
    if (r + 1 < cloud.grid->n0) visit(r + 1, col);
    if (col > 0) visit(r, col - 1);
    if (col + 1 < n1) visit(r, col + 1);
    return;
  }
  for (std::size_t j = 0; j < cloud.size(); ++j)
    if (j != i && cloud.distance(i, j) <= cloud.h * (1.0 + 1e-9)) f(j);
}

} // namespace

// ---------------------------------------------------------------------------

PointSet Region::sample(const PointCloud &cloud) const {
  PointSet s(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) s[i] = contains(cloud.points[i]);
  return s;
}

Region Region::all() { return {[](const Point &) { return true; }, "all"}; }
Region Region::none() { return {[](const Point &) { return false; }, "none"}; }

Region Region::rect(double lo0, double hi0, double lo1, double hi1) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "[%g,%g]x[%g,%g]", lo0, hi0, lo1, hi1);
  const double e = 1e-12;
  return {[=](const Point &p) { return p[0] >= lo0 - e && p[0] <= hi0 + e && p[1] >= lo1 - e && p[1] <= hi1 + e; },
          buf};
}

Region Region::ball(Point c, double r) {
  return {[=](const Point &p) { return euclidean(p, c) < r; }, "ball" + fmt(c) + " r=" + std::to_string(r)};
}

Region Region::closed_ball(Point c, double r) {
  return {[=](const Point &p) { return euclidean(p, c) <= r + 1e-12; },
          "closed ball" + fmt(c) + " r=" + std::to_string(r)};
}

Region Region::half_plane(double a, double b, double c) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "{%g p0 + %g p1 < %g}", a, b, c);
  return {[=](const Point &p) { return a * p[0] + b * p[1] < c; }, buf};
}

Region Region::past_cone(const ModelSpacetime &model, Point apex) {
  return {[model, apex](const Point &p) { return model.in_chart(p) && model.chron(p, apex); }, "I-" + fmt(apex)};
}

Region Region::future_cone(const ModelSpacetime &model, Point apex) {
  return {[model, apex](const Point &p) { return model.in_chart(p) && model.chron(apex, p); }, "I+" + fmt(apex)};
}

Region Region::point(Point q) {
  return {[q](const Point &p) { return euclidean(p, q) <= 1e-12; }, "point" + fmt(q)};
}

Region Region::operator|(const Region &o) const {
  auto a = contains, b = o.contains;
  return {[a, b](const Point &p) { return a(p) || b(p); }, "(" + description + " | " + o.description + ")"};
}

Region Region::operator&(const Region &o) const {
  auto a = contains, b = o.contains;
  return {[a, b](const Point &p) { return a(p) && b(p); }, "(" + description + " & " + o.description + ")"};
}

Region Region::operator!() const {
  auto a = contains;
  return {[a](const Point &p) { return !a(p); }, "!" + description};
}

// ---------------------------------------------------------------------------

ConvexityResult is_causally_convex(const PointCloud &cloud, const PointSet &members) {
  if (!cloud.has_causal_structure()) throw InputError("cloud carries no causal structure");
  if (members.none()) throw ContractError("is_causally_convex: empty sample");
  const kernels::DominanceIndex idx(cloud.null, members);
  ConvexityResult res;
  for (std::size_t z = 0; z < cloud.size(); ++z) {
    if (members.test(z)) continue;
    const NullCoord q = cloud.null[z];
    if (!idx.any_causally_below(q) || !idx.any_causally_above(q)) continue;
    kernels::TripleWitness w{0, z, 0};
    for (auto i = members.find_first(); i != PointSet::npos; i = members.find_next(i))
      if (causally_below(cloud.null[i], q)) { w.lower = i; break; }
    for (auto i = members.find_first(); i != PointSet::npos; i = members.find_next(i))
      if (causally_below(q, cloud.null[i])) { w.upper = i; break; }
    res.convex = false;
    res.witness = w;
    break;
  }
  return res;
}

ConvexityResult is_causally_convex(const ModelSpacetime &model, const Region &a, const PointCloud &cloud) {
  (void)model; // the cloud carries the model's null coordinates
  return is_causally_convex(cloud, a.sample(cloud));
}

PrecompactResult is_future_precompact(const ModelSpacetime &model, const Region &a, const PointCloud &cloud,
                                      const std::vector<Point> &k) {
  std::vector<NullCoord> kn;
  for (const auto &p : k) kn.push_back(model.null_coords(p));
  PointSet all(kn.size());
  all.set();
  const kernels::DominanceIndex idx(kn, all);
  const PointSet members = a.sample(cloud);
  PrecompactResult res;
  for (auto i = members.find_first(); i != PointSet::npos; i = members.find_next(i))
    if (!idx.any_strictly_above(cloud.null[i])) {
      res.precompact = false;
      res.witness = i;
      break;
    }
  return res;
}

SampledSet future_boundary(const SampledSet &a) {
  const PointCloud &cloud = *a.cloud;
  if (!cloud.has_causal_structure()) throw InputError("cloud carries no causal structure");
  std::vector<std::size_t> at_cell;
  if (cloud.grid) {
    at_cell.assign(cloud.grid->cells(), kNone);
    for (std::size_t i = 0; i < cloud.size(); ++i) at_cell[cloud.cell_of_point[i]] = i;
  }
  const kernels::DominanceIndex idx(cloud.null, a.members);
  PointSet out(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (a.members.test(i) || !idx.any_strictly_below(cloud.null[i])) continue;
    bool frontier = false;
    for_each_neighbour(cloud, at_cell, i, [&](std::size_t j) { frontier = frontier || a.members.test(j); });
    out[i] = frontier;
  }
  return SampledSet{a.cloud, out, Provenance::Formula};
}

SampledSet future_boundary(const ModelSpacetime &model, const Region &a, const CloudPtr &cloud) {
  (void)model;
  return future_boundary(SampledSet{cloud, a.sample(*cloud)});
}

AchronalResult is_achronal(const SampledSet &s) {
  const PointCloud &cloud = *s.cloud;
  if (!cloud.has_causal_structure()) throw InputError("cloud carries no causal structure");
  const kernels::DominanceIndex idx(cloud.null, s.members);
  AchronalResult res;
  for (auto i = s.members.find_first(); i != PointSet::npos; i = s.members.find_next(i)) {
    if (!idx.any_strictly_above(cloud.null[i])) continue;
    for (auto j = s.members.find_first(); j != PointSet::npos; j = s.members.find_next(j))
      if (strictly_below(cloud.null[i], cloud.null[j])) {
        res.achronal = false;
        res.witness = kernels::PairWitness{i, j};
        return res;
      }
  }
  return res;
}

AchronalResult is_achronal(const ModelSpacetime &model, const std::vector<Point> &points) {
  auto cloud = std::make_shared<PointCloud>();
  for (const auto &p : points) {
    cloud->points.push_back(p);
    cloud->null.push_back(model.null_coords(p));
  }
  PointSet all(points.size());
  all.set();
  return is_achronal(SampledSet{cloud, all});
}

// ---------------------------------------------------------------------------

NestingReport check_future_nesting(const ConformalExtension &ext, const CloudPtr &ambient) {
  NestingReport rep;
  rep.ambient_globally_hyperbolic = ext.ambient_globally_hyperbolic;
  PointSet image(ambient->size());
  std::vector<Point> k;
  for (std::size_t i = 0; i < ambient->size(); ++i) {
    const Point &p = ambient->points[i];
    image[i] = ext.in_image(p);
    if (ext.in_future_boundary(p) || (std::abs(p[0] - kHalfPi) <= 1e-12 && std::abs(p[1] - kHalfPi) <= 1e-12))
      k.push_back(p);
  }
  rep.image_samples = image.count();
  if (image.none()) return rep;

  const auto cc = is_causally_convex(*ambient, image);
  rep.causally_convex = cc.convex;
  rep.convexity_witness = cc.witness;

  const Region img{ext.in_image, ext.label};
  rep.future_precompact = !k.empty() && is_future_precompact(ext.ambient, img, *ambient, k).precompact;
  rep.boundary_achronal = !k.empty() && is_achronal(ext.ambient, k).achronal;
  return rep;
}

FlowReport flow_to_future_boundary(const ConformalExtension &ext, const std::vector<Point> &line, double h) {
  FlowReport rep;
  const double step = h / std::sqrt(2.0);
  double prev_param = -std::numeric_limits<double>::infinity();
  for (const auto &p : line) {
    ++rep.checked;
    Point q = ext.embed(p);
    if (!ext.in_image(q)) throw InputError("flow_to_future_boundary: start point " + fmt(p) + " not in the image");
    // Step until the next step would leave the image.
    std::size_t crossings = 0;
    for (;;) {
      const Point next{q[0] + step, q[1] + step};
      if (!ext.in_image(next)) break;
      q = next;
    }
    const double s = kHalfPi - std::max(q[0], q[1]);
    const Point exit{q[0] + s, q[1] + s};
    if (ext.in_future_boundary(exit)) ++crossings;
    // The flow line is u' - v' = const: it cannot come back into the image.
    if (crossings == 1) ++rep.hits_on_boundary;
    rep.max_last_step = std::max(rep.max_last_step, euclidean(q, exit));
    const double param = exit[1] - exit[0];
    if (!(param > prev_param)) rep.injective = false;
    prev_param = param;
    rep.exits.push_back(exit);
  }
  return rep;
}

} // namespace clt
