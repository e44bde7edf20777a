#include "clt/cboundary.hpp"

#include "clt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>

namespace clt {

namespace {

std::string fmt_point(const Point &p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.6g,%.6g)", p[0], p[1]);
  return buf;
}

void require_causal(const PointCloud &cloud) {
  if (!cloud.has_causal_structure()) throw InputError("cloud carries no causal structure");
}

bool touches_window_future(const PointCloud &cloud, const PointSet &members) {
  PointSet all(cloud.size());
  all.set();
  const kernels::DominanceIndex idx(cloud.null, all);
  for (auto i = members.find_first(); i != PointSet::npos; i = members.find_next(i))
    if (!idx.any_strictly_above(cloud.null[i])) return true;
  return false;
}

PointSet pasts_of(const PointCloud &cloud, const ModelSpacetime &model, const std::vector<Point> &apexes) {
  std::vector<NullCoord> a;
  a.reserve(apexes.size());
  for (const auto &p : apexes) a.push_back(model.null_coords(p));
  return from_bytes(kernels::parallel::union_of_pasts(cloud.null, a));
}

} // namespace

const DistanceProfile &CompletionPoint::profile() const {
  if (!profile_) profile_ = dist_profile(indicator);
  return *profile_;
}

bool is_sampled_down_set(const PointCloud &cloud, const PointSet &members) {
  require_causal(cloud);
  const kernels::DominanceIndex idx(cloud.null, members);
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (!members.test(i) && idx.any_strictly_above(cloud.null[i])) return false;
  return true;
}

CompletionPoint ip_of_point(const ModelSpacetime &model, const CloudPtr &cloud, const Point &p) {
  require_causal(*cloud);
  CompletionPoint cp;
  cp.label = "I-" + fmt_point(p);
  cp.tag = Interior{p};
  cp.indicator = SampledSet{cloud, from_bytes(kernels::parallel::past_indicator(cloud->null, model.null_coords(p))),
                            Provenance::PastOfPoint};
  if (cp.indicator.members.none())
    throw ResolutionError("past of " + fmt_point(p) + " has no samples; point too close to the past edge of the window");
  cp.window_truncated = touches_window_future(*cloud, cp.indicator.members);
  return cp;
}

CompletionPoint ip_of_curve(const ModelSpacetime &model, const CloudPtr &cloud, const CurveDescriptor &c,
                            std::size_t k) {
  require_causal(*cloud);
  const PointSet once = pasts_of(*cloud, model, curve_points(model, c, k));
  const PointSet twice = pasts_of(*cloud, model, curve_points(model, c, 2 * k));
  if (once != twice)
    throw ResolutionError("past of curve " + c.label + " has not stabilised at k = " + std::to_string(k));
  if (once.none()) throw ResolutionError("past of curve " + c.label + " has no samples");

  CompletionPoint cp;
  cp.indicator = SampledSet{cloud, once, Provenance::PastOfCurve};
  if (auto end = future_endpoint(model, c)) {
    cp.tag = Interior{*end};
    cp.label = "I-" + fmt_point(*end);
  } else {
    cp.tag = BoundaryTIP{c};
    cp.label = c.label.empty() ? "TIP" : c.label;
  }
  cp.window_truncated = touches_window_future(*cloud, once);
  return cp;
}

bool completion_rel(const CompletionPoint &p, const CompletionPoint &q) {
  const SampledSet &a = p.indicator, &b = q.indicator;
  if (a.cloud != b.cloud) throw InputError("completion_rel: points on different clouds");
  if (a.members.none()) throw ContractError("completion_rel: empty indicator");
  const PointCloud &cloud = *a.cloud;
  require_causal(cloud);

  double su = -std::numeric_limits<double>::infinity(), sv = su;
  for (auto i = a.members.find_first(); i != PointSet::npos; i = a.members.find_next(i)) {
    su = std::max(su, cloud.null[i].u);
    sv = std::max(sv, cloud.null[i].v);
  }
  // x has all of P strictly below it iff it clears both suprema.
  const PointSet cand = b.members - a.members;
  for (auto i = cand.find_first(); i != PointSet::npos; i = cand.find_next(i))
    if (strictly_below({su, sv}, cloud.null[i])) return true;
  return false;
}

// ---------------------------------------------------------------------------

void BoundaryCatalogue::validate() const {
  std::set<std::string> labels;
  for (const auto &e : entries)
    if (!labels.insert(e.label).second) throw ContractError("duplicate catalogue label " + e.label);
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      if (entries[i].indicator.members == entries[j].indicator.members)
        throw ContractError("catalogue entries " + entries[i].label + " and " + entries[j].label + " coincide");
}

BoundaryCatalogue mink2_null_catalogue(const CloudPtr &cloud, const std::vector<double> &params) {
  const auto model = ModelSpacetime::mink2();
  BoundaryCatalogue cat;
  cat.model = model;
  cat.h = cloud->h;
  char buf[64];
  for (double c : params) {
    auto ray = CurveDescriptor::null_ray_u(c);
    std::snprintf(buf, sizeof buf, "u<%g", c);
    ray.label = buf;
    auto cp = ip_of_curve(model, cloud, ray);
    cp.family_param = c;
    cat.entries.push_back(std::move(cp));
  }
  for (double c : params) {
    auto ray = CurveDescriptor::null_ray_v(c);
    std::snprintf(buf, sizeof buf, "v<%g", c);
    ray.label = buf;
    auto cp = ip_of_curve(model, cloud, ray);
    cp.family_param = c;
    cat.entries.push_back(std::move(cp));
  }
  auto up = CurveDescriptor::timelike({0.0, 0.0}, {1.0, 0.0});
  up.spacing = Spacing::Geometric;
  up.label = "i+";
  cat.entries.push_back(ip_of_curve(model, cloud, up));
  cat.validate();
  return cat;
}

void write_catalogue_table(std::ostream &out, const BoundaryCatalogue &cat, const std::string &profile_prefix) {
  out << "label,tag,family,cardinality,profile\n";
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    const auto &e = cat.entries[i];
    out << e.label << ',' << (e.is_boundary() ? "boundary" : "interior") << ',';
    if (e.family_param) out << *e.family_param;
    out << ',' << e.indicator.count() << ',';
    if (!profile_prefix.empty()) out << profile_prefix << i << ".csv";
    out << '\n';
  }
}

AchronalityReport check_boundary_achronal(const BoundaryCatalogue &cat) {
  for (const auto &e : cat.entries)
    if (!e.is_boundary()) throw ContractError("achronality check on interior entry " + e.label);
  AchronalityReport rep;
  const std::size_t n = cat.entries.size();
  std::vector<std::uint8_t> hit(n * n, 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) hit[i * n + j] = completion_rel(cat.entries[i], cat.entries[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      ++rep.pairs_checked;
      if (hit[i * n + j]) rep.violations.emplace_back(i, j);
    }
  return rep;
}

// ---------------------------------------------------------------------------

VStripRestriction::VStripRestriction(CloudPtr vstrip_cloud) : full_(std::move(vstrip_cloud)) {
  require_causal(*full_);
  const auto model = ModelSpacetime::vstrip();
  PointSet keep(full_->size());
  for (std::size_t i = 0; i < full_->size(); ++i) keep[i] = model.in_interior(full_->points[i]);
  if (keep.none()) throw ResolutionError("VStrip sample has no interior points");
  interior_ = std::make_shared<PointCloud>(full_->subset(keep, &parent_));
}

CompletionPoint VStripRestriction::restrict_F(const CompletionPoint &p) const {
  if (p.indicator.cloud != full_) throw InputError("restrict_F: point not on the VStrip sample");
  PointSet m(interior_->size());
  for (std::size_t i = 0; i < parent_.size(); ++i) m[i] = p.indicator.members.test(parent_[i]);
  if (m.none()) throw ResolutionError("restrict_F: " + p.label + " has no interior samples");
  CompletionPoint out;
  out.label = "F(" + p.label + ")";
  out.tag = p.tag;
  out.indicator = SampledSet{interior_, std::move(m), p.indicator.provenance};
  out.family_param = p.family_param;
  out.window_truncated = touches_window_future(*interior_, out.indicator.members);
  return out;
}

VStripRestriction::ImageKind VStripRestriction::classify(const CompletionPoint &image) const {
  if (image.indicator.cloud != interior_) throw InputError("classify: not an image of restrict_F");
  const auto &m = image.indicator.members;
  if (m.count() == interior_->size()) return ImageKind::TIP;
  double su = -std::numeric_limits<double>::infinity(), sv = su;
  for (auto i = m.find_first(); i != PointSet::npos; i = m.find_next(i)) {
    su = std::max(su, interior_->null[i].u);
    sv = std::max(sv, interior_->null[i].v);
  }
  const double apex_x = 0.5 * (sv - su);
  return std::abs(apex_x) > 1.0 - 2.0 * interior_->h ? ImageKind::BoundaryPoint : ImageKind::InteriorPast;
}

std::string to_string(VStripRestriction::ImageKind k) {
  switch (k) {
  case VStripRestriction::ImageKind::InteriorPast: return "interior-past";
  case VStripRestriction::ImageKind::BoundaryPoint: return "boundary-point";
  case VStripRestriction::ImageKind::TIP: return "tip";
  }
  return "?";
}

// ---------------------------------------------------------------------------

Point chain_endpoint_in_extension(const ConformalExtension &ext, const std::vector<Point> &chain, double h) {
  if (chain.size() < 2) throw InputError("chain_endpoint_in_extension: need at least two points");
  for (const auto &p : chain)
    if (!ext.base.in_chart(p)) throw InputError("chain point outside the base chart");
  const Point a = ext.embed(chain[chain.size() - 2]);
  Point b = ext.embed(chain.back());
  if (euclidean(a, b) > h / 4.0) throw ResolutionError("embedded chain tail is not Cauchy at h/4");
  for (double &c : b)
    if (std::abs(c - kHalfPi) <= h / 4.0) c = kHalfPi;
  if (!ext.in_future_boundary(b))
    throw ResolutionError("embedded chain limit " + fmt_point(b) + " is not on the future boundary");
  return b;
}

CompletionPoint psi(const ConformalExtension &ext, const Point &p, const CloudPtr &cloud) {
  if (!ext.in_future_boundary(p)) throw ContractError("psi: " + fmt_point(p) + " is not on the future boundary");
  std::vector<NullCoord> emb(cloud->size());
  for (std::size_t i = 0; i < cloud->size(); ++i) emb[i] = ext.ambient.null_coords(ext.embed(cloud->points[i]));
  CompletionPoint cp;
  cp.label = "psi" + fmt_point(p);
  cp.indicator = SampledSet{cloud, from_bytes(kernels::parallel::past_indicator(emb, ext.ambient.null_coords(p))),
                            Provenance::Formula};
  if (cp.indicator.members.none())
    throw ResolutionError("psi: " + fmt_point(p) + " is not in the future boundary of the sampled window");
  // Representative generator: the null ray or timelike line ending at p.
  CurveDescriptor gen;
  if (p[0] == kHalfPi && p[1] == kHalfPi) {
    gen = CurveDescriptor::timelike({0.0, 0.0}, {1.0, 0.0});
    gen.spacing = Spacing::Geometric;
    gen.label = "i+";
  } else if (p[1] == kHalfPi) {
    gen = CurveDescriptor::null_ray_u(std::tan(p[0]));
  } else {
    gen = CurveDescriptor::null_ray_v(std::tan(p[1]));
  }
  cp.tag = BoundaryTIP{gen};
  cp.window_truncated = touches_window_future(*cloud, cp.indicator.members);
  return cp;
}

NullEndpointReport null_endpoint_check(const ConformalExtension &ext, const std::vector<CurveDescriptor> &rays,
                                       double h, std::size_t k) {
  NullEndpointReport rep;
  for (const auto &r : rays) {
    if (r.kind != CurveKind::NullGeodesic) throw ContractError("null_endpoint_check: " + r.label + " is not null");
    ++rep.checked;
    auto c = r;
    c.spacing = Spacing::Geometric;
    try {
      rep.endpoints.push_back(chain_endpoint_in_extension(ext, curve_points(ext.base, c, k), h));
    } catch (const ResolutionError &) {
      ++rep.failures;
    }
  }
  return rep;
}

} // namespace clt
