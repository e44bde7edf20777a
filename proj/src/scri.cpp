#include "clt/scri.hpp"

#include "clt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace clt {

std::string to_string(ScriLabel l) {
  switch (l) {
  case ScriLabel::NullInfinity: return "null-infinity";
  case ScriLabel::TimelikeInfinity: return "timelike-infinity";
  case ScriLabel::Unclassified: return "unclassified";
  }
  return "?";
}

ScriClassification classify_boundary_ip(const ModelSpacetime &model, const CompletionPoint &p) {
  if (model.id() != ModelId::Mink2) throw ContractError("classify_boundary_ip: closed-form generators need Mink2");
  if (!p.is_boundary()) throw ContractError("classify_boundary_ip: " + p.label + " is not a boundary point");
  const SampledSet &s = p.indicator;
  const PointCloud &cloud = *s.cloud;
  ScriClassification out;

  if (s.count() == cloud.size()) {
    out.label = ScriLabel::TimelikeInfinity;
    auto g = CurveDescriptor::timelike({0.0, 0.0}, {1.0, 0.0});
    g.label = "x=0";
    out.generators.push_back({g, true});
    return out;
  }

  double su = -std::numeric_limits<double>::infinity(), sv = su;
  for (auto i = s.members.find_first(); i != PointSet::npos; i = s.members.find_next(i)) {
    su = std::max(su, cloud.null[i].u);
    sv = std::max(sv, cloud.null[i].v);
  }
  const double tol = 2.0 * cloud.h * (1.0 + 1e-9);
  double best = std::numeric_limits<double>::infinity();
  for (char fam : {'u', 'v'}) {
    const double sup = fam == 'u' ? su : sv;
    PointSet half(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i)
      half[i] = (fam == 'u' ? cloud.null[i].u : cloud.null[i].v) <= sup + kCausalEps;
    const double d = hausdorff_distance(s, SampledSet{s.cloud, half});
    best = std::min(best, d);
    if (d <= tol) {
      out.label = ScriLabel::NullInfinity;
      out.family = fam;
      out.parameter = sup;
      out.match_distance = d;
      auto ray = fam == 'u' ? CurveDescriptor::null_ray_u(sup) : CurveDescriptor::null_ray_v(sup);
      out.generators.push_back({ray, true}); // straight null lines are affinely complete
      return out;
    }
  }
  out.match_distance = best;
  out.diagnostics = "no half-plane within 2h (best " + std::to_string(best) + ")";
  return out;
}

IPlusTilde i_plus_tilde(const std::vector<Point> &c, const BoundaryCatalogue &cat) {
  IPlusTilde out;
  if (cat.entries.empty() || c.empty()) return out;
  const CloudPtr &cloud = cat.entries.front().indicator.cloud;
  PointSet all(cloud->size());
  all.set();
  const kernels::DominanceIndex whole(cloud->null, all);

  std::vector<NullCoord> xs;
  for (const auto &p : c) {
    const NullCoord q = cat.model.null_coords(p);
    if (whole.any_strictly_below(q)) xs.push_back(q);
    else ++out.skipped_points;
  }
  std::vector<std::uint8_t> hit(cat.entries.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t e = 0; e < cat.entries.size(); ++e) {
    const auto &ind = cat.entries[e].indicator;
    if (ind.cloud != cloud) continue;
    // cone(x) inside P iff no non-member of P lies strictly below x.
    const kernels::DominanceIndex outside(cloud->null, ~ind.members);
    for (const auto &q : xs)
      if (!outside.any_strictly_below(q)) {
        hit[e] = 1;
        break;
      }
  }
  for (std::size_t e = 0; e < hit.size(); ++e)
    if (hit[e]) out.entries.push_back(e);
  return out;
}

IPlusTilde i_plus_tilde(const Region &c, const BoundaryCatalogue &cat) {
  if (cat.entries.empty()) return {};
  const PointCloud &cloud = *cat.entries.front().indicator.cloud;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (c.contains(cloud.points[i])) pts.push_back(cloud.points[i]);
  return i_plus_tilde(pts, cat);
}

ScriComponents scri_components(const BoundaryCatalogue &cat) {
  ScriComponents out;
  out.components.resize(2);
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    if (!cat.entries[i].is_boundary()) continue;
    const auto cls = classify_boundary_ip(cat.model, cat.entries[i]);
    if (cls.label != ScriLabel::NullInfinity) continue;
    out.members.push_back(i);
    out.components[*cls.family == 'u' ? 0 : 1].push_back(i);
  }
  return out;
}

namespace {

AmpleReport ample_from(const ScriComponents &scri, const IPlusTilde &seen) {
  AmpleReport rep;
  for (const auto &comp : scri.components) {
    std::size_t escape = 0;
    for (auto e : comp)
      if (!std::binary_search(seen.entries.begin(), seen.entries.end(), e)) ++escape;
    rep.escape_counts.push_back(escape);
    if (escape == 0) rep.ample = false;
  }
  if (!rep.ample) rep.caveat = "no escaping member within the catalogue's parameter range; the catalogue may be truncated";
  return rep;
}

} // namespace

AmpleReport check_ample(const BoundaryCatalogue &cat, const ScriComponents &scri, const Region &c) {
  return ample_from(scri, i_plus_tilde(c, cat));
}

AmpleReport check_ample(const BoundaryCatalogue &cat, const ScriComponents &scri, const std::vector<Point> &c) {
  return ample_from(scri, i_plus_tilde(c, cat));
}

PastCompleteReport check_past_complete(const BoundaryCatalogue &cat, const ScriComponents &scri) {
  PastCompleteReport rep;
  auto in_scri = [&](std::size_t i) { return std::find(scri.members.begin(), scri.members.end(), i) != scri.members.end(); };
  for (auto p : scri.members) {
    const auto &big = cat.entries[p].indicator.members;
    for (std::size_t q = 0; q < cat.entries.size(); ++q) {
      if (q == p || !cat.entries[q].is_boundary() || in_scri(q)) continue;
      if (cat.entries[q].indicator.members.is_subset_of(big)) {
        rep.complete = false;
        rep.witness = std::make_pair(p, q);
        return rep;
      }
    }
  }
  return rep;
}

bool in_conformal_scri(const ConformalExtension &ext, const Point &sq, double tol) {
  if (!ext.in_future_boundary(sq, tol)) return false;
  const Point g = conformal_factor_gradient(sq);
  return std::abs(conformal_factor(sq)) <= tol && std::hypot(g[0], g[1]) > tol;
}

std::vector<Point> conformal_scri(const ConformalExtension &ext, std::size_t per_edge) {
  std::vector<Point> out;
  for (const auto &p : ext.future_boundary_samples(per_edge))
    if (in_conformal_scri(ext, p)) out.push_back(p);
  return out;
}

VoilaReport check_voila(const ConformalExtension &ext, const CloudPtr &cloud, std::size_t per_edge) {
  VoilaReport rep;
  for (const auto &p : conformal_scri(ext, per_edge)) {
    ++rep.checked;
    const auto cls = classify_boundary_ip(ext.base, psi(ext, p, cloud));
    if (cls.label == ScriLabel::NullInfinity) ++rep.null_infinity;
    else rep.failures.push_back(p);
  }
  return rep;
}

void write_classification_table(std::ostream &out, const BoundaryCatalogue &cat,
                                const std::vector<ScriClassification> &cls) {
  out << "label,family,parameter,classification,generators,conformal\n";
  for (const auto &c : cls) {
    const auto &e = cat.entries.at(c.entry);
    out << e.label << ',' << (c.family ? std::string(1, *c.family) : std::string()) << ',';
    if (c.parameter) out << *c.parameter;
    out << ',' << to_string(c.label) << ',';
    for (std::size_t g = 0; g < c.generators.size(); ++g)
      out << (g ? ";" : "") << c.generators[g].curve.label << (c.generators[g].future_complete ? ":complete" : ":incomplete");
    out << ',';
    // Conformal counterpart on the square.
    if (c.label == ScriLabel::TimelikeInfinity) out << "(pi/2;pi/2)";
    else if (c.family == 'u') out << "(" << std::atan(*c.parameter) << ";pi/2)";
    else if (c.family == 'v') out << "(pi/2;" << std::atan(*c.parameter) << ")";
    out << '\n';
  }
}

} // namespace clt
