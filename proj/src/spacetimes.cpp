#include "clt/spacetimes.hpp"

#include "clt/errors.hpp"

#include <cmath>
#include <numbers>

namespace clt {

namespace {

constexpr double kChartTol = 1e-12;

struct Interval {
  double lo, hi;
};

// Chart extent along each chart axis (all charts are axis-aligned).
std::pair<Interval, Interval> chart_extent(ModelId id) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (id) {
  case ModelId::Mink2: return {{-inf, inf}, {-inf, inf}};
  case ModelId::HStrip: return {{-1.0, 1.0}, {-inf, inf}};
  case ModelId::VStrip: return {{-inf, inf}, {-1.0, 1.0}};
  case ModelId::Square: return {{-kHalfPi, kHalfPi}, {-kHalfPi, kHalfPi}};
  }
  return {{-inf, inf}, {-inf, inf}};
}

bool inside(double v, Interval iv) { return v >= iv.lo - kChartTol && v <= iv.hi + kChartTol; }

std::vector<double> axis_values(double lo, double hi, double h, bool snap, double &step) {
  if (!(h > 0.0)) throw InputError("sample: resolution must be positive");
  if (hi < lo) throw InputError("sample: degenerate window");
  std::size_t cells = static_cast<std::size_t>(std::floor((hi - lo) / h + 1e-9));
  step = h;
  if (snap) {
    cells = static_cast<std::size_t>(std::ceil((hi - lo) / h - 1e-9));
    if (cells == 0) cells = 1;
    step = (hi - lo) / double(cells);
  }
  std::vector<double> out(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) out[i] = lo + double(i) * step;
  if (snap) out.back() = hi;
  return out;
}

} // namespace

std::string to_string(ModelId id) {
  switch (id) {
  case ModelId::Mink2: return "Mink2";
  case ModelId::HStrip: return "HStrip";
  case ModelId::VStrip: return "VStrip";
  case ModelId::Square: return "Square";
  }
  return "?";
}

ModelId model_from_string(const std::string &name) {
  for (auto id : {ModelId::Mink2, ModelId::HStrip, ModelId::VStrip, ModelId::Square})
    if (to_string(id) == name) return id;
  throw InputError("unknown model `" + name + "`");
}

// ---------------------------------------------------------------------------

bool ModelSpacetime::in_chart(const Point &p) const {
  if (!std::isfinite(p[0]) || !std::isfinite(p[1])) return false;
  auto [e0, e1] = chart_extent(id_);
  return inside(p[0], e0) && inside(p[1], e1);
}

bool ModelSpacetime::in_interior(const Point &p) const {
  if (!in_chart(p)) return false;
  switch (id_) {
  case ModelId::VStrip: return std::abs(p[1]) < 1.0 - kChartTol;
  case ModelId::Square: return std::abs(p[0]) < kHalfPi - kChartTol && std::abs(p[1]) < kHalfPi - kChartTol;
  default: return true;
  }
}

NullCoord ModelSpacetime::null_coords(const Point &p) const {
  if (!in_chart(p))
    throw InputError(name() + ": point (" + std::to_string(p[0]) + ", " + std::to_string(p[1]) +
                     ") is outside the chart");
  if (id_ == ModelId::Square) return {p[0], p[1]};
  return null_from_tx(p);
}

Point ModelSpacetime::from_null(NullCoord n) const {
  if (id_ == ModelId::Square) return {n.u, n.v};
  return tx_from_null(n);
}

bool ModelSpacetime::chron(const Point &p, const Point &q) const {
  return strictly_below(null_coords(p), null_coords(q));
}

bool ModelSpacetime::caus(const Point &p, const Point &q) const {
  return causally_below(null_coords(p), null_coords(q));
}

// ---------------------------------------------------------------------------

CloudPtr sample(const ModelSpacetime &model, double h, const Window &window) {
  auto cloud = std::make_shared<PointCloud>();
  const Rect &r = window.rect;

  if (window.frame == Frame::Null && model.id() == ModelId::Square)
    throw InputError("sample: the square is already charted in null coordinates");

  // Null-frame grids step h*sqrt(2) in u and v, i.e. metric spacing h.
  const double scale = window.frame == Frame::Null ? std::sqrt(2.0) : 1.0;
  double step0 = 0.0, step1 = 0.0;
  const auto a0 = axis_values(r.lo0, r.hi0, h * scale, window.snap_to_edges, step0);
  const auto a1 = axis_values(r.lo1, r.hi1, h * scale, window.snap_to_edges, step1);
  cloud->h = std::max(step0, step1) / scale;
  if (std::abs(step0 - step1) <= 1e-12 * std::max(step0, step1))
    cloud->grid = kernels::GridLayout{a0.size(), a1.size(), step0 / scale};

  for (std::size_t i = 0; i < a0.size(); ++i)
    for (std::size_t j = 0; j < a1.size(); ++j) {
      Point p = window.frame == Frame::Null ? tx_from_null({a0[i], a1[j]}) : Point{a0[i], a1[j]};
      if (!model.in_chart(p)) continue;
      cloud->points.push_back(p);
      cloud->null.push_back(model.null_coords(p));
      if (cloud->grid) cloud->cell_of_point.push_back(i * a1.size() + j);
    }
  if (cloud->points.empty()) throw InputError("sample: window does not meet the chart of " + model.name());
  return cloud;
}

// ---------------------------------------------------------------------------

Point CurveDescriptor::at(double s) const {
  if (kind == CurveKind::Parametrized) {
    if (!param) throw ContractError("parametrized curve without a parametrization");
    return param(s);
  }
  return {offset[0] + s * direction[0], offset[1] + s * direction[1]};
}

CurveDescriptor CurveDescriptor::timelike(Point offset, Point direction, double a, double b) {
  CurveDescriptor c;
  c.kind = CurveKind::TimelikeGeodesic;
  c.offset = offset;
  c.direction = direction;
  c.a = a;
  c.b = b;
  c.affine_complete_future = b == std::numeric_limits<double>::infinity();
  return c;
}

CurveDescriptor CurveDescriptor::null_ray_u(double c) {
  CurveDescriptor d;
  d.kind = CurveKind::NullGeodesic;
  d.offset = tx_from_null({c, 0.0});
  d.direction = {0.5, 0.5}; // dv = 1, du = 0
  d.label = "u=" + std::to_string(c);
  return d;
}

CurveDescriptor CurveDescriptor::null_ray_v(double c) {
  CurveDescriptor d;
  d.kind = CurveKind::NullGeodesic;
  d.offset = tx_from_null({0.0, c});
  d.direction = {0.5, -0.5}; // du = 1, dv = 0
  d.label = "v=" + std::to_string(c);
  return d;
}

std::vector<Point> curve_points(const ModelSpacetime &model, const CurveDescriptor &c, std::size_t k) {
  if (k < 2) throw InputError("curve_points: need k >= 2");
  if (!(c.b > c.a)) throw InputError("curve_points: degenerate domain");
  if (c.kind == CurveKind::TimelikeGeodesic && !(c.direction[0] > std::abs(c.direction[1])))
    throw ContractError("timelike geodesic needs a future timelike direction");
  if (c.kind == CurveKind::NullGeodesic &&
      !(c.direction[0] > 0.0 && std::abs(c.direction[0] - std::abs(c.direction[1])) < 1e-12))
    throw ContractError("null geodesic needs a future null direction");

  std::vector<Point> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    double s;
    if (c.unbounded()) {
      s = c.spacing == Spacing::Linear ? c.a + c.step * double(i)
                                       : c.a + c.step * (std::exp2(double(i)) - 1.0);
    } else {
      s = c.a + (c.b - c.a) * (1.0 - std::exp2(-20.0 * double(i) / double(k - 1)));
    }
    out.push_back(c.at(s));
  }
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const Point &p = out[i], &q = out[i + 1];
    if (!model.in_chart(p) || !model.in_chart(q)) throw InputError("curve_points: curve leaves the chart");
    if (c.kind == CurveKind::TimelikeGeodesic && !model.chron(p, q))
      throw ContractError("timelike chain is not chronologically increasing");
    if (c.kind == CurveKind::NullGeodesic && (!model.caus(p, q) || model.chron(p, q)))
      throw ContractError("null chain is not causal and chronology-flat");
  }
  return out;
}

std::optional<Point> future_endpoint(const ModelSpacetime &model, const CurveDescriptor &c) {
  if (c.unbounded()) return std::nullopt;
  const Point end = c.at(c.b);
  if (!model.in_chart(end)) return std::nullopt;
  return end;
}

bool is_future_inextendible(const ModelSpacetime &model, const CurveDescriptor &c) {
  return !future_endpoint(model, c).has_value();
}

// ---------------------------------------------------------------------------

Point to_extension(const Point &tx) {
  const NullCoord n = null_from_tx(tx);
  return {std::atan(n.u), std::atan(n.v)};
}

double conformal_factor(const Point &sq) { return std::cos(sq[0]) * std::cos(sq[1]); }

Point conformal_factor_gradient(const Point &sq) {
  return {-std::sin(sq[0]) * std::cos(sq[1]), -std::cos(sq[0]) * std::sin(sq[1])};
}

bool ConformalExtension::in_future_boundary(const Point &sq, double tol) const {
  const bool top_u = std::abs(sq[0] - kHalfPi) <= tol && sq[1] > -kHalfPi + tol && sq[1] <= kHalfPi + tol;
  const bool top_v = std::abs(sq[1] - kHalfPi) <= tol && sq[0] > -kHalfPi + tol && sq[0] <= kHalfPi + tol;
  return top_u || top_v;
}

std::vector<Point> ConformalExtension::future_boundary_samples(std::size_t per_edge) const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < per_edge; ++i) {
    const double s = -kHalfPi + std::numbers::pi * double(i + 1) / double(per_edge + 1);
    out.push_back({s, kHalfPi});
  }
  for (std::size_t i = 0; i < per_edge; ++i) {
    const double s = -kHalfPi + std::numbers::pi * double(i + 1) / double(per_edge + 1);
    out.push_back({kHalfPi, s});
  }
  out.push_back({kHalfPi, kHalfPi});
  return out;
}

ConformalExtension ConformalExtension::mink2_to_square() {
  ConformalExtension e;
  e.embed = to_extension;
  e.in_image = [](const Point &sq) {
    return std::abs(sq[0]) < kHalfPi && std::abs(sq[1]) < kHalfPi;
  };
  e.label = "Mink2->Square";
  return e;
}

ConformalExtension ConformalExtension::truncated_half() {
  ConformalExtension e = mink2_to_square();
  e.in_image = [](const Point &sq) {
    return std::abs(sq[0]) < kHalfPi && std::abs(sq[1]) < kHalfPi && sq[1] < sq[0];
  };
  e.label = "Mink2->Square (x'<0 half)";
  return e;
}

} // namespace clt
