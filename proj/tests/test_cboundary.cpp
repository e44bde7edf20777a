#include "clt/cboundary.hpp"
#include "clt/errors.hpp"
#include "clt/kernels.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

using namespace clt;

namespace {

PointSet where(const PointCloud &c, auto pred) {
  PointSet s(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) s[i] = pred(c.points[i]);
  return s;
}

CloudPtr mink_cloud(double h = 0.1) {
  return sample(ModelSpacetime::mink2(), h, Window{Frame::Chart, Rect{-2, 2, -2, 2}, false});
}

// Exhaustive check that members are closed under strict chronological predecessors.
bool down_closed_pairs(const PointCloud &c, const PointSet &m) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (m.test(i))
      for (std::size_t j = 0; j < c.size(); ++j)
        if (!m.test(j) && c.points[i][0] - c.points[j][0] > std::abs(c.points[i][1] - c.points[j][1]) + 1e-9) return false;
  return true;
}

} // namespace

TEST_CASE("ip_of_point") {
  const auto m = ModelSpacetime::mink2();
  const auto cloud = mink_cloud();
  const auto cp = ip_of_point(m, cloud, {1, 0});
  CHECK_FALSE(cp.is_boundary());
  CHECK(cp.indicator.members == where(*cloud, [](Point p) { return 1.0 - p[0] > std::abs(p[1]) + 1e-9; }));
  CHECK(down_closed_pairs(*cloud, cp.indicator.members));
  CHECK(is_sampled_down_set(*cloud, cp.indicator.members));
  CHECK_THROWS_AS(ip_of_point(m, cloud, {-2, 0}), ResolutionError);

  const auto v = ModelSpacetime::vstrip();
  const auto vc = sample(v, 0.1, Window{Frame::Chart, Rect{-2, 2, -2, 2}, false});
  const auto vp = ip_of_point(v, vc, {0, 0});
  CHECK(vp.indicator.members == where(*vc, [](Point p) { return -p[0] > std::abs(p[1]) + 1e-9; }));
}

TEST_CASE("is_sampled_down_set agrees with the exhaustive pair check") {
  std::mt19937_64 rng(51);
  const auto cloud = mink_cloud(0.2);
  for (int k = 0; k < 100; ++k) {
    PointSet s(cloud->size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = rng() % 4 == 0;
    if (k % 2) s = s | from_bytes(kernels::serial::past_indicator(cloud->null, cloud->null[rng() % cloud->size()]));
    CHECK(is_sampled_down_set(*cloud, s) == down_closed_pairs(*cloud, s));
  }
}

TEST_CASE("ip_of_curve") {
  const auto m = ModelSpacetime::mink2();
  const auto cloud = mink_cloud();
  auto up = CurveDescriptor::timelike({0, 0}, {1, 0});
  up.spacing = Spacing::Geometric;
  const auto iplus = ip_of_curve(m, cloud, up);
  CHECK(iplus.is_boundary());
  CHECK(iplus.indicator.members.all());
  CHECK(iplus.window_truncated);

  for (double c0 : {-1.0, 0.0, 0.5}) {
    const auto ray = ip_of_curve(m, cloud, CurveDescriptor::null_ray_u(c0));
    CHECK(ray.is_boundary());
    const SampledSet half{cloud, where(*cloud, [c0](Point p) { return p[0] - p[1] < c0 - 1e-9; })};
    CHECK(hausdorff_distance(ray.indicator, half) <= 2 * cloud->h);
    CHECK(is_sampled_down_set(*cloud, ray.indicator.members));
  }

  const auto hs = ModelSpacetime::hstrip();
  const auto hc = sample(hs, 0.1, Window{Frame::Chart, Rect{-1, 1, -3, 3}, false});
  const auto chain = ip_of_curve(hs, hc, CurveDescriptor::timelike({-0.5, 0.2}, {1.0, 0.3}, 0.0, 1.5));
  CHECK_FALSE(chain.is_boundary());
  const Point end = std::get<Interior>(chain.tag).point;
  CHECK(end[0] == doctest::Approx(1.0));
  CHECK(hausdorff_distance(chain.indicator, ip_of_point(hs, hc, end).indicator) <= 2 * hc->h);
}

TEST_CASE("completion_rel") {
  const auto m = ModelSpacetime::mink2();
  const auto cloud = mink_cloud();
  const auto p = ip_of_point(m, cloud, {0, 0});
  const auto q = ip_of_point(m, cloud, {1, 0.2});
  CHECK(completion_rel(p, q));
  CHECK_FALSE(completion_rel(q, p));
  CHECK_FALSE(completion_rel(p, p));
  // On a square window the half-plane {u < -0.5} is cut off at the top
  // corner, and a sample of {u < 0.5} near (2, 2) sits above all of it.
  CHECK(completion_rel(ip_of_curve(m, cloud, CurveDescriptor::null_ray_u(-0.5)),
                       ip_of_curve(m, cloud, CurveDescriptor::null_ray_u(0.5))));
  // The null diamond keeps v unbounded relative to every half-plane u < c.
  const auto diamond = sample(m, 0.1, Window{Frame::Null, Rect{-4, 4, -4, 4}, false});
  const auto a = ip_of_curve(m, diamond, CurveDescriptor::null_ray_u(-0.5));
  const auto b = ip_of_curve(m, diamond, CurveDescriptor::null_ray_u(0.5));
  CHECK_FALSE(completion_rel(a, b));
  CHECK_FALSE(completion_rel(b, a));
  // An interior past sits below the boundary point containing it.
  CHECK(completion_rel(ip_of_point(m, diamond, {-1, 0}), b));
}

TEST_CASE("boundary catalogue and achronality") {
  const auto m = ModelSpacetime::mink2();
  const auto diamond = sample(m, 0.1, Window{Frame::Null, Rect{-8, 8, -8, 8}, false});
  std::vector<double> params;
  for (int i = -10; i <= 10; ++i) params.push_back(0.5 * i);
  const auto cat = mink2_null_catalogue(diamond, params);
  REQUIRE(cat.entries.size() == 43);
  CHECK(cat.entries.back().label == "i+");
  CHECK(cat.entries.front().label == "u<-5");
  for (const auto &e : cat.entries) CHECK(is_sampled_down_set(*diamond, e.indicator.members));
  const auto r = check_boundary_achronal(cat);
  CHECK(r.passed());
  CHECK(r.pairs_checked == 43 * 42);

  BoundaryCatalogue one{m, 0.1, {cat.entries[0]}};
  CHECK(check_boundary_achronal(one).passed());
  BoundaryCatalogue dup = one;
  dup.entries.push_back(cat.entries[0]);
  CHECK_THROWS_AS(dup.validate(), ContractError);
  BoundaryCatalogue mixed = one;
  mixed.entries.push_back(ip_of_point(m, diamond, {0, 0}));
  CHECK_THROWS_AS(check_boundary_achronal(mixed), ContractError);

  std::ostringstream table;
  write_catalogue_table(table, cat, "profiles/p_");
  const std::string t = table.str();
  CHECK(t.rfind("label,tag,family,cardinality,profile\n", 0) == 0);
  CHECK(std::count(t.begin(), t.end(), '\n') == 44);
}

TEST_CASE("profile of u<0 vanishes on its members") {
  const auto m = ModelSpacetime::mink2();
  const auto cloud = mink_cloud();
  const auto cp = ip_of_curve(m, cloud, CurveDescriptor::null_ray_u(0.0));
  const auto &prof = cp.profile();
  CHECK(prof.values.size() == cloud->size());
  for (std::size_t i = 0; i < cloud->size(); ++i)
    if (cp.indicator.members.test(i)) CHECK(prof.values[i] == 0.0);
}

TEST_CASE("VStrip restriction") {
  const auto v = ModelSpacetime::vstrip();
  const double h = 0.1;
  const auto cloud = sample(v, h, Window{Frame::Chart, Rect{-2, 2, -1, 1}, false});
  const VStripRestriction F(cloud);
  using K = VStripRestriction::ImageKind;

  const auto inner = F.restrict_F(ip_of_point(v, cloud, {0.5, 0.2}));
  CHECK(inner.indicator.members == ip_of_point(v, F.interior_cloud(), {0.5, 0.2}).indicator.members);
  CHECK(F.classify(inner) == K::InteriorPast);

  const auto edge = F.restrict_F(ip_of_point(v, cloud, {0, 1}));
  CHECK(F.classify(edge) == K::BoundaryPoint);
  CHECK(edge.indicator.members ==
        where(*F.interior_cloud(), [](Point p) { return -p[0] > std::abs(p[1] - 1.0) + 1e-9; }));

  auto up = CurveDescriptor::timelike({0, 0}, {1, 0});
  up.spacing = Spacing::Geometric;
  CHECK(F.classify(F.restrict_F(ip_of_curve(v, cloud, up))) == K::TIP);
  CHECK(to_string(K::BoundaryPoint) == "boundary-point");
  CHECK(edge.indicator.members != inner.indicator.members);
}

TEST_CASE("chain endpoints in the conformal square") {
  const auto ext = ConformalExtension::mink2_to_square();
  const auto m = ModelSpacetime::mink2();
  const double h = 0.05;
  auto up = CurveDescriptor::timelike({0, 0}, {1, 0});
  up.spacing = Spacing::Geometric;
  const auto e = chain_endpoint_in_extension(ext, curve_points(m, up, 20), h);
  CHECK(e[0] == kHalfPi);
  CHECK(e[1] == kHalfPi);

  auto ray = CurveDescriptor::null_ray_u(0.0);
  ray.spacing = Spacing::Geometric;
  const auto r0 = chain_endpoint_in_extension(ext, curve_points(m, ray, 20), h);
  CHECK(r0[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(r0[1] == kHalfPi);
  auto ray1 = CurveDescriptor::null_ray_u(1.0);
  ray1.spacing = Spacing::Geometric;
  const auto r1 = chain_endpoint_in_extension(ext, curve_points(m, ray1, 20), h);
  CHECK(r1[0] == doctest::Approx(std::numbers::pi / 4));
  CHECK(r1[1] == kHalfPi);
  // A linearly sampled short chain has not converged at h/4.
  CHECK_THROWS_AS(chain_endpoint_in_extension(ext, curve_points(m, CurveDescriptor::null_ray_u(0.0), 4), h),
                  ResolutionError);
}

TEST_CASE("psi") {
  const auto ext = ConformalExtension::mink2_to_square();
  const auto cloud = mink_cloud();
  const auto zero = psi(ext, {0, kHalfPi}, cloud);
  CHECK(zero.is_boundary());
  CHECK(zero.indicator.members == where(*cloud, [](Point p) { return p[0] - p[1] < -1e-9; }));
  CHECK(psi(ext, {kHalfPi, kHalfPi}, cloud).indicator.members.all());
  CHECK_THROWS_AS(psi(ext, {0, 0}, cloud), ContractError);
  CHECK(psi(ext, {0.3, kHalfPi}, cloud).indicator.members != psi(ext, {0.4, kHalfPi}, cloud).indicator.members);
}

TEST_CASE("null_endpoint_check") {
  const auto ext = ConformalExtension::mink2_to_square();
  std::vector<CurveDescriptor> u, v;
  for (int i = -10; i <= 10; ++i) {
    u.push_back(CurveDescriptor::null_ray_u(0.5 * i));
    v.push_back(CurveDescriptor::null_ray_v(0.5 * i));
  }
  const auto ru = null_endpoint_check(ext, u, 0.05);
  CHECK(ru.passed());
  for (const auto &e : ru.endpoints) CHECK(e[1] == kHalfPi);
  const auto rv = null_endpoint_check(ext, v, 0.05);
  CHECK(rv.passed());
  for (const auto &e : rv.endpoints) CHECK(e[0] == kHalfPi);
  CHECK_THROWS_AS(null_endpoint_check(ext, {CurveDescriptor::timelike({0, 0}, {1, 0})}, 0.05), ContractError);
}
