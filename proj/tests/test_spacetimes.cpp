#include "clt/errors.hpp"
#include "clt/spacetimes.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace clt;

namespace {

// Light-cone rule in (t, x), independent of the null-coordinate code path.
bool cone_chron(Point p, Point q) { return q[0] - p[0] > std::abs(q[1] - p[1]) + 1e-9; }
bool cone_caus(Point p, Point q) { return q[0] - p[0] >= std::abs(q[1] - p[1]) - 1e-9; }

} // namespace

TEST_CASE("chron and caus examples") {
  const auto m = ModelSpacetime::mink2();
  CHECK(m.chron({0, 0}, {1, 0}));
  CHECK_FALSE(m.chron({0, 0}, {1, 2}));
  CHECK(m.caus({0, 0}, {1, 1}));
  CHECK_FALSE(m.chron({0, 0}, {1, 1}));
  const auto v = ModelSpacetime::vstrip();
  CHECK(v.chron({0, 0.5}, {2, -0.5}));
  CHECK_THROWS_AS(v.chron({0, 1.5}, {2, 0}), InputError);
  const auto hs = ModelSpacetime::hstrip();
  CHECK_THROWS_AS(hs.null_coords({1.5, 0}), InputError);
  CHECK_FALSE(hs.globally_hyperbolic());
  CHECK(v.globally_hyperbolic());
}

TEST_CASE("oracles agree with the light-cone rule and satisfy the order axioms") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const auto m = ModelSpacetime::mink2();
  std::size_t violations = 0;
  for (int k = 0; k < 100000; ++k) {
    const Point p{2 * d(rng), 2 * d(rng)}, q{2 * d(rng), 2 * d(rng)}, r{2 * d(rng), 2 * d(rng)};
    if (k < 10000) {
      CHECK(m.chron(p, q) == cone_chron(p, q));
      CHECK(m.caus(p, q) == cone_caus(p, q));
    }
    violations += m.chron(p, p);
    violations += m.chron(p, q) && m.chron(q, p);
    violations += m.chron(p, q) && !m.caus(p, q);
    violations += m.caus(p, q) && m.caus(q, r) && !m.caus(p, r);
    violations += m.caus(p, q) && m.chron(q, r) && !m.chron(p, r);
  }
  CHECK(violations == 0);
}

TEST_CASE("sample") {
  const auto m = ModelSpacetime::mink2();
  CHECK(sample(m, 0.5, Window{Frame::Chart, Rect{-1, 1, -1, 1}, false})->size() == 25);

  const auto v = ModelSpacetime::vstrip();
  const auto cv = sample(v, 0.5, Window{Frame::Chart, Rect{-1, 1, -2, 2}, false});
  bool left = false, right = false;
  for (const auto &p : cv->points) {
    CHECK(std::abs(p[1]) <= 1.0 + 1e-12);
    left = left || p[1] == -1.0;
    right = right || p[1] == 1.0;
  }
  CHECK(left);
  CHECK(right);

  const auto coarse = sample(m, 0.5, Window{Frame::Chart, Rect{-1, 1, -1, 1}, false});
  const auto fine = sample(m, 0.25, Window{Frame::Chart, Rect{-1, 1, -1, 1}, false});
  for (const auto &p : coarse->points) {
    bool found = false;
    for (const auto &q : fine->points) found = found || euclidean(p, q) < 1e-12;
    CHECK(found);
  }
  CHECK_THROWS_AS(sample(v, 0.5, Window{Frame::Chart, Rect{-1, 1, 3, 4}, false}), InputError);
  CHECK_THROWS_AS(sample(ModelSpacetime::square(), 0.1, Window{Frame::Null, Rect{-1, 1, -1, 1}, false}), InputError);

  const auto diamond = sample(m, 0.5, Window{Frame::Null, Rect{-1, 1, -1, 1}, false});
  for (const auto &n : diamond->null) {
    CHECK(n.u >= -1 - 1e-12);
    CHECK(n.v <= 1 + 1e-12);
  }
}

TEST_CASE("curve_points") {
  const auto m = ModelSpacetime::mink2();
  const auto up = curve_points(m, CurveDescriptor::timelike({0, 0}, {1, 0}), 4);
  REQUIRE(up.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(up[i][0] == doctest::Approx(double(i)));
    CHECK(up[i][1] == 0.0);
  }
  const auto ray = curve_points(m, CurveDescriptor::null_ray_u(0.0), 10);
  for (std::size_t i = 0; i + 1 < ray.size(); ++i) {
    CHECK(m.null_coords(ray[i]).u == doctest::Approx(0.0));
    CHECK(m.null_coords(ray[i + 1]).v > m.null_coords(ray[i]).v);
    CHECK(m.caus(ray[i], ray[i + 1]));
    CHECK_FALSE(m.chron(ray[i], ray[i + 1]));
  }
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> d(-0.9, 0.9);
  for (int k = 0; k < 50; ++k) {
    const auto c = CurveDescriptor::timelike({d(rng), d(rng)}, {1.0, d(rng)}, 0.0, 1.0 + k % 3);
    const auto pts = curve_points(m, c, 32);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) CHECK(cone_chron(pts[i], pts[i + 1]));
  }
  CHECK_THROWS(curve_points(m, CurveDescriptor::timelike({0, 0}, {1, 0}), 1));
  CHECK_THROWS(curve_points(m, CurveDescriptor::timelike({0, 0}, {1, 0}, 1.0, 1.0), 8));
  // Spacelike direction declared timelike.
  CHECK_THROWS_AS(curve_points(m, CurveDescriptor::timelike({0, 0}, {1, 2}), 4), ContractError);
}

TEST_CASE("endpoints and inextendibility") {
  const auto m = ModelSpacetime::mink2();
  const auto finite = CurveDescriptor::timelike({0, 0}, {1, 0.5}, 0.0, 2.0);
  REQUIRE(future_endpoint(m, finite));
  CHECK((*future_endpoint(m, finite))[0] == doctest::Approx(2.0));
  CHECK((*future_endpoint(m, finite))[1] == doctest::Approx(1.0));
  CHECK_FALSE(is_future_inextendible(m, finite));
  CHECK(is_future_inextendible(m, CurveDescriptor::timelike({0, 0}, {1, 0})));
  const auto hs = ModelSpacetime::hstrip();
  CHECK(future_endpoint(hs, CurveDescriptor::timelike({0, 0}, {1, 0}, 0.0, 1.0)));
}

TEST_CASE("to_extension and the conformal factor") {
  const auto o = to_extension({0, 0});
  CHECK(o[0] == 0.0);
  CHECK(o[1] == 0.0);
  // (u, v) = (1, 0) is (t, x) = (0.5, -0.5)
  const auto e = to_extension(tx_from_null({1.0, 0.0}));
  CHECK(e[0] == doctest::Approx(std::numbers::pi / 4));
  CHECK(e[1] == doctest::Approx(0.0));

  CHECK(conformal_factor({0, 0}) == doctest::Approx(1.0));
  CHECK(conformal_factor({kHalfPi, 0}) == doctest::Approx(0.0));
  const auto g = conformal_factor_gradient({kHalfPi, 0});
  CHECK(g[0] == doctest::Approx(-1.0));
  CHECK(g[1] == doctest::Approx(0.0));
  const auto gc = conformal_factor_gradient({kHalfPi, kHalfPi});
  CHECK(std::abs(gc[0]) < 1e-15);
  CHECK(std::abs(gc[1]) < 1e-15);
  CHECK(std::abs(conformal_factor({kHalfPi, kHalfPi})) < 1e-15);
}

TEST_CASE("the arctan embedding is a chronology isomorphism onto its image") {
  const auto ext = ConformalExtension::mink2_to_square();
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> d(-20.0, 20.0);
  for (int k = 0; k < 10000; ++k) {
    const Point p{d(rng), d(rng)}, q{d(rng), d(rng)};
    const Point ep = ext.embed(p), eq = ext.embed(q);
    CHECK(ext.ambient.chron(ep, eq) == ext.base.chron(p, q));
    CHECK(ext.omega(p) > 0.0);
    CHECK(ext.in_image(ep));
    CHECK(std::abs(ep[0]) < kHalfPi);
    CHECK(std::abs(ep[1]) < kHalfPi);
  }
  CHECK(ext.in_future_boundary({kHalfPi, 0.3}));
  CHECK(ext.in_future_boundary({kHalfPi, kHalfPi}));
  CHECK_FALSE(ext.in_future_boundary({kHalfPi, -kHalfPi}));
  CHECK_FALSE(ext.in_future_boundary({0.3, -kHalfPi}));
  CHECK(ext.future_boundary_samples(21).size() == 43);
  const auto half = ConformalExtension::truncated_half();
  CHECK(half.in_image(ext.embed({0.0, -1.0})));
  CHECK_FALSE(half.in_image(ext.embed({0.0, 1.0})));
}
