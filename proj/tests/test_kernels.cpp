#include "clt/kernels.hpp"

#include "doctest.h"

#include <limits>
#include <random>

using namespace clt;
using namespace clt::kernels;

namespace {

std::vector<Point> random_points(std::size_t n, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<Point> out(n);
  for (auto &p : out) p = {d(rng), d(rng)};
  return out;
}

std::vector<NullCoord> nulls(const std::vector<Point> &pts) {
  std::vector<NullCoord> out;
  for (const auto &p : pts) out.push_back(null_from_tx(p));
  return out;
}

PointSet random_members(std::size_t n, double p, std::mt19937_64 &rng) {
  std::bernoulli_distribution b(p);
  PointSet s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = b(rng);
  return s;
}

} // namespace

TEST_CASE("distance_profile against brute force") {
  std::mt19937_64 rng(21);
  const auto pts = random_points(400, rng);
  const auto m = random_members(pts.size(), 0.05, rng);
  const auto s = serial::distance_profile(pts, m);
  const auto p = parallel::distance_profile(pts, m);
  CHECK(s == p);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (m.test(j)) best = std::min(best, euclidean(pts[i], pts[j]));
    CHECK(s[i] == doctest::Approx(best).epsilon(1e-15));
    if (m.test(i)) CHECK(s[i] == 0.0);
  }
}

TEST_CASE("grid_distance_profile equals the exact Euclidean distance on a grid") {
  std::mt19937_64 rng(22);
  const GridLayout g{23, 31, 0.1};
  std::vector<Point> pts;
  std::vector<std::size_t> cell;
  for (std::size_t i = 0; i < g.n0; ++i)
    for (std::size_t j = 0; j < g.n1; ++j) {
      pts.push_back({0.1 * double(i), 0.1 * double(j)});
      cell.push_back(i * g.n1 + j);
    }
  for (int rep = 0; rep < 5; ++rep) {
    const auto m = random_members(pts.size(), 0.01 + 0.05 * rep, rng);
    const auto brute = serial::distance_profile(pts, m);
    const auto edt = serial::grid_distance_profile(g, cell, m);
    const auto par = parallel::grid_distance_profile(g, cell, m);
    CHECK(edt == par);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(edt[i] == doctest::Approx(brute[i]).epsilon(1e-12));
  }
}

TEST_CASE("past_indicator and union_of_pasts") {
  std::mt19937_64 rng(23);
  const auto pts = random_points(500, rng);
  const auto nc = nulls(pts);
  const NullCoord apex{0.1, 0.3};
  const auto ind = serial::past_indicator(nc, apex);
  CHECK(ind == parallel::past_indicator(nc, apex));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point a = tx_from_null(apex);
    const bool expected = a[0] - pts[i][0] > std::abs(a[1] - pts[i][1]) + 1e-9;
    CHECK(bool(ind[i]) == expected);
  }
  const std::vector<NullCoord> apexes{{0.0, 0.0}, {0.5, -0.2}, {-0.3, 0.6}};
  const auto uni = serial::union_of_pasts(nc, apexes);
  CHECK(uni == parallel::union_of_pasts(nc, apexes));
  for (std::size_t i = 0; i < nc.size(); ++i) {
    bool any = false;
    for (const auto &a : apexes) any = any || strictly_below(nc[i], a);
    CHECK(bool(uni[i]) == any);
  }
}

TEST_CASE("down_set_violation and convexity_violation") {
  std::mt19937_64 rng(24);
  const auto pts = random_points(200, rng);
  const auto nc = nulls(pts);
  const auto past = from_bytes(serial::past_indicator(nc, {0.4, 0.4}));
  CHECK_FALSE(serial::down_set_violation(nc, past));
  CHECK_FALSE(parallel::down_set_violation(nc, past));
  CHECK_FALSE(serial::convexity_violation(nc, past));

  PointSet holed = past;
  std::size_t removed = PointSet::npos;
  for (std::size_t i = 0; i < nc.size() && removed == PointSet::npos; ++i)
    if (past.test(i))
      for (std::size_t j = 0; j < nc.size(); ++j)
        if (past.test(j) && strictly_below(nc[i], nc[j])) {
          removed = i;
          break;
        }
  REQUIRE(removed != PointSet::npos);
  holed.reset(removed);
  const auto w = serial::down_set_violation(nc, holed);
  REQUIRE(w);
  CHECK_FALSE(holed.test(w->below));
  CHECK(holed.test(w->above));
  CHECK(strictly_below(nc[w->below], nc[w->above]));
  CHECK(parallel::down_set_violation(nc, holed).has_value());

  // A non-member strictly between two members breaks convexity.
  PointSet two(nc.size());
  for (std::size_t i = 0; i < nc.size() && two.none(); ++i)
    for (std::size_t j = 0; j < nc.size() && two.none(); ++j)
      for (std::size_t k = 0; k < nc.size(); ++k)
        if (strictly_below(nc[i], nc[j]) && strictly_below(nc[j], nc[k])) {
          two.set(i);
          two.set(k);
          break;
        }
  REQUIRE(two.count() == 2);
  const auto t = serial::convexity_violation(nc, two);
  REQUIRE(t);
  CHECK(causally_below(nc[t->lower], nc[t->middle]));
  CHECK(causally_below(nc[t->middle], nc[t->upper]));
  CHECK_FALSE(two.test(t->middle));
  CHECK(parallel::convexity_violation(nc, two).has_value());
}

TEST_CASE("DominanceIndex queries against brute force") {
  std::mt19937_64 rng(25);
  const auto pts = random_points(300, rng);
  const auto nc = nulls(pts);
  const auto m = random_members(nc.size(), 0.1, rng);
  const DominanceIndex idx(nc, m);
  CHECK_FALSE(idx.empty());
  for (int k = 0; k < 2000; ++k) {
    const NullCoord q = nc[rng() % nc.size()];
    bool sa = false, sb = false, ca = false, cb = false;
    for (std::size_t j = 0; j < nc.size(); ++j) {
      if (!m.test(j)) continue;
      sa = sa || strictly_below(q, nc[j]);
      sb = sb || strictly_below(nc[j], q);
      ca = ca || causally_below(q, nc[j]);
      cb = cb || causally_below(nc[j], q);
    }
    CHECK(idx.any_strictly_above(q) == sa);
    CHECK(idx.any_strictly_below(q) == sb);
    CHECK(idx.any_causally_above(q) == ca);
    CHECK(idx.any_causally_below(q) == cb);
  }
  CHECK(DominanceIndex(nc, PointSet(nc.size())).empty());
}
