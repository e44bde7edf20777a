#include "clt/chronoset.hpp"
#include "clt/errors.hpp"
#include "clt/kernels.hpp"
#include "clt/setlimits.hpp"
#include "clt/spacetimes.hpp"

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

std::size_t nearest(const PointCloud &c, Point p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (euclidean(c.points[i], p) < euclidean(c.points[best], p)) best = i;
  return best;
}

PointSet single(const PointCloud &c, std::size_t i) {
  PointSet s(c.size());
  s.set(i);
  return s;
}

} // namespace

TEST_CASE("MembershipSequence enforces the tail contract") {
  PointSet a(2), b(2);
  a.set(0);
  b.set(1);
  CHECK_NOTHROW(MembershipSequence({a, b, a, b, a, b}, 2));
  CHECK_NOTHROW(MembershipSequence({b, b, a, a, a, a}, 1));
  // on, off, on, off, off, off: neither periodic nor a single switch
  CHECK_THROWS_AS(MembershipSequence({a, b, a, b, b, b}, 0), InputError);
  CHECK_THROWS_AS(MembershipSequence({a, a, a}, 2), InputError);
  CHECK_THROWS_AS(MembershipSequence({a, PointSet(3), a, a}, 0), InputError);
}

TEST_CASE("metric limits: constant and alternating") {
  const auto cloud = make_grid_cloud(-1, 1, -1, 1, 0.1);
  const auto A = where(*cloud, [](Point p) { return p[0] < -0.5; });
  const auto B = where(*cloud, [](Point p) { return p[0] > 0.5; });
  const SetSequence constant(cloud, std::vector<PointSet>(8, A), 2);
  const auto lc = limsup_liminf_metric(constant, cloud->h);
  CHECK(lc.limsup.members == A);
  CHECK(lc.liminf.members == A);
  REQUIRE(closed_limit(constant, cloud->h));
  CHECK(closed_limit(constant, cloud->h)->members == A);

  std::vector<PointSet> alt;
  for (int n = 0; n < 8; ++n) alt.push_back(n % 2 ? B : A);
  const SetSequence alternating(cloud, alt, 2);
  const auto la = limsup_liminf_metric(alternating, cloud->h);
  CHECK(la.limsup.members == (A | B));
  CHECK(la.liminf.members.none());
  CHECK_FALSE(closed_limit(alternating, cloud->h));
  CHECK_THROWS_AS(limsup_liminf_metric(constant, 0.4 * cloud->h), ToleranceError);
}

TEST_CASE("metric limits: increasing discs fill the unit disc") {
  const auto square = make_grid_cloud(-1, 1, -1, 1, 0.05);
  const auto in_disc = where(*square, [](Point p) { return std::hypot(p[0], p[1]) <= 1.0 + 1e-12; });
  const CloudPtr disc = std::make_shared<PointCloud>(square->subset(in_disc));
  std::vector<PointSet> sets;
  for (int n = 1; n <= 30; ++n) {
    const double r = 1.0 - std::exp2(-n);
    sets.push_back(where(*disc, [r](Point p) { return std::hypot(p[0], p[1]) < r; }));
  }
  const SetSequence seq(disc, sets, 10);
  // Circle points such as (1, 0) sit exactly h from the nearest member, so
  // open balls must be wider than h to see them.
  CHECK_FALSE(closed_limit(seq, disc->h)->members.all());
  const auto lim = closed_limit(seq, 1.5 * disc->h);
  REQUIRE(lim);
  CHECK(lim->members.all());
}

TEST_CASE("closed limit of a chain of pasts is the closed past cone") {
  const auto m = ModelSpacetime::mink2();
  const double h = 0.05;
  const auto cloud = sample(m, h, Window{Frame::Chart, Rect{-1, 2, -1.5, 1.5}, false});
  std::vector<PointSet> sets;
  for (int k = 1; k <= 24; ++k) {
    const double t = 1.0 - std::exp2(-k);
    sets.push_back(where(*cloud, [&](Point p) { return m.chron(p, {t, 0.0}); }));
  }
  const SetSequence seq(cloud, sets, 12);
  const auto lim = closed_limit(seq, h);
  REQUIRE(lim);
  const SampledSet cone{cloud, where(*cloud, [](Point p) { return p[0] + std::abs(p[1]) <= 1.0 + 1e-9; })};
  CHECK(hausdorff_distance(*lim, cone) <= h);
}

TEST_CASE("open limits") {
  const auto cloud = make_line_cloud(0, 1, 0.25);
  PointSet a(5), b(5), c(5);
  a.set(0);
  a.set(1);
  b.set(1);
  b.set(2);
  const SetSequence constant(cloud, std::vector<PointSet>(6, a), 1);
  CHECK(limsup_liminf_open(constant).limsup.members == a);
  CHECK(limsup_liminf_open(constant).liminf.members == a);
  const SetSequence alt(cloud, {a, b, a, b, a, b}, 0);
  CHECK(limsup_liminf_open(alt).limsup.members == (a | b));
  CHECK(limsup_liminf_open(alt).liminf.members == (a & b));
  std::vector<PointSet> grow;
  for (std::size_t n = 0; n < 5; ++n) {
    c.set(n);
    grow.push_back(c);
  }
  const SetSequence inc(cloud, grow, 1);
  CHECK(limsup_liminf_open(inc).limsup.members == c);
  CHECK(limsup_liminf_open(inc).liminf.members == c);
}

TEST_CASE("liminf is inside limsup and subsequences tighten") {
  std::mt19937_64 rng(31);
  const auto cloud = make_grid_cloud(0, 1, 0, 1, 0.1);
  for (int k = 0; k < 30; ++k) {
    std::vector<PointSet> cyc(3, PointSet(cloud->size()));
    for (auto &s : cyc)
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = rng() % 3 == 0;
    std::vector<PointSet> sets;
    for (int n = 0; n < 12; ++n) sets.push_back(cyc[n % 3]);
    const SetSequence seq(cloud, sets, 3);
    const auto full = limsup_liminf_metric(seq, cloud->h);
    CHECK(full.liminf.members.is_subset_of(full.limsup.members));
    const auto open = limsup_liminf_open(seq);
    CHECK(open.liminf.members.is_subset_of(open.limsup.members));
    const auto sub = seq.subsequence({0, 3, 6, 9});
    const auto ls = limsup_liminf_metric(sub, cloud->h);
    CHECK(full.liminf.members.is_subset_of(ls.liminf.members));
    CHECK(ls.limsup.members.is_subset_of(full.limsup.members));
  }
}

TEST_CASE("dist_profile examples") {
  const auto line = make_line_cloud(-2, 2, 0.5);
  const auto origin = nearest(*line, {0, 0});
  const auto p = dist_profile(SampledSet{line, single(*line, origin)});
  for (std::size_t i = 0; i < line->size(); ++i) CHECK(p.values[i] == doctest::Approx(std::abs(line->points[i][0])));
  PointSet two = single(*line, nearest(*line, {-1, 0})) | single(*line, nearest(*line, {1, 0}));
  CHECK(dist_profile(SampledSet{line, two}).values[origin] == doctest::Approx(1.0));
  CHECK_THROWS_AS(dist_profile(SampledSet::empty(line)), DomainError);

  std::mt19937_64 rng(32);
  const auto grid = make_grid_cloud(-1, 1, -1, 1, 0.1);
  PointSet s(grid->size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = rng() % 20 == 0;
  s.set(0);
  const auto prof = dist_profile(SampledSet{grid, s});
  for (std::size_t i = 0; i < grid->size(); ++i) {
    double best = 1e300;
    for (std::size_t j = 0; j < grid->size(); ++j)
      if (s.test(j)) best = std::min(best, grid->distance(i, j));
    CHECK(prof.values[i] == doctest::Approx(best).epsilon(1e-12));
    CHECK((prof.values[i] == 0.0) == s.test(i));
  }
}

TEST_CASE("dist_profile is 1-Lipschitz") {
  std::mt19937_64 rng(33);
  const auto grid = make_grid_cloud(-1, 1, -1, 1, 0.04);
  PointSet s(grid->size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = rng() % 97 == 0;
  s.set(7);
  const auto prof = dist_profile(SampledSet{grid, s});
  double worst = -1.0;
  for (int k = 0; k < 100000; ++k) {
    const std::size_t i = rng() % grid->size(), j = rng() % grid->size();
    worst = std::max(worst, std::abs(prof.values[i] - prof.values[j]) - grid->distance(i, j));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("tauc_converges") {
  const auto line = make_line_cloud(-2, 2, 0.01);
  const auto zero = single(*line, nearest(*line, {0, 0}));
  std::vector<PointSet> sets;
  for (int n = 1; n <= 240; ++n) sets.push_back(single(*line, nearest(*line, {1.0 / n, 0})));
  const SetSequence seq(line, sets, 220);
  const auto r = tauc_converges(seq, SampledSet{line, zero}, line->h);
  CHECK(r.converged);
  for (std::size_t n = 1; n < r.gaps.size(); ++n) CHECK(r.gaps[n] <= r.gaps[n - 1] + 1e-15);
  CHECK(r.final_gap() == 0.0);

  const auto one = single(*line, nearest(*line, {1, 0}));
  std::vector<PointSet> alt;
  for (int n = 0; n < 10; ++n) alt.push_back(n % 2 ? one : zero);
  const SetSequence a(line, alt, 2);
  CHECK_FALSE(tauc_converges(a, SampledSet{line, zero}, 2 * line->h).converged);
  CHECK_THROWS_AS(tauc_converges(a, SampledSet{line, zero}, 0.5 * line->h), ToleranceError);
}

TEST_CASE("distinct sets have distinct profiles") {
  std::mt19937_64 rng(34);
  const auto grid = make_grid_cloud(0, 1, 0, 1, 0.1);
  for (int k = 0; k < 200; ++k) {
    PointSet a(grid->size()), b(grid->size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = rng() % 4 == 0;
      b[i] = rng() % 4 == 0;
    }
    a.set(0);
    b.set(0);
    if (a == b) continue;
    CHECK(dist_profile(SampledSet{grid, a}).sup_gap(dist_profile(SampledSet{grid, b})) > 0.0);
  }
}

TEST_CASE("hausdorff_distance") {
  const auto line = make_line_cloud(0, 2, 0.5);
  const auto a = single(*line, 0), b = single(*line, 4);
  CHECK(hausdorff_distance(SampledSet{line, a}, SampledSet{line, b}) == doctest::Approx(2.0));
  CHECK(hausdorff_distance(SampledSet{line, a}, SampledSet{line, a | b}) == doctest::Approx(2.0));
  CHECK(hausdorff_distance(SampledSet{line, a}, SampledSet{line, a}) == 0.0);
  CHECK(std::isinf(hausdorff_distance(SampledSet{line, a}, SampledSet::empty(line))));
}

TEST_CASE("l_h and l_chr on x << a, x << b") {
  const auto c = ChronoSet::parse("x: a b\n");
  std::vector<PointSet> cat;
  for (std::size_t i = 0; i < c.size(); ++i) cat.push_back(down_of(c, c.set_of({c.label(i)})).members);
  const std::size_t ia = c.index_of("a");
  const auto da = cat[ia], db = cat[c.index_of("b")], dx = cat[c.index_of("x")];

  const MembershipSequence constant(std::vector<PointSet>(6, da), 1);
  CHECK(l_h(constant, cat) == std::vector<std::size_t>{ia});
  CHECK(l_chr(constant, cat) == std::vector<std::size_t>{ia});

  const MembershipSequence alt({da, db, da, db, da, db}, 0);
  CHECK(l_h(alt, cat).empty());
  CHECK(l_chr(alt, cat).empty());

  const MembershipSequence inc({dx, dx, da, da, da, da}, 1);
  CHECK(l_h(inc, cat) == std::vector<std::size_t>{ia});
  CHECK(l_chr(inc, cat) == std::vector<std::size_t>{ia});
}

TEST_CASE("l_h is inside l_chr on random sequences") {
  std::mt19937_64 rng(35);
  for (int k = 0; k < 100; ++k) {
    const auto c = random_chronoset(3 + rng() % 6, 0.4, rng);
    std::vector<PointSet> cat;
    for (std::size_t i = 0; i < c.size(); ++i) {
      PointSet s(c.size());
      s.set(i);
      cat.push_back(down_of(c, s).members);
    }
    // Period-2 tails over arbitrary down-sets.
    PointSet p(c.size()), q(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      p[i] = rng() % 2;
      q[i] = rng() % 2;
    }
    p = down_of(c, p).members;
    q = down_of(c, q).members;
    const MembershipSequence seq({p, q, p, q, p, q}, 0);
    const auto h = l_h(seq, cat), chr = l_chr(seq, cat);
    CHECK(h.size() <= 1);
    for (auto i : h) CHECK(std::find(chr.begin(), chr.end(), i) != chr.end());
    const auto cmp = compare_limits({seq}, cat);
    CHECK(cmp.containment_violations == 0);
  }
}

TEST_CASE("profile CSV round trip") {
  const auto grid = make_grid_cloud(-1, 1, -1, 1, 0.1);
  PointSet s(grid->size());
  s.set(3);
  s.set(77);
  const auto prof = dist_profile(SampledSet{grid, s});
  std::stringstream ss;
  write_profile_csv(ss, *grid, prof);
  const std::string text = ss.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == std::ptrdiff_t(grid->size() + 1));
  const auto back = read_profile_csv(ss);
  REQUIRE(back.values.size() == prof.values.size());
  for (std::size_t i = 0; i < prof.values.size(); ++i) CHECK(back.values[i] == prof.values[i]);
  std::istringstream bad("index,x,y,value\n0,1,2\n");
  CHECK_THROWS_AS(read_profile_csv(bad), InputError);
}
