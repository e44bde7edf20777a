#include "clt/errors.hpp"
#include "clt/scri.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace clt;

namespace {

const ModelSpacetime M = ModelSpacetime::mink2();

struct Fixture {
  CloudPtr cloud = sample(M, 0.1, Window{Frame::Null, Rect{-8, 8, -8, 8}, false});
  BoundaryCatalogue cat;
  Fixture() {
    std::vector<double> params;
    for (int i = -10; i <= 10; ++i) params.push_back(0.5 * i);
    cat = mink2_null_catalogue(cloud, params);
  }
  std::size_t index(const std::string &label) const {
    for (std::size_t i = 0; i < cat.entries.size(); ++i)
      if (cat.entries[i].label == label) return i;
    throw std::out_of_range(label);
  }
};

const Fixture &fx() {
  static const Fixture f;
  return f;
}

bool subset(const std::vector<std::size_t> &a, const std::vector<std::size_t> &b) {
  return std::all_of(a.begin(), a.end(), [&](std::size_t i) { return std::find(b.begin(), b.end(), i) != b.end(); });
}

} // namespace

TEST_CASE("classify_boundary_ip") {
  const auto &f = fx();
  const auto u0 = classify_boundary_ip(M, f.cat.entries[f.index("u<0")]);
  CHECK(u0.label == ScriLabel::NullInfinity);
  REQUIRE(u0.family);
  CHECK(*u0.family == 'u');
  CHECK(u0.match_distance <= 2 * f.cloud->h);
  REQUIRE_FALSE(u0.generators.empty());
  CHECK(u0.generators.front().future_complete);

  CHECK(classify_boundary_ip(M, f.cat.entries[f.index("i+")]).label == ScriLabel::TimelikeInfinity);
  CHECK_THROWS_AS(classify_boundary_ip(M, ip_of_point(M, f.cloud, {0, 0})), ContractError);

  std::size_t nulls = 0, timelike = 0;
  for (const auto &e : f.cat.entries) {
    const auto c = classify_boundary_ip(M, e);
    CHECK(c.label != ScriLabel::Unclassified);
    nulls += c.label == ScriLabel::NullInfinity;
    timelike += c.label == ScriLabel::TimelikeInfinity;
  }
  CHECK(nulls == 42);
  CHECK(timelike == 1);

  // A boundary-tagged indicator that is neither a half-plane nor the window.
  CompletionPoint odd = f.cat.entries[f.index("u<0")];
  odd.indicator.members &= f.cat.entries[f.index("v<0")].indicator.members;
  CHECK(classify_boundary_ip(M, odd).label == ScriLabel::Unclassified);
}

TEST_CASE("i_plus_tilde") {
  const auto &f = fx();
  const auto origin = i_plus_tilde(std::vector<Point>{{0, 0}}, f.cat);
  std::vector<std::size_t> expected;
  for (std::size_t i = 0; i < f.cat.entries.size(); ++i) {
    const auto &e = f.cat.entries[i];
    if (e.label == "i+" || *e.family_param >= 0.0) expected.push_back(i);
  }
  CHECK(origin.entries == expected);
  CHECK(i_plus_tilde(std::vector<Point>{}, f.cat).entries.empty());
  CHECK(i_plus_tilde(Region::none(), f.cat).entries.empty());

  const auto small = i_plus_tilde(Region::closed_ball({0, 0}, 0.5), f.cat);
  const auto large = i_plus_tilde(Region::closed_ball({0, 0}, 1.5), f.cat);
  CHECK(subset(small.entries, large.entries));
  // Upward closed in the indicator order.
  for (auto i : small.entries)
    for (std::size_t j = 0; j < f.cat.entries.size(); ++j)
      if (f.cat.entries[i].indicator.members.is_subset_of(f.cat.entries[j].indicator.members))
        CHECK(std::find(small.entries.begin(), small.entries.end(), j) != small.entries.end());
}

TEST_CASE("components, ampleness and past-completeness") {
  const auto &f = fx();
  const auto comps = scri_components(f.cat);
  CHECK(comps.members.size() == 42);
  REQUIRE(comps.components.size() == 2);
  CHECK(comps.components[0].size() == 21);
  CHECK(f.cat.entries[comps.components[0].front()].label[0] == 'u');

  const auto box = check_ample(f.cat, comps, Region::rect(-1, 1, -1, 1));
  CHECK(box.ample);
  CHECK(box.escape_counts.at(0) > 0);
  CHECK(check_ample(f.cat, comps, std::vector<Point>{}).ample);
  const auto huge = check_ample(f.cat, comps, Region::rect(-6, 6, -6, 6));
  CHECK_FALSE(huge.ample);
  CHECK_FALSE(huge.caveat.empty());

  CHECK(check_past_complete(f.cat, comps).complete);
  auto broken = comps;
  const auto victim = f.index("u<-3");
  broken.members.erase(std::find(broken.members.begin(), broken.members.end(), victim));
  const auto r = check_past_complete(f.cat, broken);
  CHECK_FALSE(r.complete);
  REQUIRE(r.witness);
  CHECK(r.witness->second == victim);
}

TEST_CASE("conformal scri") {
  const auto ext = ConformalExtension::mink2_to_square();
  CHECK(in_conformal_scri(ext, {0, kHalfPi}));
  CHECK(in_conformal_scri(ext, {-std::numbers::pi / 4, kHalfPi}));
  CHECK_FALSE(in_conformal_scri(ext, {kHalfPi, kHalfPi}));
  CHECK_FALSE(in_conformal_scri(ext, {0, 0}));
  CHECK_FALSE(in_conformal_scri(ext, {0, -kHalfPi}));
  const auto pts = conformal_scri(ext, 21);
  CHECK(pts.size() == 42);
  for (const auto &p : pts) CHECK(in_conformal_scri(ext, p));
}

TEST_CASE("check_voila") {
  const auto &f = fx();
  const auto v = check_voila(ConformalExtension::mink2_to_square(), f.cloud, 21);
  CHECK(v.checked == 42);
  CHECK(v.null_infinity == 42);
  CHECK(v.passed());
}

TEST_CASE("classification table") {
  const auto &f = fx();
  std::vector<ScriClassification> cls;
  for (std::size_t i = 0; i < f.cat.entries.size(); ++i) {
    cls.push_back(classify_boundary_ip(M, f.cat.entries[i]));
    cls.back().entry = i;
  }
  std::ostringstream out;
  write_classification_table(out, f.cat, cls);
  const std::string t = out.str();
  CHECK(t.rfind("label,family,parameter,classification,generators,conformal\n", 0) == 0);
  CHECK(std::count(t.begin(), t.end(), '\n') == 44);
  CHECK(t.find("i+,,,timelike-infinity") != std::string::npos);
}
