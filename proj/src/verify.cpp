#include "clt/verify.hpp"

#include "clt/causal_tools.hpp"
#include "clt/errors.hpp"
#include "clt/kernels.hpp"
#include "clt/scri.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numeric>
#include <sstream>

namespace clt {

namespace {

using nlohmann::json;

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(salt), std::uint32_t(salt >> 32)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64 &rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t pick(std::mt19937_64 &rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

// Runs `body` as one check; exceptions turn into failures with the message.
void run_check(Report &rep, const std::string &id, const std::function<void(CheckRecord &)> &body) {
  CheckRecord r;
  r.id = id;
  r.anchor = id;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception &e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.add(std::move(r));
}

json point_json(const Point &p) { return json::array({p[0], p[1]}); }

PointSet random_subset(std::size_t n, double p, std::mt19937_64 &rng) {
  std::bernoulli_distribution b(p);
  PointSet s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = b(rng);
  return s;
}

PointSet ball_set(const PointCloud &cloud, Point centre, double r, bool closed) {
  PointSet s(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double d = euclidean(cloud.points[i], centre);
    s[i] = closed ? d <= r + 1e-12 : d < r;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Finite suite

void check_ip_oracle(Report &rep, const VerifyOptions &o) {
  run_check(rep, "chronoset.ip-oracle", [&](CheckRecord &r) {
    std::size_t sets = 0, disagreements = 0;
    for (std::size_t s = 0; s < o.finite_instances; ++s) {
      auto rng = rng_for(o.seed, 100 + s);
      const std::size_t n = 1 + pick(rng, o.finite_max_n);
      const ChronoSet c = random_chronoset(n, uniform(rng, 0.1, 0.7), rng);
      for (const auto &d : enumerate_down_sets(c)) {
        if (d.none()) continue;
        ++sets;
        std::size_t maximal = 0;
        for (auto x = d.find_first(); x != PointSet::npos; x = d.find_next(x))
          if (!c.future_of_point(x).intersects(d)) ++maximal;
        if (is_ip(c, DownSet{d}) != (maximal == 1)) {
          if (disagreements++ == 0) r.witness = {{"instance", s}, {"order", c.serialize()}};
        }
      }
    }
    r.passed = disagreements == 0;
    r.detail = std::to_string(sets) + " down-sets, " + std::to_string(disagreements) + " disagreements";
  });
}

void check_tip_only(Report &rep, const VerifyOptions &o) {
  run_check(rep, "chronoset.finite-ips-are-tips", [&](CheckRecord &r) {
    std::size_t ips = 0, pips = 0;
    for (std::size_t s = 0; s < o.finite_instances; ++s) {
      auto rng = rng_for(o.seed, 200 + s);
      const ChronoSet c = random_chronoset(1 + pick(rng, o.finite_max_n), uniform(rng, 0.1, 0.7), rng);
      for (const auto &ip : enumerate_ips(c)) {
        ++ips;
        if (classify_ip(c, ip).kind == IpClass::PIP) ++pips;
      }
    }
    r.passed = pips == 0;
    r.detail = std::to_string(ips) + " IPs, " + std::to_string(pips) + " with a future limit";
  });
}

void check_completion_order(Report &rep, const VerifyOptions &o) {
  run_check(rep, "chronoset.completion-order", [&](CheckRecord &r) {
    std::size_t bad = 0;
    for (std::size_t s = 0; s < o.finite_instances; ++s) {
      auto rng = rng_for(o.seed, 300 + s);
      const ChronoSet c = random_chronoset(1 + pick(rng, o.finite_max_n), uniform(rng, 0.1, 0.7), rng);
      const Completion comp = future_completion(c);
      const auto &ord = comp.order;
      bool ok = true;
      for (std::size_t a = 0; a < ord.size() && ok; ++a) {
        if (ord.precedes(a, a)) ok = false;
        for (std::size_t b = 0; b < ord.size() && ok; ++b) {
          if (ord.precedes(a, b) && ord.precedes(b, a)) ok = false;
          for (std::size_t d = 0; d < ord.size() && ok; ++d)
            if (ord.precedes(a, b) && ord.precedes(b, d) && !ord.precedes(a, d)) ok = false;
        }
      }
      const ChronoMap inc{&c, &ord, comp.inclusion};
      if (!preserves_chronology(inc) || !is_future_continuous(inc)) ok = false;
      if (!ok && bad++ == 0) r.witness = {{"instance", s}, {"order", c.serialize()}};
    }
    r.passed = bad == 0;
    r.detail = std::to_string(o.finite_instances) + " completions, " + std::to_string(bad) + " failures";
  });
}

void check_three_chain(Report &rep) {
  run_check(rep, "chronoset.three-chain", [&](CheckRecord &r) {
    const ChronoSet c = ChronoSet::parse("a: b\nb: c\n");
    const Completion comp = future_completion(c);
    bool ok = comp.ips.size() == 3;
    for (std::size_t i = 0; ok && i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) ok = ok && comp.order.precedes(comp.inclusion[i], comp.inclusion[j]) == (i < j);
    r.passed = ok;
    r.detail = "down(a) <<^ down(b) <<^ down(c), " + std::to_string(comp.ips.size()) + " IPs";
  });
}

void check_time_dual(Report &rep, const VerifyOptions &o) {
  run_check(rep, "chronoset.time-dual", [&](CheckRecord &r) {
    std::size_t bad = 0;
    for (std::size_t s = 0; s < o.finite_instances; ++s) {
      auto rng = rng_for(o.seed, 400 + s);
      const ChronoSet c = random_chronoset(1 + pick(rng, o.finite_max_n), uniform(rng, 0.1, 0.7), rng);
      const ChronoSet d = time_dual(c), dd = time_dual(d);
      bool ok = true;
      for (std::size_t x = 0; x < c.size(); ++x) ok = ok && c.future_of_point(x) == dd.future_of_point(x);
      for (const auto &up : enumerate_down_sets(d))
        if (up.any()) ok = ok && is_if(c, up) == is_ip(d, DownSet{up});
      if (!ok) ++bad;
    }
    r.passed = bad == 0;
    r.detail = std::to_string(bad) + " failures";
  });
}

void check_limit_operators(Report &rep, const VerifyOptions &o) {
  run_check(rep, "setlimits.limit-operators", [&](CheckRecord &r) {
    auto rng = rng_for(o.seed, 500);
    LimitComparison total;
    std::size_t done = 0, batch = 0;
    while (done < o.limit_sequences) {
      const ChronoSet c = random_chronoset(4 + pick(rng, 6), uniform(rng, 0.2, 0.6), rng);
      const std::size_t count = std::min<std::size_t>(25, o.limit_sequences - done);
      const auto cmp = compare_limits(scripted_finite_sequences(c, count, rng), principal_catalogue(c));
      total.sequences += cmp.sequences;
      total.containment_violations += cmp.containment_violations;
      total.equality_violations += cmp.equality_violations;
      total.separation_witnesses += cmp.separation_witnesses;
      total.non_hausdorff_witnesses += cmp.non_hausdorff_witnesses;
      total.all_chr_at_most_one = total.all_chr_at_most_one && cmp.all_chr_at_most_one;
      if (!cmp.passed() && r.witness.empty()) r.witness = {{"batch", batch}, {"order", c.serialize()}};
      done += count;
      ++batch;
    }
    r.passed = total.containment_violations == 0 && total.equality_violations == 0;
    r.detail = std::to_string(total.sequences) + " sequences; containment violations " +
               std::to_string(total.containment_violations) + ", equality violations " +
               std::to_string(total.equality_violations) + ", separation witnesses " +
               std::to_string(total.separation_witnesses) + ", non-Hausdorff witnesses " +
               std::to_string(total.non_hausdorff_witnesses);
  });
}

void check_lipschitz(Report &rep, const VerifyOptions &o) {
  run_check(rep, "setlimits.lipschitz", [&](CheckRecord &r) {
    auto rng = rng_for(o.seed, 600);
    const CloudPtr cloud = make_grid_cloud(-1.0, 1.0, -1.0, 1.0, 0.02);
    double worst = -std::numeric_limits<double>::infinity();
    const std::size_t per_set = 50000;
    for (std::size_t done = 0; done < o.lipschitz_pairs; done += per_set) {
      PointSet s = ball_set(*cloud, {uniform(rng, -1, 1), uniform(rng, -1, 1)}, uniform(rng, 0.05, 0.5), false) |
                   random_subset(cloud->size(), 0.001, rng);
      if (s.none()) s.set(pick(rng, cloud->size()));
      const auto prof = dist_profile(SampledSet{cloud, s});
      for (std::size_t k = 0; k < per_set && done + k < o.lipschitz_pairs; ++k) {
        const std::size_t i = pick(rng, cloud->size()), j = pick(rng, cloud->size());
        worst = std::max(worst, std::abs(prof.values[i] - prof.values[j]) - cloud->distance(i, j));
      }
    }
    r.passed = worst <= 1e-12;
    r.tolerances = {{"excess", 1e-12}};
    r.witness = {{"max_excess", worst}};
    r.detail = std::to_string(o.lipschitz_pairs) + " pairs";
  });
}

void check_tauc_closed(Report &rep, const VerifyOptions &o) {
  run_check(rep, "setlimits.tauc-vs-closed-limit", [&](CheckRecord &r) {
    auto rng = rng_for(o.seed, 700);
    const double h = 0.02;
    const CloudPtr cloud = make_grid_cloud(-1.0, 1.0, -1.0, 1.0, h);
    std::size_t disagreements = 0;
    const auto seqs = scripted_grid_sequences(cloud, o.grid_sequences, rng);
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      const auto &s = seqs[i];
      const SampledSet target = s.expected ? *s.expected : limsup_liminf_metric(s.seq, h).limsup;
      const bool tauc = tauc_converges(s.seq, target, 2 * h).converged;
      const auto cl = closed_limit(s.seq, h);
      const bool closed = cl && (!s.expected || hausdorff_distance(*cl, *s.expected) <= 2 * h);
      if (tauc != closed && disagreements++ == 0) r.witness = {{"sequence", i}, {"kind", s.kind}};
    }
    r.passed = disagreements == 0;
    r.tolerances = {{"tauc", 2 * h}, {"closed_limit_radius", h}};
    r.detail = std::to_string(seqs.size()) + " sequences, " + std::to_string(disagreements) + " disagreements";
  });
}

void check_profile_roundtrip(Report &rep, const VerifyOptions &o) {
  run_check(rep, "setlimits.profile-roundtrip", [&](CheckRecord &r) {
    auto rng = rng_for(o.seed, 800);
    const CloudPtr cloud = make_grid_cloud(-1.0, 1.0, -1.0, 1.0, 0.05);
    const auto prof = dist_profile(SampledSet{cloud, random_subset(cloud->size(), 0.02, rng) | ball_set(*cloud, {0, 0}, 0.2, true)});
    std::stringstream ss;
    write_profile_csv(ss, *cloud, prof);
    const auto back = read_profile_csv(ss);
    double err = back.values.size() == prof.values.size() ? 0.0 : 1.0;
    for (std::size_t i = 0; err == 0.0 && i < prof.values.size(); ++i) err = std::max(err, std::abs(back.values[i] - prof.values[i]));
    r.passed = err <= std::numeric_limits<double>::epsilon();
    r.witness = {{"max_error", err}, {"rows", back.values.size()}};
  });
}

void check_kernel_parity(Report &rep, const VerifyOptions &o) {
  run_check(rep, "kernels.serial-parallel-parity", [&](CheckRecord &r) {
    auto rng = rng_for(o.seed, 900);
    const auto model = ModelSpacetime::mink2();
    const CloudPtr cloud = sample(model, 0.1, Window{Frame::Chart, Rect{-1, 1, -1, 1}, false});
    std::size_t mismatches = 0;
    for (int rep_i = 0; rep_i < 10; ++rep_i) {
      const PointSet m = random_subset(cloud->size(), uniform(rng, 0.01, 0.5), rng);
      const NullCoord apex{uniform(rng, -2, 2), uniform(rng, -2, 2)};
      mismatches += kernels::serial::distance_profile(cloud->points, m) != kernels::parallel::distance_profile(cloud->points, m);
      mismatches += kernels::serial::past_indicator(cloud->null, apex) != kernels::parallel::past_indicator(cloud->null, apex);
      mismatches += kernels::serial::grid_distance_profile(*cloud->grid, cloud->cell_of_point, m) !=
                    kernels::parallel::grid_distance_profile(*cloud->grid, cloud->cell_of_point, m);
      const auto a = kernels::serial::down_set_violation(cloud->null, m), b = kernels::parallel::down_set_violation(cloud->null, m);
      mismatches += a.has_value() != b.has_value() || (a && (a->above != b->above || a->below != b->below));
    }
    r.passed = mismatches == 0;
    r.detail = std::to_string(mismatches) + " mismatches over 10 random sets";
  });
}

// ---------------------------------------------------------------------------
// Continuum suite

struct Continuum {
  const VerifyOptions &o;
  double h;
  ModelSpacetime mink = ModelSpacetime::mink2();
  CloudPtr chart_cloud;
  std::shared_ptr<BoundaryCatalogue> catalogue;
  CloudPtr diamond;

  explicit Continuum(const VerifyOptions &opts) : o(opts), h(opts.resolution) {}

  const CloudPtr &chart() {
    if (!chart_cloud) chart_cloud = sample(mink, h, Window{Frame::Chart, o.window, false});
    return chart_cloud;
  }
  const BoundaryCatalogue &cat() {
    if (!catalogue) {
      diamond = sample(mink, h, catalogue_window());
      catalogue = std::make_shared<BoundaryCatalogue>(
          mink2_null_catalogue(diamond, o.catalogue_params.empty() ? default_catalogue_params() : o.catalogue_params));
    }
    return *catalogue;
  }
};

void check_oracle_sanity(Report &rep, Continuum &cx) {
  run_check(rep, "spacetimes.oracle-sanity", [&](CheckRecord &r) {
    auto rng = rng_for(cx.o.seed, 1000);
    std::size_t violations = 0, triples = 0;
    for (auto id : {ModelId::Mink2, ModelId::HStrip, ModelId::VStrip, ModelId::Square}) {
      const ModelSpacetime m(id);
      const double half = id == ModelId::Square ? kHalfPi : 1.0;
      const CloudPtr cloud = sample(m, id == ModelId::Square ? 0.05 : 0.1,
                                    Window{Frame::Chart, Rect{-half, half, -half, half}, id == ModelId::Square});
      for (int k = 0; k < 20000; ++k) {
        const Point &p = cloud->points[pick(rng, cloud->size())];
        const Point &q = cloud->points[pick(rng, cloud->size())];
        const Point &s = cloud->points[pick(rng, cloud->size())];
        ++triples;
        if (m.chron(p, p)) ++violations;
        if (m.chron(p, q) && m.chron(q, p)) ++violations;
        if (m.chron(p, q) && !m.caus(p, q)) ++violations;
        if (m.caus(p, q) && m.caus(q, s) && !m.caus(p, s)) ++violations;
        if (m.caus(p, q) && m.chron(q, s) && !m.chron(p, s)) ++violations;
        if (m.chron(p, q) && m.caus(q, s) && !m.chron(p, s)) ++violations;
      }
    }
    r.passed = violations == 0;
    r.detail = std::to_string(triples) + " sampled triples, " + std::to_string(violations) + " violations";
  });
}

void check_extension_iso(Report &rep, Continuum &cx) {
  run_check(rep, "spacetimes.extension-chronology", [&](CheckRecord &r) {
    auto rng = rng_for(cx.o.seed, 1100);
    const auto ext = ConformalExtension::mink2_to_square();
    const CloudPtr &cloud = cx.chart();
    std::size_t bad = 0;
    for (int k = 0; k < 20000; ++k) {
      const Point &p = cloud->points[pick(rng, cloud->size())];
      const Point &q = cloud->points[pick(rng, cloud->size())];
      const Point ep = ext.embed(p), eq = ext.embed(q);
      if (cx.mink.chron(p, q) != ext.ambient.chron(ep, eq)) ++bad;
      if (!(ext.omega(p) > 0.0) || !ext.in_image(ep)) ++bad;
      if (p != q && ep == eq) ++bad;
    }
    r.passed = bad == 0;
    r.detail = std::to_string(bad) + " failures over 20000 sampled pairs";
  });
}

void check_indicator_down_sets(Report &rep, Continuum &cx) {
  run_check(rep, "cboundary.indicators-are-down-sets", [&](CheckRecord &r) {
    auto rng = rng_for(cx.o.seed, 1200);
    const CloudPtr small = sample(cx.mink, 0.1, Window{Frame::Chart, Rect{-1, 1, -1, 1}, false});
    std::size_t bad = 0;
    for (int k = 0; k < 20; ++k) {
      const Point p{uniform(rng, -0.5, 1.5), uniform(rng, -1, 1)};
      const auto cp = ip_of_point(cx.mink, small, p);
      const bool sweep = is_sampled_down_set(*small, cp.indicator.members);
      const bool exhaustive = !kernels::serial::down_set_violation(small->null, cp.indicator.members);
      if (!sweep || !exhaustive) ++bad;
    }
    const auto &cat = cx.cat();
    for (const auto &e : cat.entries)
      if (!is_sampled_down_set(*e.indicator.cloud, e.indicator.members)) ++bad;
    r.passed = bad == 0;
    r.detail = std::to_string(20 + cat.entries.size()) + " indicators, " + std::to_string(bad) + " not down-closed";
  });
}

void check_chain_convergence(Report &rep, Continuum &cx) {
  run_check(rep, "cboundary.chain-convergence", [&](CheckRecord &r) {
    auto rng = rng_for(cx.o.seed, 1300);
    const CloudPtr &cloud = cx.chart();
    const Rect w = cx.o.window;
    const double h = cx.h;
    double worst = 0.0;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < cx.o.chains; ++i) {
      const Point end{uniform(rng, w.lo0 + 1.5, w.hi0 - 0.2), uniform(rng, w.lo1 + 0.5, w.hi1 - 0.5)};
      const double len = uniform(rng, 0.3, 1.0), slope = uniform(rng, -0.8, 0.8);
      const Point dir{len, len * slope};
      const auto c = CurveDescriptor::timelike({end[0] - dir[0], end[1] - dir[1]}, dir, 0.0, 1.0);
      const auto pts = curve_points(cx.mink, c, 24);
      std::vector<PointSet> sets;
      for (const auto &p : pts) sets.push_back(ip_of_point(cx.mink, cloud, p).indicator.members);
      PointSet uni(cloud->size());
      for (const auto &s : sets) uni |= s;
      const SetSequence seq(cloud, sets, 12);
      const auto conv = tauc_converges(seq, SampledSet{cloud, uni}, 2 * h);
      const double d_end = hausdorff_distance(SampledSet{cloud, uni}, ip_of_point(cx.mink, cloud, end).indicator);
      worst = std::max(worst, conv.final_gap());
      if (!conv.converged || conv.final_gap() > 2 * h || d_end > 2 * h) {
        if (failures++ == 0) r.witness = {{"chain", i}, {"endpoint", point_json(end)}, {"final_gap", conv.final_gap()}};
      }
    }
    r.passed = failures == 0;
    r.tolerances = {{"final_gap", 2 * h}};
    r.detail = std::to_string(cx.o.chains) + " chains, worst final gap " + std::to_string(worst);
  });
}

void check_hstrip(Report &rep, Continuum &cx) {
  run_check(rep, "cboundary.hstrip-no-tips", [&](CheckRecord &r) {
    auto rng = rng_for(cx.o.seed, 1400);
    const auto model = ModelSpacetime::hstrip();
    const double h = cx.h;
    const CloudPtr cloud = sample(model, h, Window{Frame::Chart, Rect{-1, 1, -3, 3}, false});
    std::size_t tips = 0, mismatches = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < cx.o.chains; ++i) {
      const double t0 = uniform(rng, -0.8, 0.5), x0 = uniform(rng, -1.5, 1.5), w = uniform(rng, -0.8, 0.8);
      const auto c = CurveDescriptor::timelike({t0, x0}, {1.0, w}, 0.0, 1.0 - t0);
      const auto cp = ip_of_curve(model, cloud, c);
      if (cp.is_boundary()) ++tips;
      const Point end = c.at(c.b);
      const double d = hausdorff_distance(cp.indicator, ip_of_point(model, cloud, end).indicator);
      worst = std::max(worst, d);
      if (d > 2 * h) ++mismatches;
    }
    r.passed = tips == 0 && mismatches == 0;
    r.tolerances = {{"hausdorff", 2 * h}};
    r.detail = std::to_string(cx.o.chains) + " chains, " + std::to_string(tips) + " TIP flags, worst distance " +
               std::to_string(worst);
  });
}

void check_achronal(Report &rep, Continuum &cx) {
  run_check(rep, "cboundary.boundary-achronal", [&](CheckRecord &r) {
    const auto &cat = cx.cat();
    const auto a = check_boundary_achronal(cat);
    r.passed = a.passed();
    r.detail = std::to_string(cat.entries.size()) + " entries, " + std::to_string(a.pairs_checked) + " ordered pairs, " +
               std::to_string(a.violations.size()) + " related";
    if (!a.passed())
      r.witness = {{"from", cat.entries[a.violations[0].first].label}, {"to", cat.entries[a.violations[0].second].label}};
  });
}

void check_vstrip(Report &rep, Continuum &cx) {
  run_check(rep, "cboundary.vstrip-correspondence", [&](CheckRecord &r) {
    auto rng = rng_for(cx.o.seed, 1500);
    const auto model = ModelSpacetime::vstrip();
    const double h = cx.h;
    const CloudPtr cloud = sample(model, h, Window{Frame::Chart, Rect{-2, 2, -1, 1}, false});
    const VStripRestriction F(cloud);

    // Candidate apexes on distinct grid nodes.
    std::vector<Point> interior, boundary;
    for (const auto &p : cloud->points) {
      if (p[0] < -1.0 || p[0] > 1.5) continue;
      if (std::abs(p[1]) >= 1.0 - 1e-12) boundary.push_back(p);
      else if (std::abs(p[1]) <= 1.0 - 4 * h + 1e-12) interior.push_back(p);
    }
    std::shuffle(interior.begin(), interior.end(), rng);
    std::shuffle(boundary.begin(), boundary.end(), rng);
    const std::size_t n_tip = 1, n_bdy = (cx.o.vstrip_entries - n_tip) * 2 / 5;
    const std::size_t n_int = cx.o.vstrip_entries - n_tip - n_bdy;

    using Kind = VStripRestriction::ImageKind;
    std::vector<std::pair<CompletionPoint, Kind>> cat;
    for (std::size_t i = 0; i < n_int && i < interior.size(); ++i)
      cat.emplace_back(ip_of_point(model, cloud, interior[i]), Kind::InteriorPast);
    for (std::size_t i = 0; i < n_bdy && i < boundary.size(); ++i)
      cat.emplace_back(ip_of_point(model, cloud, boundary[i]), Kind::BoundaryPoint);
    auto up = CurveDescriptor::timelike({0.0, 0.0}, {1.0, 0.0});
    up.spacing = Spacing::Geometric;
    up.label = "i+";
    cat.emplace_back(ip_of_curve(model, cloud, up), Kind::TIP);

    std::vector<CompletionPoint> images;
    std::size_t mis = 0;
    for (const auto &[cp, kind] : cat) {
      images.push_back(F.restrict_F(cp));
      if (F.classify(images.back()) != kind && mis++ == 0)
        r.witness = {{"entry", cp.label}, {"expected", to_string(kind)}, {"got", to_string(F.classify(images.back()))}};
    }
    std::size_t collisions = 0;
    for (std::size_t i = 0; i < images.size(); ++i)
      for (std::size_t j = i + 1; j < images.size(); ++j)
        collisions += images[i].indicator.members == images[j].indicator.members;
    // Interior pasts restrict to themselves.
    std::size_t identity = 0;
    for (std::size_t i = 0; i < images.size(); ++i)
      if (cat[i].second == Kind::InteriorPast) {
        const auto direct = ip_of_point(ModelSpacetime::vstrip(), F.interior_cloud(), std::get<Interior>(cat[i].first.tag).point);
        identity += direct.indicator.members != images[i].indicator.members;
      }
    r.passed = mis == 0 && collisions == 0 && identity == 0 && cat.size() == cx.o.vstrip_entries;
    r.detail = std::to_string(cat.size()) + " entries, " + std::to_string(mis) + " misassigned, " +
               std::to_string(collisions) + " collisions, " + std::to_string(identity) + " interior mismatches";
  });
}

std::vector<CurveDescriptor> random_geodesics(std::mt19937_64 &rng, const Rect &w, std::size_t n) {
  std::vector<CurveDescriptor> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 2 == 0) {
      const double c = uniform(rng, -3.0, 3.0);
      out.push_back(i % 4 == 0 ? CurveDescriptor::null_ray_u(c) : CurveDescriptor::null_ray_v(c));
    } else {
      const Point off{uniform(rng, w.lo0 + 0.5, w.hi0 - 0.5), uniform(rng, w.lo1 + 0.5, w.hi1 - 0.5)};
      auto c = CurveDescriptor::timelike(off, {1.0, uniform(rng, -0.8, 0.8)});
      c.label = "timelike" + std::to_string(i);
      out.push_back(c);
    }
  }
  return out;
}

void check_psi(Report &rep, Continuum &cx) {
  run_check(rep, "cboundary.psi-correspondence", [&](CheckRecord &r) {
    auto rng = rng_for(cx.o.seed, 1600);
    const auto ext = ConformalExtension::mink2_to_square();
    const CloudPtr &cloud = cx.chart();
    const double h = cx.h;
    double worst = 0.0;
    std::size_t failures = 0;
    const auto curves = random_geodesics(rng, cx.o.window, cx.o.chains);
    for (const auto &c : curves) {
      auto fast = c;
      fast.spacing = Spacing::Geometric;
      const Point end = chain_endpoint_in_extension(ext, curve_points(cx.mink, fast, 20), h);
      const double d = hausdorff_distance(psi(ext, end, cloud).indicator, ip_of_curve(cx.mink, cloud, c).indicator);
      worst = std::max(worst, d);
      if (d > 3 * h && failures++ == 0) r.witness = {{"curve", c.label}, {"endpoint", point_json(end)}, {"distance", d}};
    }
    r.passed = failures == 0;
    r.tolerances = {{"hausdorff", 3 * h}};
    r.detail = std::to_string(curves.size()) + " geodesics, worst distance " + std::to_string(worst);
  });
}

void check_null_endpoints(Report &rep, Continuum &cx) {
  run_check(rep, "cboundary.null-endpoints", [&](CheckRecord &r) {
    const auto ext = ConformalExtension::mink2_to_square();
    std::vector<CurveDescriptor> rays;
    const auto params = cx.o.catalogue_params.empty() ? default_catalogue_params() : cx.o.catalogue_params;
    for (double c : params) rays.push_back(CurveDescriptor::null_ray_u(c));
    for (double c : params) rays.push_back(CurveDescriptor::null_ray_v(c));
    const auto rep_n = null_endpoint_check(ext, rays, cx.h);
    std::size_t wrong_edge = 0;
    for (std::size_t i = 0; i < rep_n.endpoints.size(); ++i) {
      const bool u_family = i < params.size();
      const Point &e = rep_n.endpoints[i];
      if (u_family ? e[1] != kHalfPi : e[0] != kHalfPi) ++wrong_edge;
    }
    r.passed = rep_n.passed() && wrong_edge == 0 && rep_n.endpoints.size() == rays.size();
    r.detail = std::to_string(rep_n.checked) + " rays, " + std::to_string(rep_n.failures) + " without endpoint, " +
               std::to_string(wrong_edge) + " on the wrong edge";
  });
}

CloudPtr square_cloud(double h) {
  return sample(ModelSpacetime::square(), h, Window{Frame::Chart, Rect{-kHalfPi, kHalfPi, -kHalfPi, kHalfPi}, true});
}

void check_nesting(Report &rep, Continuum &cx) {
  run_check(rep, "causal.future-nesting", [&](CheckRecord &r) {
    const auto ambient = square_cloud(cx.h);
    const auto n = check_future_nesting(ConformalExtension::mink2_to_square(), ambient);
    r.passed = n.passed();
    r.detail = "convex " + std::to_string(n.causally_convex) + ", precompact " + std::to_string(n.future_precompact) +
               ", future boundary achronal " + std::to_string(n.boundary_achronal) + ", " +
               std::to_string(n.image_samples) + " image samples";
  });
  run_check(rep, "causal.truncated-embedding-rejected", [&](CheckRecord &r) {
    const auto ambient = square_cloud(cx.h);
    const auto n = check_future_nesting(ConformalExtension::truncated_half(), ambient);
    r.passed = !n.causally_convex && n.convexity_witness.has_value();
    if (n.convexity_witness) {
      const auto &w = *n.convexity_witness;
      r.witness = {{"lower", point_json(ambient->points[w.lower])},
                   {"middle", point_json(ambient->points[w.middle])},
                   {"upper", point_json(ambient->points[w.upper])}};
    }
    r.detail = n.causally_convex ? "truncated image passed convexity" : "convexity fails with witness";
  });
}

void check_cauchy_flow(Report &rep, Continuum &cx) {
  run_check(rep, "causal.cauchy-line-flow", [&](CheckRecord &r) {
    const auto ext = ConformalExtension::mink2_to_square();
    std::vector<Point> line, embedded;
    for (int i = -250; i <= 250; ++i) line.push_back({0.0, 0.02 * i});
    for (const auto &p : line) embedded.push_back(ext.embed(p));
    const auto flow = flow_to_future_boundary(ext, line, cx.h);
    const bool achronal = is_achronal(ext.ambient, embedded).achronal;
    r.passed = flow.passed() && achronal && flow.max_last_step <= cx.h;
    r.detail = std::to_string(flow.hits_on_boundary) + "/" + std::to_string(flow.checked) +
               " exits on the future boundary, injective " + std::to_string(flow.injective) +
               ", embedded line achronal " + std::to_string(achronal);
    r.tolerances = {{"last_step", cx.h}};
  });
}

void check_convexity_properties(Report &rep, Continuum &cx) {
  run_check(rep, "causal.past-sets-convex", [&](CheckRecord &r) {
    const CloudPtr &cloud = cx.chart();
    const Region past = Region::past_cone(cx.mink, {1.0, 0.0});
    const Region lower_half = Region::half_plane(1.0, 0.0, 0.0);
    const Region two_balls = Region::ball({-1.0, 0.0}, 0.3) | Region::ball({1.0, 0.0}, 0.3);
    const bool past_ok = is_causally_convex(cx.mink, past, *cloud).convex;
    const bool half_ok = is_causally_convex(cx.mink, lower_half, *cloud).convex;
    const auto balls = is_causally_convex(cx.mink, two_balls, *cloud);
    const auto fb = future_boundary(cx.mink, past, cloud);
    const bool fb_achronal = is_achronal(fb).achronal;
    const bool future_empty = future_boundary(cx.mink, Region::future_cone(cx.mink, {-1.0, 0.0}), cloud).members.none();
    r.passed = past_ok && half_ok && !balls.convex && balls.witness && fb_achronal && future_empty;
    r.detail = "past cone convex " + std::to_string(past_ok) + ", half-plane convex " + std::to_string(half_ok) +
               ", stacked balls rejected " + std::to_string(!balls.convex) + ", future boundary achronal " +
               std::to_string(fb_achronal) + ", future set has empty future boundary " + std::to_string(future_empty);
  });
}

void check_scri(Report &rep, Continuum &cx) {
  run_check(rep, "scri.classification", [&](CheckRecord &r) {
    const auto &cat = cx.cat();
    std::size_t wrong = 0, unclassified = 0;
    for (std::size_t i = 0; i < cat.entries.size(); ++i) {
      const auto cls = classify_boundary_ip(cat.model, cat.entries[i]);
      const std::string &l = cat.entries[i].label;
      ScriLabel expected = l == "i+" ? ScriLabel::TimelikeInfinity : ScriLabel::NullInfinity;
      if (cls.label == ScriLabel::Unclassified) ++unclassified;
      const bool family_ok = l == "i+" || (cls.family && *cls.family == l[0]);
      if ((cls.label != expected || !family_ok) && wrong++ == 0) r.witness = {{"entry", l}, {"got", to_string(cls.label)}};
    }
    r.passed = wrong == 0 && unclassified == 0;
    r.detail = std::to_string(cat.entries.size()) + " entries, " + std::to_string(wrong) + " misclassified";
  });
  run_check(rep, "scri.conformal-inclusion", [&](CheckRecord &r) {
    const auto &cat = cx.cat();
    const auto v = check_voila(ConformalExtension::mink2_to_square(), cx.diamond, cx.o.edge_samples);
    (void)cat;
    const bool corner_out = !in_conformal_scri(ConformalExtension::mink2_to_square(), {kHalfPi, kHalfPi});
    r.passed = v.passed() && v.checked == 2 * cx.o.edge_samples && corner_out;
    r.detail = std::to_string(v.null_infinity) + "/" + std::to_string(v.checked) + " edge points classify as null infinity";
    if (!v.failures.empty()) r.witness = {{"point", point_json(v.failures.front())}};
  });
  run_check(rep, "scri.ample", [&](CheckRecord &r) {
    const auto &cat = cx.cat();
    const auto comps = scri_components(cat);
    const auto box = check_ample(cat, comps, Region::rect(-1, 1, -1, 1));
    const auto origin = i_plus_tilde(std::vector<Point>{{0.0, 0.0}}, cat);
    // Seen from the origin: i+ and every half-plane with c >= 0.
    std::vector<std::size_t> expected;
    for (std::size_t i = 0; i < cat.entries.size(); ++i) {
      const auto &e = cat.entries[i];
      if (e.label == "i+" || (e.family_param && *e.family_param >= 0.0)) expected.push_back(i);
    }
    r.passed = box.ample && origin.entries == expected;
    r.detail = "box escape counts " + std::to_string(box.escape_counts.at(0)) + "/" +
               std::to_string(box.escape_counts.at(1)) + ", origin sees " + std::to_string(origin.entries.size()) + " entries";
  });
  run_check(rep, "scri.past-complete", [&](CheckRecord &r) {
    const auto &cat = cx.cat();
    const auto comps = scri_components(cat);
    const auto full = check_past_complete(cat, comps);
    // Fault injection: drop one half-plane from the null-infinity set.
    auto broken = comps;
    const std::size_t dropped = broken.members.front();
    broken.members.erase(broken.members.begin());
    const auto faulty = check_past_complete(cat, broken);
    r.passed = full.complete && !faulty.complete;
    r.detail = std::string("catalogue ") + (full.complete ? "past-complete" : "not past-complete") +
               "; dropping " + cat.entries[dropped].label + (faulty.complete ? " went unnoticed" : " is detected");
  });
}

} // namespace

// ---------------------------------------------------------------------------

std::vector<double> default_catalogue_params() {
  std::vector<double> out;
  for (int i = -10; i <= 10; ++i) out.push_back(0.5 * i);
  return out;
}

Window catalogue_window() { return Window{Frame::Null, Rect{-8.0, 8.0, -8.0, 8.0}, false}; }

std::vector<PointSet> principal_catalogue(const ChronoSet &c) {
  std::vector<PointSet> out;
  for (std::size_t x = 0; x < c.size(); ++x) {
    PointSet s = c.empty_set();
    s.set(x);
    out.push_back(down_of(c, s).members);
  }
  return out;
}

std::vector<MembershipSequence> scripted_finite_sequences(const ChronoSet &c, std::size_t count,
                                                          std::mt19937_64 &rng) {
  constexpr std::size_t N = 12, tail = 4;
  std::vector<MembershipSequence> out;
  const auto principal = principal_catalogue(c);
  auto random_point = [&] { return pick(rng, c.size()); };
  // Next point of a chain, or x itself at a maximal point.
  auto climb = [&](std::size_t x) {
    const auto ups = members_of(c.future_of_point(x));
    return ups.empty() ? x : ups[pick(rng, ups.size())];
  };
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<PointSet> sets;
    switch (k % 6) {
    case 0: // constant
      sets.assign(N, principal[random_point()]);
      break;
    case 1:   // period 2
    case 2: { // period 3
      const std::size_t p = k % 6 == 1 ? 2 : 3;
      std::vector<std::size_t> cyc;
      for (std::size_t i = 0; i < p; ++i) cyc.push_back(random_point());
      for (std::size_t n = 0; n < N; ++n) sets.push_back(principal[cyc[n % p]]);
      break;
    }
    case 3: { // chain climbing every step until it tops out
      std::size_t x = random_point();
      for (std::size_t n = 0; n < N; ++n, x = climb(x)) sets.push_back(principal[x]);
      break;
    }
    case 4: { // arbitrary prefix, then constant
      const std::size_t x = random_point();
      for (std::size_t n = 0; n < N; ++n) sets.push_back(principal[n < tail ? random_point() : x]);
      break;
    }
    default: { // chain climbing every other step
      std::size_t x = random_point();
      for (std::size_t n = 0; n < N; ++n) {
        sets.push_back(principal[x]);
        if (n % 2 == 1) x = climb(x);
      }
      break;
    }
    }
    out.emplace_back(std::move(sets), tail);
  }
  return out;
}

std::vector<ScriptedSequence> scripted_grid_sequences(const CloudPtr &cloud, std::size_t count,
                                                      std::mt19937_64 &rng) {
  std::vector<ScriptedSequence> out;
  const PointCloud &cl = *cloud;
  for (std::size_t k = 0; k < count; ++k) {
    const Point c0{uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5)};
    switch (k % 4) {
    case 0: {
      const PointSet a = ball_set(cl, c0, uniform(rng, 0.1, 0.4), false);
      out.push_back({"constant", SetSequence(cloud, std::vector<PointSet>(10, a), 4), SampledSet{cloud, a}});
      break;
    }
    case 1: {
      const double ang = uniform(rng, 0.0, 2 * std::numbers::pi);
      const Point c1{c0[0] + 0.6 * std::cos(ang), c0[1] + 0.6 * std::sin(ang)};
      const PointSet a = ball_set(cl, c0, 0.15, false), b = ball_set(cl, c1, 0.15, false);
      std::vector<PointSet> sets;
      for (int n = 0; n < 12; ++n) sets.push_back(n % 2 ? b : a);
      out.push_back({"alternating", SetSequence(cloud, sets, 4), std::nullopt});
      break;
    }
    case 2: {
      const double R = uniform(rng, 0.2, 0.4);
      std::vector<PointSet> sets;
      for (int n = 0; n < 16; ++n) sets.push_back(ball_set(cl, c0, R * (1.0 - std::exp2(-n - 1.0)), false));
      out.push_back({"monotone", SetSequence(cloud, sets, 10), SampledSet{cloud, ball_set(cl, c0, R, true)}});
      break;
    }
    default: {
      const std::size_t centre = pick(rng, cl.size());
      const Point c = cl.points[centre];
      std::vector<PointSet> sets;
      for (int n = 0; n < 14; ++n) sets.push_back(ball_set(cl, c, 0.5 * std::exp2(-n), true));
      PointSet single(cl.size());
      single.set(centre);
      out.push_back({"shrinking", SetSequence(cloud, sets, 6), SampledSet{cloud, single}});
      break;
    }
    }
  }
  return out;
}

ScriptedSequence sequence_from_spec(const Scenario &sc, const SequenceSpec &spec, const CloudPtr &cloud) {
  const PointCloud &cl = *cloud;
  std::vector<PointSet> sets;
  std::optional<SampledSet> expected;
  std::string kind;
  switch (spec.kind) {
  case SequenceKind::Constant: {
    const PointSet a = sc.region(spec.region).sample(cl);
    sets.assign(spec.length, a);
    expected = SampledSet{cloud, a};
    kind = "constant";
    break;
  }
  case SequenceKind::Alternating: {
    const PointSet a = sc.region(spec.region).sample(cl), b = sc.region(spec.other_region).sample(cl);
    for (std::size_t n = 0; n < spec.length; ++n) sets.push_back(n % 2 ? b : a);
    kind = "alternating";
    break;
  }
  case SequenceKind::Monotone: {
    // Region intersected with growing balls about the first member.
    const PointSet a = sc.region(spec.region).sample(cl);
    if (a.none()) throw InputError("sequence " + spec.label + ": region has no samples");
    const Point c = cl.points[a.find_first()];
    double R = 0.0;
    for (auto i = a.find_first(); i != PointSet::npos; i = a.find_next(i)) R = std::max(R, euclidean(c, cl.points[i]));
    for (std::size_t n = 0; n < spec.length; ++n)
      sets.push_back(a & ball_set(cl, c, (R + cl.h) * (1.0 - std::exp2(-double(n) - 1.0)), true));
    expected = SampledSet{cloud, a};
    kind = "monotone";
    break;
  }
  case SequenceKind::Shrinking: {
    std::size_t best = 0;
    for (std::size_t i = 1; i < cl.size(); ++i)
      if (euclidean(cl.points[i], spec.centre) < euclidean(cl.points[best], spec.centre)) best = i;
    for (std::size_t n = 0; n < spec.length; ++n) sets.push_back(ball_set(cl, cl.points[best], std::exp2(-double(n)), true));
    PointSet single(cl.size());
    single.set(best);
    expected = SampledSet{cloud, single};
    kind = "shrinking";
    break;
  }
  }
  return {kind, SetSequence(cloud, sets, spec.length / 2), expected};
}

// ---------------------------------------------------------------------------

namespace {

Report make_report(const VerifyOptions &o, const std::string &suite) {
  Report rep;
  rep.suite = suite;
  rep.scenario = o.scenario;
  rep.seed = o.seed;
  rep.resolution = o.resolution;
  return rep;
}

} // namespace

Report run_verify(const VerifyOptions &o) {
  Report rep = make_report(o, to_string(o.suite));
  if (o.suite != Suite::Continuum) {
    check_ip_oracle(rep, o);
    check_tip_only(rep, o);
    check_completion_order(rep, o);
    check_three_chain(rep);
    check_time_dual(rep, o);
    check_limit_operators(rep, o);
    check_lipschitz(rep, o);
    check_tauc_closed(rep, o);
    check_profile_roundtrip(rep, o);
    check_kernel_parity(rep, o);
  }
  if (o.suite != Suite::Finite) {
    Continuum cx(o);
    check_oracle_sanity(rep, cx);
    check_extension_iso(rep, cx);
    check_indicator_down_sets(rep, cx);
    check_chain_convergence(rep, cx);
    check_hstrip(rep, cx);
    check_achronal(rep, cx);
    check_vstrip(rep, cx);
    check_psi(rep, cx);
    check_null_endpoints(rep, cx);
    check_nesting(rep, cx);
    check_cauchy_flow(rep, cx);
    check_convexity_properties(rep, cx);
    check_scri(rep, cx);
  }
  return rep;
}

Report run_boundary(const VerifyOptions &o, const std::string &table_path, const std::string &profile_dir,
                    const Scenario *sc) {
  Report rep = make_report(o, "boundary");
  Continuum cx(o);
  check_indicator_down_sets(rep, cx);
  check_achronal(rep, cx);
  run_check(rep, "cboundary.catalogue-export", [&](CheckRecord &r) {
    const auto &cat = cx.cat();
    if (!profile_dir.empty()) {
      std::filesystem::create_directories(profile_dir);
      for (std::size_t i = 0; i < cat.entries.size(); ++i) {
        std::ofstream f(std::filesystem::path(profile_dir) / ("profile_" + std::to_string(i) + ".csv"));
        if (!f) throw InputError("cannot write profiles under " + profile_dir);
        write_profile_csv(f, *cat.entries[i].indicator.cloud, cat.entries[i].profile());
      }
    }
    if (!table_path.empty()) {
      std::ofstream t(table_path);
      if (!t) throw InputError("cannot write " + table_path);
      write_catalogue_table(t, cat, profile_dir.empty() ? "" : profile_dir + "/profile_");
    }
    r.passed = true;
    r.detail = std::to_string(cat.entries.size()) + " entries exported";
  });
  if (sc && !sc->curves.empty()) {
    const ModelSpacetime model(sc->model);
    const CloudPtr cloud = sample(model, sc->resolution, sc->window);
    for (std::size_t i = 0; i < sc->curves.size(); ++i) {
      const auto &c = sc->curves[i];
      const std::string label = c.label.empty() ? "curve" + std::to_string(i) : c.label;
      run_check(rep, "cboundary.curve." + label, [&](CheckRecord &r) {
        const auto cp = ip_of_curve(model, cloud, c);
        r.passed = is_sampled_down_set(*cloud, cp.indicator.members);
        r.witness = {{"boundary", cp.is_boundary()},
                     {"cardinality", cp.indicator.members.count()},
                     {"window_truncated", cp.window_truncated}};
        r.detail = cp.label + (cp.is_boundary() ? " is a boundary point" : " is a point past");
      });
    }
  }
  return rep;
}

Report run_limits(const VerifyOptions &o, const Scenario *sc) {
  Report rep = make_report(o, "limits");
  if (!sc || sc->sequences.empty()) {
    check_limit_operators(rep, o);
    check_tauc_closed(rep, o);
    return rep;
  }
  const ModelSpacetime model(sc->model);
  const CloudPtr cloud = sample(model, sc->resolution, sc->window);
  const double h = cloud->h;
  for (const auto &spec : sc->sequences)
    run_check(rep, "setlimits.sequence." + spec.label, [&](CheckRecord &r) {
      const auto s = sequence_from_spec(*sc, spec, cloud);
      const auto cl = closed_limit(s.seq, h);
      const SampledSet target = s.expected ? *s.expected : limsup_liminf_metric(s.seq, h).limsup;
      const auto conv = tauc_converges(s.seq, target, 2 * h);
      const bool closed = cl && (!s.expected || hausdorff_distance(*cl, *s.expected) <= 2 * h);
      r.passed = conv.converged == closed;
      r.tolerances = {{"tauc", 2 * h}, {"closed_limit_radius", h}};
      r.witness = {{"kind", s.kind}, {"closed_limit", cl.has_value()}, {"tauc", conv.converged},
                   {"final_gap", conv.final_gap()}};
      r.detail = s.kind + ": closed limit " + (cl ? "exists" : "absent") + ", tau_c " +
                 (conv.converged ? "converges" : "does not converge");
    });
  return rep;
}

Report run_conformal(const VerifyOptions &o) {
  Report rep = make_report(o, "conformal");
  Continuum cx(o);
  check_extension_iso(rep, cx);
  check_nesting(rep, cx);
  check_cauchy_flow(rep, cx);
  check_null_endpoints(rep, cx);
  check_psi(rep, cx);
  return rep;
}

Report run_scri(const VerifyOptions &o, const std::string &table_path) {
  Report rep = make_report(o, "scri");
  Continuum cx(o);
  check_scri(rep, cx);
  if (!table_path.empty())
    run_check(rep, "scri.classification-export", [&](CheckRecord &r) {
      const auto &cat = cx.cat();
      std::vector<ScriClassification> cls;
      for (std::size_t i = 0; i < cat.entries.size(); ++i) {
        cls.push_back(classify_boundary_ip(cat.model, cat.entries[i]));
        cls.back().entry = i;
      }
      std::ofstream t(table_path);
      if (!t) throw InputError("cannot write " + table_path);
      write_classification_table(t, cat, cls);
      r.passed = true;
      r.detail = std::to_string(cls.size()) + " rows";
    });
  return rep;
}

} // namespace clt
