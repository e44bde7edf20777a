#include "clt/setlimits.hpp"

#include "clt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace clt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxWindow = 4096;

std::size_t grid_count(double lo, double hi, double h) {
  if (!(h > 0.0) || hi < lo) throw InputError("grid: need h > 0 and lo <= hi");
  return static_cast<std::size_t>(std::floor((hi - lo) / h + 1e-9)) + 1;
}

bool within_ball(double d, double r) { return d < r * (1.0 - 1e-9); }

} // namespace

// ---------------------------------------------------------------------------
// PointCloud

PointCloud PointCloud::subset(const PointSet &keep, std::vector<std::size_t> *parent_index) const {
  PointCloud out;
  out.h = h;
  out.grid = grid;
  for (auto i = keep.find_first(); i != PointSet::npos; i = keep.find_next(i)) {
    out.points.push_back(points[i]);
    if (has_causal_structure()) out.null.push_back(null[i]);
    if (grid) out.cell_of_point.push_back(cell_of_point[i]);
    if (parent_index) parent_index->push_back(i);
  }
  return out;
}

bool PointCloud::metric_spot_check(std::size_t samples, std::mt19937_64 &rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, size() - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto a = pick(rng), b = pick(rng), c = pick(rng);
    if (distance(a, a) != 0.0) return false;
    if (distance(a, b) != distance(b, a)) return false;
    if (distance(a, c) > distance(a, b) + distance(b, c) + 1e-12) return false;
  }
  return true;
}

CloudPtr make_line_cloud(double lo, double hi, double h) {
  auto c = std::make_shared<PointCloud>();
  const std::size_t n = grid_count(lo, hi, h);
  c->h = h;
  c->grid = kernels::GridLayout{n, 1, h};
  for (std::size_t i = 0; i < n; ++i) {
    c->points.push_back({lo + double(i) * h, 0.0});
    c->cell_of_point.push_back(i);
  }
  return c;
}

CloudPtr make_grid_cloud(double lo0, double hi0, double lo1, double hi1, double h) {
  auto c = std::make_shared<PointCloud>();
  const std::size_t n0 = grid_count(lo0, hi0, h), n1 = grid_count(lo1, hi1, h);
  c->h = h;
  c->grid = kernels::GridLayout{n0, n1, h};
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      c->points.push_back({lo0 + double(i) * h, lo1 + double(j) * h});
      c->cell_of_point.push_back(i * n1 + j);
    }
  return c;
}

// ---------------------------------------------------------------------------
// MembershipSequence

MembershipSequence::MembershipSequence(std::vector<PointSet> sets, std::size_t tail_start)
    : sets_(std::move(sets)), tail_start_(tail_start) {
  if (sets_.size() < 2 || tail_start_ + 2 > sets_.size())
    throw InputError("set sequence needs a tail window of at least two indices");
  const std::size_t points = sets_.front().size();
  for (const auto &s : sets_)
    if (s.size() != points) throw InputError("set sequence members live on different ground sets");

  const std::size_t len = sets_.size() - tail_start_;
  // Per point: period (0 for single-switch) and the final value.
  std::vector<std::size_t> period(points, 1);
  std::vector<std::uint8_t> pattern(len);
  std::size_t window = 1;
  for (std::size_t x = 0; x < points; ++x) {
    for (std::size_t j = 0; j < len; ++j) pattern[j] = sets_[tail_start_ + j].test(x);
    std::size_t p = 0;
    for (std::size_t cand = 1; cand <= len / 2 && p == 0; ++cand) {
      bool ok = true;
      for (std::size_t j = cand; j < len && ok; ++j) ok = pattern[j] == pattern[j - cand];
      if (ok) p = cand;
    }
    if (p == 0) {
      std::size_t switches = 0;
      for (std::size_t j = 1; j < len; ++j) switches += pattern[j] != pattern[j - 1];
      if (switches != 1)
        throw InputError("stabilization contract violated at point " + std::to_string(x) +
                         ": tail membership is neither periodic nor monotone");
    } else if (p > 1) {
      window = std::lcm(window, p);
      if (window > kMaxWindow) throw InputError("stabilization contract: combined period too long");
    }
    period[x] = p;
  }

  window_.assign(window, PointSet(points));
  for (std::size_t x = 0; x < points; ++x) {
    for (std::size_t k = 0; k < window; ++k) {
      bool in;
      if (period[x] == 0) {
        in = sets_.back().test(x);
      } else {
        in = sets_[tail_start_ + (len + k) % period[x]].test(x);
      }
      if (in) window_[k].set(x);
    }
  }
}

PointSet MembershipSequence::limsup_open() const {
  PointSet out = window_.front();
  for (const auto &w : window_) out |= w;
  return out;
}

PointSet MembershipSequence::liminf_open() const {
  PointSet out = window_.front();
  for (const auto &w : window_) out &= w;
  return out;
}

MembershipSequence MembershipSequence::subsequence(const std::vector<std::size_t> &indices) const {
  std::vector<PointSet> picked;
  std::size_t tail = indices.size();
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0 && indices[i] <= indices[i - 1]) throw InputError("subsequence indices must increase");
    picked.push_back(sets_.at(indices[i]));
    if (tail == indices.size() && indices[i] >= tail_start_) tail = i;
  }
  if (tail == indices.size()) throw InputError("subsequence does not reach the tail window");
  return MembershipSequence(std::move(picked), tail);
}

// ---------------------------------------------------------------------------
// SetSequence

SetSequence::SetSequence(CloudPtr cloud, std::vector<PointSet> sets, std::size_t tail_start)
    : SetSequence(std::move(cloud), MembershipSequence(std::move(sets), tail_start)) {}

SetSequence::SetSequence(CloudPtr cloud, MembershipSequence seq)
    : cloud_(std::move(cloud)), seq_(std::move(seq)) {
  if (!cloud_) throw InputError("set sequence needs a cloud");
  if (seq_.at(0).size() != cloud_->size()) throw InputError("set sequence does not match its cloud");
}

SetSequence SetSequence::subsequence(const std::vector<std::size_t> &indices) const {
  return SetSequence(cloud_, seq_.subsequence(indices));
}

// ---------------------------------------------------------------------------
// Profiles

double DistanceProfile::sup_gap(const DistanceProfile &o) const {
  if (values.size() != o.values.size()) throw InputError("profiles over different clouds");
  double gap = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = values[i], b = o.values[i];
    if (a == kInf && b == kInf) continue;
    gap = std::max(gap, std::abs(a - b));
  }
  return gap;
}

namespace {

std::vector<double> raw_profile(const PointCloud &cloud, const PointSet &members) {
  if (cloud.grid) return kernels::parallel::grid_distance_profile(*cloud.grid, cloud.cell_of_point, members);
  return kernels::parallel::distance_profile(cloud.points, members);
}

} // namespace

DistanceProfile dist_profile(const SampledSet &s) {
  if (s.members.none()) throw DomainError("distance profile of the empty set");
  if (s.members.size() != s.cloud->size()) throw InputError("sampled set does not match its cloud");
  return DistanceProfile{raw_profile(*s.cloud, s.members)};
}

double hausdorff_distance(const SampledSet &a, const SampledSet &b) {
  if (a.cloud != b.cloud) throw InputError("hausdorff_distance: sets on different clouds");
  if (a.members.none() && b.members.none()) return 0.0;
  if (a.members.none() || b.members.none()) return kInf;
  const auto da = raw_profile(*a.cloud, a.members);
  const auto db = raw_profile(*b.cloud, b.members);
  double d = 0.0;
  for (auto i = a.members.find_first(); i != PointSet::npos; i = a.members.find_next(i)) d = std::max(d, db[i]);
  for (auto i = b.members.find_first(); i != PointSet::npos; i = b.members.find_next(i)) d = std::max(d, da[i]);
  return d;
}

// ---------------------------------------------------------------------------
// Limits

SetLimits limsup_liminf_metric(const SetSequence &seq, double r) {
  const PointCloud &cloud = *seq.cloud();
  if (r < cloud.h / 2.0) throw ToleranceError("neighbourhood radius below half the resolution");
  const auto &window = seq.membership().limit_window();
  const std::size_t n = cloud.size();

  std::vector<std::uint8_t> sup(n, 0), inf(n, 1);
  for (const auto &w : window) {
    const auto d = raw_profile(cloud, w);
    for (std::size_t i = 0; i < n; ++i) {
      const bool meets = w.any() && within_ball(d[i], r);
      sup[i] |= meets;
      inf[i] &= meets;
    }
  }
  return SetLimits{SampledSet{seq.cloud(), from_bytes(sup)}, SampledSet{seq.cloud(), from_bytes(inf)}};
}

std::optional<SampledSet> closed_limit(const SetSequence &seq, double r) {
  auto lim = limsup_liminf_metric(seq, r);
  if (lim.limsup.members != lim.liminf.members) return std::nullopt;
  return lim.limsup;
}

SetLimits limsup_liminf_open(const SetSequence &seq) {
  return SetLimits{SampledSet{seq.cloud(), seq.membership().limsup_open()},
                   SampledSet{seq.cloud(), seq.membership().liminf_open()}};
}

ConvergenceReport tauc_converges(const SetSequence &seq, const SampledSet &s, double tol) {
  if (tol < seq.cloud()->h) throw ToleranceError("convergence tolerance below the resolution");
  if (s.members.none()) throw ContractError("tauc_converges: target set is empty");
  if (s.cloud != seq.cloud()) throw InputError("tauc_converges: target on a different cloud");
  const DistanceProfile target = dist_profile(s);

  ConvergenceReport rep;
  for (std::size_t n = 0; n < seq.length(); ++n) {
    if (seq.membership().at(n).none()) throw ContractError("tauc_converges: empty set in sequence");
    rep.gaps.push_back(dist_profile(seq.at(n)).sup_gap(target));
  }
  rep.converged = true;
  for (const auto &w : seq.membership().limit_window()) {
    const double g = dist_profile(SampledSet{seq.cloud(), w}).sup_gap(target);
    rep.limit_gaps.push_back(g);
    if (g > tol + 1e-12) rep.converged = false;
  }
  return rep;
}

std::vector<std::size_t> l_h(const MembershipSequence &seq, const std::vector<PointSet> &catalogue,
                             std::size_t tolerance) {
  const PointSet sup = seq.limsup_open();
  const PointSet inf = seq.liminf_open();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < catalogue.size(); ++i)
    if ((catalogue[i] ^ inf).count() <= tolerance && (catalogue[i] ^ sup).count() <= tolerance)
      out.push_back(i);
  return out;
}

std::vector<std::size_t> l_chr(const MembershipSequence &seq, const std::vector<PointSet> &catalogue,
                               std::size_t tolerance) {
  const PointSet sup = seq.limsup_open();
  const PointSet inf = seq.liminf_open();
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < catalogue.size(); ++i)
    if ((catalogue[i] - sup).count() <= tolerance) inside.push_back(i);
  std::vector<std::size_t> out;
  for (auto i : inside) {
    if ((catalogue[i] - inf).count() > tolerance) continue;
    const bool maximal = std::none_of(inside.begin(), inside.end(), [&](std::size_t j) {
      return catalogue[i] != catalogue[j] && catalogue[i].is_subset_of(catalogue[j]);
    });
    if (maximal) out.push_back(i);
  }
  return out;
}

LimitComparison compare_limits(const std::vector<MembershipSequence> &batch,
                               const std::vector<PointSet> &catalogue) {
  LimitComparison rep;
  rep.sequences = batch.size();
  rep.catalogue_size = catalogue.size();
  std::vector<std::vector<std::size_t>> hs, chrs;
  for (std::size_t s = 0; s < batch.size(); ++s) {
    auto h = l_h(batch[s], catalogue);
    auto c = l_chr(batch[s], catalogue);
    const bool contained = std::all_of(h.begin(), h.end(), [&](std::size_t i) {
      return std::find(c.begin(), c.end(), i) != c.end();
    });
    bool witness = false;
    if (!contained) {
      ++rep.containment_violations;
      witness = true;
    }
    if (c.size() >= 2) {
      ++rep.non_hausdorff_witnesses;
      rep.all_chr_at_most_one = false;
      witness = true;
    }
    if (std::any_of(c.begin(), c.end(),
                    [&](std::size_t i) { return std::find(h.begin(), h.end(), i) == h.end(); })) {
      ++rep.separation_witnesses;
      witness = true;
    }
    if (witness) rep.witness_sequences.push_back(s);
    hs.push_back(std::move(h));
    chrs.push_back(std::move(c));
  }
  if (rep.all_chr_at_most_one)
    for (std::size_t s = 0; s < batch.size(); ++s)
      if (hs[s] != chrs[s]) ++rep.equality_violations;
  return rep;
}

// ---------------------------------------------------------------------------
// CSV

void write_profile_csv(std::ostream &out, const PointCloud &cloud, const DistanceProfile &p) {
  if (p.values.size() != cloud.size()) throw InputError("profile does not match the cloud");
  std::ostringstream buf;
  buf.precision(17);
  buf << "index,x,y,value\n";
  for (std::size_t i = 0; i < cloud.size(); ++i)
    buf << i << ',' << cloud.points[i][0] << ',' << cloud.points[i][1] << ',' << p.values[i] << '\n';
  out << buf.str();
}

DistanceProfile read_profile_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line != "index,x,y,value") throw InputError("profile CSV: bad header");
  DistanceProfile p;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell[4];
    for (auto &c : cell)
      if (!std::getline(row, c, ',')) throw InputError("profile CSV: short row at line " + std::to_string(lineno));
    try {
      if (std::stoull(cell[0]) != p.values.size())
        throw InputError("profile CSV: index out of sequence at line " + std::to_string(lineno));
      p.values.push_back(cell[3] == "inf" ? kInf : std::stod(cell[3]));
    } catch (const std::logic_error &) {
      throw InputError("profile CSV: unparsable row at line " + std::to_string(lineno));
    }
  }
  return p;
}

} // namespace clt
