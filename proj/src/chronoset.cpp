#include "clt/chronoset.hpp"

#include "clt/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>

namespace clt {

namespace {

constexpr std::size_t kMaxExhaustive = 24;

void require_same_size(const ChronoSet &c, const PointSet &a) {
  if (a.size() != c.size())
    throw InputError("point set has " + std::to_string(a.size()) +
                     " slots, chronological set has " + std::to_string(c.size()));
}

void transitive_closure(std::vector<PointSet> &succ) {
  const std::size_t n = succ.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (succ[i].test(k)) succ[i] |= succ[k];
}

bool valid_label(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char ch) {
    return ch == ':' || ch == '#' || std::isspace(static_cast<unsigned char>(ch));
  });
}

} // namespace

// ---------------------------------------------------------------------------
// ChronoSet

ChronoSet ChronoSet::from_relation(std::vector<std::string> labels,
                                   const std::vector<std::vector<bool>> &rel) {
  const std::size_t n = labels.size();
  if (n == 0) throw InputError("chronological set must be non-empty");
  if (rel.size() != n) throw InputError("relation matrix has wrong row count");
  ChronoSet c;
  c.labels_ = std::move(labels);
  c.succ_.assign(n, PointSet(n));
  for (std::size_t x = 0; x < n; ++x) {
    if (rel[x].size() != n) throw InputError("relation matrix row " + std::to_string(x) + " has wrong length");
    for (std::size_t y = 0; y < n; ++y)
      if (rel[x][y]) c.succ_[x].set(y);
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (c.succ_[x].test(x)) throw InputError("relation is not irreflexive at " + c.labels_[x]);
    for (auto y = c.succ_[x].find_first(); y != PointSet::npos; y = c.succ_[x].find_next(y)) {
      if (c.succ_[y].test(x))
        throw InputError("relation is not antisymmetric: " + c.labels_[x] + ", " + c.labels_[y]);
      if (!c.succ_[y].is_subset_of(c.succ_[x]))
        throw InputError("relation is not transitively closed through " + c.labels_[y]);
    }
  }
  c.build_predecessors();
  return c;
}

ChronoSet ChronoSet::from_covers(std::vector<std::string> labels,
                                 const std::vector<std::pair<std::size_t, std::size_t>> &covers) {
  const std::size_t n = labels.size();
  if (n == 0) throw InputError("chronological set must be non-empty");
  ChronoSet c;
  c.labels_ = std::move(labels);
  c.succ_.assign(n, PointSet(n));
  for (auto [x, y] : covers) {
    if (x >= n || y >= n) throw InputError("cover pair out of range");
    c.succ_[x].set(y);
  }
  transitive_closure(c.succ_);
  for (std::size_t x = 0; x < n; ++x)
    if (c.succ_[x].test(x)) throw InputError("relation has a cycle through " + c.labels_[x]);
  c.build_predecessors();
  return c;
}

void ChronoSet::build_predecessors() {
  const std::size_t n = size();
  pred_.assign(n, PointSet(n));
  for (std::size_t x = 0; x < n; ++x)
    for (auto y = succ_[x].find_first(); y != PointSet::npos; y = succ_[x].find_next(y))
      pred_[y].set(x);
}

ChronoSet ChronoSet::parse(std::string_view text) {
  std::vector<std::string> labels;
  std::map<std::string, std::size_t, std::less<>> index;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto intern = [&](const std::string &s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    index.emplace(s, labels.size());
    labels.push_back(s);
    return labels.size() - 1;
  };

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw InputError("line " + std::to_string(lineno) + ": expected `label: successors`");
    std::istringstream head(line.substr(0, colon));
    std::string label, extra;
    head >> label;
    if (!valid_label(label) || (head >> extra))
      throw InputError("line " + std::to_string(lineno) + ": bad label");
    auto from = intern(label);
    std::istringstream rest(line.substr(colon + 1));
    std::string succ;
    while (rest >> succ) {
      if (!valid_label(succ)) throw InputError("line " + std::to_string(lineno) + ": bad successor `" + succ + "`");
      edges.emplace_back(from, intern(succ));
    }
  }
  if (labels.empty()) throw InputError("no points declared");
  return from_covers(std::move(labels), edges);
}

std::vector<std::pair<std::size_t, std::size_t>> ChronoSet::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < size(); ++x)
    for (auto y = succ_[x].find_first(); y != PointSet::npos; y = succ_[x].find_next(y)) {
      // x -> y is a cover when nothing sits strictly between.
      if ((succ_[x] & pred_[y]).none()) out.emplace_back(x, y);
    }
  return out;
}

std::string ChronoSet::serialize() const {
  std::vector<std::vector<std::size_t>> adj(size());
  for (auto [x, y] : covers()) adj[x].push_back(y);
  std::ostringstream out;
  for (std::size_t x = 0; x < size(); ++x) {
    out << labels_[x] << ':';
    for (auto y : adj[x]) out << ' ' << labels_[y];
    out << '\n';
  }
  return out.str();
}

std::size_t ChronoSet::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw InputError("unknown label `" + std::string(label) + "`");
}

PointSet ChronoSet::set_of(const std::vector<std::string> &labels) const {
  PointSet s(size());
  for (const auto &l : labels) s.set(index_of(l));
  return s;
}

bool ChronoSet::satisfies_c1() const {
  for (std::size_t x = 0; x < size(); ++x)
    if (succ_[x].none() && pred_[x].none()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Pasts, futures, closures

PointSet past_of(const ChronoSet &c, const PointSet &a) {
  require_same_size(c, a);
  PointSet out(c.size());
  for (auto y = a.find_first(); y != PointSet::npos; y = a.find_next(y)) out |= c.past_of_point(y);
  return out;
}

PointSet future_of(const ChronoSet &c, const PointSet &a) {
  require_same_size(c, a);
  PointSet out(c.size());
  for (auto y = a.find_first(); y != PointSet::npos; y = a.find_next(y)) out |= c.future_of_point(y);
  return out;
}

DownSet down_of(const ChronoSet &c, const PointSet &a) {
  return DownSet{a | past_of(c, a), Convention::Reflexive};
}

PointSet up_of(const ChronoSet &c, const PointSet &a) { return a | future_of(c, a); }

bool is_down_closed(const ChronoSet &c, const PointSet &a) {
  return past_of(c, a).is_subset_of(a);
}

bool is_up_closed(const ChronoSet &c, const PointSet &a) {
  return future_of(c, a).is_subset_of(a);
}

// ---------------------------------------------------------------------------
// Indecomposability

namespace {

// Decomposition search over local bit masks. `local_pred[i]` holds the
// strict predecessors of member i, restricted to the members.
bool decomposition_free(const std::vector<std::uint32_t> &local_pred) {
  const std::size_t k = local_pred.size();
  const std::uint32_t full = k == 32 ? ~0u : ((1u << k) - 1u);
  for (std::uint32_t a = 1; a < full; ++a) {
    bool closed = true;
    for (std::size_t i = 0; i < k && closed; ++i)
      if ((a >> i & 1u) && (local_pred[i] & ~a)) closed = false;
    if (!closed) continue;
    // Smallest down-set covering the rest of P.
    std::uint32_t b = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (!(a >> i & 1u)) b |= (1u << i) | local_pred[i];
    if (b != full) return false;
  }
  return true;
}

std::vector<std::uint32_t> local_predecessors(const std::vector<std::size_t> &members,
                                              const std::vector<PointSet> &pred) {
  std::vector<std::uint32_t> out(members.size(), 0);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j)
      if (pred[members[i]].test(members[j])) out[i] |= 1u << j;
  return out;
}

bool has_unique_maximal(const ChronoSet &c, const PointSet &p) {
  std::size_t maximal = 0;
  for (auto x = p.find_first(); x != PointSet::npos; x = p.find_next(x))
    if (!c.future_of_point(x).intersects(p)) ++maximal;
  return maximal == 1;
}

bool is_ip_impl(const ChronoSet &c, const PointSet &p, const std::vector<PointSet> &pred) {
  if (p.none()) return false;
  auto members = members_of(p);
  if (members.size() > kMaxExhaustive) {
    // Too large for the exhaustive search; a reflexive down-set is
    // decomposable exactly when it has two distinct maximal points.
    return has_unique_maximal(c, p);
  }
  return decomposition_free(local_predecessors(members, pred));
}

} // namespace

bool is_ip(const ChronoSet &c, const DownSet &p) {
  require_same_size(c, p.members);
  if (p.convention != Convention::Reflexive)
    throw ContractError("is_ip expects a reflexive down-set");
  if (!is_down_closed(c, p.members)) throw ContractError("is_ip: argument is not down-closed");
  std::vector<PointSet> pred(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) pred[x] = c.past_of_point(x);
  return is_ip_impl(c, p.members, pred);
}

bool is_if(const ChronoSet &c, const PointSet &up) {
  require_same_size(c, up);
  if (!is_up_closed(c, up)) throw ContractError("is_if: argument is not up-closed");
  ChronoSet dual = time_dual(c);
  return is_ip(dual, DownSet{up, Convention::Reflexive});
}

bool is_directed_strict(const ChronoSet &c, const PointSet &p) {
  require_same_size(c, p);
  for (auto x = p.find_first(); x != PointSet::npos; x = p.find_next(x))
    for (auto y = p.find_first(); y != PointSet::npos; y = p.find_next(y))
      if (!(c.future_of_point(x) & c.future_of_point(y) & p).any()) return false;
  return true;
}

PointSet future_limits(const ChronoSet &c, const PointSet &a) {
  require_same_size(c, a);
  if (a.none()) throw ContractError("future_limits: A must be non-empty");
  const PointSet below_a = past_of(c, a);
  PointSet out(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    const PointSet &px = c.past_of_point(x);
    if (a.is_subset_of(px) && px.is_subset_of(below_a)) out.set(x);
  }
  return out;
}

IpClass classify_ip(const ChronoSet &c, const DownSet &p) {
  if (!is_ip(c, p)) throw ContractError("classify_ip: argument is not an IP");
  PointSet w = future_limits(c, p.members);
  return IpClass{w.any() ? IpClass::PIP : IpClass::TIP, std::move(w)};
}

// ---------------------------------------------------------------------------
// Enumeration and category flags

std::vector<PointSet> enumerate_down_sets(const ChronoSet &c) {
  const std::size_t n = c.size();
  if (n > kMaxExhaustive) throw ContractError("enumerate_down_sets: too many points");
  std::vector<std::uint32_t> pred(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (auto y = c.past_of_point(x).find_first(); y != PointSet::npos;
         y = c.past_of_point(x).find_next(y))
      pred[x] |= 1u << y;
  std::vector<PointSet> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    bool closed = true;
    for (std::size_t x = 0; x < n && closed; ++x)
      if ((m >> x & 1u) && (pred[x] & ~m)) closed = false;
    if (!closed) continue;
    PointSet s(n);
    for (std::size_t x = 0; x < n; ++x)
      if (m >> x & 1u) s.set(x);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<DownSet> enumerate_ips(const ChronoSet &c) {
  std::vector<DownSet> out;
  if (c.size() <= 16) {
    for (auto &s : enumerate_down_sets(c)) {
      DownSet d{std::move(s), Convention::Reflexive};
      if (is_ip(c, d)) out.push_back(std::move(d));
    }
  } else {
    for (std::size_t x = 0; x < c.size(); ++x) {
      PointSet s(c.size());
      s.set(x);
      out.push_back(down_of(c, s));
    }
  }
  auto top = [&](const DownSet &d) {
    for (auto x = d.members.find_first(); x != PointSet::npos; x = d.members.find_next(x))
      if (!c.future_of_point(x).intersects(d.members)) return x;
    return PointSet::npos;
  };
  std::sort(out.begin(), out.end(),
            [&](const DownSet &a, const DownSet &b) { return top(a) < top(b); });
  return out;
}

CategoryFlags category_flags(const ChronoSet &c) {
  const std::size_t n = c.size();
  CategoryFlags f;

  f.past_regular = true;
  for (std::size_t x = 0; x < n && f.past_regular; ++x) {
    const PointSet &px = c.past_of_point(x);
    if (px.none() || !is_ip(c, DownSet{px, Convention::Reflexive})) f.past_regular = false;
  }

  f.past_determined = true;
  for (std::size_t x = 0; x < n && f.past_determined; ++x) {
    const PointSet &px = c.past_of_point(x);
    if (px.none()) continue;
    for (std::size_t w = 0; w < n && f.past_determined; ++w) {
      if (!px.is_subset_of(c.past_of_point(w))) continue;
      for (std::size_t y = 0; y < n; ++y)
        if (c.precedes(w, y) && !c.precedes(x, y)) {
          f.past_determined = false;
          break;
        }
    }
  }

  f.past_distinguishing = true;
  f.future_distinguishing = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      if (c.past_of_point(x) == c.past_of_point(y)) f.past_distinguishing = false;
      if (c.future_of_point(x) == c.future_of_point(y)) f.future_distinguishing = false;
    }

  f.future_complete = true;
  for (const auto &p : enumerate_ips(c))
    if (classify_ip(c, p).kind != IpClass::PIP) {
      f.future_complete = false;
      break;
    }
  return f;
}

bool is_future_regular(const ChronoSet &c) {
  for (std::size_t x = 0; x < c.size(); ++x) {
    const PointSet &fx = c.future_of_point(x);
    if (fx.none() || !is_if(c, fx)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Future completion

bool completion_precedes(const ChronoSet &c, const DownSet &p, const DownSet &q) {
  require_same_size(c, p.members);
  require_same_size(c, q.members);
  const PointSet candidates = q.members - p.members;
  for (auto x = candidates.find_first(); x != PointSet::npos; x = candidates.find_next(x))
    if (p.members.is_subset_of(c.past_of_point(x))) return true;
  return false;
}

Completion future_completion(const ChronoSet &c) {
  Completion out;
  out.ips = enumerate_ips(c);
  const std::size_t m = out.ips.size();
  if (m == 0) throw ContractError("future_completion: no non-empty IPs");

  std::vector<std::string> labels;
  labels.reserve(m);
  for (const auto &ip : out.ips) {
    std::string l;
    for (auto x = ip.members.find_first(); x != PointSet::npos; x = ip.members.find_next(x))
      if (!c.future_of_point(x).intersects(ip.members)) l = "down(" + c.label(x) + ")";
    labels.push_back(l);
  }
  std::vector<std::vector<bool>> rel(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      rel[i][j] = i != j && completion_precedes(c, out.ips[i], out.ips[j]);
  // from_relation re-validates the completion as a strict order.
  out.order = ChronoSet::from_relation(std::move(labels), rel);

  out.inclusion.assign(c.size(), 0);
  for (std::size_t p = 0; p < c.size(); ++p) {
    PointSet s(c.size());
    s.set(p);
    const DownSet dp = down_of(c, s);
    auto it = std::find(out.ips.begin(), out.ips.end(), dp);
    if (it == out.ips.end()) throw ContractError("principal down-set missing from completion");
    out.inclusion[p] = static_cast<std::size_t>(it - out.ips.begin());
  }
  out.source_flags = category_flags(c);
  return out;
}

// ---------------------------------------------------------------------------
// Morphisms and duality

bool preserves_chronology(const ChronoMap &f) {
  const ChronoSet &src = *f.source;
  const ChronoSet &dst = *f.target;
  if (f.image.size() != src.size()) throw ContractError("map must be total on the source");
  for (auto y : f.image)
    if (y >= dst.size()) throw InputError("map image out of range");
  for (std::size_t x = 0; x < src.size(); ++x)
    for (auto y = src.future_of_point(x).find_first(); y != PointSet::npos;
         y = src.future_of_point(x).find_next(y))
      if (!dst.precedes(f.image[x], f.image[y])) return false;
  return true;
}

bool is_future_continuous(const ChronoMap &f) {
  if (!preserves_chronology(f)) return false;
  const ChronoSet &src = *f.source;
  const ChronoSet &dst = *f.target;

  // Depth-first over all finite chains, extending by strict successors.
  std::vector<std::size_t> chain;
  bool ok = true;
  auto check = [&]() {
    PointSet a(src.size()), fa(dst.size());
    for (auto x : chain) {
      a.set(x);
      fa.set(f.image[x]);
    }
    const PointSet lim = future_limits(src, a);
    const PointSet image_lim = future_limits(dst, fa);
    for (auto w = lim.find_first(); w != PointSet::npos; w = lim.find_next(w))
      if (!image_lim.test(f.image[w])) return false;
    return true;
  };
  auto extend = [&](auto &&self) -> void {
    if (!ok) return;
    if (!check()) {
      ok = false;
      return;
    }
    const PointSet &next = src.future_of_point(chain.back());
    for (auto y = next.find_first(); y != PointSet::npos && ok; y = next.find_next(y)) {
      chain.push_back(y);
      self(self);
      chain.pop_back();
    }
  };
  for (std::size_t x = 0; x < src.size() && ok; ++x) {
    chain.assign(1, x);
    extend(extend);
  }
  return ok;
}

ChronoSet time_dual(const ChronoSet &c) {
  const std::size_t n = c.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) rel[x][y] = c.precedes(y, x);
  return ChronoSet::from_relation(c.labels(), rel);
}

ChronoSet random_chronoset(std::size_t n, double density, std::mt19937_64 &rng) {
  if (n == 0) throw InputError("random_chronoset: n must be positive");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution edge(density);
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (edge(rng)) covers.emplace_back(order[i], order[j]);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
  return ChronoSet::from_covers(std::move(labels), covers);
}

} // namespace clt
