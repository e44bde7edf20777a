#include "clt/scenario.hpp"

#include "clt/errors.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace clt {

namespace toml {

const Value *Table::find(const std::string &key) const {
  auto it = entries.find(key);
  return it == entries.end() ? nullptr : &it->second;
}

namespace {

class LineParser {
public:
  LineParser(const std::string &text, const std::string &source, int line)
      : s_(text), source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string &msg) const {
    throw InputError(source_ + ":" + std::to_string(line_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected `") + c + "`");
    ++pos_;
  }

  std::string key() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-'))
      ++pos_;
    if (start == pos_) fail("expected a key");
    return s_.substr(start, pos_ - start);
  }

  Value value() {
    Value v;
    v.line = line_;
    const char c = peek();
    if (c == '"') {
      v.data = string();
    } else if (c == '[') {
      ++pos_;
      std::vector<Value> arr;
      while (peek() != ']') {
        if (at_end()) fail("unterminated array");
        arr.push_back(value());
        if (peek() == ',') ++pos_;
        else if (peek() != ']') fail("expected `,` or `]` in array");
      }
      ++pos_;
      v.data = std::move(arr);
    } else if (s_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      v.data = true;
    } else if (s_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      v.data = false;
    } else {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || std::string("+-._").find(s_[pos_]) != std::string::npos))
        ++pos_;
      const std::string tok = s_.substr(start, pos_ - start);
      std::string cleaned;
      for (char ch : tok)
        if (ch != '_') cleaned += ch;
      if (cleaned == "inf" || cleaned == "+inf") v.data = std::numeric_limits<double>::infinity();
      else if (cleaned == "-inf") v.data = -std::numeric_limits<double>::infinity();
      else {
        char *end = nullptr;
        const double d = std::strtod(cleaned.c_str(), &end);
        if (cleaned.empty() || end != cleaned.c_str() + cleaned.size()) fail("cannot parse value `" + tok + "`");
        v.data = d;
      }
    }
    return v;
  }

private:
  std::string string() {
    ++pos_; // opening quote
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c == '\\') {
        if (pos_ >= s_.size()) break;
        const char e = s_[pos_++];
        switch (e) {
        case 'n': c = '\n'; break;
        case 't': c = '\t'; break;
        case '"': c = '"'; break;
        case '\\': c = '\\'; break;
        default: fail(std::string("unknown escape \\") + e);
        }
      }
      out += c;
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  const std::string &s_;
  const std::string &source_;
  int line_;
  std::size_t pos_ = 0;
};

} // namespace

Document parse(std::istream &in, const std::string &source) {
  Document doc;
  doc.source = source;
  Table *current = &doc.root;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    LineParser p(line, source, lineno);
    if (p.at_end()) continue;
    if (p.peek() == '[') {
      const bool array = line.find("[[") != std::string::npos;
      p.expect('[');
      if (array) p.expect('[');
      const std::string name = p.key();
      p.expect(']');
      if (array) p.expect(']');
      if (!p.at_end()) p.fail("trailing characters after table header");
      if (array) {
        auto &vec = doc.arrays[name];
        vec.emplace_back();
        current = &vec.back();
      } else {
        if (doc.tables.count(name)) p.fail("duplicate table [" + name + "]");
        current = &doc.tables[name];
      }
      current->line = lineno;
      continue;
    }
    const std::string key = p.key();
    p.expect('=');
    Value v = p.value();
    if (!p.at_end()) p.fail("trailing characters after value");
    if (!current->entries.emplace(key, std::move(v)).second) p.fail("duplicate key `" + key + "`");
  }
  return doc;
}

Document parse_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path);
  return parse(in, path);
}

} // namespace toml

// ---------------------------------------------------------------------------

Suite suite_from_string(const std::string &s) {
  if (s == "finite") return Suite::Finite;
  if (s == "continuum") return Suite::Continuum;
  if (s == "all") return Suite::All;
  throw InputError("unknown suite `" + s + "` (expected finite, continuum or all)");
}

std::string to_string(Suite s) {
  switch (s) {
  case Suite::Finite: return "finite";
  case Suite::Continuum: return "continuum";
  case Suite::All: return "all";
  }
  return "?";
}

const Region &Scenario::region(const std::string &label) const {
  for (const auto &[l, r] : regions)
    if (l == label) return r;
  throw InputError("scenario: unknown region `" + label + "`");
}

namespace {

struct Fields {
  const toml::Table &t;
  const std::string &source;
  std::string where;
  std::set<std::string> used;

  [[noreturn]] void fail(int line, const std::string &field, const std::string &msg) const {
    throw InputError(source + ":" + std::to_string(line) + ": " + where + " field `" + field + "` " + msg);
  }
  const toml::Value *get(const std::string &k) {
    used.insert(k);
    return t.find(k);
  }
  double number(const std::string &k, double def) {
    const auto *v = get(k);
    if (!v) return def;
    if (!v->is_number()) fail(v->line, k, "must be a number");
    return std::get<double>(v->data);
  }
  bool boolean(const std::string &k, bool def) {
    const auto *v = get(k);
    if (!v) return def;
    if (!v->is_bool()) fail(v->line, k, "must be true or false");
    return std::get<bool>(v->data);
  }
  std::string string(const std::string &k, const std::string &def) {
    const auto *v = get(k);
    if (!v) return def;
    if (!v->is_string()) fail(v->line, k, "must be a string");
    return std::get<std::string>(v->data);
  }
  std::string required_string(const std::string &k) {
    if (!t.find(k)) fail(t.line, k, "is required");
    return string(k, "");
  }
  std::vector<double> numbers(const std::string &k, std::size_t n = 0) {
    const auto *v = get(k);
    if (!v) return {};
    if (!v->is_array()) fail(v->line, k, "must be an array of numbers");
    std::vector<double> out;
    for (const auto &e : std::get<std::vector<toml::Value>>(v->data)) {
      if (!e.is_number()) fail(v->line, k, "must be an array of numbers");
      out.push_back(std::get<double>(e.data));
    }
    if (n && out.size() != n) fail(v->line, k, "must have " + std::to_string(n) + " entries");
    return out;
  }
  std::vector<std::string> strings(const std::string &k) {
    const auto *v = get(k);
    if (!v) return {};
    if (!v->is_array()) fail(v->line, k, "must be an array of strings");
    std::vector<std::string> out;
    for (const auto &e : std::get<std::vector<toml::Value>>(v->data)) {
      if (!e.is_string()) fail(v->line, k, "must be an array of strings");
      out.push_back(std::get<std::string>(e.data));
    }
    return out;
  }
  Point point(const std::string &k, Point def) {
    auto v = numbers(k, 2);
    return v.empty() ? def : Point{v[0], v[1]};
  }
  void finish() const {
    for (const auto &[k, v] : t.entries)
      if (!used.count(k)) fail(v.line, k, "is not recognised");
  }
};

} // namespace

Scenario scenario_from_document(const toml::Document &doc) {
  Scenario sc;
  const std::string &src = doc.source;
  if (!doc.root.entries.empty()) {
    const auto &[k, v] = *doc.root.entries.begin();
    throw InputError(src + ":" + std::to_string(v.line) + ": key `" + k + "` outside any table");
  }
  for (const auto &[name, t] : doc.tables)
    if (name != "scenario" && name != "catalogue")
      throw InputError(src + ":" + std::to_string(t.line) + ": unknown table [" + name + "]");
  for (const auto &[name, v] : doc.arrays)
    if (name != "curve" && name != "region" && name != "sequence")
      throw InputError(src + ":" + std::to_string(v.front().line) + ": unknown table array [[" + name + "]]");

  if (auto it = doc.tables.find("scenario"); it != doc.tables.end()) {
    Fields f{it->second, src, "[scenario]", {}};
    sc.name = f.string("name", sc.name);
    if (const auto *v = f.get("model")) {
      if (!v->is_string()) f.fail(v->line, "model", "must be a string");
      try {
        sc.model = model_from_string(std::get<std::string>(v->data));
      } catch (const InputError &e) {
        f.fail(v->line, "model", std::string("is invalid: ") + e.what());
      }
    }
    sc.resolution = f.number("resolution", sc.resolution);
    if (!(sc.resolution > 0.0)) f.fail(f.t.find("resolution")->line, "resolution", "must be > 0");
    const double seed = f.number("seed", double(sc.seed));
    if (seed < 0 || seed != std::floor(seed)) f.fail(f.t.find("seed")->line, "seed", "must be a non-negative integer");
    sc.seed = static_cast<std::uint64_t>(seed);
    if (const auto *v = f.get("suite")) {
      if (!v->is_string()) f.fail(v->line, "suite", "must be a string");
      try {
        sc.suite = suite_from_string(std::get<std::string>(v->data));
      } catch (const InputError &e) {
        f.fail(v->line, "suite", e.what());
      }
    }
    if (auto w = f.numbers("window", 4); !w.empty()) {
      if (!(w[1] > w[0]) || !(w[3] > w[2])) f.fail(f.t.find("window")->line, "window", "is degenerate");
      sc.window.rect = Rect{w[0], w[1], w[2], w[3]};
    }
    const std::string frame = f.string("frame", "chart");
    if (frame == "null") sc.window.frame = Frame::Null;
    else if (frame != "chart") f.fail(f.t.find("frame")->line, "frame", "must be \"chart\" or \"null\"");
    sc.window.snap_to_edges = f.boolean("snap", false);
    sc.edge_samples = static_cast<std::size_t>(f.number("edge_samples", double(sc.edge_samples)));
    f.finish();
  }

  if (auto it = doc.tables.find("catalogue"); it != doc.tables.end()) {
    Fields f{it->second, src, "[catalogue]", {}};
    sc.catalogue_params = f.numbers("params");
    if (auto r = f.numbers("range", 3); !r.empty()) {
      if (!(r[2] > 0.0) || r[1] < r[0]) f.fail(f.t.find("range")->line, "range", "must be [lo, hi, step] with step > 0");
      const auto n = static_cast<std::size_t>(std::floor((r[1] - r[0]) / r[2] + 1e-9));
      for (std::size_t i = 0; i <= n; ++i) sc.catalogue_params.push_back(r[0] + double(i) * r[2]);
    }
    f.finish();
  }

  const ModelSpacetime model(sc.model);
  if (auto it = doc.arrays.find("curve"); it != doc.arrays.end())
    for (const auto &t : it->second) {
      Fields f{t, src, "[[curve]]", {}};
      const std::string kind = f.required_string("kind");
      CurveDescriptor c;
      if (kind == "timelike") {
        c = CurveDescriptor::timelike(f.point("offset", {0.0, 0.0}), f.point("direction", {1.0, 0.0}),
                                      f.number("a", 0.0), f.number("b", std::numeric_limits<double>::infinity()));
      } else if (kind == "null_u" || kind == "null_v") {
        const double cc = f.number("c", 0.0);
        c = kind == "null_u" ? CurveDescriptor::null_ray_u(cc) : CurveDescriptor::null_ray_v(cc);
      } else {
        f.fail(t.line, "kind", "must be timelike, null_u or null_v");
      }
      const std::string spacing = f.string("spacing", "linear");
      if (spacing == "geometric") c.spacing = Spacing::Geometric;
      else if (spacing != "linear") f.fail(t.line, "spacing", "must be linear or geometric");
      c.step = f.number("step", 1.0);
      c.label = f.string("label", c.label.empty() ? "curve" + std::to_string(sc.curves.size()) : c.label);
      f.finish();
      sc.curves.push_back(c);
    }

  if (auto it = doc.arrays.find("region"); it != doc.arrays.end())
    for (const auto &t : it->second) {
      Fields f{t, src, "[[region]]", {}};
      const std::string label = f.required_string("label");
      const std::string shape = f.required_string("shape");
      Region r;
      auto ref = [&](const std::string &l) -> const Region & {
        for (const auto &[ll, rr] : sc.regions)
          if (ll == l) return rr;
        f.fail(t.line, "of", "refers to unknown region `" + l + "`");
      };
      if (shape == "rect") {
        auto p = f.numbers("params", 4);
        if (p.empty()) f.fail(t.line, "params", "is required for rect");
        r = Region::rect(p[0], p[1], p[2], p[3]);
      } else if (shape == "ball" || shape == "closed_ball") {
        const Point c = f.point("centre", {0.0, 0.0});
        const double rad = f.number("radius", 1.0);
        r = shape == "ball" ? Region::ball(c, rad) : Region::closed_ball(c, rad);
      } else if (shape == "half_plane") {
        auto p = f.numbers("params", 3);
        if (p.empty()) f.fail(t.line, "params", "is required for half_plane");
        r = Region::half_plane(p[0], p[1], p[2]);
      } else if (shape == "past_cone" || shape == "future_cone") {
        const Point apex = f.point("apex", {0.0, 0.0});
        r = shape == "past_cone" ? Region::past_cone(model, apex) : Region::future_cone(model, apex);
      } else if (shape == "point") {
        r = Region::point(f.point("apex", {0.0, 0.0}));
      } else if (shape == "union" || shape == "intersection") {
        const auto of = f.strings("of");
        if (of.empty()) f.fail(t.line, "of", "needs at least one region");
        r = ref(of[0]);
        for (std::size_t i = 1; i < of.size(); ++i) r = shape == "union" ? (r | ref(of[i])) : (r & ref(of[i]));
      } else if (shape == "complement") {
        const auto of = f.strings("of");
        if (of.size() != 1) f.fail(t.line, "of", "needs exactly one region");
        r = !ref(of[0]);
      } else if (shape == "all") {
        r = Region::all();
      } else if (shape == "none") {
        r = Region::none();
      } else {
        f.fail(t.line, "shape", "is unknown: `" + shape + "`");
      }
      f.finish();
      for (const auto &[l, rr] : sc.regions)
        if (l == label) f.fail(t.line, "label", "duplicates region `" + label + "`");
      sc.regions.emplace_back(label, std::move(r));
    }

  if (auto it = doc.arrays.find("sequence"); it != doc.arrays.end())
    for (const auto &t : it->second) {
      Fields f{t, src, "[[sequence]]", {}};
      SequenceSpec s;
      s.label = f.string("label", "seq" + std::to_string(sc.sequences.size()));
      const std::string kind = f.required_string("kind");
      if (kind == "constant") s.kind = SequenceKind::Constant;
      else if (kind == "alternating") s.kind = SequenceKind::Alternating;
      else if (kind == "monotone") s.kind = SequenceKind::Monotone;
      else if (kind == "shrinking") s.kind = SequenceKind::Shrinking;
      else f.fail(t.line, "kind", "must be constant, alternating, monotone or shrinking");
      s.region = f.string("region", "");
      s.other_region = f.string("other", "");
      s.centre = f.point("centre", {0.0, 0.0});
      const double len = f.number("length", double(s.length));
      if (len < 4 || len != std::floor(len)) f.fail(t.line, "length", "must be an integer >= 4");
      s.length = static_cast<std::size_t>(len);
      if (s.kind != SequenceKind::Shrinking) {
        if (s.region.empty()) f.fail(t.line, "region", "is required for this kind");
        (void)sc.region(s.region);
      }
      if (s.kind == SequenceKind::Alternating) {
        if (s.other_region.empty()) f.fail(t.line, "other", "is required for alternating sequences");
        (void)sc.region(s.other_region);
      }
      f.finish();
      sc.sequences.push_back(s);
    }
  return sc;
}

Scenario load_scenario(const std::string &path) { return scenario_from_document(toml::parse_file(path)); }

} // namespace clt
