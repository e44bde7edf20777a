#pragma once

// Scenario files: a small TOML subset (sections, arrays of tables, strings,
// numbers, booleans and single-line arrays) and the scenario schema on top.

#include "clt/causal_tools.hpp"
#include "clt/spacetimes.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace clt {

namespace toml {

struct Value {
  std::variant<double, bool, std::string, std::vector<Value>> data;
  int line = 0;

  bool is_number() const { return std::holds_alternative<double>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_array() const { return std::holds_alternative<std::vector<Value>>(data); }
};

struct Table {
  std::map<std::string, Value> entries;
  int line = 0;

  const Value *find(const std::string &key) const;
};

struct Document {
  std::string source;
  Table root;
  std::map<std::string, Table> tables;
  std::map<std::string, std::vector<Table>> arrays;
};

/// Throws InputError("<source>:<line>: ...") on malformed input.
Document parse(std::istream &in, const std::string &source = "<input>");
Document parse_file(const std::string &path);

} // namespace toml

enum class Suite { Finite, Continuum, All };
Suite suite_from_string(const std::string &s);
std::string to_string(Suite s);

enum class SequenceKind { Constant, Alternating, Monotone, Shrinking };

struct SequenceSpec {
  std::string label;
  SequenceKind kind = SequenceKind::Constant;
  std::string region;        // region label (constant, alternating, monotone)
  std::string other_region;  // second region for alternating sequences
  Point centre{0.0, 0.0};    // shrinking singleton
  std::size_t length = 12;
};

struct Scenario {
  std::string name = "default";
  ModelId model = ModelId::Mink2;
  Window window{Frame::Chart, Rect{-2.0, 2.0, -2.0, 2.0}, false};
  double resolution = 0.05;
  std::uint64_t seed = 1;
  Suite suite = Suite::All;
  std::vector<CurveDescriptor> curves;
  std::vector<std::pair<std::string, Region>> regions;
  std::vector<SequenceSpec> sequences;
  std::vector<double> catalogue_params; // null-ray parameters
  std::size_t edge_samples = 21;

  const Region &region(const std::string &label) const;
};

/// Schema violations throw InputError naming the source line and field.
Scenario scenario_from_document(const toml::Document &doc);
Scenario load_scenario(const std::string &path);

} // namespace clt
