#pragma once

// Check records and the versioned JSON report ("clt-report/1").

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace clt {

inline constexpr const char *kReportSchema = "clt-report/1";

struct CheckRecord {
  std::string id;
  /// Stable anchor naming the property under test; equal to the id's module
  /// prefix plus the property name.
  std::string anchor;
  bool passed = false;
  std::string detail;
  nlohmann::json witness = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  double seconds = 0.0;
};

class Report {
public:
  std::string suite;
  std::string scenario;
  std::uint64_t seed = 0;
  double resolution = 0.0;

  void add(CheckRecord r);
  const std::vector<CheckRecord> &checks() const { return checks_; }
  std::size_t failures() const;
  std::vector<std::string> anchors() const;

  /// Everything except timings: identical across runs with equal inputs.
  nlohmann::json body() const;
  /// body() plus a "timings" object.
  nlohmann::json to_json() const;
  void write(const std::string &path) const;

private:
  std::vector<CheckRecord> checks_;
};

/// 0 when every check passed, otherwise the failure count capped at 125.
int exit_code(const Report &r);

} // namespace clt
