#include "clt/report.hpp"

#include "clt/errors.hpp"

#include <algorithm>
#include <fstream>

namespace clt {

void Report::add(CheckRecord r) {
  for (const auto &c : checks_)
    if (c.id == r.id) throw ContractError("check " + r.id + " recorded twice");
  checks_.push_back(std::move(r));
}

std::size_t Report::failures() const {
  return std::size_t(std::count_if(checks_.begin(), checks_.end(), [](const CheckRecord &c) { return !c.passed; }));
}

std::vector<std::string> Report::anchors() const {
  std::vector<std::string> out;
  for (const auto &c : checks_) out.push_back(c.anchor);
  return out;
}

nlohmann::json Report::body() const {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["suite"] = suite;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["resolution"] = resolution;
  auto &arr = j["checks"] = nlohmann::json::array();
  for (const auto &c : checks_) {
    arr.push_back({{"id", c.id},
                   {"anchor", c.anchor},
                   {"status", c.passed ? "pass" : "fail"},
                   {"detail", c.detail},
                   {"witness", c.witness},
                   {"tolerances", c.tolerances}});
  }
  j["summary"] = {{"total", checks_.size()}, {"passed", checks_.size() - failures()}, {"failed", failures()}};
  return j;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j = body();
  auto &t = j["timings"] = nlohmann::json::object();
  for (const auto &c : checks_) t[c.id] = c.seconds;
  return j;
}

void Report::write(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write report " + path);
  out << to_json().dump(2) << '\n';
}

int exit_code(const Report &r) { return int(std::min<std::size_t>(r.failures(), 125)); }

} // namespace clt
