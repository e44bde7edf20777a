#include "clt/errors.hpp"
#include "clt/verify.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>

namespace {

struct Common {
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::optional<double> resolution;
  std::vector<double> window;
  std::string report;
  std::string profiles;
  std::string scenario;
  std::string table;
};

void add_common(CLI::App *sub, Common &c, bool with_suite) {
  if (with_suite)
    sub->add_option("--suite", c.suite, "finite, continuum or all")
        ->check(CLI::IsMember({"finite", "continuum", "all"}));
  sub->add_option("--seed", c.seed, "RNG seed");
  sub->add_option("--resolution", c.resolution, "sample spacing h")->check(CLI::PositiveNumber);
  sub->add_option("--window", c.window, "t_lo t_hi x_lo x_hi")->expected(4);
  sub->add_option("--report", c.report, "JSON report path");
  sub->add_option("--emit-profiles", c.profiles, "directory for per-entry distance profiles");
  sub->add_option("--scenario", c.scenario, "scenario file")->check(CLI::ExistingFile);
  sub->add_option("--table", c.table, "CSV table path");
}

// Scenario values first, then explicit flags on top.
clt::VerifyOptions resolve(const Common &c, std::optional<clt::Scenario> &sc) {
  clt::VerifyOptions o;
  if (!c.scenario.empty()) {
    sc = clt::load_scenario(c.scenario);
    o.suite = sc->suite;
    o.seed = sc->seed;
    o.resolution = sc->resolution;
    if (sc->window.frame == clt::Frame::Chart) o.window = sc->window.rect;
    o.scenario = sc->name;
    o.catalogue_params = sc->catalogue_params;
    o.edge_samples = sc->edge_samples;
  }
  if (!c.suite.empty()) o.suite = clt::suite_from_string(c.suite);
  if (c.seed) o.seed = *c.seed;
  if (c.resolution) o.resolution = *c.resolution;
  if (!c.window.empty()) {
    o.window = clt::Rect{c.window[0], c.window[1], c.window[2], c.window[3]};
    if (!(o.window.lo0 < o.window.hi0 && o.window.lo1 < o.window.hi1))
      throw clt::InputError("--window: degenerate rectangle");
  }
  return o;
}

int finish(const clt::Report &rep, const Common &c) {
  for (const auto &ch : rep.checks())
    std::cout << (ch.passed ? "PASS " : "FAIL ") << ch.id << "  " << ch.detail << '\n';
  std::cout << rep.checks().size() - rep.failures() << '/' << rep.checks().size() << " checks passed\n";
  if (!c.report.empty()) rep.write(c.report);
  return clt::exit_code(rep);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Causal boundary toolkit"};
  app.require_subcommand(1);
  Common c;
  auto *verify = app.add_subcommand("verify", "run the verification suites");
  auto *boundary = app.add_subcommand("boundary", "build and export the Mink2 boundary catalogue");
  auto *limits = app.add_subcommand("limits", "set-sequence limits");
  auto *conformal = app.add_subcommand("conformal", "conformal extension checks");
  auto *scri = app.add_subcommand("scri", "null infinity classification");
  add_common(verify, c, true);
  for (auto *s : {boundary, limits, conformal, scri}) add_common(s, c, false);

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<clt::Scenario> sc;
    const clt::VerifyOptions o = resolve(c, sc);
    const clt::Scenario *scp = sc ? &*sc : nullptr;
    if (*verify) return finish(clt::run_verify(o), c);
    if (*boundary) return finish(clt::run_boundary(o, c.table, c.profiles, scp), c);
    if (*limits) return finish(clt::run_limits(o, scp), c);
    if (*conformal) return finish(clt::run_conformal(o), c);
    return finish(clt::run_scri(o, c.table), c);
  } catch (const clt::InputError &e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 126;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 127;
  }
}
