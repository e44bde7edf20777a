#pragma once

// Verification suites behind the command-line tool, plus the scripted
// workloads they draw from.

#include "clt/cboundary.hpp"
#include "clt/chronoset.hpp"
#include "clt/report.hpp"
#include "clt/scenario.hpp"
#include "clt/setlimits.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace clt {

struct VerifyOptions {
  Suite suite = Suite::All;
  std::uint64_t seed = 1;
  double resolution = 0.05;
  /// Chart window for the Mink2 chain checks.
  Rect window{-2.0, 2.0, -2.0, 2.0};
  std::string scenario = "default";

  std::size_t finite_instances = 60;
  std::size_t finite_max_n = 10;
  std::size_t limit_sequences = 200;
  std::size_t lipschitz_pairs = 200000;
  std::size_t grid_sequences = 20;
  std::size_t chains = 20;
  std::size_t vstrip_entries = 100;
  /// Null-ray parameters of the boundary catalogue.
  std::vector<double> catalogue_params;
  std::size_t edge_samples = 21;
};

/// -5, -4.5, ..., 5.
std::vector<double> default_catalogue_params();
/// Diamond u, v in [-8, 8] of the Mink2 plane: every catalogue half-plane
/// and every psi pull-back fits inside it without truncation artefacts.
Window catalogue_window();

Report run_verify(const VerifyOptions &opts);
/// Catalogue build, table export and achronality. Writes the table to
/// `table_path` and per-entry profiles under `profile_dir` when non-empty.
/// Curves declared by `scenario` are resolved to completion points.
Report run_boundary(const VerifyOptions &opts, const std::string &table_path, const std::string &profile_dir,
                    const Scenario *scenario = nullptr);
/// Scenario sequences when declared, otherwise the scripted grid workload.
Report run_limits(const VerifyOptions &opts, const Scenario *scenario);
Report run_conformal(const VerifyOptions &opts);
Report run_scri(const VerifyOptions &opts, const std::string &table_path);

// ---------------------------------------------------------------------------
// Scripted workloads

/// {down(x)} for every point x.
std::vector<PointSet> principal_catalogue(const ChronoSet &c);

/// Length-12 sequences of principal down-sets (the finite IPs) with tail
/// start 4: constant, period 2 and 3, climbing chains, eventually constant.
std::vector<MembershipSequence> scripted_finite_sequences(const ChronoSet &c, std::size_t count,
                                                          std::mt19937_64 &rng);

struct ScriptedSequence {
  std::string kind;
  SetSequence seq;
  /// The closed limit when it exists.
  std::optional<SampledSet> expected;
};

/// Constant balls, alternating far-apart balls, growing balls and closed
/// balls shrinking onto a grid point, cycling through the four kinds.
std::vector<ScriptedSequence> scripted_grid_sequences(const CloudPtr &cloud, std::size_t count,
                                                      std::mt19937_64 &rng);

/// Sequence built from a scenario declaration on `cloud`.
ScriptedSequence sequence_from_spec(const Scenario &sc, const SequenceSpec &spec, const CloudPtr &cloud);

} // namespace clt
