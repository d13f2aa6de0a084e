// Copyright 2026 The milpenv Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommands of the milpenv command-line tool, callable without the argument
// parser. Every command returns its report as JSON; the caller decides where
// to print it.

#ifndef MILPENV_TOOLS_COMMANDS_H_
#define MILPENV_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "milpenv/engine.h"
#include "milpenv/envs.h"
#include "milpenv/errors.h"
#include "milpenv/instgen.h"
#include "milpenv/trace.h"

namespace milpenv::cli {

// Bad flag values or combinations. Maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);

// Size presets: "tiny", "small" or "default". Throws UsageError.
GeneratorConfig PresetConfig(Family family, std::uint64_t seed,
                             std::string_view size);

// The family-specific parameters of `config` as a JSON object.
nlohmann::json GeneratorParamsToJson(const GeneratorConfig& config);

struct GenerateOptions {
  GeneratorConfig config;
  std::uint64_t count = 1;
  std::filesystem::path out_dir = ".";
};

// Writes `<family>_<seed>_<k>.lp` for k < count and manifest.json, which
// holds the configuration and one {file, bytes, sha256} entry per instance.
// Returns the manifest.
nlohmann::json CmdGenerate(const GenerateOptions& options);

struct RolloutOptions {
  std::vector<std::filesystem::path> instances;  // LP files
  std::string env = "branching";                  // or "configuring"
  // Branching: a policy name, first_candidate when empty. Configuring:
  // empty or "mapping", which plays `mapping` below.
  std::string policy;
  std::uint64_t policy_seed = 0;
  std::string observation = "nothing";
  bool cache = false;
  std::string reward = "lp_iterations";
  SolverParams params;
  // Configuring only: the mapping applied at the single decision.
  ParamMapping mapping;
  std::filesystem::path trace_dir;  // no traces when empty
  bool record_observations = false;
  int jobs = 1;
};

struct RolloutRow {
  std::string instance;
  std::int64_t nodes = 0;
  std::int64_t lp_iterations = 0;
  double total_reward = 0.0;
  double wall_time = 0.0;
  std::string termination_reason;
  std::filesystem::path trace;  // empty when not written
};

// Runs one episode per instance, in parallel when jobs > 1. Rows follow the
// order of `instances` whatever the job count.
std::vector<RolloutRow> RunRollouts(const RolloutOptions& options);

// Runs the rollouts and returns the summary document.
nlohmann::json CmdRollout(const RolloutOptions& options);

// Replays a trace file against its instance. Returns {identical, mismatch}.
nlohmann::json CmdReplay(const std::filesystem::path& trace,
                         const std::filesystem::path& instance);

// Parses "name=value" pairs against the solver parameter schema: integers,
// reals or choice names as the schema dictates. Throws UsageError.
ParamMapping ParseMappingArgs(const std::vector<std::string>& pairs);

struct BenchOptions {
  std::vector<Family> families = {std::begin(kAllFamilies),
                                  std::end(kAllFamilies)};
  std::uint64_t count = 13;
  std::uint64_t seed = 0;
  std::string size = "small";
  std::int64_t node_limit = 100;
  int repeats = 4;  // timings keep the fastest of this many runs
};

struct OverheadRow {
  std::string instance;
  double env_time = 0.0;
  double direct_time = 0.0;
  std::int64_t env_nodes = 0;
  std::int64_t direct_nodes = 0;
  double env_objective = 0.0;
  double direct_objective = 0.0;

  double ratio() const { return env_time / direct_time; }
  bool nodes_equal() const { return env_nodes == direct_nodes; }
  // Exact comparison; both sides are +inf without an incumbent.
  bool objective_equal() const { return env_objective == direct_objective; }
};

struct OneSampleTTest {
  double mean = 0.0;
  double sd = 0.0;
  double t = 0.0;
  double p_value = 1.0;  // two-sided
  int df = 0;
};

// Tests mean(samples) == mu. Needs at least two samples.
OneSampleTTest TTest(const std::vector<double>& samples, double mu);

// Times an environment-driven first_candidate rollout (nothing observation)
// against a direct FIRST_FRACTIONAL solve on every instance. The two runs of
// one instance alternate, repeats times, and each keeps its fastest time.
std::vector<OverheadRow> BenchOverhead(const BenchOptions& options);
nlohmann::json CmdBenchOverhead(const BenchOptions& options);

struct FeatureBenchRow {
  std::string family;
  std::vector<double> times;  // per instance, extraction only
  double mean = 0.0;
  double sd = 0.0;
};

// Accumulates observation extraction time over first_candidate episodes.
std::vector<FeatureBenchRow> BenchFeatures(const BenchOptions& options,
                                           std::string_view observation,
                                           bool cache);
nlohmann::json CmdBenchFeatures(const BenchOptions& options,
                                std::string_view observation, bool cache);

}  // namespace milpenv::cli

#endif  // MILPENV_TOOLS_COMMANDS_H_
