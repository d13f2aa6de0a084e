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

// The milpenv command-line tool. Exit codes: 0 success, 2 usage error,
// 1 runtime error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "milpenv/errors.h"

namespace milpenv::cli {
namespace {

constexpr int kUsageExit = 2;
constexpr int kRuntimeExit = 1;

const std::vector<std::string> kFamilyNames = {"set_cover", "comb_auction",
                                               "cap_facility", "indep_set"};
const std::vector<std::string> kSizes = {"tiny", "small", "default"};
const std::vector<std::string> kObservations = {"nothing", "bipartite",
                                                "candidates"};

// Prints `doc` to `out`, or to stdout when `out` is empty.
void Emit(const nlohmann::json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream file(out, std::ios::binary);
  file << doc.dump(2) << "\n";
  file.close();
  if (!file) throw Error("cannot write '" + out + "'");
}

Family ParseFamily(const std::string& name) {
  const std::optional<Family> family = FamilyFromString(name);
  if (!family) throw UsageError("unknown family '" + name + "'");
  return *family;
}

struct GenerateFlags {
  std::string family;
  std::uint64_t seed = 0;
  std::uint64_t count = 1;
  std::string out_dir = ".";
  std::string size = "default";
  std::optional<int> rows, cols, max_cost, items, bids, base_value, customers,
      facilities, nodes, affinity;
  std::optional<double> density, add_prob, ratio, edge_prob;
  std::optional<std::string> graph;

  GenerateOptions ToOptions() const {
    GenerateOptions o;
    o.config = PresetConfig(ParseFamily(family), seed, size);
    o.count = count;
    o.out_dir = out_dir;
    GeneratorConfig& c = o.config;
    if (rows) c.set_cover.rows = *rows;
    if (cols) c.set_cover.cols = *cols;
    if (density) c.set_cover.density = *density;
    if (max_cost) c.set_cover.max_cost = *max_cost;
    if (items) c.comb_auction.items = *items;
    if (bids) c.comb_auction.bids = *bids;
    if (add_prob) c.comb_auction.add_prob = *add_prob;
    if (base_value) c.comb_auction.base_value = *base_value;
    if (customers) c.cap_facility.customers = *customers;
    if (facilities) c.cap_facility.facilities = *facilities;
    if (ratio) c.cap_facility.ratio = *ratio;
    if (nodes) c.indep_set.nodes = *nodes;
    if (graph) {
      c.indep_set.graph = *graph == "er" ? GraphModel::kErdosRenyi
                                         : GraphModel::kBarabasiAlbert;
    }
    if (edge_prob) c.indep_set.edge_prob = *edge_prob;
    if (affinity) c.indep_set.affinity = *affinity;
    return o;
  }
};

void AddGenerate(CLI::App& app, GenerateFlags& f) {
  CLI::App* cmd = app.add_subcommand(
      "generate", "Write generated instances as LP files plus manifest.json");
  cmd->add_option("--family", f.family, "Instance family")
      ->required()
      ->check(CLI::IsMember(kFamilyNames));
  cmd->add_option("--seed", f.seed, "Generator seed");
  cmd->add_option("--count", f.count, "Number of instances")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out-dir", f.out_dir, "Output directory");
  cmd->add_option("--size", f.size, "Size preset before overrides")
      ->check(CLI::IsMember(kSizes));
  cmd->add_option("--rows", f.rows, "set_cover: rows");
  cmd->add_option("--cols", f.cols, "set_cover: columns");
  cmd->add_option("--density", f.density, "set_cover: matrix density");
  cmd->add_option("--max-cost", f.max_cost, "set_cover: largest cost");
  cmd->add_option("--items", f.items, "comb_auction: items");
  cmd->add_option("--bids", f.bids, "comb_auction: bids");
  cmd->add_option("--add-prob", f.add_prob,
                  "comb_auction: chance an item joins a bundle");
  cmd->add_option("--base-value", f.base_value,
                  "comb_auction: per-item value");
  cmd->add_option("--customers", f.customers, "cap_facility: customers");
  cmd->add_option("--facilities", f.facilities, "cap_facility: facilities");
  cmd->add_option("--ratio", f.ratio,
                  "cap_facility: total capacity over total demand");
  cmd->add_option("--nodes", f.nodes, "indep_set: graph nodes");
  cmd->add_option("--graph", f.graph, "indep_set: er or ba")
      ->check(CLI::IsMember({"er", "ba"}));
  cmd->add_option("--edge-prob", f.edge_prob, "indep_set: er edge chance");
  cmd->add_option("--affinity", f.affinity,
                  "indep_set: ba edges per new node");
}

struct RolloutFlags {
  std::vector<std::string> instances;
  std::string env = "branching";
  std::string policy;
  std::uint64_t policy_seed = 0;
  std::string obs = "nothing";
  bool cache = false;
  std::string reward = "lp_iterations";
  std::optional<std::int64_t> node_limit;
  std::optional<double> time_limit;
  std::vector<std::string> params;
  std::vector<std::string> set;
  std::string trace_dir;
  bool record_observations = false;
  int jobs = 1;
  std::string out;

  RolloutOptions ToOptions() const {
    RolloutOptions o;
    o.instances.assign(instances.begin(), instances.end());
    o.env = env;
    o.policy = policy;
    o.policy_seed = policy_seed;
    o.observation = obs;
    o.cache = cache;
    o.reward = reward;
    ParamMapping solver = ParseMappingArgs(params);
    if (node_limit) solver["node_limit"] = *node_limit;
    if (time_limit) solver["time_limit"] = *time_limit;
    try {
      o.params = ApplyParamMapping(SolverParams{}, solver);
    } catch (const InvalidParameterError& e) {
      throw UsageError(e.what());
    }
    o.mapping = ParseMappingArgs(set);
    if (!set.empty() && env != "configuring") {
      throw UsageError("--set applies to the configuring environment only");
    }
    o.trace_dir = trace_dir;
    o.record_observations = record_observations;
    o.jobs = jobs;
    return o;
  }
};

void AddRollout(CLI::App& app, RolloutFlags& f) {
  CLI::App* cmd =
      app.add_subcommand("rollout", "Run one episode per LP file");
  cmd->add_option("instances", f.instances, "LP files")->required();
  cmd->add_option("--env", f.env, "Environment")
      ->check(CLI::IsMember({"branching", "configuring"}));
  cmd->add_option("--policy", f.policy,
                  "first_candidate, random_candidate or most_fractional");
  cmd->add_option("--policy-seed", f.policy_seed,
                  "Seed of random_candidate; instance i uses seed + i");
  cmd->add_option("--obs", f.obs, "Observation function")
      ->check(CLI::IsMember(kObservations));
  cmd->add_flag("--cache", f.cache, "Cache static bipartite features");
  cmd->add_option("--reward", f.reward, "Reward expression text");
  cmd->add_option("--node-limit", f.node_limit, "Solver node limit");
  cmd->add_option("--time-limit", f.time_limit, "Solver time limit (s)");
  cmd->add_option("--param", f.params,
                  "Solver parameter as name=value (repeatable)");
  cmd->add_option("--set", f.set,
                  "Configuring action entry as name=value (repeatable)");
  cmd->add_option("--trace-dir", f.trace_dir,
                  "Write <instance>.trace.json files here");
  cmd->add_flag("--record-observations", f.record_observations,
                "Store observations in the traces");
  cmd->add_option("--jobs", f.jobs, "Concurrent episodes")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Summary file (default stdout)");
}

struct ReplayFlags {
  std::string trace;
  std::string instance;
};

void AddReplay(CLI::App& app, ReplayFlags& f) {
  CLI::App* cmd = app.add_subcommand(
      "replay", "Replay a trace and check it is reproduced bit for bit");
  cmd->add_option("--trace", f.trace, "Trace file")->required();
  cmd->add_option("--instance", f.instance, "LP file of the episode")
      ->required();
}

struct BenchFlags {
  std::vector<std::string> families = kFamilyNames;
  std::uint64_t count = 13;
  std::uint64_t seed = 0;
  std::string size = "small";
  std::int64_t node_limit = 100;
  int repeats = 4;
  std::string obs = "bipartite";
  std::string cache = "on";
  std::string out;

  BenchOptions ToOptions() const {
    BenchOptions o;
    o.families.clear();
    for (const std::string& name : families) {
      o.families.push_back(ParseFamily(name));
    }
    o.count = count;
    o.seed = seed;
    o.size = size;
    o.node_limit = node_limit;
    o.repeats = repeats;
    return o;
  }
};

CLI::App* AddBenchCommon(CLI::App& app, const char* name, const char* help,
                         BenchFlags& f) {
  CLI::App* cmd = app.add_subcommand(name, help);
  cmd->add_option("--families", f.families, "Families to generate")
      ->check(CLI::IsMember(kFamilyNames));
  cmd->add_option("--count", f.count, "Instances per family")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Generator seed");
  cmd->add_option("--size", f.size, "Size preset")
      ->check(CLI::IsMember(kSizes));
  cmd->add_option("--node-limit", f.node_limit, "Solver node limit")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--repeats", f.repeats, "Timing repeats, fastest kept")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Report file (default stdout)");
  return cmd;
}

int Run(int argc, char** argv) {
  CLI::App app{"Controllable MILP solver environments"};
  app.require_subcommand(1);
  GenerateFlags generate;
  RolloutFlags rollout;
  ReplayFlags replay;
  BenchFlags overhead;
  BenchFlags features;
  AddGenerate(app, generate);
  AddRollout(app, rollout);
  AddReplay(app, replay);
  AddBenchCommon(app, "bench-overhead",
                 "Time env-driven against direct branch-and-bound", overhead);
  CLI::App* bf = AddBenchCommon(app, "bench-features",
                                "Time observation extraction per family",
                                features);
  bf->add_option("--obs", features.obs, "Observation function")
      ->check(CLI::IsMember(kObservations));
  bf->add_option("--cache", features.cache, "Static feature cache")
      ->check(CLI::IsMember({"on", "off"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    if (app.got_subcommand("generate")) {
      Emit(CmdGenerate(generate.ToOptions()), "");
    } else if (app.got_subcommand("rollout")) {
      Emit(CmdRollout(rollout.ToOptions()), rollout.out);
    } else if (app.got_subcommand("replay")) {
      const nlohmann::json report = CmdReplay(replay.trace, replay.instance);
      Emit(report, "");
      if (!report["identical"].get<bool>()) return kRuntimeExit;
    } else if (app.got_subcommand("bench-overhead")) {
      Emit(CmdBenchOverhead(overhead.ToOptions()), overhead.out);
    } else if (app.got_subcommand("bench-features")) {
      Emit(CmdBenchFeatures(features.ToOptions(), features.obs,
                            features.cache == "on"),
           features.out);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageExit;
  } catch (const RewardParseError& e) {
    std::cerr << "usage error: bad reward expression " << e.what() << "\n";
    return kUsageExit;
  } catch (const InvalidParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeExit;
  }
  return 0;
}

}  // namespace
}  // namespace milpenv::cli

int main(int argc, char** argv) { return milpenv::cli::Run(argc, argv); }
