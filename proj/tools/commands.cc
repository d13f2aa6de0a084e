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

#include "commands.h"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "milpenv/lp_format.h"
#include "milpenv/policies.h"

namespace milpenv::cli {
namespace {

using nlohmann::json;

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       since)
      .count();
}

void WriteText(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw Error("cannot write '" + path.string() + "'");
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json MappingToJson(const ParamMapping& mapping) {
  json j = json::object();
  for (const auto& [name, value] : mapping) j[name] = ValueToJson(value);
  return j;
}

// The environment a rollout or replay runs in.
Environment MakeEnvironment(const std::string& env,
                            const std::string& observation, bool cache,
                            const std::string& reward,
                            const SolverParams& params) {
  auto obs = MakeObservationFunction(observation, cache);
  RewardFunction rf(ParseReward(reward));
  if (env == "branching") {
    return MakeBranchingEnvironment(std::move(obs), std::move(rf), params);
  }
  if (env == "configuring") {
    return MakeConfiguringEnvironment(std::move(obs), std::move(rf), params);
  }
  throw UsageError("unknown environment '" + env +
                   "', expected branching or configuring");
}

// Runs fn(i) for i < n on `jobs` threads. The first exception by index is
// rethrown after all workers finish.
template <typename Fn>
void ParallelFor(std::size_t n, int jobs, Fn fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * length);
  char byte[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(byte, sizeof(byte), "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

GeneratorConfig PresetConfig(Family family, std::uint64_t seed,
                             std::string_view size) {
  if (size == "tiny") return GeneratorConfig::Tiny(family, seed);
  if (size == "small") return GeneratorConfig::Small(family, seed);
  if (size == "default") {
    GeneratorConfig config;
    config.family = family;
    config.seed = seed;
    return config;
  }
  throw UsageError("unknown size '" + std::string(size) +
                   "', expected tiny, small or default");
}

json GeneratorParamsToJson(const GeneratorConfig& config) {
  switch (config.family) {
    case Family::kSetCover: {
      const SetCoverParams& p = config.set_cover;
      return {{"rows", p.rows},
              {"cols", p.cols},
              {"density", p.density},
              {"max_cost", p.max_cost}};
    }
    case Family::kCombAuction: {
      const CombAuctionParams& p = config.comb_auction;
      return {{"items", p.items},
              {"bids", p.bids},
              {"add_prob", p.add_prob},
              {"base_value", p.base_value}};
    }
    case Family::kCapFacility: {
      const CapFacilityParams& p = config.cap_facility;
      return {{"customers", p.customers},
              {"facilities", p.facilities},
              {"ratio", p.ratio}};
    }
    case Family::kIndepSet: {
      const IndepSetParams& p = config.indep_set;
      return {{"nodes", p.nodes},
              {"graph", p.graph == GraphModel::kErdosRenyi ? "er" : "ba"},
              {"edge_prob", p.edge_prob},
              {"affinity", p.affinity}};
    }
  }
  return json::object();
}

json CmdGenerate(const GenerateOptions& options) {
  const GeneratorConfig& config = options.config;
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) {
    throw Error("cannot create '" + options.out_dir.string() +
                "': " + ec.message());
  }
  json manifest = {{"version", 1},
                   {"family", ToString(config.family)},
                   {"seed", config.seed},
                   {"count", options.count},
                   {"params", GeneratorParamsToJson(config)},
                   {"instances", json::array()}};
  for (std::uint64_t k = 0; k < options.count; ++k) {
    const Problem problem = Generate(config, k);
    const std::string text = WriteLpString(problem);
    const std::string file =
        InstanceName(config.family, config.seed, k) + ".lp";
    WriteText(options.out_dir / file, text);
    manifest["instances"].push_back({{"file", file},
                                     {"k", k},
                                     {"bytes", text.size()},
                                     {"sha256", Sha256Hex(text)}});
  }
  WriteText(options.out_dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

ParamMapping ParseMappingArgs(const std::vector<std::string>& pairs) {
  const ParameterSchema schema = SolverParameterSchema();
  ParamMapping mapping;
  for (const std::string& pair : pairs) {
    const std::size_t eq = pair.find('=');
    if (eq == std::string::npos) {
      throw UsageError("expected name=value, got '" + pair + "'");
    }
    const std::string name = pair.substr(0, eq);
    const std::string text = pair.substr(eq + 1);
    const auto spec = std::find_if(
        schema.begin(), schema.end(),
        [&](const ParameterSpec& s) { return s.name == name; });
    if (spec == schema.end()) {
      throw UsageError("unknown solver parameter '" + name + "'");
    }
    std::size_t used = 0;
    try {
      switch (spec->type) {
        case ParameterSpec::Type::kInteger:
          mapping[name] = static_cast<std::int64_t>(std::stoll(text, &used));
          break;
        case ParameterSpec::Type::kReal:
          mapping[name] = std::stod(text, &used);
          break;
        case ParameterSpec::Type::kChoice:
          mapping[name] = text;
          used = text.size();
          break;
      }
    } catch (const std::logic_error&) {
      used = std::string::npos;
    }
    if (used != text.size()) {
      throw UsageError("bad value '" + text + "' for " + name);
    }
  }
  try {
    ApplyParamMapping(SolverParams{}, mapping);
  } catch (const InvalidParameterError& e) {
    throw UsageError(e.what());
  }
  return mapping;
}

std::vector<RolloutRow> RunRollouts(const RolloutOptions& options) {
  // Reject bad flags before any solving starts.
  MakeEnvironment(options.env, options.observation, options.cache,
                  options.reward, options.params);
  const bool configuring = options.env == "configuring";
  if (configuring && !options.policy.empty() && options.policy != "mapping") {
    throw UsageError("the configuring environment plays --set mappings only");
  }
  const std::string policy_name =
      configuring ? "mapping"
                  : (options.policy.empty() ? "first_candidate"
                                            : options.policy);
  if (!configuring) MakePolicy(policy_name);
  if (options.jobs < 1) throw UsageError("--jobs must be at least 1");

  std::set<std::string> stems;
  for (const std::filesystem::path& path : options.instances) {
    if (!std::filesystem::is_regular_file(path)) {
      throw Error("instance file not found: '" + path.string() + "'");
    }
    if (!options.trace_dir.empty() &&
        !stems.insert(path.stem().string()).second) {
      throw UsageError("two instances share the trace name '" +
                       path.stem().string() + "'");
    }
  }
  if (!options.trace_dir.empty()) {
    std::filesystem::create_directories(options.trace_dir);
  }

  std::vector<RolloutRow> rows(options.instances.size());
  ParallelFor(rows.size(), options.jobs, [&](std::size_t i) {
    const std::filesystem::path& path = options.instances[i];
    const auto problem = std::make_shared<const Problem>(ReadLpFile(path));
    Environment env =
        MakeEnvironment(options.env, options.observation, options.cache,
                        options.reward, options.params);
    ActionChooser choose;
    std::shared_ptr<Policy> policy;
    if (configuring) {
      choose = [&](const std::optional<Observation>&, const ActionSet&) {
        return Action(options.mapping);
      };
    } else {
      // One stream per instance index keeps random runs independent of --jobs.
      policy = MakePolicy(policy_name, options.policy_seed + i);
      choose = [policy](const std::optional<Observation>& obs,
                        const ActionSet& set) {
        return Action(policy->Choose(obs, std::get<std::vector<int>>(set)));
      };
    }
    const auto start = std::chrono::steady_clock::now();
    EpisodeRecord record =
        RecordEpisode(env, problem, choose, options.record_observations);
    RolloutRow& row = rows[i];
    row.wall_time = Seconds(start);
    record.instance = path.filename().string();
    record.policy = policy_name;
    row.instance = record.instance;
    row.nodes = env.state()->nodes_processed();
    row.lp_iterations = env.state()->total_lp_iterations();
    row.total_reward = record.TotalReward();
    row.termination_reason = ToString(env.state()->termination_reason());
    if (!options.trace_dir.empty()) {
      row.trace = options.trace_dir / (path.stem().string() + ".trace.json");
      WriteText(row.trace, SerializeTrace(record) + "\n");
    }
  });
  return rows;
}

json CmdRollout(const RolloutOptions& options) {
  const std::vector<RolloutRow> rows = RunRollouts(options);
  json summary = {
      {"env", options.env},
      {"policy", options.env == "configuring"
                     ? "mapping"
                     : (options.policy.empty() ? "first_candidate"
                                               : options.policy)},
      {"observation", options.observation},
      {"reward", ParseReward(options.reward).ToString()},
      {"params", MappingToJson(ToParamMapping(options.params))},
      {"jobs", options.jobs},
      {"instances", json::array()}};
  if (options.env == "configuring") {
    summary["mapping"] = MappingToJson(options.mapping);
  }
  double total = 0.0;
  for (const RolloutRow& row : rows) {
    json j = {{"instance", row.instance},
              {"nodes", row.nodes},
              {"lp_iterations", row.lp_iterations},
              {"total_reward", DoubleToJson(row.total_reward)},
              {"wall_time", row.wall_time},
              {"concurrent", options.jobs > 1},
              {"termination_reason", row.termination_reason}};
    if (!row.trace.empty()) j["trace"] = row.trace.string();
    summary["instances"].push_back(std::move(j));
    total += row.total_reward;
  }
  summary["total_reward"] = DoubleToJson(total);
  return summary;
}

json CmdReplay(const std::filesystem::path& trace,
               const std::filesystem::path& instance) {
  const EpisodeRecord record = ParseTrace(ReadText(trace));
  const auto problem = std::make_shared<const Problem>(ReadLpFile(instance));
  Environment env = MakeEnvironment(
      record.env, record.observation_function, false, record.reward,
      ApplyParamMapping(SolverParams{}, record.params));
  const ReplayReport report = ReplayEpisode(env, problem, record);
  return {{"trace", trace.string()},
          {"instance", instance.string()},
          {"steps", record.steps.size()},
          {"identical", report.identical},
          {"mismatch", report.mismatch}};
}

}  // namespace milpenv::cli
