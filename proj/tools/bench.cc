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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>

#include <boost/math/distributions/students_t.hpp>

#include "commands.h"

namespace milpenv::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double Mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

// Sample standard deviation; zero below two samples.
double StdDev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double IncumbentObjective(const SolverState& state) {
  return state.incumbent() ? state.incumbent()->objective : kInf;
}

std::vector<std::shared_ptr<const Problem>> BenchInstances(
    const BenchOptions& options, Family family) {
  const GeneratorConfig config =
      PresetConfig(family, options.seed, options.size);
  std::vector<std::shared_ptr<const Problem>> out;
  for (std::uint64_t k = 0; k < options.count; ++k) {
    out.push_back(std::make_shared<const Problem>(Generate(config, k)));
  }
  return out;
}

void CheckBenchOptions(const BenchOptions& options) {
  if (options.families.empty()) throw UsageError("no families selected");
  if (options.count < 1) throw UsageError("--count must be at least 1");
  if (options.repeats < 1) throw UsageError("--repeats must be at least 1");
  if (options.node_limit < 0) throw UsageError("--node-limit must be >= 0");
  PresetConfig(options.families.front(), options.seed, options.size);
}

}  // namespace

OneSampleTTest TTest(const std::vector<double>& samples, double mu) {
  if (samples.size() < 2) {
    throw UsageError("a t-test needs at least two samples");
  }
  OneSampleTTest r;
  r.df = static_cast<int>(samples.size()) - 1;
  r.mean = Mean(samples);
  r.sd = StdDev(samples);
  const double diff = r.mean - mu;
  if (r.sd == 0.0) {
    // Degenerate: the samples are all equal.
    r.t = diff == 0.0 ? 0.0 : std::copysign(kInf, diff);
    r.p_value = diff == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.t = diff / (r.sd / std::sqrt(static_cast<double>(samples.size())));
  const boost::math::students_t dist(r.df);
  r.p_value =
      2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t)));
  return r;
}

std::vector<OverheadRow> BenchOverhead(const BenchOptions& options) {
  CheckBenchOptions(options);
  SolverParams params;
  params.node_limit = options.node_limit;
  SolverParams direct_params = params;
  direct_params.internal_branching = BranchingRule::kFirstFractional;

  std::vector<OverheadRow> rows;
  for (Family family : options.families) {
    for (const auto& problem : BenchInstances(options, family)) {
      OverheadRow row;
      row.instance = problem->name;
      row.env_time = kInf;
      row.direct_time = kInf;
      // Environment-driven: the agent picks the first candidate.
      auto run_env = [&] {
        Environment env = MakeBranchingEnvironment(
            MakeObservationFunction("nothing"),
            RewardFunction(RewardExpr::LpIterations()), params);
        const auto start = Clock::now();
        StepResult r = env.Reset(problem);
        while (!r.done) {
          r = env.Step(std::get<std::vector<int>>(*r.action_set).front());
        }
        row.env_time = std::min(row.env_time, Since(start));
        row.env_nodes = env.state()->nodes_processed();
        row.env_objective = IncumbentObjective(*env.state());
      };
      // Direct: the engine's own rule, no environment in the loop.
      auto run_direct = [&] {
        SolverState state(problem, direct_params);
        const auto start = Clock::now();
        state.RunToCompletion();
        row.direct_time = std::min(row.direct_time, Since(start));
        row.direct_nodes = state.nodes_processed();
        row.direct_objective = IncumbentObjective(state);
      };
      // Alternate which side runs first so cache warmth favors neither.
      for (int rep = 0; rep < options.repeats; ++rep) {
        if (rep % 2 == 0) {
          run_env();
          run_direct();
        } else {
          run_direct();
          run_env();
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

json CmdBenchOverhead(const BenchOptions& options) {
  const std::vector<OverheadRow> rows = BenchOverhead(options);
  json report = {{"node_limit", options.node_limit},
                 {"size", options.size},
                 {"seed", options.seed},
                 {"repeats", options.repeats},
                 {"instances", json::array()}};
  std::vector<double> ratios;
  bool nodes_equal = true;
  bool objectives_equal = true;
  for (const OverheadRow& row : rows) {
    report["instances"].push_back(
        {{"instance", row.instance},
         {"env_time", row.env_time},
         {"direct_time", row.direct_time},
         {"ratio", DoubleToJson(row.ratio())},
         {"env_nodes", row.env_nodes},
         {"direct_nodes", row.direct_nodes},
         {"nodes_equal", row.nodes_equal()},
         {"env_objective", DoubleToJson(row.env_objective)},
         {"direct_objective", DoubleToJson(row.direct_objective)},
         {"objective_equal", row.objective_equal()}});
    ratios.push_back(row.ratio());
    nodes_equal = nodes_equal && row.nodes_equal();
    objectives_equal = objectives_equal && row.objective_equal();
  }
  report["all_nodes_equal"] = nodes_equal;
  report["all_objectives_equal"] = objectives_equal;
  report["mean_ratio"] = DoubleToJson(Mean(ratios));
  if (ratios.size() >= 2) {
    const OneSampleTTest t = TTest(ratios, 1.0);
    report["t_test"] = {{"mu", 1.0},
                        {"mean", DoubleToJson(t.mean)},
                        {"sd", DoubleToJson(t.sd)},
                        {"t", DoubleToJson(t.t)},
                        {"df", t.df},
                        {"p_value", DoubleToJson(t.p_value)}};
  }
  return report;
}

std::vector<FeatureBenchRow> BenchFeatures(const BenchOptions& options,
                                           std::string_view observation,
                                           bool cache) {
  CheckBenchOptions(options);
  MakeObservationFunction(observation, cache);
  SolverParams params;
  params.node_limit = options.node_limit;

  std::vector<FeatureBenchRow> rows;
  for (Family family : options.families) {
    FeatureBenchRow row;
    row.family = ToString(family);
    for (const auto& problem : BenchInstances(options, family)) {
      double best = kInf;
      for (int rep = 0; rep < options.repeats; ++rep) {
        auto f = MakeObservationFunction(observation, cache);
        SolverState state(problem, params);
        double total = 0.0;
        auto start = Clock::now();
        f->BeforeReset(state);
        total += Since(start);
        state.Start();
        while (state.phase() == Phase::kAtDecision) {
          start = Clock::now();
          f->Extract(state, /*done=*/false);
          total += Since(start);
          state.Branch(state.candidates().front());
        }
        best = std::min(best, total);
      }
      row.times.push_back(best);
    }
    row.mean = Mean(row.times);
    row.sd = StdDev(row.times);
    rows.push_back(std::move(row));
  }
  return rows;
}

json CmdBenchFeatures(const BenchOptions& options,
                      std::string_view observation, bool cache) {
  json report = {{"observation", observation},
                 {"cache", cache},
                 {"node_limit", options.node_limit},
                 {"size", options.size},
                 {"seed", options.seed},
                 {"count", options.count},
                 {"repeats", options.repeats},
                 {"families", json::array()}};
  for (const FeatureBenchRow& row :
       BenchFeatures(options, observation, cache)) {
    report["families"].push_back({{"family", row.family},
                                  {"mean", row.mean},
                                  {"sd", row.sd},
                                  {"times", row.times}});
  }
  return report;
}

}  // namespace milpenv::cli
