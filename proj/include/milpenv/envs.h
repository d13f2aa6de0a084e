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

// Reinforcement-learning style environments over the solver.
//
//   Environment env = MakeBranchingEnvironment(
//       MakeObservationFunction("candidates"),
//       RewardFunction(ParseReward("nnodes")));
//   StepResult r = env.Reset(problem);
//   while (!r.done) {
//     r = env.Step(std::get<std::vector<int>>(*r.action_set).front());
//   }
//
// Unlike the usual gym loop, Reset() takes the instance, may return a
// terminal state, and returns a reward: the metric accrued before the first
// decision point. Dynamics only drive the solver; observation and reward
// functions are kept separate and composed by the Environment.

#ifndef MILPENV_ENVS_H_
#define MILPENV_ENVS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "milpenv/engine.h"
#include "milpenv/features.h"
#include "milpenv/rewards.h"

namespace milpenv {

using Value = std::variant<std::int64_t, double, std::string>;
using ParamMapping = std::map<std::string, Value>;

struct ParameterSpec {
  enum class Type { kInteger, kReal, kChoice };
  std::string name;
  Type type = Type::kReal;
  double min = -kInf;  // numeric types only
  double max = kInf;   // inclusive
  bool min_inclusive = true;
  std::vector<std::string> choices;  // kChoice only
  Value default_value;

  bool operator==(const ParameterSpec&) const = default;
};
using ParameterSchema = std::vector<ParameterSpec>;

// The six SolverParams fields with their defaults from `defaults`.
ParameterSchema SolverParameterSchema(const SolverParams& defaults = {});

// Copies `defaults` and applies `mapping`. Throws InvalidParameterError on
// unknown names, wrong types and out-of-range values.
SolverParams ApplyParamMapping(const SolverParams& defaults,
                               const ParamMapping& mapping);

// The inverse of ApplyParamMapping for all six fields.
ParamMapping ToParamMapping(const SolverParams& params);

using Action = std::variant<int, ParamMapping>;
using ActionSet = std::variant<std::vector<int>, ParameterSchema>;
using Info = std::map<std::string, Value>;

struct StepResult {
  std::optional<Observation> observation;
  std::optional<ActionSet> action_set;  // absent when done
  double reward = 0.0;
  bool done = false;
  Info info;
};

struct DynamicsResult {
  bool done = false;
  std::optional<ActionSet> action_set;
};

class Dynamics {
 public:
  virtual ~Dynamics() = default;
  virtual std::string name() const = 0;
  virtual DynamicsResult ResetDynamics(SolverState& state) = 0;
  virtual DynamicsResult StepDynamics(SolverState& state,
                                      const Action& action) = 0;
};

// One decision per branch-and-bound node; actions are candidate indices.
class BranchingDynamics : public Dynamics {
 public:
  std::string name() const override { return "branching"; }
  DynamicsResult ResetDynamics(SolverState& state) override;
  DynamicsResult StepDynamics(SolverState& state,
                              const Action& action) override;
};

// One decision per episode: a partial parameter mapping, after which the
// solver runs to completion.
class ConfiguringDynamics : public Dynamics {
 public:
  std::string name() const override { return "configuring"; }
  DynamicsResult ResetDynamics(SolverState& state) override;
  DynamicsResult StepDynamics(SolverState& state,
                              const Action& action) override;
};

class Environment {
 public:
  // `params` are the solver parameters of every episode; for Configuring
  // they are the defaults actions are merged into.
  Environment(std::unique_ptr<Dynamics> dynamics,
              std::unique_ptr<ObservationFunction> observation,
              RewardFunction reward, SolverParams params = {});

  // Throws InvalidProblemError for a null or invalid problem, and whatever
  // the solver throws (the episode is then over).
  StepResult Reset(std::shared_ptr<const Problem> problem);

  // Throws PreconditionError outside an episode. InvalidActionError and
  // InvalidParameterError leave the episode usable.
  StepResult Step(const Action& action);

  bool in_episode() const { return in_episode_; }
  const SolverState* state() const { return state_.get(); }
  const Dynamics& dynamics() const { return *dynamics_; }
  const ObservationFunction& observation_function() const {
    return *observation_;
  }
  const RewardFunction& reward_function() const { return reward_; }
  const SolverParams& params() const { return params_; }

 private:
  StepResult Finish(const DynamicsResult& r);

  std::unique_ptr<Dynamics> dynamics_;
  std::unique_ptr<ObservationFunction> observation_;
  RewardFunction reward_;
  SolverParams params_;
  std::unique_ptr<SolverState> state_;
  bool in_episode_ = false;
};

// Info keys: nodes_processed, lp_iterations, dual_bound and
// incumbent_objective (both in the problem's original sense, the latter
// +/-inf without incumbent), plus termination_reason once done.
Info MakeInfo(const SolverState& state, bool done);

Environment MakeBranchingEnvironment(
    std::unique_ptr<ObservationFunction> observation, RewardFunction reward,
    SolverParams params = {});
Environment MakeConfiguringEnvironment(
    std::unique_ptr<ObservationFunction> observation, RewardFunction reward,
    SolverParams params = {});

// "branching" or "configuring". Throws InvalidParameterError.
std::unique_ptr<Dynamics> MakeDynamics(const std::string& name);

}  // namespace milpenv

#endif  // MILPENV_ENVS_H_
