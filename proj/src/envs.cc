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

#include "milpenv/envs.h"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "milpenv/errors.h"

namespace milpenv {
namespace {

constexpr double kMaxInt64AsDouble = 9223372036854775807.0;

std::int64_t ToInteger(const ParameterSpec& spec, const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* d = std::get_if<double>(&v)) {
    if (std::isfinite(*d) && *d == std::floor(*d) && std::fabs(*d) < 9.2e18) {
      return static_cast<std::int64_t>(*d);
    }
  }
  throw InvalidParameterError("parameter '" + spec.name +
                              "' expects an integer");
}

double ToReal(const ParameterSpec& spec, const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) {
    return static_cast<double>(*i);
  }
  if (const auto* d = std::get_if<double>(&v)) return *d;
  throw InvalidParameterError("parameter '" + spec.name + "' expects a number");
}

void CheckRange(const ParameterSpec& spec, double x) {
  const bool low_ok = spec.min_inclusive ? x >= spec.min : x > spec.min;
  if (!(low_ok && x <= spec.max)) {
    throw InvalidParameterError("parameter '" + spec.name +
                                "' is out of range");
  }
}

const std::string& ToChoice(const ParameterSpec& spec, const Value& v) {
  const auto* s = std::get_if<std::string>(&v);
  if (s == nullptr) {
    throw InvalidParameterError("parameter '" + spec.name +
                                "' expects a string");
  }
  for (const std::string& c : spec.choices) {
    if (c == *s) return *s;
  }
  throw InvalidParameterError("parameter '" + spec.name +
                              "' has no choice '" + *s + "'");
}

}  // namespace

ParameterSchema SolverParameterSchema(const SolverParams& d) {
  using Type = ParameterSpec::Type;
  ParameterSchema schema;
  schema.push_back({"node_limit", Type::kInteger, 0.0, kMaxInt64AsDouble,
                    true, {}, Value(d.node_limit)});
  schema.push_back(
      {"time_limit", Type::kReal, 0.0, kInf, false, {}, Value(d.time_limit)});
  schema.push_back(
      {"gap_tol", Type::kReal, 0.0, kInf, true, {}, Value(d.gap_tol)});
  schema.push_back({"node_selection", Type::kChoice, -kInf, kInf, true,
                    {"best_bound", "dfs"},
                    Value(std::string(ToString(d.node_selection)))});
  schema.push_back({"internal_branching", Type::kChoice, -kInf, kInf, true,
                    {"first_fractional", "most_fractional", "pseudocost"},
                    Value(std::string(ToString(d.internal_branching)))});
  schema.push_back({"seed", Type::kInteger, 0.0, kMaxInt64AsDouble, true, {},
                    Value(static_cast<std::int64_t>(d.seed))});
  return schema;
}

SolverParams ApplyParamMapping(const SolverParams& defaults,
                               const ParamMapping& mapping) {
  const ParameterSchema schema = SolverParameterSchema(defaults);
  SolverParams p = defaults;
  for (const auto& [name, value] : mapping) {
    const ParameterSpec* spec = nullptr;
    for (const ParameterSpec& s : schema) {
      if (s.name == name) spec = &s;
    }
    if (spec == nullptr) {
      throw InvalidParameterError("unknown parameter '" + name + "'");
    }
    if (name == "node_limit") {
      const std::int64_t v = ToInteger(*spec, value);
      CheckRange(*spec, static_cast<double>(v));
      p.node_limit = v;
    } else if (name == "time_limit") {
      const double v = ToReal(*spec, value);
      CheckRange(*spec, v);
      p.time_limit = v;
    } else if (name == "gap_tol") {
      const double v = ToReal(*spec, value);
      CheckRange(*spec, v);
      p.gap_tol = v;
    } else if (name == "node_selection") {
      p.node_selection = *NodeSelectionFromString(ToChoice(*spec, value));
    } else if (name == "internal_branching") {
      p.internal_branching = *BranchingRuleFromString(ToChoice(*spec, value));
    } else if (name == "seed") {
      const std::int64_t v = ToInteger(*spec, value);
      if (v < 0) {
        throw InvalidParameterError("parameter 'seed' is out of range");
      }
      p.seed = static_cast<std::uint64_t>(v);
    }
  }
  p.Validate();
  return p;
}

ParamMapping ToParamMapping(const SolverParams& params) {
  return {
      {"node_limit", Value(params.node_limit)},
      {"time_limit", Value(params.time_limit)},
      {"gap_tol", Value(params.gap_tol)},
      {"node_selection", Value(std::string(ToString(params.node_selection)))},
      {"internal_branching",
       Value(std::string(ToString(params.internal_branching)))},
      {"seed", Value(static_cast<std::int64_t>(params.seed))},
  };
}

// ---------------------------------------------------------------------------

DynamicsResult BranchingDynamics::ResetDynamics(SolverState& state) {
  state.Start();
  if (state.phase() == Phase::kFinished) return {true, std::nullopt};
  return {false, ActionSet(state.candidates())};
}

DynamicsResult BranchingDynamics::StepDynamics(SolverState& state,
                                               const Action& action) {
  const int* var = std::get_if<int>(&action);
  if (var == nullptr) {
    throw InvalidActionError("branching expects a variable index");
  }
  state.Branch(*var);
  if (state.phase() == Phase::kFinished) return {true, std::nullopt};
  return {false, ActionSet(state.candidates())};
}

DynamicsResult ConfiguringDynamics::ResetDynamics(SolverState& state) {
  return {false, ActionSet(SolverParameterSchema(state.params()))};
}

DynamicsResult ConfiguringDynamics::StepDynamics(SolverState& state,
                                                 const Action& action) {
  const auto* mapping = std::get_if<ParamMapping>(&action);
  if (mapping == nullptr) {
    throw InvalidActionError("configuring expects a parameter mapping");
  }
  state.SetParams(ApplyParamMapping(state.params(), *mapping));
  state.RunToCompletion();
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------

Environment::Environment(std::unique_ptr<Dynamics> dynamics,
                         std::unique_ptr<ObservationFunction> observation,
                         RewardFunction reward, SolverParams params)
    : dynamics_(std::move(dynamics)),
      observation_(observation ? std::move(observation)
                               : std::make_unique<NothingFunction>()),
      reward_(std::move(reward)),
      params_(params) {
  if (!dynamics_) throw PreconditionError("environment without dynamics");
  params_.Validate();
}

StepResult Environment::Reset(std::shared_ptr<const Problem> problem) {
  in_episode_ = false;
  state_.reset();
  if (!problem) throw InvalidProblemError("reset requires an instance");
  ValidateOrThrow(*problem);
  state_ = std::make_unique<SolverState>(std::move(problem), params_);
  observation_->BeforeReset(*state_);
  reward_.BeforeReset(*state_);
  const DynamicsResult r = dynamics_->ResetDynamics(*state_);
  return Finish(r);
}

StepResult Environment::Step(const Action& action) {
  if (!in_episode_) {
    throw PreconditionError("step() called outside an episode");
  }
  DynamicsResult r;
  try {
    r = dynamics_->StepDynamics(*state_, action);
  } catch (const InvalidActionError&) {
    throw;
  } catch (const InvalidParameterError&) {
    throw;
  } catch (...) {
    in_episode_ = false;
    throw;
  }
  return Finish(r);
}

StepResult Environment::Finish(const DynamicsResult& r) {
  StepResult out;
  out.done = r.done;
  if (!r.done) out.action_set = r.action_set;
  out.observation = observation_->Extract(*state_, r.done);
  out.reward = reward_.Evaluate(*state_, r.done);
  out.info = MakeInfo(*state_, r.done);
  in_episode_ = !r.done;
  return out;
}

Info MakeInfo(const SolverState& state, bool done) {
  const Problem& p = state.problem();
  Info info;
  info["nodes_processed"] = Value(state.nodes_processed());
  info["lp_iterations"] = Value(state.total_lp_iterations());
  info["dual_bound"] = Value(p.ReportedObjective(state.dual_bound()));
  info["incumbent_objective"] = Value(p.ReportedObjective(
      state.incumbent() ? state.incumbent()->objective : kInf));
  if (done) {
    info["termination_reason"] =
        Value(std::string(ToString(state.termination_reason())));
  }
  return info;
}

Environment MakeBranchingEnvironment(
    std::unique_ptr<ObservationFunction> observation, RewardFunction reward,
    SolverParams params) {
  return Environment(std::make_unique<BranchingDynamics>(),
                     std::move(observation), std::move(reward), params);
}

Environment MakeConfiguringEnvironment(
    std::unique_ptr<ObservationFunction> observation, RewardFunction reward,
    SolverParams params) {
  return Environment(std::make_unique<ConfiguringDynamics>(),
                     std::move(observation), std::move(reward), params);
}

std::unique_ptr<Dynamics> MakeDynamics(const std::string& name) {
  if (name == "branching") return std::make_unique<BranchingDynamics>();
  if (name == "configuring") return std::make_unique<ConfiguringDynamics>();
  throw InvalidParameterError("unknown environment '" + name + "'");
}

}  // namespace milpenv
