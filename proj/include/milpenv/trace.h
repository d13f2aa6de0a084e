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

// Episode traces: recording, JSON (de)serialization and replay.
//
// Step 0 is the reset: it has no action and carries the reset reward. Step
// t >= 1 holds the action applied at step t - 1's state together with what
// that transition returned. The action set is the one offered at the
// step's own state, absent once done. See docs/trace_format.md.
//
// Non-finite numbers are written as the strings "inf", "-inf" and "nan".
// Every finite double is written in shortest round-trip form, so parsing a
// trace gives back bit-identical values.

#ifndef MILPENV_TRACE_H_
#define MILPENV_TRACE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "milpenv/envs.h"

namespace milpenv {

inline constexpr int kTraceFormatVersion = 1;

struct StepRecord {
  std::int64_t t = 0;
  std::optional<ActionSet> action_set;
  std::optional<Action> action;  // absent at t = 0
  double reward = 0.0;
  bool done = false;
  Info info;
  std::optional<Observation> observation;  // only when recorded

  bool operator==(const StepRecord&) const = default;
};

struct EpisodeRecord {
  std::string instance;
  std::uint64_t seed = 0;
  ParamMapping params;  // solver parameters of the episode
  std::string env;      // "branching" or "configuring"
  std::string observation_function;
  std::string reward;   // canonical reward expression text
  std::string policy;
  std::vector<StepRecord> steps;

  double TotalReward() const;
  bool operator==(const EpisodeRecord&) const = default;
};

nlohmann::json ValueToJson(const Value& value);
Value ValueFromJson(const nlohmann::json& j);
nlohmann::json DoubleToJson(double v);
nlohmann::json MatrixToJson(const Matrix& m);
nlohmann::json ObservationToJson(const Observation& observation);
nlohmann::json ActionSetToJson(const ActionSet& action_set);
nlohmann::json ActionToJson(const Action& action);

nlohmann::json TraceToJson(const EpisodeRecord& record);
// Validates against the trace schema. Throws TraceFormatError.
EpisodeRecord TraceFromJson(const nlohmann::json& j);

std::string SerializeTrace(const EpisodeRecord& record, int indent = -1);
// Throws TraceFormatError on malformed JSON or schema violations.
EpisodeRecord ParseTrace(std::string_view text);

// Chooses the next action given the current observation and action set.
using ActionChooser = std::function<Action(
    const std::optional<Observation>& observation, const ActionSet& actions)>;

// Runs one episode to completion and records it. The metadata fields
// (instance, seed, policy) are left to the caller apart from env, params,
// observation function and reward, which are read off `env`.
EpisodeRecord RecordEpisode(Environment& env,
                            std::shared_ptr<const Problem> problem,
                            const ActionChooser& choose,
                            bool record_observations = false);

struct ReplayReport {
  bool identical = true;
  std::string mismatch;  // first difference, empty when identical
};

// Re-runs the recorded action sequence and compares every step's reward,
// done flag, info and action set bit for bit, plus observations where they
// were recorded.
ReplayReport ReplayEpisode(Environment& env,
                           std::shared_ptr<const Problem> problem,
                           const EpisodeRecord& record);

}  // namespace milpenv

#endif  // MILPENV_TRACE_H_
