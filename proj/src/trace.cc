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

#include "milpenv/trace.h"

#include <cmath>
#include <limits>
#include <utility>

#include "milpenv/errors.h"

namespace milpenv {

using nlohmann::json;

namespace {

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw TraceFormatError("trace" + path + ": " + what);
}

// Typed accessors that report the JSON path of a violation.
const json& Field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) Fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) Fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string GetString(const json& j, const std::string& path) {
  if (!j.is_string()) Fail(path, "expected a string");
  return j.get<std::string>();
}

std::int64_t GetInt(const json& j, const std::string& path) {
  if (!j.is_number_integer()) Fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

double GetDouble(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  Fail(path, "expected a number, \"inf\", \"-inf\" or \"nan\"");
}

bool GetBool(const json& j, const std::string& path) {
  if (!j.is_boolean()) Fail(path, "expected a boolean");
  return j.get<bool>();
}

const json& GetArray(const json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array");
  return j;
}

std::vector<int> GetIntArray(const json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t k = 0; k < GetArray(j, path).size(); ++k) {
    out.push_back(static_cast<int>(
        GetInt(j[k], path + "[" + std::to_string(k) + "]")));
  }
  return out;
}

Matrix MatrixFromJson(const json& j, const std::string& path) {
  Matrix m;
  const json& cols = GetArray(Field(j, path, "columns"), path + ".columns");
  for (std::size_t k = 0; k < cols.size(); ++k) {
    m.columns.push_back(
        GetString(cols[k], path + ".columns[" + std::to_string(k) + "]"));
  }
  m.rows = static_cast<int>(GetInt(Field(j, path, "rows"), path + ".rows"));
  if (m.rows < 0) Fail(path + ".rows", "must be non-negative");
  const json& data = GetArray(Field(j, path, "data"), path + ".data");
  if (data.size() != static_cast<std::size_t>(m.rows) * m.columns.size()) {
    Fail(path + ".data", "length must be rows * len(columns)");
  }
  m.data.reserve(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    m.data.push_back(
        GetDouble(data[k], path + ".data[" + std::to_string(k) + "]"));
  }
  return m;
}

Observation ObservationFromJson(const json& j, const std::string& path) {
  const std::string type = GetString(Field(j, path, "type"), path + ".type");
  if (type == "matrix") return MatrixFromJson(j, path);
  if (type == "candidates") {
    CandidateFeatureObservation obs;
    obs.candidates =
        GetIntArray(Field(j, path, "candidates"), path + ".candidates");
    obs.features =
        MatrixFromJson(Field(j, path, "features"), path + ".features");
    if (obs.features.rows != static_cast<int>(obs.candidates.size())) {
      Fail(path + ".features", "needs one row per candidate");
    }
    return obs;
  }
  if (type == "bipartite") {
    BipartiteObservation obs;
    obs.variable_features = MatrixFromJson(
        Field(j, path, "variable_features"), path + ".variable_features");
    obs.constraint_features = MatrixFromJson(
        Field(j, path, "constraint_features"), path + ".constraint_features");
    const json& edges = Field(j, path, "edges");
    obs.edge_rows = GetIntArray(Field(edges, path + ".edges", "rows"),
                                path + ".edges.rows");
    obs.edge_cols = GetIntArray(Field(edges, path + ".edges", "cols"),
                                path + ".edges.cols");
    obs.edge_features = MatrixFromJson(Field(j, path, "edge_features"),
                                       path + ".edge_features");
    if (obs.edge_rows.size() != obs.edge_cols.size() ||
        obs.edge_features.rows != obs.num_edges()) {
      Fail(path + ".edges", "edge arrays disagree in length");
    }
    return obs;
  }
  Fail(path + ".type", "unknown observation type '" + type + "'");
}

const char* TypeName(ParameterSpec::Type type) {
  switch (type) {
    case ParameterSpec::Type::kInteger:
      return "integer";
    case ParameterSpec::Type::kReal:
      return "real";
    case ParameterSpec::Type::kChoice:
      return "choice";
  }
  return "?";
}

ParameterSpec SpecFromJson(const json& j, const std::string& path) {
  ParameterSpec spec;
  spec.name = GetString(Field(j, path, "name"), path + ".name");
  const std::string type = GetString(Field(j, path, "type"), path + ".type");
  if (type == "integer") {
    spec.type = ParameterSpec::Type::kInteger;
  } else if (type == "real") {
    spec.type = ParameterSpec::Type::kReal;
  } else if (type == "choice") {
    spec.type = ParameterSpec::Type::kChoice;
  } else {
    Fail(path + ".type", "unknown parameter type '" + type + "'");
  }
  spec.min = GetDouble(Field(j, path, "min"), path + ".min");
  spec.max = GetDouble(Field(j, path, "max"), path + ".max");
  spec.min_inclusive =
      GetBool(Field(j, path, "min_inclusive"), path + ".min_inclusive");
  const json& choices = GetArray(Field(j, path, "choices"), path + ".choices");
  for (std::size_t k = 0; k < choices.size(); ++k) {
    spec.choices.push_back(
        GetString(choices[k], path + ".choices[" + std::to_string(k) + "]"));
  }
  spec.default_value = ValueFromJson(Field(j, path, "default"));
  return spec;
}

ActionSet ActionSetFromJson(const json& j, const std::string& path) {
  if (j.is_object()) {
    ParameterSchema schema;
    const json& params =
        GetArray(Field(j, path, "parameters"), path + ".parameters");
    for (std::size_t k = 0; k < params.size(); ++k) {
      schema.push_back(SpecFromJson(
          params[k], path + ".parameters[" + std::to_string(k) + "]"));
    }
    return schema;
  }
  return GetIntArray(j, path);
}

ParamMapping MappingFromJson(const json& j, const std::string& path) {
  if (!j.is_object()) Fail(path, "expected an object");
  ParamMapping mapping;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!(it->is_number() || it->is_string())) {
      Fail(path + "." + it.key(), "expected a number or a string");
    }
    mapping[it.key()] = ValueFromJson(*it);
  }
  return mapping;
}

Action ActionFromJson(const json& j, const std::string& path) {
  if (j.is_object()) return MappingFromJson(j, path);
  return static_cast<int>(GetInt(j, path));
}

StepRecord StepFromJson(const json& j, const std::string& path) {
  StepRecord step;
  step.t = GetInt(Field(j, path, "t"), path + ".t");
  const json& set = Field(j, path, "action_set");
  if (!set.is_null()) {
    step.action_set = ActionSetFromJson(set, path + ".action_set");
  }
  const json& action = Field(j, path, "action");
  if (!action.is_null()) step.action = ActionFromJson(action, path + ".action");
  step.reward = GetDouble(Field(j, path, "reward"), path + ".reward");
  step.done = GetBool(Field(j, path, "done"), path + ".done");
  step.info = MappingFromJson(Field(j, path, "info"), path + ".info");
  auto obs = j.find("observation");
  if (obs != j.end() && !obs->is_null()) {
    step.observation = ObservationFromJson(*obs, path + ".observation");
  }
  return step;
}

// Canonical text of one step, used for bitwise comparisons.
std::string StepKey(const StepRecord& step, bool with_observation) {
  json j;
  j["action_set"] =
      step.action_set ? ActionSetToJson(*step.action_set) : json();
  j["reward"] = DoubleToJson(step.reward);
  j["done"] = step.done;
  json info = json::object();
  for (const auto& [k, v] : step.info) info[k] = ValueToJson(v);
  j["info"] = std::move(info);
  if (with_observation) {
    j["observation"] =
        step.observation ? ObservationToJson(*step.observation) : json();
  }
  return j.dump();
}

StepRecord FromResult(std::int64_t t, const StepResult& result,
                      bool keep_obs) {
  StepRecord step;
  step.t = t;
  step.action_set = result.action_set;
  step.reward = result.reward;
  step.done = result.done;
  step.info = result.info;
  if (keep_obs) step.observation = result.observation;
  return step;
}

}  // namespace

double EpisodeRecord::TotalReward() const {
  double total = 0.0;
  for (const StepRecord& s : steps) total += s.reward;
  return total;
}

json DoubleToJson(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json ValueToJson(const Value& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
  if (const auto* d = std::get_if<double>(&value)) return DoubleToJson(*d);
  return std::get<std::string>(value);
}

Value ValueFromJson(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "-inf" || s == "nan") return GetDouble(j, "");
    return s;
  }
  Fail("", "expected a number or a string value");
}

json MatrixToJson(const Matrix& m) {
  json data = json::array();
  for (double v : m.data) data.push_back(DoubleToJson(v));
  return {{"columns", m.columns}, {"rows", m.rows}, {"data", std::move(data)}};
}

json ObservationToJson(const Observation& observation) {
  if (const auto* m = std::get_if<Matrix>(&observation)) {
    json j = MatrixToJson(*m);
    j["type"] = "matrix";
    return j;
  }
  if (const auto* c = std::get_if<CandidateFeatureObservation>(&observation)) {
    return {{"type", "candidates"},
            {"candidates", c->candidates},
            {"features", MatrixToJson(c->features)}};
  }
  const auto& b = std::get<BipartiteObservation>(observation);
  return {{"type", "bipartite"},
          {"variable_features", MatrixToJson(b.variable_features)},
          {"constraint_features", MatrixToJson(b.constraint_features)},
          {"edges", {{"rows", b.edge_rows}, {"cols", b.edge_cols}}},
          {"edge_features", MatrixToJson(b.edge_features)}};
}

json ActionSetToJson(const ActionSet& action_set) {
  if (const auto* v = std::get_if<std::vector<int>>(&action_set)) return *v;
  json params = json::array();
  for (const ParameterSpec& s : std::get<ParameterSchema>(action_set)) {
    params.push_back({{"name", s.name},
                      {"type", TypeName(s.type)},
                      {"min", DoubleToJson(s.min)},
                      {"max", DoubleToJson(s.max)},
                      {"min_inclusive", s.min_inclusive},
                      {"choices", s.choices},
                      {"default", ValueToJson(s.default_value)}});
  }
  return {{"parameters", std::move(params)}};
}

json ActionToJson(const Action& action) {
  if (const auto* i = std::get_if<int>(&action)) return *i;
  json j = json::object();
  for (const auto& [k, v] : std::get<ParamMapping>(action)) {
    j[k] = ValueToJson(v);
  }
  return j;
}

json TraceToJson(const EpisodeRecord& record) {
  json params = json::object();
  for (const auto& [k, v] : record.params) params[k] = ValueToJson(v);
  json steps = json::array();
  for (const StepRecord& s : record.steps) {
    json info = json::object();
    for (const auto& [k, v] : s.info) info[k] = ValueToJson(v);
    json step = {{"t", s.t},
                 {"action_set", s.action_set ? ActionSetToJson(*s.action_set)
                                             : json()},
                 {"action", s.action ? ActionToJson(*s.action) : json()},
                 {"reward", DoubleToJson(s.reward)},
                 {"done", s.done},
                 {"info", std::move(info)}};
    if (s.observation) step["observation"] = ObservationToJson(*s.observation);
    steps.push_back(std::move(step));
  }
  return {{"version", kTraceFormatVersion},
          {"instance", record.instance},
          {"seed", record.seed},
          {"params", std::move(params)},
          {"env", record.env},
          {"observation_function", record.observation_function},
          {"reward", record.reward},
          {"policy", record.policy},
          {"steps", std::move(steps)}};
}

EpisodeRecord TraceFromJson(const json& j) {
  const std::string root;
  const std::int64_t version = GetInt(Field(j, root, "version"), ".version");
  if (version != kTraceFormatVersion) {
    Fail(".version", "unsupported version " + std::to_string(version));
  }
  EpisodeRecord r;
  r.instance = GetString(Field(j, root, "instance"), ".instance");
  const json& seed = Field(j, root, "seed");
  if (!seed.is_number_unsigned()) Fail(".seed", "expected an unsigned integer");
  r.seed = seed.get<std::uint64_t>();
  r.params = MappingFromJson(Field(j, root, "params"), ".params");
  r.env = GetString(Field(j, root, "env"), ".env");
  if (r.env != "branching" && r.env != "configuring") {
    Fail(".env", "must be \"branching\" or \"configuring\"");
  }
  r.observation_function = GetString(Field(j, root, "observation_function"),
                                     ".observation_function");
  r.reward = GetString(Field(j, root, "reward"), ".reward");
  r.policy = GetString(Field(j, root, "policy"), ".policy");
  const json& steps = GetArray(Field(j, root, "steps"), ".steps");
  if (steps.empty()) Fail(".steps", "needs at least the reset step");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const std::string path = ".steps[" + std::to_string(k) + "]";
    StepRecord step = StepFromJson(steps[k], path);
    if (step.t != static_cast<std::int64_t>(k)) {
      Fail(path + ".t", "out of order");
    }
    if ((k == 0) != !step.action) {
      Fail(path + ".action", k == 0 ? "must be null at reset" : "missing");
    }
    if (step.done == step.action_set.has_value()) {
      Fail(path + ".action_set", "must be null exactly when done");
    }
    if (step.done && k + 1 != steps.size()) {
      Fail(path + ".done", "only the last step may be done");
    }
    r.steps.push_back(std::move(step));
  }
  return r;
}

std::string SerializeTrace(const EpisodeRecord& record, int indent) {
  return TraceToJson(record).dump(indent);
}

EpisodeRecord ParseTrace(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw TraceFormatError(std::string("trace: invalid JSON: ") + e.what());
  }
  return TraceFromJson(j);
}

EpisodeRecord RecordEpisode(Environment& env,
                            std::shared_ptr<const Problem> problem,
                            const ActionChooser& choose,
                            bool record_observations) {
  EpisodeRecord record;
  record.instance = problem ? problem->name : "";
  record.seed = env.params().seed;
  record.params = ToParamMapping(env.params());
  record.env = env.dynamics().name();
  record.observation_function = env.observation_function().name();
  record.reward = env.reward_function().expr().ToString();

  StepResult result = env.Reset(std::move(problem));
  record.steps.push_back(FromResult(0, result, record_observations));
  while (!result.done) {
    Action action = choose(result.observation, *result.action_set);
    result = env.Step(action);
    StepRecord step = FromResult(static_cast<std::int64_t>(record.steps.size()),
                                 result, record_observations);
    step.action = std::move(action);
    record.steps.push_back(std::move(step));
  }
  return record;
}

ReplayReport ReplayEpisode(Environment& env,
                           std::shared_ptr<const Problem> problem,
                           const EpisodeRecord& record) {
  ReplayReport report;
  auto compare = [&](const StepRecord& expected, const StepResult& got) {
    const bool with_obs = expected.observation.has_value();
    const StepRecord actual = FromResult(expected.t, got, with_obs);
    if (StepKey(actual, with_obs) == StepKey(expected, with_obs)) return true;
    report.identical = false;
    report.mismatch = "step " + std::to_string(expected.t) + ": recorded " +
                      StepKey(expected, with_obs) + ", replayed " +
                      StepKey(actual, with_obs);
    return false;
  };
  if (record.steps.empty()) {
    report.identical = false;
    report.mismatch = "trace has no steps";
    return report;
  }
  StepResult result = env.Reset(std::move(problem));
  if (!compare(record.steps[0], result)) return report;
  for (std::size_t k = 1; k < record.steps.size(); ++k) {
    if (result.done) {
      report.identical = false;
      report.mismatch = "episode ended before step " + std::to_string(k);
      return report;
    }
    result = env.Step(*record.steps[k].action);
    if (!compare(record.steps[k], result)) return report;
  }
  if (!result.done) {
    report.identical = false;
    report.mismatch = "episode continues past the recorded steps";
  }
  return report;
}

}  // namespace milpenv
