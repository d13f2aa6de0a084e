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

#include "milpenv/policies.h"

#include "milpenv/errors.h"

namespace milpenv {
namespace {

void RequireNonEmpty(const std::vector<int>& action_set) {
  if (action_set.empty()) throw PreconditionError("empty action set");
}

class FirstCandidatePolicy : public Policy {
 public:
  std::string name() const override { return "first_candidate"; }
  int Choose(const std::optional<Observation>&,
             const std::vector<int>& action_set) override {
    return FirstCandidate(action_set);
  }
};

class RandomCandidatePolicy : public Policy {
 public:
  explicit RandomCandidatePolicy(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random_candidate"; }
  int Choose(const std::optional<Observation>&,
             const std::vector<int>& action_set) override {
    return RandomCandidate(action_set, rng_);
  }

 private:
  CounterRng rng_;
};

class MostFractionalPolicy : public Policy {
 public:
  std::string name() const override { return "most_fractional"; }
  int Choose(const std::optional<Observation>& observation,
             const std::vector<int>& action_set) override {
    const CandidateFeatureObservation* obs =
        observation ? std::get_if<CandidateFeatureObservation>(&*observation)
                    : nullptr;
    if (obs == nullptr) {
      throw PreconditionError(
          "most_fractional needs the candidate feature observation");
    }
    return MostFractional(*obs, action_set);
  }
};

}  // namespace

int FirstCandidate(const std::vector<int>& action_set) {
  RequireNonEmpty(action_set);
  return action_set.front();
}

int RandomCandidate(const std::vector<int>& action_set, CounterRng& rng) {
  RequireNonEmpty(action_set);
  return action_set[rng.Below(action_set.size())];
}

int MostFractional(const CandidateFeatureObservation& observation,
                   const std::vector<int>& action_set) {
  RequireNonEmpty(action_set);
  if (observation.candidates != action_set) {
    throw PreconditionError("observation rows do not match the action set");
  }
  const Matrix& m = observation.features;
  int best = 0;
  for (int r = 1; r < m.rows; ++r) {
    if (m.at(r, kFractionalityColumn) > m.at(best, kFractionalityColumn)) {
      best = r;
    }
  }
  return action_set[best];
}

std::unique_ptr<Policy> MakePolicy(const std::string& name,
                                   std::uint64_t seed) {
  if (name == "first_candidate") {
    return std::make_unique<FirstCandidatePolicy>();
  }
  if (name == "random_candidate") {
    return std::make_unique<RandomCandidatePolicy>(seed);
  }
  if (name == "most_fractional") {
    return std::make_unique<MostFractionalPolicy>();
  }
  throw InvalidParameterError("unknown policy '" + name + "'");
}

}  // namespace milpenv
