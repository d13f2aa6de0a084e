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

// Baseline branching policies over (observation, action set).

#ifndef MILPENV_POLICIES_H_
#define MILPENV_POLICIES_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "milpenv/features.h"
#include "milpenv/rng.h"

namespace milpenv {

// All three throw PreconditionError on an empty action set.
int FirstCandidate(const std::vector<int>& action_set);
int RandomCandidate(const std::vector<int>& action_set, CounterRng& rng);
// Argmax of the fractionality column, lowest position on ties. The
// observation rows must be aligned with `action_set`.
int MostFractional(const CandidateFeatureObservation& observation,
                   const std::vector<int>& action_set);

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual int Choose(const std::optional<Observation>& observation,
                     const std::vector<int>& action_set) = 0;
};

// "first_candidate", "random_candidate" (seeded by `seed`) or
// "most_fractional" (needs candidate-feature observations). Throws
// InvalidParameterError for unknown names.
std::unique_ptr<Policy> MakePolicy(const std::string& name,
                                   std::uint64_t seed = 0);

}  // namespace milpenv

#endif  // MILPENV_POLICIES_H_
