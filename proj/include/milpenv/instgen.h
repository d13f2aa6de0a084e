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

// Seeded generators for four classic MILP families.
//
// Instance k of a configuration is drawn from CounterRng(seed, k) and named
// "<family>_<seed>_<k>", so it is a pure function of (config, k) and its LP
// text is identical across runs and platforms. The sampling schemes are
// documented in docs/generators.md.

#ifndef MILPENV_INSTGEN_H_
#define MILPENV_INSTGEN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "milpenv/problem.h"
#include "milpenv/rng.h"

namespace milpenv {

enum class Family { kSetCover, kCombAuction, kCapFacility, kIndepSet };

const char* ToString(Family family);
std::optional<Family> FamilyFromString(std::string_view name);
inline constexpr Family kAllFamilies[] = {
    Family::kSetCover, Family::kCombAuction, Family::kCapFacility,
    Family::kIndepSet};

struct SetCoverParams {
  int rows = 500;
  int cols = 1000;
  double density = 0.05;
  int max_cost = 100;
};

struct CombAuctionParams {
  int items = 100;
  int bids = 500;
  double add_prob = 0.05;  // each extra item joins a bundle with this chance
  int base_value = 100;    // per-item value before noise
};

struct CapFacilityParams {
  int customers = 100;
  int facilities = 100;
  double ratio = 5.0;  // total capacity / total demand
};

enum class GraphModel { kErdosRenyi, kBarabasiAlbert };

struct IndepSetParams {
  int nodes = 500;
  GraphModel graph = GraphModel::kBarabasiAlbert;
  double edge_prob = 0.1;  // Erdos-Renyi
  int affinity = 4;        // Barabasi-Albert edges per new node
};

// Throws InvalidParameterError when parameters are out of range.
Problem GenerateSetCover(const SetCoverParams& params, CounterRng& rng);
Problem GenerateCombAuction(const CombAuctionParams& params, CounterRng& rng);
Problem GenerateCapFacility(const CapFacilityParams& params, CounterRng& rng);
Problem GenerateIndepSet(const IndepSetParams& params, CounterRng& rng);

// Undirected simple graph as sorted (u, v) pairs with u < v.
std::vector<std::pair<int, int>> GenerateGraph(const IndepSetParams& params,
                                               CounterRng& rng);

struct GeneratorConfig {
  Family family = Family::kSetCover;
  std::uint64_t seed = 0;
  SetCoverParams set_cover;
  CombAuctionParams comb_auction;
  CapFacilityParams cap_facility;
  IndepSetParams indep_set;

  // Small sizes that solve to optimality in well under a second.
  static GeneratorConfig Tiny(Family family, std::uint64_t seed);
  // Small sizes for benchmarks where node-limited runs stay fast.
  static GeneratorConfig Small(Family family, std::uint64_t seed);
};

// Element k of the configuration's stream.
Problem Generate(const GeneratorConfig& config, std::uint64_t k);

std::string InstanceName(Family family, std::uint64_t seed, std::uint64_t k);

// Infinite sequence view over Generate(config, 0), Generate(config, 1), ...
class InstanceStream {
 public:
  explicit InstanceStream(GeneratorConfig config, std::uint64_t start = 0)
      : config_(std::move(config)), next_(start) {}

  Problem Next() { return Generate(config_, next_++); }
  std::uint64_t position() const { return next_; }

 private:
  GeneratorConfig config_;
  std::uint64_t next_;
};

}  // namespace milpenv

#endif  // MILPENV_INSTGEN_H_
