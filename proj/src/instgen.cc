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

#include "milpenv/instgen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "milpenv/errors.h"

namespace milpenv {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameterError(what);
}

int UniformIndex(CounterRng& rng, int n) {
  return static_cast<int>(rng.Below(static_cast<std::uint64_t>(n)));
}

}  // namespace

const char* ToString(Family family) {
  switch (family) {
    case Family::kSetCover:
      return "set_cover";
    case Family::kCombAuction:
      return "comb_auction";
    case Family::kCapFacility:
      return "cap_facility";
    case Family::kIndepSet:
      return "indep_set";
  }
  return "?";
}

std::optional<Family> FamilyFromString(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (name == ToString(f)) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Problem GenerateSetCover(const SetCoverParams& params, CounterRng& rng) {
  const int m = params.rows;
  const int n = params.cols;
  Require(m >= 1 && n >= 1, "set cover needs rows >= 1 and cols >= 1");
  Require(params.density > 0.0 && params.density <= 1.0,
          "set cover density must lie in (0, 1]");
  Require(params.density * n >= 2.0,
          "set cover density * cols must be at least 2");
  Require(params.max_cost >= 1, "set cover max_cost must be >= 1");

  // 1. Independent Bernoulli(density) entries, row by row.
  std::vector<std::vector<char>> a(m, std::vector<char>(n, 0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = rng.Bernoulli(params.density);
  }
  // 2. Every column covers some row.
  for (int j = 0; j < n; ++j) {
    bool any = false;
    for (int i = 0; i < m && !any; ++i) any = a[i][j] != 0;
    if (!any) a[UniformIndex(rng, m)][j] = 1;
  }
  // 3. Every row is covered by at least two columns.
  for (int i = 0; i < m; ++i) {
    int count = static_cast<int>(std::count(a[i].begin(), a[i].end(), 1));
    while (count < 2) {
      const int j = UniformIndex(rng, n);
      if (a[i][j] == 0) {
        a[i][j] = 1;
        ++count;
      }
    }
  }
  // 4. Costs.
  Problem p;
  for (int j = 0; j < n; ++j) {
    const auto cost = static_cast<double>(rng.UniformInt(1, params.max_cost));
    p.AddVariable(cost, 0.0, 1.0, true, "x" + std::to_string(j));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<Term> terms;
    for (int j = 0; j < n; ++j) {
      if (a[i][j]) terms.push_back({j, 1.0});
    }
    p.AddConstraint(std::move(terms), Relation::kGreaterEqual, 1.0,
                    "cover" + std::to_string(i));
  }
  return p;
}

Problem GenerateCombAuction(const CombAuctionParams& params, CounterRng& rng) {
  const int items = params.items;
  Require(items >= 1 && params.bids >= 1,
          "combinatorial auction needs items >= 1 and bids >= 1");
  Require(params.add_prob >= 0.0 && params.add_prob <= 1.0,
          "combinatorial auction add_prob must lie in [0, 1]");
  Require(params.base_value >= 1, "combinatorial auction base_value >= 1");

  Problem p;
  p.maximize = true;
  std::vector<std::vector<int>> bids_of_item(items);
  std::vector<int> perm(items);
  for (int b = 0; b < params.bids; ++b) {
    const int size = 1 + rng.Binomial(items - 1, params.add_prob);
    // Partial Fisher-Yates over a fresh identity permutation.
    std::iota(perm.begin(), perm.end(), 0);
    for (int t = 0; t < size; ++t) {
      std::swap(perm[t], perm[t + UniformIndex(rng, items - t)]);
    }
    std::vector<int> bundle(perm.begin(), perm.begin() + size);
    std::sort(bundle.begin(), bundle.end());
    const std::int64_t noise = rng.UniformInt(50, 150);
    const std::int64_t cents =
        size * static_cast<std::int64_t>(params.base_value) * noise;
    const double price = static_cast<double>(cents) / 100.0;
    p.AddVariable(-price, 0.0, 1.0, true, "bid" + std::to_string(b));
    for (int item : bundle) bids_of_item[item].push_back(b);
  }
  for (int i = 0; i < items; ++i) {
    if (bids_of_item[i].empty()) continue;
    std::vector<Term> terms;
    for (int b : bids_of_item[i]) terms.push_back({b, 1.0});
    p.AddConstraint(std::move(terms), Relation::kLessEqual, 1.0,
                    "item" + std::to_string(i));
  }
  return p;
}

Problem GenerateCapFacility(const CapFacilityParams& params, CounterRng& rng) {
  const int nc = params.customers;
  const int nf = params.facilities;
  Require(nc >= 1 && nf >= 1,
          "facility location needs customers >= 1 and facilities >= 1");
  Require(params.ratio > 0.0 && std::isfinite(params.ratio),
          "facility location ratio must be positive");

  std::vector<double> cx(nc), cy(nc), fx(nf), fy(nf);
  for (int j = 0; j < nc; ++j) {
    cx[j] = rng.Uniform();
    cy[j] = rng.Uniform();
  }
  for (int i = 0; i < nf; ++i) {
    fx[i] = rng.Uniform();
    fy[i] = rng.Uniform();
  }
  std::vector<double> demand(nc);
  double total_demand = 0.0;
  for (int j = 0; j < nc; ++j) {
    demand[j] = static_cast<double>(rng.UniformInt(5, 35));
    total_demand += demand[j];
  }
  std::vector<double> capacity(nf);
  double total_raw = 0.0;
  for (int i = 0; i < nf; ++i) {
    capacity[i] = static_cast<double>(rng.UniformInt(10, 160));
    total_raw += capacity[i];
  }
  const double scale = params.ratio * total_demand / total_raw;
  for (double& c : capacity) c *= scale;

  Problem p;
  for (int i = 0; i < nf; ++i) {
    const auto a = static_cast<double>(rng.UniformInt(100, 110));
    const auto b = static_cast<double>(rng.UniformInt(0, 90));
    p.AddVariable(a * std::sqrt(capacity[i]) + b, 0.0, 1.0, true,
                  "open" + std::to_string(i));
  }
  auto x_index = [&](int i, int j) { return nf + i * nc + j; };
  for (int i = 0; i < nf; ++i) {
    for (int j = 0; j < nc; ++j) {
      const double dx = cx[j] - fx[i];
      const double dy = cy[j] - fy[i];
      const double dist = std::sqrt(dx * dx + dy * dy);
      p.AddVariable(dist * 10.0 * demand[j], 0.0, 1.0, false,
                    "x" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  for (int j = 0; j < nc; ++j) {
    std::vector<Term> terms;
    for (int i = 0; i < nf; ++i) terms.push_back({x_index(i, j), 1.0});
    p.AddConstraint(std::move(terms), Relation::kEqual, 1.0,
                    "demand" + std::to_string(j));
  }
  for (int i = 0; i < nf; ++i) {
    std::vector<Term> terms;
    terms.push_back({i, -capacity[i]});
    for (int j = 0; j < nc; ++j) terms.push_back({x_index(i, j), demand[j]});
    p.AddConstraint(std::move(terms), Relation::kLessEqual, 0.0,
                    "capacity" + std::to_string(i));
  }
  return p;
}

std::vector<std::pair<int, int>> GenerateGraph(const IndepSetParams& params,
                                               CounterRng& rng) {
  const int n = params.nodes;
  Require(n >= 2, "independent set needs nodes >= 2");
  std::vector<std::pair<int, int>> edges;
  if (params.graph == GraphModel::kErdosRenyi) {
    Require(params.edge_prob > 0.0 && params.edge_prob < 1.0,
            "Erdos-Renyi edge_prob must lie in (0, 1)");
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.Bernoulli(params.edge_prob)) edges.emplace_back(u, v);
      }
    }
    return edges;
  }
  const int m = params.affinity;
  Require(m >= 1 && m < n, "Barabasi-Albert affinity must lie in [1, nodes)");
  // Seed clique on nodes 0..m, then preferential attachment: each endpoint
  // occurrence is one lottery ticket.
  std::vector<int> tickets;
  for (int u = 0; u <= m; ++u) {
    for (int v = u + 1; v <= m; ++v) {
      edges.emplace_back(u, v);
      tickets.push_back(u);
      tickets.push_back(v);
    }
  }
  std::vector<int> targets;
  for (int v = m + 1; v < n; ++v) {
    targets.clear();
    while (static_cast<int>(targets.size()) < m) {
      const int t =
          tickets[UniformIndex(rng, static_cast<int>(tickets.size()))];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
        targets.push_back(t);
      }
    }
    for (int t : targets) {
      edges.emplace_back(t, v);
      tickets.push_back(t);
      tickets.push_back(v);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

Problem GenerateIndepSet(const IndepSetParams& params, CounterRng& rng) {
  const auto edges = GenerateGraph(params, rng);
  Problem p;
  p.maximize = true;
  for (int v = 0; v < params.nodes; ++v) {
    p.AddVariable(-1.0, 0.0, 1.0, true, "v" + std::to_string(v));
  }
  for (const auto& [u, v] : edges) {
    p.AddConstraint({{u, 1.0}, {v, 1.0}}, Relation::kLessEqual, 1.0,
                    "e" + std::to_string(u) + "_" + std::to_string(v));
  }
  return p;
}

// ---------------------------------------------------------------------------

GeneratorConfig GeneratorConfig::Tiny(Family family, std::uint64_t seed) {
  GeneratorConfig c;
  c.family = family;
  c.seed = seed;
  c.set_cover = {6, 10, 0.35, 20};
  c.comb_auction = {5, 10, 0.25, 100};
  c.cap_facility = {3, 2, 2.0};
  c.indep_set = {10, GraphModel::kErdosRenyi, 0.3, 2};
  return c;
}

GeneratorConfig GeneratorConfig::Small(Family family, std::uint64_t seed) {
  GeneratorConfig c;
  c.family = family;
  c.seed = seed;
  c.set_cover = {100, 200, 0.05, 100};
  c.comb_auction = {30, 100, 0.05, 100};
  c.cap_facility = {15, 8, 3.0};
  c.indep_set = {60, GraphModel::kBarabasiAlbert, 0.1, 3};
  return c;
}

std::string InstanceName(Family family, std::uint64_t seed, std::uint64_t k) {
  return std::string(ToString(family)) + "_" + std::to_string(seed) + "_" +
         std::to_string(k);
}

Problem Generate(const GeneratorConfig& config, std::uint64_t k) {
  CounterRng rng(config.seed, k);
  Problem p;
  switch (config.family) {
    case Family::kSetCover:
      p = GenerateSetCover(config.set_cover, rng);
      break;
    case Family::kCombAuction:
      p = GenerateCombAuction(config.comb_auction, rng);
      break;
    case Family::kCapFacility:
      p = GenerateCapFacility(config.cap_facility, rng);
      break;
    case Family::kIndepSet:
      p = GenerateIndepSet(config.indep_set, rng);
      break;
  }
  p.name = InstanceName(config.family, config.seed, k);
  return p;
}

}  // namespace milpenv
