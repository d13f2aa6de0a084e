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

// Observation functions: map a solver state to what the agent sees.
//
// Every function follows the same two-call contract. BeforeReset() is called
// once per episode before the solver runs; Extract() is called at reset and
// after every step and returns std::nullopt once the episode is done. Extract
// never modifies the solver state. Functions may keep per-episode caches and
// are therefore owned by a single environment.

#ifndef MILPENV_FEATURES_H_
#define MILPENV_FEATURES_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "milpenv/engine.h"

namespace milpenv {

// Dense row-major matrix with named columns.
struct Matrix {
  std::vector<std::string> columns;
  int rows = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::vector<std::string> column_names, int num_rows)
      : columns(std::move(column_names)),
        rows(num_rows),
        data(static_cast<std::size_t>(num_rows) * columns.size(), 0.0) {}

  int cols() const { return static_cast<int>(columns.size()); }
  double& at(int r, int c) {
    return data[static_cast<std::size_t>(r) * cols() + c];
  }
  double at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols() + c];
  }

  bool operator==(const Matrix&) const = default;
};

// Variable/constraint bipartite graph of the current node.
//
// Variable columns: obj_norm, has_lower, has_upper, is_integer, lp_value,
// fractionality, is_basic, at_lower, at_upper. Constraint columns: rhs_norm,
// relation (-1 for >=, 0 for =, +1 for <=), dual_norm, is_tight. One edge per
// nonzero coefficient, valued coefficient / row infinity-norm. Bound flags
// refer to the original problem; LP columns to the current node LP.
struct BipartiteObservation {
  Matrix variable_features;
  Matrix constraint_features;
  std::vector<int> edge_rows;  // constraint index of each edge
  std::vector<int> edge_cols;  // variable index of each edge
  Matrix edge_features;        // nnz x 1, column "coef_norm"

  int num_edges() const { return static_cast<int>(edge_rows.size()); }
  bool operator==(const BipartiteObservation&) const = default;
};

// One row per branching candidate, in action-set order. Columns: obj,
// obj_norm, n_rows, mean_abs_coef, min_abs_coef, max_abs_coef, lp_value,
// fractionality, dist_lower, dist_upper, pseudocost, is_basic. Distances use
// the node-local bounds; infinite distances are clamped to 1e20.
struct CandidateFeatureObservation {
  std::vector<int> candidates;
  Matrix features;

  bool operator==(const CandidateFeatureObservation&) const = default;
};

using Observation =
    std::variant<BipartiteObservation, CandidateFeatureObservation, Matrix>;

inline constexpr double kDistanceClamp = 1e20;
inline constexpr int kFractionalityColumn = 7;

const std::vector<std::string>& VariableFeatureNames();
const std::vector<std::string>& ConstraintFeatureNames();
const std::vector<std::string>& CandidateFeatureNames();

class ObservationFunction {
 public:
  virtual ~ObservationFunction() = default;

  // Name as accepted by MakeObservationFunction().
  virtual std::string name() const = 0;
  virtual void BeforeReset(const SolverState& state) { (void)state; }
  virtual std::optional<Observation> Extract(const SolverState& state,
                                             bool done) = 0;
};

// Always absent; the zero-work baseline.
class NothingFunction : public ObservationFunction {
 public:
  std::string name() const override { return "nothing"; }
  std::optional<Observation> Extract(const SolverState&, bool) override {
    return std::nullopt;
  }
};

class NodeBipartiteFunction : public ObservationFunction {
 public:
  // With `cache` set, everything that depends only on the problem (the four
  // static variable columns, the two static constraint columns and the
  // edges) is computed once per episode.
  explicit NodeBipartiteFunction(bool cache = false) : cache_(cache) {}

  std::string name() const override { return "bipartite"; }
  bool cache() const { return cache_; }
  void BeforeReset(const SolverState& state) override;
  std::optional<Observation> Extract(const SolverState& state,
                                     bool done) override;

  // Extraction without the done check, for benchmarks and tests.
  BipartiteObservation Compute(const SolverState& state);

 private:
  bool cache_;
  const Problem* cached_for_ = nullptr;
  BipartiteObservation static_;
};

class CandidateFeaturesFunction : public ObservationFunction {
 public:
  std::string name() const override { return "candidates"; }
  void BeforeReset(const SolverState& state) override;
  std::optional<Observation> Extract(const SolverState& state,
                                     bool done) override;

  CandidateFeatureObservation Compute(const SolverState& state);

 private:
  struct ColumnStats {
    double n_rows = 0.0;
    double mean_abs = 0.0;
    double min_abs = 0.0;
    double max_abs = 0.0;
  };
  void ComputeStats(const Problem& problem);

  const Problem* stats_for_ = nullptr;
  std::vector<ColumnStats> stats_;
  double objective_norm_ = 0.0;
};

// "nothing", "bipartite" or "candidates". Throws InvalidParameterError.
std::unique_ptr<ObservationFunction> MakeObservationFunction(
    std::string_view name, bool cache = false);

}  // namespace milpenv

#endif  // MILPENV_FEATURES_H_
