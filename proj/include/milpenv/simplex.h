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

#ifndef MILPENV_SIMPLEX_H_
#define MILPENV_SIMPLEX_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "milpenv/problem.h"

namespace milpenv {

inline constexpr double kFeasibilityTol = 1e-7;
inline constexpr double kOptimalityTol = 1e-7;

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

enum class BasisStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

// A local bound change. Later entries override earlier ones for the same
// variable.
struct BoundOverride {
  int var = 0;
  double lower = 0.0;
  double upper = 0.0;
};
using BoundOverrides = std::vector<BoundOverride>;

struct LpLimits {
  std::int64_t max_iterations = 1'000'000;
};

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> primal;         // one per structural variable
  double objective = 0.0;             // internal (minimization) sense
  std::vector<double> duals;          // one per row
  std::vector<double> reduced_costs;  // one per structural variable
  // Structural variables: status of the variable itself. Rows: status of the
  // row activity (kAtUpper for a tight <= row, kAtLower for a tight >= or =
  // row).
  std::vector<BasisStatus> var_status;
  std::vector<BasisStatus> row_status;
  std::int64_t iterations = 0;
};

// Column-wise copy of a problem's constraint matrix, built once and reused
// for every node LP of a branch-and-bound run.
class LpModel {
 public:
  explicit LpModel(std::shared_ptr<const Problem> problem);

  const Problem& problem() const { return *problem_; }
  int num_vars() const { return problem_->num_vars(); }
  int num_rows() const { return problem_->num_cons(); }

  struct Entry {
    int row;
    double value;
  };
  const std::vector<Entry>& column(int j) const { return columns_[j]; }

 private:
  std::shared_ptr<const Problem> problem_;
  std::vector<std::vector<Entry>> columns_;
};

// Bounded-variable primal revised simplex, two phases, dense basis inverse.
//
// Integrality is ignored. Without `warm_start` each call starts from a
// slack/artificial basis. With it, the solve starts from the final basis of
// that earlier optimal result on the same model (typically the parent node
// before a bound change), restores feasibility by minimizing the sum of
// bound violations, and falls back to the cold start if that ends without a
// feasible point. Either way the result is a pure function of the inputs and
// repeated calls are bitwise identical. Throws NumericalError if the basis
// matrix becomes singular.
LpResult SolveLp(const LpModel& model, const BoundOverrides& overrides = {},
                 const LpLimits& limits = {},
                 const LpResult* warm_start = nullptr);

// Convenience overload that builds the column model on the fly.
LpResult SolveLp(const Problem& problem, const BoundOverrides& overrides = {},
                 const LpLimits& limits = {},
                 const LpResult* warm_start = nullptr);

const char* ToString(LpStatus status);

}  // namespace milpenv

#endif  // MILPENV_SIMPLEX_H_
