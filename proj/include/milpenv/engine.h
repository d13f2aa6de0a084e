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

// Branch-and-bound driver exposed as an explicit state machine.
//
// A SolverState is created NOT_STARTED. Start() solves the root LP and runs
// until the first node whose LP solution is fractional, where it suspends in
// phase AT_DECISION with the sorted list of branching candidates. Branch()
// splits the current node on the chosen candidate and resumes the search up
// to the next decision point or until the search is FINISHED. Nothing is
// driven by callbacks: the caller owns the loop.
//
// Presolve, cutting planes and primal heuristics are deliberately absent.

#ifndef MILPENV_ENGINE_H_
#define MILPENV_ENGINE_H_

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "milpenv/problem.h"
#include "milpenv/simplex.h"

namespace milpenv {

inline constexpr double kIntegralityTol = 1e-6;
inline constexpr double kCutoffTol = 1e-9;
inline constexpr std::int64_t kUnlimitedNodes =
    std::numeric_limits<std::int64_t>::max();

enum class NodeSelection { kBestBound, kDepthFirst };
enum class BranchingRule { kFirstFractional, kMostFractional, kPseudocost };
enum class Phase { kNotStarted, kAtDecision, kFinished };
enum class TerminationReason {
  kNone,
  kOptimal,
  kNodeLimit,
  kTimeLimit,
  kInfeasible,
  kGapReached
};

const char* ToString(NodeSelection v);
const char* ToString(BranchingRule v);
const char* ToString(Phase v);
const char* ToString(TerminationReason v);

// Inverses of ToString(); std::nullopt for unknown names.
std::optional<NodeSelection> NodeSelectionFromString(std::string_view name);
std::optional<BranchingRule> BranchingRuleFromString(std::string_view name);

struct SolverParams {
  std::int64_t node_limit = kUnlimitedNodes;
  double time_limit = kInf;  // seconds of engine time
  double gap_tol = 1e-9;     // relative primal-dual gap
  NodeSelection node_selection = NodeSelection::kBestBound;
  BranchingRule internal_branching = BranchingRule::kMostFractional;
  std::uint64_t seed = 0;

  // Throws InvalidParameterError when an invariant is broken.
  void Validate() const;

  bool operator==(const SolverParams&) const = default;
};

// Per-variable running averages of the objective degradation per unit of
// fractionality, one average for each branching direction.
class Pseudocosts {
 public:
  enum class Direction { kDown, kUp };

  explicit Pseudocosts(int num_vars = 0);

  // `degradation` is the child LP objective minus the parent's; `distance`
  // is how far the parent LP value moved (v - floor(v) down, ceil(v) - v up).
  void Update(int var, Direction direction, double degradation,
              double distance);

  // Average per-unit degradation, 1.0 while no observation exists.
  double Average(int var, Direction direction) const;

  // Product of the up and down averages.
  double Score(int var) const;

  std::int64_t count(int var, Direction direction) const;

 private:
  struct Stat {
    double sum = 0.0;
    std::int64_t count = 0;
  };
  std::vector<Stat> down_;
  std::vector<Stat> up_;
};

struct Incumbent {
  std::vector<double> solution;
  double objective = kInf;  // internal (minimization) sense
};

class SolverState {
 public:
  explicit SolverState(std::shared_ptr<const Problem> problem,
                       SolverParams params = {});

  // Creates a state and immediately calls Start().
  static SolverState Started(std::shared_ptr<const Problem> problem,
                             SolverParams params = {});

  // Replaces the parameters. Only allowed before Start().
  void SetParams(const SolverParams& params);

  // Validates the problem, solves the root LP and advances to the first
  // decision point. Throws InvalidProblemError, UnboundedRelaxationError or
  // NumericalError; PreconditionError unless NOT_STARTED.
  void Start();

  // Branches the current node on `var`. Throws InvalidActionError, leaving
  // the state untouched, when `var` is not a candidate; PreconditionError
  // unless AT_DECISION.
  void Branch(int var);

  // Branches with params().internal_branching until FINISHED. Starts the
  // solve first when needed. PreconditionError when already FINISHED.
  void RunToCompletion();

  // The candidate the internal branching rule would pick right now.
  int InternalChoice() const;

  const Problem& problem() const { return *problem_; }
  const std::shared_ptr<const Problem>& shared_problem() const {
    return problem_;
  }
  const SolverParams& params() const { return params_; }
  Phase phase() const { return phase_; }
  TerminationReason termination_reason() const { return termination_; }

  // Sorted, strictly fractional integer variables of the current node.
  // Empty unless AT_DECISION.
  const std::vector<int>& candidates() const { return candidates_; }
  // LP of the node awaiting a decision (or of the last node processed).
  const LpResult& current_lp() const { return current_lp_; }
  const std::vector<double>& node_lower() const { return node_lower_; }
  const std::vector<double>& node_upper() const { return node_upper_; }
  int current_depth() const { return current_.depth; }

  const std::optional<Incumbent>& incumbent() const { return incumbent_; }
  double dual_bound() const { return dual_bound_; }
  std::int64_t nodes_processed() const { return nodes_processed_; }
  std::int64_t total_lp_iterations() const { return lp_iterations_; }
  // Wall time spent inside Start/Branch/RunToCompletion, monotonic clock.
  double solving_time() const { return solving_time_; }
  std::size_t num_open_nodes() const { return open_.size(); }
  const Pseudocosts& pseudocosts() const { return pseudocosts_; }

  // Relative primal-dual gap; +inf without incumbent.
  double gap() const;

 private:
  struct Node {
    BoundOverrides bounds;
    double bound = -kInf;
    std::int64_t id = 0;
    int depth = 0;
    int branch_var = -1;
    Pseudocosts::Direction direction = Pseudocosts::Direction::kDown;
    double parent_objective = 0.0;
    double distance = 0.0;
    // Final basis of the parent LP, shared by both children.
    std::shared_ptr<const LpResult> warm_start;
  };

  void Enqueue(Node node);
  Node PopNext();
  void PruneOpenNodes();
  void Advance(double call_start);
  void Finish(TerminationReason reason);
  void UpdateDualBound();
  void SetCurrentBounds();

  std::shared_ptr<const Problem> problem_;
  std::shared_ptr<const LpModel> model_;
  SolverParams params_;
  Phase phase_ = Phase::kNotStarted;
  TerminationReason termination_ = TerminationReason::kNone;

  std::map<std::int64_t, Node> open_;
  std::set<std::pair<double, std::int64_t>> open_by_bound_;
  std::int64_t next_id_ = 0;

  Node current_;
  LpResult current_lp_;
  std::vector<int> candidates_;
  std::vector<double> node_lower_;
  std::vector<double> node_upper_;

  std::optional<Incumbent> incumbent_;
  double dual_bound_ = -kInf;
  std::int64_t nodes_processed_ = 0;
  std::int64_t lp_iterations_ = 0;
  double solving_time_ = 0.0;
  Pseudocosts pseudocosts_;
};

}  // namespace milpenv

#endif  // MILPENV_ENGINE_H_
