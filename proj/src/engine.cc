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

#include "milpenv/engine.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include "milpenv/errors.h"

namespace milpenv {

const char* ToString(NodeSelection v) {
  switch (v) {
    case NodeSelection::kBestBound:
      return "best_bound";
    case NodeSelection::kDepthFirst:
      return "dfs";
  }
  return "?";
}

const char* ToString(BranchingRule v) {
  switch (v) {
    case BranchingRule::kFirstFractional:
      return "first_fractional";
    case BranchingRule::kMostFractional:
      return "most_fractional";
    case BranchingRule::kPseudocost:
      return "pseudocost";
  }
  return "?";
}

const char* ToString(Phase v) {
  switch (v) {
    case Phase::kNotStarted:
      return "NOT_STARTED";
    case Phase::kAtDecision:
      return "AT_DECISION";
    case Phase::kFinished:
      return "FINISHED";
  }
  return "?";
}

const char* ToString(TerminationReason v) {
  switch (v) {
    case TerminationReason::kNone:
      return "NONE";
    case TerminationReason::kOptimal:
      return "OPTIMAL";
    case TerminationReason::kNodeLimit:
      return "NODE_LIMIT";
    case TerminationReason::kTimeLimit:
      return "TIME_LIMIT";
    case TerminationReason::kInfeasible:
      return "INFEASIBLE";
    case TerminationReason::kGapReached:
      return "GAP_REACHED";
  }
  return "?";
}

std::optional<NodeSelection> NodeSelectionFromString(std::string_view name) {
  for (NodeSelection v :
       {NodeSelection::kBestBound, NodeSelection::kDepthFirst}) {
    if (name == ToString(v)) return v;
  }
  return std::nullopt;
}

std::optional<BranchingRule> BranchingRuleFromString(std::string_view name) {
  for (BranchingRule v :
       {BranchingRule::kFirstFractional, BranchingRule::kMostFractional,
        BranchingRule::kPseudocost}) {
    if (name == ToString(v)) return v;
  }
  return std::nullopt;
}

void SolverParams::Validate() const {
  if (node_limit < 0) {
    throw InvalidParameterError("node_limit must be >= 0");
  }
  if (!(time_limit > 0.0)) {
    throw InvalidParameterError("time_limit must be > 0");
  }
  if (!(gap_tol >= 0.0)) {
    throw InvalidParameterError("gap_tol must be >= 0");
  }
}

// ---------------------------------------------------------------------------

Pseudocosts::Pseudocosts(int num_vars) : down_(num_vars), up_(num_vars) {}

void Pseudocosts::Update(int var, Direction direction, double degradation,
                         double distance) {
  if (!(distance > 0.0)) return;
  Stat& s = direction == Direction::kUp ? up_[var] : down_[var];
  s.sum += degradation / distance;
  ++s.count;
}

double Pseudocosts::Average(int var, Direction direction) const {
  const Stat& s = direction == Direction::kUp ? up_[var] : down_[var];
  return s.count == 0 ? 1.0 : s.sum / static_cast<double>(s.count);
}

double Pseudocosts::Score(int var) const {
  return Average(var, Direction::kUp) * Average(var, Direction::kDown);
}

std::int64_t Pseudocosts::count(int var, Direction direction) const {
  return (direction == Direction::kUp ? up_[var] : down_[var]).count;
}

// ---------------------------------------------------------------------------

namespace {

double Now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double Fractionality(double v) { return std::fabs(v - std::round(v)); }

// Adds the wall time of one public call to the running total, also when
// the call throws.
class CallTimer {
 public:
  explicit CallTimer(double& total) : total_(total), start_(Now()) {}
  ~CallTimer() { total_ += Now() - start_; }
  double start() const { return start_; }

 private:
  double& total_;
  double start_;
};

}  // namespace

SolverState::SolverState(std::shared_ptr<const Problem> problem,
                         SolverParams params)
    : problem_(std::move(problem)),
      params_(params),
      pseudocosts_(problem_ ? problem_->num_vars() : 0) {
  if (!problem_) throw InvalidProblemError("null problem");
}

SolverState SolverState::Started(std::shared_ptr<const Problem> problem,
                                 SolverParams params) {
  SolverState state(std::move(problem), params);
  state.Start();
  return state;
}

void SolverState::SetParams(const SolverParams& params) {
  if (phase_ != Phase::kNotStarted) {
    throw PreconditionError("parameters can only change before the solve");
  }
  params.Validate();
  params_ = params;
}

void SolverState::Start() {
  CallTimer timer(solving_time_);
  if (phase_ != Phase::kNotStarted) {
    throw PreconditionError("Start() called twice");
  }
  ValidateOrThrow(*problem_);
  params_.Validate();
  model_ = std::make_shared<const LpModel>(problem_);
  Enqueue(Node{});
  try {
    Advance(timer.start());
  } catch (...) {
    phase_ = Phase::kFinished;
    candidates_.clear();
    throw;
  }
}

void SolverState::Branch(int var) {
  CallTimer timer(solving_time_);
  if (phase_ != Phase::kAtDecision) {
    throw PreconditionError(
        std::string("Branch() requires AT_DECISION, state is ") +
        ToString(phase_));
  }
  if (!std::binary_search(candidates_.begin(), candidates_.end(), var)) {
    throw InvalidActionError("variable " + std::to_string(var) +
                             " is not a branching candidate");
  }
  const double v = current_lp_.primal[var];
  const double down_value = std::floor(v);
  const double up_value = std::ceil(v);

  Node down;
  down.bounds = current_.bounds;
  down.bounds.push_back({var, node_lower_[var], down_value});
  down.bound = current_.bound;
  down.depth = current_.depth + 1;
  down.branch_var = var;
  down.direction = Pseudocosts::Direction::kDown;
  down.parent_objective = current_lp_.objective;
  down.distance = v - down_value;
  auto basis = std::make_shared<LpResult>();
  basis->status = current_lp_.status;
  basis->var_status = current_lp_.var_status;
  basis->row_status = current_lp_.row_status;
  down.warm_start = std::move(basis);

  Node up = down;
  up.bounds.back() = {var, up_value, node_upper_[var]};
  up.direction = Pseudocosts::Direction::kUp;
  up.distance = up_value - v;

  Enqueue(std::move(down));
  Enqueue(std::move(up));
  candidates_.clear();
  try {
    Advance(timer.start());
  } catch (...) {
    phase_ = Phase::kFinished;
    candidates_.clear();
    throw;
  }
}

void SolverState::RunToCompletion() {
  if (phase_ == Phase::kFinished) {
    throw PreconditionError("RunToCompletion() on a finished solve");
  }
  if (phase_ == Phase::kNotStarted) Start();
  while (phase_ == Phase::kAtDecision) Branch(InternalChoice());
}

int SolverState::InternalChoice() const {
  if (candidates_.empty()) {
    throw PreconditionError("no branching candidates");
  }
  switch (params_.internal_branching) {
    case BranchingRule::kFirstFractional:
      return candidates_.front();
    case BranchingRule::kMostFractional: {
      int best = candidates_.front();
      double best_frac = -1.0;
      for (int j : candidates_) {
        const double f = Fractionality(current_lp_.primal[j]);
        if (f > best_frac) {
          best_frac = f;
          best = j;
        }
      }
      return best;
    }
    case BranchingRule::kPseudocost: {
      int best = candidates_.front();
      double best_score = -kInf;
      for (int j : candidates_) {
        const double s = pseudocosts_.Score(j);
        if (s > best_score) {
          best_score = s;
          best = j;
        }
      }
      return best;
    }
  }
  return candidates_.front();
}

double SolverState::gap() const {
  if (!incumbent_) return kInf;
  const double p = incumbent_->objective;
  const double d = dual_bound_;
  if (p == d) return 0.0;
  if (!std::isfinite(d)) return kInf;
  return std::fabs(p - d) / std::max(std::fabs(p), std::fabs(d));
}

void SolverState::Enqueue(Node node) {
  node.id = next_id_++;
  open_by_bound_.emplace(node.bound, node.id);
  open_.emplace(node.id, std::move(node));
}

SolverState::Node SolverState::PopNext() {
  std::int64_t id;
  if (params_.node_selection == NodeSelection::kBestBound) {
    id = open_by_bound_.begin()->second;
  } else {
    id = open_.rbegin()->first;
  }
  auto it = open_.find(id);
  Node node = std::move(it->second);
  open_.erase(it);
  open_by_bound_.erase({node.bound, id});
  return node;
}

void SolverState::PruneOpenNodes() {
  const double cutoff = incumbent_->objective - kCutoffTol;
  auto it = open_by_bound_.lower_bound({cutoff, -1});
  while (it != open_by_bound_.end()) {
    open_.erase(it->second);
    it = open_by_bound_.erase(it);
  }
}

void SolverState::Advance(double call_start) {
  const Problem& p = *problem_;
  for (;;) {
    if (open_.empty()) {
      Finish(incumbent_ ? TerminationReason::kOptimal
                        : TerminationReason::kInfeasible);
      return;
    }
    if (nodes_processed_ >= params_.node_limit) {
      Finish(TerminationReason::kNodeLimit);
      return;
    }
    if (solving_time_ + (Now() - call_start) >= params_.time_limit) {
      Finish(TerminationReason::kTimeLimit);
      return;
    }
    if (incumbent_) {
      const double inc = incumbent_->objective;
      const double lower = std::min(inc, open_by_bound_.begin()->first);
      const double denom = std::max(std::fabs(inc), std::fabs(lower));
      const double gap = denom == 0.0 ? 0.0 : (inc - lower) / denom;
      if (gap <= params_.gap_tol) {
        Finish(TerminationReason::kGapReached);
        return;
      }
    }

    Node node = PopNext();
    if (incumbent_ && node.bound >= incumbent_->objective - kCutoffTol) {
      continue;
    }
    LpResult lp = SolveLp(*model_, node.bounds, {}, node.warm_start.get());
    ++nodes_processed_;
    lp_iterations_ += lp.iterations;
    switch (lp.status) {
      case LpStatus::kOptimal:
        break;
      case LpStatus::kInfeasible:
        continue;
      case LpStatus::kUnbounded:
        throw UnboundedRelaxationError("LP relaxation of '" + p.name +
                                       "' is unbounded");
      case LpStatus::kIterationLimit:
        throw NumericalError("LP iteration limit reached on '" + p.name + "'");
    }
    if (node.branch_var >= 0) {
      pseudocosts_.Update(node.branch_var, node.direction,
                          std::max(0.0, lp.objective - node.parent_objective),
                          node.distance);
    }
    if (incumbent_ && lp.objective >= incumbent_->objective - kCutoffTol) {
      continue;
    }

    std::vector<int> fractional;
    for (int j = 0; j < p.num_vars(); ++j) {
      if (p.is_integer[j] && Fractionality(lp.primal[j]) > kIntegralityTol) {
        fractional.push_back(j);
      }
    }
    if (fractional.empty()) {
      Incumbent candidate{std::move(lp.primal), 0.0};
      for (int j = 0; j < p.num_vars(); ++j) {
        if (p.is_integer[j]) {
          candidate.solution[j] = std::round(candidate.solution[j]);
        }
        candidate.objective += p.objective[j] * candidate.solution[j];
      }
      if (!incumbent_ || candidate.objective < incumbent_->objective) {
        incumbent_ = std::move(candidate);
        PruneOpenNodes();
      }
      continue;
    }

    current_ = std::move(node);
    current_.bound = std::max(current_.bound, lp.objective);
    current_lp_ = std::move(lp);
    candidates_ = std::move(fractional);
    SetCurrentBounds();
    phase_ = Phase::kAtDecision;
    UpdateDualBound();
    return;
  }
}

void SolverState::Finish(TerminationReason reason) {
  phase_ = Phase::kFinished;
  termination_ = reason;
  candidates_.clear();
  UpdateDualBound();
}

void SolverState::UpdateDualBound() {
  double lower = kInf;
  if (phase_ == Phase::kAtDecision) lower = current_.bound;
  if (!open_by_bound_.empty()) {
    lower = std::min(lower, open_by_bound_.begin()->first);
  }
  if (incumbent_) lower = std::min(lower, incumbent_->objective);
  dual_bound_ = std::max(dual_bound_, lower);
  if (incumbent_) dual_bound_ = std::min(dual_bound_, incumbent_->objective);
}

void SolverState::SetCurrentBounds() {
  node_lower_ = problem_->var_lower;
  node_upper_ = problem_->var_upper;
  for (const BoundOverride& o : current_.bounds) {
    node_lower_[o.var] = o.lower;
    node_upper_[o.var] = o.upper;
  }
}

}  // namespace milpenv
