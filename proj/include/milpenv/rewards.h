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

// Reward functions built from solver metrics with arithmetic.
//
// A RewardExpr is an immutable expression tree. Its leaves are metrics that
// yield their change since the previous evaluation, so the reward returned at
// reset is the amount accrued before the first decision point and summing an
// episode's rewards recovers the metric's total:
//
//   RewardExpr r = Pow(RewardExpr::LpIterations(), 2.0);
//   RewardExpr s = ParseReward("(lp_iterations ^ 2)");  // same tree
//
// Text grammar (lowest to highest precedence):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?          right associative, -x^2 is -(x^2)
//   atom   := number | leaf | func '(' expr ')' | '(' expr ')'
//   leaf   := lp_iterations | nnodes | solving_time | is_done
//   func   := exp | log | abs
//
// Division by zero and logarithms of non-positive values propagate IEEE
// infinities and NaNs unchanged.

#ifndef MILPENV_REWARDS_H_
#define MILPENV_REWARDS_H_

#include <memory>
#include <string>
#include <string_view>

#include "milpenv/engine.h"

namespace milpenv {

class RewardExpr {
 public:
  enum class Kind {
    kLpIterations,
    kNNodes,
    kSolvingTime,
    kIsDone,
    kConstant,
    kNeg,
    kExp,
    kLog,
    kAbs,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kPow,
  };

  // Raw per-transition leaf values.
  struct Leaves {
    double lp_iterations = 0.0;
    double nnodes = 0.0;
    double solving_time = 0.0;
    double is_done = 0.0;
  };

  // A constant expression.
  RewardExpr(double value);  // NOLINT: implicit on purpose, as in `r * 2.0`

  static RewardExpr LpIterations();
  static RewardExpr NNodes();
  static RewardExpr SolvingTime();
  static RewardExpr IsDone();
  static RewardExpr Constant(double value) { return RewardExpr(value); }

  Kind kind() const { return node_->kind; }
  double value() const { return node_->value; }

  double Evaluate(const Leaves& leaves) const;

  // Fully parenthesized infix text that ParseReward() maps back to an
  // expression with the same text.
  std::string ToString() const;

  friend RewardExpr operator+(const RewardExpr& a, const RewardExpr& b);
  friend RewardExpr operator-(const RewardExpr& a, const RewardExpr& b);
  friend RewardExpr operator*(const RewardExpr& a, const RewardExpr& b);
  friend RewardExpr operator/(const RewardExpr& a, const RewardExpr& b);
  friend RewardExpr operator-(const RewardExpr& a);
  friend RewardExpr Pow(const RewardExpr& a, const RewardExpr& b);
  friend RewardExpr Exp(const RewardExpr& a);
  friend RewardExpr Log(const RewardExpr& a);
  friend RewardExpr Abs(const RewardExpr& a);

 private:
  struct Node {
    Kind kind;
    double value = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };
  explicit RewardExpr(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  static RewardExpr Make(Kind kind, const RewardExpr* lhs,
                         const RewardExpr* rhs);
  static double Eval(const Node& node, const Leaves& leaves);
  static void Print(const Node& node, std::string& out);

  std::shared_ptr<const Node> node_;
};

RewardExpr operator+(const RewardExpr& a, const RewardExpr& b);
RewardExpr operator-(const RewardExpr& a, const RewardExpr& b);
RewardExpr operator*(const RewardExpr& a, const RewardExpr& b);
RewardExpr operator/(const RewardExpr& a, const RewardExpr& b);
RewardExpr operator-(const RewardExpr& a);
RewardExpr Pow(const RewardExpr& a, const RewardExpr& b);
RewardExpr Exp(const RewardExpr& a);
RewardExpr Log(const RewardExpr& a);
RewardExpr Abs(const RewardExpr& a);

// Throws RewardParseError carrying the 0-based offset of the problem.
RewardExpr ParseReward(std::string_view text);

// Stateful evaluator: snapshots counters at BeforeReset() and turns each
// leaf into a per-transition delta.
class RewardFunction {
 public:
  explicit RewardFunction(RewardExpr expr) : expr_(std::move(expr)) {}

  const RewardExpr& expr() const { return expr_; }

  void BeforeReset(const SolverState& state);
  double Evaluate(const SolverState& state, bool done);

  // Leaf values of the last Evaluate() call.
  const RewardExpr::Leaves& last_leaves() const { return last_; }

 private:
  RewardExpr expr_;
  std::int64_t lp_iterations_ = 0;
  std::int64_t nnodes_ = 0;
  double solving_time_ = 0.0;
  RewardExpr::Leaves last_;
};

}  // namespace milpenv

#endif  // MILPENV_REWARDS_H_
