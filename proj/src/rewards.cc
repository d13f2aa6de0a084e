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

#include "milpenv/rewards.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "milpenv/errors.h"
#include "milpenv/lp_format.h"

namespace milpenv {

RewardExpr::RewardExpr(double value)
    : node_(std::make_shared<const Node>(
          Node{Kind::kConstant, value, {}, {}})) {}

RewardExpr RewardExpr::Make(Kind kind, const RewardExpr* lhs,
                            const RewardExpr* rhs) {
  return RewardExpr(std::make_shared<const Node>(
      Node{kind, 0.0, lhs ? lhs->node_ : nullptr, rhs ? rhs->node_ : nullptr}));
}

RewardExpr RewardExpr::LpIterations() {
  return Make(Kind::kLpIterations, nullptr, nullptr);
}
RewardExpr RewardExpr::NNodes() {
  return Make(Kind::kNNodes, nullptr, nullptr);
}
RewardExpr RewardExpr::SolvingTime() {
  return Make(Kind::kSolvingTime, nullptr, nullptr);
}
RewardExpr RewardExpr::IsDone() {
  return Make(Kind::kIsDone, nullptr, nullptr);
}

RewardExpr operator+(const RewardExpr& a, const RewardExpr& b) {
  return RewardExpr::Make(RewardExpr::Kind::kAdd, &a, &b);
}
RewardExpr operator-(const RewardExpr& a, const RewardExpr& b) {
  return RewardExpr::Make(RewardExpr::Kind::kSub, &a, &b);
}
RewardExpr operator*(const RewardExpr& a, const RewardExpr& b) {
  return RewardExpr::Make(RewardExpr::Kind::kMul, &a, &b);
}
RewardExpr operator/(const RewardExpr& a, const RewardExpr& b) {
  return RewardExpr::Make(RewardExpr::Kind::kDiv, &a, &b);
}
RewardExpr operator-(const RewardExpr& a) {
  return RewardExpr::Make(RewardExpr::Kind::kNeg, &a, nullptr);
}
RewardExpr Pow(const RewardExpr& a, const RewardExpr& b) {
  return RewardExpr::Make(RewardExpr::Kind::kPow, &a, &b);
}
RewardExpr Exp(const RewardExpr& a) {
  return RewardExpr::Make(RewardExpr::Kind::kExp, &a, nullptr);
}
RewardExpr Log(const RewardExpr& a) {
  return RewardExpr::Make(RewardExpr::Kind::kLog, &a, nullptr);
}
RewardExpr Abs(const RewardExpr& a) {
  return RewardExpr::Make(RewardExpr::Kind::kAbs, &a, nullptr);
}

double RewardExpr::Eval(const Node& n, const Leaves& leaves) {
  switch (n.kind) {
    case Kind::kLpIterations:
      return leaves.lp_iterations;
    case Kind::kNNodes:
      return leaves.nnodes;
    case Kind::kSolvingTime:
      return leaves.solving_time;
    case Kind::kIsDone:
      return leaves.is_done;
    case Kind::kConstant:
      return n.value;
    case Kind::kNeg:
      return -Eval(*n.lhs, leaves);
    case Kind::kExp:
      return std::exp(Eval(*n.lhs, leaves));
    case Kind::kLog:
      return std::log(Eval(*n.lhs, leaves));
    case Kind::kAbs:
      return std::fabs(Eval(*n.lhs, leaves));
    case Kind::kAdd:
      return Eval(*n.lhs, leaves) + Eval(*n.rhs, leaves);
    case Kind::kSub:
      return Eval(*n.lhs, leaves) - Eval(*n.rhs, leaves);
    case Kind::kMul:
      return Eval(*n.lhs, leaves) * Eval(*n.rhs, leaves);
    case Kind::kDiv:
      return Eval(*n.lhs, leaves) / Eval(*n.rhs, leaves);
    case Kind::kPow:
      return std::pow(Eval(*n.lhs, leaves), Eval(*n.rhs, leaves));
  }
  return 0.0;
}

double RewardExpr::Evaluate(const Leaves& leaves) const {
  return Eval(*node_, leaves);
}

void RewardExpr::Print(const Node& n, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    Print(*n.lhs, out);
    out += op;
    Print(*n.rhs, out);
    out += ')';
  };
  auto call = [&](const char* fn) {
    out += fn;
    out += '(';
    Print(*n.lhs, out);
    out += ')';
  };
  switch (n.kind) {
    case Kind::kLpIterations:
      out += "lp_iterations";
      return;
    case Kind::kNNodes:
      out += "nnodes";
      return;
    case Kind::kSolvingTime:
      out += "solving_time";
      return;
    case Kind::kIsDone:
      out += "is_done";
      return;
    case Kind::kConstant: {
      const double v = n.value;
      if (std::isnan(v)) {
        out += "nan";
      } else if (std::signbit(v) && v != 0.0) {
        out += "(-";
        out += std::isinf(v) ? "inf" : FormatDouble(-v);
        out += ')';
      } else {
        out += std::isinf(v) ? "inf" : FormatDouble(v);
      }
      return;
    }
    case Kind::kNeg:
      out += "(-";
      Print(*n.lhs, out);
      out += ')';
      return;
    case Kind::kExp:
      call("exp");
      return;
    case Kind::kLog:
      call("log");
      return;
    case Kind::kAbs:
      call("abs");
      return;
    case Kind::kAdd:
      binary(" + ");
      return;
    case Kind::kSub:
      binary(" - ");
      return;
    case Kind::kMul:
      binary(" * ");
      return;
    case Kind::kDiv:
      binary(" / ");
      return;
    case Kind::kPow:
      binary(" ^ ");
      return;
  }
}

std::string RewardExpr::ToString() const {
  std::string out;
  Print(*node_, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RewardExpr Parse() {
    RewardExpr e = Expr();
    SkipSpace();
    if (pos_ != text_.size()) {
      Fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw RewardParseError(what, pos_);
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool Accept(char c) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void Expect(char c) {
    if (!Accept(c)) {
      Fail(pos_ < text_.size() ? "expected '" + std::string(1, c) + "'"
                               : "unexpected end of input");
    }
  }

  RewardExpr Expr() {
    RewardExpr lhs = Term();
    for (;;) {
      if (Accept('+')) {
        lhs = lhs + Term();
      } else if (Accept('-')) {
        lhs = lhs - Term();
      } else {
        return lhs;
      }
    }
  }

  RewardExpr Term() {
    RewardExpr lhs = Unary();
    for (;;) {
      if (Accept('*')) {
        lhs = lhs * Unary();
      } else if (Accept('/')) {
        lhs = lhs / Unary();
      } else {
        return lhs;
      }
    }
  }

  RewardExpr Unary() {
    if (Accept('-')) {
      RewardExpr operand = Unary();
      // Folding keeps "(-3)" a constant, so printed text parses back to
      // the same text.
      if (operand.kind() == RewardExpr::Kind::kConstant) {
        return RewardExpr(-operand.value());
      }
      return -operand;
    }
    return Power();
  }

  RewardExpr Power() {
    RewardExpr base = Atom();
    if (Accept('^')) return Pow(base, Unary());
    return base;
  }

  bool IsNumberStart() {
    SkipSpace();
    return pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.');
  }

  RewardExpr Atom() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RewardExpr e = Expr();
      Expect(')');
      return e;
    }
    if (IsNumberStart()) return Number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "lp_iterations") return RewardExpr::LpIterations();
      if (word == "nnodes") return RewardExpr::NNodes();
      if (word == "solving_time") return RewardExpr::SolvingTime();
      if (word == "is_done") return RewardExpr::IsDone();
      if (word == "inf") return RewardExpr(kInf);
      if (word == "nan") return RewardExpr(std::nan(""));
      if (word == "exp" || word == "log" || word == "abs") {
        Expect('(');
        RewardExpr arg = Expr();
        Expect(')');
        if (word == "exp") return Exp(arg);
        if (word == "log") return Log(arg);
        return Abs(arg);
      }
      pos_ = start;
      Fail("unknown identifier '" + std::string(word) + "'");
    }
    Fail("unexpected '" + std::string(1, c) + "'");
  }

  RewardExpr Number() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double value = 0.0;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc()) Fail("malformed number");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return RewardExpr(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RewardExpr ParseReward(std::string_view text) { return Parser(text).Parse(); }

// ---------------------------------------------------------------------------

void RewardFunction::BeforeReset(const SolverState& state) {
  lp_iterations_ = state.total_lp_iterations();
  nnodes_ = state.nodes_processed();
  solving_time_ = state.solving_time();
  last_ = {};
}

double RewardFunction::Evaluate(const SolverState& state, bool done) {
  last_.lp_iterations =
      static_cast<double>(state.total_lp_iterations() - lp_iterations_);
  last_.nnodes = static_cast<double>(state.nodes_processed() - nnodes_);
  last_.solving_time = state.solving_time() - solving_time_;
  last_.is_done = done ? 1.0 : 0.0;
  lp_iterations_ = state.total_lp_iterations();
  nnodes_ = state.nodes_processed();
  solving_time_ = state.solving_time();
  return expr_.Evaluate(last_);
}

}  // namespace milpenv
