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

#ifndef MILPENV_PROBLEM_H_
#define MILPENV_PROBLEM_H_

#include <limits>
#include <string>
#include <vector>

namespace milpenv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  int var = 0;
  double coef = 0.0;

  bool operator==(const Term&) const = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;

  bool operator==(const Constraint&) const = default;
};

// A mixed-integer linear program in minimization form.
//
// Maximization inputs are stored with a negated objective and `maximize` set,
// so the solver only ever minimizes. Use ReportedObjective() to translate an
// internal objective value back to the sense the instance was written in.
//
// Problems are treated as immutable once built; engine states and
// environments hold them through std::shared_ptr<const Problem>.
struct Problem {
  std::string name;
  bool maximize = false;

  std::vector<std::string> var_names;
  std::vector<double> objective;
  std::vector<double> var_lower;
  std::vector<double> var_upper;
  std::vector<bool> is_integer;

  std::vector<Constraint> constraints;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_cons() const { return static_cast<int>(constraints.size()); }

  // Appends a variable and returns its index. An empty name becomes "x<j>".
  int AddVariable(double objective_coef, double lower, double upper,
                  bool integer, std::string var_name = {});
  // Appends a constraint and returns its index. An empty name becomes "c<i>".
  int AddConstraint(std::vector<Term> terms, Relation relation, double rhs,
                    std::string con_name = {});

  double ReportedObjective(double internal) const {
    return maximize ? -internal : internal;
  }

  bool operator==(const Problem&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  // Violations joined with "; ".
  std::string ToString() const;
};

// Checks every structural invariant of `problem` and lists each violation.
ValidationReport Validate(const Problem& problem);

// Throws InvalidProblemError carrying the report when validation fails.
void ValidateOrThrow(const Problem& problem);

}  // namespace milpenv

#endif  // MILPENV_PROBLEM_H_
