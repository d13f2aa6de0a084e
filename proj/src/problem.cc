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

#include "milpenv/problem.h"

#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>

#include "milpenv/errors.h"

namespace milpenv {

int Problem::AddVariable(double objective_coef, double lower, double upper,
                         bool integer, std::string var_name) {
  const int index = num_vars();
  if (var_name.empty()) var_name = "x" + std::to_string(index);
  var_names.push_back(std::move(var_name));
  objective.push_back(objective_coef);
  var_lower.push_back(lower);
  var_upper.push_back(upper);
  is_integer.push_back(integer);
  return index;
}

int Problem::AddConstraint(std::vector<Term> terms, Relation relation,
                           double rhs, std::string con_name) {
  const int index = num_cons();
  if (con_name.empty()) con_name = "c" + std::to_string(index);
  constraints.push_back(
      Constraint{std::move(con_name), std::move(terms), relation, rhs});
  return index;
}

std::string ValidationReport::ToString() const {
  std::string out;
  for (const std::string& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

ValidationReport Validate(const Problem& problem) {
  ValidationReport report;
  auto add = [&report](std::string message) {
    report.violations.push_back(std::move(message));
  };

  const std::size_t n = problem.objective.size();
  if (problem.var_lower.size() != n || problem.var_upper.size() != n ||
      problem.is_integer.size() != n || problem.var_names.size() != n) {
    add("size mismatch: per-variable arrays disagree on num_vars");
    return report;
  }

  std::unordered_set<std::string> names;
  for (std::size_t j = 0; j < n; ++j) {
    const std::string where = "variable " + std::to_string(j);
    if (!std::isfinite(problem.objective[j])) {
      add(where + ": non-finite objective coefficient");
    }
    const double lo = problem.var_lower[j];
    const double up = problem.var_upper[j];
    if (std::isnan(lo) || std::isnan(up)) {
      add(where + ": NaN bound");
      continue;
    }
    if (lo == kInf || up == -kInf) add(where + ": bound at wrong infinity");
    if (lo > up) add(where + ": bound inversion");
    if (problem.var_names[j].empty()) add(where + ": empty name");
    if (!names.insert(problem.var_names[j]).second) {
      add(where + ": duplicate name '" + problem.var_names[j] + "'");
    }
  }

  for (int i = 0; i < problem.num_cons(); ++i) {
    const Constraint& row = problem.constraints[i];
    const std::string where = "constraint " + std::to_string(i);
    if (!std::isfinite(row.rhs)) add(where + ": non-finite rhs");
    std::unordered_set<int> seen;
    for (const Term& t : row.terms) {
      if (t.var < 0 || static_cast<std::size_t>(t.var) >= n) {
        add(where + ": index out of range (" + std::to_string(t.var) + ")");
        continue;
      }
      if (!seen.insert(t.var).second) {
        add(where + ": duplicate index " + std::to_string(t.var));
      }
      if (!std::isfinite(t.coef)) add(where + ": non-finite coefficient");
    }
  }
  return report;
}

void ValidateOrThrow(const Problem& problem) {
  ValidationReport report = Validate(problem);
  if (!report.ok()) {
    throw InvalidProblemError("invalid problem '" + problem.name +
                              "': " + report.ToString());
  }
}

}  // namespace milpenv
