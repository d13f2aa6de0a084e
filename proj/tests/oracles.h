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

// Brute-force reference solvers used only by tests. Nothing here touches the
// simplex or branch-and-bound code paths.

#ifndef MILPENV_TESTS_ORACLES_H_
#define MILPENV_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "milpenv/problem.h"

namespace milpenv::testing {

// Solves the square system a * x = b in place by Gaussian elimination with
// partial pivoting. Returns false when the matrix is (numerically) singular.
inline bool SolveSquare(std::vector<std::vector<double>> a,
                        std::vector<double> b, std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    }
    if (std::fabs(a[piv][c]) < 1e-10) return false;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return true;
}

inline bool LpFeasible(const Problem& p, const std::vector<double>& lower,
                       const std::vector<double>& upper,
                       const std::vector<double>& x, double tol) {
  for (int j = 0; j < p.num_vars(); ++j) {
    if (x[j] < lower[j] - tol || x[j] > upper[j] + tol) return false;
  }
  for (const Constraint& row : p.constraints) {
    double act = 0.0;
    for (const Term& t : row.terms) act += t.coef * x[t.var];
    const double scale = tol * (1.0 + std::fabs(row.rhs));
    if (row.relation != Relation::kGreaterEqual && act > row.rhs + scale) {
      return false;
    }
    if (row.relation != Relation::kLessEqual && act < row.rhs - scale) {
      return false;
    }
  }
  return true;
}

// Minimum of the LP relaxation by enumerating every basic solution: each
// choice of n linearly independent active constraints (rows as equalities
// plus finite variable bounds) defines a candidate vertex. Requires finite
// bounds on every variable so that a feasible LP attains its optimum at a
// vertex. Returns nullopt when infeasible.
inline std::optional<double> VertexEnumerationLp(
    const Problem& p, const std::vector<double>& lower,
    const std::vector<double>& upper) {
  const int n = p.num_vars();
  struct Hyperplane {
    std::vector<double> a;
    double b;
  };
  std::vector<Hyperplane> planes;
  for (const Constraint& row : p.constraints) {
    Hyperplane h{std::vector<double>(n, 0.0), row.rhs};
    for (const Term& t : row.terms) h.a[t.var] += t.coef;
    planes.push_back(h);
  }
  for (int j = 0; j < n; ++j) {
    Hyperplane lo{std::vector<double>(n, 0.0), lower[j]};
    lo.a[j] = 1.0;
    planes.push_back(lo);
    if (upper[j] != lower[j]) {
      Hyperplane up{std::vector<double>(n, 0.0), upper[j]};
      up.a[j] = 1.0;
      planes.push_back(up);
    }
  }
  if (n == 0) {
    return LpFeasible(p, lower, upper, {}, 1e-9) ? std::optional<double>(0.0)
                                                 : std::nullopt;
  }

  std::optional<double> best;
  std::vector<int> chosen;
  const int total = static_cast<int>(planes.size());
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(chosen.size()) == n) {
      // Equality rows need not be in the active set: the feasibility check
      // below rejects any vertex that violates them.
      std::vector<std::vector<double>> a;
      std::vector<double> b;
      for (int k : chosen) {
        a.push_back(planes[k].a);
        b.push_back(planes[k].b);
      }
      std::vector<double> x;
      if (!SolveSquare(a, b, x)) return;
      if (!LpFeasible(p, lower, upper, x, 1e-9)) return;
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += p.objective[j] * x[j];
      if (!best || obj < *best) best = obj;
      return;
    }
    for (int k = start; k < total; ++k) {
      chosen.push_back(k);
      rec(k + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return best;
}

struct MilpOptimum {
  double objective;
  std::vector<double> solution;
};

// Exhaustive search over every integer assignment of the integer variables
// (finite bounds required). Continuous variables, if any, are optimized by
// vertex enumeration with the integers fixed. Returns nullopt if infeasible.
inline std::optional<MilpOptimum> BruteForceMilp(const Problem& p) {
  const int n = p.num_vars();
  std::vector<int> ints;
  bool has_continuous = false;
  for (int j = 0; j < n; ++j) {
    if (p.is_integer[j]) {
      ints.push_back(j);
    } else {
      has_continuous = true;
    }
  }
  std::vector<double> lower = p.var_lower;
  std::vector<double> upper = p.var_upper;
  std::vector<double> x(n, 0.0);
  std::optional<MilpOptimum> best;

  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == ints.size()) {
      if (!has_continuous) {
        if (!LpFeasible(p, lower, upper, x, 0.0)) return;
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += p.objective[j] * x[j];
        if (!best || obj < best->objective) best = MilpOptimum{obj, x};
        return;
      }
      std::optional<double> obj = VertexEnumerationLp(p, lower, upper);
      if (obj && (!best || *obj < best->objective)) {
        best = MilpOptimum{*obj, x};
      }
      return;
    }
    const int j = ints[k];
    const auto lo = static_cast<std::int64_t>(std::ceil(p.var_lower[j]));
    const auto up = static_cast<std::int64_t>(std::floor(p.var_upper[j]));
    for (std::int64_t v = lo; v <= up; ++v) {
      x[j] = static_cast<double>(v);
      lower[j] = upper[j] = x[j];
      rec(k + 1);
    }
    lower[j] = p.var_lower[j];
    upper[j] = p.var_upper[j];
  };
  rec(0);
  return best;
}

}  // namespace milpenv::testing

#endif  // MILPENV_TESTS_ORACLES_H_
