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

#include "milpenv/simplex.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "milpenv/errors.h"

namespace milpenv {

LpModel::LpModel(std::shared_ptr<const Problem> problem)
    : problem_(std::move(problem)), columns_(problem_->num_vars()) {
  for (int i = 0; i < problem_->num_cons(); ++i) {
    for (const Term& t : problem_->constraints[i].terms) {
      columns_[t.var].push_back({i, t.coef});
    }
  }
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "OPTIMAL";
    case LpStatus::kInfeasible:
      return "INFEASIBLE";
    case LpStatus::kUnbounded:
      return "UNBOUNDED";
    case LpStatus::kIterationLimit:
      return "ITER_LIMIT";
  }
  return "?";
}

namespace {

constexpr int kRefactorInterval = 50;
constexpr int kStallThreshold = 100;
constexpr double kPivotTol = 1e-9;
constexpr double kSingularTol = 1e-11;
constexpr double kDegenerateStep = 1e-12;

// Column layout: [0, n) structural, [n, n+m) slacks, [n+m, n+2m) artificials.
// Row i reads  sum_j a_ij x_j + s_i + sign_i * r_i = b_i.
class RevisedSimplex {
 public:
  RevisedSimplex(const LpModel& model, const BoundOverrides& overrides,
                 const LpLimits& limits)
      : model_(model),
        n_(model.num_vars()),
        m_(model.num_rows()),
        total_(n_ + 2 * m_),
        limits_(limits) {
    const Problem& p = model.problem();
    lo_.assign(total_, 0.0);
    up_.assign(total_, 0.0);
    cost_.assign(total_, 0.0);
    x_.assign(total_, 0.0);
    status_.assign(total_, BasisStatus::kAtLower);
    basis_.assign(m_, -1);
    rhs_.assign(m_, 0.0);
    art_sign_.assign(m_, 1.0);

    for (int j = 0; j < n_; ++j) {
      lo_[j] = p.var_lower[j];
      up_[j] = p.var_upper[j];
    }
    for (const BoundOverride& o : overrides) {
      lo_[o.var] = o.lower;
      up_[o.var] = o.upper;
    }
    for (int i = 0; i < m_; ++i) {
      const Constraint& row = p.constraints[i];
      rhs_[i] = row.rhs;
      const int s = n_ + i;
      switch (row.relation) {
        case Relation::kLessEqual:
          lo_[s] = 0.0;
          up_[s] = kInf;
          break;
        case Relation::kGreaterEqual:
          lo_[s] = -kInf;
          up_[s] = 0.0;
          break;
        case Relation::kEqual:
          lo_[s] = 0.0;
          up_[s] = 0.0;
          break;
      }
    }
  }

  LpResult Solve(const LpResult* warm_start) {
    LpResult result;
    for (int j = 0; j < n_; ++j) {
      if (!(lo_[j] <= up_[j]) || lo_[j] == kInf || up_[j] == -kInf) {
        result.status = LpStatus::kInfeasible;
        return Finish(std::move(result));
      }
    }
    if (warm_start != nullptr && LoadBasis(*warm_start)) {
      try {
        const LpStatus feasible = Run(/*phase=*/0);
        if (feasible == LpStatus::kOptimal) {
          SetObjectiveCosts();
          result.status = Run(/*phase=*/2);
          return Finish(std::move(result));
        }
      } catch (const NumericalError&) {
      }
      // Infeasibility (or trouble) from a warm basis is confirmed cold.
    }
    std::fill(cost_.begin(), cost_.end(), 0.0);
    InitialBasis();

    LpStatus phase1 = Run(/*phase=*/1);
    if (phase1 == LpStatus::kIterationLimit) {
      result.status = phase1;
      return Finish(std::move(result));
    }
    double max_artificial = 0.0;
    for (int i = 0; i < m_; ++i) {
      max_artificial = std::max(max_artificial, x_[n_ + m_ + i]);
    }
    if (max_artificial > kFeasibilityTol) {
      result.status = LpStatus::kInfeasible;
      return Finish(std::move(result));
    }
    for (int i = 0; i < m_; ++i) {
      up_[n_ + m_ + i] = 0.0;
      cost_[n_ + m_ + i] = 0.0;
    }
    SetObjectiveCosts();
    result.status = Run(/*phase=*/2);
    return Finish(std::move(result));
  }

 private:
  void SetObjectiveCosts() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    const Problem& p = model_.problem();
    for (int j = 0; j < n_; ++j) cost_[j] = p.objective[j];
  }

  // Places nonbasic column j at a finite bound, preferring `preferred`.
  void PlaceNonbasic(int j, BasisStatus preferred) {
    const bool has_lo = lo_[j] > -kInf;
    const bool has_up = up_[j] < kInf;
    if (has_up && (preferred == BasisStatus::kAtUpper || !has_lo)) {
      x_[j] = up_[j];
      status_[j] = BasisStatus::kAtUpper;
    } else if (has_lo) {
      x_[j] = lo_[j];
      status_[j] = BasisStatus::kAtLower;
    } else {
      x_[j] = 0.0;
      status_[j] = BasisStatus::kFree;
    }
  }

  // Installs the final basis of an earlier solve on the same model, with
  // every artificial fixed at zero. Returns false if it does not fit.
  bool LoadBasis(const LpResult& warm) {
    if (warm.status != LpStatus::kOptimal ||
        static_cast<int>(warm.var_status.size()) != n_ ||
        static_cast<int>(warm.row_status.size()) != m_) {
      return false;
    }
    int k = 0;
    auto take = [&](int j) {
      if (k >= m_) return false;
      basis_[k++] = j;
      status_[j] = BasisStatus::kBasic;
      x_[j] = 0.0;
      return true;
    };
    for (int j = 0; j < n_; ++j) {
      if (warm.var_status[j] == BasisStatus::kBasic) {
        if (!take(j)) return false;
      } else {
        PlaceNonbasic(j, warm.var_status[j]);
      }
    }
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      if (warm.row_status[i] == BasisStatus::kBasic) {
        if (!take(s)) return false;
      } else {
        PlaceNonbasic(s, BasisStatus::kAtLower);
      }
    }
    if (k != m_) return false;
    for (int i = 0; i < m_; ++i) {
      const int a = n_ + m_ + i;
      lo_[a] = up_[a] = x_[a] = 0.0;
      status_[a] = BasisStatus::kAtLower;
    }
    std::fill(cost_.begin(), cost_.end(), 0.0);
    return true;
  }

  // Phase 0 minimizes the sum of bound violations of the basic variables:
  // cost +1 above the upper bound, -1 below the lower one. Returns false
  // when the basis is primal feasible.
  bool SetCompositeCosts() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    bool any = false;
    for (int r = 0; r < m_; ++r) {
      const int j = basis_[r];
      if (x_[j] > up_[j] + kFeasibilityTol) {
        cost_[j] = 1.0;
        any = true;
      } else if (x_[j] < lo_[j] - kFeasibilityTol) {
        cost_[j] = -1.0;
        any = true;
      }
    }
    if (any) ComputeDuals();
    return any;
  }

  // Bounds seen by the ratio test. In phase 0 an infeasible basic variable
  // may move freely away from its violated bound and stops on reaching it.
  double RatioLower(int j) const {
    if (phase_ == 0 && cost_[j] > 0.0) return up_[j];
    if (phase_ == 0 && cost_[j] < 0.0) return -kInf;
    return lo_[j];
  }
  double RatioUpper(int j) const {
    if (phase_ == 0 && cost_[j] > 0.0) return kInf;
    if (phase_ == 0 && cost_[j] < 0.0) return lo_[j];
    return up_[j];
  }

  // Applies f(row, value) to each nonzero of column j.
  template <typename F>
  void ForColumn(int j, F&& f) const {
    if (j < n_) {
      for (const LpModel::Entry& e : model_.column(j)) f(e.row, e.value);
    } else if (j < n_ + m_) {
      f(j - n_, 1.0);
    } else {
      f(j - n_ - m_, art_sign_[j - n_ - m_]);
    }
  }

  double Binv(int r, int c) const {
    return binv_[static_cast<std::size_t>(r) * m_ + c];
  }

  void InitialBasis() {
    for (int j = 0; j < n_; ++j) {
      if (lo_[j] > -kInf) {
        x_[j] = lo_[j];
        status_[j] = BasisStatus::kAtLower;
      } else if (up_[j] < kInf) {
        x_[j] = up_[j];
        status_[j] = BasisStatus::kAtUpper;
      } else {
        x_[j] = 0.0;
        status_[j] = BasisStatus::kFree;
      }
    }
    std::vector<double> residual = rhs_;
    for (int j = 0; j < n_; ++j) {
      if (x_[j] == 0.0) continue;
      for (const LpModel::Entry& e : model_.column(j)) {
        residual[e.row] -= e.value * x_[j];
      }
    }
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      const int a = n_ + m_ + i;
      const double r = residual[i];
      if (r >= lo_[s] && r <= up_[s]) {
        basis_[i] = s;
        x_[s] = r;
        status_[s] = BasisStatus::kBasic;
        // Unused artificial: fixed at zero, never priced.
        lo_[a] = up_[a] = 0.0;
        status_[a] = BasisStatus::kAtLower;
        binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
      } else {
        const bool below = r < lo_[s];
        x_[s] = below ? lo_[s] : up_[s];
        status_[s] = below ? BasisStatus::kAtLower : BasisStatus::kAtUpper;
        const double gap = r - x_[s];
        art_sign_[i] = gap >= 0.0 ? 1.0 : -1.0;
        basis_[i] = a;
        x_[a] = std::fabs(gap);
        lo_[a] = 0.0;
        up_[a] = kInf;
        cost_[a] = 1.0;
        status_[a] = BasisStatus::kBasic;
        binv_[static_cast<std::size_t>(i) * m_ + i] = art_sign_[i];
      }
    }
  }

  // Rebuilds the basis inverse from scratch, then recomputes the basic
  // values and the duals.
  //
  // Slack and artificial columns are signed unit vectors, so only the block
  // of structural columns needs a dense inverse. With U the rows owning a
  // basic unit column, R the others and S the basic structural columns,
  // M = A[R, S] is square and
  //
  //   inv(B) = [ inv(M)                 0 ]   (rows of S; columns R | U)
  //            [ -D A[U, S] inv(M)      D ]   (rows of U; D = diag(sign)).
  void Refactor() {
    const std::size_t m = static_cast<std::size_t>(m_);
    std::vector<int> unit_pos(m_, -1);  // basis position owning row i
    std::vector<int> structural;        // basis positions of S
    for (int k = 0; k < m_; ++k) {
      const int j = basis_[k];
      if (j < n_) {
        structural.push_back(k);
        continue;
      }
      const int row = j < n_ + m_ ? j - n_ : j - n_ - m_;
      if (unit_pos[row] >= 0) {
        throw NumericalError("singular basis during refactorization");
      }
      unit_pos[row] = k;
    }
    std::vector<int> rows_r;
    std::vector<int> r_index(m_, -1);
    for (int i = 0; i < m_; ++i) {
      if (unit_pos[i] < 0) {
        r_index[i] = static_cast<int>(rows_r.size());
        rows_r.push_back(i);
      }
    }
    const int kk = static_cast<int>(structural.size());
    if (static_cast<int>(rows_r.size()) != kk) {
      throw NumericalError("singular basis during refactorization");
    }

    // Gauss-Jordan on [M | I] with partial pivoting.
    const std::size_t w = 2 * static_cast<std::size_t>(kk);
    std::vector<double> aug(static_cast<std::size_t>(kk) * w, 0.0);
    for (int t = 0; t < kk; ++t) {
      for (const LpModel::Entry& e : model_.column(basis_[structural[t]])) {
        const int ri = r_index[e.row];
        if (ri >= 0) aug[ri * w + t] = e.value;
      }
    }
    for (int i = 0; i < kk; ++i) aug[i * w + kk + i] = 1.0;
    std::vector<std::size_t> nz;
    for (int c = 0; c < kk; ++c) {
      int piv = -1;
      double best = kSingularTol;
      for (int r = c; r < kk; ++r) {
        const double v = std::fabs(aug[r * w + c]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (piv < 0) {
        throw NumericalError("singular basis during refactorization");
      }
      if (piv != c) {
        std::swap_ranges(aug.begin() + piv * w, aug.begin() + (piv + 1) * w,
                         aug.begin() + c * w);
      }
      double* prow = &aug[c * w];
      const double inv = 1.0 / prow[c];
      nz.clear();
      for (std::size_t k = c; k < w; ++k) {
        if (prow[k] != 0.0) {
          prow[k] *= inv;
          nz.push_back(k);
        }
      }
      prow[c] = 1.0;
      for (int r = 0; r < kk; ++r) {
        if (r == c) continue;
        double* row = &aug[r * w];
        const double f = row[c];
        if (f == 0.0) continue;
        for (std::size_t k : nz) row[k] -= f * prow[k];
        row[c] = 0.0;
      }
    }

    binv_.assign(m * m, 0.0);
    for (int t = 0; t < kk; ++t) {
      double* out = &binv_[structural[t] * m];
      const double* minv = &aug[t * w + kk];
      for (int ri = 0; ri < kk; ++ri) out[rows_r[ri]] = minv[ri];
    }
    for (int i = 0; i < m_; ++i) {
      const int k = unit_pos[i];
      if (k < 0) continue;
      binv_[k * m + i] = basis_[k] < n_ + m_ ? 1.0 : art_sign_[i];
    }
    for (int t = 0; t < kk; ++t) {
      const double* minv = &aug[t * w + kk];
      for (const LpModel::Entry& e : model_.column(basis_[structural[t]])) {
        const int k = unit_pos[e.row];
        if (k < 0 || e.value == 0.0) continue;
        const double f = binv_[k * m + e.row] * e.value;
        double* out = &binv_[k * m];
        for (int ri = 0; ri < kk; ++ri) out[rows_r[ri]] -= f * minv[ri];
      }
    }
    ComputeBasicValues();
    ComputeDuals();
    since_refactor_ = 0;
  }

  void ComputeBasicValues() {
    std::vector<double> residual = rhs_;
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == BasisStatus::kBasic || x_[j] == 0.0) continue;
      const double xj = x_[j];
      ForColumn(j, [&](int row, double v) { residual[row] -= v * xj; });
    }
    for (int r = 0; r < m_; ++r) {
      double sum = 0.0;
      const double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (int k = 0; k < m_; ++k) sum += row[k] * residual[k];
      x_[basis_[r]] = sum;
    }
  }

  void ComputeDuals() {
    y_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double c = cost_[basis_[r]];
      if (c == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (int k = 0; k < m_; ++k) y_[k] += c * row[k];
    }
  }

  double ReducedCost(int j) const {
    double d = cost_[j];
    ForColumn(j, [&](int row, double v) { d -= y_[row] * v; });
    return d;
  }

  void Ftran(int j) {
    alpha_.assign(m_, 0.0);
    ForColumn(j, [&](int row, double v) {
      for (int r = 0; r < m_; ++r) alpha_[r] += Binv(r, row) * v;
    });
  }

  // Returns the entering column and its direction (+1 increase, -1
  // decrease), or -1 when no reduced cost is attractive.
  int Price(bool bland, double& direction, double& reduced_cost) const {
    int entering = -1;
    double best = 0.0;
    for (int j = 0; j < total_; ++j) {
      const BasisStatus st = status_[j];
      if (st == BasisStatus::kBasic || lo_[j] == up_[j]) continue;
      const double d = ReducedCost(j);
      double dir = 0.0;
      if (st == BasisStatus::kAtLower && d < -kOptimalityTol) {
        dir = 1.0;
      } else if (st == BasisStatus::kAtUpper && d > kOptimalityTol) {
        dir = -1.0;
      } else if (st == BasisStatus::kFree && std::fabs(d) > kOptimalityTol) {
        dir = d < 0.0 ? 1.0 : -1.0;
      }
      if (dir == 0.0) continue;
      if (bland) {
        direction = dir;
        reduced_cost = d;
        return j;
      }
      if (std::fabs(d) > best) {
        best = std::fabs(d);
        entering = j;
        direction = dir;
        reduced_cost = d;
      }
    }
    return entering;
  }

  // Exact step until basic position r hits a bound, given g = dir * alpha_r.
  double ExactRatio(int r, double g) const {
    const int j = basis_[r];
    if (g > 0.0) return std::max(0.0, (x_[j] - RatioLower(j)) / g);
    return std::max(0.0, (x_[j] - RatioUpper(j)) / g);
  }

  // Harris two-pass ratio test (textbook min-ratio with lowest-index ties in
  // Bland mode). Returns the leaving basic position, -1 for a bound flip of
  // the entering variable, or -2 when the step is unbounded.
  int RatioTest(int q, double dir, bool bland, double& step) const {
    const double flip = up_[q] - lo_[q];
    double relaxed = kInf;
    for (int r = 0; r < m_; ++r) {
      const double g = dir * alpha_[r];
      if (std::fabs(g) <= kPivotTol) continue;
      const int j = basis_[r];
      const double tol = bland ? 0.0 : kFeasibilityTol;
      const double lo = RatioLower(j);
      const double up = RatioUpper(j);
      double bound = kInf;
      if (g > 0.0 && lo > -kInf) {
        bound = (x_[j] - lo + tol) / g;
      } else if (g < 0.0 && up < kInf) {
        bound = (x_[j] - up - tol) / g;
      }
      relaxed = std::min(relaxed, std::max(bound, 0.0));
    }
    if (relaxed == kInf && flip == kInf) return -2;

    int leave = -1;
    double leave_step = kInf;
    double best_pivot = 0.0;
    if (relaxed < kInf) {
      const double limit = bland ? relaxed + kDegenerateStep : relaxed;
      for (int r = 0; r < m_; ++r) {
        const double g = dir * alpha_[r];
        if (std::fabs(g) <= kPivotTol) continue;
        const int j = basis_[r];
        if ((g > 0.0 && RatioLower(j) == -kInf) ||
            (g < 0.0 && RatioUpper(j) == kInf)) {
          continue;
        }
        const double t = ExactRatio(r, g);
        if (t > limit) continue;
        if (bland) {
          if (leave < 0 || j < basis_[leave]) {
            leave = r;
            leave_step = t;
          }
        } else if (std::fabs(g) > best_pivot) {
          best_pivot = std::fabs(g);
          leave = r;
          leave_step = t;
        }
      }
    }
    if (leave >= 0 && leave_step < flip) {
      step = leave_step;
      return leave;
    }
    if (flip < kInf) {
      step = flip;
      return -1;
    }
    step = leave_step;
    return leave;
  }

  void Pivot(int r) {
    const std::size_t m = static_cast<std::size_t>(m_);
    double* prow = &binv_[r * m];
    const double inv = 1.0 / alpha_[r];
    pivot_nz_.clear();
    for (std::size_t k = 0; k < m; ++k) {
      if (prow[k] != 0.0) {
        prow[k] *= inv;
        pivot_nz_.push_back(k);
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (i == r || alpha_[i] == 0.0) continue;
      const double f = alpha_[i];
      double* row = &binv_[i * m];
      for (std::size_t k : pivot_nz_) row[k] -= f * prow[k];
    }
  }

  // Phase 0: feasibility from a loaded basis. Phase 1: artificial
  // infeasibility from the slack basis. Phase 2: the objective.
  LpStatus Run(int phase) {
    phase_ = phase;
    Refactor();
    bool fresh = true;
    bool bland = false;
    int degenerate_run = 0;
    for (;;) {
      if (iterations_ >= limits_.max_iterations) {
        return LpStatus::kIterationLimit;
      }
      if (since_refactor_ >= kRefactorInterval) {
        Refactor();
        fresh = true;
      }
      if (phase == 0 && !SetCompositeCosts()) return LpStatus::kOptimal;
      double dir = 0.0;
      double dq = 0.0;
      const int q = Price(bland, dir, dq);
      if (q < 0) {
        if (fresh) {
          return phase == 0 ? LpStatus::kInfeasible : LpStatus::kOptimal;
        }
        Refactor();
        fresh = true;
        continue;
      }
      Ftran(q);
      double step = 0.0;
      const int leave = RatioTest(q, dir, bland, step);
      if (leave == -2) {
        // Phases 0 and 1 are bounded below by zero.
        if (phase != 2) throw NumericalError("unbounded feasibility phase");
        return LpStatus::kUnbounded;
      }

      x_[q] += dir * step;
      for (int r = 0; r < m_; ++r) {
        if (alpha_[r] != 0.0) x_[basis_[r]] -= dir * step * alpha_[r];
      }
      if (leave == -1) {
        const bool to_upper = dir > 0.0;
        status_[q] = to_upper ? BasisStatus::kAtUpper : BasisStatus::kAtLower;
        x_[q] = to_upper ? up_[q] : lo_[q];
      } else {
        const int out = basis_[leave];
        const double g = dir * alpha_[leave];
        x_[out] = g > 0.0 ? RatioLower(out) : RatioUpper(out);
        status_[out] = x_[out] == lo_[out] ? BasisStatus::kAtLower
                                           : BasisStatus::kAtUpper;
        if (phase == 1 && out >= n_ + m_) {
          // An artificial that left the basis never comes back.
          up_[out] = 0.0;
          x_[out] = 0.0;
          status_[out] = BasisStatus::kAtLower;
        }
        Pivot(leave);
        // y += d_q * (row `leave` of the new inverse).
        const double* prow = &binv_[static_cast<std::size_t>(leave) * m_];
        for (int k = 0; k < m_; ++k) y_[k] += dq * prow[k];
        basis_[leave] = q;
        status_[q] = BasisStatus::kBasic;
        ++since_refactor_;
      }
      ++iterations_;
      fresh = false;

      if (step <= kDegenerateStep) {
        if (++degenerate_run >= kStallThreshold) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  LpResult Finish(LpResult result) {
    result.iterations = iterations_;
    if (result.status != LpStatus::kOptimal) return result;
    const Problem& p = model_.problem();
    ComputeDuals();
    result.primal.assign(x_.begin(), x_.begin() + n_);
    result.duals = y_;
    result.reduced_costs.assign(n_, 0.0);
    result.var_status.assign(status_.begin(), status_.begin() + n_);
    result.objective = 0.0;
    for (int j = 0; j < n_; ++j) {
      result.objective += p.objective[j] * x_[j];
      if (status_[j] != BasisStatus::kBasic) {
        result.reduced_costs[j] = ReducedCost(j);
      }
    }
    result.row_status.resize(m_);
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      if (status_[s] == BasisStatus::kBasic) {
        result.row_status[i] = BasisStatus::kBasic;
      } else {
        result.row_status[i] =
            p.constraints[i].relation == Relation::kLessEqual
                ? BasisStatus::kAtUpper
                : BasisStatus::kAtLower;
      }
    }
    return result;
  }

  const LpModel& model_;
  const int n_;
  const int m_;
  const int total_;
  const LpLimits limits_;

  std::vector<double> lo_, up_, cost_, x_, rhs_, art_sign_;
  std::vector<BasisStatus> status_;
  std::vector<int> basis_;
  std::vector<double> binv_;  // row-major m x m; row r belongs to basis_[r]
  std::vector<double> y_;
  std::vector<double> alpha_;
  std::vector<std::size_t> pivot_nz_;
  std::int64_t iterations_ = 0;
  int since_refactor_ = 0;
  int phase_ = 1;
};

}  // namespace

LpResult SolveLp(const LpModel& model, const BoundOverrides& overrides,
                 const LpLimits& limits, const LpResult* warm_start) {
  return RevisedSimplex(model, overrides, limits).Solve(warm_start);
}

LpResult SolveLp(const Problem& problem, const BoundOverrides& overrides,
                 const LpLimits& limits, const LpResult* warm_start) {
  // Non-owning alias: the model does not outlive this call.
  LpModel model(
      std::shared_ptr<const Problem>(&problem, [](const Problem*) {}));
  return SolveLp(model, overrides, limits, warm_start);
}

}  // namespace milpenv
