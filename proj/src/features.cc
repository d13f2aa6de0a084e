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

#include "milpenv/features.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "milpenv/errors.h"

namespace milpenv {
namespace {

// Variable columns.
enum {
  kVarObj,
  kVarHasLower,
  kVarHasUpper,
  kVarIsInteger,
  kVarLpValue,
  kVarFractionality,
  kVarIsBasic,
  kVarAtLower,
  kVarAtUpper,
};

// Constraint columns.
enum { kConRhs, kConRelation, kConDual, kConTight };

// Candidate columns.
enum {
  kCandObj,
  kCandObjNorm,
  kCandRows,
  kCandMeanAbs,
  kCandMinAbs,
  kCandMaxAbs,
  kCandLpValue,
  kCandFractionality,
  kCandDistLower,
  kCandDistUpper,
  kCandPseudocost,
  kCandIsBasic,
};

// Zero norms disable normalization.
double Normalize(double v, double norm) { return norm > 0.0 ? v / norm : v; }

double ObjectiveNorm(const Problem& p) {
  double norm = 0.0;
  for (double c : p.objective) norm = std::max(norm, std::fabs(c));
  return norm;
}

double RowNorm(const Constraint& c) {
  double norm = 0.0;
  for (const Term& t : c.terms) norm = std::max(norm, std::fabs(t.coef));
  return norm;
}

double RelationCode(Relation r) {
  switch (r) {
    case Relation::kGreaterEqual:
      return -1.0;
    case Relation::kEqual:
      return 0.0;
    case Relation::kLessEqual:
      return 1.0;
  }
  return 0.0;
}

double Flag(bool b) { return b ? 1.0 : 0.0; }

double Clamp(double distance) {
  return std::isfinite(distance) ? std::min(distance, kDistanceClamp)
                                 : kDistanceClamp;
}

bool HasLp(const SolverState& state) {
  return state.phase() == Phase::kAtDecision;
}

// Fills the columns that depend only on the problem.
BipartiteObservation StaticBipartite(const Problem& p) {
  BipartiteObservation obs;
  obs.variable_features = Matrix(VariableFeatureNames(), p.num_vars());
  obs.constraint_features = Matrix(ConstraintFeatureNames(), p.num_cons());
  const double obj_norm = ObjectiveNorm(p);
  Matrix& v = obs.variable_features;
  for (int j = 0; j < p.num_vars(); ++j) {
    v.at(j, kVarObj) = Normalize(p.objective[j], obj_norm);
    v.at(j, kVarHasLower) = Flag(std::isfinite(p.var_lower[j]));
    v.at(j, kVarHasUpper) = Flag(std::isfinite(p.var_upper[j]));
    v.at(j, kVarIsInteger) = Flag(p.is_integer[j]);
  }
  std::size_t nnz = 0;
  for (const Constraint& c : p.constraints) nnz += c.terms.size();
  obs.edge_rows.reserve(nnz);
  obs.edge_cols.reserve(nnz);
  std::vector<double> values;
  values.reserve(nnz);
  Matrix& k = obs.constraint_features;
  for (int i = 0; i < p.num_cons(); ++i) {
    const Constraint& c = p.constraints[i];
    const double norm = RowNorm(c);
    k.at(i, kConRhs) = Normalize(c.rhs, norm);
    k.at(i, kConRelation) = RelationCode(c.relation);
    for (const Term& t : c.terms) {
      if (t.coef == 0.0) continue;
      obs.edge_rows.push_back(i);
      obs.edge_cols.push_back(t.var);
      values.push_back(Normalize(t.coef, norm));
    }
  }
  obs.edge_features.columns = {"coef_norm"};
  obs.edge_features.rows = static_cast<int>(values.size());
  obs.edge_features.data = std::move(values);
  return obs;
}

// Overwrites the LP-dependent columns in place.
void FillDynamic(const SolverState& state, BipartiteObservation& obs) {
  if (!HasLp(state)) return;
  const Problem& p = state.problem();
  const LpResult& lp = state.current_lp();
  const double obj_norm = ObjectiveNorm(p);
  Matrix& v = obs.variable_features;
  for (int j = 0; j < p.num_vars(); ++j) {
    const double x = lp.primal[j];
    v.at(j, kVarLpValue) = x;
    v.at(j, kVarFractionality) =
        p.is_integer[j] ? std::fabs(x - std::round(x)) : 0.0;
    v.at(j, kVarIsBasic) = Flag(lp.var_status[j] == BasisStatus::kBasic);
    v.at(j, kVarAtLower) = Flag(lp.var_status[j] == BasisStatus::kAtLower);
    v.at(j, kVarAtUpper) = Flag(lp.var_status[j] == BasisStatus::kAtUpper);
  }
  Matrix& k = obs.constraint_features;
  for (int i = 0; i < p.num_cons(); ++i) {
    const Constraint& c = p.constraints[i];
    double activity = 0.0;
    for (const Term& t : c.terms) activity += t.coef * lp.primal[t.var];
    k.at(i, kConDual) = Normalize(lp.duals[i], obj_norm);
    k.at(i, kConTight) = Flag(std::fabs(activity - c.rhs) <=
                              kFeasibilityTol * (1.0 + std::fabs(c.rhs)));
  }
}

}  // namespace

const std::vector<std::string>& VariableFeatureNames() {
  static const std::vector<std::string> kNames = {
      "obj_norm",      "has_lower", "has_upper", "is_integer", "lp_value",
      "fractionality", "is_basic",  "at_lower",  "at_upper"};
  return kNames;
}

const std::vector<std::string>& ConstraintFeatureNames() {
  static const std::vector<std::string> kNames = {"rhs_norm", "relation",
                                                  "dual_norm", "is_tight"};
  return kNames;
}

const std::vector<std::string>& CandidateFeatureNames() {
  static const std::vector<std::string> kNames = {
      "obj",      "obj_norm",      "n_rows",     "mean_abs_coef",
      "min_abs_coef", "max_abs_coef", "lp_value", "fractionality",
      "dist_lower",   "dist_upper",   "pseudocost", "is_basic"};
  return kNames;
}

// ---------------------------------------------------------------------------

void NodeBipartiteFunction::BeforeReset(const SolverState& state) {
  cached_for_ = nullptr;
  static_ = {};
  if (cache_) {
    static_ = StaticBipartite(state.problem());
    cached_for_ = &state.problem();
  }
}

BipartiteObservation NodeBipartiteFunction::Compute(const SolverState& state) {
  BipartiteObservation obs;
  if (cache_) {
    if (cached_for_ != &state.problem()) {
      static_ = StaticBipartite(state.problem());
      cached_for_ = &state.problem();
    }
    obs = static_;
  } else {
    obs = StaticBipartite(state.problem());
  }
  FillDynamic(state, obs);
  return obs;
}

std::optional<Observation> NodeBipartiteFunction::Extract(
    const SolverState& state, bool done) {
  if (done) return std::nullopt;
  return Compute(state);
}

// ---------------------------------------------------------------------------

void CandidateFeaturesFunction::ComputeStats(const Problem& p) {
  stats_.assign(p.num_vars(), ColumnStats{});
  std::vector<double> sum(p.num_vars(), 0.0);
  for (const Constraint& c : p.constraints) {
    for (const Term& t : c.terms) {
      if (t.coef == 0.0) continue;
      const double a = std::fabs(t.coef);
      ColumnStats& s = stats_[t.var];
      if (s.n_rows == 0.0) {
        s.min_abs = s.max_abs = a;
      } else {
        s.min_abs = std::min(s.min_abs, a);
        s.max_abs = std::max(s.max_abs, a);
      }
      s.n_rows += 1.0;
      sum[t.var] += a;
    }
  }
  for (int j = 0; j < p.num_vars(); ++j) {
    if (stats_[j].n_rows > 0.0) stats_[j].mean_abs = sum[j] / stats_[j].n_rows;
  }
  objective_norm_ = ObjectiveNorm(p);
  stats_for_ = &p;
}

void CandidateFeaturesFunction::BeforeReset(const SolverState& state) {
  ComputeStats(state.problem());
}

CandidateFeatureObservation CandidateFeaturesFunction::Compute(
    const SolverState& state) {
  const Problem& p = state.problem();
  if (stats_for_ != &p) ComputeStats(p);
  CandidateFeatureObservation obs;
  if (HasLp(state)) obs.candidates = state.candidates();
  obs.features = Matrix(CandidateFeatureNames(),
                        static_cast<int>(obs.candidates.size()));
  const LpResult& lp = state.current_lp();
  for (int r = 0; r < static_cast<int>(obs.candidates.size()); ++r) {
    const int j = obs.candidates[r];
    const ColumnStats& s = stats_[j];
    const double x = lp.primal[j];
    Matrix& m = obs.features;
    m.at(r, kCandObj) = p.objective[j];
    m.at(r, kCandObjNorm) = Normalize(p.objective[j], objective_norm_);
    m.at(r, kCandRows) = s.n_rows;
    m.at(r, kCandMeanAbs) = s.mean_abs;
    m.at(r, kCandMinAbs) = s.min_abs;
    m.at(r, kCandMaxAbs) = s.max_abs;
    m.at(r, kCandLpValue) = x;
    m.at(r, kCandFractionality) = std::fabs(x - std::round(x));
    m.at(r, kCandDistLower) = Clamp(x - state.node_lower()[j]);
    m.at(r, kCandDistUpper) = Clamp(state.node_upper()[j] - x);
    m.at(r, kCandPseudocost) = state.pseudocosts().Score(j);
    m.at(r, kCandIsBasic) = Flag(lp.var_status[j] == BasisStatus::kBasic);
  }
  return obs;
}

std::optional<Observation> CandidateFeaturesFunction::Extract(
    const SolverState& state, bool done) {
  if (done) return std::nullopt;
  return Compute(state);
}

// ---------------------------------------------------------------------------

std::unique_ptr<ObservationFunction> MakeObservationFunction(
    std::string_view name, bool cache) {
  if (name == "nothing") return std::make_unique<NothingFunction>();
  if (name == "bipartite") {
    return std::make_unique<NodeBipartiteFunction>(cache);
  }
  if (name == "candidates") {
    return std::make_unique<CandidateFeaturesFunction>();
  }
  throw InvalidParameterError("unknown observation function '" +
                              std::string(name) + "'");
}

}  // namespace milpenv
