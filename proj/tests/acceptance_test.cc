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

// Acceptance suite: one test per acceptance criterion, each at its stated
// tolerance. A listener replaces the default output with one PASS or FAIL
// line per criterion plus the details each criterion records.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "commands.h"
#include "family_checks.h"
#include "milpenv/envs.h"
#include "milpenv/errors.h"
#include "milpenv/instgen.h"
#include "milpenv/lp_format.h"
#include "milpenv/policies.h"
#include "milpenv/simplex.h"
#include "milpenv/trace.h"
#include "oracles.h"
#include "test_problems.h"

namespace milpenv {
namespace {

namespace fs = std::filesystem;
using ::milpenv::testing::AuctionRevenueByEnumeration;
using ::milpenv::testing::BruteForceMilp;
using ::milpenv::testing::ExpectValidInstance;
using ::milpenv::testing::FacilityOptimumByEnumeration;
using ::milpenv::testing::IndependentSetByEnumeration;
using ::milpenv::testing::RandomBinaryMilp;
using ::milpenv::testing::RandomBoundedLp;
using ::milpenv::testing::SetCoverOptimumByEnumeration;
using ::milpenv::testing::Share;
using ::milpenv::testing::VertexEnumerationLp;
using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void Detail(const std::string& text) {
  ::testing::Test::RecordProperty("detail", text);
}

std::string Fixed(double v, int digits = 3) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

std::shared_ptr<const Problem> SmallInstance(Family family, std::uint64_t seed,
                                             std::uint64_t k) {
  return std::make_shared<const Problem>(
      Generate(GeneratorConfig::Small(family, seed), k));
}

// Exactness: 200 random pure binary MILPs with at most 12 variables and 10
// rows and integer data; the engine optimum equals the enumeration optimum
// exactly, in under 60 s.
TEST(Acceptance, Exactness) {
  std::mt19937_64 rng(20260101);
  int feasible = 0;
  const auto start = Clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    const Problem p = RandomBinaryMilp(rng);
    const auto oracle = BruteForceMilp(p);
    SolverState state(Share(p), SolverParams{});
    state.RunToCompletion();
    if (!oracle) {
      EXPECT_EQ(state.termination_reason(), TerminationReason::kInfeasible)
          << "trial " << trial;
      EXPECT_FALSE(state.incumbent().has_value()) << "trial " << trial;
      continue;
    }
    ++feasible;
    EXPECT_EQ(state.termination_reason(), TerminationReason::kOptimal)
        << "trial " << trial;
    ASSERT_TRUE(state.incumbent().has_value()) << "trial " << trial;
    EXPECT_EQ(state.incumbent()->objective, oracle->objective)
        << "trial " << trial;
  }
  const double seconds = Since(start);
  EXPECT_LT(seconds, 60.0);
  Detail("200 instances (" + std::to_string(feasible) + " feasible), " +
         Fixed(seconds) + " s");
}

// LP oracle: 100 random bounded LPs up to 6 x 6; the simplex objective is
// within 1e-6 of the vertex-enumeration optimum, statuses agree.
TEST(Acceptance, LpOracle) {
  std::mt19937_64 rng(4242);
  int optimal = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Problem p = RandomBoundedLp(rng, 6, 6);
    const auto oracle = VertexEnumerationLp(p, p.var_lower, p.var_upper);
    const LpResult r = SolveLp(p);
    if (!oracle) {
      EXPECT_EQ(r.status, LpStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ++optimal;
    ASSERT_EQ(r.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(r.objective, *oracle, 1e-6) << "trial " << trial;
    worst = std::max(worst, std::fabs(r.objective - *oracle));
  }
  std::ostringstream detail;
  detail << "100 LPs (" << optimal << " feasible), max |error| " << worst;
  Detail(detail.str());
}

// Overhead: at least 50 instances over all four families at node limit 100;
// env-driven first_candidate and direct FIRST_FRACTIONAL runs have identical
// node counts and objectives, and the mean wall-time ratio is in [0.9, 1.1].
TEST(Acceptance, Overhead) {
  cli::BenchOptions options;
  options.count = 13;  // 52 instances
  options.node_limit = 100;
  options.repeats = 5;
  const std::vector<cli::OverheadRow> rows = cli::BenchOverhead(options);
  ASSERT_GE(rows.size(), 50u);
  std::vector<double> ratios;
  for (const cli::OverheadRow& row : rows) {
    EXPECT_TRUE(row.nodes_equal())
        << row.instance << ": " << row.env_nodes << " vs " << row.direct_nodes;
    EXPECT_TRUE(row.objective_equal())
        << row.instance << ": " << row.env_objective << " vs "
        << row.direct_objective;
    ratios.push_back(row.ratio());
  }
  const cli::OneSampleTTest t = cli::TTest(ratios, 1.0);
  EXPECT_GE(t.mean, 0.9);
  EXPECT_LE(t.mean, 1.1);
  Detail(std::to_string(rows.size()) + " instances, mean ratio " +
         Fixed(t.mean) + " (sd " + Fixed(t.sd) + ", t-test p " +
         Fixed(t.p_value) + ")");
}

// Reward conservation: for every rollout, the reset reward plus the step
// rewards of lp_iterations equals the engine's iteration counter exactly,
// and likewise nnodes against nodes_processed.
TEST(Acceptance, RewardConservation) {
  int rollouts = 0;
  for (Family family : kAllFamilies) {
    for (std::uint64_t k = 0; k < 3; ++k) {
      const auto problem = SmallInstance(family, 8, k);
      for (const char* policy_name :
           {"first_candidate", "random_candidate", "most_fractional"}) {
        for (const char* leaf : {"lp_iterations", "nnodes"}) {
          SolverParams params;
          params.node_limit = 60;
          Environment env = MakeBranchingEnvironment(
              MakeObservationFunction("candidates"),
              RewardFunction(ParseReward(leaf)), params);
          auto policy = MakePolicy(policy_name, k);
          StepResult r = env.Reset(problem);
          double total = r.reward;
          while (!r.done) {
            r = env.Step(policy->Choose(
                r.observation, std::get<std::vector<int>>(*r.action_set)));
            total += r.reward;
          }
          const double expected =
              std::string(leaf) == "lp_iterations"
                  ? static_cast<double>(env.state()->total_lp_iterations())
                  : static_cast<double>(env.state()->nodes_processed());
          EXPECT_EQ(total, expected)
              << problem->name << " " << policy_name << " " << leaf;
          ++rollouts;
        }
      }
    }
    // The configuring environment too.
    for (const char* leaf : {"lp_iterations", "nnodes"}) {
      const auto problem = SmallInstance(family, 8, 0);
      Environment env = MakeConfiguringEnvironment(
          MakeObservationFunction("nothing"),
          RewardFunction(ParseReward(leaf)));
      StepResult r = env.Reset(problem);
      double total = r.reward;
      r = env.Step(ParamMapping{{"node_limit", std::int64_t{40}}});
      total += r.reward;
      EXPECT_TRUE(r.done);
      EXPECT_EQ(total, std::string(leaf) == "lp_iterations"
                           ? static_cast<double>(
                                 env.state()->total_lp_iterations())
                           : static_cast<double>(
                                 env.state()->nodes_processed()));
      ++rollouts;
    }
  }
  Detail(std::to_string(rollouts) + " rollouts, every total exact");
}

// Deviations from the usual reset/step contract.
TEST(Acceptance, GymDeviations) {
  // (a) reset requires an instance.
  Environment env = MakeBranchingEnvironment(
      MakeObservationFunction("nothing"),
      RewardFunction(ParseReward("nnodes")));
  EXPECT_THROW(env.Reset(nullptr), InvalidProblemError);
  EXPECT_FALSE(env.in_episode());

  // (b) an integral root is done at reset, with no action set.
  StepResult r = env.Reset(Share(::milpenv::testing::IntegralRoot()));
  EXPECT_TRUE(r.done);
  EXPECT_FALSE(r.action_set.has_value());

  // (c) reset returns a reward offset: the root node is already processed.
  r = env.Reset(Share(::milpenv::testing::Knapsack()));
  EXPECT_FALSE(r.done);
  EXPECT_EQ(r.reward, 1.0);
  Environment iters = MakeBranchingEnvironment(
      MakeObservationFunction("nothing"),
      RewardFunction(ParseReward("lp_iterations")));
  EXPECT_GT(iters.Reset(Share(::milpenv::testing::Knapsack())).reward, 0.0);

  // (d) Witness: on Small(set_cover, 1) instance 0 with first_candidate, the
  // action sets of decisions 0 and 1 differ (19 and 21 candidates).
  r = env.Reset(SmallInstance(Family::kSetCover, 1, 0));
  ASSERT_FALSE(r.done);
  const std::vector<int> first = std::get<std::vector<int>>(*r.action_set);
  r = env.Step(first.front());
  ASSERT_FALSE(r.done);
  const std::vector<int> second = std::get<std::vector<int>>(*r.action_set);
  EXPECT_NE(first, second);
  EXPECT_EQ(first.size(), 19u);
  EXPECT_EQ(second.size(), 21u);
  Detail("(a)-(d) hold; witness action sets of sizes " +
         std::to_string(first.size()) + " and " +
         std::to_string(second.size()));
}

// Configuring: 20 instances x 3 mappings. Every episode has exactly one step
// and terminates; the optima agree across node selections and with
// enumeration on these oracle-sized instances.
TEST(Acceptance, ConfiguringUnitEpisode) {
  const std::vector<ParamMapping> mappings = {
      {{"node_selection", std::string("best_bound")}},
      {{"node_selection", std::string("dfs")},
       {"internal_branching", std::string("first_fractional")}},
      {{"node_selection", std::string("dfs")},
       {"internal_branching", std::string("pseudocost")}},
  };
  std::mt19937_64 rng(77);
  int instances = 0;
  while (instances < 20) {
    const Problem p = RandomBinaryMilp(rng);
    const auto oracle = BruteForceMilp(p);
    if (!oracle) continue;  // only feasible ones have an optimum to compare
    ++instances;
    for (const ParamMapping& mapping : mappings) {
      Environment env = MakeConfiguringEnvironment(
          MakeObservationFunction("nothing"),
          RewardFunction(ParseReward("lp_iterations")));
      const StepResult r0 = env.Reset(Share(p));
      ASSERT_FALSE(r0.done);
      const StepResult r1 = env.Step(mapping);
      EXPECT_TRUE(r1.done);
      EXPECT_FALSE(r1.action_set.has_value());
      EXPECT_FALSE(env.in_episode());
      EXPECT_EQ(std::get<std::string>(r1.info.at("termination_reason")),
                "OPTIMAL");
      ASSERT_TRUE(env.state()->incumbent().has_value());
      EXPECT_EQ(env.state()->incumbent()->objective, oracle->objective);
    }
  }
  Detail("20 instances x 3 mappings, one step each, optima equal");
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Generator suite: structural invariants for every family over three seeds,
// byte-identical output from two separate processes, and tiny optima equal
// to family-specific enumeration.
TEST(Acceptance, Generators) {
  const fs::path dir = fs::temp_directory_path() /
                       ("milpenv_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  int files = 0;
  for (Family family : kAllFamilies) {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      ExpectValidInstance(GeneratorConfig::Small(family, seed), 0);
      ExpectValidInstance(GeneratorConfig::Small(family, seed), 1);

      // Two independent processes of the command-line tool.
      for (const char* run : {"a", "b"}) {
        const std::string command =
            std::string(MILPENV_CLI) + " generate --size small --count 2" +
            " --family " + ToString(family) + " --seed " +
            std::to_string(seed) + " --out-dir " + (dir / run).string() +
            " >/dev/null";
        ASSERT_EQ(std::system(command.c_str()), 0) << command;
      }
      for (std::uint64_t k = 0; k < 2; ++k) {
        const std::string file = InstanceName(family, seed, k) + ".lp";
        const std::string a = ReadFile(dir / "a" / file);
        EXPECT_FALSE(a.empty()) << file;
        EXPECT_EQ(a, ReadFile(dir / "b" / file)) << file;
        EXPECT_EQ(a, WriteLpString(Generate(
                         GeneratorConfig::Small(family, seed), k)))
            << file;
        ++files;
      }

      const GeneratorConfig tiny = GeneratorConfig::Tiny(family, seed);
      const Problem p = Generate(tiny, 0);
      SolverState state(Share(p), SolverParams{});
      state.RunToCompletion();
      ASSERT_TRUE(state.incumbent().has_value());
      const double engine = state.incumbent()->objective;
      switch (family) {
        case Family::kSetCover:
          EXPECT_EQ(engine, SetCoverOptimumByEnumeration(p));
          break;
        case Family::kCombAuction:
          EXPECT_NEAR(-engine, AuctionRevenueByEnumeration(p), 1e-9);
          break;
        case Family::kCapFacility: {
          const double best =
              FacilityOptimumByEnumeration(p, tiny.cap_facility.facilities);
          EXPECT_NEAR(engine, best, 1e-6 * (1.0 + std::fabs(best)));
          break;
        }
        case Family::kIndepSet: {
          CounterRng graph_rng(seed, 0);
          EXPECT_EQ(-engine,
                    IndependentSetByEnumeration(
                        tiny.indep_set.nodes,
                        GenerateGraph(tiny.indep_set, graph_rng)));
          break;
        }
      }
    }
  }
  fs::remove_all(dir);
  Detail("4 families x 3 seeds; " + std::to_string(files) +
         " files identical across two processes; tiny optima match");
}

void ExpectFinite(const Matrix& m, const std::string& what) {
  for (double v : m.data) ASSERT_TRUE(std::isfinite(v)) << what;
}

// Feature contracts: shapes, finiteness and candidate alignment on every
// family; cached and uncached bipartite observations are identical, and the
// cached mean extraction time is not above the uncached one.
TEST(Acceptance, FeatureContracts) {
  int decisions = 0;
  for (Family family : kAllFamilies) {
    for (std::uint64_t k = 0; k < 3; ++k) {
      const auto problem = SmallInstance(family, 12, k);
      const Problem& p = *problem;
      int nnz = 0;
      for (const Constraint& c : p.constraints) {
        for (const Term& t : c.terms) nnz += t.coef != 0.0;
      }
      SolverParams params;
      params.node_limit = 40;
      SolverState state(problem, params);
      NodeBipartiteFunction cached(true);
      NodeBipartiteFunction plain(false);
      CandidateFeaturesFunction candidates;
      cached.BeforeReset(state);
      plain.BeforeReset(state);
      candidates.BeforeReset(state);
      state.Start();
      while (state.phase() == Phase::kAtDecision) {
        const BipartiteObservation b = cached.Compute(state);
        ASSERT_EQ(b, plain.Compute(state)) << p.name;
        ASSERT_EQ(b.variable_features.rows, p.num_vars());
        ASSERT_EQ(b.variable_features.columns, VariableFeatureNames());
        ASSERT_EQ(b.constraint_features.rows, p.num_cons());
        ASSERT_EQ(b.constraint_features.columns, ConstraintFeatureNames());
        ASSERT_EQ(b.num_edges(), nnz);
        ASSERT_EQ(b.edge_features.rows, nnz);
        ASSERT_EQ(b.edge_cols.size(), b.edge_rows.size());
        ExpectFinite(b.variable_features, p.name + " variables");
        ExpectFinite(b.constraint_features, p.name + " constraints");
        ExpectFinite(b.edge_features, p.name + " edges");

        const CandidateFeatureObservation c = candidates.Compute(state);
        ASSERT_EQ(c.candidates, state.candidates()) << p.name;
        ASSERT_EQ(c.features.rows, static_cast<int>(c.candidates.size()));
        ASSERT_EQ(c.features.columns, CandidateFeatureNames());
        ExpectFinite(c.features, p.name + " candidates");
        state.Branch(state.candidates().front());
        ++decisions;
      }
    }
  }
  EXPECT_GT(decisions, 100);

  cli::BenchOptions options;
  options.count = 5;
  options.repeats = 3;
  options.node_limit = 50;
  const auto on = cli::BenchFeatures(options, "bipartite", true);
  const auto off = cli::BenchFeatures(options, "bipartite", false);
  // Direction only, on the mean over every instance of every family.
  double on_total = 0.0;
  double off_total = 0.0;
  std::string timing;
  for (std::size_t f = 0; f < on.size(); ++f) {
    on_total += on[f].mean;
    off_total += off[f].mean;
    timing += " " + on[f].family + " " + Fixed(off[f].mean / on[f].mean, 2) +
              "x";
  }
  EXPECT_LE(on_total, off_total);
  Detail(std::to_string(decisions) + " decisions checked; uncached/cached " +
         Fixed(off_total / on_total, 2) + "x overall," + timing);
}

// Replay: emitted traces, once serialized and parsed back, replay to
// bit-identical rewards, info, action sets and observations.
TEST(Acceptance, Replay) {
  struct Setup {
    const char* env;
    const char* observation;
    const char* policy;
    const char* reward;
  };
  const std::vector<Setup> setups = {
      {"branching", "nothing", "first_candidate", "lp_iterations"},
      {"branching", "candidates", "most_fractional", "lp_iterations ^ 2"},
      {"branching", "bipartite", "random_candidate",
       "nnodes + exp(-lp_iterations / 100)"},
      {"configuring", "nothing", "", "lp_iterations - 2 * nnodes"},
  };
  int traces = 0;
  int steps = 0;
  for (Family family : kAllFamilies) {
    for (const Setup& s : setups) {
      const auto problem = SmallInstance(family, 5, 1);
      SolverParams params;
      params.node_limit = 40;
      auto make_env = [&](const EpisodeRecord* from) {
        const std::string env = from ? from->env : s.env;
        auto obs = MakeObservationFunction(
            from ? from->observation_function : s.observation);
        RewardFunction reward(ParseReward(from ? from->reward : s.reward));
        const SolverParams p =
            from ? ApplyParamMapping(SolverParams{}, from->params) : params;
        return env == "branching"
                   ? MakeBranchingEnvironment(std::move(obs),
                                              std::move(reward), p)
                   : MakeConfiguringEnvironment(std::move(obs),
                                                std::move(reward), p);
      };
      Environment env = make_env(nullptr);
      ActionChooser choose;
      std::shared_ptr<Policy> policy;
      if (std::string(s.env) == "branching") {
        policy = MakePolicy(s.policy, 99);
        choose = [policy](const std::optional<Observation>& obs,
                          const ActionSet& set) {
          return Action(
              policy->Choose(obs, std::get<std::vector<int>>(set)));
        };
      } else {
        choose = [](const std::optional<Observation>&, const ActionSet&) {
          return Action(ParamMapping{{"node_limit", std::int64_t{25}},
                                     {"node_selection", std::string("dfs")}});
        };
      }
      const EpisodeRecord record = RecordEpisode(env, problem, choose, true);
      const EpisodeRecord parsed = ParseTrace(SerializeTrace(record));
      Environment fresh = make_env(&parsed);
      const ReplayReport report = ReplayEpisode(fresh, problem, parsed);
      EXPECT_TRUE(report.identical)
          << problem->name << " " << s.env << " " << s.observation << ": "
          << report.mismatch;
      ++traces;
      steps += static_cast<int>(record.steps.size());
    }
  }
  Detail(std::to_string(traces) + " traces, " + std::to_string(steps) +
         " steps replayed identically");
}

// Prints one line per criterion in place of the default gtest output.
class CriterionPrinter : public ::testing::EmptyTestEventListener {
 public:
  void OnTestPartResult(const ::testing::TestPartResult& result) override {
    if (!result.failed()) return;
    failures_ << "    " << (result.file_name() ? result.file_name() : "")
              << ":" << result.line_number() << ": " << result.summary()
              << "\n";
  }

  void OnTestEnd(const ::testing::TestInfo& info) override {
    const ::testing::TestResult& result = *info.result();
    std::string detail;
    for (int i = 0; i < result.test_property_count(); ++i) {
      const ::testing::TestProperty& p = result.GetTestProperty(i);
      if (std::string(p.key()) == "detail") detail = p.value();
    }
    std::cout << (result.Passed() ? "PASS " : "FAIL ") << info.name();
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << " [" << result.elapsed_time() << " ms]\n";
    std::cout << failures_.str() << std::flush;
    failures_.str("");
    passed_ += result.Passed();
    ++total_;
  }

  void OnTestProgramEnd(const ::testing::UnitTest&) override {
    std::cout << passed_ << "/" << total_ << " acceptance criteria passed\n";
  }

 private:
  std::ostringstream failures_;
  int passed_ = 0;
  int total_ = 0;
};

}  // namespace
}  // namespace milpenv

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  auto& listeners = ::testing::UnitTest::GetInstance()->listeners();
  delete listeners.Release(listeners.default_result_printer());
  listeners.Append(new milpenv::CriterionPrinter);
  return RUN_ALL_TESTS();
}
