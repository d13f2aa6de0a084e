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

#include "milpenv/envs.h"

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "milpenv/errors.h"
#include "milpenv/instgen.h"
#include "test_problems.h"

namespace milpenv {
namespace {

using ::milpenv::testing::Knapsack;
using ::milpenv::testing::Share;

Environment Branching(const char* obs = "nothing",
                      const char* reward = "lp_iterations",
                      SolverParams params = {}) {
  return MakeBranchingEnvironment(MakeObservationFunction(obs),
                                  RewardFunction(ParseReward(reward)), params);
}

Environment Configuring(const char* reward = "lp_iterations",
                        SolverParams params = {}) {
  return MakeConfiguringEnvironment(MakeObservationFunction("nothing"),
                                    RewardFunction(ParseReward(reward)),
                                    params);
}

const std::vector<int>& Candidates(const StepResult& r) {
  return std::get<std::vector<int>>(*r.action_set);
}

TEST(BranchingEnvTest, ResetRequiresAnInstance) {
  Environment env = Branching();
  EXPECT_THROW(env.Reset(nullptr), InvalidProblemError);
  EXPECT_FALSE(env.in_episode());
  Problem bad = Knapsack();
  bad.var_lower[0] = 2.0;  // lower above upper
  EXPECT_THROW(env.Reset(Share(bad)), InvalidProblemError);
  EXPECT_THROW(env.Step(0), PreconditionError);
}

TEST(BranchingEnvTest, IntegralRootIsTerminalAtReset) {
  Environment env = Branching("bipartite", "nnodes");
  const StepResult r = env.Reset(Share(::milpenv::testing::IntegralRoot()));
  EXPECT_TRUE(r.done);
  EXPECT_FALSE(r.action_set.has_value());
  EXPECT_FALSE(r.observation.has_value());
  EXPECT_EQ(r.reward, 1.0);  // the root node was processed
  EXPECT_EQ(std::get<std::string>(r.info.at("termination_reason")), "OPTIMAL");
  EXPECT_EQ(std::get<double>(r.info.at("incumbent_objective")), -1.0);
  EXPECT_FALSE(env.in_episode());
  EXPECT_THROW(env.Step(0), PreconditionError);
}

TEST(BranchingEnvTest, KnapsackEpisode) {
  Environment env = Branching("candidates");
  StepResult r = env.Reset(Share(Knapsack()));
  ASSERT_FALSE(r.done);
  EXPECT_EQ(Candidates(r), std::vector<int>{0});
  EXPECT_GT(r.reward, 0.0);  // reward offset: the root LP iterations
  ASSERT_TRUE(r.observation.has_value());
  EXPECT_EQ(std::get<CandidateFeatureObservation>(*r.observation).candidates,
            std::vector<int>{0});
  // Root bound -49/6, reported in the maximization sense.
  EXPECT_NEAR(std::get<double>(r.info.at("dual_bound")), 49.0 / 6.0, 1e-9);
  EXPECT_EQ(std::get<double>(r.info.at("incumbent_objective")), -kInf);
  EXPECT_EQ(r.info.count("termination_reason"), 0u);

  while (!r.done) r = env.Step(Candidates(r).front());
  EXPECT_EQ(std::get<double>(r.info.at("incumbent_objective")), 5.0);
  EXPECT_EQ(std::get<double>(r.info.at("dual_bound")), 5.0);
  EXPECT_EQ(std::get<std::string>(r.info.at("termination_reason")), "OPTIMAL");
  EXPECT_THROW(env.Step(0), PreconditionError);
}

TEST(BranchingEnvTest, InfoKeys) {
  Environment env = Branching();
  StepResult r = env.Reset(Share(Knapsack()));
  std::vector<std::string> keys;
  for (const auto& [k, v] : r.info) keys.push_back(k);
  EXPECT_EQ(keys,
            (std::vector<std::string>{"dual_bound", "incumbent_objective",
                                      "lp_iterations", "nodes_processed"}));
  EXPECT_EQ(std::get<std::int64_t>(r.info.at("nodes_processed")), 1);
}

TEST(BranchingEnvTest, InvalidActionKeepsTheEpisode) {
  Environment env = Branching();
  StepResult r = env.Reset(Share(Knapsack()));
  EXPECT_THROW(env.Step(1), InvalidActionError);
  EXPECT_THROW(env.Step(-1), InvalidActionError);
  EXPECT_THROW(env.Step(ParamMapping{}), InvalidActionError);
  EXPECT_TRUE(env.in_episode());
  r = env.Step(0);
  // Down child x = 0 is integral (-4); up child x = 1 leaves y = 3/4.
  EXPECT_FALSE(r.done);
  EXPECT_EQ(Candidates(r), std::vector<int>{1});
  EXPECT_EQ(env.state()->nodes_processed(), 3);
}

TEST(BranchingEnvTest, ActionSetsChangeBetweenDecisions) {
  int changes = 0;
  for (std::uint64_t k = 0; k < 3; ++k) {
    Environment env = Branching();
    StepResult r = env.Reset(std::make_shared<const Problem>(
        Generate(GeneratorConfig::Small(Family::kSetCover, 1), k)));
    std::vector<int> previous;
    while (!r.done) {
      if (!previous.empty() && previous != Candidates(r)) ++changes;
      previous = Candidates(r);
      r = env.Step(previous.front());
    }
  }
  EXPECT_GT(changes, 0);
}

TEST(BranchingEnvTest, ParamsReachTheSolver) {
  SolverParams params;
  params.node_selection = NodeSelection::kDepthFirst;
  Environment env = Branching("nothing", "lp_iterations", params);
  StepResult r = env.Reset(Share(Knapsack()));
  while (!r.done) r = env.Step(Candidates(r).front());
  EXPECT_EQ(std::get<double>(r.info.at("incumbent_objective")), 5.0);
  EXPECT_EQ(env.state()->params().node_selection, NodeSelection::kDepthFirst);
}

TEST(BranchingEnvTest, ReplayIsDeterministic) {
  const auto problem = std::make_shared<const Problem>(
      Generate(GeneratorConfig::Small(Family::kCombAuction, 4), 2));
  auto run = [&] {
    Environment env = Branching("bipartite", "lp_iterations + nnodes");
    std::vector<StepResult> out;
    out.push_back(env.Reset(problem));
    while (!out.back().done) {
      out.push_back(env.Step(Candidates(out.back()).back()));
    }
    return out;
  };
  const std::vector<StepResult> a = run();
  const std::vector<StepResult> b = run();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    EXPECT_EQ(a[t].reward, b[t].reward);
    EXPECT_EQ(a[t].done, b[t].done);
    EXPECT_EQ(a[t].info, b[t].info);
    EXPECT_EQ(a[t].action_set, b[t].action_set);
    EXPECT_EQ(a[t].observation, b[t].observation);
  }
}

TEST(ConfiguringEnvTest, UnitEpisode) {
  Environment env = Configuring();
  const StepResult r0 = env.Reset(Share(Knapsack()));
  EXPECT_FALSE(r0.done);
  EXPECT_EQ(r0.reward, 0.0);  // nothing is solved before the decision
  ASSERT_TRUE(r0.action_set.has_value());
  const auto& schema = std::get<ParameterSchema>(*r0.action_set);
  EXPECT_EQ(schema, SolverParameterSchema());
  EXPECT_EQ(schema.size(), 6u);

  const StepResult r1 =
      env.Step(ParamMapping{{"node_selection", std::string("dfs")}});
  EXPECT_TRUE(r1.done);
  EXPECT_EQ(r1.reward,
            static_cast<double>(env.state()->total_lp_iterations()));
  EXPECT_EQ(std::get<double>(r1.info.at("incumbent_objective")), 5.0);
  EXPECT_EQ(env.state()->params().node_selection, NodeSelection::kDepthFirst);
  EXPECT_THROW(env.Step(ParamMapping{}), PreconditionError);
}

TEST(ConfiguringEnvTest, BadMappingKeepsTheEpisode) {
  Environment env = Configuring();
  env.Reset(Share(Knapsack()));
  EXPECT_THROW(env.Step(ParamMapping{{"gap_tol", -1.0}}),
               InvalidParameterError);
  EXPECT_THROW(env.Step(ParamMapping{{"presolve", std::int64_t{0}}}),
               InvalidParameterError);
  EXPECT_THROW(env.Step(ParamMapping{{"node_limit", 1.5}}),
               InvalidParameterError);
  EXPECT_THROW(env.Step(3), InvalidActionError);
  EXPECT_TRUE(env.in_episode());
  const StepResult r = env.Step(ParamMapping{{"node_limit", std::int64_t{1}}});
  EXPECT_TRUE(r.done);
  EXPECT_EQ(std::get<std::string>(r.info.at("termination_reason")),
            "NODE_LIMIT");
}

TEST(ParamMappingTest, RoundTripsThroughTheSchema) {
  SolverParams p;
  p.node_limit = 17;
  p.time_limit = 2.5;
  p.gap_tol = 0.01;
  p.node_selection = NodeSelection::kDepthFirst;
  p.internal_branching = BranchingRule::kPseudocost;
  p.seed = 9;
  EXPECT_EQ(ApplyParamMapping(SolverParams{}, ToParamMapping(p)), p);
  for (const ParameterSpec& spec : SolverParameterSchema(p)) {
    EXPECT_EQ(spec.default_value, ToParamMapping(p).at(spec.name)) << spec.name;
  }
}

TEST(ParamMappingTest, RangeChecks) {
  const SolverParams d;
  EXPECT_THROW(ApplyParamMapping(d, {{"time_limit", 0.0}}),
               InvalidParameterError);  // open at zero
  EXPECT_NO_THROW(ApplyParamMapping(d, {{"gap_tol", 0.0}}));
  EXPECT_THROW(ApplyParamMapping(d, {{"node_limit", std::int64_t{-1}}}),
               InvalidParameterError);
  EXPECT_THROW(ApplyParamMapping(d, {{"node_selection", std::string("bfs")}}),
               InvalidParameterError);
  EXPECT_THROW(ApplyParamMapping(d, {{"seed", std::string("1")}}),
               InvalidParameterError);
  // Integers are accepted where reals are expected.
  EXPECT_EQ(ApplyParamMapping(d, {{"time_limit", std::int64_t{3}}}).time_limit,
            3.0);
}

TEST(DynamicsFactoryTest, Names) {
  EXPECT_EQ(MakeDynamics("branching")->name(), "branching");
  EXPECT_EQ(MakeDynamics("configuring")->name(), "configuring");
  EXPECT_THROW(MakeDynamics("gym"), InvalidParameterError);
}

}  // namespace
}  // namespace milpenv
