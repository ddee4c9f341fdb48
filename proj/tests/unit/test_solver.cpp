// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "multipolyeig/dixon.hpp"
#include "multipolyeig/opdet.hpp"
#include "multipolyeig/oracle.hpp"
#include "multipolyeig/pep.hpp"
#include "multipolyeig/solver.hpp"
#include "systems.hpp"

namespace mpe = multipolyeig;
using mpe::cplx;
using mpe::Matrix;
using mpe::Pmep;
using mpe::SolverConfig;
using namespace mpe::testing;

namespace {

std::vector<std::vector<cplx>> points(const mpe::SolutionSet& s) {
  std::vector<std::vector<cplx>> out;
  for (const auto& x : s) out.push_back(x.x);
  return out;
}

double inf_norm(const std::vector<cplx>& x) {
  double m = 0.0;
  for (cplx v : x) m = std::max(m, std::abs(v));
  return m;
}

Pmep scalar_system(const std::vector<int>& tau, std::mt19937_64& rng) {
  return random_pmep(std::vector<int>(tau.size(), 1), tau, rng);
}

}  // namespace

TEST(ChooseHiddenVariable, PrefersDegreeOne) {
  std::mt19937_64 rng(1);
  const auto plan = mpe::choose_hidden_variable(random_pmep({2, 2}, {2, 1}, rng));
  EXPECT_EQ(plan.hidden, 1);
  EXPECT_EQ(plan.order, (std::vector<int>{0, 1}));
  EXPECT_FALSE(plan.linear);
  EXPECT_TRUE(plan.reduce.empty());

  const auto swapped = mpe::choose_hidden_variable(random_pmep({2, 2}, {1, 2}, rng));
  EXPECT_EQ(swapped.hidden, 0);
  EXPECT_EQ(swapped.order, (std::vector<int>{1, 0}));
}

TEST(ChooseHiddenVariable, SymmetricTieGoesToLast) {
  std::mt19937_64 rng(2);
  const auto plan = mpe::choose_hidden_variable(random_pmep({2, 2}, {2, 2}, rng));
  EXPECT_EQ(plan.hidden, 1);
  EXPECT_TRUE(plan.reduce.empty());
}

TEST(ChooseHiddenVariable, TwoLinearVariablesFlagReduction) {
  std::mt19937_64 rng(3);
  const auto plan = mpe::choose_hidden_variable(random_pmep({1, 1, 1}, {1, 1, 3}, rng));
  EXPECT_EQ(plan.hidden, 1);
  EXPECT_EQ(plan.order, (std::vector<int>{0, 2, 1}));
  EXPECT_EQ(plan.reduce, (std::vector<int>{0}));
}

TEST(ChooseHiddenVariable, LinearMepHidesLast) {
  std::mt19937_64 rng(4);
  const auto plan = mpe::choose_hidden_variable(random_pmep({2, 2, 2}, {1, 1, 1}, rng));
  EXPECT_EQ(plan.hidden, 2);
  EXPECT_TRUE(plan.linear);
}

TEST(RandomOrthogonal, OrthogonalAndDeterministic) {
  for (int d = 1; d <= 6; ++d) {
    const mpe::RealMatrix q = mpe::random_orthogonal(d, 42);
    EXPECT_LT((q.transpose() * q - mpe::RealMatrix::Identity(d, d)).norm(), 1e-14);
    EXPECT_EQ(q, mpe::random_orthogonal(d, 42));
  }
  EXPECT_NEAR(std::abs(mpe::random_orthogonal(1, 7)(0, 0)), 1.0, 1e-15);
  EXPECT_NE(mpe::random_orthogonal(3, 1), mpe::random_orthogonal(3, 2));
}

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate(2));
  cfg.hide_variable = 2;
  EXPECT_THROW(cfg.validate(2), mpe::InputError);
  cfg = {};
  cfg.rank_tol = 0.0;
  EXPECT_THROW(cfg.validate(2), mpe::InputError);
  cfg = {};
  cfg.probes = 0;
  EXPECT_THROW(cfg.validate(2), mpe::InputError);
}

TEST(Solve, WorkedExampleWithoutRotation) {
  SolverConfig cfg;
  cfg.rotate = false;
  const mpe::SolveResult r = mpe::solve(example13(), cfg);
  ASSERT_EQ(r.solutions.size(), 8u);
  for (const auto& s : r.solutions) EXPECT_LE(s.residual, 1e-10);
  EXPECT_EQ(r.diagnostics.resultant_size, 8);
  EXPECT_FALSE(r.diagnostics.rotated);
  EXPECT_FALSE(r.diagnostics.projected);
  EXPECT_EQ(r.diagnostics.hidden_variable, 1);
}

TEST(Solve, WorkedExampleMatchesOracle) {
  const mpe::SolveResult r = mpe::solve(example13());
  EXPECT_TRUE(r.diagnostics.rotated);
  ASSERT_EQ(r.solutions.size(), 8u);
  for (const auto& s : r.solutions) {
    EXPECT_LE(s.residual, 1e-10);
    EXPECT_TRUE(s.rotated);
  }
  const auto oracle = mpe::newton_oracle(example13()).solutions;
  EXPECT_LT(match_distance(points(r.solutions), points(oracle)), 1e-6);
}

TEST(Solve, SingularExampleProjectsAndMatchesOracle) {
  SolverConfig cfg;
  cfg.rotate = false;
  const mpe::SolveResult r = mpe::solve(example20(), cfg);
  EXPECT_TRUE(r.diagnostics.projected);
  EXPECT_EQ(r.diagnostics.normal_rank, 5);
  ASSERT_FALSE(r.solutions.empty());
  const auto oracle = mpe::newton_oracle(example20()).solutions;
  for (const auto& s : r.solutions) {
    EXPECT_TRUE(s.projected);
    EXPECT_LE(nearest_distance(s.x, points(oracle)), 1e-6);
  }
  EXPECT_LT(match_distance(points(r.solutions), {{cplx(0, 1), cplx(0, -1)},
                                                 {cplx(0, -1), cplx(0, 1)}}),
            1e-8);
}

TEST(Solve, GenericQuadraticPairCount) {
  // Two 2 x 2 equations of degree (2, 2): det P_i has bidegree (4, 4), so
  // 2 * 4 * 4 = 32 solutions.
  std::mt19937_64 rng(5);
  int hits = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    const Pmep p = random_pmep({2, 2}, {2, 2}, rng);
    SolverConfig cfg;
    cfg.rotate = false;
    hits += mpe::solve(p, cfg).solutions.size() == 32u;
  }
  EXPECT_GE(hits, trials - 1);
}

TEST(Solve, RotationInvariance) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const Pmep p = random_pmep({2, 2}, {2, 1}, rng);
    SolverConfig plain;
    plain.rotate = false;
    const auto a = mpe::solve(p, plain).solutions;
    SolverConfig rotated;
    rotated.seed = 100 + trial;
    const auto b = mpe::solve(p, rotated).solutions;
    // Solutions far outside the unit box lose accuracy under rotation.
    for (const auto& s : a) {
      if (inf_norm(s.x) <= 2.0) EXPECT_LE(nearest_distance(s.x, points(b)), 1e-6);
    }
    for (const auto& s : b) {
      if (inf_norm(s.x) <= 2.0) EXPECT_LE(nearest_distance(s.x, points(a)), 1e-6);
    }
  }
}

TEST(Solve, LinearSpecialization) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Matrix> v0{random_matrix(2, rng), random_matrix(3, rng)};
    std::vector<std::vector<Matrix>> v{{random_matrix(2, rng), random_matrix(2, rng)},
                                       {random_matrix(3, rng), random_matrix(3, rng)}};
    const mpe::LinearMep mep(v0, v);
    const auto a = mpe::solve(mep.to_pmep()).solutions;
    const auto b = mpe::solve_linear_mep(mep);
    ASSERT_EQ(a.size(), 6u);
    EXPECT_LT(match_distance(points(a), points(b)), 1e-8);
  }
}

TEST(Solve, UnivariatePassthrough) {
  std::mt19937_64 rng(8);
  const Pmep p({random_poly(3, {2}, rng)});
  const auto sols = mpe::solve(p).solutions;
  const auto pep = mpe::solve_pep(mpe::ResultantPoly(p[0].coeffs(), p[0].basis()));
  std::vector<std::vector<cplx>> expect;
  for (const auto& e : pep.finite) expect.push_back({e.lambda});
  ASSERT_EQ(sols.size(), 6u);
  EXPECT_LT(match_distance(points(sols), expect), 1e-12);
}

TEST(Solve, ThreeVariablesMatchOracle) {
  std::mt19937_64 rng(9);
  const Pmep p = random_pmep({1, 2, 1}, {2, 1, 1}, rng);
  // Box degrees (2,1,1), (4,2,2), (2,1,1) for the determinants: 24 roots.
  const mpe::SolveResult r = mpe::solve(p);
  EXPECT_TRUE(r.diagnostics.rotated);
  EXPECT_TRUE(r.diagnostics.unrotated_fallback);
  EXPECT_EQ(r.solutions.size(), 24u);
  mpe::OracleConfig oc;
  oc.starts = 1000;
  const auto oracle = mpe::newton_oracle(p, oc).solutions;
  ASSERT_GE(oracle.size(), 12u);
  for (const auto& s : oracle) EXPECT_LE(nearest_distance(s.x, points(r.solutions)), 1e-6);
}

TEST(Solve, SingleLevelReductionWithoutRotation) {
  std::mt19937_64 rng(10);
  const Pmep p = scalar_system({1, 1, 3}, rng);
  SolverConfig cfg;
  cfg.rotate = false;
  const mpe::SolveResult r = mpe::solve(p, cfg);
  EXPECT_TRUE(r.diagnostics.reduced);
  ASSERT_FALSE(r.solutions.empty());
  for (const auto& s : r.solutions) EXPECT_TRUE(s.reduced);
  mpe::OracleConfig oc;
  oc.starts = 1000;
  const auto oracle = mpe::newton_oracle(p, oc).solutions;
  // Box degrees (1,1,3) for each scalar equation: 3! * 3 = 18 roots.
  EXPECT_EQ(r.solutions.size(), 18u);
  ASSERT_GE(oracle.size(), 9u);
  for (const auto& s : oracle) EXPECT_LE(nearest_distance(s.x, points(r.solutions)), 1e-6);
}

TEST(Solve, ExplicitHiddenVariableSkipsRotation) {
  std::mt19937_64 rng(11);
  const Pmep p = random_pmep({2, 2}, {1, 2}, rng);
  SolverConfig cfg;
  cfg.hide_variable = 0;
  const mpe::SolveResult r = mpe::solve(p, cfg);
  EXPECT_FALSE(r.diagnostics.rotated);
  EXPECT_FALSE(r.diagnostics.warnings.empty());
  SolverConfig plain;
  plain.rotate = false;
  EXPECT_LT(match_distance(points(r.solutions), points(mpe::solve(p, plain).solutions)), 1e-6);
}

TEST(Solve, DeterministicForFixedSeed) {
  std::mt19937_64 rng(12);
  const Pmep p = random_pmep({2, 2}, {2, 1}, rng);
  SolverConfig cfg;
  cfg.seed = 77;
  const auto a = mpe::solve(p, cfg).solutions;
  const auto b = mpe::solve(p, cfg).solutions;
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_EQ(a[i].residual, b[i].residual);
  }
}
