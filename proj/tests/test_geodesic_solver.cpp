// Copyright 2026 The isinggeo Authors
//
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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "isinggeo/geodesic_solver.hpp"

namespace isinggeo {
namespace {

// Reference values from tests/oracles/geodesic_oracle.py (adaptive scipy
// integration, first-approach minimization).
constexpr double kOracleF1 = 0.520028218;
constexpr double kOracleTau1 = 1.968955340;
constexpr double kOracleF2 = 1.237698119;
constexpr double kOracleTau2 = 1.269127182;

const GeodesicSet& solutions() {
  static const GeodesicSet set = solve_all();
  return set;
}

TEST(GeodesicSolver, FirstStepMatchesOracle) {
  const auto& s = solutions().first;
  EXPECT_NEAR(s.f, kOracleF1, 1e-6);
  EXPECT_NEAR(s.tau, kOracleTau1, 1e-6);
  EXPECT_LT(s.miss, 1e-8);
}

TEST(GeodesicSolver, IntermediateStepMatchesOracle) {
  const auto& s = solutions().intermediate;
  EXPECT_NEAR(s.f, kOracleF2, 1e-6);
  EXPECT_NEAR(s.tau, kOracleTau2, 1e-6);
  // The angle sweeps exactly a quarter turn.
  EXPECT_NEAR(s.f * s.tau, std::numbers::pi / 2, 1e-6);
}

TEST(GeodesicSolver, LastStepIsReversedFirstStep) {
  const auto& first = solutions().first;
  const auto& last = solutions().last;
  EXPECT_NEAR(last.tau, first.tau, 1e-12);
  EXPECT_NEAR(last.theta_start, std::numbers::pi / 2 - first.theta_end, 1e-12);
  const Vec3 end(last.trajectory.final_state());
  EXPECT_LT((end - last.problem.target).norm(), 1e-6);
}

TEST(GeodesicSolver, BlockEndpoints) {
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_LT((block_start(GeodesicStep::intermediate) - Vec4(s, s, 0, 0)).norm(), 1e-15);
  EXPECT_LT((block_target(GeodesicStep::intermediate) - Vec4(0, 0, s, s)).norm(), 1e-15);
}

TEST(GeodesicSolver, ExportedPulsesReplayToTarget) {
  for (const auto* s : {&solutions().first, &solutions().intermediate, &solutions().last}) {
    const ExportedPulse ex = export_pulse(*s, 2001);
    ASSERT_EQ(ex.pulse.size(), 2001u);
    EXPECT_NEAR(ex.pulse.duration(), s->tau, 1e-12);
    EXPECT_LT((replay_block(*s, ex.pulse) - block_target(s->step)).norm(), 1e-3) << to_string(s->step);
  }
}

TEST(GeodesicSolver, FirstStepControlIsConstant) {
  const ExportedPulse ex = export_pulse(solutions().first, 2001);
  EXPECT_TRUE(ex.near_constant);
  EXPECT_LT(ex.pulse.max_value() - ex.pulse.min_value(), 1e-6);
  // u = 2 f for this curve.
  EXPECT_NEAR(ex.pulse.at(solutions().first.tau / 2), 2 * solutions().first.f, 1e-6);
}

TEST(GeodesicSolver, IntermediatePulseIsTimeSymmetric) {
  const auto& s = solutions().intermediate;
  const ControlPulse p = export_pulse(s, 2001).pulse;
  for (double t : {0.0, 0.2, 0.5, 0.9}) EXPECT_NEAR(p.at(t), p.at(s.tau - t), 1e-6);
}

TEST(GeodesicSolver, DeterministicUnderBracketChange) {
  const auto a = solve_step(GeodesicStep::first, std::make_pair(0.12, 0.95));
  const auto b = solve_step(GeodesicStep::first, std::make_pair(0.3, 0.9));
  EXPECT_NEAR(a.f, b.f, 1e-9);
  EXPECT_NEAR(a.tau, b.tau, 1e-9);
}

TEST(GeodesicSolver, BracketWithoutRootThrows) {
  EXPECT_THROW(solve_step(GeodesicStep::first, std::make_pair(0.02, 0.05)), NoRootError);
}

TEST(GeodesicSolver, StepNames) {
  EXPECT_EQ(parse_step("intermediate"), GeodesicStep::intermediate);
  EXPECT_EQ(to_string(GeodesicStep::last), "last");
  EXPECT_THROW(parse_step("middle"), std::invalid_argument);
}

}  // namespace
}  // namespace isinggeo
