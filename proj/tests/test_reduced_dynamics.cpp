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
#include <unsupported/Eigen/MatrixFunctions>

#include "isinggeo/reduced_dynamics.hpp"

namespace isinggeo {
namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix4d block_generator(double u) {
  Eigen::Matrix4d a;
  a << 0, -1, 0, 0,
       1, 0, -u, 0,
       0, u, 0, -1,
       0, 0, 1, 0;
  return a;
}

TEST(ReducedDynamics, BlockRhsMatchesGenerator) {
  const Vec4 x(0.3, -0.2, 0.7, 0.1);
  EXPECT_LT((step4_rhs(x, 1.3) - block_generator(1.3) * x).norm(), 1e-15);
}

TEST(ReducedDynamics, ConstantControlMatchesMatrixExponential) {
  const double u = 1.084, t = 1.94;
  const Vec4 x0(1, 0, 0, 0);
  const Vec4 exact = (block_generator(u) * t).exp() * x0;
  const Trajectory tr = integrate_step4(ControlPulse::constant(u, t), x0, 1e-3);
  EXPECT_LT((Vec4(tr.final_state()) - exact).norm(), 1e-11);
  EXPECT_LT(tr.norm_drift, 1e-12);
}

TEST(ReducedDynamics, Rk4ConvergesAtFourthOrder) {
  const double u = 0.8, t = 2.0;
  const Vec4 x0(1, 0, 0, 0);
  const Vec4 exact = (block_generator(u) * t).exp() * x0;
  const auto err = [&](double dt) {
    return (Vec4(integrate_step4(ControlPulse::constant(u, t), x0, dt).final_state()) - exact).norm();
  };
  const double order = std::log2(err(0.05) / err(0.025));
  EXPECT_NEAR(order, 4.0, 0.15);
}

TEST(ReducedDynamics, ChainGeneratorIsAntisymmetricAndMatchesRhs) {
  const std::vector<double> u = {0.4, -1.1, 2.0};
  const Eigen::MatrixXd a = chain_generator(5, u);
  ASSERT_EQ(a.rows(), 8);
  EXPECT_LT((a + a.transpose()).norm(), 1e-15);
  Vec x = Vec::LinSpaced(8, -1.0, 1.0);
  EXPECT_LT((chain_rhs(x, u) - a * x).norm(), 1e-15);
  // u_1 couples x_2 with x_3.
  EXPECT_DOUBLE_EQ(a(2, 1), 0.4);
  EXPECT_DOUBLE_EQ(a(1, 2), -0.4);
}

TEST(ReducedDynamics, FreeEvolutionMovesOneCoordinatePerQuarterPeriod) {
  // Coupling only: x1 -> x2 in pi/2.
  Vec x0 = Vec::Zero(6);
  x0(0) = 1.0;
  const Trajectory tr = integrate_chain(4, [](double) { return std::vector<double>{0.0, 0.0}; }, x0, kPi / 2, 1e-3);
  EXPECT_NEAR(tr.final_state()(1), 1.0, 1e-12);
  EXPECT_LT(tr.norm_drift, 1e-12);
}

TEST(ReducedDynamics, PolarRoundTrip) {
  const Vec4 x(0.2, 0.5, -0.4, 0.3);
  const RState r = to_polar(x);
  EXPECT_NEAR(r.r2, std::hypot(0.5, -0.4), 1e-15);
  EXPECT_LT((from_polar(r) - x).norm(), 1e-15);
  const RState s = to_polar(Vec4(1, 0, 0, 0), 0.7);
  EXPECT_TRUE(s.theta_indeterminate);
  EXPECT_DOUBLE_EQ(s.theta, 0.7);
}

TEST(ReducedDynamics, ControlFromPolarReproducesCartesianMotion) {
  // Drive the Cartesian block with the control computed from a polar curve
  // and compare the endpoints.
  const double s = 1.0 / std::sqrt(2.0), f = 1.2, t = 1.0;
  const Trajectory polar = integrate_polar(Vec3(s, s, 0), 0.0, f, t, 1e-4);
  const ControlPulse u = u_from_theta(polar, 0.0, f, 0.0);
  const Trajectory cart = integrate_step4(u, Vec4(s, s, 0, 0), 1e-4);
  RState end;
  const Vec& p = polar.final_state();
  end.r1 = p(0);
  end.r2 = p(1);
  end.r3 = p(2);
  end.theta = f * t;
  EXPECT_LT((Vec4(cart.final_state()) - from_polar(end)).norm(), 1e-6);
}

TEST(ReducedDynamics, ConservedQuantityAndLagrangianClosedForms) {
  const Vec3 r(0.3, 0.8, 0.52);
  const double th = 0.4;
  const Vec3 d = r_rhs(r, th);
  EXPECT_NEAR(conserved_quantity(r, th), (d(2) * r(0) - d(0) * r(2)) / (r(1) * r(1)), 1e-15);
  EXPECT_NEAR(lagrangian(r, th), std::sqrt((d(0) * d(0) + d(2) * d(2)) / (r(1) * r(1))), 1e-15);
}

TEST(ReducedDynamics, PulseSamplingHelpers) {
  const ControlPulse p({0.0, 1.0, 2.0}, {0.0, 2.0, 1.0});
  EXPECT_DOUBLE_EQ(p.at(0.5), 1.0);
  EXPECT_DOUBLE_EQ(p.at(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(p.at(5.0), 1.0);
  EXPECT_DOUBLE_EQ(p.reversed().at(0.0), 1.0);
  EXPECT_DOUBLE_EQ(p.scaled(-2.0).at(1.0), -4.0);
  const ControlPulse r = p.resampled(5);
  ASSERT_EQ(r.size(), 5u);
  EXPECT_DOUBLE_EQ(r.values()[3], 1.5);
  EXPECT_DOUBLE_EQ(p.max_value(), 2.0);
  EXPECT_THROW(ControlPulse({0.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
}

}  // namespace
}  // namespace isinggeo
