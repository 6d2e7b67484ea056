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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "isinggeo/chain_simulator.hpp"
#include "isinggeo/sequence_builder.hpp"

namespace isinggeo {
namespace {

constexpr double kPi = std::numbers::pi;
// tests/oracles/lambda_step_oracle.py: Lambda_1 -> Lambda_2 overlap on six
// spins under the intermediate pulse (identical in both evolution pictures).
constexpr double kOracleLambdaStep = 0.27742741;

OperatorSum P(const char* s) { return OperatorSum::parse(s); }

const GeodesicSet& solutions() {
  static const GeodesicSet set = solve_all();
  return set;
}

// Dense reference: full matrix exponentials of the chain Hamiltonian, with
// the shaped drive sampled at the midpoint of each pulse sample interval.
Matrix coupling_matrix(const ChainSpec& c, const std::vector<int>& off) {
  Matrix h = Matrix::Zero(c.dim(), c.dim());
  for (int m = 1; m < c.n(); ++m) {
    if (std::find(off.begin(), off.end(), m) != off.end()) continue;
    if (std::find(off.begin(), off.end(), m + 1) != off.end()) continue;
    h += matrix_of(OperatorSum::parse("2*I" + std::to_string(m) + "z*I" + std::to_string(m + 1) + "z"), c);
  }
  return h;
}

Matrix dense_propagate(const PulseSequence& seq, const Matrix& rho0) {
  const ChainSpec& c = seq.chain();
  const Complex mi(0, -1);
  Matrix rho = rho0;
  auto conj = [&](const Matrix& u) { rho = u * rho * u.adjoint(); };
  for (const auto& e : seq.elements()) {
    if (const auto* h = std::get_if<HardPulse>(&e)) {
      const auto [axis, sign] = axis_components(h->axis);
      Matrix g = Matrix::Zero(c.dim(), c.dim());
      for (int s : h->spins) g += matrix_of(OperatorSum::spin(s, axis), c);
      conj(Matrix(mi * sign * h->angle * g).exp());
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      conj(Matrix(mi * d->duration * coupling_matrix(c, d->decoupled)).exp());
    } else {
      const auto& s = std::get<ShapedInterval>(e);
      const Matrix hc = coupling_matrix(c, s.decoupled);
      Matrix hd = Matrix::Zero(c.dim(), c.dim());
      for (int m : s.driven) hd += matrix_of(OperatorSum::spin(m, Axis::y), c);
      const auto t = s.pulse.times();
      for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double dt = t[i + 1] - t[i];
        conj(Matrix(mi * dt * (hc + s.pulse.at(0.5 * (t[i] + t[i + 1])) * hd)).exp());
      }
    }
  }
  return rho;
}

double transfer_fidelity(const PulseSequence& seq, std::size_t index = 0) {
  const Transfer& t = seq.transfers().at(index);
  return fidelity(propagate(seq, t.initial), t.target);
}

TEST(ChainSimulator, MatchesDenseExponentialOracle) {
  PulseSequence s(ChainSpec(4));
  s.delay(0.6)
      .hard({2, 3}, RotationAxis::my, 0.9)
      .shaped(solutions().intermediate.pulse.resampled(151), {2, 4}, {1})
      .hard({1}, RotationAxis::pz, 0.4)
      .delay(0.35, {3});
  const ChainSpec& c = s.chain();
  for (const char* op : {"I1x", "2*I1y*I2z + 0.5*I3x", "4*I2x*I3z*I4y"}) {
    const Matrix rho0 = matrix_of(P(op), c);
    const Matrix ref = dense_propagate(s, rho0);
    EXPECT_LT((propagate(s, rho0).final - ref).norm(), 1e-11) << op;
  }
}

TEST(ChainSimulator, SingleDelayRotatesIntoAntiphase) {
  PulseSequence s(ChainSpec(3));
  s.delay(kPi / 2);
  EXPECT_NEAR(fidelity(propagate(s, P("I1x")), P("2*I1y*I2z")), 1.0, 1e-13);
  PulseSequence q(ChainSpec(3));
  q.delay(kPi / 4);
  const auto r = propagate(q, P("I1x"));
  EXPECT_NEAR(expectation(r.final, P("I1x"), 3), std::sqrt(0.5), 1e-13);
  EXPECT_NEAR(expectation(r.final, P("2*I1y*I2z"), 3), std::sqrt(0.5), 1e-13);
}

TEST(ChainSimulator, ConventionalCascadeReachesOrder) {
  for (int n = 2; n <= 6; ++n) EXPECT_GE(transfer_fidelity(conventional_cascade(n)), 1.0 - 1e-9) << n;
}

TEST(ChainSimulator, GeodesicOrderSequenceReachesOrder) {
  for (int n = 4; n <= 6; ++n) {
    const double f = transfer_fidelity(geodesic_order_sequence(n, solutions()));
    EXPECT_GE(f, 0.999) << n;
  }
}

TEST(ChainSimulator, LambdaPreparationAndCheckpoint) {
  const PulseSequence prep = lambda_preparation(6);
  EXPECT_GE(transfer_fidelity(prep), 1.0 - 1e-9);
  const auto mid = propagate(prep.head(5), P("I1x"));
  EXPECT_NEAR(expectation(mid.final, P("4*I1y*I2y*I3x"), 6), std::sqrt(0.5), 1e-9);
  EXPECT_NEAR(expectation(mid.final, P("8*I1y*I2y*I3y*I4z"), 6), std::sqrt(0.5), 1e-9);
}

TEST(ChainSimulator, CommutingSplit) {
  const ChainSpec c(6);
  const std::vector<double> u = {0.0, 0.7, -1.3, 2.1};
  EXPECT_LT(verify_commuting_split(1, c, u), 1e-14);
  EXPECT_GT(verify_commuting_split(1, c, u, true), 1e-3);
}

TEST(ChainSimulator, HalfHamiltonianTakesLambdaToD) {
  const auto& mid = solutions().intermediate;
  const auto split = commuting_split(1);
  const auto t = table1_operators(1);
  const OperatorSum d_half = 0.5 * (t.d[0] + t.d[1] + t.d[2] + t.d[3]);
  const auto r = propagate_hamiltonian(ChainSpec(6), split.a, mid.pulse.resampled(2001), lambda_k(1));
  EXPECT_GE(fidelity(r, d_half), 0.999);
}

TEST(ChainSimulator, LambdaStepMatchesDenseOracleValue) {
  // The simulator agrees with the independent dense computation; the value is
  // far below a full Lambda_1 -> Lambda_2 transfer.
  const PulseSequence s = lambda_propagation_step(6, 1, solutions().intermediate);
  EXPECT_NEAR(transfer_fidelity(s), kOracleLambdaStep, 1e-6);
}

TEST(ChainSimulator, DecouplingOutsideBlocksDoesNotChangeStep) {
  const auto& mid = solutions().intermediate;
  const double plain = transfer_fidelity(lambda_propagation_step(7, 2, mid));
  const double decoupled = transfer_fidelity(lambda_propagation_step(7, 2, mid, 1.0, 2001, true));
  EXPECT_NEAR(plain, decoupled, 1e-10);
}

TEST(ChainSimulator, HardPulseIsLimitOfStrongFiniteDrive) {
  // A pi/2 y rotation realized by a finite drive of amplitude 1e3.
  const double amp = 1e3, dur = (kPi / 2) / amp;
  PulseSequence hard(ChainSpec(3)), soft(ChainSpec(3));
  hard.hard({2}, RotationAxis::py, kPi / 2);
  soft.shaped(ControlPulse::constant(amp, dur, 2), {2});
  const auto a = propagate(hard, P("2*I1y*I2z"));
  const auto b = propagate(soft, P("2*I1y*I2z"));
  EXPECT_GT(fidelity(a.final, b.final, 3), 1.0 - 1e-3);
}

TEST(ChainSimulator, SliceRefinementConverges) {
  const PulseSequence s = lambda_propagation_step(6, 1, solutions().intermediate, 1.0, 401);
  const auto& t = s.transfers()[0];
  SimulationOptions coarse, fine;
  fine.slice_refinement = 4;
  const double a = fidelity(propagate(s, t.initial, coarse), t.target);
  const double b = fidelity(propagate(s, t.initial, fine), t.target);
  EXPECT_LT(std::abs(a - b), 1e-5);
}

TEST(ChainSimulator, NormIsConservedAndProfileRecorded) {
  SimulationOptions o;
  o.report_dt = 0.05;
  o.basis = order_basis(5);
  const auto r = propagate(geodesic_order_sequence(5, solutions()), P("I1x"), o);
  EXPECT_LT(r.norm_drift, 1e-10);
  ASSERT_GT(r.profile.size(), 10u);
  EXPECT_DOUBLE_EQ(r.profile.front().time, 0.0);
  EXPECT_NEAR(r.profile.front().values[0], 1.0, 1e-15);
  EXPECT_NEAR(r.profile.back().time, r.duration, 1e-12);
  EXPECT_NEAR(r.profile.back().values.back(), 1.0, 1e-6);
}

TEST(ChainSimulator, ProfileMatchesReducedModel) {
  // The conventional cascade keeps the state inside the cascade coordinates,
  // so the sum of squared expectations stays 1.
  SimulationOptions o;
  o.report_dt = 0.1;
  o.basis = order_basis(4);
  const auto r = propagate(conventional_cascade(4), P("I1x"), o);
  for (const auto& s : r.profile) {
    double sum = 0.0;
    for (double v : s.values) sum += v * v;
    EXPECT_NEAR(sum, 1.0, 1e-10) << s.time;
  }
}

TEST(ChainSimulator, DecomposedFinalOperator) {
  SimulationOptions o;
  o.decompose = true;
  const auto r = propagate(conventional_cascade(3), P("I1x"), o);
  ASSERT_TRUE(r.final_operator.has_value());
  EXPECT_EQ(*r.final_operator, multiple_spin_order_target(3));
}

TEST(ChainSimulator, ComparisonRows) {
  const ComparisonReport rep = compare_methods(6, solutions(), 1.0, false);
  EXPECT_NEAR(rep.step_ratio, rep.tau2 / (kPi / 2), 1e-15);
  EXPECT_NEAR(rep.geodesic_total, 2 * rep.tau1 + 2 * rep.tau2, 1e-12);
  EXPECT_NEAR(rep.approximate_total, kPi * 5 * (std::sqrt(2.0) - 1), 1e-12);
  bool has_lambda = false;
  for (const auto& row : rep.rows) {
    EXPECT_FALSE(row.fidelity.has_value());
    has_lambda |= row.method == "lambda";
  }
  EXPECT_TRUE(has_lambda);
}

}  // namespace
}  // namespace isinggeo
