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

#pragma once

// Exact propagation of an operator through a pulse sequence on the full
// 2^n-dimensional space, O -> U O U^dagger. Hamiltonians are written in units
// of pi J, so H_c = 2 sum I_mz I_(m+1)z and a drive is u sum I_sy.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isinggeo/geodesic_solver.hpp"
#include "isinggeo/product_operators.hpp"
#include "isinggeo/sequence_builder.hpp"

namespace isinggeo {

using Bond = std::pair<int, int>;

struct HamiltonianSpec {
  std::vector<Bond> bonds;   // (m, m+1), each carrying 2 pi J I_mz I_(m+1)z
  std::vector<int> driven;   // spins receiving u(t) pi J I_sy

  /// All nearest-neighbour bonds except those touching a decoupled spin.
  static HamiltonianSpec coupling(int n, const std::vector<int>& decoupled = {}, std::vector<int> driven = {});

  OperatorSum at(double u) const;
};

struct SimulationOptions {
  /// Exponentiated slices per pulse-sample interval.
  int slice_refinement = 1;
  /// Spacing of recorded expectation values; 0 disables the profile.
  double report_dt = 0.0;
  std::vector<OperatorSum> basis;
  /// Expand the final operator into product operators (n <= 8).
  bool decompose = false;
};

struct ProfileSample {
  double time = 0.0;
  std::vector<double> values;
};

struct SimulationResult {
  int n = 0;
  Matrix final;
  std::optional<OperatorSum> final_operator;
  double duration = 0.0;
  double initial_norm = 0.0;
  /// max | ||O(t)|| - ||O(0)|| | over element boundaries and slices.
  double norm_drift = 0.0;
  std::vector<ProfileSample> profile;
};

SimulationResult propagate(const PulseSequence& seq, const OperatorSum& initial, const SimulationOptions& options = {});
SimulationResult propagate(const PulseSequence& seq, const Matrix& initial, const SimulationOptions& options = {});

/// Evolution under an arbitrary coupling/drive split for the duration of the pulse.
SimulationResult propagate_hamiltonian(const ChainSpec& chain, const HamiltonianSpec& h, const ControlPulse& pulse,
                                       const OperatorSum& initial, const SimulationOptions& options = {});

/// <a, b> / (|a| |b|) with the normalized trace inner product.
double fidelity(const Matrix& a, const Matrix& b, int n);
double fidelity(const SimulationResult& result, const OperatorSum& target);

/// Normalized expectation Tr(B^dagger O) / 2^(n-2), real part.
double expectation(const Matrix& op, const OperatorSum& b, int n);

std::vector<ProfileSample> expectation_profile(const PulseSequence& seq, const OperatorSum& initial,
                                               const std::vector<OperatorSum>& basis, double dt_report);

/// H_a = 2 I_(k+2)z I_(k+3)z + 2 I_(k+3)z I_(k+4)z + u I_(k+3)y,
/// H_b = 2 I_kz I_(k+1)z + 2 I_(k+1)z I_(k+2)z + u I_(k+1)y.
struct CommutingSplit {
  HamiltonianSpec a;
  HamiltonianSpec b;
};

CommutingSplit commuting_split(int k);

/// max_u |[H_a, H_b]|. With `perturb`, H_b carries an extra I_(k+2)x term.
double verify_commuting_split(int k, const ChainSpec& chain, const std::vector<double>& u_samples,
                              bool perturb = false);

struct MethodRow {
  std::string family;  // "order" or "coherence"
  std::string method;
  double duration = 0.0;          // units of 1/(pi J)
  double duration_seconds = 0.0;
  std::optional<double> fidelity;
};

struct ComparisonReport {
  int n = 0;
  double j_hz = 1.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  /// tau2 / (pi/2): one shaped block against one conventional delay.
  double step_ratio = 0.0;
  /// 2 tau1 + (n-4) tau2.
  double geodesic_total = 0.0;
  /// pi (n-1) (sqrt2 - 1).
  double approximate_total = 0.0;
  double conventional_total = 0.0;
  std::vector<MethodRow> rows;
};

/// Durations of the four transfer families; with `simulate`, also the
/// fidelity of each (skipped where the chain is too short).
ComparisonReport compare_methods(int n, const GeodesicSet& solutions, double j_hz = 1.0, bool simulate = true);

}  // namespace isinggeo
