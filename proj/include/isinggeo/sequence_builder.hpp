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

#include <string>
#include <variant>
#include <vector>

#include "isinggeo/geodesic_solver.hpp"
#include "isinggeo/product_operators.hpp"
#include "isinggeo/reduced_dynamics.hpp"

namespace isinggeo {

enum class RotationAxis { px, mx, py, my, pz, mz };

std::string to_string(RotationAxis axis);
RotationAxis parse_rotation_axis(const std::string& text);
/// Unsigned axis and the sign (+1 / -1) of a rotation axis.
std::pair<Axis, double> axis_components(RotationAxis axis);

/// Ideal instantaneous selective rotation exp(-i angle sum_s I_s.axis).
struct HardPulse {
  std::vector<int> spins;
  RotationAxis axis = RotationAxis::py;
  double angle = 0.0;
};

/// Free coupling evolution; bonds touching a decoupled spin are switched off.
struct Delay {
  double duration = 0.0;
  std::vector<int> decoupled;
};

/// Couplings plus u(t) pi J sum_s I_sy over the driven spins.
struct ShapedInterval {
  ControlPulse pulse;
  std::vector<int> driven;
  std::vector<int> decoupled;
};

using SequenceElement = std::variant<HardPulse, Delay, ShapedInterval>;

double duration_of(const SequenceElement& e);

struct Transfer {
  std::string label;
  OperatorSum initial;
  OperatorSum target;
};

class PulseSequence {
 public:
  explicit PulseSequence(ChainSpec chain, std::string name = {});

  const ChainSpec& chain() const { return chain_; }
  const std::string& name() const { return name_; }
  const std::vector<SequenceElement>& elements() const { return elements_; }
  const std::vector<Transfer>& transfers() const { return transfers_; }

  /// Sum of element durations, units of 1/(pi J).
  double duration() const;

  PulseSequence& hard(std::vector<int> spins, RotationAxis axis, double angle);
  PulseSequence& delay(double duration, std::vector<int> decoupled = {});
  PulseSequence& shaped(ControlPulse pulse, std::vector<int> driven, std::vector<int> decoupled = {});
  PulseSequence& append(SequenceElement e);
  PulseSequence& append(const PulseSequence& other);
  PulseSequence& add_transfer(std::string label, OperatorSum initial, OperatorSum target);
  PulseSequence& clear_transfers();
  PulseSequence& rename(std::string name);
  /// The first `count` elements, without transfers.
  PulseSequence head(std::size_t count) const;

 private:
  void check_spins(const std::vector<int>& spins) const;

  ChainSpec chain_;
  std::string name_;
  std::vector<SequenceElement> elements_;
  std::vector<Transfer> transfers_;
};

/// Propagator-level inverse: maps each transfer's target back to its initial
/// operator. Reversed delays use pi_x pulses on the even spins, which flip the
/// sign of every bond.
PulseSequence inverted(const PulseSequence& seq);

/// Site relabeling m -> n + 1 - m.
PulseSequence mirrored(const PulseSequence& seq);

/// Delays of pi/2 interleaved with hard (pi/2)_y pulses on spins 2..n-1, taking
/// I_1x to 2^(n-1) I_1y .. I_(n-1)y I_nz in (n-1) pi / 2.
PulseSequence conventional_cascade(int n, double j_hz = 1.0);

/// Constant pulse on spin 2 for tau1, shaped pulses of duration tau2 on spins
/// 3..n-2 back to back, constant pulse on spin n-1 for tau1. Zero-time
/// y-rotations on the control spin align theta between blocks.
PulseSequence geodesic_order_sequence(int n, const GeodesicSet& solutions, double j_hz = 1.0,
                                      std::size_t pulse_samples = 2001);

/// 2 I_kx I_(k+1)z -> 2 I_(k+1)x I_(k+2)z by (pi/2) on (I_ky + I_(k+1)y) then pi/2 delay.
PulseSequence inept_step(int n, int k, double j_hz = 1.0);
/// I_1x -> I_nx through the concatenated INEPT chain.
PulseSequence inept_cascade(int n, double j_hz = 1.0);

/// I_1x -> Lambda_1.
PulseSequence lambda_preparation(int n, double j_hz = 1.0);
/// Lambda_(n-3) -> I_nx; mirror image of the inverted preparation.
PulseSequence lambda_collapse(int n, double j_hz = 1.0);
/// Lambda_k -> Lambda_(k+1) in tau2 with spins k+1 and k+3 driven.
PulseSequence lambda_propagation_step(int n, int k, const GeodesicSolution& intermediate, double j_hz = 1.0,
                                      std::size_t pulse_samples = 2001, bool decouple_outside = false);
/// I_1x -> Lambda_1 -> ... -> Lambda_(n-3) -> I_nx.
PulseSequence lambda_transfer(int n, const GeodesicSolution& intermediate, double j_hz = 1.0,
                              std::size_t pulse_samples = 2001);

/// (I_1y, I_1x) -> (Lambda_1, Lambda_3).
PulseSequence pair_encoding(int n, const GeodesicSolution& intermediate, double j_hz = 1.0,
                            std::size_t pulse_samples = 2001);
/// (Lambda_k, Lambda_(k+2)) -> (Lambda_(k+1), Lambda_(k+3)) with spins k+1, k+3, k+5 driven.
PulseSequence pair_propagation_step(int n, int k, const GeodesicSolution& intermediate, double j_hz = 1.0,
                                    std::size_t pulse_samples = 2001);

/// Closed-form totals in units of 1/(pi J).
double conventional_duration(int n);
double geodesic_order_duration(int n, double tau1, double tau2);
double inept_duration(int n);
double lambda_transfer_duration(int n, double tau2);

}  // namespace isinggeo
