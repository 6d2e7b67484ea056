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

// Shortest paths on the unit sphere under g = (dr1^2 + dr3^2) / r2^2, found by
// shooting over the constant rate f of theta(t) = theta0 + f t.

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isinggeo/reduced_dynamics.hpp"

namespace isinggeo {

class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GeodesicStep { first, intermediate, last };

std::string to_string(GeodesicStep step);
GeodesicStep parse_step(const std::string& name);

struct GeodesicProblem {
  Vec3 start;
  Vec3 target;
  double theta0 = 0.0;

  /// Boundary values of the three transfer blocks:
  ///   first:        (1,0,0)         -> (0,1/sqrt2,1/sqrt2)
  ///   intermediate: (1/sqrt2,1/sqrt2,0) -> (0,1/sqrt2,1/sqrt2)
  ///   last:         (1/sqrt2,1/sqrt2,0) -> (0,0,1)
  static GeodesicProblem for_step(GeodesicStep step);
};

struct Passage {
  double time = 0.0;
  double miss = 0.0;
  /// Miss distance signed by the side of the target the curve passes on.
  double signed_miss = 0.0;
};

struct ShootOptions {
  double horizon = 3.0 * std::numbers::pi;
  double dt = kDefaultDt;
  /// Local minima of the distance above this do not count as approaches.
  double coarse_threshold = 0.25;
};

struct ShotResult {
  /// All approaches below the coarse threshold, in time order.
  std::vector<Passage> passages;
  /// Earliest approach, if any.
  std::optional<Passage> first() const {
    if (passages.empty()) return std::nullopt;
    return passages.front();
  }
};

ShotResult shoot(double f, const GeodesicProblem& problem, const ShootOptions& options = {});

struct SolverOptions {
  double dt = kDefaultDt;
  double horizon = 3.0 * std::numbers::pi;
  /// Grid used to bracket sign changes of the signed miss.
  std::size_t scan_points = 161;
  double scan_dt = 1e-3;
  /// Accepted miss distance.
  double tolerance = 1e-8;
};

struct GeodesicSolution {
  GeodesicStep step = GeodesicStep::first;
  GeodesicProblem problem;
  double f = 0.0;    // units of pi J
  double tau = 0.0;  // units of 1/(pi J)
  double miss = 0.0;
  double theta_start = 0.0;
  double theta_end = 0.0;
  /// (r1, r2, r3) sampled on the integration grid.
  Trajectory trajectory;
  /// Control u(t) realizing the curve, on the same grid.
  ControlPulse pulse;

  double theta_at(double t) const { return theta_start + f * t; }
};

std::pair<double, double> default_bracket(GeodesicStep step);

GeodesicSolution solve(const GeodesicProblem& problem, std::pair<double, double> f_bracket,
                       const SolverOptions& options = {});

/// Time-reversed and r1<->r3 mirrored first step, carried onto the last-step
/// boundary values. theta'(t) = pi/2 - theta(tau - t).
GeodesicSolution last_step_by_reversal(const GeodesicSolution& first);

/// Solves one of the three blocks with the default (or supplied) bracket. The
/// last step is built from the first by reversal.
GeodesicSolution solve_step(GeodesicStep step, std::optional<std::pair<double, double>> f_bracket = std::nullopt,
                            const SolverOptions& options = {});

struct GeodesicSet {
  GeodesicSolution first;
  GeodesicSolution intermediate;
  GeodesicSolution last;
};

GeodesicSet solve_all(const SolverOptions& options = {});

struct ExportedPulse {
  ControlPulse pulse;
  /// max - min <= 1e-3 outside a 1e-3-wide layer at singular endpoints.
  bool near_constant = false;
  /// Indices of samples filled from one-sided limits.
  std::vector<std::size_t> singular_samples;
};

ExportedPulse export_pulse(const GeodesicSolution& solution, std::size_t samples);

/// Replays the pulse through the block dynamics from the block start and
/// returns the final 4-vector.
Vec4 replay_block(const GeodesicSolution& solution, const ControlPulse& pulse, double dt = kDefaultDt);

/// Cartesian block start / target of a step.
Vec4 block_start(GeodesicStep step);
Vec4 block_target(GeodesicStep step);

}  // namespace isinggeo
