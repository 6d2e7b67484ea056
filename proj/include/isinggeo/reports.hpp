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
#include <vector>

#include "isinggeo/geodesic_solver.hpp"
#include "isinggeo/serialization.hpp"

namespace isinggeo {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Module invariants: operator algebra, integrator, solver, builder and
/// simulator properties. Each entry compares a measured value to a bound.
std::vector<Check> run_invariant_suite(const GeodesicSet& solutions);

Json checks_to_json(const std::vector<Check>& checks);
std::string checks_table(const std::vector<Check>& checks);

/// Max deviation of the cascade-coordinate Gram matrix from the identity,
/// matrix inner product, n in [2, n_max].
double basis_gram_deviation(int n_max);

/// Sup-norm gap between the full-chain coordinates of one transfer block and
/// the reduced 4-state integration driven by the same pulse. The block sits on
/// spin `spin` of an n-spin chain (first step: spin 2).
double block_model_gap(const GeodesicSolution& solution, int n, int spin, double report_dt = 0.01);

/// max |q(t) - q_ref| of the Lagrangian (which = "lagrangian") or the conserved
/// quantity (which = "fhat") along the solution away from the endpoints;
/// q_ref is L(tau/2) for the Lagrangian and f for fhat.
double along_solution_spread(const GeodesicSolution& solution, const std::string& which, double margin = 0.05);

/// Observed convergence order of fixed-step RK4 on the 4-state block with a
/// constant control, against the exact matrix exponential.
double rk4_observed_order(double u = 1.084, double duration = 1.94);

}  // namespace isinggeo
