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

#include "json.hpp"

#include "isinggeo/chain_simulator.hpp"
#include "isinggeo/geodesic_solver.hpp"
#include "isinggeo/sequence_builder.hpp"

namespace isinggeo {

using Json = nlohmann::ordered_json;

inline constexpr const char* kTimeUnit = "1/(pi J)";
inline constexpr const char* kRateUnit = "pi J";

Json pulse_to_json(const ControlPulse& pulse);
ControlPulse pulse_from_json(const Json& j);

Json solution_to_json(const GeodesicSolution& s, const ChainSpec& chain);

Json sequence_to_json(const PulseSequence& seq);
PulseSequence sequence_from_json(const Json& j);

struct TransferOutcome {
  std::string label;
  std::string initial;
  std::string target;
  double fidelity = 0.0;
};

Json result_to_json(const PulseSequence& seq, const SimulationResult& result,
                    const std::vector<TransferOutcome>& outcomes);

Json comparison_to_json(const ComparisonReport& rep);
Json comparisons_to_json(const std::vector<ComparisonReport>& reps);

/// t and u columns with unit-bearing headers.
std::string pulse_csv(const ControlPulse& pulse);
std::string profile_csv(const std::vector<ProfileSample>& profile, const std::vector<std::string>& labels);
std::string comparison_csv(const std::vector<ComparisonReport>& reps);
/// Aligned text table.
std::string comparison_table(const std::vector<ComparisonReport>& reps);

/// Shortest round-trip decimal form.
std::string format_number(double x);

}  // namespace isinggeo
