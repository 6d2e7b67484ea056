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

#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "isinggeo/reports.hpp"
#include "isinggeo/sequence_builder.hpp"
#include "isinggeo/serialization.hpp"

namespace isinggeo {
namespace {

const GeodesicSet& solutions() {
  static const GeodesicSet set = solve_all();
  return set;
}

TEST(Serialization, SequenceRoundTripIsExact) {
  const PulseSequence s = geodesic_order_sequence(5, solutions(), 2.0, 301);
  const Json j = sequence_to_json(s);
  EXPECT_EQ(j.at("format"), "isinggeo-sequence");
  EXPECT_EQ(j.at("units").at("time"), kTimeUnit);
  const PulseSequence back = sequence_from_json(Json::parse(j.dump()));
  EXPECT_EQ(sequence_to_json(back).dump(), j.dump());
  EXPECT_EQ(back.chain().n(), 5);
  EXPECT_DOUBLE_EQ(back.chain().j_hz(), 2.0);
  EXPECT_DOUBLE_EQ(back.duration(), s.duration());
}

TEST(Serialization, RejectsForeignDocuments) {
  EXPECT_THROW(sequence_from_json(Json{{"format", "other"}}), ParseError);
  Json j = sequence_to_json(conventional_cascade(3));
  j["elements"][0]["type"] = "laser";
  EXPECT_THROW(sequence_from_json(j), ParseError);
}

TEST(Serialization, PulseJsonAndCsv) {
  const ControlPulse p({0.0, 0.5, 1.25}, {1.0, -2.0, 0.125});
  const ControlPulse back = pulse_from_json(pulse_to_json(p));
  ASSERT_EQ(back.size(), 3u);
  EXPECT_DOUBLE_EQ(back.values()[1], -2.0);
  const std::string csv = pulse_csv(p);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t[1/(pi J)],u[pi J]");
  EXPECT_NE(csv.find("1.25,0.125"), std::string::npos);
}

TEST(Serialization, ShortestRoundTripNumbers) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Serialization, SolutionCarriesUnitsAndSeconds) {
  const Json j = solution_to_json(solutions().first, ChainSpec(2, 2.0));
  EXPECT_EQ(j.at("step"), "first");
  EXPECT_NEAR(j.at("tau_seconds").get<double>(), solutions().first.tau / (std::numbers::pi * 2.0), 1e-15);
}

TEST(Serialization, ComparisonOutputsAreConsistent) {
  const std::vector<ComparisonReport> reps = {compare_methods(4, solutions(), 1.0, false),
                                              compare_methods(5, solutions(), 1.0, false)};
  const std::string csv = comparison_csv(reps);
  std::istringstream in(csv);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 1 + static_cast<int>(reps[0].rows.size() + reps[1].rows.size()));
  const Json j = comparisons_to_json(reps);
  EXPECT_EQ(j.at("comparisons").size(), 2u);
  EXPECT_NE(comparison_table(reps).find("geodesic"), std::string::npos);
}

TEST(Reports, ChecksTableFormat) {
  std::vector<Check> checks = {{"a", true, 1e-14, 1e-12, ""}, {"b", false, 2.0, 1.0, "note"}};
  const std::string t = checks_table(checks);
  EXPECT_NE(t.find("[PASS] a"), std::string::npos);
  EXPECT_NE(t.find("[FAIL] b"), std::string::npos);
  EXPECT_NE(t.find("1/2 checks passed"), std::string::npos);
  EXPECT_FALSE(checks_to_json(checks).at("all_passed").get<bool>());
}

TEST(Reports, GramDeviationAndBlockModel) {
  EXPECT_LT(basis_gram_deviation(6), 1e-12);
  EXPECT_LT(block_model_gap(solutions().first, 4, 2), 1e-3);
  EXPECT_NEAR(rk4_observed_order(), 4.0, 0.2);
}

}  // namespace
}  // namespace isinggeo
