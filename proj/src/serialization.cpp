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

#include "isinggeo/serialization.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace isinggeo {

namespace {

constexpr int kSequenceFormatVersion = 1;

Json vec_json(const Vec3& v) { return Json::array({v(0), v(1), v(2)}); }

Json spins_json(const std::vector<int>& spins) { return Json(spins); }

std::vector<int> spins_from(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<int>>();
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

Json pulse_to_json(const ControlPulse& pulse) {
  Json samples = Json::array();
  const auto t = pulse.times();
  const auto u = pulse.values();
  for (std::size_t i = 0; i < pulse.size(); ++i) samples.push_back({{"t", t[i]}, {"u", u[i]}});
  return {{"units", {{"t", kTimeUnit}, {"u", kRateUnit}}},
          {"duration", pulse.duration()},
          {"samples", std::move(samples)}};
}

ControlPulse pulse_from_json(const Json& j) {
  const Json& samples = j.is_array() ? j : j.at("samples");
  std::vector<double> t, u;
  for (const auto& s : samples) {
    if (s.is_array()) {
      t.push_back(s.at(0).get<double>());
      u.push_back(s.at(1).get<double>());
    } else {
      t.push_back(s.at("t").get<double>());
      u.push_back(s.at("u").get<double>());
    }
  }
  return ControlPulse(std::move(t), std::move(u));
}

Json solution_to_json(const GeodesicSolution& s, const ChainSpec& chain) {
  return {{"step", to_string(s.step)},
          {"problem",
           {{"start_r", vec_json(s.problem.start)},
            {"target_r", vec_json(s.problem.target)},
            {"theta0_rad", s.problem.theta0}}},
          {"J_hz", chain.j_hz()},
          {"f", s.f},
          {"f_units", kRateUnit},
          {"f_hz", s.f * std::numbers::pi * chain.j_hz()},
          {"tau", s.tau},
          {"tau_units", kTimeUnit},
          {"tau_seconds", chain.seconds(s.tau)},
          {"miss", s.miss},
          {"theta_start_rad", s.theta_start},
          {"theta_end_rad", s.theta_end},
          {"pulse", pulse_to_json(s.pulse)}};
}

Json sequence_to_json(const PulseSequence& seq) {
  Json elements = Json::array();
  for (const auto& e : seq.elements()) {
    if (const auto* h = std::get_if<HardPulse>(&e)) {
      elements.push_back({{"type", "hard"},
                          {"spins", spins_json(h->spins)},
                          {"axis", to_string(h->axis)},
                          {"angle_rad", h->angle},
                          {"duration", 0.0}});
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      elements.push_back({{"type", "delay"}, {"duration", d->duration}, {"decoupled", spins_json(d->decoupled)}});
    } else if (const auto* s = std::get_if<ShapedInterval>(&e)) {
      Json samples = Json::array();
      const auto t = s->pulse.times();
      const auto u = s->pulse.values();
      for (std::size_t i = 0; i < s->pulse.size(); ++i) samples.push_back(Json::array({t[i], u[i]}));
      elements.push_back({{"type", "shaped"},
                          {"duration", s->pulse.duration()},
                          {"axis", "y"},
                          {"driven", spins_json(s->driven)},
                          {"decoupled", spins_json(s->decoupled)},
                          {"samples", std::move(samples)}});
    }
  }
  Json transfers = Json::array();
  for (const auto& t : seq.transfers()) {
    transfers.push_back({{"label", t.label}, {"initial", t.initial.to_string()}, {"target", t.target.to_string()}});
  }
  return {{"format", "isinggeo-sequence"},
          {"version", kSequenceFormatVersion},
          {"name", seq.name()},
          {"chain", {{"n", seq.chain().n()}, {"J_hz", seq.chain().j_hz()}}},
          {"units", {{"time", kTimeUnit}, {"angle", "rad"}, {"u", kRateUnit}}},
          {"duration", seq.duration()},
          {"duration_seconds", seq.chain().seconds(seq.duration())},
          {"elements", std::move(elements)},
          {"transfers", std::move(transfers)}};
}

PulseSequence sequence_from_json(const Json& j) {
  if (j.value("format", std::string()) != "isinggeo-sequence") throw ParseError("not a sequence document");
  if (j.value("version", 0) != kSequenceFormatVersion) throw ParseError("unsupported sequence version");
  const Json& chain = j.at("chain");
  PulseSequence seq(ChainSpec(chain.at("n").get<int>(), chain.value("J_hz", 1.0)), j.value("name", std::string()));
  for (const auto& e : j.at("elements")) {
    const std::string type = e.at("type").get<std::string>();
    if (type == "hard") {
      seq.hard(spins_from(e, "spins"), parse_rotation_axis(e.at("axis").get<std::string>()),
               e.at("angle_rad").get<double>());
    } else if (type == "delay") {
      seq.delay(e.at("duration").get<double>(), spins_from(e, "decoupled"));
    } else if (type == "shaped") {
      if (e.value("axis", std::string("y")) != "y") throw ParseError("shaped intervals drive the y axis only");
      seq.shaped(pulse_from_json(e.at("samples")), spins_from(e, "driven"), spins_from(e, "decoupled"));
    } else {
      throw ParseError("unknown element type '" + type + "'");
    }
  }
  if (j.contains("transfers")) {
    for (const auto& t : j.at("transfers")) {
      seq.add_transfer(t.value("label", std::string()), OperatorSum::parse(t.at("initial").get<std::string>()),
                       OperatorSum::parse(t.at("target").get<std::string>()));
    }
  }
  return seq;
}

Json result_to_json(const PulseSequence& seq, const SimulationResult& result,
                    const std::vector<TransferOutcome>& outcomes) {
  Json tr = Json::array();
  for (const auto& o : outcomes) {
    tr.push_back({{"label", o.label}, {"initial", o.initial}, {"target", o.target}, {"fidelity", o.fidelity}});
  }
  Json out = {{"sequence", seq.name()},
              {"chain", {{"n", seq.chain().n()}, {"J_hz", seq.chain().j_hz()}}},
              {"duration", result.duration},
              {"duration_units", kTimeUnit},
              {"duration_seconds", seq.chain().seconds(result.duration)},
              {"norm_drift", result.norm_drift},
              {"transfers", std::move(tr)}};
  if (result.final_operator) out["final_operator"] = result.final_operator->to_string();
  return out;
}

Json comparison_to_json(const ComparisonReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"family", r.family},
                    {"method", r.method},
                    {"duration", r.duration},
                    {"duration_seconds", r.duration_seconds},
                    {"fidelity", optional_number(r.fidelity)}});
  }
  return {{"n", rep.n},
          {"J_hz", rep.j_hz},
          {"units", {{"time", kTimeUnit}, {"seconds", "s"}}},
          {"tau1", rep.tau1},
          {"tau2", rep.tau2},
          {"step_ratio", rep.step_ratio},
          {"geodesic_total", std::isnan(rep.geodesic_total) ? Json(nullptr) : Json(rep.geodesic_total)},
          {"approximate_total", rep.approximate_total},
          {"conventional_total", rep.conventional_total},
          {"rows", std::move(rows)}};
}

Json comparisons_to_json(const std::vector<ComparisonReport>& reps) {
  Json all = Json::array();
  for (const auto& r : reps) all.push_back(comparison_to_json(r));
  return {{"comparisons", std::move(all)}};
}

std::string pulse_csv(const ControlPulse& pulse) {
  std::ostringstream os;
  os << "t[1/(pi J)],u[pi J]\n";
  const auto t = pulse.times();
  const auto u = pulse.values();
  for (std::size_t i = 0; i < pulse.size(); ++i) os << format_number(t[i]) << ',' << format_number(u[i]) << '\n';
  return os.str();
}

std::string profile_csv(const std::vector<ProfileSample>& profile, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "t[1/(pi J)]";
  for (const auto& l : labels) os << ",<" << l << ">";
  os << '\n';
  for (const auto& s : profile) {
    os << format_number(s.time);
    for (double v : s.values) os << ',' << format_number(v);
    os << '\n';
  }
  return os.str();
}

std::string comparison_csv(const std::vector<ComparisonReport>& reps) {
  std::ostringstream os;
  os << "n,family,method,duration[1/(pi J)],duration[s],fidelity,step_ratio,geodesic_total[1/(pi J)],"
        "approximate_total[1/(pi J)]\n";
  for (const auto& rep : reps) {
    for (const auto& r : rep.rows) {
      os << rep.n << ',' << r.family << ',' << r.method << ',' << format_number(r.duration) << ','
         << format_number(r.duration_seconds) << ',' << (r.fidelity ? format_number(*r.fidelity) : "") << ','
         << format_number(rep.step_ratio) << ','
         << (std::isnan(rep.geodesic_total) ? std::string() : format_number(rep.geodesic_total)) << ','
         << format_number(rep.approximate_total) << '\n';
    }
  }
  return os.str();
}

std::string comparison_table(const std::vector<ComparisonReport>& reps) {
  std::ostringstream os;
  os << std::left << std::setw(4) << "n" << std::setw(11) << "family" << std::setw(22) << "method" << std::right
     << std::setw(18) << "T [1/(pi J)]" << std::setw(14) << "T [s]" << std::setw(14) << "fidelity" << '\n';
  for (const auto& rep : reps) {
    for (const auto& r : rep.rows) {
      os << std::left << std::setw(4) << rep.n << std::setw(11) << r.family << std::setw(22) << r.method
         << std::right << std::fixed << std::setprecision(6) << std::setw(18) << r.duration << std::setw(14)
         << r.duration_seconds << std::setw(14);
      if (r.fidelity) {
        os << *r.fidelity;
      } else {
        os << "-";
      }
      os << '\n';
    }
    os << std::defaultfloat << "     step ratio tau2/(pi/2) = " << std::setprecision(6) << rep.step_ratio;
    if (!std::isnan(rep.geodesic_total)) {
      os << ", geodesic total = " << rep.geodesic_total << " [1/(pi J)]";
    }
    os << ", pi(n-1)(sqrt2-1) = " << rep.approximate_total << " [1/(pi J)]\n";
  }
  return os.str();
}

}  // namespace isinggeo
