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

#include "isinggeo/sequence_builder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isinggeo {

namespace {

constexpr double kPi = std::numbers::pi;
// Alignment rotations smaller than this are dropped.
constexpr double kNegligibleAngle = 1e-12;

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> even_spins(int n) {
  std::vector<int> s;
  for (int m = 2; m <= n; m += 2) s.push_back(m);
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

PulseSequence& align(PulseSequence& seq, std::vector<int> spins, double angle) {
  if (std::abs(angle) > kNegligibleAngle) seq.hard(std::move(spins), RotationAxis::py, angle);
  return seq;
}

// Shaped interval realizing one intermediate block on every listed spin.
void append_intermediate(PulseSequence& seq, const GeodesicSolution& s, std::vector<int> driven,
                         std::vector<int> decoupled, std::size_t samples) {
  align(seq, driven, s.theta_start);
  seq.shaped(s.pulse.resampled(samples), driven, std::move(decoupled));
  align(seq, driven, kPi / 2 - s.theta_end);
}

}  // namespace

std::string to_string(RotationAxis axis) {
  switch (axis) {
    case RotationAxis::px: return "x";
    case RotationAxis::mx: return "-x";
    case RotationAxis::py: return "y";
    case RotationAxis::my: return "-y";
    case RotationAxis::pz: return "z";
    case RotationAxis::mz: return "-z";
  }
  return "?";
}

RotationAxis parse_rotation_axis(const std::string& text) {
  if (text == "x" || text == "+x") return RotationAxis::px;
  if (text == "-x") return RotationAxis::mx;
  if (text == "y" || text == "+y") return RotationAxis::py;
  if (text == "-y") return RotationAxis::my;
  if (text == "z" || text == "+z") return RotationAxis::pz;
  if (text == "-z") return RotationAxis::mz;
  throw ParseError("unknown rotation axis '" + text + "'");
}

std::pair<Axis, double> axis_components(RotationAxis axis) {
  switch (axis) {
    case RotationAxis::px: return {Axis::x, 1.0};
    case RotationAxis::mx: return {Axis::x, -1.0};
    case RotationAxis::py: return {Axis::y, 1.0};
    case RotationAxis::my: return {Axis::y, -1.0};
    case RotationAxis::pz: return {Axis::z, 1.0};
    case RotationAxis::mz: return {Axis::z, -1.0};
  }
  return {Axis::x, 1.0};
}

double duration_of(const SequenceElement& e) {
  if (const auto* d = std::get_if<Delay>(&e)) return d->duration;
  if (const auto* s = std::get_if<ShapedInterval>(&e)) return s->pulse.duration();
  return 0.0;
}

PulseSequence::PulseSequence(ChainSpec chain, std::string name) : chain_(chain), name_(std::move(name)) {}

double PulseSequence::duration() const {
  double t = 0.0;
  for (const auto& e : elements_) t += duration_of(e);
  return t;
}

void PulseSequence::check_spins(const std::vector<int>& spins) const {
  for (int s : spins) {
    if (s < 1 || s > chain_.n()) {
      throw std::invalid_argument("spin " + std::to_string(s) + " outside chain of " + std::to_string(chain_.n()));
    }
  }
}

PulseSequence& PulseSequence::hard(std::vector<int> spins, RotationAxis axis, double angle) {
  return append(HardPulse{std::move(spins), axis, angle});
}

PulseSequence& PulseSequence::delay(double duration, std::vector<int> decoupled) {
  return append(Delay{duration, std::move(decoupled)});
}

PulseSequence& PulseSequence::shaped(ControlPulse pulse, std::vector<int> driven, std::vector<int> decoupled) {
  return append(ShapedInterval{std::move(pulse), std::move(driven), std::move(decoupled)});
}

PulseSequence& PulseSequence::append(SequenceElement e) {
  if (auto* h = std::get_if<HardPulse>(&e)) {
    h->spins = sorted_unique(std::move(h->spins));
    require(!h->spins.empty(), "hard pulse without spins");
    require(std::isfinite(h->angle), "non-finite pulse angle");
    check_spins(h->spins);
  } else if (auto* d = std::get_if<Delay>(&e)) {
    require(std::isfinite(d->duration) && d->duration >= 0.0, "delay duration must be non-negative");
    d->decoupled = sorted_unique(std::move(d->decoupled));
    check_spins(d->decoupled);
  } else if (auto* s = std::get_if<ShapedInterval>(&e)) {
    require(s->pulse.size() >= 2, "shaped interval without pulse samples");
    s->driven = sorted_unique(std::move(s->driven));
    s->decoupled = sorted_unique(std::move(s->decoupled));
    require(!s->driven.empty(), "shaped interval without driven spins");
    check_spins(s->driven);
    check_spins(s->decoupled);
  }
  elements_.push_back(std::move(e));
  return *this;
}

PulseSequence& PulseSequence::append(const PulseSequence& other) {
  require(other.chain_.n() == chain_.n(), "cannot append sequences on different chains");
  for (const auto& e : other.elements_) append(e);
  return *this;
}

PulseSequence& PulseSequence::add_transfer(std::string label, OperatorSum initial, OperatorSum target) {
  require(initial.max_site() <= chain_.n() && target.max_site() <= chain_.n(), "transfer operator outside chain");
  transfers_.push_back({std::move(label), std::move(initial), std::move(target)});
  return *this;
}

PulseSequence& PulseSequence::clear_transfers() {
  transfers_.clear();
  return *this;
}

PulseSequence& PulseSequence::rename(std::string name) {
  name_ = std::move(name);
  return *this;
}

PulseSequence PulseSequence::head(std::size_t count) const {
  PulseSequence out(chain_, name_ + "[:" + std::to_string(count) + "]");
  for (std::size_t i = 0; i < std::min(count, elements_.size()); ++i) out.append(elements_[i]);
  return out;
}

PulseSequence inverted(const PulseSequence& seq) {
  const int n = seq.chain().n();
  const std::vector<int> flip = even_spins(n);
  PulseSequence out(seq.chain(), "inverse(" + seq.name() + ")");
  const auto& el = seq.elements();
  for (auto it = el.rbegin(); it != el.rend(); ++it) {
    if (const auto* h = std::get_if<HardPulse>(&*it)) {
      out.hard(h->spins, h->axis, -h->angle);
    } else if (const auto* d = std::get_if<Delay>(&*it)) {
      out.hard(flip, RotationAxis::px, kPi);
      out.delay(d->duration, d->decoupled);
      out.hard(flip, RotationAxis::px, -kPi);
    } else if (const auto* s = std::get_if<ShapedInterval>(&*it)) {
      // Conjugation by the even-spin flip negates the couplings and the drive
      // on odd spins; the drive on even spins keeps its sign.
      const int parity = s->driven.front() % 2;
      for (int m : s->driven) require(m % 2 == parity, "cannot invert a drive on spins of mixed parity");
      const double sign = parity == 0 ? 1.0 : -1.0;
      out.hard(flip, RotationAxis::px, kPi);
      out.shaped(s->pulse.reversed().scaled(sign), s->driven, s->decoupled);
      out.hard(flip, RotationAxis::px, -kPi);
    }
  }
  for (const auto& t : seq.transfers()) out.add_transfer("inverse(" + t.label + ")", t.target, t.initial);
  return out;
}

PulseSequence mirrored(const PulseSequence& seq) {
  const int n = seq.chain().n();
  std::vector<int> map(static_cast<std::size_t>(n) + 1);
  for (int m = 1; m <= n; ++m) map[static_cast<std::size_t>(m)] = n + 1 - m;
  auto remap = [&](const std::vector<int>& v) {
    std::vector<int> r;
    for (int m : v) r.push_back(n + 1 - m);
    return r;
  };
  PulseSequence out(seq.chain(), "mirror(" + seq.name() + ")");
  for (const auto& e : seq.elements()) {
    if (const auto* h = std::get_if<HardPulse>(&e)) {
      out.hard(remap(h->spins), h->axis, h->angle);
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      out.delay(d->duration, remap(d->decoupled));
    } else if (const auto* s = std::get_if<ShapedInterval>(&e)) {
      out.shaped(s->pulse, remap(s->driven), remap(s->decoupled));
    }
  }
  for (const auto& t : seq.transfers()) {
    out.add_transfer("mirror(" + t.label + ")", t.initial.relabeled(map), t.target.relabeled(map));
  }
  return out;
}

PulseSequence conventional_cascade(int n, double j_hz) {
  require(n >= 2, "conventional cascade needs n >= 2");
  PulseSequence seq(ChainSpec(n, j_hz), "conventional");
  seq.delay(kPi / 2);
  for (int s = 2; s <= n - 1; ++s) {
    seq.hard({s}, RotationAxis::py, kPi / 2);
    seq.delay(kPi / 2);
  }
  seq.add_transfer("order", OperatorSum::spin(1, Axis::x), multiple_spin_order_target(n));
  return seq;
}

PulseSequence geodesic_order_sequence(int n, const GeodesicSet& solutions, double j_hz, std::size_t pulse_samples) {
  require(n >= 4, "geodesic order sequence needs n >= 4");
  require(solutions.first.step == GeodesicStep::first && solutions.intermediate.step == GeodesicStep::intermediate &&
              solutions.last.step == GeodesicStep::last,
          "geodesic order sequence needs first, intermediate and last solutions");
  require(solutions.first.pulse.size() >= 2 && solutions.intermediate.pulse.size() >= 2 &&
              solutions.last.pulse.size() >= 2,
          "missing geodesic solution");
  PulseSequence seq(ChainSpec(n, j_hz), "geodesic-order");
  const auto& first = solutions.first;
  align(seq, {2}, first.theta_start);
  seq.shaped(first.pulse.resampled(pulse_samples), {2});
  align(seq, {2}, kPi / 2 - first.theta_end);
  for (int s = 3; s <= n - 2; ++s) append_intermediate(seq, solutions.intermediate, {s}, {}, pulse_samples);
  const auto& last = solutions.last;
  align(seq, {n - 1}, last.theta_start);
  seq.shaped(last.pulse.resampled(pulse_samples), {n - 1});
  seq.add_transfer("order", OperatorSum::spin(1, Axis::x), multiple_spin_order_target(n));
  return seq;
}

PulseSequence inept_step(int n, int k, double j_hz) {
  require(k >= 1 && k + 2 <= n, "INEPT step needs 1 <= k and k + 2 <= n");
  PulseSequence seq(ChainSpec(n, j_hz), "inept-step");
  seq.hard({k, k + 1}, RotationAxis::py, kPi / 2);
  seq.delay(kPi / 2);
  const OperatorSum from = OperatorSum::parse("2*I" + std::to_string(k) + "x*I" + std::to_string(k + 1) + "z");
  const OperatorSum to = OperatorSum::parse("2*I" + std::to_string(k + 1) + "x*I" + std::to_string(k + 2) + "z");
  seq.add_transfer("inept", from, to);
  return seq;
}

PulseSequence inept_cascade(int n, double j_hz) {
  require(n >= 2, "INEPT cascade needs n >= 2");
  PulseSequence seq(ChainSpec(n, j_hz), "inept");
  // I_1x -> 2 I_1y I_2z -> 2 I_1x I_2z.
  seq.delay(kPi / 2);
  seq.hard({1}, RotationAxis::mz, kPi / 2);
  for (int k = 1; k + 2 <= n; ++k) seq.append(inept_step(n, k, j_hz));
  // 2 I_(n-1)x I_nz -> -2 I_(n-1)z I_nx -> -I_ny -> I_nx.
  seq.hard({n - 1, n}, RotationAxis::py, kPi / 2);
  seq.delay(kPi / 2);
  seq.hard({n}, RotationAxis::pz, kPi / 2);
  seq.add_transfer("coherence", OperatorSum::spin(1, Axis::x), OperatorSum::spin(n, Axis::x));
  return seq;
}

PulseSequence lambda_preparation(int n, double j_hz) {
  require(n >= 5, "Lambda preparation needs n >= 5");
  PulseSequence seq(ChainSpec(n, j_hz), "lambda-preparation");
  seq.delay(kPi / 2);
  seq.hard({2}, RotationAxis::py, kPi / 2);
  seq.delay(kPi / 2);
  seq.hard({3}, RotationAxis::py, kPi / 2);
  seq.delay(kPi / 4);
  seq.hard({1}, RotationAxis::px, kPi / 2);
  seq.delay(kPi / 4, {4});
  seq.hard({2}, RotationAxis::py, kPi);
  seq.add_transfer("lambda1", OperatorSum::spin(1, Axis::x), lambda_k(1));
  return seq;
}

PulseSequence lambda_collapse(int n, double j_hz) {
  PulseSequence seq = mirrored(inverted(lambda_preparation(n, j_hz)));
  seq.rename("lambda-collapse").clear_transfers();
  seq.add_transfer("collapse", lambda_k(n - 3), OperatorSum::spin(n, Axis::x));
  return seq;
}

PulseSequence lambda_propagation_step(int n, int k, const GeodesicSolution& intermediate, double j_hz,
                                      std::size_t pulse_samples, bool decouple_outside) {
  require(k >= 1 && k + 4 <= n, "Lambda step needs 1 <= k and k + 4 <= n");
  require(intermediate.step == GeodesicStep::intermediate && intermediate.pulse.size() >= 2,
          "Lambda step needs the intermediate geodesic solution");
  PulseSequence seq(ChainSpec(n, j_hz), "lambda-step");
  std::vector<int> off;
  if (decouple_outside) {
    if (k - 1 >= 1) off.push_back(k - 1);
    if (k + 5 <= n) off.push_back(k + 5);
  }
  append_intermediate(seq, intermediate, {k + 1, k + 3}, off, pulse_samples);
  seq.add_transfer("lambda", lambda_k(k), lambda_k(k + 1));
  return seq;
}

PulseSequence lambda_transfer(int n, const GeodesicSolution& intermediate, double j_hz, std::size_t pulse_samples) {
  PulseSequence seq(ChainSpec(n, j_hz), "lambda-transfer");
  seq.append(lambda_preparation(n, j_hz));
  for (int k = 1; k + 4 <= n; ++k) seq.append(lambda_propagation_step(n, k, intermediate, j_hz, pulse_samples));
  seq.append(lambda_collapse(n, j_hz));
  seq.add_transfer("coherence", OperatorSum::spin(1, Axis::x), OperatorSum::spin(n, Axis::x));
  return seq;
}

PulseSequence pair_encoding(int n, const GeodesicSolution& intermediate, double j_hz, std::size_t pulse_samples) {
  require(n >= 6, "pair encoding needs n >= 6");
  PulseSequence seq(ChainSpec(n, j_hz), "pair-encoding");
  seq.hard({1}, RotationAxis::mx, kPi / 2);
  seq.append(lambda_preparation(n, j_hz));
  seq.append(lambda_propagation_step(n, 1, intermediate, j_hz, pulse_samples));
  seq.append(lambda_propagation_step(n, 2, intermediate, j_hz, pulse_samples));
  seq.hard({1}, RotationAxis::my, kPi / 2);
  seq.delay(kPi / 4, {4, 6});
  seq.hard({2}, RotationAxis::py, kPi);
  seq.add_transfer("pair-x", OperatorSum::spin(1, Axis::x), lambda_k(3));
  seq.add_transfer("pair-y", OperatorSum::spin(1, Axis::y), lambda_k(1));
  return seq;
}

PulseSequence pair_propagation_step(int n, int k, const GeodesicSolution& intermediate, double j_hz,
                                    std::size_t pulse_samples) {
  require(k >= 1 && k + 6 <= n, "pair step needs 1 <= k and k + 6 <= n");
  require(intermediate.step == GeodesicStep::intermediate && intermediate.pulse.size() >= 2,
          "pair step needs the intermediate geodesic solution");
  PulseSequence seq(ChainSpec(n, j_hz), "pair-step");
  append_intermediate(seq, intermediate, {k + 1, k + 3, k + 5}, {}, pulse_samples);
  seq.add_transfer("pair-lower", lambda_k(k), lambda_k(k + 1));
  seq.add_transfer("pair-upper", lambda_k(k + 2), lambda_k(k + 3));
  return seq;
}

double conventional_duration(int n) { return (n - 1) * kPi / 2; }

double geodesic_order_duration(int n, double tau1, double tau2) { return 2 * tau1 + (n - 4) * tau2; }

double inept_duration(int n) { return n * kPi / 2; }

double lambda_transfer_duration(int n, double tau2) { return 3 * kPi + (n - 4) * tau2; }

}  // namespace isinggeo
