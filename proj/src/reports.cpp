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

#include "isinggeo/reports.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "isinggeo/chain_simulator.hpp"
#include "isinggeo/sequence_builder.hpp"

namespace isinggeo {

namespace {

constexpr double kPi = std::numbers::pi;

Check bounded(std::string name, double value, double tolerance, std::string detail = {}) {
  return {std::move(name), std::isfinite(value) && value <= tolerance, value, tolerance, std::move(detail)};
}

Check at_least(std::string name, double value, double bound, std::string detail = {}) {
  Check c{std::move(name), std::isfinite(value) && value >= bound, value, bound, std::move(detail)};
  return c;
}

Vec4 exact_block(double u, double t, const Vec4& x0) {
  Eigen::Matrix4d a;
  for (int j = 0; j < 4; ++j) a.col(j) = step4_rhs(Vec4::Unit(j), u);
  const Eigen::Matrix4cd h = Complex(0.0, 1.0) * a.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  Eigen::Vector4cd ph;
  for (int j = 0; j < 4; ++j) ph(j) = std::polar(1.0, -es.eigenvalues()(j) * t);
  const Eigen::Matrix4cd e = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  return (e * x0.cast<Complex>()).real();
}

Vec interpolate(const Trajectory& traj, double t) {
  const auto it = std::lower_bound(traj.times.begin(), traj.times.end(), t);
  if (it == traj.times.begin()) return traj.states.front();
  if (it == traj.times.end()) return traj.states.back();
  const auto hi = static_cast<std::size_t>(it - traj.times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - traj.times[lo]) / (traj.times[hi] - traj.times[lo]);
  return (1.0 - w) * traj.states[lo] + w * traj.states[hi];
}

// Integrates the block dynamics under the solution's pulse from the Cartesian
// form of its start and compares (x1, |(x2, x3)|, x4) with the polar curve.
double polar_cartesian_gap(const GeodesicSolution& s) {
  RState p;
  p.r1 = s.problem.start(0);
  p.r2 = s.problem.start(1);
  p.r3 = s.problem.start(2);
  p.theta = s.theta_start;
  const Trajectory cart = integrate_step4(s.pulse, from_polar(p), s.trajectory.times.size() > 1
                                                                      ? s.trajectory.times[1]
                                                                      : kDefaultDt);
  double gap = 0.0;
  for (std::size_t i = 0; i < cart.times.size(); ++i) {
    const Vec x = cart.states[i];
    const Vec r = interpolate(s.trajectory, cart.times[i]);
    gap = std::max({gap, std::abs(x(0) - r(0)), std::abs(std::hypot(x(1), x(2)) - r(1)), std::abs(x(3) - r(2))});
  }
  return gap;
}

}  // namespace

double basis_gram_deviation(int n_max) {
  double worst = 0.0;
  for (int n = 2; n <= n_max; ++n) {
    const ChainSpec chain(n);
    const auto basis = order_basis(n);
    std::vector<Matrix> mats;
    for (const auto& b : basis) mats.push_back(matrix_of(b, chain));
    for (std::size_t i = 0; i < mats.size(); ++i) {
      for (std::size_t j = 0; j < mats.size(); ++j) {
        const double g = inner_product(mats[i], mats[j], n);
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    }
  }
  return worst;
}

double block_model_gap(const GeodesicSolution& solution, int n, int spin, double report_dt) {
  const ChainSpec chain(n);
  const auto basis = order_basis(n);
  // Block coordinates x_(2k-1) .. x_(2k+2) for the control on spin k + 1.
  const int k = spin - 1;
  if (k < 1 || 2 * k + 2 > 2 * n - 2) throw std::invalid_argument("block does not fit on the chain");
  std::vector<OperatorSum> coords(basis.begin() + (2 * k - 2), basis.begin() + (2 * k + 2));
  const Vec4 start = block_start(solution.step);
  OperatorSum initial;
  for (int i = 0; i < 4; ++i) {
    if (start(i) != 0.0) initial += coords[static_cast<std::size_t>(i)] * Complex(start(i));
  }
  PulseSequence seq(chain, "block");
  seq.shaped(solution.pulse, {spin});
  SimulationOptions opt;
  opt.report_dt = report_dt;
  opt.basis = coords;
  const SimulationResult full = propagate(seq, initial, opt);
  const Trajectory reduced = integrate_step4(solution.pulse, start);
  double gap = 0.0;
  for (const auto& s : full.profile) {
    const Vec x = interpolate(reduced, s.time);
    for (int i = 0; i < 4; ++i) gap = std::max(gap, std::abs(s.values[static_cast<std::size_t>(i)] - x(i)));
  }
  return gap;
}

double along_solution_spread(const GeodesicSolution& solution, const std::string& which, double margin) {
  const auto& tr = solution.trajectory;
  const double tau = solution.tau;
  auto quantity = [&](std::size_t i) {
    const Vec3 r(tr.states[i]);
    const double th = solution.theta_at(tr.times[i]);
    return which == "fhat" ? conserved_quantity(r, th) : lagrangian(r, th);
  };
  double ref = solution.f;
  if (which != "fhat") {
    const auto mid = static_cast<std::size_t>(
        std::lower_bound(tr.times.begin(), tr.times.end(), tau / 2) - tr.times.begin());
    ref = quantity(std::min(mid, tr.times.size() - 1));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    if (tr.times[i] < margin || tr.times[i] > tau - margin) continue;
    worst = std::max(worst, std::abs(quantity(i) - ref));
  }
  return worst;
}

double rk4_observed_order(double u, double duration) {
  const Vec4 x0(1, 0, 0, 0);
  const Vec4 exact = exact_block(u, duration, x0);
  const auto pulse = ControlPulse::constant(u, duration);
  const double e1 = (Vec4(integrate_step4(pulse, x0, 0.02).final_state()) - exact).norm();
  const double e2 = (Vec4(integrate_step4(pulse, x0, 0.01).final_state()) - exact).norm();
  return std::log2(e1 / e2);
}

std::vector<Check> run_invariant_suite(const GeodesicSet& set) {
  std::vector<Check> out;
  const std::vector<const GeodesicSolution*> steps = {&set.first, &set.intermediate, &set.last};

  out.push_back(bounded("operator basis Gram = identity (n <= 8)", basis_gram_deviation(8), 1e-12));

  {
    const int n = 6;
    Vec x0 = Vec::Zero(2 * n - 2);
    x0(0) = 1.0;
    const auto controls = [](double t) {
      std::vector<double> u(4);
      for (std::size_t k = 0; k < u.size(); ++k) u[k] = 1.5 * std::sin(t + static_cast<double>(k));
      return u;
    };
    double drift = integrate_chain(n, controls, x0, 5.0).norm_drift;
    for (const auto* s : steps) drift = std::max(drift, integrate_step4(s->pulse, block_start(s->step)).norm_drift);
    out.push_back(bounded("cascade ODE norm conservation", drift, 1e-8));
  }

  out.push_back(at_least("RK4 observed order", rk4_observed_order(), 3.8, "expected 4"));

  {
    double gap = 0.0;
    for (const auto* s : steps) {
      gap = std::max(gap, polar_cartesian_gap(*s));
    }
    out.push_back(bounded("polar / Cartesian trajectory agreement", gap, 1e-6));
  }

  for (const auto* s : steps) {
    out.push_back(bounded("Lagrangian constant along " + to_string(s->step), along_solution_spread(*s, "lagrangian"),
                          1e-4));
  }
  for (const auto* s : steps) {
    out.push_back(bounded("conserved fhat = f along " + to_string(s->step), along_solution_spread(*s, "fhat"), 1e-4,
                          "f = " + format_number(s->f)));
  }

  {
    GeodesicSolution a = solve_step(GeodesicStep::first, std::pair{0.12, 0.95});
    GeodesicSolution b = solve_step(GeodesicStep::intermediate, std::pair{0.85, 1.9});
    const double d = std::max({std::abs(a.f - set.first.f), std::abs(a.tau - set.first.tau),
                               std::abs(b.f - set.intermediate.f), std::abs(b.tau - set.intermediate.tau)});
    out.push_back(bounded("solver determinism under bracket perturbation", d, 1e-6));
  }

  for (const auto* s : steps) {
    const ExportedPulse ex = export_pulse(*s, 2001);
    const double miss = (replay_block(*s, ex.pulse) - block_target(s->step)).norm();
    out.push_back(bounded("exported " + to_string(s->step) + " pulse replay miss", miss, 1e-3));
  }

  {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
      const PulseSequence seq = conventional_cascade(n);
      const SimulationResult r = propagate(seq, seq.transfers().front().initial);
      worst = std::max(worst, 1.0 - fidelity(r, seq.transfers().front().target));
    }
    out.push_back(bounded("conventional cascade 1 - fidelity (n = 2..6)", worst, 1e-6));
  }

  {
    double drift = 0.0;
    double sum_gap = 0.0;
    std::vector<PulseSequence> seqs = {conventional_cascade(5), geodesic_order_sequence(5, set), inept_cascade(5),
                                       lambda_transfer(6, set.intermediate), pair_propagation_step(8, 1, set.intermediate)};
    for (const auto& seq : seqs) {
      drift = std::max(drift, propagate(seq, seq.transfers().front().initial).norm_drift);
      double total = 0.0;
      for (const auto& e : seq.elements()) total += duration_of(e);
      sum_gap = std::max(sum_gap, std::abs(total - seq.duration()));
    }
    out.push_back(bounded("propagated operator norm drift", drift, 1e-8));
    out.push_back(bounded("sequence duration = sum of elements", sum_gap, 0.0));
  }

  {
    const double gap = std::max(block_model_gap(set.first, 4, 2), block_model_gap(set.intermediate, 5, 3));
    out.push_back(bounded("full chain vs reduced block model (sup-norm)", gap, 1e-3));
  }

  {
    const PulseSequence step = lambda_propagation_step(6, 1, set.intermediate);
    const auto& t = step.transfers().front();
    SimulationOptions fine;
    fine.slice_refinement = 2;
    const double f1 = fidelity(propagate(step, t.initial), t.target);
    const double f2 = fidelity(propagate(step, t.initial, fine), t.target);
    out.push_back(bounded("slice refinement fidelity change", std::abs(f1 - f2), 1e-6));
  }

  {
    const double amplitude = 1e3;
    const ChainSpec chain(4);
    PulseSequence ideal(chain), finite(chain);
    ideal.delay(kPi / 2).hard({2}, RotationAxis::py, kPi / 2).delay(kPi / 2);
    finite.delay(kPi / 2).shaped(ControlPulse::constant(amplitude, (kPi / 2) / amplitude), {2}).delay(kPi / 2);
    const OperatorSum init = OperatorSum::spin(1, Axis::x);
    const double f = fidelity(propagate(ideal, init).final, propagate(finite, init).final, 4);
    out.push_back(bounded("hard pulse vs finite amplitude 1e3 (1 - overlap)", 1.0 - f, 1e-3));
  }

  {
    const ChainSpec chain(6);
    std::vector<double> u;
    for (int i = 0; i <= 40; ++i) u.push_back(-4.0 + 0.2 * i);
    out.push_back(bounded("[H_a, H_b] = 0 (k = 1, n = 6)", verify_commuting_split(1, chain, u), 1e-14));
    const double perturbed = verify_commuting_split(1, chain, u, true);
    out.push_back(at_least("perturbed split does not commute", perturbed, 1e-3));
  }

  {
    const PulseSequence geo = geodesic_order_sequence(5, set);
    const PulseSequence back = inverted(geo);
    const auto& t = back.transfers().front();
    const double f = fidelity(propagate(back, t.initial), t.target);
    out.push_back(at_least("time-reversed geodesic sequence fidelity", f, 0.999));
  }

  {
    const PulseSequence seq = lambda_transfer(6, set.intermediate);
    const PulseSequence again = sequence_from_json(Json::parse(sequence_to_json(seq).dump()));
    const bool same = sequence_to_json(again).dump() == sequence_to_json(seq).dump();
    out.push_back({"sequence JSON round trip", same, same ? 0.0 : 1.0, 0.0, {}});
  }
  return out;
}

Json checks_to_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"bound", c.tolerance},
                   {"detail", c.detail}});
  }
  return {{"all_passed", all}, {"checks", std::move(arr)}};
}

std::string checks_table(const std::vector<Check>& checks) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    if (!c.passed) ++failed;
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << std::setprecision(6) << c.value << " (bound "
       << c.tolerance << ")";
    if (!c.detail.empty()) os << " " << c.detail;
    os << '\n';
  }
  os << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  return os.str();
}

}  // namespace isinggeo
