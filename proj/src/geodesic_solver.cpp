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

#include "isinggeo/geodesic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isinggeo/product_operators.hpp"

namespace isinggeo {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Vec3 rk4_polar(const Vec3& r, double t, double h, double theta0, double rate) {
  const Vec3 k1 = r_rhs(r, theta0 + rate * t);
  const Vec3 k2 = r_rhs(r + 0.5 * h * k1, theta0 + rate * (t + 0.5 * h));
  const Vec3 k3 = r_rhs(r + 0.5 * h * k2, theta0 + rate * (t + 0.5 * h));
  const Vec3 k4 = r_rhs(r + h * k3, theta0 + rate * (t + h));
  return r + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Golden-section search for the distance minimum inside [t0, t0 + 2h],
// stepping from the stored state at t0.
Passage refine_passage(const Vec3& r0, double t0, double span, const GeodesicProblem& p, double rate) {
  auto dist = [&](double s) { return (rk4_polar(r0, t0, s, p.theta0, rate) - p.target).norm(); };
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = span;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = dist(c), fd = dist(d);
  for (int it = 0; it < 100 && (b - a) > 1e-15; ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = dist(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = dist(d);
    }
  }
  const double s = 0.5 * (a + b);
  const Vec3 r = rk4_polar(r0, t0, s, p.theta0, rate);
  const double t = t0 + s;
  const Vec3 offset = r - p.target;
  const Vec3 vel = r_rhs(r, p.theta0 + rate * t);
  const double side = offset.dot(p.target.cross(vel));
  Passage out;
  out.time = t;
  out.miss = offset.norm();
  out.signed_miss = side < 0.0 ? -out.miss : out.miss;
  return out;
}

ShotResult shoot_impl(double f, const GeodesicProblem& p, double horizon, double dt, double threshold) {
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt));
  const double h = horizon / static_cast<double>(steps);
  ShotResult result;
  Vec3 prev2 = p.start, prev = p.start;
  double d_prev2 = (p.start - p.target).norm();
  double d_prev = d_prev2;
  Vec3 r = p.start;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t = h * static_cast<double>(i - 1);
    r = rk4_polar(r, t, h, p.theta0, f);
    if (!r.allFinite()) throw NumericError("shooting produced a non-finite state");
    const double d = (r - p.target).norm();
    // prev is sample i-1; it is a local minimum when both neighbours are larger.
    if (i >= 2 && d_prev <= d_prev2 && d_prev < d && d_prev < threshold) {
      const double t_left = h * static_cast<double>(i - 2);
      result.passages.push_back(refine_passage(prev2, t_left, 2.0 * h, p, f));
    }
    prev2 = prev;
    d_prev2 = d_prev;
    prev = r;
    d_prev = d;
  }
  return result;
}

std::optional<Passage> nearest_passage(const ShotResult& shot, double t_guess, double window) {
  std::optional<Passage> best;
  for (const auto& pa : shot.passages) {
    if (std::abs(pa.time - t_guess) > window) continue;
    if (!best || std::abs(pa.time - t_guess) < std::abs(best->time - t_guess)) best = pa;
  }
  return best;
}

bool singular(const Vec3& r) { return r(1) < 1e-6; }

}  // namespace

std::string to_string(GeodesicStep step) {
  switch (step) {
    case GeodesicStep::first: return "first";
    case GeodesicStep::intermediate: return "intermediate";
    case GeodesicStep::last: return "last";
  }
  return "?";
}

GeodesicStep parse_step(const std::string& name) {
  if (name == "first") return GeodesicStep::first;
  if (name == "intermediate") return GeodesicStep::intermediate;
  if (name == "last") return GeodesicStep::last;
  throw std::invalid_argument("unknown geodesic step '" + name + "' (expected first, intermediate or last)");
}

GeodesicProblem GeodesicProblem::for_step(GeodesicStep step) {
  const double s = kInvSqrt2;
  switch (step) {
    case GeodesicStep::first: return {Vec3(1, 0, 0), Vec3(0, s, s), 0.0};
    case GeodesicStep::intermediate: return {Vec3(s, s, 0), Vec3(0, s, s), 0.0};
    case GeodesicStep::last: return {Vec3(s, s, 0), Vec3(0, 0, 1), 0.0};
  }
  throw std::invalid_argument("unknown step");
}

std::pair<double, double> default_bracket(GeodesicStep step) {
  switch (step) {
    case GeodesicStep::first: return {0.1, 1.0};
    case GeodesicStep::intermediate: return {0.8, 2.0};
    case GeodesicStep::last: return {0.1, 1.0};
  }
  return {0.1, 1.0};
}

ShotResult shoot(double f, const GeodesicProblem& problem, const ShootOptions& options) {
  if (!(f >= 0.0)) throw std::invalid_argument("shooting rate f must be non-negative");
  if (!(options.dt > 0.0) || !(options.horizon > 0.0)) throw std::invalid_argument("bad shooting options");
  return shoot_impl(f, problem, options.horizon, options.dt, options.coarse_threshold);
}

GeodesicSolution solve(const GeodesicProblem& problem, std::pair<double, double> f_bracket,
                       const SolverOptions& options) {
  auto [lo, hi] = f_bracket;
  if (!(lo >= 0.0) || !(hi > lo)) {
    throw std::invalid_argument("f bracket must satisfy 0 <= lo < hi");
  }
  const std::size_t m = std::max<std::size_t>(options.scan_points, 3);
  constexpr double kThreshold = 0.25;
  std::vector<double> grid(m);
  std::vector<ShotResult> shots(m);
  for (std::size_t i = 0; i < m; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);
    shots[i] = shoot_impl(grid[i], problem, options.horizon, options.scan_dt, kThreshold);
  }

  struct Candidate {
    double f_lo, f_hi, t_guess;
  };
  std::vector<Candidate> candidates;
  constexpr double kTrackWindow = 0.3;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (const auto& pa : shots[i].passages) {
      const auto pb = nearest_passage(shots[i + 1], pa.time, kTrackWindow);
      if (!pb) continue;
      if ((pa.signed_miss <= 0.0) != (pb->signed_miss <= 0.0)) {
        candidates.push_back({grid[i], grid[i + 1], 0.5 * (pa.time + pb->time)});
      }
    }
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& x, const Candidate& y) { return x.t_guess < y.t_guess; });

  std::optional<GeodesicSolution> best;
  for (const auto& c : candidates) {
    if (best && c.t_guess > best->tau + kTrackWindow) break;
    double a = c.f_lo, b = c.f_hi, t_guess = c.t_guess;
    const double horizon = std::min(options.horizon, t_guess + 1.0);
    auto eval = [&](double f) -> std::optional<Passage> {
      const ShotResult s = shoot_impl(f, problem, horizon, options.dt, kThreshold);
      return nearest_passage(s, t_guess, kTrackWindow);
    };
    auto pa = eval(a);
    if (!pa) continue;
    bool lost = false;
    for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
      const double mid = 0.5 * (a + b);
      const auto pm = eval(mid);
      if (!pm) {
        lost = true;
        break;
      }
      t_guess = pm->time;
      if ((pm->signed_miss <= 0.0) == (pa->signed_miss <= 0.0)) {
        a = mid;
        pa = pm;
      } else {
        b = mid;
      }
    }
    if (lost) continue;
    const double f_root = 0.5 * (a + b);
    const auto pr = eval(f_root);
    if (!pr || pr->miss > options.tolerance) continue;
    if (best && best->tau <= pr->time) continue;
    GeodesicSolution sol;
    sol.problem = problem;
    sol.f = f_root;
    sol.tau = pr->time;
    sol.miss = pr->miss;
    sol.theta_start = problem.theta0;
    sol.theta_end = problem.theta0 + f_root * pr->time;
    best = std::move(sol);
  }
  if (!best) {
    std::ostringstream os;
    os << "no geodesic with miss <= " << options.tolerance << " for f in [" << lo << ", " << hi << "] ("
       << candidates.size() << " sign changes examined)";
    throw NoRootError(os.str());
  }
  best->trajectory = integrate_polar(problem.start, problem.theta0, best->f, best->tau, options.dt);
  best->pulse = u_from_theta(best->trajectory, problem.theta0, best->f, 10.0 * options.dt);
  return *best;
}

GeodesicSolution last_step_by_reversal(const GeodesicSolution& first) {
  GeodesicSolution last;
  last.step = GeodesicStep::last;
  last.f = first.f;
  last.tau = first.tau;
  last.theta_start = std::numbers::pi / 2.0 - first.theta_end;
  last.theta_end = last.theta_start + first.f * first.tau;
  last.problem = GeodesicProblem::for_step(GeodesicStep::last);
  last.problem.theta0 = last.theta_start;

  const auto& src = first.trajectory;
  const std::size_t m = src.times.size();
  last.trajectory.times.resize(m);
  last.trajectory.states.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = m - 1 - i;
    last.trajectory.times[i] = first.tau - src.times[j];
    const Vec& r = src.states[j];
    last.trajectory.states[i] = Vec3(r(2), r(1), r(0));
  }
  last.trajectory.times.front() = 0.0;
  last.trajectory.times.back() = first.tau;
  last.trajectory.norm_drift = src.norm_drift;
  last.pulse = first.pulse.reversed();

  // Independent re-integration of the reversed curve.
  const double dt = first.tau / static_cast<double>(std::max<std::size_t>(m - 1, 1));
  const Trajectory check = integrate_polar(last.problem.start, last.theta_start, last.f, last.tau, dt, m);
  last.miss = (Vec3(check.final_state()) - last.problem.target).norm();
  return last;
}

GeodesicSolution solve_step(GeodesicStep step, std::optional<std::pair<double, double>> f_bracket,
                            const SolverOptions& options) {
  if (step == GeodesicStep::last) {
    GeodesicSolution first = solve_step(GeodesicStep::first, f_bracket, options);
    return last_step_by_reversal(first);
  }
  GeodesicSolution sol =
      solve(GeodesicProblem::for_step(step), f_bracket.value_or(default_bracket(step)), options);
  sol.step = step;
  return sol;
}

GeodesicSet solve_all(const SolverOptions& options) {
  GeodesicSet set;
  set.first = solve_step(GeodesicStep::first, std::nullopt, options);
  set.intermediate = solve_step(GeodesicStep::intermediate, std::nullopt, options);
  set.last = last_step_by_reversal(set.first);
  return set;
}

ExportedPulse export_pulse(const GeodesicSolution& solution, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("pulse export needs at least two samples");
  ExportedPulse out;
  out.pulse = solution.pulse.resampled(samples);
  const auto& states = solution.trajectory.states;
  const bool sing_start = !states.empty() && singular(Vec3(states.front()));
  const bool sing_end = !states.empty() && singular(Vec3(states.back()));
  const double dt = solution.trajectory.times.size() > 1 ? solution.trajectory.times[1] : kDefaultDt;
  const double filled = 10.0 * dt;
  constexpr double kFlatLayer = 1e-3;
  const double T = out.pulse.duration();
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < out.pulse.size(); ++i) {
    const double t = out.pulse.times()[i];
    const double u = out.pulse.values()[i];
    if ((sing_start && t < filled) || (sing_end && t > T - filled)) out.singular_samples.push_back(i);
    if ((sing_start && t < kFlatLayer) || (sing_end && t > T - kFlatLayer)) continue;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  out.near_constant = hi >= lo && (hi - lo) <= 1e-3;
  return out;
}

Vec4 block_start(GeodesicStep step) {
  const double s = kInvSqrt2;
  return step == GeodesicStep::first ? Vec4(1, 0, 0, 0) : Vec4(s, s, 0, 0);
}

Vec4 block_target(GeodesicStep step) {
  const double s = kInvSqrt2;
  return step == GeodesicStep::last ? Vec4(0, 0, 0, 1) : Vec4(0, 0, s, s);
}

namespace {

Vec4 rotate_theta(const Vec4& x, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {x(0), c * x(1) - s * x(2), s * x(1) + c * x(2), x(3)};
}

}  // namespace

Vec4 replay_block(const GeodesicSolution& solution, const ControlPulse& pulse, double dt) {
  // Hard rotations in the (x2, x3) plane bring theta to the curve's start value
  // and, at a regular endpoint, from its end value to the block target's.
  Vec4 x = rotate_theta(block_start(solution.step), solution.theta_start);
  const Trajectory traj = integrate_step4(pulse, x, dt);
  x = Vec4(traj.final_state());
  if (solution.step != GeodesicStep::last) x = rotate_theta(x, std::numbers::pi / 2.0 - solution.theta_end);
  return x;
}

}  // namespace isinggeo
