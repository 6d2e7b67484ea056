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

#include "isinggeo/reduced_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "isinggeo/product_operators.hpp"

namespace isinggeo {

namespace {

// An endpoint counts as singular when r2 is below this after integration.
constexpr double kSingularEndpointRadius = 1e-6;

}  // namespace

ControlPulse::ControlPulse(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size()) throw std::invalid_argument("pulse times and values differ in length");
  if (times_.size() < 2) throw std::invalid_argument("a pulse needs at least two samples");
  if (times_.front() != 0.0) throw std::invalid_argument("pulse samples must start at t = 0");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || !std::isfinite(values_[i])) throw NumericError("non-finite pulse sample");
    if (i > 0 && !(times_[i] > times_[i - 1])) throw std::invalid_argument("pulse times must strictly increase");
  }
}

ControlPulse ControlPulse::constant(double u, double duration, std::size_t samples) {
  if (!(duration > 0.0)) throw std::invalid_argument("pulse duration must be positive");
  samples = std::max<std::size_t>(samples, 2);
  std::vector<double> t(samples), v(samples, u);
  for (std::size_t i = 0; i < samples; ++i) t[i] = duration * static_cast<double>(i) / static_cast<double>(samples - 1);
  t.back() = duration;
  return ControlPulse(std::move(t), std::move(v));
}

double ControlPulse::at(double t) const {
  if (times_.empty()) return 0.0;
  if (t <= times_.front()) return values_.front();
  if (t >= times_.back()) return values_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const auto hi = static_cast<std::size_t>(it - times_.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
  return values_[lo] + w * (values_[hi] - values_[lo]);
}

ControlPulse ControlPulse::reversed() const {
  const double T = duration();
  std::vector<double> t(times_.size()), v(values_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) {
    const std::size_t j = times_.size() - 1 - i;
    t[i] = T - times_[j];
    v[i] = values_[j];
  }
  t.front() = 0.0;
  t.back() = T;
  return ControlPulse(std::move(t), std::move(v));
}

ControlPulse ControlPulse::scaled(double factor) const {
  std::vector<double> v = values_;
  for (auto& x : v) x *= factor;
  return ControlPulse(times_, std::move(v));
}

ControlPulse ControlPulse::resampled(std::size_t samples) const {
  if (samples < 2) throw std::invalid_argument("resampling needs at least two samples");
  const double T = duration();
  std::vector<double> t(samples), v(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    t[i] = T * static_cast<double>(i) / static_cast<double>(samples - 1);
    v[i] = at(t[i]);
  }
  t.back() = T;
  v.back() = values_.back();
  return ControlPulse(std::move(t), std::move(v));
}

double ControlPulse::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double ControlPulse::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

Vec chain_rhs(const Vec& x, std::span<const double> controls) {
  const Eigen::Index d = x.size();
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("cascade state must have even dimension 2n-2");
  if (static_cast<Eigen::Index>(controls.size()) != d / 2 - 1) {
    throw std::invalid_argument("cascade of dimension " + std::to_string(d) + " needs " +
                                std::to_string(d / 2 - 1) + " controls, got " + std::to_string(controls.size()));
  }
  // link(i) couples x_i and x_(i+1) (0-based): 1 for even i, u_((i+1)/2) for odd i.
  auto link = [&](Eigen::Index i) { return i % 2 == 0 ? 1.0 : controls[static_cast<std::size_t>(i / 2)]; };
  Vec dx = Vec::Zero(d);
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    const double c = link(i);
    dx(i) -= c * x(i + 1);
    dx(i + 1) += c * x(i);
  }
  return dx;
}

Eigen::MatrixXd chain_generator(int n, std::span<const double> controls) {
  const Eigen::Index d = 2 * n - 2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    Vec e = Vec::Zero(d);
    e(j) = 1.0;
    a.col(j) = chain_rhs(e, controls);
  }
  return a;
}

Vec4 step4_rhs(const Vec4& x, double u) {
  return {-x(1), x(0) - u * x(2), u * x(1) - x(3), x(2)};
}

RState to_polar(const Vec4& x, double theta_branch) {
  RState r;
  r.r1 = x(0);
  r.r2 = std::hypot(x(1), x(2));
  r.r3 = x(3);
  if (r.r2 < kPolarSingularRadius) {
    r.theta = theta_branch;
    r.theta_indeterminate = true;
  } else {
    r.theta = std::atan2(x(2), x(1));
  }
  return r;
}

Vec4 from_polar(const RState& r) { return {r.r1, r.r2 * std::cos(r.theta), r.r2 * std::sin(r.theta), r.r3}; }

Vec3 r_rhs(const Vec3& r, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {-c * r(1), c * r(0) - s * r(2), s * r(1)};
}

double control_from_polar(const Vec3& r, double theta, double theta_rate) {
  return theta_rate + (r(0) * std::sin(theta) + r(2) * std::cos(theta)) / r(1);
}

double conserved_quantity(const Vec3& r, double theta) {
  const Vec3 dr = r_rhs(r, theta);
  return (dr(2) * r(0) - dr(0) * r(2)) / (r(1) * r(1));
}

double lagrangian(const Vec3& r, double theta) {
  const Vec3 dr = r_rhs(r, theta);
  return std::sqrt((dr(0) * dr(0) + dr(2) * dr(2)) / (r(1) * r(1)));
}

Vec rk4_step(const Rhs& rhs, double t, const Vec& x, double h) {
  const Vec k1 = rhs(t, x);
  const Vec k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
  const Vec k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
  const Vec k4 = rhs(t + h, x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate(const Rhs& rhs, const Vec& x0, double duration, double dt, std::size_t record_every) {
  if (!(dt > 0.0)) throw std::invalid_argument("integration step must be positive");
  if (!(duration >= 0.0)) throw std::invalid_argument("integration duration must be non-negative");
  record_every = std::max<std::size_t>(record_every, 1);
  const auto steps = static_cast<std::size_t>(std::ceil(duration / dt - 1e-9));
  const double h = steps == 0 ? 0.0 : duration / static_cast<double>(steps);
  Trajectory traj;
  traj.times.reserve(steps / record_every + 2);
  traj.states.reserve(steps / record_every + 2);
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  const double n0 = x0.norm();
  Vec x = x0;
  for (std::size_t i = 1; i <= steps; ++i) {
    x = rk4_step(rhs, h * static_cast<double>(i - 1), x, h);
    if (!x.allFinite()) throw NumericError("integration produced a non-finite state");
    traj.norm_drift = std::max(traj.norm_drift, std::abs(x.norm() - n0));
    if (i % record_every == 0 || i == steps) {
      traj.times.push_back(i == steps ? duration : h * static_cast<double>(i));
      traj.states.push_back(x);
    }
  }
  return traj;
}

Trajectory integrate_step4(const ControlPulse& pulse, const Vec4& x0, double dt, std::size_t record_every) {
  const Rhs rhs = [&pulse](double t, const Vec& x) -> Vec { return step4_rhs(Vec4(x), pulse.at(t)); };
  return integrate(rhs, Vec(x0), pulse.duration(), dt, record_every);
}

Trajectory integrate_chain(int n, const std::function<std::vector<double>(double)>& controls, const Vec& x0,
                           double duration, double dt, std::size_t record_every) {
  if (x0.size() != 2 * n - 2) throw std::invalid_argument("cascade state must have dimension 2n-2");
  const Rhs rhs = [&controls](double t, const Vec& x) -> Vec {
    const std::vector<double> u = controls(t);
    return chain_rhs(x, u);
  };
  return integrate(rhs, x0, duration, dt, record_every);
}

Trajectory integrate_polar(const Vec3& r0, double theta0, double rate, double duration, double dt,
                           std::size_t record_every) {
  const Rhs rhs = [theta0, rate](double t, const Vec& r) -> Vec { return r_rhs(Vec3(r), theta0 + rate * t); };
  return integrate(rhs, Vec(r0), duration, dt, record_every);
}

ControlPulse u_from_theta(const Trajectory& polar, double theta0, double rate, double boundary_layer) {
  const std::size_t m = polar.times.size();
  if (m < 2) throw std::invalid_argument("trajectory too short to extract a pulse");
  const double T = polar.times.back();
  const bool singular_start = polar.states.front()(1) < kSingularEndpointRadius;
  const bool singular_end = polar.states.back()(1) < kSingularEndpointRadius;
  std::vector<double> u(m);
  std::vector<bool> regular(m, true);
  for (std::size_t i = 0; i < m; ++i) {
    const double t = polar.times[i];
    const Vec3 r(polar.states[i]);
    if ((singular_start && t < boundary_layer) || (singular_end && t > T - boundary_layer) ||
        r(1) < kSingularEndpointRadius) {
      regular[i] = false;
      continue;
    }
    u[i] = control_from_polar(r, theta0 + rate * t, rate);
  }
  const auto first = std::find(regular.begin(), regular.end(), true);
  if (first == regular.end()) throw NumericError("no regular samples to extract a pulse from");
  // Constant extrapolation from the nearest regular sample.
  double last_regular = u[static_cast<std::size_t>(first - regular.begin())];
  for (std::size_t i = 0; i < m; ++i) {
    if (regular[i]) {
      last_regular = u[i];
    } else {
      u[i] = last_regular;
    }
  }
  return ControlPulse(polar.times, std::move(u));
}

}  // namespace isinggeo
