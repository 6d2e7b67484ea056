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

// Expectation-value dynamics of the cascade coordinates. Every time in this
// header is in units of 1/(pi J) and every control amplitude in units of pi J.

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace isinggeo {

using Vec = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

inline constexpr double kDefaultDt = 1e-4;

/// Sampled control amplitude u(t), piecewise-linear between samples and held
/// constant outside [0, duration].
class ControlPulse {
 public:
  ControlPulse() = default;
  ControlPulse(std::vector<double> times, std::vector<double> values);

  static ControlPulse constant(double u, double duration, std::size_t samples = 2);

  double duration() const { return times_.empty() ? 0.0 : times_.back(); }
  std::size_t size() const { return times_.size(); }
  std::span<const double> times() const { return times_; }
  std::span<const double> values() const { return values_; }

  double at(double t) const;
  /// u'(t) = u(duration - t).
  ControlPulse reversed() const;
  ControlPulse scaled(double factor) const;
  /// Uniform resampling onto `samples` points spanning [0, duration].
  ControlPulse resampled(std::size_t samples) const;

  double min_value() const;
  double max_value() const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

/// Cartesian coordinates (x1..x4) of a single transfer block in polar form.
struct RState {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double theta = 0.0;
  /// Set when r2 vanishes and theta was taken from the supplied branch value.
  bool theta_indeterminate = false;

  Vec3 r() const { return {r1, r2, r3}; }
};

inline constexpr double kPolarSingularRadius = 1e-12;

/// Generator of the full cascade (dimension 2n-2). controls[k-1] = u_k drives
/// spin k+1 and couples x_2k with x_(2k+1).
Vec chain_rhs(const Vec& x, std::span<const double> controls);
/// Dense generator matrix of chain_rhs.
Eigen::MatrixXd chain_generator(int n, std::span<const double> controls);

/// Single transfer block:
///   x1' = -x2, x2' = x1 - u x3, x3' = u x2 - x4, x4' = x3.
Vec4 step4_rhs(const Vec4& x, double u);

/// theta = atan2(x3, x2). At r2 < kPolarSingularRadius, theta is the supplied
/// branch value (one-sided limit) and the state is flagged.
RState to_polar(const Vec4& x, double theta_branch = 0.0);
Vec4 from_polar(const RState& r);

/// r1' = -cos(theta) r2, r2' = cos(theta) r1 - sin(theta) r3, r3' = sin(theta) r2.
Vec3 r_rhs(const Vec3& r, double theta);

/// Control that realizes the polar trajectory:
///   u = theta' + (x1 x3 + x2 x4) / r2^2 = theta' + (r1 sin(theta) + r3 cos(theta)) / r2.
double control_from_polar(const Vec3& r, double theta, double theta_rate);

/// (r3' r1 - r1' r3) / r2^2, conserved along metric geodesics.
double conserved_quantity(const Vec3& r, double theta);
/// sqrt((r1'^2 + r3'^2) / r2^2).
double lagrangian(const Vec3& r, double theta);

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  double norm_drift = 0.0;  // max |(|x(t)| - |x(0)|)|

  const Vec& final_state() const { return states.back(); }
};

using Rhs = std::function<Vec(double, const Vec&)>;

/// Classical RK4 on a uniform grid. The step is shrunk so that the last step
/// lands on `duration`. Records every `record_every`-th state plus the last.
Trajectory integrate(const Rhs& rhs, const Vec& x0, double duration, double dt = kDefaultDt,
                     std::size_t record_every = 1);

/// One RK4 step of size h.
Vec rk4_step(const Rhs& rhs, double t, const Vec& x, double h);

/// Block dynamics driven by a sampled pulse.
Trajectory integrate_step4(const ControlPulse& pulse, const Vec4& x0, double dt = kDefaultDt,
                           std::size_t record_every = 1);
/// Full cascade with time-dependent controls u_1(t)..u_(n-2)(t).
Trajectory integrate_chain(int n, const std::function<std::vector<double>(double)>& controls, const Vec& x0,
                           double duration, double dt = kDefaultDt, std::size_t record_every = 1);
/// Polar dynamics under theta(t) = theta0 + rate * t. States are (r1, r2, r3).
Trajectory integrate_polar(const Vec3& r0, double theta0, double rate, double duration, double dt = kDefaultDt,
                           std::size_t record_every = 1);

/// Samples u(t) along a polar trajectory under theta(t) = theta0 + rate * t.
/// Where r2 vanishes at an endpoint, samples within `boundary_layer` of it are
/// replaced by the nearest regular value (one-sided limit).
ControlPulse u_from_theta(const Trajectory& polar, double theta0, double rate, double boundary_layer);

}  // namespace isinggeo
