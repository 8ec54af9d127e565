// Copyright 2026 The gpishoulder Authors
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

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace gpis {

/// Desired joint motion at one instant.
struct RefSample {
  double theta_d = 0.0;       // rad
  double theta_dot_d = 0.0;   // rad/s
  double theta_ddot_d = 0.0;  // rad/s^2
  double t = 0.0;             // s
};

struct JointLimits {
  double theta_min = 0.0;
  double theta_max = 0.0;

  void validate() const;

  /// Abduction/adduction joint: 10 to 80 degrees.
  static constexpr JointLimits s1() { return {0.1745, 1.396}; }
  /// Flexion/extension joint: 10 to 32 degrees.
  static constexpr JointLimits s2() { return {0.1745, 0.5585}; }
};

/// theta_d(t) = sum a[i] t^i for 0 <= t <= duration.
struct QuinticCoeffs {
  std::array<double, 6> a{};
  double duration = 0.0;
};

/// Rest-to-rest quintic: position/velocity/acceleration (theta0,0,0) at 0 and (thetaf,0,0) at T.
QuinticCoeffs quintic_fit(double theta0, double thetaf, double T);

/// Evaluates position and the two analytic derivatives; holds the endpoint samples outside [0, T].
RefSample quintic_eval(const QuinticCoeffs& c, double t);

/// theta_d = (A/2) sin(f n + k) + A/2 with n the controller tick index.
///
/// The frequency is expressed per tick and the phase in radians, so wall-clock
/// derivatives divide by the tick period: theta_dot_d = (A/2) f cos(.) / dt.
struct SineParams {
  double amplitude = 1.0;      // rad
  double freq_per_tick = 0.0;  // rad per tick
  double phase = 0.0;          // rad
};

RefSample sine_ref(const SineParams& p, double tick, double dt);

/// Clamps theta_d into the limits; a clamped sample has zero velocity and acceleration.
RefSample clamp_to_limits(const RefSample& ref, const JointLimits& lim);

struct TeachSample {
  double t = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
};

/// A recorded demonstration, immutable once built by record_teach.
struct TaughtTrajectory {
  std::vector<TeachSample> samples;
  std::string source = "imu-record";
  double duration = 0.0;
};

/// Nominal demonstration window, seconds.
inline constexpr double kTeachWindow = 5.0;

TaughtTrajectory record_teach(std::span<const TeachSample> samples);

/// Resamples onto t0 + k dt and differentiates theta_dot for theta_ddot.
///
/// Position and velocity are linearly interpolated. Acceleration uses central
/// differences inside and one-sided differences at both ends. With `smooth`
/// set, a centered 5-tap moving average is applied to the resampled velocity
/// before differencing (the emitted velocity is left unsmoothed).
std::vector<RefSample> differentiate_teach(const TaughtTrajectory& tt, double dt, bool smooth = false);

/// Linear interpolation into a resampled reference; holds the ends.
RefSample sample_at(std::span<const RefSample> grid, double t);

/// CSV with header `t,theta,theta_dot`.
TaughtTrajectory load_teach_csv(const std::filesystem::path& path);
void save_teach_csv(const TaughtTrajectory& tt, const std::filesystem::path& path);

}  // namespace gpis
