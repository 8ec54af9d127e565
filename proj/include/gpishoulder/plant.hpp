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
#include <complex>

#include <Eigen/Core>

namespace gpis {

/// Continuous plant gamma0 / (s^2 + gamma1 s + gamma2), input in PWM-%, output in rad.
struct SecondOrderTf {
  double gamma0 = 1.0;  // rad/s^2 per PWM-%
  double gamma1 = 0.0;  // 1/s
  double gamma2 = 1.0;  // 1/s^2

  /// Throws Errc::invalid_argument unless gamma0 > 0, gamma1 >= 0, gamma2 > 0.
  void validate() const;
};

/// Identified shoulder abduction/adduction plant (joint s1).
inline constexpr SecondOrderTf kPlantS1{0.0005725, 0.05725, 0.044};
/// Identified shoulder flexion/extension plant (joint s2).
inline constexpr SecondOrderTf kPlantS2{0.0003665, 0.213, 0.04079};

struct PlantState {
  double theta = 0.0;      // rad
  double theta_dot = 0.0;  // rad/s
  double t = 0.0;          // s
};

/// Constant input disturbance rho switched on at `onset`.
struct DisturbanceSpec {
  double magnitude = 0.0;  // PWM-% equivalent
  double onset = 0.0;      // s

  double at(double t) const { return t >= onset ? magnitude : 0.0; }
};

/// Controllable canonical realization: x' = A x + B u, theta = C x.
struct StateSpace {
  Eigen::Matrix2d A;
  Eigen::Vector2d B;
  Eigen::RowVector2d C;
};

StateSpace to_state_space(const SecondOrderTf& tf);

/// One classical RK4 step of theta'' = -g1 theta' - g2 theta + g0 (u + rho) with u, rho held.
PlantState step(const PlantState& state, const SecondOrderTf& tf, double u, double rho, double dt);

/// gamma0 / gamma2; throws Errc::marginal_plant when gamma2 == 0.
double dc_gain(const SecondOrderTf& tf);

/// Roots of s^2 + gamma1 s + gamma2, ordered by ascending imaginary part.
std::array<std::complex<double>, 2> poles(const SecondOrderTf& tf);

}  // namespace gpis
