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

#include "gpishoulder/kinematics.hpp"

#include <cmath>
#include <numbers>

#include "gpishoulder/error.hpp"

namespace gpis {

void ArmLength::validate() const {
  if (!std::isfinite(l_a) || l_a <= 0.0) fail(Errc::invalid_argument, "arm length must be positive");
}

Eigen::Matrix4d dh_matrix(const DhRow& row) {
  const double ct = std::cos(row.theta), st = std::sin(row.theta);
  const double ca = std::cos(row.alpha), sa = std::sin(row.alpha);
  Eigen::Matrix4d m;
  m << ct, -st * ca, st * sa, row.r * ct,
       st, ct * ca, -ct * sa, row.r * st,
       0.0, sa, ca, row.d,
       0.0, 0.0, 0.0, 1.0;
  return m;
}

std::array<DhRow, 2> shoulder_dh_rows(const ShoulderAngles& q, const ArmLength& arm) {
  return {DhRow{q.theta_s1, 0.0, 0.0, -std::numbers::pi / 2}, DhRow{q.theta_s2, 0.0, arm.l_a, 0.0}};
}

Eigen::Matrix4d shoulder_transform(const ShoulderAngles& q, const ArmLength& arm) {
  const auto rows = shoulder_dh_rows(q, arm);
  return dh_matrix(rows[0]) * dh_matrix(rows[1]);
}

WristPosition forward(const ShoulderAngles& q, const ArmLength& arm) {
  arm.validate();
  const double c1 = std::cos(q.theta_s1), s1 = std::sin(q.theta_s1);
  const double c2 = std::cos(q.theta_s2), s2 = std::sin(q.theta_s2);
  return {arm.l_a * c1 * c2, arm.l_a * c2 * s1, -arm.l_a * s2};
}

ShoulderAngles inverse(const WristPosition& p, const ArmLength& arm) {
  arm.validate();
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
    fail(Errc::non_finite, "wrist position must be finite");
  if (std::abs(p.z) > arm.l_a) fail(Errc::unreachable, "unreachable: |z| exceeds the arm length");
  if (p.x == 0.0 && p.y == 0.0) fail(Errc::singular, "singular (gimbal) configuration: x = y = 0");
  return {std::atan2(p.y, p.x), std::asin(-p.z / arm.l_a)};
}

bool in_workspace(const ShoulderAngles& q, const JointLimits& s1, const JointLimits& s2) {
  return q.theta_s1 >= s1.theta_min && q.theta_s1 <= s1.theta_max && q.theta_s2 >= s2.theta_min &&
         q.theta_s2 <= s2.theta_max;
}

}  // namespace gpis
