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

#include <Eigen/Core>

#include "gpishoulder/trajectory.hpp"

namespace gpis {

struct ShoulderAngles {
  double theta_s1 = 0.0;  // abduction/adduction, rad
  double theta_s2 = 0.0;  // flexion/extension, rad
};

/// Wrist position in the shoulder-origin frame, metres.
struct WristPosition {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Combined arm + forearm length. The elbow is held fixed.
struct ArmLength {
  double l_a = 0.14;  // m

  void validate() const;
};

/// One Denavit-Hartenberg row: Rz(theta) Tz(d) Tx(r) Rx(alpha).
struct DhRow {
  double theta = 0.0;
  double d = 0.0;
  double r = 0.0;
  double alpha = 0.0;
};

Eigen::Matrix4d dh_matrix(const DhRow& row);

/// Frame chain for the shoulder: (theta_s1, 0, 0, -pi/2) then (theta_s2, 0, l_a, 0).
std::array<DhRow, 2> shoulder_dh_rows(const ShoulderAngles& q, const ArmLength& arm);

/// Product of the shoulder DH rows, wrist frame expressed in the shoulder frame.
Eigen::Matrix4d shoulder_transform(const ShoulderAngles& q, const ArmLength& arm);

/// x = l c1 c2, y = l c2 s1, z = -l s2.
WristPosition forward(const ShoulderAngles& q, const ArmLength& arm = {});

/// theta_s1 = atan2(y, x), theta_s2 = asin(-z / l).
///
/// Throws Errc::unreachable when |z| > l and Errc::singular when x = y = 0.
ShoulderAngles inverse(const WristPosition& p, const ArmLength& arm = {});

/// Closed-interval check of both joints.
bool in_workspace(const ShoulderAngles& q, const JointLimits& s1 = JointLimits::s1(),
                  const JointLimits& s2 = JointLimits::s2());

}  // namespace gpis
