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

#include "gpishoulder/plant.hpp"

#include <cmath>
#include <string>

#include "gpishoulder/error.hpp"

namespace gpis {

void SecondOrderTf::validate() const {
  if (!std::isfinite(gamma0) || !std::isfinite(gamma1) || !std::isfinite(gamma2))
    fail(Errc::non_finite, "plant coefficients must be finite");
  if (gamma0 <= 0.0) fail(Errc::invalid_argument, "plant gamma0 must be positive");
  if (gamma1 < 0.0) fail(Errc::invalid_argument, "plant gamma1 must be non-negative");
  if (gamma2 <= 0.0) fail(Errc::invalid_argument, "plant gamma2 must be positive");
}

StateSpace to_state_space(const SecondOrderTf& tf) {
  StateSpace ss;
  ss.A << 0.0, 1.0, -tf.gamma2, -tf.gamma1;
  ss.B << 0.0, tf.gamma0;
  ss.C << 1.0, 0.0;
  return ss;
}

namespace {

struct Deriv {
  double dtheta;
  double dtheta_dot;
};

Deriv rhs(const SecondOrderTf& tf, double theta, double theta_dot, double input) {
  return {theta_dot, -tf.gamma1 * theta_dot - tf.gamma2 * theta + tf.gamma0 * input};
}

}  // namespace

PlantState step(const PlantState& s, const SecondOrderTf& tf, double u, double rho, double dt) {
  if (!std::isfinite(s.theta) || !std::isfinite(s.theta_dot) || !std::isfinite(s.t))
    fail(Errc::non_finite, "plant state is not finite");
  if (!std::isfinite(u) || !std::isfinite(rho)) fail(Errc::non_finite, "plant input is not finite");
  if (!(dt > 0.0)) fail(Errc::invalid_argument, "plant step requires dt > 0");

  const double in = u + rho;
  const Deriv k1 = rhs(tf, s.theta, s.theta_dot, in);
  const Deriv k2 = rhs(tf, s.theta + 0.5 * dt * k1.dtheta, s.theta_dot + 0.5 * dt * k1.dtheta_dot, in);
  const Deriv k3 = rhs(tf, s.theta + 0.5 * dt * k2.dtheta, s.theta_dot + 0.5 * dt * k2.dtheta_dot, in);
  const Deriv k4 = rhs(tf, s.theta + dt * k3.dtheta, s.theta_dot + dt * k3.dtheta_dot, in);

  PlantState next;
  next.theta = s.theta + dt / 6.0 * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta);
  next.theta_dot =
      s.theta_dot + dt / 6.0 * (k1.dtheta_dot + 2.0 * k2.dtheta_dot + 2.0 * k3.dtheta_dot + k4.dtheta_dot);
  next.t = s.t + dt;
  return next;
}

double dc_gain(const SecondOrderTf& tf) {
  if (tf.gamma2 == 0.0) fail(Errc::marginal_plant, "marginal plant: gamma2 is zero, DC gain undefined");
  return tf.gamma0 / tf.gamma2;
}

std::array<std::complex<double>, 2> poles(const SecondOrderTf& tf) {
  const double b = tf.gamma1;
  const double c = tf.gamma2;
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) {
    const double re = -0.5 * b;
    const double im = 0.5 * std::sqrt(-disc);
    return {std::complex<double>(re, -im), std::complex<double>(re, im)};
  }
  // Citardauq form for the small root keeps precision when b^2 >> c.
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double r1 = q;
  double r2 = q != 0.0 ? c / q : 0.0;
  if (r1 > r2) std::swap(r1, r2);
  return {std::complex<double>(r1, 0.0), std::complex<double>(r2, 0.0)};
}

}  // namespace gpis
