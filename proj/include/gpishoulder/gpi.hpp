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
#include <span>
#include <vector>

#include "gpishoulder/plant.hpp"
#include "gpishoulder/trajectory.hpp"

namespace gpis {

/// Pole-placement targets: the closed loop is placed at (s^2 + 2 xi wn s + wn^2)^2.
struct GpiDesign {
  double xi = 0.9;
  double wn = 1.0;  // rad/s

  void validate() const;
};

struct GpiGains {
  double k0 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
};

struct SaturationLimits {
  double u_min = 0.0;    // PWM-%
  double u_max = 100.0;  // PWM-%

  void validate() const;
  double clamp(double u) const { return u < u_min ? u_min : (u > u_max ? u_max : u); }
};

/// Descending-degree coefficients, s^4 first.
using Quartic = std::array<double, 5>;

GpiGains compute_gains(const GpiDesign& design, const SecondOrderTf& tf);
Quartic closed_loop_char_poly(const GpiGains& gains, const SecondOrderTf& tf);
Quartic hurwitz_poly(const GpiDesign& design);

/// Input that holds the unperturbed plant on the reference.
double feedforward(const SecondOrderTf& tf, const RefSample& ref);

/// Trapezoidal accumulator increment: sum + dt (prev + cur) / 2.
inline double trapezoid(double sum, double prev, double cur, double dt) {
  return sum + 0.5 * dt * (prev + cur);
}

/// Running state of one joint's control loop.
///
/// A default-constructed state latches `e0` from the first measured error and
/// `theta_dot0` from the first reference velocity. Set `latched` to pin both
/// to caller-chosen values instead.
struct ControllerState {
  double int_e = 0.0;       // rad s
  double dint_e = 0.0;      // rad s^2
  double theta_int = 0.0;   // integral reconstruction of u
  double e0 = 0.0;          // rad
  double theta_dot0 = 0.0;  // rad/s
  double u_prev = 0.0;      // reconstruction integrand at the previous tick
  double e_prev = 0.0;
  double t = 0.0;
  bool latched = false;  // e0 / theta_dot0 fixed
  bool started = false;  // at least one tick taken
};

struct ControlOutput {
  double u = 0.0;      // saturated command
  double u_raw = 0.0;  // unsaturated law output
  bool saturated = false;
  ControllerState next;
};

/// One tick of the GPI law
///
///   u = u_d - k3 (theta_int - theta_dot0 - theta_dot_d)
///       + (1/g0) [ -k2 (e - e0) - k1 int(e) - k0 iint(e) ],   e = theta_meas - theta_d,
///
/// with every integral advanced by the trapezoidal rule. The theta_int update
/// contains the current u, so the tick solves that linear relation in closed
/// form. On a saturated tick the error integrals keep their previous values and
/// theta_int is re-seeded so the law reproduces the applied input.
ControlOutput control_step(const ControllerState& cs, const GpiGains& gains, const SecondOrderTf& tf,
                           double theta_meas, const RefSample& ref, double dt, const SaturationLimits& sat);

/// Ratio of polynomials, descending coefficients.
struct RationalTf {
  std::vector<double> num;
  std::vector<double> den;
};

/// (k_{r+2} s^{r+2} + ... + k0) / (s^{r+1} (s + k_{r+3})), gains given as k0..k_{r+3}.
RationalTf compensator_tf(unsigned r, std::span<const double> gains);

/// Roots of den_plant * den_comp + num_plant * num_comp (num_plant = gamma0, divided by gamma0 when scaled).
std::vector<std::complex<double>> closed_loop_poles_analysis(const SecondOrderTf& tf, const RationalTf& comp,
                                                             bool scaled_by_inv_gamma0);

/// Polynomial helpers shared with the analysis code.
std::vector<double> poly_mul(std::span<const double> a, std::span<const double> b);
std::vector<double> poly_add(std::span<const double> a, std::span<const double> b);
std::vector<std::complex<double>> poly_roots(std::span<const double> coeffs);

}  // namespace gpis
