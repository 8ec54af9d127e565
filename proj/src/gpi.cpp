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

#include "gpishoulder/gpi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "gpishoulder/error.hpp"

namespace gpis {

void GpiDesign::validate() const {
  if (!std::isfinite(xi) || !std::isfinite(wn)) fail(Errc::non_finite, "design parameters must be finite");
  if (xi <= 0.0 || wn <= 0.0) fail(Errc::invalid_argument, "design parameters xi and wn must be positive");
}

void SaturationLimits::validate() const {
  if (!std::isfinite(u_min) || !std::isfinite(u_max)) fail(Errc::non_finite, "saturation limits must be finite");
  if (!(u_min < u_max)) fail(Errc::invalid_argument, "saturation requires u_min < u_max");
}

GpiGains compute_gains(const GpiDesign& design, const SecondOrderTf& tf) {
  design.validate();
  // Synthesis only needs finite coefficients; a pure double integrator (g1 = g2 = 0) is allowed.
  if (!std::isfinite(tf.gamma0) || !std::isfinite(tf.gamma1) || !std::isfinite(tf.gamma2))
    fail(Errc::non_finite, "plant coefficients must be finite");
  const double xi = design.xi;
  const double wn = design.wn;
  const double g1 = tf.gamma1;
  const double g2 = tf.gamma2;

  GpiGains k;
  k.k3 = 4.0 * xi * wn - g1;
  if (k.k3 <= 0.0)
    fail(Errc::unstable_compensator,
         "unstable compensator denominator: 4*xi*wn must exceed gamma1 (k3 = " + std::to_string(k.k3) + ")");
  k.k0 = wn * wn * wn * wn;
  k.k1 = 4.0 * wn * wn * wn * xi - g2 * k.k3;
  k.k2 = 2.0 * wn * wn + 4.0 * xi * xi * wn * wn - g1 * k.k3 - g2;
  return k;
}

Quartic closed_loop_char_poly(const GpiGains& k, const SecondOrderTf& tf) {
  const double g1 = tf.gamma1;
  const double g2 = tf.gamma2;
  return {1.0, k.k3 + g1, k.k2 + k.k3 * g1 + g2, k.k3 * g2 + k.k1, k.k0};
}

Quartic hurwitz_poly(const GpiDesign& d) {
  const double w2 = d.wn * d.wn;
  return {1.0, 4.0 * d.xi * d.wn, 2.0 * w2 + 4.0 * d.xi * d.xi * w2, 4.0 * d.xi * w2 * d.wn, w2 * w2};
}

double feedforward(const SecondOrderTf& tf, const RefSample& ref) {
  return (ref.theta_ddot_d + tf.gamma1 * ref.theta_dot_d + tf.gamma2 * ref.theta_d) / tf.gamma0;
}

ControlOutput control_step(const ControllerState& cs, const GpiGains& g, const SecondOrderTf& tf,
                           double theta_meas, const RefSample& ref, double dt, const SaturationLimits& sat) {
  if (!std::isfinite(theta_meas)) fail(Errc::non_finite, "measurement is not finite");
  if (!std::isfinite(ref.theta_d) || !std::isfinite(ref.theta_dot_d) || !std::isfinite(ref.theta_ddot_d))
    fail(Errc::non_finite, "reference sample is not finite");
  if (!(dt > 0.0)) fail(Errc::invalid_argument, "control step requires dt > 0");

  ControlOutput out;
  ControllerState& n = out.next;
  n = cs;

  const double e = theta_meas - ref.theta_d;
  if (!cs.latched) {
    n.e0 = e;
    n.theta_dot0 = ref.theta_dot_d;
    n.latched = true;
  }

  // First tick has no elapsed interval, so nothing accumulates yet.
  const double int_e = cs.started ? trapezoid(cs.int_e, cs.e_prev, e, dt) : cs.int_e;
  const double dint_e = cs.started ? trapezoid(cs.dint_e, cs.int_e, int_e, dt) : cs.dint_e;

  const double inv_g0 = 1.0 / tf.gamma0;
  const double head = feedforward(tf, ref) + g.k3 * (n.theta_dot0 + ref.theta_dot_d);
  const auto error_terms = [&](double ie, double die) {
    return inv_g0 * (-g.k2 * (e - n.e0) - g.k1 * ie - g.k0 * die);
  };

  // u = head + error_terms - k3 * theta_int_new, theta_int_new = theta_int + h (u + u_prev).
  const double h = cs.started ? 0.5 * dt : 0.0;
  const double free_part = head + error_terms(int_e, dint_e);
  const double u_raw = (free_part - g.k3 * (cs.theta_int + h * cs.u_prev)) / (1.0 + g.k3 * h);
  const double u = sat.clamp(u_raw);

  out.u_raw = u_raw;
  out.u = u;
  out.saturated = (u != u_raw);

  if (!out.saturated) {
    n.int_e = int_e;
    n.dint_e = dint_e;
    n.theta_int = cs.theta_int + h * (u_raw + cs.u_prev);
  } else {
    // Conditional integration plus a re-seeded reconstruction: the law with the
    // frozen integrals now returns exactly the applied u.
    n.int_e = cs.int_e;
    n.dint_e = cs.dint_e;
    if (g.k3 > 0.0)
      n.theta_int = (head + error_terms(cs.int_e, cs.dint_e) - u) / g.k3;
    else
      n.theta_int = cs.theta_int + h * (u + cs.u_prev);
  }
  n.u_prev = u;
  n.e_prev = e;
  n.t = ref.t;
  n.started = true;
  return out;
}

RationalTf compensator_tf(unsigned r, std::span<const double> gains) {
  if (gains.size() != static_cast<std::size_t>(r) + 4)
    fail(Errc::invalid_argument, "compensator of order r=" + std::to_string(r) + " needs " +
                                     std::to_string(r + 4) + " gains, got " + std::to_string(gains.size()));
  RationalTf c;
  // Numerator k_{r+2} s^{r+2} + ... + k0.
  for (std::size_t i = r + 3; i-- > 0;) c.num.push_back(gains[i]);
  c.den.assign(r + 3, 0.0);
  c.den[0] = 1.0;
  c.den[1] = gains[r + 3];
  return c;
}

std::vector<double> poly_mul(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> poly_add(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[n - a.size() + i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[n - b.size() + i] += b[i];
  return out;
}

std::vector<std::complex<double>> poly_roots(std::span<const double> coeffs) {
  std::size_t lead = 0;
  while (lead < coeffs.size() && coeffs[lead] == 0.0) ++lead;
  if (lead == coeffs.size()) fail(Errc::invalid_argument, "zero polynomial has no defined roots");
  const auto p = coeffs.subspan(lead);
  const std::size_t deg = p.size() - 1;
  if (deg == 0) return {};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (std::size_t j = 0; j < deg; ++j) companion(0, j) = -p[j + 1] / p[0];
  for (std::size_t i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> roots(deg);
  for (std::size_t i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()[i];
  std::sort(roots.begin(), roots.end(), [](auto x, auto y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return roots;
}

std::vector<std::complex<double>> closed_loop_poles_analysis(const SecondOrderTf& tf, const RationalTf& comp,
                                                             bool scaled_by_inv_gamma0) {
  if (comp.den.empty() || comp.den.front() == 0.0)
    fail(Errc::invalid_argument, "compensator denominator must have a nonzero leading coefficient");
  const std::array<double, 3> plant_den{1.0, tf.gamma1, tf.gamma2};
  const double loop_gain = scaled_by_inv_gamma0 ? 1.0 : tf.gamma0;

  std::vector<double> scaled_num(comp.num);
  for (double& c : scaled_num) c *= loop_gain;
  const auto char_poly = poly_add(poly_mul(plant_den, comp.den), scaled_num);
  return poly_roots(char_poly);
}

}  // namespace gpis
