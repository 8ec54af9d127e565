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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gpishoulder/error.hpp"
#include "gpishoulder/gpi.hpp"
#include "gpishoulder/plant.hpp"

namespace gpis {
namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST(Gains, DoubleIntegratorPlant) {
  for (double xi : {0.3, 0.9, 1.7}) {
    const auto k = compute_gains({xi, 1.0}, {1.0, 0.0, 0.0});
    EXPECT_DOUBLE_EQ(k.k0, 1.0);
    EXPECT_DOUBLE_EQ(k.k1, 4.0 * xi);
    EXPECT_DOUBLE_EQ(k.k2, 2.0 + 4.0 * xi * xi);
    EXPECT_DOUBLE_EQ(k.k3, 4.0 * xi);
  }
}

TEST(Gains, AbductionJoint) {
  const auto k = compute_gains({0.9, 6.1}, kPlantS1);
  EXPECT_NEAR(k.k0, 1384.5841, 1e-9);
  EXPECT_NEAR(k.k1, 816.167879, 1e-9);
  EXPECT_NEAR(k.k2, 193.6824675625, 1e-9);
  EXPECT_NEAR(k.k3, 21.90275, 1e-9);
}

TEST(Gains, FlexionJoint) {
  const auto k = compute_gains({0.9, 10.25}, kPlantS2);
  EXPECT_NEAR(k.k0, 11038.12890625, 1e-9);
  EXPECT_NEAR(k.k1, 3875.30978727, 1e-9);
  EXPECT_NEAR(k.k2, 542.672379, 1e-9);
  EXPECT_NEAR(k.k3, 36.687, 1e-9);
}

TEST(Gains, RejectsNonPositiveK3) {
  try {
    compute_gains({0.1, 0.5}, {1.0, 0.2, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unstable_compensator);
  }
  EXPECT_THROW(compute_gains({0.0, 1.0}, kPlantS1), Error);
  EXPECT_THROW(compute_gains({0.9, -1.0}, kPlantS1), Error);
  EXPECT_THROW(compute_gains({0.9, 1.0}, {1.0, NAN, 1.0}), Error);
}

TEST(CharPoly, AbductionJointMatchesPlacement) {
  const auto p = closed_loop_char_poly(compute_gains({0.9, 6.1}, kPlantS1), kPlantS1);
  const Quartic expected{1.0, 21.96, 194.9804, 817.1316, 1384.5841};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(p[i], expected[i], 1e-9) << i;
}

TEST(CharPoly, ZeroGains) {
  const auto p = closed_loop_char_poly({}, {1.0, 0.0, 0.0});
  for (int i = 0; i < 5; ++i) EXPECT_EQ(p[i], i == 0 ? 1.0 : 0.0);
}

TEST(CharPoly, PolePlacementIdentityRandomDraws) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> xi_d(0.2, 2.0), wn_d(0.5, 20.0), g1_d(0.0, 1.0), g2_d(1e-6, 1.0);
  for (int i = 0; i < 100; ++i) {
    const GpiDesign d{xi_d(rng), wn_d(rng)};
    const SecondOrderTf tf{1.0, g1_d(rng), g2_d(rng)};
    const auto got = closed_loop_char_poly(compute_gains(d, tf), tf);
    const auto want = hurwitz_poly(d);
    for (int c = 0; c < 5; ++c) ASSERT_LE(rel_diff(got[c], want[c]), 1e-9) << "draw " << i << " coeff " << c;
  }
}

TEST(Hurwitz, Expansions) {
  const auto a = hurwitz_poly({1.0, 1.0});
  const Quartic ea{1, 4, 6, 4, 1};
  const auto b = hurwitz_poly({0.5, 2.0});
  const Quartic eb{1, 4, 12, 16, 16};
  const auto c = hurwitz_poly({0.9, 6.1});
  const Quartic ec{1.0, 21.96, 194.9804, 817.1316, 1384.5841};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(a[i], ea[i], 1e-12);
    EXPECT_NEAR(b[i], eb[i], 1e-12);
    EXPECT_NEAR(c[i], ec[i], 1e-9);
  }
}

TEST(Feedforward, Values) {
  EXPECT_EQ(feedforward(kPlantS1, {}), 0.0);
  EXPECT_NEAR(feedforward(kPlantS1, {1.0, 0.0, 0.0, 0.0}), 76.85589519650655, 1e-10);
  EXPECT_NEAR(feedforward(kPlantS2, {0.5585, 0.0, 0.0, 0.0}), 62.158840381991814, 1e-10);
  // (ddot + g1 dot + g2 theta) / g0 with every term active.
  EXPECT_NEAR(feedforward({2.0, 3.0, 4.0}, {1.0, 0.5, 0.25, 0.0}), (0.25 + 1.5 + 4.0) / 2.0, 1e-15);
}

TEST(Trapezoid, ExactForConstants) {
  const double dt = 0.065, c = 3.7;
  double sum = 0.0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) sum = trapezoid(sum, c, c, dt);
  EXPECT_NEAR(sum, c * n * dt, 1e-10);
}

TEST(Trapezoid, ExactForLinear) {
  const double T = 5.0;
  const int n = 400;
  const double dt = T / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum = trapezoid(sum, i * dt, (i + 1) * dt, dt);
  EXPECT_NEAR(sum, T * T / 2.0, 1e-12);
}

TEST(ControlStep, PerfectTrackingGivesFeedforward) {
  const auto k = compute_gains({0.9, 6.1}, kPlantS1);
  const SaturationLimits sat{-1000.0, 1000.0};
  const RefSample ref{0.6, 0.0, 0.0, 0.0};
  const auto first = control_step({}, k, kPlantS1, 0.6, ref, 0.065, sat);
  EXPECT_NEAR(first.u, feedforward(kPlantS1, ref), 1e-12);

  // A running state whose reconstruction already matches the reference velocity.
  const double dt = 0.065;
  const RefSample moving{0.7, 0.02, 0.001, 1.0};
  const double ud = feedforward(kPlantS1, moving);
  ControllerState cs;
  cs.latched = true;
  cs.started = true;
  cs.u_prev = ud;
  cs.theta_int = moving.theta_dot_d - 0.5 * dt * (ud + cs.u_prev);
  const auto out = control_step(cs, k, kPlantS1, moving.theta_d, moving, dt, sat);
  EXPECT_NEAR(out.u, ud, 1e-9);
}

TEST(ControlStep, ProportionalPathOnly) {
  const GpiGains k{0.0, 0.0, 1.0, 0.0};
  const SecondOrderTf tf{1.0, 0.0, 1.0};
  const SaturationLimits sat{-100.0, 100.0};
  ControllerState cs;
  cs.latched = true;  // e0 = 0
  for (int i = 0; i < 20; ++i) {
    const auto out = control_step(cs, k, tf, 0.1, {}, 0.065, sat);
    EXPECT_NEAR(out.u, -0.1, 1e-15) << "tick " << i;
    cs = out.next;
  }
}

TEST(ControlStep, LatchesInitialOffsets) {
  const auto k = compute_gains({0.9, 6.1}, kPlantS1);
  const RefSample ref{0.5, 0.3, 0.0, 0.0};
  const auto out = control_step({}, k, kPlantS1, 0.52, ref, 0.065, {});
  EXPECT_TRUE(out.next.latched);
  EXPECT_NEAR(out.next.e0, 0.02, 1e-15);
  EXPECT_EQ(out.next.theta_dot0, 0.3);
  EXPECT_TRUE(out.next.started);
}

TEST(ControlStep, SaturationSafetyAndFreeze) {
  const auto k = compute_gains({0.9, 10.25}, kPlantS2);
  const SaturationLimits sat{0.0, 100.0};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> meas(-1.0, 2.0);
  ControllerState cs;
  for (int i = 0; i < 500; ++i) {
    const auto out = control_step(cs, k, kPlantS2, meas(rng), {0.4, 0.0, 0.0, i * 0.065}, 0.065, sat);
    ASSERT_GE(out.u, 0.0);
    ASSERT_LE(out.u, 100.0);
    if (out.saturated && cs.started) {
      EXPECT_EQ(out.next.int_e, cs.int_e);
      EXPECT_EQ(out.next.dint_e, cs.dint_e);
    }
    cs = out.next;
  }
}

TEST(ControlStep, SaturatedTickReseedsReconstruction) {
  // After a saturated tick, re-evaluating the law with the frozen integrals returns the applied input.
  const auto k = compute_gains({0.9, 6.1}, kPlantS1);
  const SaturationLimits sat{0.0, 100.0};
  ControllerState cs;
  cs = control_step(cs, k, kPlantS1, 0.1745, {0.1745, 0.0, 0.0, 0.0}, 0.065, sat).next;
  const RefSample far{0.9, 0.0, 0.0, 0.065};
  const auto out = control_step(cs, k, kPlantS1, 0.1745, far, 0.065, sat);
  ASSERT_TRUE(out.saturated);
  EXPECT_EQ(out.u, 100.0);
  const auto& n = out.next;
  const double e = 0.1745 - far.theta_d;
  const double law = feedforward(kPlantS1, far) - k.k3 * (n.theta_int - n.theta_dot0 - far.theta_dot_d) +
                     (-k.k2 * (e - n.e0) - k.k1 * n.int_e - k.k0 * n.dint_e) / kPlantS1.gamma0;
  EXPECT_NEAR(law, 100.0, 1e-9);
}

TEST(ControlStep, ClosedLoopQuinticTracking) {
  // Linear-regime loop: s1 from 0.1745 to 0.6981 over 10 s, then 10 s hold.
  const auto k = compute_gains({0.9, 6.1}, kPlantS1);
  const auto q = quintic_fit(0.1745, 0.6981, 10.0);
  PlantState p{0.1745, 0.0, 0.0};
  ControllerState cs;
  double last_e = 0.0;
  for (int i = 0; i <= 308; ++i) {
    auto ref = quintic_eval(q, i * 0.065);
    ref.t = i * 0.065;
    const auto out = control_step(cs, k, kPlantS1, p.theta, ref, 0.065, {});
    last_e = p.theta - ref.theta_d;
    p = step(p, kPlantS1, out.u, 0.0, 0.065);
    cs = out.next;
  }
  EXPECT_LE(std::abs(last_e), 0.03);
  EXPECT_LE(std::abs(last_e), 1e-6);
}

TEST(ControlStep, RejectsNonFinite) {
  const auto k = compute_gains({0.9, 6.1}, kPlantS1);
  try {
    control_step({}, k, kPlantS1, NAN, {}, 0.065, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::non_finite);
  }
  EXPECT_THROW(control_step({}, k, kPlantS1, 0.0, {INFINITY, 0.0, 0.0, 0.0}, 0.065, {}), Error);
  EXPECT_THROW(control_step({}, k, kPlantS1, 0.0, {}, 0.0, {}), Error);
}

TEST(Saturation, Validate) {
  EXPECT_NO_THROW((SaturationLimits{-100.0, 100.0}.validate()));
  EXPECT_THROW((SaturationLimits{1.0, 1.0}.validate()), Error);
  EXPECT_EQ((SaturationLimits{}.clamp(120.0)), 100.0);
  EXPECT_EQ((SaturationLimits{}.clamp(-3.0)), 0.0);
}

TEST(Compensator, UnitDoubleIntegratorPath) {
  const double g[] = {1.0, 0.0, 0.0, 1.0};
  const auto c = compensator_tf(0, g);
  EXPECT_EQ(c.num, (std::vector<double>{0.0, 0.0, 1.0}));
  EXPECT_EQ(c.den, (std::vector<double>{1.0, 1.0, 0.0}));
}

TEST(Compensator, AbductionGains) {
  const auto k = compute_gains({0.9, 6.1}, kPlantS1);
  const double g[] = {k.k0, k.k1, k.k2, k.k3};
  const auto c = compensator_tf(0, g);
  ASSERT_EQ(c.num.size(), 3u);
  EXPECT_NEAR(c.num[0], 193.6824675625, 1e-9);
  EXPECT_NEAR(c.num[1], 816.167879, 1e-9);
  EXPECT_NEAR(c.num[2], 1384.5841, 1e-9);
  EXPECT_EQ(c.den, (std::vector<double>{1.0, 21.90275, 0.0}));
}

TEST(Compensator, HigherOrderStructure) {
  const double g[] = {1.0, 2.0, 3.0, 4.0, 5.0};
  const auto c = compensator_tf(1, g);
  EXPECT_EQ(c.den, (std::vector<double>{1.0, 5.0, 0.0, 0.0}));
  EXPECT_EQ(c.num, (std::vector<double>{4.0, 3.0, 2.0, 1.0}));
  EXPECT_THROW(compensator_tf(1, std::span<const double>(g, 4)), Error);
}

TEST(PoleAnalysis, AbductionPlacement) {
  const auto k = compute_gains({0.9, 6.1}, kPlantS1);
  const double g[] = {k.k0, k.k1, k.k2, k.k3};
  const auto roots = closed_loop_poles_analysis(kPlantS1, compensator_tf(0, g), true);
  ASSERT_EQ(roots.size(), 4u);
  // Double roots are only resolved to about sqrt(machine epsilon).
  for (const auto& r : roots) {
    EXPECT_NEAR(r.real(), -5.49, 1e-6);
    EXPECT_NEAR(std::abs(r.imag()), 2.6589283555598109, 1e-6);
  }
}

TEST(PoleAnalysis, UnscaledLoopDiffers) {
  const auto k = compute_gains({0.9, 6.1}, kPlantS1);
  const double g[] = {k.k0, k.k1, k.k2, k.k3};
  const auto roots = closed_loop_poles_analysis(kPlantS1, compensator_tf(0, g), false);
  double worst = 0.0;
  for (const auto& r : roots) worst = std::max(worst, std::abs(r - std::complex<double>(-5.49, 0.0)));
  EXPECT_GT(worst, 3.0);
}

TEST(PoleAnalysis, QuadrupleRoot) {
  const SecondOrderTf tf{1.0, 0.0, 0.0};
  const auto k = compute_gains({1.0, 1.0}, tf);
  const double g[] = {k.k0, k.k1, k.k2, k.k3};
  for (bool scaled : {true, false}) {
    const auto roots = closed_loop_poles_analysis(tf, compensator_tf(0, g), scaled);
    for (const auto& r : roots) EXPECT_NEAR(std::abs(r + 1.0), 0.0, 1e-3);
  }
}

TEST(Poly, RootsAndArithmetic) {
  const double a[] = {1.0, -3.0, 2.0};
  const auto r = poly_roots(a);
  EXPECT_NEAR(r[0].real(), 1.0, 1e-12);
  EXPECT_NEAR(r[1].real(), 2.0, 1e-12);
  const double b[] = {1.0, 1.0};
  EXPECT_EQ(poly_mul(a, b), (std::vector<double>{1.0, -2.0, -1.0, 2.0}));
  EXPECT_EQ(poly_add(a, b), (std::vector<double>{1.0, -2.0, 3.0}));
  const double z[] = {0.0, 0.0};
  EXPECT_THROW(poly_roots(z), Error);
}

}  // namespace
}  // namespace gpis
