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

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "gpishoulder/error.hpp"
#include "gpishoulder/plant.hpp"

namespace gpis {
namespace {

// Exact step responses from rest under u = 50, values from tests/oracles/derive.py.
struct ExactPoint {
  double t, theta, theta_dot;
};
constexpr std::array<ExactPoint, 3> kS1Step{{{1.0, 0.013992015271859524, 0.02761746345363158},
                                                  {5.0, 0.29772688086487813, 0.10289580387917319},
                                                  {20.0, 0.88731883969851791, -0.065986940576776609}}};
constexpr std::array<ExactPoint, 3> kS2Step{{{1.0, 0.0085165903201583142, 0.016392984399717846},
                                                  {5.0, 0.15291385158359025, 0.047434280715771558},
                                                  {20.0, 0.50989335141096834, -0.0036346057550721764}}};

PlantState run(const SecondOrderTf& tf, double u, double t_end, double dt) {
  PlantState s;
  const auto n = static_cast<int>(std::lround(t_end / dt));
  for (int i = 0; i < n; ++i) s = step(s, tf, u, 0.0, dt);
  return s;
}

TEST(StateSpace, UnitOscillator) {
  const auto ss = to_state_space({1.0, 0.0, 1.0});
  EXPECT_EQ(ss.A(0, 0), 0.0);
  EXPECT_EQ(ss.A(0, 1), 1.0);
  EXPECT_EQ(ss.A(1, 0), -1.0);
  EXPECT_EQ(ss.A(1, 1), 0.0);
  EXPECT_EQ(ss.B(0), 0.0);
  EXPECT_EQ(ss.B(1), 1.0);
  EXPECT_EQ(ss.C(0), 1.0);
  EXPECT_EQ(ss.C(1), 0.0);
}

TEST(StateSpace, ShoulderAbductionCanonicalForm) {
  const auto ss = to_state_space(kPlantS1);
  EXPECT_EQ(ss.A(1, 0), -0.044);
  EXPECT_EQ(ss.A(1, 1), -0.05725);
  // Characteristic polynomial of A is s^2 + g1 s + g2.
  EXPECT_DOUBLE_EQ(-ss.A.trace(), kPlantS1.gamma1);
  EXPECT_DOUBLE_EQ(ss.A.determinant(), kPlantS1.gamma2);
}

TEST(Step, EquilibriumIsFixedPoint) {
  PlantState s;
  for (int i = 0; i < 100; ++i) {
    s = step(s, kPlantS1, 0.0, 0.0, 0.065);
    ASSERT_EQ(s.theta, 0.0);
    ASSERT_EQ(s.theta_dot, 0.0);
  }
  EXPECT_NEAR(s.t, 6.5, 1e-12);
}

TEST(Step, MatchesExactResponseAtControllerPeriod) {
  for (const auto& [tf, table] : {std::pair{kPlantS1, kS1Step}, std::pair{kPlantS2, kS2Step}}) {
    for (const auto& p : table) {
      const auto s = run(tf, 50.0, p.t, 0.005);
      EXPECT_NEAR(s.theta, p.theta, 1e-12);
      EXPECT_NEAR(s.theta_dot, p.theta_dot, 1e-12);
    }
    const auto coarse = run(tf, 50.0, 20.0, 20.0 / std::round(20.0 / 0.065));
    EXPECT_NEAR(coarse.theta, table[2].theta, 1e-8);
  }
}

TEST(Step, FinalValueS1) {
  const auto s = run(kPlantS1, 100.0, 600.0, 0.065);
  EXPECT_NEAR(s.theta, 1.3011363636363636, 1e-4);
}

TEST(Step, FinalValueS2) {
  const auto s = run(kPlantS2, 100.0, 600.0, 0.065);
  EXPECT_NEAR(s.theta, 0.89850453542534935, 1e-4);
}

TEST(Step, FinalValuePropertyWithinTenTimeConstants) {
  const SecondOrderTf tfs[] = {kPlantS1, kPlantS2, {2.0, 3.0, 2.0}, {0.5, 0.4, 1.5}};
  for (const auto& tf : tfs) {
    const auto p = poles(tf);
    const double slowest = std::min(std::abs(p[0].real()), std::abs(p[1].real()));
    const double target = dc_gain(tf) * 37.0;
    const auto s = run(tf, 37.0, 10.0 / slowest, 0.01);
    EXPECT_NEAR(s.theta, target, 1e-3 * std::abs(target));
  }
}

TEST(Step, FourthOrderConvergence) {
  // Error after a fixed horizon, compared with the exact response.
  const double dts[] = {0.2, 0.1, 0.05, 0.025};
  double err[4];
  const SecondOrderTf tf{1.0, 0.4, 4.0};
  for (int i = 0; i < 4; ++i) {
    const auto s = run(tf, 1.0, 4.0, dts[i]);
    // Underdamped exact response of theta'' + 0.4 theta' + 4 theta = 1 from rest.
    const double wd = std::sqrt(4.0 - 0.04);
    const double exact = 0.25 * (1.0 - std::exp(-0.2 * 4.0) * (std::cos(wd * 4.0) + 0.2 / wd * std::sin(wd * 4.0)));
    err[i] = std::abs(s.theta - exact);
  }
  for (int i = 0; i < 3; ++i) {
    const double slope = std::log(err[i] / err[i + 1]) / std::log(2.0);
    EXPECT_GE(slope, 3.5) << "between dt=" << dts[i] << " and " << dts[i + 1];
  }
}

TEST(Step, Linearity) {
  PlantState a, b, ab;
  for (int k = 0; k < 400; ++k) {
    const double u1 = 30.0 * std::sin(0.05 * k);
    const double u2 = k % 37 < 18 ? 20.0 : -5.0;
    a = step(a, kPlantS2, u1, 0.0, 0.065);
    b = step(b, kPlantS2, u2, 0.0, 0.065);
    ab = step(ab, kPlantS2, u1 + u2, 0.0, 0.065);
  }
  EXPECT_NEAR(ab.theta, a.theta + b.theta, 1e-9 * std::abs(ab.theta));
  EXPECT_NEAR(ab.theta_dot, a.theta_dot + b.theta_dot, 1e-9 * std::abs(ab.theta_dot) + 1e-15);
}

TEST(Step, DisturbanceAddsToInput) {
  const auto with_rho = step({0.3, 0.1, 0.0}, kPlantS1, 40.0, 5.0, 0.065);
  const auto summed = step({0.3, 0.1, 0.0}, kPlantS1, 45.0, 0.0, 0.065);
  EXPECT_EQ(with_rho.theta, summed.theta);
  EXPECT_EQ(with_rho.theta_dot, summed.theta_dot);
  const DisturbanceSpec d{5.0, 15.0};
  EXPECT_EQ(d.at(14.99), 0.0);
  EXPECT_EQ(d.at(15.0), 5.0);
}

TEST(Step, RejectsBadInput) {
  EXPECT_THROW(step({NAN, 0.0, 0.0}, kPlantS1, 0.0, 0.0, 0.065), Error);
  EXPECT_THROW(step({}, kPlantS1, INFINITY, 0.0, 0.065), Error);
  EXPECT_THROW(step({}, kPlantS1, 0.0, 0.0, 0.0), Error);
  try {
    step({0.0, NAN, 0.0}, kPlantS1, 0.0, 0.0, 0.065);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::non_finite);
  }
}

TEST(DcGain, Values) {
  EXPECT_EQ(dc_gain({1.0, 1.0, 1.0}), 1.0);
  EXPECT_NEAR(dc_gain(kPlantS1), 0.013011363636363636, 1e-17);
  EXPECT_NEAR(dc_gain(kPlantS2), 0.0089850453542534935, 1e-17);
  try {
    dc_gain({1.0, 1.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::marginal_plant);
  }
}

TEST(Poles, CriticallyDamped) {
  const auto p = poles({1.0, 2.0, 1.0});
  EXPECT_NEAR(p[0].real(), -1.0, 1e-12);
  EXPECT_NEAR(p[1].real(), -1.0, 1e-12);
  EXPECT_EQ(p[0].imag(), 0.0);
}

TEST(Poles, ShoulderPlants) {
  const auto p1 = poles(kPlantS1);
  EXPECT_NEAR(p1[0].real(), -0.028625, 1e-15);
  EXPECT_NEAR(p1[1].imag(), 0.20779944507866233, 1e-15);
  EXPECT_NEAR(p1[0].imag(), -0.20779944507866233, 1e-15);
  const auto p2 = poles(kPlantS2);
  EXPECT_NEAR(p2[1].real(), -0.1065, 1e-15);
  EXPECT_NEAR(p2[1].imag(), 0.17160346733093711, 1e-15);
  const auto ss = to_state_space(kPlantS1);
  Eigen::EigenSolver<Eigen::Matrix2d> es(ss.A);
  EXPECT_NEAR(std::abs(es.eigenvalues()(0).imag()), 0.20779944507866233, 1e-12);
}

TEST(Poles, RealRootsAreAccurate) {
  // Widely separated roots: s^2 + 1e4 s + 1.
  const auto p = poles({1.0, 1e4, 1.0});
  EXPECT_NEAR(p[0].real() * p[1].real(), 1.0, 1e-12);
  EXPECT_NEAR(p[0].real() + p[1].real(), -1e4, 1e-8);
}

TEST(SecondOrderTf, Validate) {
  EXPECT_NO_THROW(kPlantS1.validate());
  EXPECT_THROW((SecondOrderTf{0.0, 1.0, 1.0}.validate()), Error);
  EXPECT_THROW((SecondOrderTf{1.0, -0.1, 1.0}.validate()), Error);
  EXPECT_THROW((SecondOrderTf{1.0, 1.0, 0.0}.validate()), Error);
  EXPECT_THROW((SecondOrderTf{1.0, NAN, 1.0}.validate()), Error);
}

}  // namespace
}  // namespace gpis
