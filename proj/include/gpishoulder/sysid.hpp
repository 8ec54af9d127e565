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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "gpishoulder/plant.hpp"

namespace gpis {

/// Sampled input/output record: PWM-% in, joint angle out.
struct IoRecord {
  std::vector<double> u;
  std::vector<double> theta;
  double ts = 0.065;  // s

  void validate() const;
};

/// theta[k] = -a1 theta[k-1] - a2 theta[k-2] + b1 u[k-1] + b2 u[k-2].
///
/// b0() is the absorbed input gain b1 + b2 used when mapping back to
/// continuous time.
struct DiscreteArx2 {
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;

  double b0() const { return b1 + b2; }
};

struct SysidOptions {
  /// Cutoff of the Butterworth prefilter applied to both u and theta (rad/s); 0 disables.
  double prefilter_cutoff = 0.5;
};

/// Least-squares fit over every k >= 2. A regressor of rank 3 falls back to b2 = 0; lower rank throws
/// Errc::insufficient_excitation.
DiscreteArx2 fit_arx2(const IoRecord& rec, const SysidOptions& opt = {.prefilter_cutoff = 0.0});

/// Inverse bilinear map z = (1 + s T/2) / (1 - s T/2) of the denominator; gamma0 preserves the DC gain.
SecondOrderTf to_continuous(const DiscreteArx2& d, double ts);

/// Bilinear denominator plus DC-matched b1 = b2; exact inverse of to_continuous.
DiscreteArx2 discretize(const SecondOrderTf& tf, double ts);

/// 100 (1 - |y - yhat| / |y - mean(y)|).
double fit_percent(std::span<const double> y, std::span<const double> yhat);

/// Noise-free response of `tf` to the zero-order-held input, starting at rest from theta0.
std::vector<double> simulate_response(const SecondOrderTf& tf, std::span<const double> u, double ts,
                                      double theta0 = 0.0);

/// Causal second-order Butterworth low-pass (bilinear with prewarping), zero initial state.
std::vector<double> butterworth_lowpass(std::span<const double> x, double cutoff, double ts);

struct TfEstimate {
  SecondOrderTf tf;
  DiscreteArx2 arx;
  double fit = 0.0;  // percent
};

/// fit_arx2 -> to_continuous, then simulates the fitted model on the record and scores it.
TfEstimate estimate_tf(const IoRecord& rec, const SysidOptions& opt = {});

/// CSV with header `t,u,theta`; ts is supplied by the caller.
IoRecord load_io_csv(const std::filesystem::path& path, double ts);

/// Seeded multi-step PWM profile in [0, 100]; each level is held for a uniform
/// number of samples in [min_hold, max_hold].
std::vector<double> multistep_excitation(std::size_t n, std::uint64_t seed, std::size_t min_hold = 30,
                                         std::size_t max_hold = 120);

}  // namespace gpis
