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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gpishoulder/gpi.hpp"
#include "gpishoulder/plant.hpp"
#include "gpishoulder/trajectory.hpp"

namespace gpis {

/// Where a joint's reference comes from.
struct ReferenceSpec {
  enum class Kind { quintic, sine, taught };

  Kind kind = Kind::quintic;
  // quintic
  double theta0 = 0.1745;
  double thetaf = 0.1745;
  double move_time = 10.0;  // s
  // sine
  SineParams sine;
  // taught; `file` is kept for the echo, `taught` is loaded at parse time
  std::filesystem::path file;
  bool smooth = false;
  TaughtTrajectory taught;
};

struct JointConfig {
  std::string name;
  SecondOrderTf plant;
  GpiDesign design;
  JointLimits limits;
  SaturationLimits saturation;
  ReferenceSpec reference;
  std::optional<DisturbanceSpec> disturbance;
  /// Defaults to (theta_d(0), 0).
  std::optional<PlantState> initial_state;

  /// Identified plant, design frequency and limits for "s1" or "s2".
  static JointConfig defaults(const std::string& joint);
};

struct Scenario {
  std::string name = "scenario";
  std::vector<JointConfig> joints;
  double dt = 0.065;       // s
  double duration = 10.0;  // s
  double noise_amplitude = 0.0;  // rad, uniform in [-a, a] on the measurement
  std::uint64_t seed = 0;

  void validate() const;
  /// ceil(duration / dt) + 1
  std::size_t samples() const;
};

/// Parses scenario JSON; taught-trajectory paths resolve against `base_dir`.
Scenario parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);
/// Canonical JSON for a scenario (taught samples are not inlined).
std::string scenario_to_json(const Scenario& s);

struct JointSeries {
  std::string joint;
  std::vector<double> t;
  std::vector<double> theta_d;
  std::vector<double> theta_meas;
  std::vector<double> u;
  std::vector<double> e;
  std::size_t saturated_ticks = 0;
};

struct SimResult {
  std::string scenario_name;
  std::string scenario_json;
  std::vector<JointSeries> joints;

  const JointSeries& joint(const std::string& name) const;
};

struct Metrics {
  double mse = 0.0;
  double rmse = 0.0;
  double max_abs_error = 0.0;
  double steady_state_error = 0.0;  // mean |e| over the last 10 % of samples
  double settle_time = 0.0;         // infinity if |e| never stays within the band
};

inline constexpr double kSettleBand = 0.03;  // rad

/// Builds each joint's reference and gains, then runs the loop tick by tick.
SimResult run_scenario(const Scenario& s);

Metrics compute_metrics(const JointSeries& js);

/// `<dir>/<joint>.csv` per joint, header `t,theta_d,theta_meas,u,e`.
void export_csv(const SimResult& r, const std::filesystem::path& dir);
void write_series_csv(const JointSeries& js, const std::filesystem::path& file);
JointSeries read_series_csv(const std::filesystem::path& file, const std::string& joint);

/// One stacked panel per joint: angles on top, u below.
std::string render_svg(const SimResult& r);
void export_plot(const SimResult& r, const std::filesystem::path& file);

std::string metrics_json(const SimResult& r);

/// CSVs, plot.svg, metrics.json and scenario.json under `dir` (created if needed).
void write_outputs(const SimResult& r, const std::filesystem::path& dir);

/// Single-joint repeat of a demonstration; duration covers the recording.
Scenario teach_scenario(const TaughtTrajectory& tt, const std::string& joint, bool smooth, double dt = 0.065);

}  // namespace gpis
