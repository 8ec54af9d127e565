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

#include "gpishoulder/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gpishoulder/error.hpp"
#include "io_util.hpp"

namespace gpis {

void JointLimits::validate() const {
  if (!std::isfinite(theta_min) || !std::isfinite(theta_max)) fail(Errc::non_finite, "joint limits must be finite");
  if (!(theta_min < theta_max)) fail(Errc::invalid_argument, "joint limits require theta_min < theta_max");
}

QuinticCoeffs quintic_fit(double theta0, double thetaf, double T) {
  if (!std::isfinite(theta0) || !std::isfinite(thetaf) || !std::isfinite(T))
    fail(Errc::non_finite, "quintic endpoints and duration must be finite");
  if (T <= 0.0) fail(Errc::invalid_argument, "quintic duration must be positive");

  // Boundary system in normalized time tau = t / T, rows: p(0), p'(0), p''(0), p(1), p'(1), p''(1).
  Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  for (int i = 0; i < 6; ++i) {
    m(3, i) = 1.0;
    m(4, i) = i;
    m(5, i) = i * (i - 1);
  }
  Eigen::Matrix<double, 6, 1> rhs;
  rhs << theta0, 0.0, 0.0, thetaf, 0.0, 0.0;
  const Eigen::Matrix<double, 6, 1> c = m.fullPivLu().solve(rhs);

  QuinticCoeffs q;
  q.duration = T;
  double scale = 1.0;
  for (int i = 0; i < 6; ++i) {
    q.a[i] = c(i) / scale;
    scale *= T;
  }
  // The solve is exact for the constant terms; pin them so theta_d(0) is bit-exact.
  q.a[0] = theta0;
  q.a[1] = 0.0;
  q.a[2] = 0.0;
  return q;
}

RefSample quintic_eval(const QuinticCoeffs& c, double t) {
  const double tc = std::clamp(t, 0.0, c.duration);
  const auto& a = c.a;
  double p = a[5], v = 5.0 * a[5], acc = 20.0 * a[5];
  for (int i = 4; i >= 0; --i) p = p * tc + a[i];
  for (int i = 4; i >= 1; --i) v = v * tc + i * a[i];
  for (int i = 4; i >= 2; --i) acc = acc * tc + i * (i - 1) * a[i];
  return {p, v, acc, t};
}

RefSample sine_ref(const SineParams& p, double tick, double dt) {
  if (!(p.amplitude > 0.0)) fail(Errc::invalid_argument, "sine amplitude must be positive");
  if (!(dt > 0.0)) fail(Errc::invalid_argument, "sine reference requires dt > 0");
  const double half = 0.5 * p.amplitude;
  const double arg = p.freq_per_tick * tick + p.phase;
  const double w = p.freq_per_tick / dt;  // rad/s
  return {half * std::sin(arg) + half, half * w * std::cos(arg), -half * w * w * std::sin(arg), tick * dt};
}

RefSample clamp_to_limits(const RefSample& ref, const JointLimits& lim) {
  if (ref.theta_d < lim.theta_min) return {lim.theta_min, 0.0, 0.0, ref.t};
  if (ref.theta_d > lim.theta_max) return {lim.theta_max, 0.0, 0.0, ref.t};
  return ref;
}

TaughtTrajectory record_teach(std::span<const TeachSample> samples) {
  if (samples.size() < 2) fail(Errc::invalid_argument, "a demonstration needs at least two samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!std::isfinite(s.t) || !std::isfinite(s.theta) || !std::isfinite(s.theta_dot))
      fail(Errc::non_finite, "demonstration sample " + std::to_string(i) + " is not finite");
    if (i > 0 && !(s.t > samples[i - 1].t))
      fail(Errc::invalid_argument, "demonstration timestamps must be strictly increasing (sample " +
                                       std::to_string(i) + ")");
  }
  TaughtTrajectory tt;
  tt.samples.assign(samples.begin(), samples.end());
  tt.duration = samples.back().t - samples.front().t;
  return tt;
}

std::vector<RefSample> differentiate_teach(const TaughtTrajectory& tt, double dt, bool smooth) {
  if (!(dt > 0.0)) fail(Errc::invalid_argument, "differentiation step must be positive");
  if (tt.samples.size() < 2) fail(Errc::invalid_argument, "a demonstration needs at least two samples");

  const auto& s = tt.samples;
  const double t0 = s.front().t;
  const auto n = static_cast<std::size_t>(std::floor(tt.duration / dt + 1e-9)) + 1;

  std::vector<double> pos(n), vel(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = std::min(t0 + static_cast<double>(k) * dt, s.back().t);
    while (seg + 2 < s.size() && s[seg + 1].t < t) ++seg;
    const auto& lo = s[seg];
    const auto& hi = s[seg + 1];
    const double w = (t - lo.t) / (hi.t - lo.t);
    pos[k] = lo.theta + w * (hi.theta - lo.theta);
    vel[k] = lo.theta_dot + w * (hi.theta_dot - lo.theta_dot);
  }

  std::vector<double> diff_src = vel;
  if (smooth) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t b = k >= 2 ? k - 2 : 0;
      const std::size_t e = std::min(n - 1, k + 2);
      double acc = 0.0;
      for (std::size_t j = b; j <= e; ++j) acc += vel[j];
      diff_src[k] = acc / static_cast<double>(e - b + 1);
    }
  }

  std::vector<RefSample> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    if (n > 1) {
      if (k == 0)
        acc = (diff_src[1] - diff_src[0]) / dt;
      else if (k == n - 1)
        acc = (diff_src[n - 1] - diff_src[n - 2]) / dt;
      else
        acc = (diff_src[k + 1] - diff_src[k - 1]) / (2.0 * dt);
    }
    out[k] = {pos[k], vel[k], acc, static_cast<double>(k) * dt};
  }
  return out;
}

RefSample sample_at(std::span<const RefSample> grid, double t) {
  if (grid.empty()) fail(Errc::invalid_argument, "empty reference grid");
  if (t < grid.front().t) return {grid.front().theta_d, 0.0, 0.0, t};
  if (t > grid.back().t) return {grid.back().theta_d, 0.0, 0.0, t};
  const auto it = std::upper_bound(grid.begin(), grid.end(), t, [](double x, const RefSample& r) { return x < r.t; });
  if (it == grid.end()) {
    RefSample last = grid.back();
    last.t = t;
    return last;
  }
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);
  const auto lerp = [w](double a, double b) { return a + w * (b - a); };
  return {lerp(lo.theta_d, hi.theta_d), lerp(lo.theta_dot_d, hi.theta_dot_d), lerp(lo.theta_ddot_d, hi.theta_ddot_d), t};
}

TaughtTrajectory load_teach_csv(const std::filesystem::path& path) {
  const auto rows = io::read_numeric_csv(path, "t,theta,theta_dot");
  std::vector<TeachSample> samples;
  samples.reserve(rows.size());
  for (const auto& r : rows) samples.push_back({r[0], r[1], r[2]});
  return record_teach(samples);
}

void save_teach_csv(const TaughtTrajectory& tt, const std::filesystem::path& path) {
  std::string out = "t,theta,theta_dot\n";
  for (const auto& s : tt.samples)
    out += io::format_double(s.t) + ',' + io::format_double(s.theta) + ',' + io::format_double(s.theta_dot) + '\n';
  io::write_atomic(path, out);
}

}  // namespace gpis
