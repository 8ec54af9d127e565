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

#include "gpishoulder/sysid.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "gpishoulder/error.hpp"
#include "io_util.hpp"

namespace gpis {

void IoRecord::validate() const {
  if (u.size() != theta.size())
    fail(Errc::invalid_argument, "input and output sequences differ in length (" + std::to_string(u.size()) +
                                     " vs " + std::to_string(theta.size()) + ")");
  if (u.size() < 10) fail(Errc::invalid_argument, "identification needs at least 10 samples");
  if (!(ts > 0.0) || !std::isfinite(ts)) fail(Errc::invalid_argument, "sampling period must be positive");
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!std::isfinite(u[i]) || !std::isfinite(theta[i]))
      fail(Errc::non_finite, "record sample " + std::to_string(i) + " is not finite");
}

std::vector<double> butterworth_lowpass(std::span<const double> x, double cutoff, double ts) {
  const double k = std::tan(0.5 * cutoff * ts);
  if (!(cutoff > 0.0) || !std::isfinite(k) || 0.5 * cutoff * ts >= std::numbers::pi / 2)
    fail(Errc::invalid_argument, "prefilter cutoff must be positive and below the Nyquist rate");
  const double s2 = std::numbers::sqrt2;
  const double norm = 1.0 / (1.0 + s2 * k + k * k);
  const double b0 = k * k * norm;
  const double b1 = 2.0 * b0;
  const double a1 = 2.0 * (k * k - 1.0) * norm;
  const double a2 = (1.0 - s2 * k + k * k) * norm;

  std::vector<double> y(x.size());
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = b0 * x[i] + b1 * x1 + b0 * x2 - a1 * y1 - a2 * y2;
    x2 = x1;
    x1 = x[i];
    y2 = y1;
    y1 = v;
    y[i] = v;
  }
  return y;
}

DiscreteArx2 fit_arx2(const IoRecord& rec, const SysidOptions& opt) {
  rec.validate();
  std::vector<double> u = rec.u;
  std::vector<double> y = rec.theta;
  if (opt.prefilter_cutoff > 0.0) {
    u = butterworth_lowpass(u, opt.prefilter_cutoff, rec.ts);
    y = butterworth_lowpass(y, opt.prefilter_cutoff, rec.ts);
  }

  const auto rows = static_cast<Eigen::Index>(y.size() - 2);
  Eigen::MatrixXd phi(rows, 4);
  Eigen::VectorXd target(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto k = static_cast<std::size_t>(r) + 2;
    phi(r, 0) = -y[k - 1];
    phi(r, 1) = -y[k - 2];
    phi(r, 2) = u[k - 1];
    phi(r, 3) = u[k - 2];
    target(r) = y[k];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(phi);
  qr.setThreshold(1e-12);
  if (qr.rank() == 4) {
    const Eigen::Vector4d theta = qr.solve(target);
    return {theta(0), theta(1), theta(2), theta(3)};
  }
  // Rank 3 (exact first-order data, or an input that never changes) leaves the b1/b2 split
  // unidentifiable; only b1 + b2 matters downstream, so fit with b2 = 0.
  const Eigen::MatrixXd reduced = phi.leftCols(3);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr3(reduced);
  qr3.setThreshold(1e-12);
  if (qr3.rank() < 3)
    fail(Errc::insufficient_excitation, "insufficient excitation: regressor rank " + std::to_string(qr.rank()) + " < 4");
  const Eigen::Vector3d theta = qr3.solve(target);
  return {theta(0), theta(1), theta(2), 0.0};
}

SecondOrderTf to_continuous(const DiscreteArx2& d, double ts) {
  if (!(ts > 0.0)) fail(Errc::invalid_argument, "sampling period must be positive");
  // Denominator after substitution, times (1 - sT/2)^2:
  //   (1 + a1 + a2) + s T (1 - a2) + s^2 (T^2/4)(1 - a1 + a2).
  const double lead = 1.0 - d.a1 + d.a2;
  if (std::abs(lead) <= 1e-12 * (1.0 + std::abs(d.a1) + std::abs(d.a2)))
    fail(Errc::tustin_singularity, "Tustin singularity: discrete pole at z = -1");

  const double disc = d.a1 * d.a1 - 4.0 * d.a2;
  const std::complex<double> sq = std::sqrt(std::complex<double>(disc, 0.0));
  const double r1 = std::abs(0.5 * (-d.a1 + sq));
  const double r2 = std::abs(0.5 * (-d.a1 - sq));
  if (!(r1 < 1.0 && r2 < 1.0))
    fail(Errc::unstable_model, "discrete poles must lie strictly inside the unit circle (|z| = " +
                                   std::to_string(std::max(r1, r2)) + ")");

  // Rounding can leave a pole at z = 1 just inside the circle; it maps to gamma2 = 0.
  if (1.0 + d.a1 + d.a2 <= 1e-12 * (1.0 + std::abs(d.a1) + std::abs(d.a2)))
    fail(Errc::unstable_model, "integrator-like discrete pole at z = 1 (gamma2 would be <= 0)");

  const double c2 = 0.25 * ts * ts * lead;
  SecondOrderTf tf{d.b0() / c2, ts * (1.0 - d.a2) / c2, (1.0 + d.a1 + d.a2) / c2};
  if (!(tf.gamma0 > 0.0)) fail(Errc::unstable_model, "fitted input gain is not positive");
  return tf;
}

DiscreteArx2 discretize(const SecondOrderTf& tf, double ts) {
  if (!(ts > 0.0)) fail(Errc::invalid_argument, "sampling period must be positive");
  const double h = 0.5 * ts;
  const double q = 0.25 * ts * ts;
  const double den = 1.0 + tf.gamma1 * h + tf.gamma2 * q;
  const double b0 = tf.gamma0 * ts * ts / den;
  return {(-2.0 + 2.0 * tf.gamma2 * q) / den, (1.0 - tf.gamma1 * h + tf.gamma2 * q) / den, 0.5 * b0, 0.5 * b0};
}

double fit_percent(std::span<const double> y, std::span<const double> yhat) {
  if (y.empty() || y.size() != yhat.size())
    fail(Errc::invalid_argument, "fit needs two non-empty sequences of equal length");
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    num += (y[i] - yhat[i]) * (y[i] - yhat[i]);
    den += (y[i] - mean) * (y[i] - mean);
  }
  if (den == 0.0) fail(Errc::undefined_fit, "undefined fit: reference sequence is constant");
  return 100.0 * (1.0 - std::sqrt(num) / std::sqrt(den));
}

std::vector<double> simulate_response(const SecondOrderTf& tf, std::span<const double> u, double ts, double theta0) {
  std::vector<double> y(u.size());
  PlantState s{theta0, 0.0, 0.0};
  for (std::size_t k = 0; k < u.size(); ++k) {
    y[k] = s.theta;
    s = step(s, tf, u[k], 0.0, ts);
  }
  return y;
}

TfEstimate estimate_tf(const IoRecord& rec, const SysidOptions& opt) {
  TfEstimate est;
  est.arx = fit_arx2(rec, opt);
  est.tf = to_continuous(est.arx, rec.ts);
  const auto yhat = simulate_response(est.tf, rec.u, rec.ts, rec.theta.front());
  for (double v : yhat)
    if (!std::isfinite(v)) fail(Errc::unstable_model, "fitted model diverges when simulated at the record rate");
  est.fit = fit_percent(rec.theta, yhat);
  return est;
}

IoRecord load_io_csv(const std::filesystem::path& path, double ts) {
  const auto rows = io::read_numeric_csv(path, "t,u,theta");
  IoRecord rec;
  rec.ts = ts;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && !(rows[i][0] > rows[i - 1][0]))
      fail(Errc::parse, path.string() + ": timestamps must be strictly increasing (row " + std::to_string(i + 1) + ")");
    rec.u.push_back(rows[i][1]);
    rec.theta.push_back(rows[i][2]);
  }
  rec.validate();
  return rec;
}

std::vector<double> multistep_excitation(std::size_t n, std::uint64_t seed, std::size_t min_hold,
                                         std::size_t max_hold) {
  if (min_hold == 0 || max_hold < min_hold) fail(Errc::invalid_argument, "hold range must satisfy 1 <= min <= max");
  std::mt19937_64 rng(seed);
  std::vector<double> u;
  u.reserve(n);
  while (u.size() < n) {
    const double level = 100.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto hold = min_hold + static_cast<std::size_t>(rng() % (max_hold - min_hold + 1));
    for (std::size_t i = 0; i < hold && u.size() < n; ++i) u.push_back(level);
  }
  return u;
}

}  // namespace gpis
