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

// gpis: command-line front end over the C API.

#include <cmath>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "gpishoulder/gpishoulder.h"

namespace {

struct Failure {
  gpis_status status;
};

void check(gpis_status st) {
  if (st != GPIS_OK) throw Failure{st};
}

// RAII wrappers so early exits do not leak handles.
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};

using Scenario = Handle<gpis_scenario, gpis_scenario_free>;
using Result = Handle<gpis_result, gpis_result_free>;
using Teach = Handle<gpis_teach, gpis_teach_free>;

void print_metrics(const gpis_result* r) {
  for (size_t j = 0; j < gpis_result_joint_count(r); ++j) {
    gpis_metrics m{};
    check(gpis_result_metrics(r, j, &m));
    std::printf("%s: rmse=%.6g max_abs_error=%.6g steady_state_error=%.6g settle_time=", gpis_result_joint_name(r, j),
                m.rmse, m.max_abs_error, m.steady_state_error);
    if (std::isfinite(m.settle_time))
      std::printf("%.4g s", m.settle_time);
    else
      std::printf("never");
    std::printf(" saturated_ticks=%zu samples=%zu\n", m.saturated_ticks, m.samples);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop simulation of a pneumatic two-DoF shoulder under GPI control"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir;
  auto* run = app.add_subcommand("run", "run a scenario and write CSVs, plot.svg and metrics.json");
  run->add_option("--scenario", scenario_path, "scenario JSON")->required();
  run->add_option("--out", out_dir, "output directory")->required();

  double xi = 0.9, wn = 6.1;
  gpis_plant plant{};
  check(gpis_default_plant("s1", &plant));
  auto* gains = app.add_subcommand("gains", "GPI gains and placed closed-loop poles");
  gains->add_option("--xi", xi, "damping ratio")->capture_default_str();
  gains->add_option("--wn", wn, "natural frequency, rad/s")->capture_default_str();
  gains->add_option("--g0", plant.gamma0, "plant gamma0")->capture_default_str();
  gains->add_option("--g1", plant.gamma1, "plant gamma1")->capture_default_str();
  gains->add_option("--g2", plant.gamma2, "plant gamma2")->capture_default_str();

  double theta1 = 0.0, theta2 = 0.0, la = 0.14;
  auto* fk = app.add_subcommand("fk", "wrist position from shoulder angles");
  fk->add_option("--theta1", theta1, "abduction/adduction angle, rad")->required();
  fk->add_option("--theta2", theta2, "flexion/extension angle, rad")->required();
  fk->add_option("--la", la, "arm length, m")->capture_default_str();

  double x = 0.0, y = 0.0, z = 0.0;
  auto* ik = app.add_subcommand("ik", "shoulder angles from wrist position");
  ik->add_option("--x", x)->required();
  ik->add_option("--y", y)->required();
  ik->add_option("--z", z)->required();
  ik->add_option("--la", la, "arm length, m")->capture_default_str();

  std::string csv_path;
  double ts = 0.065, prefilter = 0.5;
  auto* sysid = app.add_subcommand("sysid", "identify a second-order model from a t,u,theta record");
  sysid->add_option("--csv", csv_path, "record CSV")->required()->check(CLI::ExistingFile);
  sysid->add_option("--ts", ts, "sampling period, s")->capture_default_str();
  sysid->add_option("--prefilter", prefilter, "prefilter cutoff, rad/s (0 disables)")->capture_default_str();

  std::string record_path, joint = "s1";
  bool repeat = false, smooth = false;
  double dt = 0.065;
  auto* teach = app.add_subcommand("teach", "resample a demonstration and optionally replay it");
  teach->add_option("--record", record_path, "demonstration CSV (t,theta,theta_dot)")->required();
  teach->add_flag("--repeat", repeat, "simulate the replay");
  teach->add_option("--out", out_dir, "output directory")->required();
  teach->add_option("--joint", joint, "joint to drive")->check(CLI::IsMember({"s1", "s2"}))->capture_default_str();
  teach->add_flag("--smooth", smooth, "smooth velocity before differencing");
  teach->add_option("--dt", dt, "controller period, s")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "gpis: %s\n", e.what());
    return 2;
  }

  try {
    if (*run) {
      Scenario s;
      check(gpis_scenario_load(scenario_path.c_str(), &s.p));
      Result r;
      check(gpis_run(s.p, &r.p));
      check(gpis_result_write(r.p, out_dir.c_str()));
      print_metrics(r.p);
    } else if (*gains) {
      gpis_gains g{};
      check(gpis_compute_gains(xi, wn, &plant, &g));
      double re[4], im[4];
      check(gpis_closed_loop_poles(&g, &plant, re, im));
      std::printf("k0 = %.12g\nk1 = %.12g\nk2 = %.12g\nk3 = %.12g\n", g.k0, g.k1, g.k2, g.k3);
      for (int i = 0; i < 4; ++i) std::printf("pole %d = %.6g %+.6gi\n", i + 1, re[i], im[i]);
    } else if (*fk) {
      double p[3];
      check(gpis_forward(theta1, theta2, la, p));
      std::printf("x = %.12g\ny = %.12g\nz = %.12g\n", p[0], p[1], p[2]);
    } else if (*ik) {
      double q[2];
      check(gpis_inverse(x, y, z, la, q));
      std::printf("theta1 = %.12g\ntheta2 = %.12g\n", q[0], q[1]);
    } else if (*sysid) {
      gpis_sysid_result est{};
      check(gpis_sysid_csv(csv_path.c_str(), ts, prefilter, &est));
      std::printf("gamma0 = %.10g\ngamma1 = %.10g\ngamma2 = %.10g\nfit = %.4f %%\n", est.plant.gamma0,
                  est.plant.gamma1, est.plant.gamma2, est.fit_percent);
    } else if (*teach) {
      Teach t;
      check(gpis_teach_load(record_path.c_str(), &t.p));
      Scenario s;
      check(gpis_teach_scenario(t.p, joint.c_str(), smooth ? 1 : 0, dt, &s.p));
      if (repeat) {
        Result r;
        check(gpis_run(s.p, &r.p));
        check(gpis_result_write(r.p, out_dir.c_str()));
        print_metrics(r.p);
      }
      const std::string ref = out_dir + "/reference.csv";
      check(gpis_teach_export_reference(t.p, dt, smooth ? 1 : 0, ref.c_str()));
      std::printf("reference: %s (%zu demonstration samples, %.4g s)\n", ref.c_str(), gpis_teach_sample_count(t.p),
                  gpis_teach_duration(t.p));
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "gpis: error: %s: %s\n", gpis_status_name(f.status), gpis_last_error());
    return 1;
  }
  return 0;
}
