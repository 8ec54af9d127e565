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

#include "gpishoulder/gpishoulder.h"

#include <cmath>
#include <exception>
#include <filesystem>
#include <new>
#include <string>

#include "gpishoulder/error.hpp"
#include "gpishoulder/gpi.hpp"
#include "gpishoulder/harness.hpp"
#include "gpishoulder/kinematics.hpp"
#include "gpishoulder/plant.hpp"
#include "gpishoulder/sysid.hpp"
#include "gpishoulder/trajectory.hpp"
#include "io_util.hpp"

struct gpis_scenario {
  gpis::Scenario s;
};

struct gpis_result {
  gpis::SimResult r;
};

struct gpis_teach {
  gpis::TaughtTrajectory tt;
};

namespace {

thread_local std::string g_last_error;

template <class F>
gpis_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return GPIS_OK;
  } catch (const gpis::Error& e) {
    g_last_error = e.what();
    return static_cast<gpis_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GPIS_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GPIS_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) gpis::fail(gpis::Errc::invalid_argument, std::string(what) + " must not be null");
}

gpis::SecondOrderTf to_tf(const gpis_plant* p) {
  need(p, "plant");
  return {p->gamma0, p->gamma1, p->gamma2};
}

gpis::GpiGains to_gains(const gpis_gains* g) {
  need(g, "gains");
  return {g->k0, g->k1, g->k2, g->k3};
}

gpis::ArmLength arm(double l_a) {
  gpis::ArmLength a;
  if (l_a > 0.0) a.l_a = l_a;
  return a;
}

const gpis::JointSeries& joint_at(const gpis_result* r, size_t joint) {
  need(r, "result");
  if (joint >= r->r.joints.size())
    gpis::fail(gpis::Errc::invalid_argument, "joint index " + std::to_string(joint) + " out of range");
  return r->r.joints[joint];
}

void fill_sysid(const gpis::TfEstimate& est, gpis_sysid_result* out) {
  out->plant = {est.tf.gamma0, est.tf.gamma1, est.tf.gamma2};
  out->a1 = est.arx.a1;
  out->a2 = est.arx.a2;
  out->b1 = est.arx.b1;
  out->b2 = est.arx.b2;
  out->fit_percent = est.fit;
}

}  // namespace

extern "C" {

const char* gpis_last_error(void) { return g_last_error.c_str(); }

const char* gpis_status_name(gpis_status status) {
  switch (status) {
    case GPIS_OK: return "ok";
    case GPIS_E_INVALID_ARGUMENT: return "invalid argument";
    case GPIS_E_NON_FINITE: return "non-finite value";
    case GPIS_E_MARGINAL_PLANT: return "marginal plant";
    case GPIS_E_UNSTABLE_COMPENSATOR: return "unstable compensator";
    case GPIS_E_UNREACHABLE: return "unreachable";
    case GPIS_E_SINGULAR: return "singular configuration";
    case GPIS_E_INSUFFICIENT_EXCITATION: return "insufficient excitation";
    case GPIS_E_TUSTIN_SINGULARITY: return "Tustin singularity";
    case GPIS_E_UNSTABLE_MODEL: return "unstable model";
    case GPIS_E_UNDEFINED_FIT: return "undefined fit";
    case GPIS_E_IO: return "I/O error";
    case GPIS_E_PARSE: return "parse error";
    case GPIS_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gpis_version(void) { return "0.1.0"; }

gpis_status gpis_default_plant(const char* joint, gpis_plant* out) {
  return guard([&] {
    need(joint, "joint");
    need(out, "out");
    const auto jc = gpis::JointConfig::defaults(joint);
    *out = {jc.plant.gamma0, jc.plant.gamma1, jc.plant.gamma2};
  });
}

gpis_status gpis_compute_gains(double xi, double wn, const gpis_plant* plant, gpis_gains* out) {
  return guard([&] {
    need(out, "out");
    const auto g = gpis::compute_gains({xi, wn}, to_tf(plant));
    *out = {g.k0, g.k1, g.k2, g.k3};
  });
}

gpis_status gpis_hurwitz_poly(double xi, double wn, double out[5]) {
  return guard([&] {
    need(out, "out");
    const auto p = gpis::hurwitz_poly({xi, wn});
    for (int i = 0; i < 5; ++i) out[i] = p[i];
  });
}

gpis_status gpis_char_poly(const gpis_gains* gains, const gpis_plant* plant, double out[5]) {
  return guard([&] {
    need(out, "out");
    const auto p = gpis::closed_loop_char_poly(to_gains(gains), to_tf(plant));
    for (int i = 0; i < 5; ++i) out[i] = p[i];
  });
}

gpis_status gpis_closed_loop_poles(const gpis_gains* gains, const gpis_plant* plant, double re[4], double im[4]) {
  return guard([&] {
    need(re, "re");
    need(im, "im");
    const auto p = gpis::closed_loop_char_poly(to_gains(gains), to_tf(plant));
    const auto roots = gpis::poly_roots(p);
    for (std::size_t i = 0; i < 4; ++i) {
      re[i] = roots[i].real();
      im[i] = roots[i].imag();
    }
  });
}

gpis_status gpis_forward(double theta_s1, double theta_s2, double l_a, double xyz[3]) {
  return guard([&] {
    need(xyz, "xyz");
    const auto p = gpis::forward({theta_s1, theta_s2}, arm(l_a));
    xyz[0] = p.x;
    xyz[1] = p.y;
    xyz[2] = p.z;
  });
}

gpis_status gpis_inverse(double x, double y, double z, double l_a, double angles[2]) {
  return guard([&] {
    need(angles, "angles");
    const auto q = gpis::inverse({x, y, z}, arm(l_a));
    angles[0] = q.theta_s1;
    angles[1] = q.theta_s2;
  });
}

int gpis_in_workspace(double theta_s1, double theta_s2) {
  return gpis::in_workspace({theta_s1, theta_s2}) ? 1 : 0;
}

gpis_status gpis_scenario_load(const char* path, gpis_scenario** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    *out = new gpis_scenario{gpis::load_scenario(path)};
  });
}

gpis_status gpis_scenario_parse(const char* json, const char* base_dir, gpis_scenario** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = nullptr;
    *out = new gpis_scenario{gpis::parse_scenario(json, base_dir ? base_dir : "")};
  });
}

void gpis_scenario_free(gpis_scenario* s) { delete s; }

gpis_status gpis_run(const gpis_scenario* s, gpis_result** out) {
  return guard([&] {
    need(s, "scenario");
    need(out, "out");
    *out = nullptr;
    *out = new gpis_result{gpis::run_scenario(s->s)};
  });
}

void gpis_result_free(gpis_result* r) { delete r; }

size_t gpis_result_joint_count(const gpis_result* r) { return r ? r->r.joints.size() : 0; }

const char* gpis_result_joint_name(const gpis_result* r, size_t joint) {
  if (!r || joint >= r->r.joints.size()) return nullptr;
  return r->r.joints[joint].joint.c_str();
}

gpis_status gpis_result_column(const gpis_result* r, size_t joint, gpis_column col, const double** data, size_t* n) {
  return guard([&] {
    need(data, "data");
    need(n, "n");
    const auto& js = joint_at(r, joint);
    const std::vector<double>* v = nullptr;
    switch (col) {
      case GPIS_COL_T: v = &js.t; break;
      case GPIS_COL_THETA_D: v = &js.theta_d; break;
      case GPIS_COL_THETA_MEAS: v = &js.theta_meas; break;
      case GPIS_COL_U: v = &js.u; break;
      case GPIS_COL_E: v = &js.e; break;
    }
    if (!v) gpis::fail(gpis::Errc::invalid_argument, "unknown column");
    *data = v->data();
    *n = v->size();
  });
}

gpis_status gpis_result_metrics(const gpis_result* r, size_t joint, gpis_metrics* out) {
  return guard([&] {
    need(out, "out");
    const auto& js = joint_at(r, joint);
    const auto m = gpis::compute_metrics(js);
    *out = {m.mse, m.rmse, m.max_abs_error, m.steady_state_error, m.settle_time, js.t.size(), js.saturated_ticks};
  });
}

gpis_status gpis_result_write(const gpis_result* r, const char* dir) {
  return guard([&] {
    need(r, "result");
    need(dir, "dir");
    gpis::write_outputs(r->r, dir);
  });
}

gpis_status gpis_sysid(const double* u, const double* theta, size_t n, double ts, double prefilter_cutoff,
                       gpis_sysid_result* out) {
  return guard([&] {
    need(u, "u");
    need(theta, "theta");
    need(out, "out");
    gpis::IoRecord rec{std::vector<double>(u, u + n), std::vector<double>(theta, theta + n), ts};
    fill_sysid(gpis::estimate_tf(rec, {prefilter_cutoff}), out);
  });
}

gpis_status gpis_sysid_csv(const char* path, double ts, double prefilter_cutoff, gpis_sysid_result* out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    fill_sysid(gpis::estimate_tf(gpis::load_io_csv(path, ts), {prefilter_cutoff}), out);
  });
}

gpis_status gpis_teach_load(const char* path, gpis_teach** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    *out = new gpis_teach{gpis::load_teach_csv(path)};
  });
}

void gpis_teach_free(gpis_teach* t) { delete t; }

double gpis_teach_duration(const gpis_teach* t) { return t ? t->tt.duration : 0.0; }

size_t gpis_teach_sample_count(const gpis_teach* t) { return t ? t->tt.samples.size() : 0; }

gpis_status gpis_teach_scenario(const gpis_teach* t, const char* joint, int smooth, double dt, gpis_scenario** out) {
  return guard([&] {
    need(t, "teach");
    need(joint, "joint");
    need(out, "out");
    *out = nullptr;
    *out = new gpis_scenario{gpis::teach_scenario(t->tt, joint, smooth != 0, dt)};
  });
}

gpis_status gpis_teach_export_reference(const gpis_teach* t, double dt, int smooth, const char* path) {
  return guard([&] {
    need(t, "teach");
    need(path, "path");
    const auto grid = gpis::differentiate_teach(t->tt, dt, smooth != 0);
    const std::filesystem::path target(path);
    if (target.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(target.parent_path(), ec);
      if (ec) gpis::fail(gpis::Errc::io, target.parent_path().string() + ": " + ec.message());
    }
    std::string text = "t,theta_d,theta_dot_d,theta_ddot_d\n";
    for (const auto& s : grid) {
      text += gpis::io::format_double(s.t) + ',' + gpis::io::format_double(s.theta_d) + ',' +
              gpis::io::format_double(s.theta_dot_d) + ',' + gpis::io::format_double(s.theta_ddot_d) + '\n';
    }
    gpis::io::write_atomic(path, text);
  });
}

}  // extern "C"
