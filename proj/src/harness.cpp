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

#include "gpishoulder/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "json.hpp"

#include "gpishoulder/error.hpp"
#include "io_util.hpp"

namespace gpis {

using nlohmann::json;

namespace {

constexpr const char* kSeriesHeader = "t,theta_d,theta_meas,u,e";

double get_number(const json& obj, const char* key, double fallback, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) fail(Errc::parse, where + "." + key + " must be a number");
  return it->get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) fail(Errc::parse, where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail(Errc::parse, where + ": unknown field '" + key + "'");
  }
}

ReferenceSpec parse_reference(const json& j, const JointLimits& lim, const std::filesystem::path& base,
                              const std::string& where) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    fail(Errc::parse, where + " needs a string 'type'");
  ReferenceSpec ref;
  const auto type = j["type"].get<std::string>();
  if (type == "quintic") {
    reject_unknown(j, {"type", "theta0", "thetaf", "move_time"}, where);
    ref.kind = ReferenceSpec::Kind::quintic;
    ref.theta0 = get_number(j, "theta0", lim.theta_min, where);
    if (!j.contains("thetaf")) fail(Errc::parse, where + " needs 'thetaf'");
    ref.thetaf = get_number(j, "thetaf", 0.0, where);
    ref.move_time = get_number(j, "move_time", 10.0, where);
  } else if (type == "sine") {
    reject_unknown(j, {"type", "amplitude", "freq_per_tick", "phase"}, where);
    ref.kind = ReferenceSpec::Kind::sine;
    ref.sine.amplitude = get_number(j, "amplitude", 1.0, where);
    ref.sine.freq_per_tick = get_number(j, "freq_per_tick", 0.0, where);
    ref.sine.phase = get_number(j, "phase", 0.0, where);
  } else if (type == "taught") {
    reject_unknown(j, {"type", "file", "smooth"}, where);
    ref.kind = ReferenceSpec::Kind::taught;
    if (!j.contains("file") || !j["file"].is_string()) fail(Errc::parse, where + " needs a string 'file'");
    std::filesystem::path p = j["file"].get<std::string>();
    if (p.is_relative()) p = base / p;
    ref.file = p;
    if (j.contains("smooth")) {
      if (!j["smooth"].is_boolean()) fail(Errc::parse, where + ".smooth must be a boolean");
      ref.smooth = j["smooth"].get<bool>();
    }
    ref.taught = load_teach_csv(p);
  } else {
    fail(Errc::parse, where + ": unknown reference type '" + type + "'");
  }
  return ref;
}

JointConfig parse_joint(const std::string& name, const json& j, const std::filesystem::path& base) {
  const std::string where = "joints." + name;
  reject_unknown(j, {"plant", "design", "limits", "saturation", "reference", "disturbance", "initial_state"}, where);
  JointConfig jc = JointConfig::defaults(name);
  if (j.contains("plant")) {
    const auto& p = j["plant"];
    reject_unknown(p, {"gamma0", "gamma1", "gamma2"}, where + ".plant");
    jc.plant.gamma0 = get_number(p, "gamma0", jc.plant.gamma0, where + ".plant");
    jc.plant.gamma1 = get_number(p, "gamma1", jc.plant.gamma1, where + ".plant");
    jc.plant.gamma2 = get_number(p, "gamma2", jc.plant.gamma2, where + ".plant");
  }
  if (j.contains("design")) {
    const auto& d = j["design"];
    reject_unknown(d, {"xi", "wn"}, where + ".design");
    jc.design.xi = get_number(d, "xi", jc.design.xi, where + ".design");
    jc.design.wn = get_number(d, "wn", jc.design.wn, where + ".design");
  }
  if (j.contains("limits")) {
    const auto& l = j["limits"];
    reject_unknown(l, {"theta_min", "theta_max"}, where + ".limits");
    jc.limits.theta_min = get_number(l, "theta_min", jc.limits.theta_min, where + ".limits");
    jc.limits.theta_max = get_number(l, "theta_max", jc.limits.theta_max, where + ".limits");
  }
  if (j.contains("saturation")) {
    const auto& s = j["saturation"];
    reject_unknown(s, {"u_min", "u_max"}, where + ".saturation");
    jc.saturation.u_min = get_number(s, "u_min", jc.saturation.u_min, where + ".saturation");
    jc.saturation.u_max = get_number(s, "u_max", jc.saturation.u_max, where + ".saturation");
  }
  if (!j.contains("reference")) fail(Errc::parse, where + " needs a 'reference'");
  jc.reference = parse_reference(j["reference"], jc.limits, base, where + ".reference");
  if (j.contains("disturbance") && !j["disturbance"].is_null()) {
    const auto& d = j["disturbance"];
    reject_unknown(d, {"magnitude", "onset"}, where + ".disturbance");
    jc.disturbance = DisturbanceSpec{get_number(d, "magnitude", 0.0, where + ".disturbance"),
                                     get_number(d, "onset", 0.0, where + ".disturbance")};
  }
  if (j.contains("initial_state") && !j["initial_state"].is_null()) {
    const auto& s = j["initial_state"];
    reject_unknown(s, {"theta", "theta_dot"}, where + ".initial_state");
    jc.initial_state = PlantState{get_number(s, "theta", 0.0, where + ".initial_state"),
                                  get_number(s, "theta_dot", 0.0, where + ".initial_state"), 0.0};
  }
  return jc;
}

json joint_to_json(const JointConfig& jc) {
  json j;
  j["plant"] = {{"gamma0", jc.plant.gamma0}, {"gamma1", jc.plant.gamma1}, {"gamma2", jc.plant.gamma2}};
  j["design"] = {{"xi", jc.design.xi}, {"wn", jc.design.wn}};
  j["limits"] = {{"theta_min", jc.limits.theta_min}, {"theta_max", jc.limits.theta_max}};
  j["saturation"] = {{"u_min", jc.saturation.u_min}, {"u_max", jc.saturation.u_max}};
  const auto& r = jc.reference;
  switch (r.kind) {
    case ReferenceSpec::Kind::quintic:
      j["reference"] = {{"type", "quintic"}, {"theta0", r.theta0}, {"thetaf", r.thetaf}, {"move_time", r.move_time}};
      break;
    case ReferenceSpec::Kind::sine:
      j["reference"] = {{"type", "sine"},
                        {"amplitude", r.sine.amplitude},
                        {"freq_per_tick", r.sine.freq_per_tick},
                        {"phase", r.sine.phase}};
      break;
    case ReferenceSpec::Kind::taught:
      j["reference"] = {{"type", "taught"}, {"file", r.file.string()}, {"smooth", r.smooth}};
      break;
  }
  if (jc.disturbance) j["disturbance"] = {{"magnitude", jc.disturbance->magnitude}, {"onset", jc.disturbance->onset}};
  if (jc.initial_state)
    j["initial_state"] = {{"theta", jc.initial_state->theta}, {"theta_dot", jc.initial_state->theta_dot}};
  return j;
}

/// Reference generator for one joint, before clamping.
class RefSource {
 public:
  RefSource(const ReferenceSpec& spec, double dt) : spec_(spec), dt_(dt) {
    switch (spec.kind) {
      case ReferenceSpec::Kind::quintic:
        quintic_ = quintic_fit(spec.theta0, spec.thetaf, spec.move_time);
        break;
      case ReferenceSpec::Kind::sine:
        break;
      case ReferenceSpec::Kind::taught:
        grid_ = differentiate_teach(spec.taught, dt, spec.smooth);
        // Close the grid on the final demonstration sample so the replay ends where the demonstration does.
        if (spec.taught.duration - grid_.back().t > 1e-9) {
          const auto& last = spec.taught.samples.back();
          grid_.push_back({last.theta, last.theta_dot, grid_.back().theta_ddot_d, spec.taught.duration});
        }
        break;
    }
  }

  RefSample at(std::size_t tick) const {
    const double t = static_cast<double>(tick) * dt_;
    RefSample r;
    switch (spec_.kind) {
      case ReferenceSpec::Kind::quintic:
        r = quintic_eval(quintic_, t);
        break;
      case ReferenceSpec::Kind::sine:
        r = sine_ref(spec_.sine, static_cast<double>(tick), dt_);
        break;
      case ReferenceSpec::Kind::taught:
        r = sample_at(grid_, t);
        break;
    }
    r.t = t;
    return r;
  }

 private:
  const ReferenceSpec& spec_;
  double dt_;
  QuinticCoeffs quintic_;
  std::vector<RefSample> grid_;
};

JointSeries run_joint(const JointConfig& jc, const Scenario& s, std::size_t index) {
  GpiGains gains;
  try {
    gains = compute_gains(jc.design, jc.plant);
  } catch (const Error& e) {
    fail(e.code(), "joint " + jc.name + ": " + e.what());
  }

  const RefSource src(jc.reference, s.dt);
  const std::size_t n = s.samples();
  std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  const auto noise = [&] {
    if (s.noise_amplitude == 0.0) return 0.0;
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return s.noise_amplitude * (2.0 * unit - 1.0);
  };

  JointSeries js;
  js.joint = jc.name;
  for (auto* v : {&js.t, &js.theta_d, &js.theta_meas, &js.u, &js.e}) v->reserve(n);

  PlantState plant;
  if (jc.initial_state) {
    plant = *jc.initial_state;
  } else {
    plant.theta = clamp_to_limits(src.at(0), jc.limits).theta_d;
  }
  plant.t = 0.0;

  ControllerState cs;
  for (std::size_t k = 0; k < n; ++k) {
    const RefSample ref = clamp_to_limits(src.at(k), jc.limits);
    const double meas = plant.theta + noise();
    const ControlOutput out = control_step(cs, gains, jc.plant, meas, ref, s.dt, jc.saturation);
    js.t.push_back(ref.t);
    js.theta_d.push_back(ref.theta_d);
    js.theta_meas.push_back(meas);
    js.u.push_back(out.u);
    js.e.push_back(meas - ref.theta_d);
    if (out.saturated) ++js.saturated_ticks;
    const double rho = jc.disturbance ? jc.disturbance->at(ref.t) : 0.0;
    plant = step(plant, jc.plant, out.u, rho, s.dt);
    cs = out.next;
  }
  return js;
}

std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range span_of(std::initializer_list<const std::vector<double>*> series) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto* v : series)
    for (double x : *v) {
      if (!std::isfinite(x)) continue;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  if (!(lo <= hi)) return {0.0, 1.0};
  if (hi - lo < 1e-12) {
    const double pad = std::max(0.5, std::abs(lo) * 0.1);
    return {lo - pad, hi + pad};
  }
  return {lo, hi};
}

// Plot box at (x0, y0) with size w x h.
struct Box {
  double x0, y0, w, h;
};

std::string polyline(const std::vector<double>& t, const std::vector<double>& v, Range tr, Range vr, Box b,
                     const char* color, const char* extra = "") {
  std::string pts;
  for (std::size_t i = 0; i < t.size() && i < v.size(); ++i) {
    const double x = b.x0 + (t[i] - tr.lo) / (tr.hi - tr.lo) * b.w;
    const double y = b.y0 + b.h - (v[i] - vr.lo) / (vr.hi - vr.lo) * b.h;
    if (!pts.empty()) pts += ' ';
    pts += fmt_coord(x) + "," + fmt_coord(y);
  }
  return "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.2\"" + extra +
         " points=\"" + pts + "\"/>\n";
}

std::string axes(Box b, Range tr, Range vr, const std::string& ylabel) {
  std::string s;
  s += "<rect x=\"" + fmt_coord(b.x0) + "\" y=\"" + fmt_coord(b.y0) + "\" width=\"" + fmt_coord(b.w) +
       "\" height=\"" + fmt_coord(b.h) + "\" fill=\"none\" stroke=\"#444\"/>\n";
  const auto text = [&](double x, double y, const std::string& str, const char* anchor) {
    s += "<text x=\"" + fmt_coord(x) + "\" y=\"" + fmt_coord(y) + "\" font-size=\"11\" text-anchor=\"" + anchor +
         "\">" + xml_escape(str) + "</text>\n";
  };
  text(b.x0 - 6, b.y0 + 10, fmt_label(vr.hi), "end");
  text(b.x0 - 6, b.y0 + b.h, fmt_label(vr.lo), "end");
  text(b.x0, b.y0 + b.h + 14, fmt_label(tr.lo), "start");
  text(b.x0 + b.w, b.y0 + b.h + 14, fmt_label(tr.hi) + " s", "end");
  text(b.x0 - 6, b.y0 + b.h / 2, ylabel, "end");
  return s;
}

}  // namespace

JointConfig JointConfig::defaults(const std::string& joint) {
  JointConfig jc;
  jc.name = joint;
  if (joint == "s1") {
    jc.plant = kPlantS1;
    jc.design = {0.9, 6.1};
    jc.limits = JointLimits::s1();
  } else if (joint == "s2") {
    jc.plant = kPlantS2;
    jc.design = {0.9, 10.25};
    jc.limits = JointLimits::s2();
  } else {
    fail(Errc::invalid_argument, "unknown joint '" + joint + "' (expected s1 or s2)");
  }
  jc.reference.theta0 = jc.limits.theta_min;
  jc.reference.thetaf = jc.limits.theta_min;
  return jc;
}

void Scenario::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(Errc::invalid_argument, "dt must be positive");
  if (!(duration >= dt) || !std::isfinite(duration)) fail(Errc::invalid_argument, "duration must be at least dt");
  if (!(noise_amplitude >= 0.0) || !std::isfinite(noise_amplitude))
    fail(Errc::invalid_argument, "noise_amplitude must be non-negative");
  if (joints.empty()) fail(Errc::invalid_argument, "scenario has no joints");
  for (std::size_t i = 0; i < joints.size(); ++i) {
    const auto& jc = joints[i];
    for (std::size_t k = 0; k < i; ++k)
      if (joints[k].name == jc.name) fail(Errc::invalid_argument, "joint " + jc.name + " listed twice");
    try {
      jc.plant.validate();
      jc.design.validate();
      jc.limits.validate();
      jc.saturation.validate();
      if (jc.reference.kind == ReferenceSpec::Kind::quintic && !(jc.reference.move_time > 0.0))
        fail(Errc::invalid_argument, "quintic move_time must be positive");
      if (jc.reference.kind == ReferenceSpec::Kind::taught && jc.reference.taught.samples.size() < 2)
        fail(Errc::invalid_argument, "taught reference has no samples");
    } catch (const Error& e) {
      fail(e.code(), "joint " + jc.name + ": " + e.what());
    }
  }
}

std::size_t Scenario::samples() const {
  return static_cast<std::size_t>(std::ceil(duration / dt - 1e-9)) + 1;
}

Scenario parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(Errc::parse, std::string("scenario JSON: ") + e.what());
  }
  reject_unknown(j, {"name", "dt", "duration", "noise_amplitude", "seed", "joints"}, "scenario");
  Scenario s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail(Errc::parse, "scenario.name must be a string");
    s.name = j["name"].get<std::string>();
  }
  s.dt = get_number(j, "dt", s.dt, "scenario");
  s.duration = get_number(j, "duration", s.duration, "scenario");
  s.noise_amplitude = get_number(j, "noise_amplitude", s.noise_amplitude, "scenario");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail(Errc::parse, "scenario.seed must be a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (!j.contains("joints") || !j["joints"].is_object()) fail(Errc::parse, "scenario needs a 'joints' object");
  for (const auto& [name, body] : j["joints"].items()) {
    if (name != "s1" && name != "s2") fail(Errc::parse, "scenario.joints: unknown joint '" + name + "'");
    s.joints.push_back(parse_joint(name, body, base_dir));
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(io::read_file(path), path.parent_path());
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["dt"] = s.dt;
  j["duration"] = s.duration;
  j["noise_amplitude"] = s.noise_amplitude;
  j["seed"] = s.seed;
  j["joints"] = json::object();
  for (const auto& jc : s.joints) j["joints"][jc.name] = joint_to_json(jc);
  return j.dump(2) + "\n";
}

const JointSeries& SimResult::joint(const std::string& name) const {
  for (const auto& js : joints)
    if (js.joint == name) return js;
  fail(Errc::invalid_argument, "result has no joint '" + name + "'");
}

SimResult run_scenario(const Scenario& s) {
  s.validate();
  SimResult r;
  r.scenario_name = s.name;
  r.scenario_json = scenario_to_json(s);
  for (std::size_t i = 0; i < s.joints.size(); ++i) r.joints.push_back(run_joint(s.joints[i], s, i));
  return r;
}

Metrics compute_metrics(const JointSeries& js) {
  const auto n = js.e.size();
  if (n == 0) fail(Errc::invalid_argument, "metrics need a non-empty series");
  if (js.t.size() != n) fail(Errc::invalid_argument, "time and error series differ in length");
  Metrics m;
  double sq = 0.0;
  for (double e : js.e) {
    sq += e * e;
    m.max_abs_error = std::max(m.max_abs_error, std::abs(e));
  }
  m.mse = sq / static_cast<double>(n);
  m.rmse = std::sqrt(m.mse);

  const std::size_t tail = std::max<std::size_t>(1, (n + 9) / 10);
  double acc = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) acc += std::abs(js.e[i]);
  m.steady_state_error = acc / static_cast<double>(tail);

  std::size_t first_inside = n;
  for (std::size_t i = n; i-- > 0;) {
    if (std::abs(js.e[i]) > kSettleBand) break;
    first_inside = i;
  }
  m.settle_time = first_inside == n ? std::numeric_limits<double>::infinity() : js.t[first_inside] - js.t.front();
  return m;
}

void write_series_csv(const JointSeries& js, const std::filesystem::path& file) {
  std::string out = std::string(kSeriesHeader) + "\n";
  const std::size_t n = js.t.size();
  if (js.theta_d.size() != n || js.theta_meas.size() != n || js.u.size() != n || js.e.size() != n)
    fail(Errc::invalid_argument, "series columns differ in length for joint " + js.joint);
  for (std::size_t i = 0; i < n; ++i) {
    out += io::format_double(js.t[i]) + ',' + io::format_double(js.theta_d[i]) + ',' +
           io::format_double(js.theta_meas[i]) + ',' + io::format_double(js.u[i]) + ',' + io::format_double(js.e[i]) +
           '\n';
  }
  io::write_atomic(file, out);
}

JointSeries read_series_csv(const std::filesystem::path& file, const std::string& joint) {
  JointSeries js;
  js.joint = joint;
  for (const auto& row : io::read_numeric_csv(file, kSeriesHeader)) {
    js.t.push_back(row[0]);
    js.theta_d.push_back(row[1]);
    js.theta_meas.push_back(row[2]);
    js.u.push_back(row[3]);
    js.e.push_back(row[4]);
  }
  return js;
}

void export_csv(const SimResult& r, const std::filesystem::path& dir) {
  for (const auto& js : r.joints) write_series_csv(js, dir / (js.joint + ".csv"));
}

std::string render_svg(const SimResult& r) {
  constexpr double width = 900.0;
  constexpr double left = 70.0;
  constexpr double plot_w = width - left - 20.0;
  constexpr double angle_h = 200.0;
  constexpr double input_h = 110.0;
  constexpr double panel_h = 30.0 + angle_h + 30.0 + input_h + 40.0;
  const double height = std::max<double>(1.0, static_cast<double>(r.joints.size())) * panel_h + 20.0;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_coord(width) + "\" height=\"" + fmt_coord(height) +
       "\" viewBox=\"0 0 " + fmt_coord(width) + " " + fmt_coord(height) + "\" font-family=\"sans-serif\">\n";
  s += "<title>" + xml_escape(r.scenario_name) + "</title>\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  double y = 10.0;
  for (const auto& js : r.joints) {
    const Range tr = span_of({&js.t});
    const Range ar = span_of({&js.theta_d, &js.theta_meas});
    const Range ur = span_of({&js.u});
    s += "<g class=\"joint\" id=\"joint-" + xml_escape(js.joint) + "\">\n";
    s += "<text x=\"" + fmt_coord(left) + "\" y=\"" + fmt_coord(y + 18) + "\" font-size=\"14\">" +
         xml_escape(r.scenario_name + " / " + js.joint) +
         "  (theta_d dashed, theta_meas solid)</text>\n";
    const Box ab{left, y + 30.0, plot_w, angle_h};
    s += axes(ab, tr, ar, "rad");
    s += polyline(js.t, js.theta_d, tr, ar, ab, "#1f77b4", " stroke-dasharray=\"6 3\"");
    s += polyline(js.t, js.theta_meas, tr, ar, ab, "#d62728");
    const Box ub{left, ab.y0 + angle_h + 30.0, plot_w, input_h};
    s += axes(ub, tr, ur, "u %");
    s += polyline(js.t, js.u, tr, ur, ub, "#2ca02c");
    s += "</g>\n";
    y += panel_h;
  }
  s += "</svg>\n";
  return s;
}

void export_plot(const SimResult& r, const std::filesystem::path& file) {
  for (const auto& js : r.joints)
    if (js.t.empty()) fail(Errc::invalid_argument, "cannot plot an empty series for joint " + js.joint);
  io::write_atomic(file, render_svg(r));
}

std::string metrics_json(const SimResult& r) {
  json j;
  j["scenario"] = r.scenario_name;
  j["joints"] = json::object();
  for (const auto& js : r.joints) {
    const Metrics m = compute_metrics(js);
    json jm = {{"mse", m.mse},
               {"rmse", m.rmse},
               {"max_abs_error", m.max_abs_error},
               {"steady_state_error", m.steady_state_error},
               {"samples", js.t.size()},
               {"saturated_ticks", js.saturated_ticks},
               {"final_error", js.e.back()}};
    jm["settle_time"] = std::isfinite(m.settle_time) ? json(m.settle_time) : json(nullptr);
    j["joints"][js.joint] = jm;
  }
  return j.dump(2) + "\n";
}

void write_outputs(const SimResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(Errc::io, dir.string() + ": " + ec.message());
  export_csv(r, dir);
  export_plot(r, dir / "plot.svg");
  io::write_atomic(dir / "metrics.json", metrics_json(r));
  io::write_atomic(dir / "scenario.json", r.scenario_json);
}

Scenario teach_scenario(const TaughtTrajectory& tt, const std::string& joint, bool smooth, double dt) {
  Scenario s;
  s.name = "teach-repeat-" + joint;
  s.dt = dt;
  s.duration = std::max(tt.duration, dt);
  JointConfig jc = JointConfig::defaults(joint);
  jc.reference.kind = ReferenceSpec::Kind::taught;
  jc.reference.file = tt.source;
  jc.reference.smooth = smooth;
  jc.reference.taught = tt;
  s.joints.push_back(std::move(jc));
  s.validate();
  return s;
}

}  // namespace gpis
