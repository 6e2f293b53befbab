// Copyright 2026 The secobs Authors.
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

#include "secobs/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace secobs {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) {
    fail(path.empty() ? "<root>" : path, "expected an object");
  }
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                [&](const char* k) { return item.key() == k; });
    if (!ok) {
      fail(join(path, item.key()), "unknown key");
    }
  }
}

const json* find(const json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) {
    fail(path, "expected a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    fail(path, "number is not finite");
  }
  return d;
}

double get_double(const json& j, const char* key, const std::string& path, double dflt) {
  const json* v = find(j, key);
  return v ? number(*v, join(path, key)) : dflt;
}

long long integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) {
    fail(path, "expected an integer");
  }
  return v.get<long long>();
}

int get_int(const json& j, const char* key, const std::string& path, int dflt) {
  const json* v = find(j, key);
  if (v == nullptr) {
    return dflt;
  }
  const long long x = integer(*v, join(path, key));
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    fail(join(path, key), "integer out of range");
  }
  return static_cast<int>(x);
}

std::string get_string(const json& j, const char* key, const std::string& path,
                       const std::string& dflt) {
  const json* v = find(j, key);
  if (v == nullptr) {
    return dflt;
  }
  if (!v->is_string()) {
    fail(join(path, key), "expected a string");
  }
  return v->get<std::string>();
}

Vector to_vector(const json& v, const std::string& path) {
  if (!v.is_array()) {
    fail(path, "expected an array of numbers");
  }
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = number(v[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

/// Row-major array of rows. `cols_if_empty` sizes an empty matrix.
Matrix to_matrix(const json& v, const std::string& path, Eigen::Index rows_if_empty = 0) {
  if (!v.is_array()) {
    fail(path, "expected an array of rows");
  }
  if (v.empty()) {
    return Matrix(rows_if_empty, 0);
  }
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  Matrix out(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) {
      fail(rp, "expected a row array");
    }
    if (v[i].size() != cols) {
      fail(rp, "row has " + std::to_string(v[i].size()) + " entries, expected " +
                   std::to_string(cols));
    }
    for (std::size_t k = 0; k < cols; ++k) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          number(v[i][k], rp + "[" + std::to_string(k) + "]");
    }
  }
  return out;
}

json from_matrix(const Matrix& m) {
  json rows = json::array();
  if (m.cols() == 0) {
    return rows;
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(m(i, k));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json from_vector(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v(i));
  }
  return out;
}

SupportSet to_support(const json& v, const std::string& path) {
  if (!v.is_array()) {
    fail(path, "expected an array of sensor indices");
  }
  std::vector<int> idx;
  for (std::size_t i = 0; i < v.size(); ++i) {
    idx.push_back(static_cast<int>(integer(v[i], path + "[" + std::to_string(i) + "]")));
  }
  try {
    return SupportSet(std::move(idx));
  } catch (const UsageError& e) {
    fail(path, e.what());
  }
}

json from_support(const SupportSet& s) { return json(s.indices()); }

// Indented output with arrays of scalars (and matrices of them) kept on
// one line per row.
bool scalar_array(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
}

void dump_pretty(std::ostream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t k = 0;
    for (const auto& item : j.items()) {
      os << inner << json(item.key()).dump() << ": ";
      dump_pretty(os, item.value(), indent + 2);
      os << (++k < j.size() ? ",\n" : "\n");
    }
    os << pad << "}";
  } else if (scalar_array(j)) {
    os << j.dump();
  } else if (j.is_array()) {
    os << "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      os << inner;
      dump_pretty(os, j[k], indent + 2);
      os << (k + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "]";
  } else {
    os << j.dump();
  }
}

std::string to_text(const json& j) {
  std::ostringstream os;
  dump_pretty(os, j, 0);
  os << "\n";
  return os.str();
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line =
        1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    std::string msg = e.what();
    throw ParseError("line " + std::to_string(line) + ": " + msg);
  }
}

// ---------------------------------------------------------------------------
// Systems

UgvParams to_ugv(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, path, {"mass", "inertia", "friction", "rot_friction", "sample_period"});
  UgvParams p;
  p.mass = get_double(j, "mass", path, p.mass);
  p.inertia = get_double(j, "inertia", path, p.inertia);
  p.friction = get_double(j, "friction", path, p.friction);
  p.rot_friction = get_double(j, "rot_friction", path, p.rot_friction);
  p.sample_period = get_double(j, "sample_period", path, p.sample_period);
  return p;
}

json from_ugv(const UgvParams& p) {
  return json{{"mass", p.mass},
              {"inertia", p.inertia},
              {"friction", p.friction},
              {"rot_friction", p.rot_friction},
              {"sample_period", p.sample_period}};
}

SystemFile to_system(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, path, {"A", "B", "C", "ugv", "sensor_groups"});
  std::optional<UgvParams> ugv;
  std::optional<LtiSystem> sys;
  if (const json* u = find(j, "ugv")) {
    if (find(j, "A") || find(j, "B") || find(j, "C")) {
      fail(join(path, "ugv"), "give either ugv parameters or A/B/C, not both");
    }
    ugv = to_ugv(*u, join(path, "ugv"));
    try {
      sys.emplace(ugv_system(*ugv));
    } catch (const UsageError& e) {
      fail(join(path, "ugv"), e.what());
    }
  } else {
    const json* a = find(j, "A");
    const json* c = find(j, "C");
    if (a == nullptr || c == nullptr) {
      fail(path.empty() ? "<root>" : path, "missing A or C");
    }
    Matrix am = to_matrix(*a, join(path, "A"));
    Matrix cm = to_matrix(*c, join(path, "C"));
    Matrix bm(am.rows(), 0);
    if (const json* b = find(j, "B")) {
      bm = to_matrix(*b, join(path, "B"), am.rows());
    }
    try {
      sys.emplace(am, bm, cm);
    } catch (const UsageError& e) {
      fail(path.empty() ? "<root>" : path, e.what());
    }
  }
  SystemFile out{*sys, ugv, {}};
  if (const json* g = find(j, "sensor_groups")) {
    const std::string gp = join(path, "sensor_groups");
    if (!g->is_array()) {
      fail(gp, "expected an array of sensor index arrays");
    }
    for (std::size_t i = 0; i < g->size(); ++i) {
      const std::string ip = gp + "[" + std::to_string(i) + "]";
      SupportSet s = to_support((*g)[i], ip);
      try {
        s.check_bound(out.sys.p());
      } catch (const UsageError& e) {
        fail(ip, e.what());
      }
      out.sensor_groups.push_back(std::move(s));
    }
  }
  return out;
}

json from_system(const LtiSystem& sys, const std::optional<UgvParams>& ugv,
                 const std::vector<SupportSet>& groups) {
  json j = json::object();
  if (ugv) {
    j["ugv"] = from_ugv(*ugv);
  } else {
    j["A"] = from_matrix(sys.A());
    j["B"] = from_matrix(sys.B());
    j["C"] = from_matrix(sys.C());
  }
  if (!groups.empty()) {
    json g = json::array();
    for (const auto& s : groups) {
      g.push_back(from_support(s));
    }
    j["sensor_groups"] = g;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Scenarios

template <typename E>
E parse_enum(const std::string& text, const std::string& path, E (*conv)(const std::string&)) {
  try {
    return conv(text);
  } catch (const UsageError& e) {
    fail(path, e.what());
  }
}

EtpgMode etpg_mode_from(const std::string& s) {
  if (s == "gradient") return EtpgMode::gradient;
  if (s == "pseudoinverse") return EtpgMode::one_step_pseudoinverse;
  throw UsageError("unknown etpg mode '" + s + "'");
}

GainMode gain_mode_from(const std::string& s) {
  if (s == "q_transpose_sigma") return GainMode::q_transpose_sigma;
  if (s == "pseudoinverse") return GainMode::pseudoinverse;
  throw UsageError("unknown etpl gain '" + s + "'");
}

EtpgConfig to_etpg(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, path, {"eta", "eps_terminate", "max_outer", "max_inner", "mode", "trace_inner"});
  EtpgConfig c;
  c.eta = get_double(j, "eta", path, c.eta);
  c.eps_terminate = get_double(j, "eps_terminate", path, c.eps_terminate);
  c.max_outer = get_int(j, "max_outer", path, c.max_outer);
  c.max_inner = get_int(j, "max_inner", path, c.max_inner);
  c.mode = parse_enum(get_string(j, "mode", path, "gradient"), join(path, "mode"), etpg_mode_from);
  if (const json* t = find(j, "trace_inner")) {
    if (!t->is_boolean()) {
      fail(join(path, "trace_inner"), "expected true or false");
    }
    c.trace_inner = t->get<bool>();
  }
  return c;
}

json from_etpg(const EtpgConfig& c) {
  return json{{"eta", c.eta},
              {"eps_terminate", c.eps_terminate},
              {"max_outer", c.max_outer},
              {"max_inner", c.max_inner},
              {"mode", c.mode == EtpgMode::gradient ? "gradient" : "pseudoinverse"},
              {"trace_inner", c.trace_inner}};
}

EtplConfig to_etpl(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, path,
             {"gain", "sigma", "eps_equal", "max_inner", "max_meas_rounds", "v_floor"});
  EtplConfig c;
  c.gain_mode =
      parse_enum(get_string(j, "gain", path, "q_transpose_sigma"), join(path, "gain"), gain_mode_from);
  c.sigma = get_double(j, "sigma", path, c.sigma);
  c.eps_equal = get_double(j, "eps_equal", path, c.eps_equal);
  c.max_inner = get_int(j, "max_inner", path, c.max_inner);
  c.max_meas_rounds = get_int(j, "max_meas_rounds", path, c.max_meas_rounds);
  c.v_floor = get_double(j, "v_floor", path, c.v_floor);
  return c;
}

json from_etpl(const EtplConfig& c) {
  return json{{"gain", c.gain_mode == GainMode::pseudoinverse ? "pseudoinverse" : "q_transpose_sigma"},
              {"sigma", c.sigma},
              {"eps_equal", c.eps_equal},
              {"max_inner", c.max_inner},
              {"max_meas_rounds", c.max_meas_rounds},
              {"v_floor", c.v_floor}};
}

OracleConfig to_oracle(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, path, {"residual_rel_tol", "ambiguity_tol", "guard"});
  OracleConfig c;
  c.residual_rel_tol = get_double(j, "residual_rel_tol", path, c.residual_rel_tol);
  c.ambiguity_tol = get_double(j, "ambiguity_tol", path, c.ambiguity_tol);
  if (const json* g = find(j, "guard")) {
    const long long v = integer(*g, join(path, "guard"));
    if (v < 1) {
      fail(join(path, "guard"), "must be positive");
    }
    c.guard = static_cast<std::uint64_t>(v);
  }
  return c;
}

json from_oracle(const OracleConfig& c) {
  return json{{"residual_rel_tol", c.residual_rel_tol},
              {"ambiguity_tol", c.ambiguity_tol},
              {"guard", c.guard}};
}

EstimatorSpec to_estimator(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, path, {"kind", "s", "attackable", "etpg", "etpl", "oracle"});
  EstimatorSpec e;
  e.kind = parse_enum(get_string(j, "kind", path, "etpg"), join(path, "kind"),
                      estimator_kind_from_string);
  e.s = get_int(j, "s", path, 0);
  if (const json* v = find(j, "attackable")) e.attackable = to_support(*v, join(path, "attackable"));
  if (const json* v = find(j, "etpg")) e.etpg = to_etpg(*v, join(path, "etpg"));
  if (const json* v = find(j, "etpl")) e.etpl = to_etpl(*v, join(path, "etpl"));
  if (const json* v = find(j, "oracle")) e.oracle = to_oracle(*v, join(path, "oracle"));
  return e;
}

json from_estimator(const EstimatorSpec& e) {
  return json{{"kind", to_string(e.kind)},
              {"s", e.s},
              {"attackable", from_support(e.attackable)},
              {"etpg", from_etpg(e.etpg)},
              {"etpl", from_etpl(e.etpl)},
              {"oracle", from_oracle(e.oracle)}};
}

AttackPolicy to_attack(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, path,
             {"kind", "schedule", "noise_scale", "level", "slope", "delay", "declared_s"});
  AttackPolicy a;
  a.kind = parse_enum(get_string(j, "kind", path, "none"), join(path, "kind"),
                      attack_kind_from_string);
  a.noise_scale = get_double(j, "noise_scale", path, a.noise_scale);
  a.level = get_double(j, "level", path, a.level);
  a.slope = get_double(j, "slope", path, a.slope);
  a.delay = get_int(j, "delay", path, a.delay);
  a.declared_s = get_int(j, "declared_s", path, a.declared_s);
  if (const json* s = find(j, "schedule")) {
    const std::string sp = join(path, "schedule");
    if (!s->is_array()) {
      fail(sp, "expected an array of intervals");
    }
    for (std::size_t i = 0; i < s->size(); ++i) {
      const std::string ip = sp + "[" + std::to_string(i) + "]";
      const json& iv = (*s)[i];
      require_object(iv, ip);
      check_keys(iv, ip, {"start", "end", "sensors"});
      const json* sens = find(iv, "sensors");
      if (sens == nullptr) {
        fail(ip, "missing sensors");
      }
      a.schedule.push_back({get_int(iv, "start", ip, 0), get_int(iv, "end", ip, 0),
                            to_support(*sens, join(ip, "sensors"))});
    }
  }
  return a;
}

json from_attack(const AttackPolicy& a) {
  json sched = json::array();
  for (const auto& iv : a.schedule) {
    sched.push_back(json{{"start", iv.start}, {"end", iv.end}, {"sensors", from_support(iv.sensors)}});
  }
  return json{{"kind", to_string(a.kind)}, {"schedule", sched},      {"noise_scale", a.noise_scale},
              {"level", a.level},          {"slope", a.slope},       {"delay", a.delay},
              {"declared_s", a.declared_s}};
}

ReferenceSpec to_reference(const json& j, const std::string& path) {
  require_object(j, path);
  check_keys(j, path, {"kind", "value", "side", "move_steps", "rotate_steps", "legs"});
  ReferenceSpec r;
  const std::string kind = get_string(j, "kind", path, "constant");
  if (kind == "constant") {
    r.kind = ReferenceSpec::Kind::constant;
  } else if (kind == "ugv_square") {
    r.kind = ReferenceSpec::Kind::ugv_square;
  } else {
    fail(join(path, "kind"), "unknown reference kind '" + kind + "'");
  }
  if (const json* v = find(j, "value")) r.value = to_vector(*v, join(path, "value"));
  r.side = get_double(j, "side", path, r.side);
  r.move_steps = get_int(j, "move_steps", path, r.move_steps);
  r.rotate_steps = get_int(j, "rotate_steps", path, r.rotate_steps);
  r.legs = get_int(j, "legs", path, r.legs);
  if (r.move_steps < 1 || r.rotate_steps < 1 || r.legs < 1) {
    fail(path, "move_steps, rotate_steps and legs must be positive");
  }
  return r;
}

json from_reference(const ReferenceSpec& r) {
  return json{{"kind", r.kind == ReferenceSpec::Kind::constant ? "constant" : "ugv_square"},
              {"value", from_vector(r.value)},
              {"side", r.side},
              {"move_steps", r.move_steps},
              {"rotate_steps", r.rotate_steps},
              {"legs", r.legs}};
}

ControllerSpec to_controller(const json& j, const std::string& path,
                             const std::optional<UgvParams>& ugv) {
  require_object(j, path);
  check_keys(j, path, {"kind", "K", "reference"});
  ControllerSpec c;
  const std::string kind = get_string(j, "kind", path, "none");
  if (kind == "none") {
    c.kind = ControllerSpec::Kind::none;
  } else if (kind == "state_feedback") {
    c.kind = ControllerSpec::Kind::state_feedback;
  } else {
    fail(join(path, "kind"), "unknown controller kind '" + kind + "'");
  }
  if (const json* k = find(j, "K")) {
    if (k->is_string()) {
      if (k->get<std::string>() != "ugv_default" || !ugv) {
        fail(join(path, "K"), "\"ugv_default\" is the only named gain and needs a ugv system");
      }
      c.K = ugv_feedback_gain(*ugv);
    } else {
      c.K = to_matrix(*k, join(path, "K"));
    }
  }
  if (const json* r = find(j, "reference")) c.reference = to_reference(*r, join(path, "reference"));
  return c;
}

json from_controller(const ControllerSpec& c) {
  return json{{"kind", c.kind == ControllerSpec::Kind::none ? "none" : "state_feedback"},
              {"K", from_matrix(c.K)},
              {"reference", from_reference(c.reference)}};
}

}  // namespace

SystemFile parse_system(const std::string& text) { return to_system(parse_json_text(text), ""); }

std::string format_system(const SystemFile& f) {
  return to_text(from_system(f.sys, f.ugv, f.sensor_groups));
}

SystemFile read_system_file(const std::string& path) {
  try {
    return parse_system(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Scenario parse_scenario(const std::string& text) {
  const json j = parse_json_text(text);
  require_object(j, "");
  check_keys(j, "", {"system", "tau", "horizon", "x0", "controller", "attack", "noise_std",
                     "estimator", "seed"});
  const json* sj = find(j, "system");
  if (sj == nullptr) {
    fail("<root>", "missing system");
  }
  SystemFile sf = to_system(*sj, "system");
  Scenario sc(sf.sys);
  sc.ugv = sf.ugv;
  sc.tau = get_int(j, "tau", "", sc.sys.n());
  sc.horizon = get_int(j, "horizon", "", 1);
  sc.x0 = Vector::Zero(sc.sys.n());
  if (const json* v = find(j, "x0")) sc.x0 = to_vector(*v, "x0");
  if (const json* v = find(j, "controller")) sc.controller = to_controller(*v, "controller", sc.ugv);
  if (const json* v = find(j, "attack")) sc.attack = to_attack(*v, "attack");
  if (const json* v = find(j, "noise_std")) sc.noise_std = to_vector(*v, "noise_std");
  if (const json* v = find(j, "estimator")) sc.estimator = to_estimator(*v, "estimator");
  if (const json* v = find(j, "seed")) {
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
      fail("seed", "expected a non-negative integer");
    }
    sc.seed = v->get<std::uint64_t>();
  }
  try {
    sc.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const UsageError& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  return sc;
}

std::string format_scenario(const Scenario& sc) {
  json j{{"system", from_system(sc.sys, sc.ugv, {})},
         {"tau", sc.tau},
         {"horizon", sc.horizon},
         {"x0", from_vector(sc.x0)},
         {"controller", from_controller(sc.controller)},
         {"attack", from_attack(sc.attack)},
         {"noise_std", from_vector(sc.noise_std)},
         {"estimator", from_estimator(sc.estimator)},
         {"seed", sc.seed}};
  return to_text(j);
}

Scenario read_scenario_file(const std::string& path) {
  try {
    return parse_scenario(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// CSV

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("not a number: '" + s + "'");
  }
  return v;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

long long parse_int(const std::string& s, std::size_t line) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(line) + ": not an integer: '" + s + "'");
  }
  return v;
}

int count_prefix(const std::vector<std::string>& header, const std::string& prefix) {
  int k = 0;
  for (const auto& h : header) {
    if (h.rfind(prefix, 0) == 0) ++k;
  }
  return k;
}

bool same_value(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

bool same_vec(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!same_value(a(i), b(i))) return false;
  }
  return true;
}

}  // namespace

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows, int n, int p) {
  os << "t";
  for (const char* name : {"x_true", "x_hat"}) {
    for (int i = 0; i < n; ++i) os << ',' << name << '_' << i;
  }
  for (const char* name : {"a_true", "a_hat"}) {
    for (int i = 0; i < p; ++i) os << ',' << name << '_' << i;
  }
  os << ",v_lyap,inner_iters,step_wall_ns\n";
  for (const auto& r : rows) {
    if (r.x_true.size() != n || r.x_hat.size() != n || r.a_true.size() != p ||
        r.a_hat.size() != p) {
      throw UsageError("write_trace_csv: row dimensions do not match header");
    }
    os << r.t;
    for (const Vector* v : {&r.x_true, &r.x_hat, &r.a_true, &r.a_hat}) {
      for (Eigen::Index i = 0; i < v->size(); ++i) os << ',' << format_double((*v)(i));
    }
    os << ',' << format_double(r.v_lyap) << ',' << r.inner_iters << ',' << r.step_wall_ns << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& is, int& n, int& p) {
  std::string line;
  if (!std::getline(is, line)) {
    throw ParseError("trace: empty input");
  }
  const auto header = split_csv(line);
  n = count_prefix(header, "x_true_");
  p = count_prefix(header, "a_true_");
  const std::size_t width = 1 + 2 * static_cast<std::size_t>(n + p) + 3;
  if (header.size() != width || header.front() != "t" || header.back() != "step_wall_ns") {
    throw ParseError("trace line 1: unexpected header");
  }
  std::vector<TraceRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != width) {
      throw ParseError("trace line " + std::to_string(lineno) + ": expected " +
                       std::to_string(width) + " columns, got " + std::to_string(cells.size()));
    }
    TraceRow r;
    std::size_t c = 0;
    r.t = static_cast<int>(parse_int(cells[c++], lineno));
    auto read_vec = [&](int len) {
      Vector v(len);
      for (int i = 0; i < len; ++i) {
        try {
          v(i) = parse_double(cells[c++]);
        } catch (const ParseError& e) {
          throw ParseError("trace line " + std::to_string(lineno) + ": " + e.what());
        }
      }
      return v;
    };
    r.x_true = read_vec(n);
    r.x_hat = read_vec(n);
    r.a_true = read_vec(p);
    r.a_hat = read_vec(p);
    r.v_lyap = read_vec(1)(0);
    r.inner_iters = parse_int(cells[c++], lineno);
    r.step_wall_ns = parse_int(cells[c++], lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

bool same_trace(const std::vector<TraceRow>& a, const std::vector<TraceRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& x = a[k];
    const auto& y = b[k];
    if (x.t != y.t || !same_vec(x.x_true, y.x_true) || !same_vec(x.x_hat, y.x_hat) ||
        !same_vec(x.a_true, y.a_true) || !same_vec(x.a_hat, y.a_hat) ||
        !same_value(x.v_lyap, y.v_lyap) || x.inner_iters != y.inner_iters ||
        x.step_wall_ns != y.step_wall_ns) {
      return false;
    }
  }
  return true;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "s,algo,mean_exec_ns,mean_conv_ns,mean_conv_compute_ns,success_rate,mean_outer,mean_inner,runs\n";
  for (const auto& r : rows) {
    os << r.s << ',' << r.algo << ',' << format_double(r.mean_exec_ns) << ','
       << format_double(r.mean_conv_ns) << ',' << format_double(r.mean_conv_compute_ns) << ',' << format_double(r.success_rate) << ','
       << format_double(r.mean_outer) << ',' << format_double(r.mean_inner) << ',' << r.runs
       << '\n';
  }
}

std::vector<BenchRow> read_bench_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) ||
      line != "s,algo,mean_exec_ns,mean_conv_ns,mean_conv_compute_ns,success_rate,mean_outer,mean_inner,runs") {
    throw ParseError("bench line 1: unexpected header");
  }
  std::vector<BenchRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c = split_csv(line);
    if (c.size() != 9) {
      throw ParseError("bench line " + std::to_string(lineno) + ": expected 9 columns");
    }
    try {
      rows.push_back(BenchRow{static_cast<int>(parse_int(c[0], lineno)), c[1], parse_double(c[2]),
                              parse_double(c[3]), parse_double(c[4]), parse_double(c[5]),
                              parse_double(c[6]), parse_double(c[7]),
                              static_cast<int>(parse_int(c[8], lineno))});
    } catch (const ParseError& e) {
      throw ParseError("bench line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw UsageError("cannot write '" + path + "'");
  }
  out << text;
  if (!out) {
    throw UsageError("write to '" + path + "' failed");
  }
}

}  // namespace secobs
