// Copyright 2026 The cryomux Authors
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

#include "cryomux/chainmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cryomux/config.hpp"
#include "cryomux/constants.hpp"
#include "cryomux/error.hpp"

namespace cryomux::chain {

namespace {

constexpr std::array<RfPort, 4> kAllPorts{RfPort::RF1, RfPort::RF2, RfPort::RF3, RfPort::RF4};

double cubic_shape(const MuxModel& m, double v_dd) {
  if (v_dd <= m.v_threshold) return 0.0;
  const double over = v_dd - m.v_threshold;
  return over * over * over;
}

}  // namespace

std::string_view to_string(RfPort port) {
  switch (port) {
    case RfPort::RF1: return "RF1";
    case RfPort::RF2: return "RF2";
    case RfPort::RF3: return "RF3";
    case RfPort::RF4: return "RF4";
  }
  return "?";
}

RfPort parse_port(std::string_view name) {
  for (auto p : kAllPorts) {
    if (to_string(p) == name) return p;
  }
  throw ConfigError("unknown RF port '" + std::string(name) + "'");
}

PortMap::PortMap() : by_word_{RfPort::RF1, RfPort::RF2, RfPort::RF3, RfPort::RF4} {}

PortMap::PortMap(std::array<RfPort, 4> by_word) : by_word_(by_word) {
  std::array<int, 4> seen{};
  for (auto p : by_word_) ++seen[static_cast<std::size_t>(p)];
  if (std::any_of(seen.begin(), seen.end(), [](int n) { return n != 1; })) {
    throw ConfigError("port map must be a bijection onto RF1..RF4");
  }
}

ControlWord PortMap::word_for(RfPort port) const {
  for (std::size_t i = 0; i < by_word_.size(); ++i) {
    if (by_word_[i] == port) return ControlWord{(i & 2u) != 0, (i & 1u) != 0};
  }
  throw ConfigError("port not present in map");
}

MuxModel MuxModel::measured() { return MuxModel{}; }

MuxModel MuxModel::low_threshold_projection() {
  MuxModel m;
  m.v_threshold = 0.2;
  m.v_reference = 0.3;
  m.static_coeff = 30e-9 / 1e-3;
  // Same ESD share of static power as the measured device.
  m.esd_static = 30e-9 * (0.37 / 0.60);
  return m;
}

void MuxModel::validate() const {
  auto fail = [](const char* msg) { throw ConfigError(std::string("MuxModel: ") + msg); };
  if (!(v_threshold > 0.0)) fail("v_threshold must be > 0");
  if (!(v_reference > v_threshold)) fail("v_reference must exceed v_threshold");
  if (!(static_coeff >= 0.0)) fail("static_coeff must be >= 0");
  if (!(esd_static >= 0.0)) fail("esd_static must be >= 0");
  if (!(subthreshold_leakage >= 0.0)) fail("subthreshold_leakage must be >= 0");
  if (!(dyn_coeff > 0.0)) fail("dyn_coeff must be > 0");
  if (!(dyn_coeff_serial >= 0.0 && dyn_coeff_serial < dyn_coeff)) {
    fail("dyn_coeff_serial must lie in [0, dyn_coeff)");
  }
  if (!(isolation_db >= 0.0)) fail("isolation_db must be >= 0");
  if (!(insertion_loss_db >= 0.0)) fail("insertion_loss_db must be >= 0");
  if (!(rise_time >= 0.0)) fail("rise_time must be >= 0");
  PortMap check(port_map.table());
  (void)check;
}

double MuxModel::floor_amplitude() const { return constants::db_to_amplitude_ratio(isolation_db); }

double MuxModel::insertion_amplitude() const {
  return constants::db_to_amplitude_ratio(insertion_loss_db);
}

double static_power(const MuxModel& model, double v_dd) {
  if (!(v_dd >= 0.0)) throw DomainError("static_power: v_dd must be >= 0");
  return model.subthreshold_leakage + model.static_coeff * cubic_shape(model, v_dd);
}

StaticPowerBreakdown static_power_breakdown(const MuxModel& model, double v_dd) {
  StaticPowerBreakdown out;
  out.total = static_power(model, v_dd);
  const double ref = cubic_shape(model, model.v_reference);
  out.esd = ref > 0.0 ? model.esd_static * cubic_shape(model, v_dd) / ref : 0.0;
  out.core = out.total - out.esd;
  return out;
}

double dynamic_power(const MuxModel& model, double switch_rate, double v_dd, DynamicMode mode) {
  if (!(switch_rate >= 0.0)) throw DomainError("dynamic_power: switch_rate must be >= 0");
  const double coeff = mode == DynamicMode::parallel ? model.dyn_coeff : model.dyn_coeff_serial;
  return coeff * v_dd * v_dd * switch_rate;
}

// ---------------------------------------------------------------------------

MuxDigitalState MuxDigitalState::power_on(const PortMap& map, ProgrammingMode mode) {
  MuxDigitalState s;
  s.mode = mode;
  s.ps = mode == ProgrammingMode::serial;
  s.le = mode == ProgrammingMode::parallel;
  s.selected_port = map.lookup(ControlWord{});
  return s;
}

bool MuxDigitalState::rf_active(const MuxModel& model) const {
  if (mode == ProgrammingMode::parallel && !chip_selected) return !model.le_low_all_off;
  return true;
}

MuxDigitalState set_programming_select(MuxDigitalState state, bool ps, const PortMap& map) {
  state.ps = ps;
  if (ps) {
    state.mode = ProgrammingMode::serial;
    state.chip_selected = true;
    state.selected_port = map.lookup(state.latched_word);
  } else {
    state.mode = ProgrammingMode::parallel;
    state.shift_register = {};
    state.latched_word = {};
    state.chip_selected = state.le;
    state.selected_port = map.lookup(state.parallel_word);
  }
  return state;
}

SerialFrame SerialFrame::for_bits(const std::vector<bool>& bits, bool pulse_le) {
  SerialFrame f;
  for (bool b : bits) {
    f.clk.push_back(false);
    f.serin.push_back(b);
    f.clk.push_back(true);
    f.serin.push_back(b);
  }
  if (pulse_le && !f.clk.empty()) f.le_rise_after = f.clk.size() - 1;
  return f;
}

SerialFrame SerialFrame::for_port(const PortMap& map, RfPort port, bool pulse_le) {
  const ControlWord w = map.word_for(port);
  return for_bits({w.d1, w.d0}, pulse_le);
}

MuxDigitalState program_serial(MuxDigitalState state, const SerialFrame& frame, const PortMap& map) {
  if (frame.clk.size() != frame.serin.size()) {
    throw ProtocolError("program_serial: CLK and SERIN streams differ in length");
  }
  if (frame.le_rise_after && *frame.le_rise_after >= frame.clk.size()) {
    throw ProtocolError("program_serial: LE pulse outside the sampled stream");
  }
  if (!state.ps) {
    if (frame.le_rise_after) throw ModeError("program_serial: LE pulse while PS is low");
    // Sequential logic is held in reset in parallel mode.
    return state;
  }
  for (std::size_t i = 0; i < frame.clk.size(); ++i) {
    if (frame.clk[i] && !state.clk) {
      state.shift_register[0] = state.shift_register[1];
      state.shift_register[1] = frame.serin[i];
    }
    state.clk = frame.clk[i];
    if (frame.le_rise_after == i) {
      state.latched_word = ControlWord{state.shift_register[0], state.shift_register[1]};
      state.selected_port = map.lookup(state.latched_word);
    }
  }
  return state;
}

MuxDigitalState program_parallel(MuxDigitalState state, bool d1, bool d0, bool le,
                                 const PortMap& map) {
  if (state.ps || state.mode != ProgrammingMode::parallel) {
    throw ModeError("program_parallel: PS must be low");
  }
  state.parallel_word = ControlWord{d1, d0};
  state.le = le;
  state.chip_selected = le;
  if (le) state.selected_port = map.lookup(state.parallel_word);
  return state;
}

// ---------------------------------------------------------------------------

GatingSchedule GatingSchedule::for_model(const MuxModel& model, RfPort initial_port,
                                         std::vector<GateEvent> events) {
  GatingSchedule s;
  s.initial_port = initial_port;
  s.events = std::move(events);
  s.floor_amplitude = model.floor_amplitude();
  s.validate();
  return s;
}

GatingSchedule GatingSchedule::window(const MuxModel& model, RfPort target, RfPort idle_port,
                                      double start, double stop) {
  if (!(stop >= start)) throw ConfigError("gating window must have stop >= start");
  std::vector<GateEvent> ev;
  if (stop > start) ev = {{start, target}, {stop, idle_port}};
  return for_model(model, idle_port, std::move(ev));
}

void GatingSchedule::validate() const {
  if (!(floor_amplitude > 0.0 && floor_amplitude <= 1.0)) {
    throw ConfigError("GatingSchedule: floor_amplitude must lie in (0, 1]");
  }
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (!(events[i].time > events[i - 1].time)) {
      throw ConfigError("GatingSchedule: event times must be strictly increasing");
    }
  }
}

std::vector<double> GatingSchedule::breakpoints() const {
  std::vector<double> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.time);
  return out;
}

double gating_envelope(const GatingSchedule& schedule, RfPort target, double t, double rise_time) {
  // x is the open fraction of the target path; it relaxes toward 1 while the
  // target is selected and toward 0 otherwise.
  double x = schedule.initial_port == target ? 1.0 : 0.0;
  if (rise_time <= 0.0) {
    for (const auto& e : schedule.events) {
      if (e.time > t) break;
      x = e.port == target ? 1.0 : 0.0;
    }
  } else {
    const double tau = rise_time / std::log(9.0);
    double goal = x;
    double last = -std::numeric_limits<double>::infinity();
    for (const auto& e : schedule.events) {
      if (e.time > t) break;
      if (std::isfinite(last)) x = goal + (x - goal) * std::exp(-(e.time - last) / tau);
      goal = e.port == target ? 1.0 : 0.0;
      last = e.time;
    }
    if (std::isfinite(last)) x = goal + (x - goal) * std::exp(-(t - last) / tau);
  }
  const double floor = schedule.floor_amplitude;
  return floor + (1.0 - floor) * x;
}

// ---------------------------------------------------------------------------

std::int64_t qubit_capacity(const CoolingBudget& budget) {
  if (!(budget.cooling_power > 0.0 && budget.per_channel_power > 0.0)) {
    throw DomainError("qubit_capacity: powers must be strictly positive");
  }
  // Round first so 20 uW / 0.2 uW is not truncated to 99 by representation error.
  const double ratio = budget.cooling_power / budget.per_channel_power;
  auto n = static_cast<std::int64_t>(std::llround(ratio));
  const double slack = 1.0 + 8.0 * std::numeric_limits<double>::epsilon();
  while (n > 0 && static_cast<double>(n) * budget.per_channel_power > budget.cooling_power * slack) {
    --n;
  }
  return n;
}

double required_channel_power(double cooling_power, double qubit_count) {
  if (!(cooling_power > 0.0 && qubit_count > 0.0)) {
    throw DomainError("required_channel_power: arguments must be strictly positive");
  }
  return cooling_power / qubit_count;
}

// ---------------------------------------------------------------------------

MuxModel mux_model_from_json(const nlohmann::json& j) {
  namespace cfg = config;
  cfg::require_object(j, "mux");
  cfg::allow_only(j,
                  {"preset", "v_threshold_v", "v_reference_v", "static_coeff_w_per_v3",
                   "static_anchor_w", "esd_static_w", "subthreshold_leakage_w",
                   "dyn_coeff_j_per_v2", "dyn_coeff_serial_j_per_v2", "isolation_db",
                   "insertion_loss_db", "rise_time_s", "port_map", "le_low_all_off"},
                  "mux");
  const std::string preset = cfg::string(j, "preset", "measured");
  MuxModel m;
  if (preset == "measured") {
    m = MuxModel::measured();
  } else if (preset == "low_threshold") {
    m = MuxModel::low_threshold_projection();
  } else {
    throw ConfigError("mux: unknown preset '" + preset + "'");
  }
  m.v_threshold = cfg::number(j, "v_threshold_v", m.v_threshold);
  m.v_reference = cfg::number(j, "v_reference_v", m.v_reference);
  m.subthreshold_leakage = cfg::number(j, "subthreshold_leakage_w", m.subthreshold_leakage);
  m.static_coeff = cfg::number(j, "static_coeff_w_per_v3", m.static_coeff);
  if (j.contains("static_anchor_w")) {
    if (j.contains("static_coeff_w_per_v3")) {
      throw ConfigError("mux: give either static_coeff_w_per_v3 or static_anchor_w");
    }
    const double anchor = cfg::required_number(j, "static_anchor_w");
    const double over = m.v_reference - m.v_threshold;
    if (!(over > 0.0)) throw ConfigError("mux: v_reference must exceed v_threshold");
    m.static_coeff = (anchor - m.subthreshold_leakage) / (over * over * over);
  }
  m.esd_static = cfg::number(j, "esd_static_w", m.esd_static);
  m.dyn_coeff = cfg::number(j, "dyn_coeff_j_per_v2", m.dyn_coeff);
  m.dyn_coeff_serial = cfg::number(j, "dyn_coeff_serial_j_per_v2", m.dyn_coeff_serial);
  m.isolation_db = cfg::number(j, "isolation_db", m.isolation_db);
  m.insertion_loss_db = cfg::number(j, "insertion_loss_db", m.insertion_loss_db);
  m.rise_time = cfg::number(j, "rise_time_s", m.rise_time);
  m.le_low_all_off = cfg::boolean(j, "le_low_all_off", m.le_low_all_off);
  if (auto it = j.find("port_map"); it != j.end()) {
    cfg::require_object(*it, "mux.port_map");
    cfg::allow_only(*it, {"00", "01", "10", "11"}, "mux.port_map");
    std::array<RfPort, 4> table = m.port_map.table();
    const char* keys[] = {"00", "01", "10", "11"};
    for (std::size_t i = 0; i < 4; ++i) {
      if (it->contains(keys[i])) table[i] = parse_port(cfg::string(*it, keys[i], ""));
    }
    m.port_map = PortMap(table);
  }
  m.validate();
  return m;
}

nlohmann::json to_json(const MuxModel& m) {
  nlohmann::json pm;
  const char* keys[] = {"00", "01", "10", "11"};
  for (std::size_t i = 0; i < 4; ++i) pm[keys[i]] = std::string(to_string(m.port_map.table()[i]));
  return {{"v_threshold_v", m.v_threshold},
          {"v_reference_v", m.v_reference},
          {"static_coeff_w_per_v3", m.static_coeff},
          {"esd_static_w", m.esd_static},
          {"subthreshold_leakage_w", m.subthreshold_leakage},
          {"dyn_coeff_j_per_v2", m.dyn_coeff},
          {"dyn_coeff_serial_j_per_v2", m.dyn_coeff_serial},
          {"isolation_db", m.isolation_db},
          {"insertion_loss_db", m.insertion_loss_db},
          {"rise_time_s", m.rise_time},
          {"port_map", pm},
          {"le_low_all_off", m.le_low_all_off}};
}

GatingSchedule gating_schedule_from_json(const nlohmann::json& j, const MuxModel& model) {
  namespace cfg = config;
  cfg::require_object(j, "schedule");
  cfg::allow_only(j, {"initial_port", "events", "floor_amplitude"}, "schedule");
  GatingSchedule s;
  s.initial_port = parse_port(cfg::string(j, "initial_port", "RF1"));
  s.floor_amplitude = cfg::number(j, "floor_amplitude", model.floor_amplitude());
  if (auto it = j.find("events"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("schedule.events must be an array");
    for (const auto& e : *it) {
      cfg::require_object(e, "schedule event");
      cfg::allow_only(e, {"time_s", "port"}, "schedule event");
      s.events.push_back({cfg::required_number(e, "time_s"), parse_port(cfg::string(e, "port", ""))});
    }
  }
  s.validate();
  return s;
}

}  // namespace cryomux::chain
