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

#pragma once

// Behavioral model of the SP4T cryo-CMOS multiplexer: digital programming
// (serial shift-register/latch and parallel combinational paths), port
// gating envelopes, RF transfer and static/dynamic power.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cryomux::chain {

enum class RfPort : std::uint8_t { RF1 = 0, RF2 = 1, RF3 = 2, RF4 = 3 };

std::string_view to_string(RfPort port);
RfPort parse_port(std::string_view name);

// Two-bit control word (D1, D0). Index into the port map is 2*D1 + D0.
struct ControlWord {
  bool d1 = false;
  bool d0 = false;

  constexpr std::size_t index() const { return (d1 ? 2u : 0u) + (d0 ? 1u : 0u); }
  friend bool operator==(const ControlWord&, const ControlWord&) = default;
};

class PortMap {
 public:
  // (0,0)->RF1, (0,1)->RF2, (1,0)->RF3, (1,1)->RF4.
  PortMap();
  explicit PortMap(std::array<RfPort, 4> by_word);

  RfPort lookup(ControlWord word) const { return by_word_[word.index()]; }
  ControlWord word_for(RfPort port) const;
  const std::array<RfPort, 4>& table() const { return by_word_; }

  friend bool operator==(const PortMap&, const PortMap&) = default;

 private:
  std::array<RfPort, 4> by_word_;
};

enum class ProgrammingMode { serial, parallel };
enum class DynamicMode { parallel, serial_digital_only };

struct MuxModel {
  double v_threshold = 0.6;               // V
  double v_reference = 0.7;               // V, anchor bias for the power curves
  double static_coeff = 0.60e-6 / 1e-3;   // W / V^3 above threshold
  double esd_static = 0.37e-6;            // W at v_reference
  double subthreshold_leakage = 0.0;      // W
  double dyn_coeff = 1e-12;               // J / V^2 per switch event (parallel)
  double dyn_coeff_serial = 0.26e-12;     // J / V^2 per switch event (serial, digital only)
  double isolation_db = 30.0;
  double insertion_loss_db = 2.3;
  double rise_time = 2.6e-9;              // s, 10-90 %
  PortMap port_map;
  // Parallel mode with LE low: hold the last port (default) or open all ports.
  bool le_low_all_off = false;

  // Measured device: cubic anchored at 0.60 uW total for 0.7 V.
  static MuxModel measured();
  // Extrapolated lower-threshold device anchored at 30 nW for 0.3 V.
  static MuxModel low_threshold_projection();

  // Throws ConfigError on any violated invariant.
  void validate() const;

  double floor_amplitude() const;
  double insertion_amplitude() const;
};

struct StaticPowerBreakdown {
  double total = 0.0;
  double esd = 0.0;
  double core = 0.0;
};

double static_power(const MuxModel& model, double v_dd);
StaticPowerBreakdown static_power_breakdown(const MuxModel& model, double v_dd);

double dynamic_power(const MuxModel& model, double switch_rate, double v_dd,
                     DynamicMode mode = DynamicMode::parallel);

// ---------------------------------------------------------------------------
// Digital programming.
//
// Serial word convention: the shift register is two bits wide. Bits are
// shifted in MSB first on rising CLK edges, so after clocking a full word the
// first bit clocked is D1 and the second is D0. Older bits fall off the end.

struct MuxDigitalState {
  ProgrammingMode mode = ProgrammingMode::serial;
  bool ps = true;
  bool le = false;
  bool clk = false;  // last sampled clock level, for edge detection
  std::array<bool, 2> shift_register{};  // [0] = older bit (D1), [1] = newest (D0)
  ControlWord latched_word{};
  ControlWord parallel_word{};
  bool chip_selected = true;
  RfPort selected_port = RfPort::RF1;

  static MuxDigitalState power_on(const PortMap& map, ProgrammingMode mode);

  // Whether RF passes through selected_port, honoring the LE-low policy.
  bool rf_active(const MuxModel& model) const;

  friend bool operator==(const MuxDigitalState&, const MuxDigitalState&) = default;
};

// Drives PS. Lowering PS resets all sequential logic.
MuxDigitalState set_programming_select(MuxDigitalState state, bool ps, const PortMap& map);

// Sampled serial bus: one CLK and SERIN level per sample. The LE pulse, if
// any, rises after the sample with index `le_rise_after` has been applied.
struct SerialFrame {
  std::vector<bool> clk;
  std::vector<bool> serin;
  std::optional<std::size_t> le_rise_after;

  // Convenience: clock `bits` MSB first (two samples per bit), then pulse LE
  // if requested.
  static SerialFrame for_bits(const std::vector<bool>& bits, bool pulse_le);
  static SerialFrame for_port(const PortMap& map, RfPort port, bool pulse_le);
};

MuxDigitalState program_serial(MuxDigitalState state, const SerialFrame& frame, const PortMap& map);

MuxDigitalState program_parallel(MuxDigitalState state, bool d1, bool d0, bool le,
                                 const PortMap& map);

// ---------------------------------------------------------------------------
// Time-division gating.

struct GateEvent {
  double time = 0.0;  // s
  RfPort port = RfPort::RF1;
};

struct GatingSchedule {
  RfPort initial_port = RfPort::RF1;
  std::vector<GateEvent> events;  // strictly increasing in time
  double floor_amplitude = 1.0;

  static GatingSchedule for_model(const MuxModel& model, RfPort initial_port,
                                  std::vector<GateEvent> events);
  // Target port open on [start, stop), parked on `idle_port` otherwise.
  // A zero-length window yields no events.
  static GatingSchedule window(const MuxModel& model, RfPort target, RfPort idle_port,
                               double start, double stop);

  void validate() const;
  std::vector<double> breakpoints() const;
};

// Amplitude transmission seen through `target` at time t, in
// [floor_amplitude, 1]. Transitions follow a first-order response whose
// 10-90 % rise time is `rise_time`; zero gives an ideal step.
double gating_envelope(const GatingSchedule& schedule, RfPort target, double t, double rise_time);

// ---------------------------------------------------------------------------
// Cooling budget.

struct CoolingBudget {
  double cooling_power = 20e-6;      // W
  double per_channel_power = 0.2e-6;  // W
};

std::int64_t qubit_capacity(const CoolingBudget& budget);
double required_channel_power(double cooling_power, double qubit_count);

// ---------------------------------------------------------------------------
// JSON config. Keys carry their unit as a suffix.

MuxModel mux_model_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MuxModel& model);
GatingSchedule gating_schedule_from_json(const nlohmann::json& j, const MuxModel& model);

}  // namespace cryomux::chain
