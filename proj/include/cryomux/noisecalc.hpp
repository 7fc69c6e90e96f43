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

// Closed-form noise calculus linking multiplexer carrier temperature to qubit
// decoherence: photon-shot-noise dephasing in the readout resonator,
// Bose-Einstein occupancy, attenuation bookkeeping, and the drive-line T1
// limit. All rates are plain 1/s unless the name says angular.

#include "json.hpp"

namespace cryomux::noise {

// Angular quantities (rad/s). Build from spectroscopic Hz values with from_hz.
struct TransmonParams {
  double omega_q = 0.0;
  double omega_r = 0.0;
  double kappa_r = 0.0;
  double chi = 0.0;    // signed
  double alpha = 0.0;  // signed
  double g = 0.0;

  static TransmonParams from_hz(double f_q, double f_r, double kappa_hz, double chi_hz,
                                double alpha_hz, double g_hz);
  // Device characterised alongside the multiplexer.
  static TransmonParams reference_device();

  void validate() const;
  double resonator_frequency_hz() const;
  double qubit_frequency_hz() const;
};

TransmonParams transmon_from_json(const nlohmann::json& j);

enum class Direction { toward_qubit, toward_source };

struct NoisePath {
  double attenuation_db = 13.0;
  double source_occupancy = 0.0;
  double source_temperature = 0.0;  // K

  // Links occupancy and temperature at the reference frequency.
  static NoisePath from_occupancy(double occupancy, double attenuation_db, double frequency_hz);
  static NoisePath from_temperature(double temperature, double attenuation_db, double frequency_hz);

  double occupancy_at_resonator() const;
};

struct DriveCoupling {
  double c_d = 0.1e-15;  // F
  double c_q = 110e-15;  // F
  double r_m = 5.0;      // ohm
  double t_eff = 7.0;    // K
};

struct CoherenceRecord {
  double t1 = 0.0;
  double t2_star = 0.0;
  double t2_echo = 0.0;

  // Throws DomainError unless all times are positive and T2 <= 2 T1.
  void validate() const;
};

// Resonator thermal photon number from an excess dephasing rate:
//   n = gamma (kappa^2 + 4 chi^2) / (4 chi^2 kappa)
double occupancy_from_dephasing(double gamma_excess, const TransmonParams& params);
double dephasing_from_occupancy(double occupancy, const TransmonParams& params);

double occupancy_to_temperature(double occupancy, double frequency_hz);
double temperature_to_occupancy(double temperature, double frequency_hz);

// Power attenuation; emission from the cold attenuators is neglected.
double propagate_attenuation(double occupancy, double attenuation_db, Direction direction);

// Emission-side voltage noise spectral density of a resistor at t_eff:
//   S_VV = 4 R hbar omega / (exp(hbar omega / kB T) - 1)   [V^2 / (rad/s)]
double voltage_noise_psd(double omega, double resistance, double t_eff);

// Charge coupling of the drive line, sqrt(hbar C_q omega_q / 2) C_d / (C_d + C_q).
double drive_coupling_strength(const DriveCoupling& coupling, double omega_q);

// T1 = hbar^2 / (A_d^2 S_VV(omega_q)) with S_VV reduced by `attenuation_db`.
// Returns +infinity when the line is decoupled or noiseless.
double t1_limit(const DriveCoupling& coupling, double omega_q, double attenuation_db = 0.0);

inline constexpr double kSwitchingDephasingSlope = 88.66e3 / 1e6;  // (1/s) per Hz

// Linear switching-rate dephasing: gamma_static + slope * rate.
double dephasing_vs_switching(double rate, double gamma_static,
                              double slope = kSwitchingDephasingSlope);

// 1/T_phi = 1/T2 - 1/(2 T1); zero when T2 reaches the 2 T1 limit.
double pure_dephasing_rate(double t2, double t1);

// Dephasing-limited T2 produced by a source of `source_occupancy` behind
// `attenuation_db` of total attenuation.
double projected_t2_limit(double source_occupancy, double attenuation_db,
                          const TransmonParams& params);

}  // namespace cryomux::noise
