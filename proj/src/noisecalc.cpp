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

#include "cryomux/noisecalc.hpp"

#include <cmath>
#include <limits>

#include "cryomux/config.hpp"
#include "cryomux/constants.hpp"
#include "cryomux/error.hpp"

namespace cryomux::noise {

using constants::angular;

TransmonParams TransmonParams::from_hz(double f_q, double f_r, double kappa_hz, double chi_hz,
                                       double alpha_hz, double g_hz) {
  return TransmonParams{angular(f_q),      angular(f_r), angular(kappa_hz), angular(chi_hz),
                        angular(alpha_hz), angular(g_hz)};
}

TransmonParams TransmonParams::reference_device() {
  return from_hz(3.957e9, 6.471e9, 0.697e6, -0.259e6, -180e6, 90e6);
}

void TransmonParams::validate() const {
  if (!(omega_q > 0.0 && omega_r > 0.0 && kappa_r > 0.0)) {
    throw DomainError("TransmonParams: omega_q, omega_r and kappa_r must be positive");
  }
}

double TransmonParams::resonator_frequency_hz() const { return constants::hertz(omega_r); }
double TransmonParams::qubit_frequency_hz() const { return constants::hertz(omega_q); }

TransmonParams transmon_from_json(const nlohmann::json& j) {
  config::require_object(j, "transmon");
  config::allow_only(j,
                     {"qubit_frequency_hz", "resonator_frequency_hz", "resonator_linewidth_hz",
                      "dispersive_shift_hz", "anharmonicity_hz", "coupling_hz"},
                     "transmon");
  const auto ref = TransmonParams::reference_device();
  using constants::hertz;
  auto p = TransmonParams::from_hz(
      config::number(j, "qubit_frequency_hz", hertz(ref.omega_q)),
      config::number(j, "resonator_frequency_hz", hertz(ref.omega_r)),
      config::number(j, "resonator_linewidth_hz", hertz(ref.kappa_r)),
      config::number(j, "dispersive_shift_hz", hertz(ref.chi)),
      config::number(j, "anharmonicity_hz", hertz(ref.alpha)),
      config::number(j, "coupling_hz", hertz(ref.g)));
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return p;
}

NoisePath NoisePath::from_occupancy(double occupancy, double attenuation_db, double frequency_hz) {
  return NoisePath{attenuation_db, occupancy, occupancy_to_temperature(occupancy, frequency_hz)};
}

NoisePath NoisePath::from_temperature(double temperature, double attenuation_db,
                                      double frequency_hz) {
  return NoisePath{attenuation_db, temperature_to_occupancy(temperature, frequency_hz),
                   temperature};
}

double NoisePath::occupancy_at_resonator() const {
  return propagate_attenuation(source_occupancy, attenuation_db, Direction::toward_qubit);
}

void CoherenceRecord::validate() const {
  if (!(t1 > 0.0 && t2_star > 0.0 && t2_echo > 0.0)) {
    throw DomainError("CoherenceRecord: all times must be positive");
  }
  // Small slack so T2 = 2 T1 computed in floating point is accepted.
  const double limit = 2.0 * t1 * (1.0 + 1e-12);
  if (t2_star > limit || t2_echo > limit) {
    throw DomainError("CoherenceRecord: T2 cannot exceed 2 T1");
  }
}

namespace {

// (kappa^2 + 4 chi^2) / (4 chi^2 kappa), in seconds.
double shot_noise_factor(const TransmonParams& p) {
  if (p.chi == 0.0) throw SingularityError("dispersive shift chi must be non-zero");
  if (!(p.kappa_r > 0.0)) throw DomainError("resonator linewidth must be positive");
  const double four_chi_sq = 4.0 * p.chi * p.chi;
  return (p.kappa_r * p.kappa_r + four_chi_sq) / (four_chi_sq * p.kappa_r);
}

}  // namespace

double occupancy_from_dephasing(double gamma_excess, const TransmonParams& params) {
  const double factor = shot_noise_factor(params);
  if (!(gamma_excess >= 0.0)) throw DomainError("occupancy_from_dephasing: gamma must be >= 0");
  return gamma_excess * factor;
}

double dephasing_from_occupancy(double occupancy, const TransmonParams& params) {
  const double factor = shot_noise_factor(params);
  if (!(occupancy >= 0.0)) throw DomainError("dephasing_from_occupancy: occupancy must be >= 0");
  return occupancy / factor;
}

double occupancy_to_temperature(double occupancy, double frequency_hz) {
  if (!(occupancy >= 0.0)) throw DomainError("occupancy must be >= 0");
  if (!(frequency_hz > 0.0)) throw DomainError("frequency must be > 0");
  if (occupancy == 0.0) return 0.0;
  const double quantum = constants::planck * frequency_hz / constants::boltzmann;
  return quantum / std::log1p(1.0 / occupancy);
}

double temperature_to_occupancy(double temperature, double frequency_hz) {
  if (!(temperature >= 0.0)) throw DomainError("temperature must be >= 0");
  if (!(frequency_hz > 0.0)) throw DomainError("frequency must be > 0");
  if (temperature == 0.0) return 0.0;
  const double x = constants::planck * frequency_hz / (constants::boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

double propagate_attenuation(double occupancy, double attenuation_db, Direction direction) {
  if (!(occupancy >= 0.0)) throw DomainError("occupancy must be >= 0");
  const double ratio = constants::db_to_power_ratio(attenuation_db);
  return direction == Direction::toward_qubit ? occupancy * ratio : occupancy / ratio;
}

double voltage_noise_psd(double omega, double resistance, double t_eff) {
  if (!(omega > 0.0)) throw DomainError("voltage_noise_psd: omega must be > 0");
  if (!(resistance >= 0.0)) throw DomainError("voltage_noise_psd: resistance must be >= 0");
  if (!(t_eff >= 0.0)) throw DomainError("voltage_noise_psd: t_eff must be >= 0");
  if (t_eff == 0.0) return 0.0;
  const double quantum = constants::hbar * omega;
  return 4.0 * resistance * quantum / std::expm1(quantum / (constants::boltzmann * t_eff));
}

double drive_coupling_strength(const DriveCoupling& c, double omega_q) {
  if (!(c.c_q > 0.0)) throw DomainError("drive coupling: c_q must be > 0");
  if (!(c.c_d >= 0.0)) throw DomainError("drive coupling: c_d must be >= 0");
  if (!(omega_q > 0.0)) throw DomainError("drive coupling: omega_q must be > 0");
  return std::sqrt(constants::hbar * c.c_q * omega_q / 2.0) * c.c_d / (c.c_d + c.c_q);
}

double t1_limit(const DriveCoupling& coupling, double omega_q, double attenuation_db) {
  if (!(coupling.r_m > 0.0)) throw DomainError("t1_limit: r_m must be > 0");
  const double a_d = drive_coupling_strength(coupling, omega_q);
  const double s_vv = voltage_noise_psd(omega_q, coupling.r_m, coupling.t_eff) *
                      constants::db_to_power_ratio(attenuation_db);
  const double rate = a_d * a_d * s_vv / (constants::hbar * constants::hbar);
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / rate;
}

double dephasing_vs_switching(double rate, double gamma_static, double slope) {
  if (!(rate >= 0.0)) throw DomainError("dephasing_vs_switching: rate must be >= 0");
  return gamma_static + slope * rate;
}

double pure_dephasing_rate(double t2, double t1) {
  if (!(t2 > 0.0 && t1 > 0.0)) throw DomainError("pure_dephasing_rate: times must be positive");
  const double rate = 1.0 / t2 - 1.0 / (2.0 * t1);
  if (rate < -1e-12 / t2) throw DomainError("pure_dephasing_rate: T2 exceeds 2 T1");
  return rate > 0.0 ? rate : 0.0;
}

double projected_t2_limit(double source_occupancy, double attenuation_db,
                          const TransmonParams& params) {
  const double n = propagate_attenuation(source_occupancy, attenuation_db, Direction::toward_qubit);
  const double gamma = dephasing_from_occupancy(n, params);
  return gamma > 0.0 ? 1.0 / gamma : std::numeric_limits<double>::infinity();
}

}  // namespace cryomux::noise
