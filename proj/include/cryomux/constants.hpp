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

#include <cmath>
#include <numbers>

// SI-defined values (exact since the 2019 redefinition); hbar derived.
namespace cryomux::constants {

inline constexpr double planck = 6.62607015e-34;                   // J s
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);  // J s
inline constexpr double boltzmann = 1.380649e-23;                  // J / K
inline constexpr double elementary_charge = 1.602176634e-19;       // C

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Spectroscopic inputs are given as omega / 2pi in Hz.
constexpr double angular(double hz) { return two_pi * hz; }
constexpr double hertz(double angular_rate) { return angular_rate / two_pi; }

// Fraction of power remaining after `db` of loss.
inline double db_to_power_ratio(double db) { return std::pow(10.0, -db / 10.0); }
// Fraction of amplitude remaining after `db` of loss.
inline double db_to_amplitude_ratio(double db) { return std::pow(10.0, -db / 20.0); }

}  // namespace cryomux::constants
