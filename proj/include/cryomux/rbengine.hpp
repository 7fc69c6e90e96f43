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

// Single-qubit randomized benchmarking: the Clifford group over a physical
// generator set, seeded random sequences, execution through the master
// equation simulator, decay fitting and the coherence-limited fidelity model.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cryomux/fitkit.hpp"
#include "cryomux/noisecalc.hpp"
#include "cryomux/qubitsim.hpp"

namespace cryomux::rb {

enum class Generator : std::uint8_t { I, X90, mX90, Y90, mY90, X180, Y180 };

inline constexpr std::array<Generator, 7> kGenerators{
    Generator::I,    Generator::X90,  Generator::mX90, Generator::Y90,
    Generator::mY90, Generator::X180, Generator::Y180};

std::string_view to_string(Generator g);

// exp(-i theta/2 (cos(phi) X + sin(phi) Y)), matching the simulator's drive
// convention; I is an idle of one gate duration.
Eigen::Matrix2cd generator_unitary(Generator g);

struct Clifford {
  std::vector<Generator> gates;  // applied left to right
  Eigen::Matrix2cd unitary;
};

class CliffordTable {
 public:
  explicit CliffordTable(std::vector<Clifford> elements);

  std::size_t size() const { return elements_.size(); }
  const Clifford& operator[](std::size_t i) const { return elements_[i]; }
  std::size_t identity() const { return identity_; }
  // Index of "apply first, then second".
  std::size_t compose(std::size_t first, std::size_t second) const {
    return product_[first][second];
  }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  // Element equal to u up to a global phase; throws if u is not a Clifford.
  std::size_t find(const Eigen::Matrix2cd& u) const;
  double mean_generator_count() const;

 private:
  std::vector<Clifford> elements_;
  std::vector<std::vector<std::size_t>> product_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
};

inline constexpr double kGeneratorsPerClifford = 1.875;

// The 24 single-qubit Cliffords over {I, +-X90, +-Y90, X180, Y180}. Throws if
// the decomposition fails closure or inverse checks.
CliffordTable build_clifford_table();

// SplitMix64 finaliser over (master, a, b): independent per-sequence streams
// that do not depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

// m uniformly random Cliffords followed by the recovery element.
std::vector<std::size_t> rb_sequence(const CliffordTable& table, std::size_t m,
                                     std::uint64_t seed);

struct RbCurve {
  std::vector<std::size_t> lengths;
  std::vector<double> survival;  // mean ground-state population per length
  std::vector<double> spread;    // standard deviation across sequences
};

// Executes `repeats` random sequences per length. Gate channels come from the
// master-equation propagator of `pi_pulse` (half amplitude for 90-degree
// gates, phase-shifted for y and negative rotations) under the given
// decoherence; std::nullopt runs noise-free.
RbCurve run_rb(std::span<const std::size_t> lengths, std::size_t repeats,
               const std::optional<noise::CoherenceRecord>& noise, const sim::PulseSpec& pi_pulse,
               std::uint64_t seed, const sim::SimConfig& base = {});

struct RbResult {
  double a = 0.0;
  double b = 0.0;
  double p = 1.0;
  double r_clifford = 0.0;
  double r_g = 0.0;
  double f_1q = 1.0;
  int d = 2;
  double p_error = 0.0;
  double f_1q_error = 0.0;
  fit::FitResult fit;

  // r_clifford = (1 - p)(d - 1)/d, r_g = r_clifford / 1.875, F = 1 - r_g.
  static RbResult from_decay(double a, double b, double p, int d = 2);
};

// Fits F = A p^m + B. Throws fit::FitError when the fit fails or p leaves (0, 1].
// `sigma`, when given, holds the standard error of each mean survival and is used as
// absolute weights.
RbResult fit_rb(std::span<const double> lengths, std::span<const double> fidelities,
                std::span<const double> sigma = {});

// Gate fidelity limited by relaxation and multiplexer dephasing:
//   F = 1 - c0 - k1 / T_phi_mux,
//   c0 = t_g / (3 T1) + c0_extra,
//   1/T_phi_mux = 1/T2* - 1/T2*_baseline (clamped at zero).
struct FidelityModel {
  double c0 = 0.0;
  double k1 = 0.0;
  double t_g = 0.0;
  double t_phi_mux = 0.0;  // +infinity when the multiplexer adds no dephasing

  static double default_k1(double t_g) { return 0.433 * t_g / 3.0; }
  static double white_noise_k1(double t_g) { return t_g / 3.0; }
  static FidelityModel make(double t_g, double t1, double t2_star, double t2_star_baseline,
                            double c0_extra = 0.0, std::optional<double> k1 = std::nullopt);

  double fidelity() const;
};

double coherence_limited_fidelity(double t_g, double t1, double t2_star, double t2_star_baseline,
                                  double c0_extra = 0.0, std::optional<double> k1 = std::nullopt);

}  // namespace cryomux::rb
