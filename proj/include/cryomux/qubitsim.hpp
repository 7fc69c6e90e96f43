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

// Pulse-level open-system simulation of a single transmon (two or three
// levels) in the frame rotating at the drive frequency, under the
// rotating-wave approximation. The Lindblad equation is vectorized
// (column stacking) and integrated with fixed-step RK4.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cryomux/chainmodel.hpp"
#include "cryomux/constants.hpp"
#include "cryomux/noisecalc.hpp"

namespace cryomux::sim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class PulseShape { cosine, cosine_drag };

struct PulseSpec {
  PulseShape shape = PulseShape::cosine;
  double duration = 40e-9;       // s
  double amplitude = 0.0;        // peak Rabi rate, rad/s
  double drag_coefficient = 0.0;
  double carrier_detuning = 0.0;  // rad/s, drive minus qubit frequency
  double phase = 0.0;             // rotation axis in the xy plane; 0 = x, pi/2 = y

  void validate() const;

  // In-phase envelope (rad/s), zero outside [0, duration].
  double envelope(double t) const;
  double envelope_derivative(double t) const;
  // Integral of the in-phase envelope; the rotation angle of a resonant pulse.
  double area() const;
  // Complex drive (Omega_x + i Omega_y) e^{i phase}. The DRAG quadrature is
  // -drag_coefficient * dOmega_x/dt / alpha; alpha = 0 disables it.
  Complex drive(double t, double alpha) const;
};

struct SimConfig {
  int levels = 2;
  double dt = 40e-9 / 2000.0;
  std::optional<double> t1;
  std::optional<double> t_phi;
  double alpha = constants::angular(-180e6);  // rad/s, used for level 2 and DRAG
  // Undriven time simulated before and after the pulse.
  double padding = 0.0;
  // Check trace, Hermiticity and positivity after every step.
  bool check_invariants = true;

  static SimConfig from_coherence(const noise::CoherenceRecord& record, int levels = 2);

  void validate(const PulseSpec& pulse) const;
  double horizon(const PulseSpec& pulse) const { return pulse.duration + 2.0 * padding; }
};

class QubitState {
 public:
  explicit QubitState(Matrix rho);
  static QubitState ground(int levels);

  const Matrix& density_matrix() const { return rho_; }
  int levels() const { return static_cast<int>(rho_.rows()); }
  double population(int level) const { return rho_(level, level).real(); }
  double excited_population() const { return population(1); }

 private:
  Matrix rho_;
};

// Multiplies the drive amplitude. Breakpoints mark discontinuities so the
// integrator can land on them exactly.
struct EnvelopeModulator {
  std::function<double(double)> value;
  std::vector<double> breakpoints;

  static EnvelopeModulator constant(double level);
  static EnvelopeModulator from_schedule(chain::GatingSchedule schedule, chain::RfPort target,
                                         double rise_time);
};

using StepObserver = std::function<void(double t, const Matrix& rho)>;

// Integrates over [-padding, duration + padding]; t = 0 is the pulse start.
QubitState evolve(const QubitState& state, const PulseSpec& pulse,
                  const EnvelopeModulator& modulator, const SimConfig& config,
                  const StepObserver& observer = {});

// Superoperator of the same evolution acting on column-stacked density
// matrices.
Matrix propagator(const PulseSpec& pulse, const EnvelopeModulator& modulator,
                  const SimConfig& config);

Vector vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v, int levels);

PulseSpec calibrate_pi_pulse(double duration, PulseShape shape, const SimConfig& config,
                             double drag_coefficient = 0.0);

// Pulse centred in the horizon; RF1 opens for `window` around its centre and
// the line parks on RF2 otherwise. Returns the excited population.
double tdm_experiment(double window, const chain::MuxModel& mux, const PulseSpec& pulse,
                      const SimConfig& config);

struct TdmPoint {
  double window = 0.0;
  double p_e = 0.0;
};

std::vector<TdmPoint> tdm_sweep(std::span<const double> windows, const chain::MuxModel& mux,
                                const PulseSpec& pulse, const SimConfig& config);

inline constexpr double kDefaultReadoutFloor = 1e-2;

// Populations below the readout floor are indistinguishable from it.
double apply_readout_floor(double p_e, double floor = kDefaultReadoutFloor);

enum class DecayKind { t1, ramsey, echo };

// T1: exp(-t/T1); Ramsey: (1 + exp(-t/T2*) cos(2 pi detuning t)) / 2;
// echo: (1 + exp(-t/T2e)) / 2. Optional Gaussian observation noise.
std::vector<double> synth_decay_trace(DecayKind kind, const noise::CoherenceRecord& truth,
                                      double detuning_hz, std::span<const double> times,
                                      double noise_sigma = 0.0, std::uint64_t seed = 0);

}  // namespace cryomux::sim
