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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cryomux/error.hpp"
#include "cryomux/qubitsim.hpp"

using namespace cryomux;
using namespace cryomux::sim;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGate = 40e-9;

double floor_30db() { return std::pow(10.0, -30.0 / 20.0); }

// Rotation angle when the modulator is `floor` outside a centred window of
// width w and 1 inside; the cosine area fraction inside is w/T + sin(pi w/T)/pi.
double partial_area_pe(double w, double T, double floor) {
  const double inside = w >= T ? 1.0 : w / T + std::sin(kPi * w / T) / kPi;
  const double theta = kPi * (floor + (1.0 - floor) * inside);
  return std::pow(std::sin(theta / 2.0), 2);
}

chain::MuxModel ideal_mux() {
  auto m = chain::MuxModel::measured();
  m.rise_time = 0.0;
  return m;
}

}  // namespace

TEST(Pulse, CosineEnvelope) {
  PulseSpec p;
  p.amplitude = 2.0;
  EXPECT_EQ(p.envelope(0.0), 0.0);
  EXPECT_NEAR(p.envelope(kGate), 0.0, 1e-15);
  EXPECT_NEAR(p.envelope(kGate / 2), 2.0, 1e-15);
  EXPECT_EQ(p.envelope(-1e-9), 0.0);
  EXPECT_NEAR(p.area(), kGate, 1e-24);
  const double h = 1e-13;
  for (double t : {5e-9, 13e-9, 31e-9}) {
    const double fd = (p.envelope(t + h) - p.envelope(t - h)) / (2 * h);
    EXPECT_NEAR(p.envelope_derivative(t), fd, 1e-6 * std::abs(fd) + 1.0);
  }
  p.amplitude = -1.0;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(Evolve, ZeroAmplitudeIsIdentity) {
  PulseSpec p;
  const auto out = evolve(QubitState::ground(2), p, EnvelopeModulator::constant(1.0), SimConfig{});
  EXPECT_NEAR(out.population(0), 1.0, 1e-15);
  EXPECT_NEAR(out.excited_population(), 0.0, 1e-15);
}

TEST(Evolve, AnalyticPiPulse) {
  PulseSpec p;
  p.amplitude = 2.0 * kPi / kGate;
  const auto out = evolve(QubitState::ground(2), p, EnvelopeModulator::constant(1.0), SimConfig{});
  EXPECT_GE(out.excited_population(), 0.999999);
}

TEST(Evolve, FloorRotation) {
  PulseSpec p;
  p.amplitude = 2.0 * kPi / kGate;
  const double f = floor_30db();
  const auto out = evolve(QubitState::ground(2), p, EnvelopeModulator::constant(f), SimConfig{});
  EXPECT_NEAR(out.excited_population(), std::pow(std::sin(f * kPi / 2), 2), 1e-9);
  EXPECT_NEAR(out.excited_population(), 2.46e-3, 0.01e-3);
}

TEST(Evolve, ArbitraryRabiAngle) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 5; ++i) {
    const double theta = u(rng) * kPi;
    PulseSpec p;
    p.amplitude = theta / (kGate / 2);
    const auto out =
        evolve(QubitState::ground(2), p, EnvelopeModulator::constant(1.0), SimConfig{});
    EXPECT_NEAR(out.excited_population(), std::pow(std::sin(theta / 2), 2), 1e-9);
  }
}

TEST(Evolve, DecayMatchesClosedForm) {
  // No drive: T1 decay of |1> and Ramsey-like coherence decay of |+>.
  SimConfig cfg;
  cfg.t1 = 1e-6;
  cfg.t_phi = 2e-6;
  cfg.padding = 0.0;
  PulseSpec p;
  p.duration = 400e-9;
  cfg.dt = p.duration / 4000;
  Matrix excited = Matrix::Zero(2, 2);
  excited(1, 1) = 1.0;
  const auto out = evolve(QubitState(excited), p, EnvelopeModulator::constant(1.0), cfg);
  EXPECT_NEAR(out.excited_population(), std::exp(-0.4), 1e-10);
  Matrix plus = Matrix::Constant(2, 2, 0.5);
  const auto coh = evolve(QubitState(plus), p, EnvelopeModulator::constant(1.0), cfg);
  const double t2 = 1.0 / (1.0 / (2 * 1e-6) + 1.0 / 2e-6);
  EXPECT_NEAR(std::abs(coh.density_matrix()(0, 1)), 0.5 * std::exp(-p.duration / t2), 1e-10);
}

TEST(Evolve, InvariantsEveryStep) {
  SimConfig cfg;
  cfg.levels = 3;
  cfg.t1 = 5e-6;
  cfg.t_phi = 3e-6;
  cfg.padding = 5e-9;
  PulseSpec p;
  p.shape = PulseShape::cosine_drag;
  p.amplitude = 2.0 * kPi / kGate;
  p.drag_coefficient = 0.5;
  p.carrier_detuning = 2 * kPi * 3e6;
  int steps = 0;
  evolve(QubitState::ground(3), p, EnvelopeModulator::constant(1.0), cfg,
         [&](double, const Matrix& rho) {
           ++steps;
           EXPECT_NEAR(std::abs(rho.trace() - Complex(1.0)), 0.0, 1e-9);
           EXPECT_LE((rho - rho.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
           Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
           EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
         });
  EXPECT_GT(steps, 1000);
}

TEST(Evolve, ConfigErrors) {
  PulseSpec p;
  p.amplitude = 1.0;
  SimConfig cfg;
  cfg.dt = kGate / 100;
  EXPECT_THROW(evolve(QubitState::ground(2), p, EnvelopeModulator::constant(1.0), cfg),
               ConfigError);
  cfg = SimConfig{};
  cfg.levels = 4;
  EXPECT_THROW(cfg.validate(p), ConfigError);
  cfg = SimConfig{};
  EXPECT_THROW(evolve(QubitState::ground(3), p, EnvelopeModulator::constant(1.0), cfg),
               ConfigError);
  Matrix bad = Matrix::Identity(2, 2);
  EXPECT_THROW(QubitState{bad}, Error);
}

TEST(Calibration, CosineMatchesAreaCondition) {
  const auto p = calibrate_pi_pulse(kGate, PulseShape::cosine, SimConfig{});
  EXPECT_NEAR(p.amplitude / (2.0 * kPi / kGate), 1.0, 1e-6);
  const auto out = evolve(QubitState::ground(2), p, EnvelopeModulator::constant(1.0), SimConfig{});
  EXPECT_GE(out.excited_population(), 1.0 - 1e-6);
  const auto twice = calibrate_pi_pulse(2 * kGate, PulseShape::cosine, SimConfig{});
  EXPECT_NEAR(twice.amplitude / p.amplitude, 0.5, 1e-6);
  const auto drag0 = calibrate_pi_pulse(kGate, PulseShape::cosine_drag, SimConfig{}, 0.0);
  EXPECT_NEAR(drag0.amplitude, p.amplitude, 1e-9 * p.amplitude);
  EXPECT_THROW(calibrate_pi_pulse(0.0, PulseShape::cosine, SimConfig{}), CalibrationError);
}

TEST(Calibration, StepConvergence) {
  const auto p = calibrate_pi_pulse(kGate, PulseShape::cosine, SimConfig{});
  SimConfig a, b;
  a.dt = kGate / 2000;
  b.dt = kGate / 4000;
  const double f = floor_30db();
  const auto m = EnvelopeModulator::constant(0.5 + f);
  const double pa = evolve(QubitState::ground(2), p, m, a).excited_population();
  const double pb = evolve(QubitState::ground(2), p, m, b).excited_population();
  EXPECT_LT(std::abs(pa - pb), 1e-7);
  const double fa = evolve(QubitState::ground(2), p, EnvelopeModulator::constant(1.0), a)
                        .excited_population();
  const double fb = evolve(QubitState::ground(2), p, EnvelopeModulator::constant(1.0), b)
                        .excited_population();
  EXPECT_LT(std::abs(fa - fb), 1e-7);
}

TEST(Calibration, TwoAndThreeLevelsAgreeWithDrag) {
  SimConfig two, three;
  three.levels = 3;
  const auto p = calibrate_pi_pulse(kGate, PulseShape::cosine_drag, two, 0.5);
  const double p2 = evolve(QubitState::ground(2), p, EnvelopeModulator::constant(1.0), two)
                        .excited_population();
  const double p3 = evolve(QubitState::ground(3), p, EnvelopeModulator::constant(1.0), three)
                        .excited_population();
  EXPECT_LT(std::abs(p2 - p3), 1e-3);
  auto plain = p;
  plain.drag_coefficient = 0.0;
  const double p3_plain =
      evolve(QubitState::ground(3), plain, EnvelopeModulator::constant(1.0), three)
          .excited_population();
  EXPECT_LT(p3_plain, p3);
}

TEST(Tdm, PartialAreaOracle) {
  const auto pi = calibrate_pi_pulse(kGate, PulseShape::cosine, SimConfig{});
  SimConfig cfg;
  cfg.padding = 10e-9;
  const auto mux = ideal_mux();
  for (double w_ns = 0.0; w_ns <= 60.0; w_ns += 2.0) {
    const double w = w_ns * 1e-9;
    const double pe = tdm_experiment(w, mux, pi, cfg);
    EXPECT_NEAR(pe, partial_area_pe(w, kGate, mux.floor_amplitude()), 1e-6) << w_ns;
  }
}

TEST(Tdm, MonotoneAndSaturating) {
  const auto pi = calibrate_pi_pulse(kGate, PulseShape::cosine, SimConfig{});
  SimConfig cfg;
  const auto mux = ideal_mux();
  double prev = -1.0;
  for (int k = 0; k <= 40; ++k) {
    const double pe = tdm_experiment(k * 1e-9, mux, pi, cfg);
    EXPECT_GE(pe, prev - 1e-12);
    prev = pe;
  }
  EXPECT_LE(tdm_experiment(0.0, mux, pi, cfg), 3e-3);
  const double p30 = tdm_experiment(30e-9, mux, pi, cfg);
  const double p40 = tdm_experiment(40e-9, mux, pi, cfg);
  EXPECT_LT(std::abs(p30 - p40) / p40, 0.01);
  EXPECT_THROW(tdm_experiment(41e-9, mux, pi, cfg), ConfigError);
  EXPECT_THROW(tdm_experiment(-1e-9, mux, pi, cfg), ConfigError);
}

TEST(Tdm, FiniteRiseTimeLowersPopulation) {
  const auto pi = calibrate_pi_pulse(kGate, PulseShape::cosine, SimConfig{});
  SimConfig cfg;
  auto slow = chain::MuxModel::measured();
  EXPECT_LT(tdm_experiment(kGate, slow, pi, cfg), tdm_experiment(kGate, ideal_mux(), pi, cfg));
}

TEST(Tdm, ReadoutFloor) {
  EXPECT_EQ(apply_readout_floor(2.5e-3), 1e-2);
  EXPECT_EQ(apply_readout_floor(0.5), 0.5);
}

TEST(Synth, DecayTraces) {
  const noise::CoherenceRecord truth{30e-6, 20e-6, 25e-6};
  const std::vector<double> t{0.0, 30e-6};
  auto y = synth_decay_trace(DecayKind::t1, truth, 0.0, t);
  EXPECT_EQ(y[0], 1.0);
  EXPECT_NEAR(y[1], std::exp(-1.0), 1e-15);
  const std::vector<double> r{0.0, 1e-6, 2e-6};
  auto ramsey = synth_decay_trace(DecayKind::ramsey, {30e-6, 1.0, 1.0}, 0.5e6, r);
  EXPECT_NEAR(ramsey[0], 1.0, 1e-6);
  EXPECT_NEAR(ramsey[1], 0.5 * (1 + std::exp(-1e-6) * -1.0), 1e-6);
  EXPECT_NEAR(ramsey[2], ramsey[0], 1e-5);
  auto echo = synth_decay_trace(DecayKind::echo, truth, 0.0, t);
  EXPECT_NEAR(echo[1], 0.5 * (1 + std::exp(-30.0 / 25.0)), 1e-15);
  const auto a = synth_decay_trace(DecayKind::t1, truth, 0.0, t, 0.01, 42);
  const auto b = synth_decay_trace(DecayKind::t1, truth, 0.0, t, 0.01, 42);
  EXPECT_EQ(a, b);
  EXPECT_THROW(synth_decay_trace(DecayKind::t1, truth, 0.0, std::vector<double>{}), DomainError);
}

TEST(Vectorize, RoundTrip) {
  Matrix m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(i + 3 * j, i - j);
  EXPECT_EQ(unvectorize(vectorize(m), 3), m);
  EXPECT_EQ(vectorize(m)(1), m(1, 0));
}
