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

#include "cryomux/qubitsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "cryomux/constants.hpp"
#include "cryomux/error.hpp"

namespace cryomux::sim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix lowering(int d) {
  Matrix a = Matrix::Zero(d, d);
  for (int k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

Matrix number_op(int d) {
  Matrix n = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = k;
  return n;
}

// -i[H, .] in column-stacked form.
Matrix commutator_super(const Matrix& h) {
  const Matrix id = Matrix::Identity(h.rows(), h.cols());
  return -kI * (kron(id, h) - kron(h.transpose(), id));
}

Matrix dissipator_super(const Matrix& l) {
  const Matrix id = Matrix::Identity(l.rows(), l.cols());
  const Matrix ldl = l.adjoint() * l;
  return kron(l.conjugate(), l) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id);
}

// L(t) = drift + Re(eps) * drive_x + Im(eps) * drive_y.
struct Generator {
  Matrix drift;
  Matrix drive_x;
  Matrix drive_y;
};

Generator build_generator(const PulseSpec& pulse, const SimConfig& config) {
  const int d = config.levels;
  const Matrix a = lowering(d);
  const Matrix n = number_op(d);
  Matrix h0 = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    h0(k, k) = -pulse.carrier_detuning * k + 0.5 * config.alpha * k * (k - 1);
  }
  Generator g;
  g.drift = commutator_super(h0);
  if (config.t1) g.drift += dissipator_super(std::sqrt(1.0 / *config.t1) * a);
  if (config.t_phi && std::isfinite(*config.t_phi)) {
    g.drift += dissipator_super(std::sqrt(2.0 / *config.t_phi) * n);
  }
  g.drive_x = commutator_super(0.5 * (a + a.adjoint()));
  g.drive_y = commutator_super(0.5 * kI * (a.adjoint() - a));
  return g;
}

std::vector<double> segment_edges(double begin, double end, std::vector<double> extra) {
  std::vector<double> edges{begin, end};
  for (double t : extra) {
    if (t > begin && t < end) edges.push_back(t);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// Fixed-step RK4 on dX/dt = L(t) X, landing exactly on every breakpoint. The
// last stage of each segment samples the left limit so a jump at the edge
// belongs to the following segment.
template <typename State, typename OnStep>
State integrate(State x, const PulseSpec& pulse, const EnvelopeModulator& modulator,
                const SimConfig& config, OnStep&& on_step) {
  const Generator gen = build_generator(pulse, config);
  const double begin = -config.padding;
  const double end = pulse.duration + config.padding;
  std::vector<double> marks = modulator.breakpoints;
  marks.push_back(0.0);
  marks.push_back(pulse.duration);
  const auto edges = segment_edges(begin, end, std::move(marks));

  // DRAG compensates the second excited level, so a two-level run sees the
  // target in-subspace rotation only.
  const double drag_alpha = config.levels == 3 ? config.alpha : 0.0;
  Matrix l(gen.drift.rows(), gen.drift.cols());
  auto apply = [&](double t, const State& v) -> State {
    const Complex eps = pulse.drive(t, drag_alpha) * modulator.value(t);
    l = gen.drift + eps.real() * gen.drive_x + eps.imag() * gen.drive_y;
    return l * v;
  };

  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double a = edges[s];
    const double b = edges[s + 1];
    const auto steps = std::max<long>(1, static_cast<long>(std::ceil((b - a) / config.dt - 1e-9)));
    const double h = (b - a) / static_cast<double>(steps);
    for (long k = 0; k < steps; ++k) {
      const double t0 = a + static_cast<double>(k) * h;
      const double t1 = k + 1 == steps ? b : a + static_cast<double>(k + 1) * h;
      const double t_end = k + 1 == steps ? std::nextafter(b, a) : t1;
      const State k1 = apply(t0, x);
      const State k2 = apply(t0 + 0.5 * h, x + (0.5 * h) * k1);
      const State k3 = apply(t0 + 0.5 * h, x + (0.5 * h) * k2);
      const State k4 = apply(t_end, x + h * k3);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      on_step(t1, x);
    }
  }
  return x;
}

void check_state(const Matrix& rho, double t) {
  const double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (trace_err > 1e-6) {
    throw IntegratorError("trace drifted by " + std::to_string(trace_err) + " at t = " +
                          std::to_string(t));
  }
  const double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > 1e-12) {
    throw IntegratorError("density matrix lost Hermiticity at t = " + std::to_string(t));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-9) {
    throw IntegratorError("density matrix lost positivity at t = " + std::to_string(t));
  }
}

}  // namespace

// ---------------------------------------------------------------------------

void PulseSpec::validate() const {
  if (!(duration > 0.0)) throw ConfigError("PulseSpec: duration must be > 0");
  if (!(amplitude >= 0.0)) throw ConfigError("PulseSpec: amplitude must be >= 0");
}

double PulseSpec::envelope(double t) const {
  if (t < 0.0 || t > duration) return 0.0;
  return amplitude * 0.5 * (1.0 - std::cos(2.0 * kPi * t / duration));
}

double PulseSpec::envelope_derivative(double t) const {
  if (t < 0.0 || t > duration) return 0.0;
  return amplitude * (kPi / duration) * std::sin(2.0 * kPi * t / duration);
}

double PulseSpec::area() const { return 0.5 * amplitude * duration; }

Complex PulseSpec::drive(double t, double alpha) const {
  const double in_phase = envelope(t);
  double quadrature = 0.0;
  if (shape == PulseShape::cosine_drag && alpha != 0.0) {
    quadrature = -drag_coefficient * envelope_derivative(t) / alpha;
  }
  return Complex(in_phase, quadrature) * std::polar(1.0, phase);
}

SimConfig SimConfig::from_coherence(const noise::CoherenceRecord& record, int levels) {
  record.validate();
  SimConfig c;
  c.levels = levels;
  c.t1 = record.t1;
  const double rate = noise::pure_dephasing_rate(record.t2_star, record.t1);
  if (rate > 0.0) c.t_phi = 1.0 / rate;
  return c;
}

void SimConfig::validate(const PulseSpec& pulse) const {
  if (levels != 2 && levels != 3) throw ConfigError("SimConfig: levels must be 2 or 3");
  if (!(dt > 0.0)) throw ConfigError("SimConfig: dt must be > 0");
  if (dt > pulse.duration / 200.0 * (1.0 + 1e-12)) {
    throw ConfigError("SimConfig: dt must not exceed duration / 200");
  }
  if (t1 && !(*t1 > 0.0)) throw ConfigError("SimConfig: t1 must be > 0");
  if (t_phi && !(*t_phi > 0.0)) throw ConfigError("SimConfig: t_phi must be > 0");
  if (!(padding >= 0.0)) throw ConfigError("SimConfig: padding must be >= 0");
}

QubitState::QubitState(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || (rho_.rows() != 2 && rho_.rows() != 3)) {
    throw ConfigError("QubitState: density matrix must be 2x2 or 3x3");
  }
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > 1e-9) {
    throw ConfigError("QubitState: trace must be 1");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ConfigError("QubitState: density matrix must be Hermitian");
  }
}

QubitState QubitState::ground(int levels) {
  Matrix rho = Matrix::Zero(levels, levels);
  rho(0, 0) = 1.0;
  return QubitState(std::move(rho));
}

EnvelopeModulator EnvelopeModulator::constant(double level) {
  return EnvelopeModulator{[level](double) { return level; }, {}};
}

EnvelopeModulator EnvelopeModulator::from_schedule(chain::GatingSchedule schedule,
                                                   chain::RfPort target, double rise_time) {
  auto marks = schedule.breakpoints();
  return EnvelopeModulator{
      [schedule = std::move(schedule), target, rise_time](double t) {
        return chain::gating_envelope(schedule, target, t, rise_time);
      },
      std::move(marks)};
}

Vector vectorize(const Matrix& rho) {
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix unvectorize(const Vector& v, int levels) {
  return Eigen::Map<const Matrix>(v.data(), levels, levels);
}

QubitState evolve(const QubitState& state, const PulseSpec& pulse,
                  const EnvelopeModulator& modulator, const SimConfig& config,
                  const StepObserver& observer) {
  pulse.validate();
  config.validate(pulse);
  if (state.levels() != config.levels) {
    throw ConfigError("evolve: state dimension does not match SimConfig::levels");
  }
  const int d = config.levels;
  const bool watch = config.check_invariants || static_cast<bool>(observer);
  Vector out = integrate(vectorize(state.density_matrix()), pulse, modulator, config,
                         [&](double t, const Vector& v) {
                           if (!watch) return;
                           const Matrix rho = unvectorize(v, d);
                           if (config.check_invariants) check_state(rho, t);
                           if (observer) observer(t, rho);
                         });
  Matrix rho = unvectorize(out, d);
  const double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (trace_err > 1e-6) throw IntegratorError("trace drifted by " + std::to_string(trace_err));
  // Remove round-off asymmetry before handing the state back.
  rho = 0.5 * (rho + rho.adjoint());
  return QubitState(std::move(rho));
}

Matrix propagator(const PulseSpec& pulse, const EnvelopeModulator& modulator,
                  const SimConfig& config) {
  pulse.validate();
  config.validate(pulse);
  const int n = config.levels * config.levels;
  return integrate(Matrix(Matrix::Identity(n, n)), pulse, modulator, config,
                   [](double, const Matrix&) {});
}

PulseSpec calibrate_pi_pulse(double duration, PulseShape shape, const SimConfig& config,
                             double drag_coefficient) {
  if (!(duration > 0.0)) throw CalibrationError("calibrate_pi_pulse: duration must be > 0");
  SimConfig ideal;
  ideal.levels = 2;
  ideal.dt = std::min(config.dt, duration / 2000.0);
  ideal.alpha = config.alpha;
  ideal.check_invariants = false;

  PulseSpec pulse;
  pulse.shape = shape;
  pulse.duration = duration;
  pulse.drag_coefficient = drag_coefficient;
  // Unit-amplitude cosine has area duration / 2; a pi rotation needs area pi.
  pulse.amplitude = kPi / (0.5 * duration);

  const auto ground = QubitState::ground(2);
  const auto unit = EnvelopeModulator::constant(1.0);
  auto excited = [&](double amp) {
    PulseSpec p = pulse;
    p.amplitude = amp;
    return evolve(ground, p, unit, ideal).excited_population();
  };

  constexpr double kTarget = 1.0 - 1e-6;
  double best = excited(pulse.amplitude);
  if (best >= 1.0 - 1e-12) return pulse;

  // Bisect on the sign of the slope of p_e(amplitude) around the seed.
  double lo = 0.8 * pulse.amplitude;
  double hi = 1.2 * pulse.amplitude;
  for (int it = 0; it < 100 && hi - lo > 1e-13 * pulse.amplitude; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double step = 1e-6 * pulse.amplitude;
    if (excited(mid + step) > excited(mid - step)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double refined = 0.5 * (lo + hi);
  const double refined_pe = excited(refined);
  if (refined_pe > best) {
    pulse.amplitude = refined;
    best = refined_pe;
  }
  if (best < kTarget) {
    throw CalibrationError("calibrate_pi_pulse: best excited population " +
                           std::to_string(best) + " is below 1 - 1e-6");
  }
  return pulse;
}

double tdm_experiment(double window, const chain::MuxModel& mux, const PulseSpec& pulse,
                      const SimConfig& config) {
  if (!(window >= 0.0)) throw ConfigError("tdm_experiment: window must be >= 0");
  if (window > config.horizon(pulse) * (1.0 + 1e-12)) {
    throw ConfigError("tdm_experiment: window exceeds the simulation horizon");
  }
  const double centre = 0.5 * pulse.duration;
  auto schedule = chain::GatingSchedule::window(mux, chain::RfPort::RF1, chain::RfPort::RF2,
                                                centre - 0.5 * window, centre + 0.5 * window);
  const auto modulator =
      EnvelopeModulator::from_schedule(std::move(schedule), chain::RfPort::RF1, mux.rise_time);
  return evolve(QubitState::ground(config.levels), pulse, modulator, config)
      .excited_population();
}

std::vector<TdmPoint> tdm_sweep(std::span<const double> windows, const chain::MuxModel& mux,
                                const PulseSpec& pulse, const SimConfig& config) {
  std::vector<TdmPoint> out;
  out.reserve(windows.size());
  for (double w : windows) out.push_back({w, tdm_experiment(w, mux, pulse, config)});
  return out;
}

double apply_readout_floor(double p_e, double floor) { return std::max(p_e, floor); }

std::vector<double> synth_decay_trace(DecayKind kind, const noise::CoherenceRecord& truth,
                                      double detuning_hz, std::span<const double> times,
                                      double noise_sigma, std::uint64_t seed) {
  if (times.empty()) throw DomainError("synth_decay_trace: empty time axis");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw DomainError("synth_decay_trace: times must increase");
  }
  if (!(noise_sigma >= 0.0)) throw DomainError("synth_decay_trace: noise_sigma must be >= 0");
  std::vector<double> y;
  y.reserve(times.size());
  for (double t : times) {
    switch (kind) {
      case DecayKind::t1:
        y.push_back(std::exp(-t / truth.t1));
        break;
      case DecayKind::ramsey:
        y.push_back(0.5 * (1.0 + std::exp(-t / truth.t2_star) *
                                     std::cos(constants::two_pi * detuning_hz * t)));
        break;
      case DecayKind::echo:
        y.push_back(0.5 * (1.0 + std::exp(-t / truth.t2_echo)));
        break;
    }
  }
  if (noise_sigma > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise_sigma);
    for (double& v : y) v += gauss(rng);
  }
  return y;
}

}  // namespace cryomux::sim
