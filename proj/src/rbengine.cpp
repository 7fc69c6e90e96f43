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

#include "cryomux/rbengine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "cryomux/error.hpp"

namespace cryomux::rb {

namespace {

constexpr double kPi = std::numbers::pi;
using G = Generator;

struct Rotation {
  double angle;
  double phase;
};

Rotation rotation_of(Generator g) {
  switch (g) {
    case G::I: return {0.0, 0.0};
    case G::X90: return {kPi / 2, 0.0};
    case G::mX90: return {kPi / 2, kPi};
    case G::Y90: return {kPi / 2, kPi / 2};
    case G::mY90: return {kPi / 2, -kPi / 2};
    case G::X180: return {kPi, 0.0};
    case G::Y180: return {kPi, kPi / 2};
  }
  return {0.0, 0.0};
}

// Gate sequences of the 24 Cliffords, grouped as Paulis, 2pi/3 rotations,
// pi/2 rotations and Hadamard-like elements. Total generator count is 45.
const std::vector<std::vector<Generator>>& decompositions() {
  static const std::vector<std::vector<Generator>> table{
      {G::I},
      {G::X180},
      {G::Y180},
      {G::Y180, G::X180},
      {G::X90, G::Y90},
      {G::X90, G::mY90},
      {G::mX90, G::Y90},
      {G::mX90, G::mY90},
      {G::Y90, G::X90},
      {G::Y90, G::mX90},
      {G::mY90, G::X90},
      {G::mY90, G::mX90},
      {G::X90},
      {G::mX90},
      {G::Y90},
      {G::mY90},
      {G::mX90, G::Y90, G::X90},
      {G::mX90, G::mY90, G::X90},
      {G::X180, G::Y90},
      {G::X180, G::mY90},
      {G::Y180, G::X90},
      {G::Y180, G::mX90},
      {G::X90, G::Y90, G::X90},
      {G::mX90, G::Y90, G::mX90},
  };
  return table;
}

bool same_up_to_phase(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return std::abs(std::abs((a.adjoint() * b).trace()) - 2.0) < 1e-9;
}

}  // namespace

std::string_view to_string(Generator g) {
  switch (g) {
    case G::I: return "I";
    case G::X90: return "X90";
    case G::mX90: return "-X90";
    case G::Y90: return "Y90";
    case G::mY90: return "-Y90";
    case G::X180: return "X180";
    case G::Y180: return "Y180";
  }
  return "?";
}

Eigen::Matrix2cd generator_unitary(Generator g) {
  const auto [angle, phase] = rotation_of(g);
  const std::complex<double> i{0.0, 1.0};
  Eigen::Matrix2cd axis;
  axis << 0.0, std::polar(1.0, -phase), std::polar(1.0, phase), 0.0;
  return std::cos(angle / 2) * Eigen::Matrix2cd::Identity() - i * std::sin(angle / 2) * axis;
}

CliffordTable::CliffordTable(std::vector<Clifford> elements) : elements_(std::move(elements)) {
  const std::size_t n = elements_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& u = elements_[i].unitary;
    if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
      throw Error("Clifford element is not unitary");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (same_up_to_phase(u, elements_[j].unitary)) throw Error("duplicate Clifford element");
    }
  }
  identity_ = find(Eigen::Matrix2cd::Identity());
  product_.assign(n, std::vector<std::size_t>(n, 0));
  inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      product_[a][b] = find(elements_[b].unitary * elements_[a].unitary);
      if (product_[a][b] == identity_) inverse_[a] = b;
    }
    if (product_[a][inverse_[a]] != identity_) throw Error("Clifford element has no inverse");
  }
}

std::size_t CliffordTable::find(const Eigen::Matrix2cd& u) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (same_up_to_phase(u, elements_[i].unitary)) return i;
  }
  throw Error("unitary is not in the Clifford table");
}

double CliffordTable::mean_generator_count() const {
  double total = 0.0;
  for (const auto& c : elements_) total += static_cast<double>(c.gates.size());
  return total / static_cast<double>(elements_.size());
}

CliffordTable build_clifford_table() {
  std::vector<Clifford> elements;
  for (const auto& gates : decompositions()) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    for (auto g : gates) u = generator_unitary(g) * u;
    elements.push_back({gates, u});
  }
  if (elements.size() != 24) throw Error("Clifford table must have 24 elements");
  return CliffordTable(std::move(elements));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ a) ^ b);
}

std::vector<std::size_t> rb_sequence(const CliffordTable& table, std::size_t m,
                                     std::uint64_t seed) {
  if (m < 1) throw DomainError("rb_sequence: length must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, table.size() - 1);
  std::vector<std::size_t> seq;
  seq.reserve(m + 1);
  std::size_t net = table.identity();
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t c = pick(rng);
    seq.push_back(c);
    net = table.compose(net, c);
  }
  seq.push_back(table.inverse(net));
  return seq;
}

RbCurve run_rb(std::span<const std::size_t> lengths, std::size_t repeats,
               const std::optional<noise::CoherenceRecord>& noise, const sim::PulseSpec& pi_pulse,
               std::uint64_t seed, const sim::SimConfig& base) {
  if (lengths.empty()) throw DomainError("run_rb: no sequence lengths");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 1 || (i > 0 && lengths[i] <= lengths[i - 1])) {
      throw DomainError("run_rb: lengths must be positive and increasing");
    }
  }
  if (repeats < 1) throw DomainError("run_rb: repeats must be >= 1");

  sim::SimConfig config = base;
  config.padding = 0.0;
  config.check_invariants = false;
  config.t1.reset();
  config.t_phi.reset();
  if (noise) {
    const auto decoherent = sim::SimConfig::from_coherence(*noise, config.levels);
    config.t1 = decoherent.t1;
    config.t_phi = decoherent.t_phi;
  }

  // One superoperator per physical generator, then per Clifford.
  const auto table = build_clifford_table();
  const auto unit = sim::EnvelopeModulator::constant(1.0);
  std::array<sim::Matrix, kGenerators.size()> gate_maps;
  for (auto g : kGenerators) {
    const auto [angle, phase] = rotation_of(g);
    sim::PulseSpec p = pi_pulse;
    p.amplitude = pi_pulse.amplitude * angle / kPi;
    p.phase = pi_pulse.phase + phase;
    gate_maps[static_cast<std::size_t>(g)] = sim::propagator(p, unit, config);
  }
  std::vector<sim::Matrix> clifford_maps;
  const int dim = config.levels * config.levels;
  for (std::size_t c = 0; c < table.size(); ++c) {
    sim::Matrix s = sim::Matrix::Identity(dim, dim);
    for (auto g : table[c].gates) s = gate_maps[static_cast<std::size_t>(g)] * s;
    clifford_maps.push_back(std::move(s));
  }

  const sim::Vector ground = sim::vectorize(sim::QubitState::ground(config.levels).density_matrix());
  RbCurve curve;
  curve.lengths.assign(lengths.begin(), lengths.end());
  for (std::size_t li = 0; li < lengths.size(); ++li) {
    std::vector<double> survival(repeats);
    for (std::size_t r = 0; r < repeats; ++r) {
      const auto seq = rb_sequence(table, lengths[li], derive_seed(seed, li, r));
      sim::Vector v = ground;
      for (auto c : seq) v = clifford_maps[c] * v;
      survival[r] = v[0].real();
    }
    const double mean = std::accumulate(survival.begin(), survival.end(), 0.0) / repeats;
    double var = 0.0;
    for (double s : survival) var += (s - mean) * (s - mean);
    curve.survival.push_back(mean);
    curve.spread.push_back(repeats > 1 ? std::sqrt(var / (repeats - 1)) : 0.0);
  }
  return curve;
}

RbResult RbResult::from_decay(double a, double b, double p, int d) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("RB decay parameter p must lie in (0, 1]");
  RbResult r;
  r.a = a;
  r.b = b;
  r.p = p;
  r.d = d;
  r.r_clifford = (1.0 - p) * (d - 1) / d;
  r.r_g = r.r_clifford / kGeneratorsPerClifford;
  r.f_1q = 1.0 - r.r_g;
  return r;
}

RbResult fit_rb(std::span<const double> lengths, std::span<const double> fidelities,
                std::span<const double> sigma) {
  using fit::FitError;
  using fit::FitErrorKind;
  if (lengths.size() != fidelities.size()) {
    throw FitError(FitErrorKind::invalid_input, "fit_rb: lengths and fidelities differ in size");
  }
  if (!sigma.empty() && sigma.size() != lengths.size()) {
    throw FitError(FitErrorKind::invalid_input, "fit_rb: sigma and fidelities differ in size");
  }
  for (double s : sigma) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw FitError(FitErrorKind::invalid_input, "fit_rb: sigma must be positive");
    }
  }
  std::vector<double> distinct(lengths.begin(), lengths.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) {
    throw FitError(FitErrorKind::insufficient_data, "fit_rb: need at least 3 distinct lengths");
  }

  fit::Data data{{lengths.begin(), lengths.end()},
                 {fidelities.begin(), fidelities.end()},
                 {sigma.begin(), sigma.end()}};
  auto weight = [&](std::size_t i) { return data.sigma.empty() ? 1.0 : 1.0 / data.sigma[i]; };
  const auto model = fit::rb_decay_model();
  fit::Bounds bounds{{-1.0, 1e-12, -1.0}, {2.0, 1.0, 2.0}};
  auto clamp_start = [&](std::vector<double> s) {
    for (std::size_t j = 0; j < 3; ++j) s[j] = std::clamp(s[j], bounds.lower[j], bounds.upper[j]);
    return s;
  };
  auto sse = [&](const std::vector<double>& s) {
    double total = 0.0;
    for (std::size_t i = 0; i < data.x.size(); ++i) {
      const double r = (model.value(data.x[i], s) - data.y[i]) * weight(i);
      total += r * r;
    }
    return total;
  };

  // Tail mean for B, first point for A, log-linear regression for p.
  std::vector<std::size_t> order(data.x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return data.x[i] < data.x[j]; });
  const std::size_t tail = std::max<std::size_t>(1, order.size() / 4);
  double b0 = 0.0;
  for (std::size_t k = order.size() - tail; k < order.size(); ++k) b0 += data.y[order[k]];
  b0 /= static_cast<double>(tail);
  const double a0 = data.y[order.front()] - b0;
  double p0 = 0.99;
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < data.x.size(); ++i) {
      const double diff = data.y[i] - b0;
      if (a0 == 0.0 || diff / a0 <= 0.0) continue;
      const double ly = std::log(diff / a0);
      sx += data.x[i];
      sy += ly;
      sxx += data.x[i] * data.x[i];
      sxy += data.x[i] * ly;
      ++cnt;
    }
    const double denom = cnt * sxx - sx * sx;
    if (cnt >= 2 && denom > 0.0) p0 = std::exp((cnt * sxy - sx * sy) / denom);
  }
  std::vector<double> start = clamp_start({a0, p0, b0});

  // Variable projection over a grid of p guards against an unsaturated tail.
  Eigen::VectorXd y(data.y.size());
  for (std::size_t i = 0; i < data.y.size(); ++i) y[static_cast<Eigen::Index>(i)] = data.y[i] * weight(i);
  for (int k = 0; k <= 300; ++k) {
    const double p = 1.0 - std::pow(10.0, -8.0 + 8.0 * k / 300.0) * 0.5;
    Eigen::MatrixXd basis(data.x.size(), 2);
    for (std::size_t i = 0; i < data.x.size(); ++i) {
      basis(static_cast<Eigen::Index>(i), 0) = std::pow(p, data.x[i]) * weight(i);
      basis(static_cast<Eigen::Index>(i), 1) = weight(i);
    }
    const Eigen::Vector2d c = basis.colPivHouseholderQr().solve(y);
    auto cand = clamp_start({c[0], p, c[1]});
    if (sse(cand) < sse(start)) start = cand;
  }

  fit::Options options;
  options.absolute_sigma = !data.sigma.empty();
  auto result = fit::least_squares(model, data, start, bounds, options);
  const double p = result.value("p");
  if (!(p > 0.0 && p <= 1.0) || p <= bounds.lower[1]) {
    throw FitError(FitErrorKind::bounds_violation, "fit_rb: p outside (0, 1]",
                   result.iterations, result.residual_norm);
  }
  RbResult out = RbResult::from_decay(result.value("a"), result.value("b"), p);
  out.p_error = result.error("p");
  out.f_1q_error = out.p_error * (out.d - 1) / (kGeneratorsPerClifford * out.d);
  out.fit = std::move(result);
  return out;
}

FidelityModel FidelityModel::make(double t_g, double t1, double t2_star, double t2_star_baseline,
                                  double c0_extra, std::optional<double> k1) {
  if (!(t_g > 0.0 && t1 > 0.0 && t2_star > 0.0 && t2_star_baseline > 0.0)) {
    throw DomainError("coherence-limited fidelity: times must be positive");
  }
  FidelityModel m;
  m.t_g = t_g;
  m.c0 = t_g / (3.0 * t1) + c0_extra;
  m.k1 = k1.value_or(default_k1(t_g));
  const double rate = 1.0 / t2_star - 1.0 / t2_star_baseline;
  m.t_phi_mux = rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
  return m;
}

double FidelityModel::fidelity() const {
  const double mux = std::isfinite(t_phi_mux) ? k1 / t_phi_mux : 0.0;
  return 1.0 - c0 - mux;
}

double coherence_limited_fidelity(double t_g, double t1, double t2_star, double t2_star_baseline,
                                  double c0_extra, std::optional<double> k1) {
  return FidelityModel::make(t_g, t1, t2_star, t2_star_baseline, c0_extra, k1).fidelity();
}

}  // namespace cryomux::rb
