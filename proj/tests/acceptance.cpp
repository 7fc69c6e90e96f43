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


// Acceptance report: one PASS/FAIL line per criterion with its runtime.
// Exit status is non-zero when a criterion fails that is not listed as a
// known limitation of an ideal simulator; --strict turns every FAIL fatal.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "cryomux/chainmodel.hpp"
#include "cryomux/fitkit.hpp"
#include "cryomux/noisecalc.hpp"
#include "cryomux/qubitsim.hpp"
#include "cryomux/rbengine.hpp"

using namespace cryomux;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGate = 40e-9;

struct Report {
  bool ok = true;
  std::ostringstream detail;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Report&)> body;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void effective_temperature(Report& r) {
  const auto p = noise::TransmonParams::reference_device();
  const double gamma = 1.0 / 25e-6 - 1.0 / 35e-6;
  const double n_res = noise::occupancy_from_dephasing(gamma, p);
  const double n_src = noise::propagate_attenuation(n_res, 13.0, noise::Direction::toward_source);
  const double t_eff = noise::occupancy_to_temperature(n_src, p.resonator_frequency_hz());
  r.detail << " n_mux=" << fmt("%.4f", n_src) << " T_eff=" << fmt("%.1f", t_eff * 1e3) << " mK";
  r.check(std::abs(n_src - 0.15) <= 0.02, "occupancy 0.15 +/- 0.02");
  r.check(std::abs(t_eff - 0.150) <= 0.015, "temperature 150 +/- 15 mK");
}

void t1_limit(Report& r) {
  const noise::DriveCoupling c{0.1e-15, 110e-15, 5.0, 7.0};
  const double w = constants::angular(3.957e9);
  const double t1 = noise::t1_limit(c, w);
  const double t1_20 = noise::t1_limit(c, w, 20.0);
  r.detail << " T1=" << fmt("%.2f", t1 * 1e6) << " us, 20 dB: " << fmt("%.2f", t1_20 * 1e3)
           << " ms";
  r.check(std::abs(t1 - 50e-6) <= 0.05 * 50e-6, "50 us +/- 5%");
  r.check(t1_20 >= 4.5e-3, ">= 4.5 ms at 20 dB");
}

void projections(Report& r) {
  const auto p = noise::TransmonParams::reference_device();
  auto project = [&](double gamma_total) {
    const double n_src = noise::propagate_attenuation(
        noise::occupancy_from_dephasing(gamma_total - 1.0 / 35e-6, p), 13.0,
        noise::Direction::toward_source);
    return noise::projected_t2_limit(n_src, 20.0, p);
  };
  const double stat = project(1.0 / 25e-6);
  const double sw = project(noise::dephasing_vs_switching(1e6, 1.0 / 25e-6));
  r.detail << " static=" << fmt("%.1f", stat * 1e6) << " us, 1 MHz=" << fmt("%.2f", sw * 1e6)
           << " us";
  r.check(stat > 400e-6, "static > 400 us");
  r.check(sw > 50e-6, "switching > 50 us");
}

double partial_area_pe(double w, double floor) {
  const double inside = w >= kGate ? 1.0 : w / kGate + std::sin(kPi * w / kGate) / kPi;
  const double theta = kPi * (floor + (1.0 - floor) * inside);
  return std::pow(std::sin(theta / 2.0), 2);
}

void tdm(Report& r) {
  const auto pi = sim::calibrate_pi_pulse(kGate, sim::PulseShape::cosine, sim::SimConfig{});
  auto mux = chain::MuxModel::measured();
  mux.rise_time = 0.0;
  sim::SimConfig cfg;
  cfg.padding = 10e-9;
  std::vector<double> windows;
  for (int k = 0; k <= 30; ++k) windows.push_back(k * 2e-9);  // 0..60 ns
  const auto sweep = sim::tdm_sweep(windows, mux, pi, cfg);
  double worst = 0.0, prev = -1.0, p30 = 0.0, p40 = 0.0;
  bool monotone = true;
  for (const auto& pt : sweep) {
    worst = std::max(worst, std::abs(pt.p_e - partial_area_pe(pt.window, mux.floor_amplitude())));
    if (pt.window <= kGate + 1e-15) {
      monotone = monotone && pt.p_e >= prev - 1e-12;
      prev = pt.p_e;
    }
    if (std::abs(pt.window - 30e-9) < 1e-12) p30 = pt.p_e;
    if (std::abs(pt.window - 40e-9) < 1e-12) p40 = pt.p_e;
  }
  const double p0 = sweep.front().p_e;
  r.detail << " points=" << sweep.size() << " p_e(0)=" << fmt("%.3e", p0)
           << " |p30-p40|/p40=" << fmt("%.2e", std::abs(p30 - p40) / p40)
           << " oracle_max_dev=" << fmt("%.1e", worst);
  r.check(p0 <= 3e-3, "p_e(0) <= 3e-3");
  r.check(monotone, "monotone on [0, 40 ns]");
  r.check(std::abs(p30 - p40) <= 0.01 * p40, "p_e(30) within 1% of p_e(40)");
  r.check(worst <= 1e-6, "partial-area oracle to 1e-6");
}

void rb_regime(Report& r) {
  const auto pi = sim::calibrate_pi_pulse(kGate, sim::PulseShape::cosine, sim::SimConfig{});
  const std::vector<std::size_t> lengths{1, 2, 5, 10, 20, 50, 100, 200, 400};
  const std::vector<double> m(lengths.begin(), lengths.end());
  constexpr std::size_t kRepeats = 20;
  constexpr double kT1 = 30e-6;
  for (double t2 : {10e-6, 25e-6, 40e-6}) {
    const double model = rb::coherence_limited_fidelity(kGate, kT1, t2, 2 * kT1, 0.0,
                                                        rb::FidelityModel::white_noise_k1(kGate));
    double f_mean = 0.0, dev = 0.0, se = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto curve = rb::run_rb(lengths, kRepeats, noise::CoherenceRecord{kT1, t2, t2}, pi,
                                    rb::derive_seed(20240611, seed, 0));
      std::vector<double> sem(m.size());
      for (std::size_t k = 0; k < m.size(); ++k)
        sem[k] = std::max(curve.spread[k], 1e-12) / std::sqrt(double(kRepeats));
      const auto fit = rb::fit_rb(m, curve.survival, sem);
      f_mean += fit.f_1q / 5.0;
      dev += (fit.f_1q - model) / 5.0;
      se += fit.f_1q_error / 5.0;
    }
    const std::string tag = fmt("%.0f", t2 * 1e6);
    r.detail << " T2*=" << tag << "us: F=" << fmt("%.5f", f_mean) << " model="
             << fmt("%.5f", model) << " |dev|/SE=" << fmt("%.2f", std::abs(dev) / se) << ";";
    r.check(f_mean > 0.999, "F > 0.999 at T2*=" + tag + " us");
    r.check(std::abs(dev) <= se, "model within SE at T2*=" + tag + " us");
  }
}

void power(Report& r) {
  const auto m = chain::MuxModel::measured();
  const double dyn = chain::dynamic_power(m, 1e6, 0.7);
  const double stat = chain::static_power(m, 0.7);
  const double esd = chain::static_power_breakdown(m, 0.7).esd;
  r.detail << " P_dyn=" << fmt("%.4f", dyn * 1e6) << " uW P_static=" << fmt("%.4f", stat * 1e6)
           << " uW ESD share=" << fmt("%.3f", esd / stat);
  r.check(std::abs(dyn - 0.49e-6) <= 1e-9, "dynamic 0.49 uW +/- 1e-3 uW");
  r.check(std::abs(stat - 0.60e-6) <= 1e-15, "static 0.60 uW");
  r.check(std::abs(esd / stat - 0.37 / 0.60) < 1e-12 && std::abs(esd / stat - 0.6) < 0.05,
          "ESD share ~60%");
}

void capacity(Report& r) {
  const auto n = chain::qubit_capacity({20e-6, 0.2e-6});
  const double per = chain::required_channel_power(20e-6, 1e6);
  r.detail << " capacity=" << n << " per-channel(1e6)=" << fmt("%.1f", per * 1e12) << " pW";
  r.check(n == 100, "100 qubits");
  r.check(std::abs(per - 20e-12) <= 1e-18, "20 pW per channel");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void properties(Report& r, const std::string& cli, const std::string& scenarios) {
  // Density-matrix invariants along a noisy 3-level trajectory.
  {
    sim::SimConfig cfg;
    cfg.levels = 3;
    cfg.t1 = 5e-6;
    cfg.t_phi = 3e-6;
    cfg.padding = 5e-9;
    sim::PulseSpec p;
    p.shape = sim::PulseShape::cosine_drag;
    p.amplitude = 2.0 * kPi / kGate;
    p.drag_coefficient = 0.5;
    double worst = 0.0;
    sim::evolve(sim::QubitState::ground(3), p, sim::EnvelopeModulator::constant(1.0), cfg,
                [&](double, const sim::Matrix& rho) {
                  Eigen::SelfAdjointEigenSolver<sim::Matrix> es(0.5 * (rho + rho.adjoint()));
                  worst = std::max({worst, std::abs(rho.trace() - sim::Complex(1.0)),
                                    (rho - rho.adjoint()).cwiseAbs().maxCoeff(),
                                    -es.eigenvalues().minCoeff()});
                });
    r.detail << " rho_dev=" << fmt("%.1e", worst);
    r.check(worst <= 1e-9, "trace/Hermiticity/positivity");
  }
  // Clifford closure and generator average.
  {
    const auto table = rb::build_clifford_table();
    bool closed = table.size() == 24;
    for (std::size_t i = 0; i < table.size(); ++i) {
      closed = closed && table.compose(i, table.inverse(i)) == table.identity();
      for (std::size_t j = 0; j < table.size(); ++j) {
        const auto k = table.compose(i, j);
        const Eigen::Matrix2cd prod = table[j].unitary * table[i].unitary;
        closed = closed && k < 24 &&
                 1.0 - std::abs((prod.adjoint() * table[k].unitary).trace()) / 2.0 < 1e-12;
      }
    }
    r.check(closed, "Clifford closure");
    r.check(table.mean_generator_count() == 1.875, "1.875 generators per Clifford");
  }
  // Noiseless round-trips for every fit model.
  {
    auto axis = [](double t_max, std::size_t n) {
      std::vector<double> t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = t_max * double(i) / double(n - 1);
      return t;
    };
    auto rel = [](double a, double b) { return std::abs(a / b - 1.0); };
    const noise::CoherenceRecord truth{30e-6, 25e-6, 35e-6};
    const auto t = axis(150e-6, 101);
    const auto tr = axis(100e-6, 1001);
    double worst = 0.0;
    worst = std::max(worst, rel(fit::fit_t1({t, sim::synth_decay_trace(sim::DecayKind::t1, truth,
                                                                       0, t), {}})
                                    .time_constant,
                                30e-6));
    worst = std::max(worst, rel(fit::fit_echo({t, sim::synth_decay_trace(sim::DecayKind::echo,
                                                                         truth, 0, t), {}})
                                    .time_constant,
                                35e-6));
    const auto ram =
        fit::fit_ramsey({tr, sim::synth_decay_trace(sim::DecayKind::ramsey, truth, 0.5e6, tr), {}});
    worst = std::max({worst, rel(ram.t2_star, 25e-6), rel(ram.detuning_hz, 0.5e6)});
    const fit::QpModelParams qp{0.5, 10e-6, 40e-6};
    const auto tq = axis(200e-6, 201);
    std::vector<double> yq;
    for (double x : tq) yq.push_back(std::exp(qp.n_qp * (std::exp(-x / qp.t1_qp) - 1.0)) *
                                     std::exp(-x / qp.t1_r));
    const auto q = fit::fit_qp_double_exp({tq, yq, {}});
    worst = std::max({worst, rel(q.params.n_qp, 0.5), rel(q.params.t1_qp, 10e-6),
                      rel(q.params.t1_r, 40e-6)});
    std::vector<double> m, y;
    for (double x : {1.0, 5.0, 10.0, 50.0, 100.0, 300.0, 1000.0, 3000.0}) {
      m.push_back(x);
      y.push_back(0.5 * std::pow(0.999, x) + 0.5);
    }
    worst = std::max(worst, rel(rb::fit_rb(m, y).p, 0.999));
    r.detail << " fit_dev=" << fmt("%.1e", worst);
    r.check(worst <= 1e-6, "fit round-trips to 1e-6");
  }
  // Occupancy and Bose-Einstein round-trips.
  {
    const auto p = noise::TransmonParams::reference_device();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lg(-4.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double n = std::pow(10.0, lg(rng));
      const double gamma = 1e5 * n;
      worst = std::max(worst, std::abs(noise::dephasing_from_occupancy(
                                           noise::occupancy_from_dephasing(gamma, p), p) /
                                           gamma - 1.0));
      worst = std::max(worst, std::abs(noise::temperature_to_occupancy(
                                           noise::occupancy_to_temperature(n, 6.471e9), 6.471e9) /
                                           n - 1.0));
    }
    r.detail << " noise_dev=" << fmt("%.1e", worst);
    r.check(worst <= 1e-10, "occupancy and Bose-Einstein round-trips to 1e-10");
  }
  // Seeded CLI reruns.
  {
    namespace fs = std::filesystem;
    const auto base = fs::temp_directory_path() / ("cryomux_accept_" + std::to_string(::getpid()));
    bool same = true;
    for (const char* name : {"fig3_coherence", "fig4a_rb", "fig4b_tdm"}) {
      std::vector<fs::path> dirs{base / (std::string(name) + "_a"), base / (std::string(name) + "_b")};
      for (const auto& d : dirs) {
        fs::create_directories(d);
        const std::string cmd = cli + " run " + scenarios + "/" + name + ".json --out-dir " +
                                d.string() + " > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        same = same && WIFEXITED(status) && WEXITSTATUS(status) == 0;
      }
      std::size_t files = 0;
      for (const auto& f : fs::directory_iterator(dirs[0])) {
        ++files;
        same = same && slurp(f.path()) == slurp(dirs[1] / f.path().filename());
      }
      same = same && files > 0;
    }
    fs::remove_all(base);
    r.check(same, "byte-identical CLI reruns");
  }
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  for (int i = 1; i < argc; ++i) strict = strict || std::strcmp(argv[i], "--strict") == 0;
  const std::string cli = CRYOMUX_CLI;
  const std::string scenarios = std::string(CRYOMUX_SOURCE_DIR) + "/scenarios";

  // Ideal Markovian dephasing at T2* = 10 us gives F ~ 0.9985, below 0.999.
  const std::set<int> known_limits{5};

  const std::vector<Criterion> criteria{
      {1, "effective noise temperature", 1.0, effective_temperature},
      {2, "T1 limit from drive-line noise", 1.0, t1_limit},
      {3, "20 dB attenuation projections", 1.0, projections},
      {4, "TDM window sweep", 60.0, tdm},
      {5, "RB fidelity regime", 300.0, rb_regime},
      {6, "power model", 1.0, power},
      {7, "capacity arithmetic", 1.0, capacity},
      {8, "property suites", 300.0,
       [&](Report& r) { properties(r, cli, scenarios); }},
  };

  int unexpected = 0, failed = 0;
  for (const auto& c : criteria) {
    Report r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(r);
    } catch (const std::exception& e) {
      r.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.check(secs < c.budget_s, "runtime budget " + fmt("%.0f", c.budget_s) + " s");
    std::printf("%s criterion %d (%s) %.3f s:%s\n", r.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                r.detail.str().c_str());
    if (!r.ok) {
      ++failed;
      if (!known_limits.count(c.id)) ++unexpected;
    }
  }
  std::printf("%d/%zu criteria passed", int(criteria.size()) - failed, criteria.size());
  if (failed > unexpected) std::printf(", %d known limitation(s)", failed - unexpected);
  std::printf("\n");
  return (strict ? failed : unexpected) == 0 ? 0 : 1;
}
