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

#include "cryomux/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "cryomux/chainmodel.hpp"
#include "cryomux/config.hpp"
#include "cryomux/constants.hpp"
#include "cryomux/fitkit.hpp"
#include "cryomux/noisecalc.hpp"
#include "cryomux/qubitsim.hpp"
#include "cryomux/rbengine.hpp"

namespace cryomux::cli {
namespace {

using nlohmann::json;
using Tables = std::vector<io::Table>;
using Runner = std::function<Tables(std::uint64_t seed)>;
using Prepare = std::function<Runner(const json& inputs)>;

struct Entry {
  ScenarioInfo info;
  Prepare prepare;
};

std::vector<double> linspace_step(double lo, double hi, double step, std::string_view what) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ConfigError(std::string(what) + ": need finite lo <= hi and step > 0");
  }
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n > 100000) throw ConfigError(std::string(what) + ": too many points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + static_cast<double>(i) * step;
  return out;
}

std::vector<double> positive_list(const json& in, std::string_view key,
                                  std::vector<double> fallback) {
  auto values = config::number_list(in, key, std::move(fallback));
  if (values.empty()) throw ConfigError("key '" + std::string(key) + "' must not be empty");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError("key '" + std::string(key) + "' must hold positive values");
    }
  }
  return values;
}

double positive(const json& in, std::string_view key, double fallback) {
  const double v = config::number(in, key, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError("key '" + std::string(key) + "' must be positive");
  }
  return v;
}

double non_negative(const json& in, std::string_view key, double fallback) {
  const double v = config::number(in, key, fallback);
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ConfigError("key '" + std::string(key) + "' must be non-negative");
  }
  return v;
}

std::size_t count(const json& in, std::string_view key, std::size_t fallback) {
  auto it = in.find(std::string(key));
  if (it == in.end()) return fallback;
  if (!it->is_number_unsigned() || it->get<std::uint64_t>() == 0) {
    throw ConfigError("key '" + std::string(key) + "' must be a positive integer");
  }
  return static_cast<std::size_t>(it->get<std::uint64_t>());
}

chain::MuxModel mux_input(const json& in) {
  auto it = in.find("mux");
  if (it == in.end()) return chain::MuxModel::measured();
  return chain::mux_model_from_json(*it);
}

noise::TransmonParams transmon_input(const json& in) {
  auto it = in.find("transmon");
  if (it == in.end()) return noise::TransmonParams::reference_device();
  return noise::transmon_from_json(*it);
}

io::Table sweep_table(std::string name, std::string x_name, std::string x_unit) {
  return io::Table{std::move(name),
                   {{std::move(x_name), std::move(x_unit)}, {"value", "-"}, {"unit", "-"}},
                   {}};
}

std::string volt_tag(double v) {
  std::string s = io::format_number(v);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s + "v";
}

// fig2_power ---------------------------------------------------------------

Runner prepare_fig2_power(const json& in) {
  config::allow_only(in,
                     {"mux", "v_dd_min_v", "v_dd_max_v", "v_dd_step_v", "switch_rates_hz",
                      "dynamic_v_dd_v"},
                     "fig2_power");
  const auto mux = mux_input(in);
  const auto v_dd = linspace_step(non_negative(in, "v_dd_min_v", 0.0),
                                  non_negative(in, "v_dd_max_v", 1.0),
                                  config::number(in, "v_dd_step_v", 0.025), "v_dd sweep");
  std::vector<double> default_rates;
  for (int i = 0; i <= 10; ++i) default_rates.push_back(1e5 * i);
  const auto rates = config::number_list(in, "switch_rates_hz", default_rates);
  for (double r : rates) {
    if (!(r >= 0.0)) throw ConfigError("switch_rates_hz must be non-negative");
  }
  const auto dyn_v = positive_list(in, "dynamic_v_dd_v", {0.7});

  return [=](std::uint64_t) {
    Tables out;
    auto total = sweep_table("static_total", "v_dd", "V");
    auto esd = sweep_table("static_esd", "v_dd", "V");
    auto core = sweep_table("static_core", "v_dd", "V");
    for (double v : v_dd) {
      const auto b = chain::static_power_breakdown(mux, v);
      total.add_row({v, b.total, std::string("W")});
      esd.add_row({v, b.esd, std::string("W")});
      core.add_row({v, b.core, std::string("W")});
    }
    out.push_back(std::move(total));
    out.push_back(std::move(esd));
    out.push_back(std::move(core));
    for (double v : dyn_v) {
      auto par = sweep_table("dynamic_parallel_" + volt_tag(v), "switch_rate", "Hz");
      auto ser = sweep_table("dynamic_serial_" + volt_tag(v), "switch_rate", "Hz");
      for (double r : rates) {
        par.add_row({r, chain::dynamic_power(mux, r, v, chain::DynamicMode::parallel),
                     std::string("W")});
        ser.add_row({r, chain::dynamic_power(mux, r, v, chain::DynamicMode::serial_digital_only),
                     std::string("W")});
      }
      out.push_back(std::move(par));
      out.push_back(std::move(ser));
    }
    return out;
  };
}

// fig3_coherence -----------------------------------------------------------

struct BiasPoint {
  double v_dd = 0.0;
  noise::CoherenceRecord truth;
};

std::vector<BiasPoint> bias_points(const json& in) {
  auto it = in.find("bias_points");
  if (it == in.end()) {
    return {{0.0, {30e-6, 35e-6, 35e-6}}, {0.6, {30e-6, 35e-6, 35e-6}},
            {0.7, {30e-6, 25e-6, 25e-6}}};
  }
  if (!it->is_array() || it->empty()) throw ConfigError("bias_points must be a non-empty array");
  std::vector<BiasPoint> out;
  for (const auto& p : *it) {
    config::require_object(p, "bias point");
    config::allow_only(p, {"v_dd_v", "t1_s", "t2_star_s", "t2_echo_s"}, "bias point");
    BiasPoint b;
    b.v_dd = non_negative(p, "v_dd_v", 0.0);
    b.truth.t1 = positive(p, "t1_s", 30e-6);
    b.truth.t2_star = positive(p, "t2_star_s", 35e-6);
    b.truth.t2_echo = positive(p, "t2_echo_s", b.truth.t2_star);
    b.truth.validate();
    out.push_back(b);
  }
  return out;
}

Runner prepare_fig3_coherence(const json& in) {
  config::allow_only(in,
                     {"transmon", "attenuation_db", "baseline_t2_echo_s", "bias_points",
                      "noise_sigma", "ramsey_detuning_hz", "samples", "span_factor"},
                     "fig3_coherence");
  const auto params = transmon_input(in);
  const double attenuation = non_negative(in, "attenuation_db", 13.0);
  const double baseline = positive(in, "baseline_t2_echo_s", 35e-6);
  const auto points = bias_points(in);
  const double sigma = non_negative(in, "noise_sigma", 0.005);
  const double detuning = positive(in, "ramsey_detuning_hz", 0.2e6);
  const std::size_t samples = count(in, "samples", 241);
  const double span_factor = positive(in, "span_factor", 4.0);
  if (samples < 16) throw ConfigError("samples must be at least 16");

  return [=](std::uint64_t seed) {
    io::Table table{"coherence",
                    {{"v_dd", "V"},
                     {"t1", "s"},
                     {"t2_star", "s"},
                     {"t2_echo", "s"},
                     {"gamma_excess", "1/s"},
                     {"n_resonator", "1"},
                     {"n_source", "1"},
                     {"t_eff", "K"}},
                    {}};
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& pt = points[i];
      const double longest = std::max({pt.truth.t1, pt.truth.t2_star, pt.truth.t2_echo});
      const double t_max = span_factor * longest;
      // Ramsey sampling has to resolve the detuning fringes.
      const std::size_t n =
          std::max<std::size_t>(samples, static_cast<std::size_t>(4.0 * t_max * detuning) + 1);
      std::vector<double> times(n);
      for (std::size_t k = 0; k < n; ++k) times[k] = t_max * static_cast<double>(k) / (n - 1);

      auto trace = [&](sim::DecayKind kind, std::uint64_t stream) {
        return fit::Data{times,
                         sim::synth_decay_trace(kind, pt.truth, detuning, times, sigma,
                                                rb::derive_seed(seed, i, stream)),
                         {}};
      };
      const auto t1 = fit::fit_t1(trace(sim::DecayKind::t1, 0));
      const auto ramsey = fit::fit_ramsey(trace(sim::DecayKind::ramsey, 1));
      const auto echo = fit::fit_echo(trace(sim::DecayKind::echo, 2));

      const double gamma = std::max(0.0, 1.0 / echo.time_constant - 1.0 / baseline);
      const double n_res = noise::occupancy_from_dephasing(gamma, params);
      const double n_src =
          noise::propagate_attenuation(n_res, attenuation, noise::Direction::toward_source);
      const double t_eff = noise::occupancy_to_temperature(n_src, params.resonator_frequency_hz());
      table.add_row({pt.v_dd, t1.time_constant, ramsey.t2_star, echo.time_constant, gamma, n_res,
                     n_src, t_eff});
    }
    return Tables{std::move(table)};
  };
}

// fig3f_slope --------------------------------------------------------------

Runner prepare_fig3f_slope(const json& in) {
  config::allow_only(in,
                     {"transmon", "attenuation_db", "projection_attenuation_db",
                      "baseline_t2_echo_s", "static_t2_echo_s", "slope_s_per_hz",
                      "switch_rates_hz"},
                     "fig3f_slope");
  const auto params = transmon_input(in);
  const double attenuation = non_negative(in, "attenuation_db", 13.0);
  const double projection = non_negative(in, "projection_attenuation_db", 20.0);
  const double baseline = positive(in, "baseline_t2_echo_s", 35e-6);
  const double t2_static = positive(in, "static_t2_echo_s", 25e-6);
  const double slope = non_negative(in, "slope_s_per_hz", noise::kSwitchingDephasingSlope);
  std::vector<double> default_rates;
  for (int i = 0; i <= 10; ++i) default_rates.push_back(1e5 * i);
  const auto rates = config::number_list(in, "switch_rates_hz", default_rates);
  for (double r : rates) {
    if (!(r >= 0.0)) throw ConfigError("switch_rates_hz must be non-negative");
  }

  return [=](std::uint64_t) {
    io::Table table{"switching",
                    {{"switch_rate", "Hz"},
                     {"gamma_echo", "1/s"},
                     {"t2_echo", "s"},
                     {"n_source", "1"},
                     {"t_eff", "K"},
                     {"t2_limit_projected", "s"}},
                    {}};
    for (double rate : rates) {
      const double gamma = noise::dephasing_vs_switching(rate, 1.0 / t2_static, slope);
      const double excess = std::max(0.0, gamma - 1.0 / baseline);
      const double n_res = noise::occupancy_from_dephasing(excess, params);
      const double n_src =
          noise::propagate_attenuation(n_res, attenuation, noise::Direction::toward_source);
      const double t_eff = noise::occupancy_to_temperature(n_src, params.resonator_frequency_hz());
      table.add_row({rate, gamma, 1.0 / gamma, n_src, t_eff,
                     noise::projected_t2_limit(n_src, projection, params)});
    }
    return Tables{std::move(table)};
  };
}

// fig4a_rb -----------------------------------------------------------------

struct RbInputs {
  std::vector<std::size_t> lengths;
  std::size_t repeats = 20;
  double t1 = 30e-6;
  std::vector<double> t2_star;
  double t2_star_baseline = 60e-6;
  double gate_time = 40e-9;
  std::optional<double> k1;
  int levels = 2;
  std::size_t steps_per_gate = 400;
};

RbInputs rb_inputs(const json& in) {
  config::allow_only(in,
                     {"preset", "lengths", "repeats", "t1_s", "t2_star_s", "t2_star_baseline_s",
                      "gate_time_s", "k1_s", "levels", "steps_per_gate"},
                     "fig4a_rb");
  RbInputs r;
  const auto preset = config::string(in, "preset", "desk");
  std::vector<double> default_lengths;
  if (preset == "desk") {
    default_lengths = {1, 2, 5, 10, 20, 50, 100, 200, 400};
    r.repeats = 20;
  } else if (preset == "full") {
    default_lengths = {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000};
    r.repeats = 80;
  } else {
    throw ConfigError("preset must be 'desk' or 'full'");
  }
  for (double m : config::number_list(in, "lengths", default_lengths)) {
    if (!(m >= 1.0) || m != std::floor(m) || m > 1e5) {
      throw ConfigError("lengths must be positive integers");
    }
    r.lengths.push_back(static_cast<std::size_t>(m));
  }
  if (r.lengths.size() < 4) throw ConfigError("lengths needs at least four entries");
  r.repeats = count(in, "repeats", r.repeats);
  r.t1 = positive(in, "t1_s", 30e-6);
  r.t2_star = positive_list(in, "t2_star_s", {10e-6, 15e-6, 25e-6, 40e-6});
  for (double t2 : r.t2_star) noise::CoherenceRecord{r.t1, t2, t2}.validate();
  r.t2_star_baseline = positive(in, "t2_star_baseline_s", 2.0 * r.t1);
  r.gate_time = positive(in, "gate_time_s", 40e-9);
  if (in.contains("k1_s")) r.k1 = non_negative(in, "k1_s", 0.0);
  r.levels = static_cast<int>(config::number(in, "levels", 2));
  if (r.levels != 2 && r.levels != 3) throw ConfigError("levels must be 2 or 3");
  r.steps_per_gate = count(in, "steps_per_gate", 400);
  if (r.steps_per_gate < 200) throw ConfigError("steps_per_gate must be at least 200");
  return r;
}

Runner prepare_fig4a_rb(const json& in) {
  const auto r = rb_inputs(in);
  return [=](std::uint64_t seed) {
    sim::SimConfig base;
    base.levels = r.levels;
    base.dt = r.gate_time / static_cast<double>(r.steps_per_gate);
    const auto shape = r.levels == 3 ? sim::PulseShape::cosine_drag : sim::PulseShape::cosine;
    const double drag = r.levels == 3 ? 0.5 : 0.0;
    const auto pi = sim::calibrate_pi_pulse(r.gate_time, shape, base, drag);
    const double k1 = r.k1.value_or(rb::FidelityModel::white_noise_k1(r.gate_time));

    io::Table curves{"rb_curves",
                     {{"t2_star", "s"}, {"length", "1"}, {"survival", "1"}, {"spread", "1"}},
                     {}};
    io::Table summary{"rb_fit",
                      {{"t2_star", "s"},
                       {"inv_t2_star", "1/s"},
                       {"p", "1"},
                       {"p_error", "1"},
                       {"f_1q", "1"},
                       {"f_1q_error", "1"},
                       {"f_model", "1"}},
                      {}};
    for (std::size_t i = 0; i < r.t2_star.size(); ++i) {
      const noise::CoherenceRecord rec{r.t1, r.t2_star[i], r.t2_star[i]};
      const auto curve = rb::run_rb(r.lengths, r.repeats, rec, pi, rb::derive_seed(seed, i, 0), base);
      std::vector<double> m(curve.lengths.begin(), curve.lengths.end());
      std::vector<double> sem(m.size());
      for (std::size_t k = 0; k < m.size(); ++k) {
        sem[k] = std::max(curve.spread[k], 1e-12) / std::sqrt(static_cast<double>(r.repeats));
      }
      const auto fit = rb::fit_rb(m, curve.survival, sem);
      for (std::size_t k = 0; k < m.size(); ++k) {
        curves.add_row({r.t2_star[i], static_cast<std::int64_t>(curve.lengths[k]),
                        curve.survival[k], curve.spread[k]});
      }
      const double model = rb::coherence_limited_fidelity(r.gate_time, r.t1, r.t2_star[i],
                                                          r.t2_star_baseline, 0.0, k1);
      summary.add_row({r.t2_star[i], 1.0 / r.t2_star[i], fit.p, fit.p_error, fit.f_1q,
                       fit.f_1q_error, model});
    }
    return Tables{std::move(curves), std::move(summary)};
  };
}

// fig4b_tdm ----------------------------------------------------------------

Runner prepare_fig4b_tdm(const json& in) {
  config::allow_only(in,
                     {"mux", "rise_time_s", "gate_time_s", "window_min_ns", "window_max_ns",
                      "window_step_ns", "windows_ns", "padding_s", "steps_per_gate", "levels"},
                     "fig4b_tdm");
  auto mux = mux_input(in);
  mux.rise_time = non_negative(in, "rise_time_s", 0.0);
  mux.validate();
  const double gate_time = positive(in, "gate_time_s", 40e-9);
  std::vector<double> windows_ns;
  if (in.contains("windows_ns")) {
    windows_ns = config::number_list(in, "windows_ns", {});
    if (windows_ns.empty()) throw ConfigError("windows_ns must not be empty");
  } else {
    windows_ns = linspace_step(non_negative(in, "window_min_ns", 0.0),
                               non_negative(in, "window_max_ns", 60.0),
                               config::number(in, "window_step_ns", 2.0), "window sweep");
  }
  for (double w : windows_ns) {
    if (!(w >= 0.0)) throw ConfigError("windows must be non-negative");
  }
  const double padding = non_negative(in, "padding_s", 10e-9);
  const std::size_t steps = count(in, "steps_per_gate", 2000);
  const int levels = static_cast<int>(config::number(in, "levels", 2));
  if (levels != 2 && levels != 3) throw ConfigError("levels must be 2 or 3");
  sim::SimConfig cfg;
  cfg.levels = levels;
  cfg.dt = gate_time / static_cast<double>(steps);
  cfg.padding = padding;
  sim::PulseSpec probe;
  probe.duration = gate_time;
  probe.amplitude = 1.0;
  cfg.validate(probe);
  for (double w : windows_ns) {
    if (w * 1e-9 > cfg.horizon(probe) * (1.0 + 1e-12)) {
      throw ConfigError("window exceeds the simulation horizon");
    }
  }

  return [=](std::uint64_t) {
    auto cal = cfg;
    cal.padding = 0.0;
    const auto pi = sim::calibrate_pi_pulse(gate_time, sim::PulseShape::cosine, cal);
    std::vector<double> windows(windows_ns.size());
    for (std::size_t i = 0; i < windows.size(); ++i) windows[i] = windows_ns[i] * 1e-9;
    const auto points = sim::tdm_sweep(windows, mux, pi, cfg);
    io::Table table{"tdm", {{"window_ns", "ns"}, {"p_e", "1"}, {"one_minus_p_e", "1"}}, {}};
    for (std::size_t i = 0; i < points.size(); ++i) {
      table.add_row({windows_ns[i], points[i].p_e, 1.0 - points[i].p_e});
    }

    // Envelope of the widest window, shown with the measured rise time.
    auto shown = mux;
    if (shown.rise_time == 0.0) shown.rise_time = chain::MuxModel::measured().rise_time;
    const double horizon = cfg.horizon(pi);
    const double w = std::min(*std::max_element(windows.begin(), windows.end()), horizon);
    const double centre = gate_time / 2.0;
    const auto schedule = chain::GatingSchedule::window(shown, chain::RfPort::RF1,
                                                        chain::RfPort::RF2, centre - w / 2.0,
                                                        centre + w / 2.0);
    auto envelope = sweep_table("envelope", "time", "s");
    const std::size_t n = 241;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = -padding + horizon * static_cast<double>(k) / (n - 1);
      envelope.add_row({t, chain::gating_envelope(schedule, chain::RfPort::RF1, t, shown.rise_time),
                        std::string("amplitude")});
    }
    return Tables{std::move(table), std::move(envelope)};
  };
}

// methods_t1_limit ---------------------------------------------------------

Runner prepare_methods_t1_limit(const json& in) {
  config::allow_only(in,
                     {"c_d_f", "c_q_f", "r_m_ohm", "t_eff_k", "qubit_frequency_hz",
                      "attenuation_db"},
                     "methods_t1_limit");
  noise::DriveCoupling c;
  c.c_d = positive(in, "c_d_f", c.c_d);
  c.c_q = positive(in, "c_q_f", c.c_q);
  c.r_m = positive(in, "r_m_ohm", c.r_m);
  c.t_eff = non_negative(in, "t_eff_k", c.t_eff);
  const double f_q = positive(in, "qubit_frequency_hz", 3.957e9);
  const auto attenuations = config::number_list(in, "attenuation_db", {0.0});
  for (double a : attenuations) {
    if (!(a >= 0.0)) throw ConfigError("attenuation_db must be non-negative");
  }
  return [=](std::uint64_t) {
    io::Table table{"t1_limit",
                    {{"attenuation_db", "dB"}, {"t1_limit", "s"}, {"s_vv", "V^2/Hz"}},
                    {}};
    const double omega = constants::angular(f_q);
    for (double a : attenuations) {
      table.add_row({a, noise::t1_limit(c, omega, a),
                     noise::voltage_noise_psd(omega, c.r_m, c.t_eff) *
                         constants::db_to_power_ratio(a)});
    }
    return Tables{std::move(table)};
  };
}

// methods_teff -------------------------------------------------------------

Runner prepare_methods_teff(const json& in) {
  config::allow_only(in,
                     {"transmon", "attenuation_db", "projection_attenuation_db",
                      "baseline_t2_echo_s", "static_t2_echo_s", "switch_rate_hz",
                      "slope_s_per_hz"},
                     "methods_teff");
  const auto params = transmon_input(in);
  const double attenuation = non_negative(in, "attenuation_db", 13.0);
  const double projection = non_negative(in, "projection_attenuation_db", 20.0);
  const double baseline = positive(in, "baseline_t2_echo_s", 35e-6);
  const double t2_static = positive(in, "static_t2_echo_s", 25e-6);
  const double rate = non_negative(in, "switch_rate_hz", 1e6);
  const double slope = non_negative(in, "slope_s_per_hz", noise::kSwitchingDephasingSlope);
  return [=](std::uint64_t) {
    io::Table table{"teff",
                    {{"case", "-"},
                     {"gamma_excess", "1/s"},
                     {"n_resonator", "1"},
                     {"n_source", "1"},
                     {"t_eff", "K"},
                     {"t2_limit_projected", "s"}},
                    {}};
    auto add = [&](std::string name, double gamma_total) {
      const double excess = std::max(0.0, gamma_total - 1.0 / baseline);
      const double n_res = noise::occupancy_from_dephasing(excess, params);
      const double n_src =
          noise::propagate_attenuation(n_res, attenuation, noise::Direction::toward_source);
      table.add_row({std::move(name), excess, n_res, n_src,
                     noise::occupancy_to_temperature(n_src, params.resonator_frequency_hz()),
                     noise::projected_t2_limit(n_src, projection, params)});
    };
    add("static", 1.0 / t2_static);
    add("switching", noise::dephasing_vs_switching(rate, 1.0 / t2_static, slope));
    return Tables{std::move(table)};
  };
}

// scaling_capacity ---------------------------------------------------------

Runner prepare_scaling_capacity(const json& in) {
  config::allow_only(in, {"cooling_power_w", "per_channel_power_w", "target_qubits"},
                     "scaling_capacity");
  const double cooling = positive(in, "cooling_power_w", 20e-6);
  const auto per_channel = positive_list(in, "per_channel_power_w", {0.2e-6, 25e-9, 20e-9});
  const auto targets = positive_list(in, "target_qubits", {100.0, 1000.0, 1e6});
  return [=](std::uint64_t) {
    auto capacity = sweep_table("capacity", "per_channel_power", "W");
    for (double p : per_channel) {
      capacity.add_row(
          {p, static_cast<double>(chain::qubit_capacity({cooling, p})), std::string("qubits")});
    }
    auto required = sweep_table("required_power", "qubits", "1");
    for (double n : targets) {
      required.add_row({n, chain::required_channel_power(cooling, n), std::string("W")});
    }
    return Tables{std::move(capacity), std::move(required)};
  };
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e{
        {{"fig2_power", "static and dynamic multiplexer power versus bias and switching rate"},
         prepare_fig2_power},
        {{"fig3_coherence", "coherence fits and effective noise temperature per bias point"},
         prepare_fig3_coherence},
        {{"fig3f_slope", "echo dephasing versus switching rate with 20 dB projections"},
         prepare_fig3f_slope},
        {{"fig4a_rb", "simulated randomized benchmarking versus T2*"}, prepare_fig4a_rb},
        {{"fig4b_tdm", "excited population versus multiplexer window width"},
         prepare_fig4b_tdm},
        {{"methods_t1_limit", "relaxation limit from drive-line voltage noise"},
         prepare_methods_t1_limit},
        {{"methods_teff", "effective multiplexer noise temperature, static and switching"},
         prepare_methods_teff},
        {{"scaling_capacity", "qubit count supported by a cooling budget and its inverse"},
         prepare_scaling_capacity},
    };
    std::sort(e.begin(), e.end(),
              [](const Entry& a, const Entry& b) { return a.info.name < b.info.name; });
    return e;
  }();
  return entries;
}

const Entry& find_entry(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.info.name == name) return e;
  }
  throw UnknownScenario("unknown scenario '" + name + "'");
}

}  // namespace

const std::vector<ScenarioInfo>& list_scenarios() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

nlohmann::json scenarios_json() {
  auto arr = json::array();
  for (const auto& info : list_scenarios()) {
    arr.push_back({{"name", info.name}, {"description", info.description}});
  }
  return arr;
}

ScenarioFile parse_scenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario file is not valid JSON: ") + e.what());
  }
  config::require_object(j, "scenario file");
  config::allow_only(j, {"scenario", "seed", "inputs"}, "scenario file");
  ScenarioFile f;
  auto name = j.find("scenario");
  if (name == j.end() || !name->is_string()) {
    throw ConfigError("scenario file: 'scenario' must be a string");
  }
  f.scenario = name->get<std::string>();
  if (auto seed = j.find("seed"); seed != j.end()) {
    if (!seed->is_number_unsigned()) {
      throw ConfigError("scenario file: 'seed' must be a non-negative integer");
    }
    f.seed = seed->get<std::uint64_t>();
  }
  if (auto inputs = j.find("inputs"); inputs != j.end()) {
    config::require_object(*inputs, "inputs");
    f.inputs = *inputs;
  }
  find_entry(f.scenario);
  return f;
}

void validate_scenario(const ScenarioFile& file) {
  config::require_object(file.inputs, "inputs");
  find_entry(file.scenario).prepare(file.inputs);
}

std::string scenario_hash(const ScenarioFile& file) {
  const json canonical{{"scenario", file.scenario}, {"seed", file.seed}, {"inputs", file.inputs}};
  return io::fnv1a_hex(canonical.dump());
}

ScenarioOutput run_scenario(const ScenarioFile& file) {
  config::require_object(file.inputs, "inputs");
  const auto runner = find_entry(file.scenario).prepare(file.inputs);
  ScenarioOutput out;
  out.scenario = file.scenario;
  out.hash = scenario_hash(file);
  out.tables = runner(file.seed);
  return out;
}

}  // namespace cryomux::cli
