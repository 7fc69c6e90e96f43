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
#include <limits>
#include <random>

#include "cryomux/error.hpp"
#include "cryomux/noisecalc.hpp"

using namespace cryomux;
using namespace cryomux::noise;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kH = 6.62607015e-34;
constexpr double kKb = 1.380649e-23;

// Independent evaluations with locally written constants.
double oracle_occupancy(double gamma) {
  const double kappa = 2 * kPi * 0.697e6, chi = 2 * kPi * 0.259e6;
  return gamma * (kappa * kappa + 4 * chi * chi) / (4 * chi * chi * kappa);
}

double oracle_bose(double t, double f) { return 1.0 / (std::exp(kH * f / (kKb * t)) - 1.0); }

}  // namespace

TEST(Occupancy, ZeroLinearAndSingular) {
  const auto p = TransmonParams::reference_device();
  EXPECT_EQ(occupancy_from_dephasing(0.0, p), 0.0);
  EXPECT_EQ(dephasing_from_occupancy(0.0, p), 0.0);
  EXPECT_NEAR(occupancy_from_dephasing(2e4, p), 2.0 * occupancy_from_dephasing(1e4, p), 1e-18);
  auto bad = p;
  bad.chi = 0.0;
  EXPECT_THROW(occupancy_from_dephasing(1e3, bad), SingularityError);
  EXPECT_THROW(dephasing_from_occupancy(1e-3, bad), SingularityError);
}

TEST(Occupancy, ReferenceDeviceChain) {
  const auto p = TransmonParams::reference_device();
  const double gamma = 1.0 / 25e-6 - 1.0 / 35e-6;
  const double n_res = occupancy_from_dephasing(gamma, p);
  EXPECT_NEAR(n_res, oracle_occupancy(gamma), 1e-15);
  EXPECT_NEAR(n_res, 7.3e-3, 0.1e-3);
  const double n_src = propagate_attenuation(n_res, 13.0, Direction::toward_source);
  EXPECT_NEAR(n_src, n_res * std::pow(10.0, 1.3), 1e-15);
  EXPECT_NEAR(n_src, 0.146, 0.002);
  EXPECT_NEAR(dephasing_from_occupancy(7.3e-3, p), 1.14e4, 0.01e4);
}

TEST(Occupancy, RoundTripProperty) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lg(-3.0, 7.0);
  const auto p = TransmonParams::reference_device();
  for (int i = 0; i < 1000; ++i) {
    const double gamma = std::pow(10.0, lg(rng));
    EXPECT_NEAR(dephasing_from_occupancy(occupancy_from_dephasing(gamma, p), p) / gamma, 1.0,
                1e-12);
  }
}

TEST(BoseEinstein, AnalyticPointsAndLimits) {
  const double f = 6.471e9;
  EXPECT_NEAR(occupancy_to_temperature(1.0 / (std::exp(1.0) - 1.0), f), kH * f / kKb, 1e-14);
  EXPECT_EQ(occupancy_to_temperature(0.0, f), 0.0);
  EXPECT_EQ(temperature_to_occupancy(0.0, f), 0.0);
  for (double t : {0.02, 0.15, 0.5, 7.0}) {
    EXPECT_NEAR(temperature_to_occupancy(t, f) / oracle_bose(t, f), 1.0, 1e-12);
  }
}

TEST(BoseEinstein, PaperTemperatures) {
  EXPECT_NEAR(occupancy_to_temperature(0.146, 6.471e9), 0.150, 0.015);
  EXPECT_NEAR(occupancy_to_temperature(1.10, 6.471e9), 0.500, 0.050);
}

TEST(BoseEinstein, RoundTripProperty) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> lg(-6.0, 1.0);
  std::uniform_real_distribution<double> freq(1e9, 12e9);
  for (int i = 0; i < 2000; ++i) {
    const double n = std::pow(10.0, lg(rng));
    const double f = freq(rng);
    EXPECT_NEAR(temperature_to_occupancy(occupancy_to_temperature(n, f), f) / n, 1.0, 1e-10);
  }
}

TEST(Attenuation, IdentityAndInverse) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 60.0);
  EXPECT_EQ(propagate_attenuation(0.3, 0.0, Direction::toward_qubit), 0.3);
  EXPECT_NEAR(propagate_attenuation(0.146, 13.0, Direction::toward_qubit), 7.3e-3, 0.05e-3);
  EXPECT_NEAR(propagate_attenuation(0.146, 20.0, Direction::toward_qubit), 1.46e-3, 1e-15);
  for (int i = 0; i < 500; ++i) {
    const double db = u(rng), n = u(rng) / 10.0;
    const double there = propagate_attenuation(n, db, Direction::toward_source);
    EXPECT_NEAR(propagate_attenuation(there, db, Direction::toward_qubit), n, 1e-12 * (1 + n));
  }
}

TEST(Projection, StaticCaseOver400us) {
  const auto p = TransmonParams::reference_device();
  const double n_src = propagate_attenuation(
      occupancy_from_dephasing(1.0 / 25e-6 - 1.0 / 35e-6, p), 13.0, Direction::toward_source);
  const double limit = projected_t2_limit(n_src, 20.0, p);
  EXPECT_GT(limit, 400e-6);
  EXPECT_NEAR(limit, 1.0 / dephasing_from_occupancy(n_src / 100.0, p), 1e-12);
}

TEST(T1Limit, MethodsExample) {
  const DriveCoupling c{0.1e-15, 110e-15, 5.0, 7.0};
  const double w = 2 * kPi * 3.957e9;
  // Independent evaluation of hbar^2 / (A_d^2 S_VV).
  const double hbar = kH / (2 * kPi);
  const double a_d = std::sqrt(hbar * 110e-15 * w / 2.0) * 0.1e-15 / (0.1e-15 + 110e-15);
  const double s_vv = 4 * 5.0 * hbar * w / std::expm1(hbar * w / (kKb * 7.0));
  const double oracle = hbar * hbar / (a_d * a_d * s_vv);
  EXPECT_NEAR(t1_limit(c, w) / oracle, 1.0, 1e-12);
  EXPECT_NEAR(t1_limit(c, w), 50e-6, 2.5e-6);
  EXPECT_GE(t1_limit(c, w, 20.0), 4.5e-3);
  EXPECT_NEAR(t1_limit(c, w, 20.0) / t1_limit(c, w), 100.0, 1e-9);
}

TEST(T1Limit, LimitsAndMonotonicity) {
  const double w = 2 * kPi * 3.957e9;
  DriveCoupling c{0.1e-15, 110e-15, 5.0, 7.0};
  c.t_eff = 0.0;
  EXPECT_TRUE(std::isinf(t1_limit(c, w)));
  EXPECT_EQ(voltage_noise_psd(w, 5.0, 0.0), 0.0);
  EXPECT_LT(voltage_noise_psd(w, 5.0, 1e-3), 1e-100);
  c = DriveCoupling{1e-25, 110e-15, 5.0, 7.0};
  const double tiny = t1_limit(c, w);
  EXPECT_GT(tiny, 1e10);
  double prev = 0.0;
  for (double t = 20.0; t >= 0.05; t *= 0.8) {
    const double v = t1_limit({0.1e-15, 110e-15, 5.0, t}, w);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Switching, LinearModel) {
  EXPECT_EQ(dephasing_vs_switching(0.0, 4e4), 4e4);
  EXPECT_EQ(dephasing_vs_switching(1e6, 4e4, 0.0), 4e4);
  const double g = dephasing_vs_switching(1e6, 1.0 / 25e-6);
  EXPECT_NEAR(g, 128.66e3, 1.0);
  EXPECT_NEAR(1.0 / g, 7.8e-6, 0.05e-6);
}

TEST(Switching, ProjectionOver50us) {
  const auto p = TransmonParams::reference_device();
  const double g = dephasing_vs_switching(1e6, 1.0 / 25e-6);
  const double n_src = propagate_attenuation(occupancy_from_dephasing(g - 1.0 / 35e-6, p), 13.0,
                                             Direction::toward_source);
  EXPECT_GT(projected_t2_limit(n_src, 20.0, p), 50e-6);
}

TEST(Coherence, Validation) {
  EXPECT_NO_THROW((CoherenceRecord{30e-6, 35e-6, 40e-6}.validate()));
  EXPECT_NO_THROW((CoherenceRecord{30e-6, 60e-6, 60e-6}.validate()));
  EXPECT_THROW((CoherenceRecord{30e-6, 61e-6, 10e-6}.validate()), DomainError);
  EXPECT_THROW((CoherenceRecord{0.0, 1e-6, 1e-6}.validate()), DomainError);
  EXPECT_NEAR(pure_dephasing_rate(25e-6, 30e-6), 1 / 25e-6 - 1 / 60e-6, 1e-9);
}

TEST(Transmon, FromHzAndJson) {
  const auto p = TransmonParams::reference_device();
  EXPECT_NEAR(p.kappa_r, 2 * kPi * 0.697e6, 1e-6);
  EXPECT_NEAR(p.resonator_frequency_hz(), 6.471e9, 1e-3);
  EXPECT_NEAR(p.qubit_frequency_hz(), 3.957e9, 1e-3);
  const nlohmann::json j = {{"qubit_frequency_hz", 5e9},
                            {"resonator_frequency_hz", 7e9},
                            {"resonator_linewidth_hz", 1e6},
                            {"dispersive_shift_hz", -0.5e6},
                            {"anharmonicity_hz", -200e6},
                            {"coupling_hz", 80e6}};
  const auto q = transmon_from_json(j);
  EXPECT_NEAR(q.chi, -2 * kPi * 0.5e6, 1e-6);
  auto bad = j;
  bad["linewidth"] = 1.0;
  EXPECT_THROW(transmon_from_json(bad), ConfigError);
  bad = j;
  bad["resonator_linewidth_hz"] = -1.0;
  EXPECT_THROW(transmon_from_json(bad), Error);
}
