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

// Levenberg-Marquardt least squares with bounds, plus the coherence and
// quasiparticle decay models used to analyse qubit traces.

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cryomux/error.hpp"
#include "json.hpp"

namespace cryomux::fit {

enum class FitErrorKind {
  insufficient_data,
  singular_jacobian,
  iteration_cap,
  bounds_violation,
  degenerate_data,
  invalid_input,
};

std::string_view to_string(FitErrorKind kind);

class FitError : public Error {
 public:
  FitError(FitErrorKind kind, const std::string& message, int iterations = 0,
           double residual_norm = 0.0);

  FitErrorKind kind() const { return kind_; }
  int iterations() const { return iterations_; }
  double residual_norm() const { return residual_norm_; }

 private:
  FitErrorKind kind_;
  int iterations_;
  double residual_norm_;
};

struct Model {
  std::vector<std::string> parameter_names;
  std::function<double(double x, std::span<const double> p)> value;
  // Optional analytic gradient with respect to the parameters. When empty,
  // central differences with step 1e-6 * max(|p_j|, 1e-12) are used.
  std::function<void(double x, std::span<const double> p, std::span<double> grad)> gradient;

  std::size_t size() const { return parameter_names.size(); }
};

struct Data {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> sigma;  // optional per-point standard deviation
};

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  static Bounds unbounded(std::size_t n);
};

struct Options {
  int max_iterations = 200;
  double relative_tolerance = 1e-10;
  double gradient_tolerance = 1e-12;
  // Return a non-converged result instead of throwing on the iteration cap.
  bool throw_on_failure = true;
  // Treat sigma as absolute; otherwise the covariance is rescaled by the reduced chi-square.
  bool absolute_sigma = false;
};

struct FitResult {
  std::vector<std::string> names;
  std::vector<double> parameters;
  std::vector<double> standard_errors;  // empty unless converged
  Eigen::MatrixXd covariance;
  double residual_norm = 0.0;  // sqrt of the (weighted) sum of squares
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;  // one entry per accepted step, starting point first

  double value(std::string_view name) const;
  double error(std::string_view name) const;
  nlohmann::json to_json() const;
};

FitResult least_squares(const Model& model, const Data& data, std::vector<double> initial,
                        const Bounds& bounds, const Options& options = {});

// ---------------------------------------------------------------------------
// Shipped models, each with an analytic gradient.

// amplitude * exp(-t / tau) + offset
Model exponential_model();
// amplitude * exp(-t / tau) * cos(2 pi frequency t + phase) + offset
Model ramsey_model();
// exp(n_qp (exp(-t / t1_qp) - 1)) * exp(-t / t1_r)
Model quasiparticle_model();
// a * p^m + b
Model rb_decay_model();

struct DecayFit {
  double time_constant = 0.0;
  FitResult fit;
};

struct RamseyFit {
  double t2_star = 0.0;
  double detuning_hz = 0.0;
  FitResult fit;
};

struct QpModelParams {
  double n_qp = 0.0;
  double t1_qp = 0.0;
  double t1_r = 0.0;
};

struct QpFit {
  QpModelParams params;
  FitResult fit;
  // The data carried no resolvable quasiparticle term; t1_r comes from a
  // single-exponential fit and t1_qp is NaN.
  bool single_exponential = false;
};

DecayFit fit_t1(const Data& data);
RamseyFit fit_ramsey(const Data& data);
DecayFit fit_echo(const Data& data);
QpFit fit_qp_double_exp(const Data& data);

// Strongest frequency in y(t) - mean(y), scanned on a grid up to the Nyquist
// rate of the median sample spacing.
double periodogram_peak(std::span<const double> t, std::span<const double> y);

// Two-column CSV (time_s, signal). A non-numeric first row is treated as a
// header; lines starting with '#' are skipped.
Data read_two_column_csv(std::istream& in);

}  // namespace cryomux::fit
