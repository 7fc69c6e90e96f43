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

#include "cryomux/fitkit.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <numbers>
#include <sstream>

namespace cryomux::fit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kTiny = std::numeric_limits<double>::min();

struct Problem {
  const Model& model;
  const Data& data;
  std::size_t n;
  std::size_t m;

  double weight(std::size_t i) const { return data.sigma.empty() ? 1.0 : 1.0 / data.sigma[i]; }

  Eigen::VectorXd residuals(std::span<const double> p) const {
    Eigen::VectorXd r(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = (model.value(data.x[i], p) - data.y[i]) * weight(i);
    }
    return r;
  }

  Eigen::MatrixXd jacobian(std::span<const double> p) const {
    Eigen::MatrixXd jac(n, m);
    std::vector<double> grad(m);
    std::vector<double> work(p.begin(), p.end());
    for (std::size_t i = 0; i < n; ++i) {
      if (model.gradient) {
        model.gradient(data.x[i], p, grad);
      } else {
        for (std::size_t j = 0; j < m; ++j) {
          const double h = 1e-6 * std::max(std::abs(p[j]), 1e-12);
          work[j] = p[j] + h;
          const double up = model.value(data.x[i], work);
          work[j] = p[j] - h;
          const double down = model.value(data.x[i], work);
          work[j] = p[j];
          grad[j] = (up - down) / (2.0 * h);
        }
      }
      for (std::size_t j = 0; j < m; ++j) jac(i, j) = grad[j] * weight(i);
    }
    return jac;
  }
};

std::vector<double> clamp_to(const std::vector<double>& p, const Bounds& b) {
  std::vector<double> out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) out[j] = std::clamp(p[j], b.lower[j], b.upper[j]);
  return out;
}

// Covariance s^2 (J^T J)^-1, computed on column-normalised J for conditioning.
// Directions the data cannot resolve get infinite variance.
Eigen::MatrixXd covariance_from(const Eigen::MatrixXd& jac, double s2) {
  const auto m = jac.cols();
  Eigen::VectorXd scale(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double norm = jac.col(j).norm();
    scale[j] = norm > 0.0 ? norm : 1.0;
  }
  const Eigen::MatrixXd scaled = jac * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? sv[0] * 1e-12 : 0.0;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(m, m);
  std::vector<bool> unresolved(static_cast<std::size_t>(m), false);
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    const Eigen::VectorXd v = svd.matrixV().col(k);
    if (sv[k] <= cutoff) {
      for (Eigen::Index j = 0; j < m; ++j) {
        if (std::abs(v[j]) > 1e-8) unresolved[static_cast<std::size_t>(j)] = true;
      }
      continue;
    }
    cov += (v * v.transpose()) / (sv[k] * sv[k]);
  }
  cov = s2 * scale.cwiseInverse().asDiagonal() * cov * scale.cwiseInverse().asDiagonal();
  for (Eigen::Index j = 0; j < m; ++j) {
    if (unresolved[static_cast<std::size_t>(j)]) {
      cov.row(j).setConstant(std::numeric_limits<double>::infinity());
      cov.col(j).setConstant(std::numeric_limits<double>::infinity());
    }
  }
  return cov;
}

// Ordinary linear least squares; returns coefficients and the sum of squares.
std::pair<Eigen::VectorXd, double> linear_fit(const Eigen::MatrixXd& basis,
                                              const Eigen::VectorXd& y) {
  Eigen::VectorXd c = basis.colPivHouseholderQr().solve(y);
  return {c, (basis * c - y).squaredNorm()};
}

Eigen::VectorXd as_vector(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    g[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  }
  return g;
}

void check_axis(const Data& data, std::size_t min_points) {
  if (data.x.size() != data.y.size()) {
    throw FitError(FitErrorKind::invalid_input, "x and y differ in length");
  }
  if (data.x.size() < min_points) {
    throw FitError(FitErrorKind::insufficient_data, "too few data points for the model");
  }
  for (std::size_t i = 1; i < data.x.size(); ++i) {
    if (!(data.x[i] > data.x[i - 1])) {
      throw FitError(FitErrorKind::invalid_input, "time axis must be strictly increasing");
    }
  }
}

double sse_of(const Model& model, const Data& data, std::span<const double> p) {
  double s = 0.0;
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    const double r = model.value(data.x[i], p) - data.y[i];
    s += r * r;
  }
  return s;
}

// Best (amplitude, tau, offset) for an exponential by scanning tau on a log
// grid and solving for the linear coefficients at each point.
std::vector<double> exponential_grid_start(const Data& data) {
  const double span = data.x.back() - data.x.front();
  const Eigen::VectorXd y = as_vector(data.y);
  std::vector<double> best;
  double best_sse = std::numeric_limits<double>::infinity();
  for (double tau : log_grid(span * 1e-3, span * 1e2, 241)) {
    Eigen::MatrixXd basis(data.x.size(), 2);
    for (std::size_t i = 0; i < data.x.size(); ++i) {
      basis(static_cast<Eigen::Index>(i), 0) = std::exp(-(data.x[i] - data.x.front()) / tau);
      basis(static_cast<Eigen::Index>(i), 1) = 1.0;
    }
    auto [c, sse] = linear_fit(basis, y);
    if (sse < best_sse) {
      best_sse = sse;
      best = {c[0] * std::exp(data.x.front() / tau), tau, c[1]};
    }
  }
  return best;
}

// Tail-mean offset and log-linear slope.
std::vector<double> exponential_loglinear_start(const Data& data) {
  const std::size_t n = data.x.size();
  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  const double offset =
      std::accumulate(data.y.end() - static_cast<long>(tail), data.y.end(), 0.0) / tail;
  const double amp = data.y.front() - offset;
  std::vector<double> xs, ls;
  for (std::size_t i = 0; i + tail < n; ++i) {
    const double ratio = amp != 0.0 ? (data.y[i] - offset) / amp : 0.0;
    if (ratio > 0.05) {
      xs.push_back(data.x[i]);
      ls.push_back(std::log(ratio));
    }
  }
  double tau = (data.x.back() - data.x.front()) / 3.0;
  if (xs.size() >= 2) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double ml = std::accumulate(ls.begin(), ls.end(), 0.0) / ls.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ls[i] - ml);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx > 0.0 && sxy < 0.0) tau = -sxx / sxy;
  }
  return {amp * std::exp(data.x.front() / tau), tau, offset};
}

DecayFit fit_exponential(const Data& data) {
  check_axis(data, 4);
  const Model model = exponential_model();
  auto a = exponential_loglinear_start(data);
  auto b = exponential_grid_start(data);
  auto start = sse_of(model, data, a) <= sse_of(model, data, b) ? a : b;
  Bounds bounds = Bounds::unbounded(3);
  bounds.lower[1] = kTiny;
  start[1] = std::max(start[1], kTiny);
  auto result = least_squares(model, data, start, bounds);
  return DecayFit{result.value("tau"), std::move(result)};
}

}  // namespace

std::string_view to_string(FitErrorKind kind) {
  switch (kind) {
    case FitErrorKind::insufficient_data: return "insufficient_data";
    case FitErrorKind::singular_jacobian: return "singular_jacobian";
    case FitErrorKind::iteration_cap: return "iteration_cap";
    case FitErrorKind::bounds_violation: return "bounds_violation";
    case FitErrorKind::degenerate_data: return "degenerate_data";
    case FitErrorKind::invalid_input: return "invalid_input";
  }
  return "unknown";
}

FitError::FitError(FitErrorKind kind, const std::string& message, int iterations,
                   double residual_norm)
    : Error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      iterations_(iterations),
      residual_norm_(residual_norm) {}

Bounds Bounds::unbounded(std::size_t n) {
  const double inf = std::numeric_limits<double>::infinity();
  return Bounds{std::vector<double>(n, -inf), std::vector<double>(n, inf)};
}

double FitResult::value(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return parameters[i];
  }
  throw Error("FitResult: no parameter named '" + std::string(name) + "'");
}

double FitResult::error(std::string_view name) const {
  for (std::size_t i = 0; i < names.size() && i < standard_errors.size(); ++i) {
    if (names[i] == name) return standard_errors[i];
  }
  throw Error("FitResult: no standard error for '" + std::string(name) + "'");
}

nlohmann::json FitResult::to_json() const {
  nlohmann::json params = nlohmann::json::object();
  for (std::size_t i = 0; i < names.size(); ++i) {
    nlohmann::json entry{{"value", parameters[i]}};
    if (i < standard_errors.size()) {
      const double e = standard_errors[i];
      entry["standard_error"] = std::isfinite(e) ? nlohmann::json(e) : nlohmann::json(nullptr);
    }
    params[names[i]] = entry;
  }
  return {{"parameters", params},
          {"residual_norm", residual_norm},
          {"converged", converged},
          {"iterations", iterations}};
}

FitResult least_squares(const Model& model, const Data& data, std::vector<double> initial,
                        const Bounds& bounds, const Options& options) {
  const std::size_t m = model.size();
  const std::size_t n = data.x.size();
  if (initial.size() != m || bounds.lower.size() != m || bounds.upper.size() != m) {
    throw FitError(FitErrorKind::invalid_input, "parameter, bound and model sizes disagree");
  }
  if (data.y.size() != n || (!data.sigma.empty() && data.sigma.size() != n)) {
    throw FitError(FitErrorKind::invalid_input, "data columns differ in length");
  }
  if (n < m + 1) {
    throw FitError(FitErrorKind::insufficient_data,
                   "need at least " + std::to_string(m + 1) + " points");
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!(initial[j] >= bounds.lower[j] && initial[j] <= bounds.upper[j])) {
      throw FitError(FitErrorKind::bounds_violation,
                     "initial value of '" + model.parameter_names[j] + "' is outside its bounds");
    }
  }

  const Problem prob{model, data, n, m};
  std::vector<double> p = std::move(initial);
  Eigen::VectorXd r = prob.residuals(p);
  double sse = r.squaredNorm();
  if (!std::isfinite(sse)) {
    throw FitError(FitErrorKind::invalid_input, "model is not finite at the initial point");
  }
  Eigen::MatrixXd jac = prob.jacobian(p);
  {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(jac);
    qr.setThreshold(1e-13);
    if (qr.rank() < static_cast<Eigen::Index>(m)) {
      throw FitError(FitErrorKind::singular_jacobian,
                     "Jacobian is rank deficient at the initial point", 0, std::sqrt(sse));
    }
  }

  FitResult out;
  out.names = model.parameter_names;
  out.residual_history.push_back(std::sqrt(sse));

  Eigen::VectorXd diag = jac.colwise().norm().transpose();
  double lambda = 1e-8;
  bool converged = false;
  int iter = 0;
  const double sse_floor = 1e-28 * static_cast<double>(n);
  if (sse <= sse_floor) converged = true;

  while (!converged && iter < options.max_iterations) {
    ++iter;
    const Eigen::VectorXd grad = jac.transpose() * r;
    if (grad.cwiseAbs().maxCoeff() < options.gradient_tolerance) {
      converged = true;
      break;
    }
    diag = diag.cwiseMax(jac.colwise().norm().transpose());
    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd aug(n + m, m);
      aug.topRows(n) = jac;
      aug.bottomRows(m) = std::sqrt(lambda) * diag.asDiagonal();
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n + m));
      rhs.head(n) = -r;
      const Eigen::VectorXd step = aug.colPivHouseholderQr().solve(rhs);
      std::vector<double> trial(m);
      for (std::size_t j = 0; j < m; ++j) trial[j] = p[j] + step[static_cast<Eigen::Index>(j)];
      trial = clamp_to(trial, bounds);

      double moved = 0.0, size = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        moved = std::max(moved, std::abs(trial[j] - p[j]) * diag[static_cast<Eigen::Index>(j)]);
        size = std::max(size, std::abs(p[j]) * diag[static_cast<Eigen::Index>(j)]);
      }
      const Eigen::VectorXd r_trial = prob.residuals(trial);
      const double sse_trial = r_trial.squaredNorm();
      if (std::isfinite(sse_trial) && sse_trial < sse) {
        const double drop = sse - sse_trial;
        p = std::move(trial);
        r = r_trial;
        sse = sse_trial;
        jac = prob.jacobian(p);
        lambda = std::max(lambda * 0.1, 1e-15);
        accepted = true;
        out.residual_history.push_back(std::sqrt(sse));
        if (drop <= options.relative_tolerance * sse || sse <= sse_floor ||
            moved <= 1e-15 * size) {
          converged = true;
        }
      } else {
        lambda *= 10.0;
        // No reduction possible along any damped direction: at the minimum
        // to working precision.
        if (lambda > 1e16 || moved <= 1e-15 * size) {
          converged = true;
          break;
        }
      }
    }
  }

  out.parameters = p;
  out.residual_norm = std::sqrt(sse);
  out.iterations = iter;
  out.converged = converged;
  if (!converged) {
    if (options.throw_on_failure) {
      throw FitError(FitErrorKind::iteration_cap,
                     "no convergence after " + std::to_string(iter) + " iterations", iter,
                     out.residual_norm);
    }
    return out;
  }
  const double s2 = options.absolute_sigma && !data.sigma.empty() ? 1.0
                    : n > m                                         ? sse / static_cast<double>(n - m)
                                                                    : 0.0;
  out.covariance = covariance_from(jac, s2);
  out.standard_errors.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double v = out.covariance(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
    out.standard_errors[j] = std::isfinite(v) ? std::sqrt(std::max(v, 0.0)) : v;
  }
  return out;
}

// ---------------------------------------------------------------------------

Model exponential_model() {
  Model m;
  m.parameter_names = {"amplitude", "tau", "offset"};
  m.value = [](double t, std::span<const double> p) { return p[0] * std::exp(-t / p[1]) + p[2]; };
  m.gradient = [](double t, std::span<const double> p, std::span<double> g) {
    const double e = std::exp(-t / p[1]);
    g[0] = e;
    g[1] = p[0] * e * t / (p[1] * p[1]);
    g[2] = 1.0;
  };
  return m;
}

Model ramsey_model() {
  Model m;
  m.parameter_names = {"amplitude", "tau", "frequency", "phase", "offset"};
  m.value = [](double t, std::span<const double> p) {
    return p[0] * std::exp(-t / p[1]) * std::cos(kTwoPi * p[2] * t + p[3]) + p[4];
  };
  m.gradient = [](double t, std::span<const double> p, std::span<double> g) {
    const double e = std::exp(-t / p[1]);
    const double arg = kTwoPi * p[2] * t + p[3];
    const double c = std::cos(arg);
    const double s = std::sin(arg);
    g[0] = e * c;
    g[1] = p[0] * e * c * t / (p[1] * p[1]);
    g[2] = -p[0] * e * s * kTwoPi * t;
    g[3] = -p[0] * e * s;
    g[4] = 1.0;
  };
  return m;
}

Model quasiparticle_model() {
  Model m;
  m.parameter_names = {"n_qp", "t1_qp", "t1_r"};
  m.value = [](double t, std::span<const double> p) {
    return std::exp(p[0] * (std::exp(-t / p[1]) - 1.0) - t / p[2]);
  };
  m.gradient = [](double t, std::span<const double> p, std::span<double> g) {
    const double u = std::exp(-t / p[1]);
    const double y = std::exp(p[0] * (u - 1.0) - t / p[2]);
    g[0] = y * (u - 1.0);
    g[1] = y * p[0] * u * t / (p[1] * p[1]);
    g[2] = y * t / (p[2] * p[2]);
  };
  return m;
}

Model rb_decay_model() {
  Model m;
  m.parameter_names = {"a", "p", "b"};
  m.value = [](double len, std::span<const double> p) { return p[0] * std::pow(p[1], len) + p[2]; };
  m.gradient = [](double len, std::span<const double> p, std::span<double> g) {
    const double pm = std::pow(p[1], len);
    g[0] = pm;
    g[1] = p[1] > 0.0 ? p[0] * len * pm / p[1] : 0.0;
    g[2] = 1.0;
  };
  return m;
}

DecayFit fit_t1(const Data& data) { return fit_exponential(data); }

DecayFit fit_echo(const Data& data) { return fit_exponential(data); }

double periodogram_peak(std::span<const double> t, std::span<const double> y) {
  const std::size_t n = t.size();
  if (n < 4 || y.size() != n) throw FitError(FitErrorKind::insufficient_data, "periodogram");
  std::vector<double> gaps(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) gaps[i] = t[i + 1] - t[i];
  std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
  const double nyquist = 0.5 / gaps[gaps.size() / 2];
  const double span = t[n - 1] - t[0];
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  // Eight-fold oversampling of the natural 1/span resolution.
  const double df = 1.0 / (8.0 * span);
  double best_f = 0.0, best_power = -1.0;
  for (double f = df; f <= nyquist; f += df) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double arg = kTwoPi * f * t[i];
      re += (y[i] - mean) * std::cos(arg);
      im += (y[i] - mean) * std::sin(arg);
    }
    const double power = re * re + im * im;
    if (power > best_power) {
      best_power = power;
      best_f = f;
    }
  }
  return best_f;
}

RamseyFit fit_ramsey(const Data& data) {
  check_axis(data, 6);
  const double freq = periodogram_peak(data.x, data.y);
  const double span = data.x.back() - data.x.front();
  const Eigen::VectorXd y = as_vector(data.y);
  // With frequency fixed the model is linear in (offset, c cos, c sin).
  std::vector<double> start;
  double best = std::numeric_limits<double>::infinity();
  for (double tau : log_grid(span * 1e-2, span * 1e2, 161)) {
    Eigen::MatrixXd basis(data.x.size(), 3);
    for (std::size_t i = 0; i < data.x.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const double e = std::exp(-data.x[i] / tau);
      basis(row, 0) = 1.0;
      basis(row, 1) = e * std::cos(kTwoPi * freq * data.x[i]);
      basis(row, 2) = e * std::sin(kTwoPi * freq * data.x[i]);
    }
    auto [c, sse] = linear_fit(basis, y);
    if (sse < best) {
      best = sse;
      // a cos(wt + phi) = a cos(phi) cos(wt) - a sin(phi) sin(wt)
      start = {std::hypot(c[1], c[2]), tau, freq, std::atan2(-c[2], c[1]), c[0]};
    }
  }
  Bounds bounds = Bounds::unbounded(5);
  bounds.lower[0] = 0.0;
  bounds.lower[1] = kTiny;
  bounds.lower[2] = 0.0;
  auto result = least_squares(ramsey_model(), data, start, bounds);
  return RamseyFit{result.value("tau"), result.value("frequency"), std::move(result)};
}

QpFit fit_qp_double_exp(const Data& data) {
  check_axis(data, 5);
  const auto [lo, hi] = std::minmax_element(data.y.begin(), data.y.end());
  if (*hi - *lo < 1e-9) {
    throw FitError(FitErrorKind::degenerate_data, "trace is flat; no decay to fit");
  }
  for (double v : data.y) {
    if (!std::isfinite(v)) throw FitError(FitErrorKind::invalid_input, "non-finite sample");
  }
  const Model model = quasiparticle_model();
  const std::size_t n = data.x.size();

  // Late-time line: ln y ~ -n_qp - t / t1_r.
  const std::size_t first_tail = n - std::max<std::size_t>(3, n / 3);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t i = first_tail; i < n; ++i) {
    if (data.y[i] <= 0.0) continue;
    const double ly = std::log(data.y[i]);
    sx += data.x[i];
    sy += ly;
    sxx += data.x[i] * data.x[i];
    sxy += data.x[i] * ly;
    ++cnt;
  }
  const double span = data.x.back() - data.x.front();
  double t1_r = span;
  double n_qp = 0.0;
  if (cnt >= 2) {
    const double denom = cnt * sxx - sx * sx;
    const double slope = denom != 0.0 ? (cnt * sxy - sx * sy) / denom : 0.0;
    const double intercept = (sy - slope * sx) / cnt;
    if (slope < 0.0) t1_r = -1.0 / slope;
    n_qp = std::max(0.0, -intercept);
  }
  std::vector<double> start{n_qp, span / 10.0, t1_r};
  double best = std::numeric_limits<double>::infinity();
  for (double tq : log_grid(span * 1e-3, span * 10.0, 121)) {
    const std::vector<double> p{n_qp, tq, t1_r};
    const double s = sse_of(model, data, p);
    if (s < best) {
      best = s;
      start = p;
    }
  }

  Bounds bounds = Bounds::unbounded(3);
  bounds.lower = {0.0, kTiny, kTiny};
  auto single_exponential = [&]() {
    Model single;
    single.parameter_names = {"t1_r"};
    single.value = [](double t, std::span<const double> p) { return std::exp(-t / p[0]); };
    single.gradient = [](double t, std::span<const double> p, std::span<double> g) {
      g[0] = std::exp(-t / p[0]) * t / (p[0] * p[0]);
    };
    Bounds b{{kTiny}, {std::numeric_limits<double>::infinity()}};
    auto fit = least_squares(single, data, {t1_r}, b);
    QpFit out;
    out.params = {0.0, std::numeric_limits<double>::quiet_NaN(), fit.value("t1_r")};
    out.fit = std::move(fit);
    out.single_exponential = true;
    return out;
  };

  if (n_qp <= 1e-12) return single_exponential();
  FitResult result;
  try {
    result = least_squares(model, data, start, bounds);
  } catch (const FitError& e) {
    if (e.kind() == FitErrorKind::singular_jacobian) return single_exponential();
    throw;
  }
  if (result.value("n_qp") <= 1e-12) return single_exponential();
  QpFit out;
  out.params = {result.value("n_qp"), result.value("t1_qp"), result.value("t1_r")};
  out.fit = std::move(result);
  return out;
}

Data read_two_column_csv(std::istream& in) {
  Data data;
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double t = 0.0, v = 0.0;
    if (!(row >> t >> v)) {
      if (first) {
        first = false;
        continue;
      }
      throw FitError(FitErrorKind::invalid_input,
                     "malformed CSV row at line " + std::to_string(line_no));
    }
    first = false;
    data.x.push_back(t);
    data.y.push_back(v);
  }
  return data;
}

}  // namespace cryomux::fit
