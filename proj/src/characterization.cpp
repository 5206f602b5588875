// Copyright 2026 The gchar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gchar/characterization.hpp"

#include "gchar/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

namespace gchar {

namespace {

using SettingKey = std::tuple<SettingKind, int, int>;

SettingKey key_of(const MeasurementSetting& s) { return {s.kind, s.i, s.j}; }

int modes_of(std::span<const SampleSummary> summaries) {
  if (summaries.empty()) {
    throw MissingSettingError("no sample summaries given");
  }
  return modes_from_dimension(summaries.front().setting.direction.size());
}

// Imaginary part Ω - ÂΩÂᵀ of the physicality matrix.
Matrix commutator_defect(const Matrix& amp_hat) {
  const int m = modes_from_dimension(amp_hat.rows());
  if (amp_hat.cols() != amp_hat.rows()) {
    throw DimensionError("amplification matrix must be square");
  }
  const Matrix w = omega(m);
  return w - amp_hat * w * amp_hat.transpose();
}

void check_summaries(const Matrix& amp_hat, std::span<const SampleSummary> summaries) {
  for (const auto& s : summaries) {
    if (s.setting.direction.size() != amp_hat.rows()) {
      throw DimensionError("setting '" + s.setting.label + "' does not match Â dimension");
    }
    if (s.count < 2) {
      throw ParameterError("setting '" + s.setting.label + "' has fewer than 2 samples");
    }
  }
}

struct LikelihoodEval {
  double value = 0.0;
  Matrix gradient;
};

LikelihoodEval evaluate(const Matrix& vacuum_response, const Matrix& noise,
                        std::span<const SampleSummary> summaries, double floor) {
  const std::size_t k = summaries.size();
  std::vector<double> model(k), sample(k), counts(k), coeff(k);
  const Matrix out_cov = vacuum_response + noise;
  for (std::size_t i = 0; i < k; ++i) {
    const Vector& w = summaries[i].setting.direction;
    model[i] = w.dot(out_cov * w);
    sample[i] = summaries[i].variance;
    counts[i] = static_cast<double>(summaries[i].count);
  }
  LikelihoodEval eval;
  eval.value = kernels::omp::variance_log_likelihood(model, sample, counts, floor, coeff);
  eval.gradient = Matrix::Zero(noise.rows(), noise.cols());
  for (std::size_t i = 0; i < k; ++i) {
    const Vector& w = summaries[i].setting.direction;
    eval.gradient.noalias() += coeff[i] * (w * w.transpose());
  }
  return eval;
}

}  // namespace

Matrix estimate_amp(std::span<const ProbeRecord> records, double q_amplitude,
                    const std::optional<Vector>& disp_hat) {
  if (!(q_amplitude > 0.0)) {
    throw ParameterError("estimate_amp: q_amplitude must be positive");
  }
  if (records.empty()) throw ProbeError("estimate_amp: no probe records");
  const auto dim = records.front().measured_output_mean.size();
  const int modes = modes_from_dimension(dim);
  if (static_cast<Eigen::Index>(records.size()) != 2 * modes) {
    throw ProbeError("estimate_amp: expected " + std::to_string(2 * modes) +
                     " probe records, got " + std::to_string(records.size()));
  }
  if (disp_hat && disp_hat->size() != dim) {
    throw DimensionError("estimate_amp: displacement has wrong length");
  }
  Matrix amp = Matrix::Zero(dim, dim);
  std::vector<bool> seen(dim, false);
  for (const auto& rec : records) {
    const int n = rec.probe_index;
    if (n < 1 || n > dim) {
      throw ProbeError("estimate_amp: probe index " + std::to_string(n) + " out of range");
    }
    if (seen[n - 1]) {
      throw ProbeError("estimate_amp: duplicate probe index " + std::to_string(n));
    }
    if (rec.measured_output_mean.size() != dim) {
      throw DimensionError("estimate_amp: inconsistent record dimension");
    }
    seen[n - 1] = true;
    Vector response = rec.measured_output_mean;
    if (disp_hat) response -= *disp_hat;
    amp.col(n - 1) = response / q_amplitude;
  }
  return amp;
}

Vector estimate_disp(const ProbeRecord& zero_input_record) {
  return zero_input_record.measured_output_mean;
}

Matrix assemble_covariance(std::span<const SampleSummary> summaries) {
  const int m = modes_of(summaries);
  std::map<SettingKey, double> var;
  for (const auto& s : summaries) {
    if (s.setting.direction.size() != 2 * m) {
      throw DimensionError("assemble_covariance: mixed mode counts");
    }
    if (s.count < 2) {
      throw ParameterError("assemble_covariance: setting '" + s.setting.label +
                           "' has fewer than 2 samples");
    }
    var[key_of(s.setting)] = s.variance;
  }
  std::string missing;
  for (const auto& s : setting_catalog(m)) {
    if (!var.contains(key_of(s))) missing += (missing.empty() ? "" : ", ") + s.label;
  }
  if (!missing.empty()) {
    throw MissingSettingError("assemble_covariance: missing settings: " + missing);
  }
  const auto at = [&](SettingKind kind, int i, int j) { return var.at({kind, i, j}); };
  Matrix v(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    v(i, i) = at(SettingKind::kX, i, i);
    v(m + i, m + i) = at(SettingKind::kP, i, i);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      v(i, j) = v(j, i) = 0.5 * (at(SettingKind::kXX, i, j) - v(i, i) - v(j, j));
      v(m + i, m + j) = v(m + j, m + i) =
          0.5 * (at(SettingKind::kPP, i, j) - v(m + i, m + i) - v(m + j, m + j));
    }
    for (int j = 0; j < m; ++j) {
      v(i, m + j) = v(m + j, i) =
          0.5 * (at(SettingKind::kXP, i, j) - v(i, i) - v(m + j, m + j));
    }
  }
  return v;
}

Matrix assemble_covariance(std::span<const SampleSet> samples) {
  std::vector<SampleSummary> summaries;
  summaries.reserve(samples.size());
  for (const auto& s : samples) summaries.push_back(summarize(s));
  return assemble_covariance(summaries);
}

std::vector<SampleSummary> exact_summaries(const Matrix& cov, std::uint64_t shots) {
  const int m = modes_from_dimension(cov.rows());
  std::vector<SampleSummary> out;
  for (auto& s : setting_catalog(m)) {
    const double var = s.direction.dot(cov * s.direction);
    out.push_back({std::move(s), shots, 0.0, var});
  }
  return out;
}

double noise_log_likelihood(const Matrix& amp_hat, const Matrix& noise,
                            std::span<const SampleSummary> summaries, double variance_floor) {
  check_summaries(amp_hat, summaries);
  return evaluate(amp_hat * amp_hat.transpose(), noise, summaries, variance_floor).value;
}

Matrix least_squares_noise(const Matrix& amp_hat, std::span<const SampleSummary> summaries) {
  check_summaries(amp_hat, summaries);
  const auto dim = amp_hat.rows();
  const Matrix response = amp_hat * amp_hat.transpose();
  // Parameters: upper triangle (a <= b) of the symmetric noise matrix.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> params;
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = a; b < dim; ++b) params.emplace_back(a, b);
  }
  const auto k = static_cast<Eigen::Index>(summaries.size());
  const auto p = static_cast<Eigen::Index>(params.size());
  if (k < p) {
    throw MissingSettingError("least_squares_noise: " + std::to_string(k) +
                              " settings cannot determine " + std::to_string(p) +
                              " noise parameters");
  }
  Matrix design(k, p);
  Vector rhs(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const Vector& w = summaries[r].setting.direction;
    for (Eigen::Index c = 0; c < p; ++c) {
      const auto [a, b] = params[c];
      design(r, c) = (a == b ? 1.0 : 2.0) * w(a) * w(b);
    }
    rhs(r) = summaries[r].variance - w.dot(response * w);
  }
  const Vector x = design.colPivHouseholderQr().solve(rhs);
  Matrix n(dim, dim);
  for (Eigen::Index c = 0; c < p; ++c) {
    const auto [a, b] = params[c];
    n(a, b) = n(b, a) = x(c);
  }
  return n;
}

double noise_margin(const Matrix& amp_hat, const Matrix& noise) {
  return hermitian_min_eigenvalue(noise, commutator_defect(amp_hat));
}

Matrix project_physical(const Matrix& amp_hat, const Matrix& noise,
                        const ProjectionOptions& options) {
  const Matrix defect = commutator_defect(amp_hat);
  if (noise.rows() != defect.rows() || noise.cols() != defect.cols()) {
    throw DimensionError("project_physical: noise and Â dimensions differ");
  }
  Matrix n = symmetrized(noise);
  if (hermitian_min_eigenvalue(n, defect) >= 0.0) return n;

  // Dykstra: x alternates between the PSD cone and the affine set
  // {Im H = defect}; p and q are the correction increments.
  CMatrix x = hermitian_from_parts(n, defect);
  CMatrix p = CMatrix::Zero(x.rows(), x.cols());
  CMatrix q = CMatrix::Zero(x.rows(), x.cols());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.rows());
  for (int it = 0; it < options.max_iterations; ++it) {
    const CMatrix before_cone = x + p;
    solver.compute(before_cone);
    const Vector clipped = solver.eigenvalues().cwiseMax(0.0);
    const CMatrix y = solver.eigenvectors() * clipped.asDiagonal() *
                      solver.eigenvectors().adjoint();
    p = before_cone - y;
    const CMatrix before_affine = y + q;
    CMatrix next = hermitian_from_parts(before_affine.real(), defect);
    q = before_affine - next;
    const double change = (next - x).norm();
    x = std::move(next);
    if (change < options.tolerance) break;
  }
  n = symmetrized(x.real());
  const double margin = hermitian_min_eigenvalue(n, defect);
  if (margin < 0.0) {
    n.diagonal().array() += -margin + options.shift_epsilon;
  }
  return n;
}

CharacterizationResult mle_noise(const Matrix& amp_hat,
                                 std::span<const SampleSummary> summaries,
                                 const MleOptions& options) {
  check_summaries(amp_hat, summaries);
  const Matrix response = amp_hat * amp_hat.transpose();
  double mean_count = 0.0;
  for (const auto& s : summaries) mean_count += static_cast<double>(s.count);
  mean_count /= static_cast<double>(summaries.size());

  CharacterizationResult result;
  result.amp_hat = amp_hat;
  result.disp_hat = Vector::Zero(amp_hat.rows());

  Matrix noise = project_physical(amp_hat, least_squares_noise(amp_hat, summaries),
                                  options.projection);
  LikelihoodEval current = evaluate(response, noise, summaries, options.variance_floor);
  result.loglik_trace.push_back(current.value);

  // Steps are taken on L / mean_count so that the unit initial step is
  // commensurate with the curvature regardless of the shot count.
  int it = 0;
  for (; it < options.max_iterations && !result.converged; ++it) {
    const Matrix direction = current.gradient / mean_count;
    double step = options.initial_step;
    bool accepted = false;
    Matrix candidate;
    LikelihoodEval trial;
    for (int bt = 0; bt <= options.max_backtracks; ++bt, step *= 0.5) {
      candidate = project_physical(amp_hat, noise + step * direction, options.projection);
      trial = evaluate(response, candidate, summaries, options.variance_floor);
      const double predicted =
          options.armijo * (direction.array() * (candidate - noise).array()).sum();
      if (trial.value / mean_count >= current.value / mean_count + predicted) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No ascent along the projected arc: stationary to working precision.
      result.converged = true;
      break;
    }
    const double change = std::abs(trial.value - current.value);
    const double scale = std::max(std::abs(current.value), 1.0);
    noise = std::move(candidate);
    current = std::move(trial);
    result.loglik_trace.push_back(current.value);
    if (change < options.relative_tolerance * scale) result.converged = true;
  }
  result.iterations = it;
  result.noise_hat = noise;
  result.loglik = current.value;
  result.margin = noise_margin(amp_hat, noise);
  return result;
}

CharacterizationResult mle_noise(const Matrix& amp_hat, const Matrix& v_hat,
                                 std::uint64_t shots, const MleOptions& options) {
  if (v_hat.rows() != amp_hat.rows() || v_hat.cols() != amp_hat.cols()) {
    throw DimensionError("mle_noise: V̂ and Â dimensions differ");
  }
  const auto summaries = exact_summaries(symmetrized(v_hat), shots);
  return mle_noise(amp_hat, summaries, options);
}

CharacterizationResult characterize(const GaussianChannel& channel_under_test,
                                    const ProtocolOptions& options,
                                    std::vector<SampleSet>* raw_samples) {
  const int m = channel_under_test.modes();
  const ProbeRecord zero =
      measure_zero_input(channel_under_test, options.shots_mean_stage, options.seed);
  const Vector disp_hat = estimate_disp(zero);
  const auto probes = probe_sequence(m, options.q_amplitude);
  const auto records = measure_output_means(channel_under_test, probes,
                                            options.shots_mean_stage, options.seed);
  const Matrix amp_hat = estimate_amp(records, options.q_amplitude, disp_hat);

  const GaussianState vacuum_out = apply_channel(channel_under_test, vacuum_state(m));
  const auto catalog = setting_catalog(m);
  std::vector<SampleSummary> summaries;
  if (raw_samples != nullptr) {
    *raw_samples =
        sample_settings(vacuum_out, catalog, options.shots_vacuum_stage, options.seed);
    for (const auto& s : *raw_samples) summaries.push_back(summarize(s));
  } else {
    summaries =
        summarize_settings(vacuum_out, catalog, options.shots_vacuum_stage, options.seed);
  }
  CharacterizationResult result = mle_noise(amp_hat, summaries, options.mle);
  result.disp_hat = disp_hat;
  return result;
}

}  // namespace gchar
