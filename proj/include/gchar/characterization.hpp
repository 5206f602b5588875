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

// Channel reconstruction from probe data.
//
// Stage one: coherent probes q·e_n give Â_mn = q'^(n)_m / q. Stage two:
// homodyne variances of the vacuum response give the noise matrix by
// maximum likelihood, constrained to N + iΩ - iÂΩÂᵀ ⪰ 0.
//
// The likelihood over per-setting sample variances s_k² is
//
//   L(N) = Σ_k n_k/2 [-ln σ_k² - s_k²/σ_k²],   σ_k² = w_kᵀ(ÂÂᵀ + N)w_k,
//
// maximized by projected gradient ascent with Armijo backtracking. The
// projection onto the feasible set alternates (Dykstra) between the affine
// set {H Hermitian : Im H = Ω - ÂΩÂᵀ} and the PSD cone, and ends with a
// diagonal shift that makes the returned margin non-negative.

#ifndef GCHAR_CHARACTERIZATION_HPP
#define GCHAR_CHARACTERIZATION_HPP

#include "gchar/measurement.hpp"
#include "gchar/symplectic.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gchar {

struct ProjectionOptions {
  int max_iterations = 2000;
  double tolerance = 1e-12;  ///< Frobenius change between Dykstra sweeps
  double shift_epsilon = 1e-12;
};

struct MleOptions {
  int max_iterations = 5000;
  double relative_tolerance = 1e-10;
  double initial_step = 1.0;
  double armijo = 1e-4;
  int max_backtracks = 60;
  double variance_floor = 1e-12;
  ProjectionOptions projection;
};

struct CharacterizationResult {
  Matrix amp_hat;
  Matrix noise_hat;
  Vector disp_hat;
  double loglik = 0.0;
  double margin = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Log-likelihood of the seed followed by every accepted iterate.
  std::vector<double> loglik_trace;
};

struct ProtocolOptions {
  double q_amplitude = 10.0;
  std::uint64_t shots_mean_stage = 10000;
  std::uint64_t shots_vacuum_stage = 10000;
  std::uint64_t seed = 1;
  MleOptions mle;
};

/// Â_mn = (q'^(n)_m - d̂_m) / q. Needs exactly one record per probe index
/// 1..2M; throws ProbeError otherwise.
Matrix estimate_amp(std::span<const ProbeRecord> records, double q_amplitude,
                    const std::optional<Vector>& disp_hat = std::nullopt);

Vector estimate_disp(const ProbeRecord& zero_input_record);

/// Covariance from single-quadrature variances and pair combinations,
/// e.g. V(x_i,x_j) = [Var(x_i+x_j) - Var(x_i) - Var(x_j)] / 2. Throws
/// MissingSettingError naming every absent label.
Matrix assemble_covariance(std::span<const SampleSummary> summaries);
Matrix assemble_covariance(std::span<const SampleSet> samples);

/// Per-setting summaries that a covariance V̂ would produce exactly, each
/// with `shots` samples.
std::vector<SampleSummary> exact_summaries(const Matrix& cov, std::uint64_t shots);

/// Log-likelihood of a noise matrix given vacuum-stage summaries.
double noise_log_likelihood(const Matrix& amp_hat, const Matrix& noise,
                            std::span<const SampleSummary> summaries,
                            double variance_floor = 1e-12);

/// Unconstrained least-squares fit of Σ_k (σ_k²(N) - s_k²)².
Matrix least_squares_noise(const Matrix& amp_hat, std::span<const SampleSummary> summaries);

/// Minimum eigenvalue of N + i(Ω - ÂΩÂᵀ).
double noise_margin(const Matrix& amp_hat, const Matrix& noise);

/// Nearest (Frobenius) noise matrix satisfying the physicality condition for
/// Â, followed by a diagonal shift if round-off leaves a negative margin.
/// Feasible inputs are returned unchanged.
Matrix project_physical(const Matrix& amp_hat, const Matrix& noise,
                        const ProjectionOptions& options = {});

CharacterizationResult mle_noise(const Matrix& amp_hat,
                                 std::span<const SampleSummary> summaries,
                                 const MleOptions& options = {});

/// Convenience form for a directly estimated output covariance.
CharacterizationResult mle_noise(const Matrix& amp_hat, const Matrix& v_hat,
                                 std::uint64_t shots, const MleOptions& options = {});

/// Full two-stage protocol against a channel treated as a black box. When
/// `raw_samples` is given the vacuum-stage samples are stored there.
CharacterizationResult characterize(const GaussianChannel& channel_under_test,
                                    const ProtocolOptions& options,
                                    std::vector<SampleSet>* raw_samples = nullptr);

}  // namespace gchar

#endif  // GCHAR_CHARACTERIZATION_HPP
