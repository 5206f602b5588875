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

#ifndef GCHAR_ANALYSIS_HPP
#define GCHAR_ANALYSIS_HPP

#include "gchar/symplectic.hpp"

#include <cstdint>
#include <vector>

namespace gchar {

/// A = U diag(d) Vᵀ. Columns of v are input eigenquadratures, columns of u
/// the output eigenquadratures, d the amplifications (descending).
struct EigenAnalysis {
  Matrix u;
  Vector d;
  Matrix v;
};

struct ModeAmplitudePhase {
  Vector amplitudes;
  Vector phases;  ///< in (-π, π]; 0 where the amplitude vanishes
};

struct NoiseEigen {
  Vector values;   ///< descending
  Matrix vectors;  ///< orthonormal columns
};

struct EigenquadratureReport {
  Vector predicted_gains;  ///< d_m
  Vector gains;            ///< |output mean| / q
  /// (û_m · u_m)², û_m the normalized measured output mean.
  Vector overlaps;
  /// |P_m û_m|², P_m the projector on the u-columns sharing d_m.
  Vector subspace_overlaps;
};

/// SVD with each column of v made to have a positive largest-magnitude entry
/// (ties to the lowest index); u follows so that A = U D Vᵀ still holds.
EigenAnalysis svd_channel(const Matrix& amp);

/// Per-mode amplitude sqrt(q_m² + q_{m+M}²) and phase atan2(q_{m+M}, q_m).
ModeAmplitudePhase to_amplitude_phase(const Vector& quadratures);

/// Eigenpairs of a symmetric noise matrix, descending, same sign convention
/// as svd_channel.
NoiseEigen noise_eigendecomposition(const Matrix& noise);

GaussianState predict_output(const GaussianChannel& ch, const GaussianState& input);

/// PPT minimum eigenvalue of each conjugate pair (k, M-1-k) of a state,
/// evaluated on the two-mode marginal with mode M-1-k transposed.
std::vector<double> pair_ppt_eigenvalues(const GaussianState& st);

/// Injects q·v_m for every input eigenquadrature and measures the output
/// mean with `shots` draws per quadrature. shots == 0 uses exact means.
EigenquadratureReport verify_eigenquadratures(const GaussianChannel& ch,
                                              const EigenAnalysis& analysis,
                                              double q_amplitude, std::uint64_t shots,
                                              std::uint64_t seed);

/// Groups of indices whose singular values agree within `relative_tol`
/// of the largest one.
std::vector<std::vector<int>> degenerate_groups(const Vector& d, double relative_tol = 1e-8);

}  // namespace gchar

#endif  // GCHAR_ANALYSIS_HPP
