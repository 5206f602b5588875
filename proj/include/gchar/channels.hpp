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

// Constructors for reference channels: two-mode squeezers and DFG arrays,
// cluster-state generators, (rotated) mode-dependent loss, quantum and
// classical noise channels. Mode indices are 0-based.

#ifndef GCHAR_CHANNELS_HPP
#define GCHAR_CHANNELS_HPP

#include "gchar/symplectic.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gchar {

/// Array of phase-insensitive amplifiers pairing mode m with M-1-m.
struct DfgSpec {
  int modes = 0;                ///< even
  std::vector<double> squeeze;  ///< one r per pair, pair k = (k, M-1-k)
};

struct GraphSpec {
  Matrix adjacency;  ///< symmetric, zero diagonal
  double squeeze = 0.0;
};

struct LossSpec {
  std::vector<double> transmissivities;  ///< η_m in [0, 1]
  /// Orthogonal symplectic 2M×2M basis change; loss acts in this basis.
  std::optional<Matrix> rotation;
};

/// The pairs (k, M-1-k), k < M/2, used by dfg_array and quantum_noise_channel.
std::vector<std::pair<int, int>> conjugate_pairs(int modes);

/// x_a' = cosh r x_a + sinh r x_b, p_a' = cosh r p_a - sinh r p_b (and a<->b).
GaussianChannel two_mode_squeezer(double r, int mode_a, int mode_b, int total_modes);

/// x' = e^{r} x, p' = e^{-r} p on one mode.
GaussianChannel single_mode_squeezer(double r, int mode, int total_modes);

GaussianChannel dfg_array(const DfgSpec& spec);

/// DfgSpec with the same squeeze on every pair.
DfgSpec uniform_dfg(int modes, double r);

/// Passive (orthogonal symplectic) rotation implementing the unitary U on
/// the mode amplitudes.
Matrix passive_rotation(const CMatrix& unitary);

/// Real beamsplitter of angle theta between modes a and b.
Matrix beamsplitter_rotation(double theta, int mode_a, int mode_b, int total_modes);

GaussianChannel loss_channel(const LossSpec& spec);

/// Squeezers of strength r on every mode followed by the controlled-Z shear
/// p -> p + G x. Output of vacuum has nullifiers p_i - Σ_j G_ij x_j with
/// variance e^{-2r}.
GaussianChannel cluster_channel(const GraphSpec& spec);

/// A = √η I and N = (1-η) V_env, V_env the covariance of two-mode squeezed
/// vacuum of parameter noise_squeeze on each conjugate pair. `modes` even.
GaussianChannel quantum_noise_channel(double eta, double noise_squeeze, int modes);

/// A = I, N = n_cl.
GaussianChannel classical_noise_channel(const Matrix& n_cl);

/// Covariance of the nullifiers p_i - Σ_j G_ij x_j of a state.
Vector nullifier_variances(const Matrix& cov, const Matrix& adjacency);

/// noise_squeeze for which quantum_noise_channel(eta, ·, 2) turns vacuum into
/// a state whose PPT minimum eigenvalue equals `target`. Throws
/// ParameterError when the target is out of reach (target <= -(1-η)).
double calibrate_quantum_noise_squeeze(double eta, double target);

/// Per-pair squeeze parameters such that loss(η) ∘ dfg_array(...) maps vacuum
/// onto EPR pairs with the requested PPT minimum eigenvalues.
std::vector<double> calibrate_lossy_dfg_squeeze(double eta,
                                                std::span<const double> targets);

}  // namespace gchar

#endif  // GCHAR_CHANNELS_HPP
