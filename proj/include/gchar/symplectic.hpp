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

// Gaussian states and channels in xxpp ordering.
//
// Quadratures are q = (x_1..x_M, p_1..p_M) with x = a + a†, p = (a - a†)/i,
// so [x, p] = 2i and the vacuum covariance is the identity. A channel
// (A, N, d) maps q -> A q + d and V -> A V Aᵀ + N.

#ifndef GCHAR_SYMPLECTIC_HPP
#define GCHAR_SYMPLECTIC_HPP

#include "gchar/linalg.hpp"

#include <span>
#include <vector>

namespace gchar {

/// Tolerance on |V - Vᵀ| accepted for covariance and noise matrices.
inline constexpr double kSymmetryTolerance = 1e-10;

/// Margins within this distance of zero count as boundary-physical.
inline constexpr double kMarginTolerance = 1e-9;

/// Block matrix [[0, I], [-I, 0]] of size 2M.
Matrix omega(int modes);

/// Number of modes represented by a quadrature vector or a 2M×2M matrix.
/// Throws DimensionError for odd or zero sizes.
int modes_from_dimension(Eigen::Index dim);

class GaussianState {
 public:
  /// Throws DimensionError on odd/mismatched sizes, non-finite entries or a
  /// covariance asymmetric beyond kSymmetryTolerance. The stored covariance
  /// is exactly symmetric.
  GaussianState(Vector mean, Matrix cov);

  int modes() const { return modes_; }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }

 private:
  Vector mean_;
  Matrix cov_;
  int modes_;
};

class GaussianChannel {
 public:
  /// Square channel on M modes: amp and noise are 2M×2M, disp has length 2M.
  GaussianChannel(Matrix amp, Matrix noise, Vector disp);
  GaussianChannel(Matrix amp, Matrix noise);

  static GaussianChannel identity(int modes);

  int modes() const { return modes_; }
  const Matrix& amp() const { return amp_; }
  const Matrix& noise() const { return noise_; }
  const Vector& disp() const { return disp_; }

 private:
  Matrix amp_;
  Matrix noise_;
  Vector disp_;
  int modes_;
};

/// Complex matrices of the classical relation E'_n = Σ_m G_nm E_m + H_nm E*_m.
struct ComplexChannelPair {
  CMatrix g;
  CMatrix h;
};

GaussianState vacuum_state(int modes);
GaussianState coherent_state(const Vector& mean);

/// q' = A q + d, V' = A V Aᵀ + N (symmetrized).
GaussianState apply_channel(const GaussianChannel& ch, const GaussianState& st);

/// The channel equivalent to applying `first` and then `second`.
GaussianChannel compose(const GaussianChannel& second,
                        const GaussianChannel& first);

/// Minimum eigenvalue of N + i(Ω - AΩAᵀ). Non-negative (within
/// kMarginTolerance) iff the channel obeys the uncertainty principle.
double physicality_margin(const GaussianChannel& ch);

/// Minimum eigenvalue of V + iΩ.
double state_physicality(const Matrix& cov);

enum class Physicality { kPhysical, kBoundary, kUnphysical };

Physicality classify_margin(double margin);

/// A = [[Re(G+H), Im(H-G)], [Im(G+H), Re(G-H)]].
Matrix to_amp_matrix(const ComplexChannelPair& pair);

/// Inverse of to_amp_matrix; throws DimensionError for odd or non-square A.
ComplexChannelPair from_amp_matrix(const Matrix& amp);

/// Symplectic eigenvalues of a positive-definite covariance, descending.
/// Throws DegenerateMatrixError if cov is not positive definite.
std::vector<double> symplectic_eigenvalues(const Matrix& cov);

/// Minimum eigenvalue of Ṽ + iΩ where Ṽ flips the sign of p_m for every
/// (0-based) mode m in `transposed_modes`. Negative values witness
/// entanglement across the bipartition. Throws PartitionError for an empty
/// or full subset and DimensionError for out-of-range or repeated indices.
double ppt_min_eigenvalue(const Matrix& cov, std::span<const int> transposed_modes);

/// Marginal state on the listed (0-based) modes, in the listed order.
GaussianState reduce_state(const GaussianState& st, std::span<const int> modes);

}  // namespace gchar

#endif  // GCHAR_SYMPLECTIC_HPP
