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

#include "gchar/analysis.hpp"

#include "gchar/channels.hpp"
#include "gchar/measurement.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace gchar {

EigenAnalysis svd_channel(const Matrix& amp) {
  if (amp.rows() != amp.cols() || amp.rows() == 0) {
    throw DimensionError("svd_channel: amplification matrix must be square");
  }
  if (!amp.allFinite()) throw DimensionError("svd_channel: non-finite entries");
  Eigen::JacobiSVD<Matrix> svd(amp, Eigen::ComputeFullU | Eigen::ComputeFullV);
  EigenAnalysis out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  const Vector signs = canonicalize_column_signs(out.v);
  out.u = out.u * signs.asDiagonal();
  return out;
}

ModeAmplitudePhase to_amplitude_phase(const Vector& quadratures) {
  const int m = modes_from_dimension(quadratures.size());
  ModeAmplitudePhase out{Vector(m), Vector(m)};
  for (int k = 0; k < m; ++k) {
    const double x = quadratures(k);
    const double p = quadratures(m + k);
    out.amplitudes(k) = std::hypot(x, p);
    out.phases(k) = (x == 0.0 && p == 0.0) ? 0.0 : std::atan2(p, x);
    if (out.phases(k) == -M_PI) out.phases(k) = M_PI;
  }
  return out;
}

NoiseEigen noise_eigendecomposition(const Matrix& noise) {
  if (noise.rows() != noise.cols() || noise.rows() == 0) {
    throw DimensionError("noise_eigendecomposition: matrix must be square");
  }
  if (max_asymmetry(noise) > kSymmetryTolerance) {
    throw DimensionError("noise_eigendecomposition: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(noise));
  NoiseEigen out{solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
  canonicalize_column_signs(out.vectors);
  return out;
}

GaussianState predict_output(const GaussianChannel& ch, const GaussianState& input) {
  return apply_channel(ch, input);
}

std::vector<double> pair_ppt_eigenvalues(const GaussianState& st) {
  std::vector<double> out;
  const int transposed[] = {1};
  for (const auto& [a, b] : conjugate_pairs(st.modes())) {
    const int pair[] = {a, b};
    out.push_back(ppt_min_eigenvalue(reduce_state(st, pair).cov(), transposed));
  }
  return out;
}

std::vector<std::vector<int>> degenerate_groups(const Vector& d, double relative_tol) {
  std::vector<std::vector<int>> groups;
  const double scale = d.size() > 0 ? std::max(d.cwiseAbs().maxCoeff(), 1e-300) : 1.0;
  for (int i = 0; i < d.size(); ++i) {
    if (!groups.empty() &&
        std::abs(d(groups.back().front()) - d(i)) <= relative_tol * scale) {
      groups.back().push_back(i);
    } else {
      groups.push_back({i});
    }
  }
  return groups;
}

EigenquadratureReport verify_eigenquadratures(const GaussianChannel& ch,
                                              const EigenAnalysis& analysis,
                                              double q_amplitude, std::uint64_t shots,
                                              std::uint64_t seed) {
  const auto dim = 2 * ch.modes();
  if (analysis.u.rows() != dim || analysis.v.rows() != dim || analysis.d.size() != dim) {
    throw DimensionError("verify_eigenquadratures: analysis does not match channel");
  }
  if (!(q_amplitude > 0.0)) {
    throw ParameterError("verify_eigenquadratures: q_amplitude must be positive");
  }
  std::vector<GaussianState> probes;
  probes.reserve(dim);
  for (Eigen::Index m = 0; m < dim; ++m) {
    probes.push_back(coherent_state(q_amplitude * analysis.v.col(m)));
  }
  Matrix outputs(dim, dim);
  if (shots == 0) {
    for (Eigen::Index m = 0; m < dim; ++m) {
      outputs.col(m) = apply_channel(ch, probes[m]).mean() - ch.disp();
    }
  } else {
    const auto records = measure_output_means(ch, probes, shots, seed, Stage::kEigenProbes);
    const ProbeRecord zero = measure_zero_input(ch, shots, seed);
    for (Eigen::Index m = 0; m < dim; ++m) {
      outputs.col(m) = records[m].measured_output_mean - zero.measured_output_mean;
    }
  }

  EigenquadratureReport rep{analysis.d, Vector(dim), Vector(dim), Vector(dim)};
  std::vector<int> group_of(dim);
  const auto groups = degenerate_groups(analysis.d);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int i : groups[g]) group_of[i] = static_cast<int>(g);
  }
  for (Eigen::Index m = 0; m < dim; ++m) {
    const double norm = outputs.col(m).norm();
    rep.gains(m) = norm / q_amplitude;
    if (norm == 0.0) {
      rep.overlaps(m) = rep.subspace_overlaps(m) = 0.0;
      continue;
    }
    const Vector u_exp = outputs.col(m) / norm;
    const double dot = u_exp.dot(analysis.u.col(m));
    rep.overlaps(m) = dot * dot;
    double proj = 0.0;
    for (int i : groups[group_of[m]]) {
      const double c = u_exp.dot(analysis.u.col(i));
      proj += c * c;
    }
    rep.subspace_overlaps(m) = proj;
  }
  return rep;
}

}  // namespace gchar
