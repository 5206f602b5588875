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

#include "gchar/symplectic.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace gchar {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw DimensionError(std::string(what) + ": non-finite entries");
  }
}

void require_same_modes(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": mode count mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

int modes_from_dimension(Eigen::Index dim) {
  if (dim <= 0 || dim % 2 != 0) {
    throw DimensionError("quadrature dimension must be even and positive, got " +
                         std::to_string(dim));
  }
  return static_cast<int>(dim / 2);
}

Matrix omega(int modes) {
  if (modes < 1) {
    throw DimensionError("omega: modes must be >= 1");
  }
  Matrix w = Matrix::Zero(2 * modes, 2 * modes);
  w.topRightCorner(modes, modes).setIdentity();
  w.bottomLeftCorner(modes, modes) = -Matrix::Identity(modes, modes);
  return w;
}

GaussianState::GaussianState(Vector mean, Matrix cov)
    : mean_(std::move(mean)), modes_(modes_from_dimension(mean_.size())) {
  if (cov.rows() != mean_.size() || cov.cols() != mean_.size()) {
    throw DimensionError("GaussianState: covariance must be " +
                         std::to_string(mean_.size()) + "x" +
                         std::to_string(mean_.size()));
  }
  require_finite(mean_, "GaussianState mean");
  require_finite(cov, "GaussianState covariance");
  if (max_asymmetry(cov) > kSymmetryTolerance) {
    throw DimensionError("GaussianState: covariance is not symmetric");
  }
  cov_ = symmetrized(cov);
}

GaussianChannel::GaussianChannel(Matrix amp, Matrix noise, Vector disp)
    : amp_(std::move(amp)),
      disp_(std::move(disp)),
      modes_(modes_from_dimension(amp_.rows())) {
  const Eigen::Index n = amp_.rows();
  if (amp_.cols() != n || noise.rows() != n || noise.cols() != n ||
      disp_.size() != n) {
    throw DimensionError("GaussianChannel: amp, noise and disp must share dimension " +
                         std::to_string(n));
  }
  require_finite(amp_, "GaussianChannel amp");
  require_finite(noise, "GaussianChannel noise");
  require_finite(disp_, "GaussianChannel disp");
  if (max_asymmetry(noise) > kSymmetryTolerance) {
    throw DimensionError("GaussianChannel: noise matrix is not symmetric");
  }
  noise_ = symmetrized(noise);
}

GaussianChannel::GaussianChannel(Matrix amp, Matrix noise)
    : GaussianChannel(amp, noise, Vector::Zero(amp.rows())) {}

GaussianChannel GaussianChannel::identity(int modes) {
  if (modes < 1) {
    throw DimensionError("identity channel: modes must be >= 1");
  }
  const int n = 2 * modes;
  return GaussianChannel(Matrix::Identity(n, n), Matrix::Zero(n, n),
                         Vector::Zero(n));
}

GaussianState vacuum_state(int modes) {
  if (modes < 1) {
    throw DimensionError("vacuum_state: modes must be >= 1");
  }
  return GaussianState(Vector::Zero(2 * modes),
                       Matrix::Identity(2 * modes, 2 * modes));
}

GaussianState coherent_state(const Vector& mean) {
  return GaussianState(mean, Matrix::Identity(mean.size(), mean.size()));
}

GaussianState apply_channel(const GaussianChannel& ch, const GaussianState& st) {
  require_same_modes(ch.modes(), st.modes(), "apply_channel");
  Vector mean = ch.amp() * st.mean() + ch.disp();
  Matrix cov = ch.amp() * st.cov() * ch.amp().transpose() + ch.noise();
  return GaussianState(std::move(mean), symmetrized(cov));
}

GaussianChannel compose(const GaussianChannel& second,
                        const GaussianChannel& first) {
  require_same_modes(second.modes(), first.modes(), "compose");
  const Matrix& a2 = second.amp();
  Matrix noise = a2 * first.noise() * a2.transpose() + second.noise();
  return GaussianChannel(a2 * first.amp(), symmetrized(noise),
                         a2 * first.disp() + second.disp());
}

double physicality_margin(const GaussianChannel& ch) {
  const Matrix w = omega(ch.modes());
  const Matrix im = w - ch.amp() * w * ch.amp().transpose();
  return hermitian_min_eigenvalue(ch.noise(), im);
}

double state_physicality(const Matrix& cov) {
  const int modes = modes_from_dimension(cov.rows());
  if (cov.cols() != cov.rows()) {
    throw DimensionError("state_physicality: covariance must be square");
  }
  return hermitian_min_eigenvalue(cov, omega(modes));
}

Physicality classify_margin(double margin) {
  if (std::abs(margin) <= kMarginTolerance) return Physicality::kBoundary;
  return margin > 0.0 ? Physicality::kPhysical : Physicality::kUnphysical;
}

Matrix to_amp_matrix(const ComplexChannelPair& pair) {
  const Eigen::Index m = pair.g.rows();
  if (pair.g.cols() != m || pair.h.rows() != m || pair.h.cols() != m) {
    throw DimensionError("to_amp_matrix: G and H must be square and equal-sized");
  }
  const CMatrix sum = pair.g + pair.h;
  const CMatrix diff = pair.g - pair.h;
  Matrix a(2 * m, 2 * m);
  a.topLeftCorner(m, m) = sum.real();
  a.topRightCorner(m, m) = -diff.imag();
  a.bottomLeftCorner(m, m) = sum.imag();
  a.bottomRightCorner(m, m) = diff.real();
  return a;
}

ComplexChannelPair from_amp_matrix(const Matrix& amp) {
  const int m = modes_from_dimension(amp.rows());
  if (amp.cols() != amp.rows()) {
    throw DimensionError("from_amp_matrix: matrix must be square");
  }
  const Matrix axx = amp.topLeftCorner(m, m);
  const Matrix axp = amp.topRightCorner(m, m);
  const Matrix apx = amp.bottomLeftCorner(m, m);
  const Matrix app = amp.bottomRightCorner(m, m);
  ComplexChannelPair pair{CMatrix(m, m), CMatrix(m, m)};
  pair.g.real() = 0.5 * (axx + app);
  pair.g.imag() = 0.5 * (apx - axp);
  pair.h.real() = 0.5 * (axx - app);
  pair.h.imag() = 0.5 * (apx + axp);
  return pair;
}

std::vector<double> symplectic_eigenvalues(const Matrix& cov) {
  const int modes = modes_from_dimension(cov.rows());
  if (cov.cols() != cov.rows()) {
    throw DimensionError("symplectic_eigenvalues: covariance must be square");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> sym(symmetrized(cov));
  if (sym.eigenvalues().minCoeff() <= 0.0) {
    throw DegenerateMatrixError(
        "symplectic_eigenvalues: covariance is not positive definite");
  }
  // V^{1/2} Ω V^{1/2} is real antisymmetric with eigenvalues ±iν; the
  // Hermitian matrix i·K therefore has the spectrum ±ν.
  const Matrix root = sym.operatorSqrt();
  const Matrix k = root * omega(modes) * root;
  Eigen::SelfAdjointEigenSolver<CMatrix> herm(
      hermitian_from_parts(Matrix::Zero(k.rows(), k.cols()), k),
      Eigen::EigenvaluesOnly);
  std::vector<double> nu;
  nu.reserve(modes);
  const Vector& ev = herm.eigenvalues();  // ascending
  for (Eigen::Index i = ev.size() - 1; i >= modes; --i) {
    nu.push_back(ev(i));
  }
  return nu;
}

double ppt_min_eigenvalue(const Matrix& cov, std::span<const int> transposed_modes) {
  const int modes = modes_from_dimension(cov.rows());
  if (cov.cols() != cov.rows()) {
    throw DimensionError("ppt_min_eigenvalue: covariance must be square");
  }
  std::vector<bool> seen(modes, false);
  for (int m : transposed_modes) {
    if (m < 0 || m >= modes) {
      throw DimensionError("ppt_min_eigenvalue: mode index " + std::to_string(m) +
                           " out of range");
    }
    if (seen[m]) {
      throw DimensionError("ppt_min_eigenvalue: repeated mode index " +
                           std::to_string(m));
    }
    seen[m] = true;
  }
  const auto count = static_cast<int>(transposed_modes.size());
  if (count == 0 || count == modes) {
    throw PartitionError("ppt_min_eigenvalue: subset must be non-empty and proper");
  }
  Vector flip = Vector::Ones(2 * modes);
  for (int m : transposed_modes) flip(modes + m) = -1.0;
  const Matrix transposed = flip.asDiagonal() * cov * flip.asDiagonal();
  return hermitian_min_eigenvalue(transposed, omega(modes));
}

GaussianState reduce_state(const GaussianState& st, std::span<const int> modes) {
  const int total = st.modes();
  const auto k = static_cast<int>(modes.size());
  if (k == 0) {
    throw DimensionError("reduce_state: empty mode list");
  }
  std::vector<int> index(2 * k);
  for (int i = 0; i < k; ++i) {
    if (modes[i] < 0 || modes[i] >= total) {
      throw DimensionError("reduce_state: mode index out of range");
    }
    index[i] = modes[i];
    index[k + i] = total + modes[i];
  }
  Vector mean(2 * k);
  Matrix cov(2 * k, 2 * k);
  for (int i = 0; i < 2 * k; ++i) {
    mean(i) = st.mean()(index[i]);
    for (int j = 0; j < 2 * k; ++j) cov(i, j) = st.cov()(index[i], index[j]);
  }
  return GaussianState(std::move(mean), std::move(cov));
}

}  // namespace gchar
