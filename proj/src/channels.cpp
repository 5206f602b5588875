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

#include "gchar/channels.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

namespace gchar {

namespace {

void check_mode(int m, int total, const char* what) {
  if (m < 0 || m >= total) {
    throw DimensionError(std::string(what) + ": mode index " + std::to_string(m) +
                         " out of range for " + std::to_string(total) + " modes");
  }
}

void check_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ParameterError(std::string(what) + " must lie in [0, 1], got " +
                         std::to_string(v));
  }
}

// Root of a decreasing function f on [0, inf) with f(0) > 0.
double solve_decreasing(const std::function<double(double)>& f, const char* what) {
  double hi = 0.5;
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 64.0) {
      throw ParameterError(std::string(what) + ": target not reachable");
    }
  }
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, 0.0, hi, f(0.0), f(hi), boost::math::tools::eps_tolerance<double>(50),
      max_iter);
  return 0.5 * (a + b);
}

}  // namespace

std::vector<std::pair<int, int>> conjugate_pairs(int modes) {
  if (modes < 2 || modes % 2 != 0) {
    throw DimensionError("conjugate pairing needs an even number of modes, got " +
                         std::to_string(modes));
  }
  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k < modes / 2; ++k) pairs.emplace_back(k, modes - 1 - k);
  return pairs;
}

GaussianChannel two_mode_squeezer(double r, int mode_a, int mode_b, int total_modes) {
  check_mode(mode_a, total_modes, "two_mode_squeezer");
  check_mode(mode_b, total_modes, "two_mode_squeezer");
  if (mode_a == mode_b) {
    throw DimensionError("two_mode_squeezer: modes must differ");
  }
  if (!std::isfinite(r)) throw ParameterError("two_mode_squeezer: r must be finite");
  const int m = total_modes;
  Matrix a = Matrix::Identity(2 * m, 2 * m);
  const double c = std::cosh(r);
  const double s = std::sinh(r);
  a(mode_a, mode_a) = c;
  a(mode_b, mode_b) = c;
  a(mode_a, mode_b) = s;
  a(mode_b, mode_a) = s;
  a(m + mode_a, m + mode_a) = c;
  a(m + mode_b, m + mode_b) = c;
  a(m + mode_a, m + mode_b) = -s;
  a(m + mode_b, m + mode_a) = -s;
  return GaussianChannel(std::move(a), Matrix::Zero(2 * m, 2 * m));
}

GaussianChannel single_mode_squeezer(double r, int mode, int total_modes) {
  check_mode(mode, total_modes, "single_mode_squeezer");
  Matrix a = Matrix::Identity(2 * total_modes, 2 * total_modes);
  a(mode, mode) = std::exp(r);
  a(total_modes + mode, total_modes + mode) = std::exp(-r);
  return GaussianChannel(std::move(a), Matrix::Zero(2 * total_modes, 2 * total_modes));
}

DfgSpec uniform_dfg(int modes, double r) {
  return DfgSpec{modes, std::vector<double>(modes > 0 ? modes / 2 : 0, r)};
}

GaussianChannel dfg_array(const DfgSpec& spec) {
  const auto pairs = conjugate_pairs(spec.modes);
  if (spec.squeeze.size() != pairs.size()) {
    throw DimensionError("dfg_array: expected " + std::to_string(pairs.size()) +
                         " squeeze values, got " + std::to_string(spec.squeeze.size()));
  }
  // Disjoint pairs commute, so the product can be assembled entry-wise.
  const int m = spec.modes;
  Matrix a = Matrix::Identity(2 * m, 2 * m);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    const GaussianChannel tms = two_mode_squeezer(spec.squeeze[k], i, j, m);
    for (int row : {i, j, m + i, m + j}) {
      for (int col : {i, j, m + i, m + j}) a(row, col) = tms.amp()(row, col);
    }
  }
  return GaussianChannel(std::move(a), Matrix::Zero(2 * m, 2 * m));
}

Matrix passive_rotation(const CMatrix& unitary) {
  if (unitary.rows() != unitary.cols()) {
    throw DimensionError("passive_rotation: unitary must be square");
  }
  if ((unitary.adjoint() * unitary - CMatrix::Identity(unitary.rows(), unitary.cols()))
          .cwiseAbs()
          .maxCoeff() > 1e-9) {
    throw ParameterError("passive_rotation: matrix is not unitary");
  }
  return to_amp_matrix({unitary, CMatrix::Zero(unitary.rows(), unitary.cols())});
}

Matrix beamsplitter_rotation(double theta, int mode_a, int mode_b, int total_modes) {
  check_mode(mode_a, total_modes, "beamsplitter_rotation");
  check_mode(mode_b, total_modes, "beamsplitter_rotation");
  if (mode_a == mode_b) throw DimensionError("beamsplitter_rotation: modes must differ");
  CMatrix u = CMatrix::Identity(total_modes, total_modes);
  u(mode_a, mode_a) = std::cos(theta);
  u(mode_b, mode_b) = std::cos(theta);
  u(mode_a, mode_b) = -std::sin(theta);
  u(mode_b, mode_a) = std::sin(theta);
  return passive_rotation(u);
}

GaussianChannel loss_channel(const LossSpec& spec) {
  const auto m = static_cast<int>(spec.transmissivities.size());
  if (m < 1) throw DimensionError("loss_channel: no transmissivities given");
  Vector root(2 * m);
  Vector added(2 * m);
  for (int k = 0; k < m; ++k) {
    const double eta = spec.transmissivities[k];
    check_unit_interval(eta, "loss_channel: transmissivity");
    root(k) = root(m + k) = std::sqrt(eta);
    added(k) = added(m + k) = 1.0 - eta;
  }
  Matrix a = root.asDiagonal();
  Matrix n = added.asDiagonal();
  if (spec.rotation) {
    const Matrix& r = *spec.rotation;
    if (r.rows() != 2 * m || r.cols() != 2 * m) {
      throw DimensionError("loss_channel: rotation must be " + std::to_string(2 * m) +
                           "x" + std::to_string(2 * m));
    }
    const Matrix w = omega(m);
    if (max_abs(r.transpose() * r - Matrix::Identity(2 * m, 2 * m)) > 1e-9 ||
        max_abs(r * w * r.transpose() - w) > 1e-9) {
      throw ParameterError("loss_channel: rotation is not orthogonal symplectic");
    }
    a = r * a * r.transpose();
    n = symmetrized(r * n * r.transpose());
  }
  return GaussianChannel(std::move(a), std::move(n));
}

GaussianChannel cluster_channel(const GraphSpec& spec) {
  const Matrix& g = spec.adjacency;
  if (g.rows() < 1 || g.rows() != g.cols()) {
    throw DimensionError("cluster_channel: adjacency must be square and non-empty");
  }
  if (max_asymmetry(g) > kSymmetryTolerance) {
    throw ParameterError("cluster_channel: adjacency is not symmetric");
  }
  if (g.diagonal().cwiseAbs().maxCoeff() > 0.0) {
    throw ParameterError("cluster_channel: adjacency must have a zero diagonal");
  }
  const auto m = static_cast<int>(g.rows());
  Vector squeeze(2 * m);
  squeeze.head(m).setConstant(std::exp(spec.squeeze));
  squeeze.tail(m).setConstant(std::exp(-spec.squeeze));
  Matrix shear = Matrix::Identity(2 * m, 2 * m);
  shear.bottomLeftCorner(m, m) = symmetrized(g);
  return GaussianChannel(shear * squeeze.asDiagonal(), Matrix::Zero(2 * m, 2 * m));
}

GaussianChannel quantum_noise_channel(double eta, double noise_squeeze, int modes) {
  check_unit_interval(eta, "quantum_noise_channel: eta");
  if (!std::isfinite(noise_squeeze) || noise_squeeze < 0.0) {
    throw ParameterError("quantum_noise_channel: noise_squeeze must be finite and >= 0");
  }
  const Matrix env = dfg_array(uniform_dfg(modes, noise_squeeze)).amp();
  const int n = 2 * modes;
  return GaussianChannel(std::sqrt(eta) * Matrix::Identity(n, n),
                         symmetrized((1.0 - eta) * env * env.transpose()));
}

GaussianChannel classical_noise_channel(const Matrix& n_cl) {
  const int m = modes_from_dimension(n_cl.rows());
  return GaussianChannel(Matrix::Identity(2 * m, 2 * m), n_cl);
}

Vector nullifier_variances(const Matrix& cov, const Matrix& adjacency) {
  const auto m = adjacency.rows();
  if (cov.rows() != 2 * m || cov.cols() != 2 * m) {
    throw DimensionError("nullifier_variances: covariance/adjacency size mismatch");
  }
  Matrix k(m, 2 * m);
  k.leftCols(m) = -adjacency;
  k.rightCols(m).setIdentity();
  return (k * cov * k.transpose()).diagonal();
}

double calibrate_quantum_noise_squeeze(double eta, double target) {
  check_unit_interval(eta, "calibrate_quantum_noise_squeeze: eta");
  if (!(target < 0.0) || target <= -(1.0 - eta)) {
    throw ParameterError("calibrate_quantum_noise_squeeze: target must lie in (-(1-eta), 0)");
  }
  const int transposed[] = {1};
  const auto f = [&](double s) {
    const GaussianState out = apply_channel(quantum_noise_channel(eta, s, 2), vacuum_state(2));
    return ppt_min_eigenvalue(out.cov(), transposed) - target;
  };
  return solve_decreasing(f, "calibrate_quantum_noise_squeeze");
}

std::vector<double> calibrate_lossy_dfg_squeeze(double eta,
                                                std::span<const double> targets) {
  check_unit_interval(eta, "calibrate_lossy_dfg_squeeze: eta");
  const int transposed[] = {1};
  std::vector<double> r;
  r.reserve(targets.size());
  for (double target : targets) {
    if (!(target < 0.0) || target <= -eta) {
      throw ParameterError("calibrate_lossy_dfg_squeeze: target must lie in (-eta, 0)");
    }
    const GaussianChannel loss = loss_channel(LossSpec{{eta, eta}, std::nullopt});
    const auto f = [&](double sq) {
      const GaussianChannel ch = compose(loss, two_mode_squeezer(sq, 0, 1, 2));
      return ppt_min_eigenvalue(apply_channel(ch, vacuum_state(2)).cov(), transposed) -
             target;
    };
    r.push_back(solve_decreasing(f, "calibrate_lossy_dfg_squeeze"));
  }
  return r;
}

}  // namespace gchar
