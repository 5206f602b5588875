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

// Data-parallel kernels behind the measurement simulator and the noise
// likelihood. Each kernel exists twice: serial:: is the reference
// implementation, omp:: distributes independent jobs over OpenMP threads.
// Both produce bit-identical output: every job owns its random stream and
// reductions run in index order after the parallel region.

#ifndef GCHAR_KERNELS_HPP
#define GCHAR_KERNELS_HPP

#include <cstdint>
#include <span>

namespace gchar::kernels {

/// One independent normal stream: `count` draws from N(mean, stddev²).
struct NormalJob {
  double mean = 0.0;
  double stddev = 1.0;
  std::uint64_t seed = 0;
};

/// Sample mean and unbiased (n-1) sample variance of a stream.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
};

/// Seed of the `index`-th stream of `stage` under a master seed (SplitMix64
/// finalizer applied to the three words).
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stage,
                             std::uint64_t index);

namespace serial {

/// out[j * count + s] is draw s of job j.
void draw_samples(std::span<const NormalJob> jobs, std::uint64_t count,
                  std::span<double> out);

/// Streams `count` draws per job without storing them.
void sample_moments(std::span<const NormalJob> jobs, std::uint64_t count,
                    std::span<Moments> out);

/// Gaussian log-likelihood Σ_k n_k/2 [-ln σ_k² - s_k²/σ_k²] of per-setting
/// sample variances. Writes dL/dσ_k² to grad_coeff. σ_k² is floored at
/// `floor`.
double variance_log_likelihood(std::span<const double> model_var,
                               std::span<const double> sample_var,
                               std::span<const double> counts, double floor,
                               std::span<double> grad_coeff);

}  // namespace serial

namespace omp {

void draw_samples(std::span<const NormalJob> jobs, std::uint64_t count,
                  std::span<double> out);

void sample_moments(std::span<const NormalJob> jobs, std::uint64_t count,
                    std::span<Moments> out);

double variance_log_likelihood(std::span<const double> model_var,
                               std::span<const double> sample_var,
                               std::span<const double> counts, double floor,
                               std::span<double> grad_coeff);

/// Threads used by the omp:: kernels.
int max_threads();

/// Overrides the thread count; values < 1 are ignored.
void set_threads(int n);

}  // namespace omp

}  // namespace gchar::kernels

#endif  // GCHAR_KERNELS_HPP
