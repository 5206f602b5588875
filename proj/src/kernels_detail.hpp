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

// Per-job bodies shared by the serial and OpenMP kernels.

#ifndef GCHAR_SRC_KERNELS_DETAIL_HPP
#define GCHAR_SRC_KERNELS_DETAIL_HPP

#include "gchar/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>

namespace gchar::kernels::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline void check_sizes(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw std::invalid_argument(std::string(what) + ": buffer size " +
                                std::to_string(actual) + ", expected " +
                                std::to_string(expected));
  }
}

template <typename Sink>
inline void for_each_draw(const NormalJob& job, std::uint64_t count, Sink&& sink) {
  if (job.stddev == 0.0) {
    for (std::uint64_t s = 0; s < count; ++s) sink(job.mean);
    return;
  }
  std::mt19937_64 engine(job.seed);
  std::normal_distribution<double> dist(job.mean, job.stddev);
  for (std::uint64_t s = 0; s < count; ++s) sink(dist(engine));
}

inline void draw_job(const NormalJob& job, std::span<double> out) {
  std::size_t i = 0;
  for_each_draw(job, out.size(), [&](double v) { out[i++] = v; });
}

// Welford update; identical arithmetic to summarizing a stored stream.
inline Moments stream_moments(const NormalJob& job, std::uint64_t count) {
  Moments m;
  double m2 = 0.0;
  for_each_draw(job, count, [&](double v) {
    ++m.count;
    const double delta = v - m.mean;
    m.mean += delta / static_cast<double>(m.count);
    m2 += delta * (v - m.mean);
  });
  m.variance = m.count > 1 ? m2 / static_cast<double>(m.count - 1) : 0.0;
  return m;
}

inline double likelihood_term(double model_var, double sample_var, double count,
                              double floor, double& grad_coeff) {
  const double sigma2 = std::max(model_var, floor);
  grad_coeff = 0.5 * count * (sample_var - sigma2) / (sigma2 * sigma2);
  return 0.5 * count * (-std::log(sigma2) - sample_var / sigma2);
}

}  // namespace gchar::kernels::detail

#endif  // GCHAR_SRC_KERNELS_DETAIL_HPP
