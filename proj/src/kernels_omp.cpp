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

#include "gchar/kernels.hpp"

#include "kernels_detail.hpp"

#include <omp.h>

#include <cstdint>
#include <vector>

namespace gchar::kernels::omp {

void draw_samples(std::span<const NormalJob> jobs, std::uint64_t count,
                  std::span<double> out) {
  detail::check_sizes(jobs.size() * count, out.size(), "draw_samples");
  const auto n = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t j = 0; j < n; ++j) {
    detail::draw_job(jobs[j], out.subspan(static_cast<std::size_t>(j) * count, count));
  }
}

void sample_moments(std::span<const NormalJob> jobs, std::uint64_t count,
                    std::span<Moments> out) {
  detail::check_sizes(jobs.size(), out.size(), "sample_moments");
  const auto n = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t j = 0; j < n; ++j) {
    out[j] = detail::stream_moments(jobs[j], count);
  }
}

double variance_log_likelihood(std::span<const double> model_var,
                               std::span<const double> sample_var,
                               std::span<const double> counts, double floor,
                               std::span<double> grad_coeff) {
  const std::size_t k = model_var.size();
  detail::check_sizes(k, sample_var.size(), "variance_log_likelihood");
  detail::check_sizes(k, counts.size(), "variance_log_likelihood");
  detail::check_sizes(k, grad_coeff.size(), "variance_log_likelihood");
  std::vector<double> terms(k);
  const auto n = static_cast<std::int64_t>(k);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    terms[i] = detail::likelihood_term(model_var[i], sample_var[i], counts[i], floor,
                                       grad_coeff[i]);
  }
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
  if (n >= 1) omp_set_num_threads(n);
}

}  // namespace gchar::kernels::omp
