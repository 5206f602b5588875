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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gchar::kernels {

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stage,
                             std::uint64_t index) {
  std::uint64_t z = detail::splitmix64(master);
  z = detail::splitmix64(z ^ stage);
  return detail::splitmix64(z ^ index);
}

namespace serial {

void draw_samples(std::span<const NormalJob> jobs, std::uint64_t count,
                  std::span<double> out) {
  detail::check_sizes(jobs.size() * count, out.size(), "draw_samples");
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    detail::draw_job(jobs[j], out.subspan(j * count, count));
  }
}

void sample_moments(std::span<const NormalJob> jobs, std::uint64_t count,
                    std::span<Moments> out) {
  detail::check_sizes(jobs.size(), out.size(), "sample_moments");
  for (std::size_t j = 0; j < jobs.size(); ++j) {
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
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    total += detail::likelihood_term(model_var[i], sample_var[i], counts[i], floor,
                                     grad_coeff[i]);
  }
  return total;
}

}  // namespace serial

}  // namespace gchar::kernels
