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

// Serial vs OpenMP kernels at the vacuum-stage shape of a 16-mode run:
// 528 settings, a configurable number of shots each.

#include "gchar/kernels.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace gchar::kernels;

std::vector<NormalJob> make_jobs(int n) {
  std::vector<NormalJob> jobs(n);
  for (int k = 0; k < n; ++k) {
    jobs[k] = {0.1 * k, 1.0 + 0.01 * k, substream_seed(7, 2, static_cast<std::uint64_t>(k))};
  }
  return jobs;
}

template <bool Parallel>
void BM_DrawSamples(benchmark::State& state) {
  const auto jobs = make_jobs(static_cast<int>(state.range(0)));
  const auto count = static_cast<std::uint64_t>(state.range(1));
  std::vector<double> out(jobs.size() * count);
  for (auto _ : state) {
    if constexpr (Parallel) {
      omp::draw_samples(jobs, count, out);
    } else {
      serial::draw_samples(jobs, count, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(out.size()));
}

template <bool Parallel>
void BM_SampleMoments(benchmark::State& state) {
  const auto jobs = make_jobs(static_cast<int>(state.range(0)));
  const auto count = static_cast<std::uint64_t>(state.range(1));
  std::vector<Moments> out(jobs.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      omp::sample_moments(jobs, count, out);
    } else {
      serial::sample_moments(jobs, count, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(jobs.size() * count));
}

template <bool Parallel>
void BM_LogLikelihood(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> model(n), sample(n), counts(n, 1e4), grad(n);
  for (std::size_t k = 0; k < n; ++k) {
    model[k] = 1.0 + 0.001 * static_cast<double>(k);
    sample[k] = 1.0 + 0.0011 * static_cast<double>(k);
  }
  for (auto _ : state) {
    double l;
    if constexpr (Parallel) {
      l = omp::variance_log_likelihood(model, sample, counts, 1e-12, grad);
    } else {
      l = serial::variance_log_likelihood(model, sample, counts, 1e-12, grad);
    }
    benchmark::DoNotOptimize(l);
  }
}

}  // namespace

BENCHMARK(BM_DrawSamples<false>)->Args({528, 1000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrawSamples<true>)->Args({528, 1000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleMoments<false>)->Args({528, 10000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleMoments<true>)->Args({528, 10000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LogLikelihood<false>)->Arg(528)->Arg(1 << 16);
BENCHMARK(BM_LogLikelihood<true>)->Arg(528)->Arg(1 << 16);

BENCHMARK_MAIN();
