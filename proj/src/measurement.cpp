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

#include "gchar/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gchar {

namespace {

kernels::NormalJob job_for(const GaussianState& st, const Vector& w, std::uint64_t seed) {
  if (w.size() != st.mean().size()) {
    throw DimensionError("homodyne direction has length " + std::to_string(w.size()) +
                         ", state has dimension " + std::to_string(st.mean().size()));
  }
  if (w.isZero(0.0)) {
    throw SettingError("homodyne direction must be nonzero");
  }
  const double var = w.dot(st.cov() * w);
  if (!(var >= 0.0)) {
    throw SettingError("quadrature variance is negative for this direction");
  }
  return {w.dot(st.mean()), std::sqrt(var), seed};
}

void require_shots(std::uint64_t shots) {
  if (shots < 1) throw ParameterError("shot count must be >= 1");
}

std::vector<kernels::NormalJob> setting_jobs(const GaussianState& st,
                                             std::span<const MeasurementSetting> catalog,
                                             std::uint64_t seed, Stage stage) {
  std::vector<kernels::NormalJob> jobs;
  jobs.reserve(catalog.size());
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    jobs.push_back(job_for(
        st, catalog[k].direction,
        kernels::substream_seed(seed, static_cast<std::uint64_t>(stage), k)));
  }
  return jobs;
}

}  // namespace

MeasurementSetting make_setting(SettingKind kind, int i, int j, int modes) {
  if (modes < 1 || i < 0 || i >= modes || j < 0 || j >= modes) {
    throw DimensionError("make_setting: mode index out of range");
  }
  MeasurementSetting s;
  s.kind = kind;
  s.i = i;
  s.j = j;
  s.direction = Vector::Zero(2 * modes);
  const std::string a = std::to_string(i + 1);
  const std::string b = std::to_string(j + 1);
  switch (kind) {
    case SettingKind::kX:
      s.j = i;
      s.direction(i) = 1.0;
      s.label = "x" + a;
      break;
    case SettingKind::kP:
      s.j = i;
      s.direction(modes + i) = 1.0;
      s.label = "p" + a;
      break;
    case SettingKind::kXX:
      if (i == j) throw SettingError("x_i + x_j needs distinct modes");
      s.direction(i) = s.direction(j) = 1.0;
      s.label = "x" + a + "+x" + b;
      break;
    case SettingKind::kPP:
      if (i == j) throw SettingError("p_i + p_j needs distinct modes");
      s.direction(modes + i) = s.direction(modes + j) = 1.0;
      s.label = "p" + a + "+p" + b;
      break;
    case SettingKind::kXP:
      s.direction(i) = 1.0;
      s.direction(modes + j) = 1.0;
      s.label = "x" + a + "+p" + b;
      break;
  }
  return s;
}

std::vector<GaussianState> probe_sequence(int modes, double q_amplitude) {
  if (modes < 1) throw DimensionError("probe_sequence: modes must be >= 1");
  if (!(q_amplitude > 0.0) || !std::isfinite(q_amplitude)) {
    throw ParameterError("probe_sequence: q_amplitude must be positive");
  }
  std::vector<GaussianState> probes;
  probes.reserve(2 * modes);
  for (int n = 0; n < 2 * modes; ++n) {
    Vector mean = Vector::Zero(2 * modes);
    mean(n) = q_amplitude;
    probes.push_back(coherent_state(mean));
  }
  return probes;
}

std::vector<MeasurementSetting> setting_catalog(int modes) {
  if (modes < 1) throw DimensionError("setting_catalog: modes must be >= 1");
  std::vector<MeasurementSetting> out;
  out.reserve(2 * modes * modes + modes);
  for (int i = 0; i < modes; ++i) out.push_back(make_setting(SettingKind::kX, i, i, modes));
  for (int i = 0; i < modes; ++i) out.push_back(make_setting(SettingKind::kP, i, i, modes));
  for (int i = 0; i < modes; ++i) {
    for (int j = i + 1; j < modes; ++j) {
      out.push_back(make_setting(SettingKind::kXX, i, j, modes));
    }
  }
  for (int i = 0; i < modes; ++i) {
    for (int j = i + 1; j < modes; ++j) {
      out.push_back(make_setting(SettingKind::kPP, i, j, modes));
    }
  }
  for (int i = 0; i < modes; ++i) {
    for (int j = 0; j < modes; ++j) out.push_back(make_setting(SettingKind::kXP, i, j, modes));
  }
  return out;
}

SampleSet sample_quadrature(const GaussianState& st, const Vector& w, std::uint64_t shots,
                            std::uint64_t seed) {
  require_shots(shots);
  const kernels::NormalJob job = job_for(
      st, w, kernels::substream_seed(seed, static_cast<std::uint64_t>(Stage::kSingle), 0));
  SampleSet set;
  set.setting.direction = w;
  set.setting.label = "custom";
  set.samples.resize(shots);
  kernels::serial::draw_samples({&job, 1}, shots, set.samples);
  return set;
}

std::vector<SampleSet> sample_settings(const GaussianState& st,
                                       std::span<const MeasurementSetting> catalog,
                                       std::uint64_t shots, std::uint64_t seed, Stage stage) {
  require_shots(shots);
  const auto jobs = setting_jobs(st, catalog, seed, stage);
  std::vector<double> flat(jobs.size() * shots);
  kernels::omp::draw_samples(jobs, shots, flat);
  std::vector<SampleSet> out(catalog.size());
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    out[k].setting = catalog[k];
    out[k].samples.assign(flat.begin() + static_cast<std::ptrdiff_t>(k * shots),
                          flat.begin() + static_cast<std::ptrdiff_t>((k + 1) * shots));
  }
  return out;
}

std::vector<SampleSummary> summarize_settings(const GaussianState& st,
                                              std::span<const MeasurementSetting> catalog,
                                              std::uint64_t shots, std::uint64_t seed,
                                              Stage stage) {
  require_shots(shots);
  const auto jobs = setting_jobs(st, catalog, seed, stage);
  std::vector<kernels::Moments> moments(jobs.size());
  kernels::omp::sample_moments(jobs, shots, moments);
  std::vector<SampleSummary> out(catalog.size());
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    out[k] = {catalog[k], moments[k].count, moments[k].mean, moments[k].variance};
  }
  return out;
}

SampleSummary summarize(const SampleSet& set) {
  SampleSummary s{set.setting, 0, 0.0, 0.0};
  double m2 = 0.0;
  for (double v : set.samples) {
    ++s.count;
    const double delta = v - s.mean;
    s.mean += delta / static_cast<double>(s.count);
    m2 += delta * (v - s.mean);
  }
  s.variance = s.count > 1 ? m2 / static_cast<double>(s.count - 1) : 0.0;
  return s;
}

std::vector<ProbeRecord> measure_output_means(const GaussianChannel& ch,
                                              std::span<const GaussianState> probes,
                                              std::uint64_t shots, std::uint64_t seed,
                                              Stage stage) {
  require_shots(shots);
  const int dim = 2 * ch.modes();
  std::vector<kernels::NormalJob> jobs;
  jobs.reserve(probes.size() * dim);
  for (std::size_t n = 0; n < probes.size(); ++n) {
    const GaussianState out = apply_channel(ch, probes[n]);
    for (int m = 0; m < dim; ++m) {
      jobs.push_back({out.mean()(m), std::sqrt(std::max(out.cov()(m, m), 0.0)),
                      kernels::substream_seed(seed, static_cast<std::uint64_t>(stage),
                                              n * dim + m)});
    }
  }
  std::vector<kernels::Moments> moments(jobs.size());
  kernels::omp::sample_moments(jobs, shots, moments);
  std::vector<ProbeRecord> records;
  records.reserve(probes.size());
  for (std::size_t n = 0; n < probes.size(); ++n) {
    Vector measured(dim);
    for (int m = 0; m < dim; ++m) measured(m) = moments[n * dim + m].mean;
    records.push_back({probes[n].mean(), static_cast<int>(n) + 1, std::move(measured), shots});
  }
  return records;
}

ProbeRecord measure_zero_input(const GaussianChannel& ch, std::uint64_t shots,
                               std::uint64_t seed) {
  const GaussianState vac = vacuum_state(ch.modes());
  auto records = measure_output_means(ch, {&vac, 1}, shots, seed, Stage::kZeroInput);
  records.front().probe_index = 0;
  return records.front();
}

}  // namespace gchar
