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

// Shot-limited simulation of the two probe stages: coherent probes whose
// output means are averaged quadrature by quadrature, and homodyne sampling
// of the vacuum response along a catalog of quadrature combinations.
//
// Every unit of work (one output quadrature of one probe, one setting) draws
// from its own substream of the master seed, so results do not depend on
// thread count or scheduling.

#ifndef GCHAR_MEASUREMENT_HPP
#define GCHAR_MEASUREMENT_HPP

#include "gchar/kernels.hpp"
#include "gchar/symplectic.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gchar {

enum class SettingKind { kX, kP, kXX, kPP, kXP };

/// A homodyne direction w with one or two unit entries. Indices are 0-based;
/// labels are 1-based ("x1", "p2", "x1+x2", "p1+p3", "x2+p1").
struct MeasurementSetting {
  SettingKind kind = SettingKind::kX;
  int i = 0;
  int j = 0;
  Vector direction;
  std::string label;
};

struct SampleSet {
  MeasurementSetting setting;
  std::vector<double> samples;
};

/// Sample statistics of one setting; what the estimators actually consume.
struct SampleSummary {
  MeasurementSetting setting;
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
};

struct ProbeRecord {
  Vector input_mean;
  int probe_index = 0;  ///< 1..2M for q·e_n probes, 0 for the zero-input run
  Vector measured_output_mean;
  std::uint64_t shots = 0;
};

/// Random-stream stages under one master seed.
enum class Stage : std::uint64_t {
  kSingle = 0,
  kProbeMeans = 1,
  kVacuumSettings = 2,
  kZeroInput = 3,
  kEigenProbes = 4,
};

MeasurementSetting make_setting(SettingKind kind, int i, int j, int modes);

/// n-th entry is the coherent state with mean q·e_n, n = 1..2M.
std::vector<GaussianState> probe_sequence(int modes, double q_amplitude);

/// x_i, p_i; x_i+x_j and p_i+p_j for i<j; x_i+p_j for all i, j.
/// Size 2M² + M.
std::vector<MeasurementSetting> setting_catalog(int modes);

/// `shots` independent draws of w·q̂ from a Gaussian state.
SampleSet sample_quadrature(const GaussianState& st, const Vector& w, std::uint64_t shots,
                            std::uint64_t seed);

/// Raw samples for every setting of a catalog, setting k on substream
/// (seed, stage, k).
std::vector<SampleSet> sample_settings(const GaussianState& st,
                                       std::span<const MeasurementSetting> catalog,
                                       std::uint64_t shots, std::uint64_t seed,
                                       Stage stage = Stage::kVacuumSettings);

/// Same draws as sample_settings, reduced to moments without storing them.
std::vector<SampleSummary> summarize_settings(const GaussianState& st,
                                              std::span<const MeasurementSetting> catalog,
                                              std::uint64_t shots, std::uint64_t seed,
                                              Stage stage = Stage::kVacuumSettings);

SampleSummary summarize(const SampleSet& set);

/// Sends each probe through the channel and averages `shots` draws for every
/// output quadrature. Record n carries probe_index n+1.
std::vector<ProbeRecord> measure_output_means(const GaussianChannel& ch,
                                              std::span<const GaussianState> probes,
                                              std::uint64_t shots, std::uint64_t seed,
                                              Stage stage = Stage::kProbeMeans);

/// Output-mean record for the vacuum input (probe_index 0).
ProbeRecord measure_zero_input(const GaussianChannel& ch, std::uint64_t shots,
                               std::uint64_t seed);

}  // namespace gchar

#endif  // GCHAR_MEASUREMENT_HPP
