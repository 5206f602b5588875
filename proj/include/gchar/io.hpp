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

// File formats.
//
// Channel file (JSON):
//   {"modes": M, "ordering": "xxpp",
//    "amp": [4M² numbers, row-major], "noise": [...], "disp": [2M numbers]}
//
// Result file: a channel file whose matrices are the estimates, plus
//   "diagnostics": {"loglik", "margin", "iterations", "converged", "seed",
//                   "shots": {"mean_stage", "vacuum_stage"}, "q_amplitude"}
//
// Doubles are written in shortest round-trip form, so reading a file back
// reproduces every matrix bit for bit.
//
// Sample dump (binary, little-endian): magic "GCSAMP01", u64 record count,
// then per record: u32 label length, label bytes, u32 direction length,
// direction doubles, u64 sample count, sample doubles.

#ifndef GCHAR_IO_HPP
#define GCHAR_IO_HPP

#include "gchar/characterization.hpp"
#include "gchar/measurement.hpp"
#include "gchar/symplectic.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gchar::io {

using Json = nlohmann::json;

/// Malformed file or invalid configuration. `field` names the offending key
/// path (e.g. "channel.params.eta").
class FormatError : public Error {
 public:
  FormatError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ResultMetadata {
  std::uint64_t seed = 0;
  std::uint64_t shots_mean_stage = 0;
  std::uint64_t shots_vacuum_stage = 0;
  double q_amplitude = 0.0;
};

struct ResultFile {
  CharacterizationResult result;
  ResultMetadata meta;
};

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols,
                        const std::string& field);

Json channel_to_json(const GaussianChannel& ch);
GaussianChannel channel_from_json(const Json& j);

Json result_to_json(const CharacterizationResult& r, const ResultMetadata& meta);
ResultFile result_from_json(const Json& j);

/// Builds a channel from a named constructor spec:
///   {"constructor": "<name>", "params": {...}}
/// Names: identity, two_mode_squeezer, dfg, loss, cluster, quantum_noise,
/// classical_noise, explicit, sequence. See README for parameters.
GaussianChannel channel_from_spec(const Json& spec, const std::string& field = "channel");

struct ExperimentConfig {
  std::optional<Json> channel_spec;
  std::optional<std::filesystem::path> channel_file;
  ProtocolOptions protocol;
  std::filesystem::path out_dir = ".";
  bool emit_figures = false;
};

/// Parses a config; relative channel_file paths resolve against `base_dir`.
ExperimentConfig config_from_json(const Json& j, const std::filesystem::path& base_dir);

Json read_json_file(const std::filesystem::path& path);

/// Writes `j` with 2-space indent and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

void write_sample_dump(const std::filesystem::path& path, const std::vector<SampleSet>& sets);
std::vector<SampleSet> read_sample_dump(const std::filesystem::path& path);

/// Tab-separated table with a header row.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);

/// Matrix as a TSV grid (heat-map data), 17 significant digits.
void write_matrix_table(const std::filesystem::path& path, const Matrix& m);

}  // namespace gchar::io

#endif  // GCHAR_IO_HPP
