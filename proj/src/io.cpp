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

#include "gchar/io.hpp"

#include "gchar/channels.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace gchar::io {

namespace {

const Json& require(const Json& obj, const std::string& key, const std::string& field) {
  if (!obj.is_object()) throw FormatError(field, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(field + "." + key, "missing");
  return *it;
}

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) throw FormatError(field, "expected a number");
  return j.get<double>();
}

std::int64_t integer(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw FormatError(field, "expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t positive_count(const Json& j, const std::string& field) {
  const std::int64_t v = integer(j, field);
  if (v < 1) throw FormatError(field, "must be >= 1");
  return static_cast<std::uint64_t>(v);
}

int mode_count(const Json& obj, const std::string& field) {
  const std::int64_t m = integer(require(obj, "modes", field), field + ".modes");
  if (m < 1 || m > 4096) throw FormatError(field + ".modes", "must be in [1, 4096]");
  return static_cast<int>(m);
}

std::vector<double> numbers(const Json& j, const std::string& field) {
  if (!j.is_array()) throw FormatError(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Vector vector_from_json(const Json& j, Eigen::Index size, const std::string& field) {
  const auto v = numbers(j, field);
  if (static_cast<Eigen::Index>(v.size()) != size) {
    throw FormatError(field, "expected " + std::to_string(size) + " entries, got " +
                                 std::to_string(v.size()));
  }
  return Eigen::Map<const Vector>(v.data(), size);
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

// Converts a 1-based mode number from a file into a 0-based index.
int mode_index(const Json& j, int modes, const std::string& field) {
  const std::int64_t m = integer(j, field);
  if (m < 1 || m > modes) {
    throw FormatError(field, "mode " + std::to_string(m) + " outside 1.." +
                                 std::to_string(modes));
  }
  return static_cast<int>(m - 1);
}

template <typename F>
auto rethrow_as_format(const std::string& field, F&& body) {
  try {
    return body();
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(field, e.what());
  }
}

Matrix rotation_from_spec(const Json& params, int modes, const std::string& field) {
  if (params.contains("rotation_matrix")) {
    return matrix_from_json(params["rotation_matrix"], 2 * modes, 2 * modes,
                            field + ".rotation_matrix");
  }
  const std::string bs_field = field + ".beamsplitters";
  const Json& list = require(params, "beamsplitters", field);
  if (!list.is_array()) throw FormatError(bs_field, "expected an array");
  Matrix r = Matrix::Identity(2 * modes, 2 * modes);
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string f = bs_field + "[" + std::to_string(k) + "]";
    const double theta = number(require(list[k], "theta", f), f + ".theta");
    const Json& pair = require(list[k], "modes", f);
    if (!pair.is_array() || pair.size() != 2) {
      throw FormatError(f + ".modes", "expected two mode numbers");
    }
    const int a = mode_index(pair[0], modes, f + ".modes[0]");
    const int b = mode_index(pair[1], modes, f + ".modes[1]");
    r = rethrow_as_format(f, [&] { return beamsplitter_rotation(theta, a, b, modes); }) * r;
  }
  return r;
}

GaussianChannel dfg_from_spec(const Json& p, const std::string& f) {
  const int modes = mode_count(p, f);
  std::optional<double> eta;
  if (p.contains("loss")) eta = number(p["loss"], f + ".loss");
  DfgSpec spec{modes, {}};
  const int pairs = modes / 2;
  if (p.contains("target_ppt")) {
    const auto targets = numbers(p["target_ppt"], f + ".target_ppt");
    if (static_cast<int>(targets.size()) != pairs) {
      throw FormatError(f + ".target_ppt", "expected " + std::to_string(pairs) + " values");
    }
    spec.squeeze = rethrow_as_format(f + ".target_ppt", [&] {
      return calibrate_lossy_dfg_squeeze(eta.value_or(1.0), targets);
    });
  } else {
    const Json& sq = require(p, "squeeze", f);
    spec.squeeze = sq.is_array() ? numbers(sq, f + ".squeeze")
                                 : std::vector<double>(pairs, number(sq, f + ".squeeze"));
  }
  GaussianChannel ch = rethrow_as_format(f, [&] { return dfg_array(spec); });
  if (eta) {
    const GaussianChannel loss = rethrow_as_format(f + ".loss", [&] {
      return loss_channel(LossSpec{std::vector<double>(modes, *eta), std::nullopt});
    });
    ch = compose(loss, ch);
  }
  return ch;
}

GaussianChannel cluster_from_spec(const Json& p, const std::string& f) {
  const int modes = mode_count(p, f);
  Matrix adjacency = Matrix::Zero(modes, modes);
  if (p.contains("adjacency")) {
    adjacency = matrix_from_json(p["adjacency"], modes, modes, f + ".adjacency");
  } else {
    const Json& edges = require(p, "edges", f);
    if (!edges.is_array()) throw FormatError(f + ".edges", "expected an array");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const std::string e = f + ".edges[" + std::to_string(k) + "]";
      if (!edges[k].is_array() || edges[k].size() < 2 || edges[k].size() > 3) {
        throw FormatError(e, "expected [a, b] or [a, b, weight]");
      }
      const int a = mode_index(edges[k][0], modes, e + "[0]");
      const int b = mode_index(edges[k][1], modes, e + "[1]");
      const double w = edges[k].size() == 3 ? number(edges[k][2], e + "[2]") : 1.0;
      adjacency(a, b) = adjacency(b, a) = w;
    }
  }
  const double r = number(require(p, "squeeze", f), f + ".squeeze");
  return rethrow_as_format(f, [&] { return cluster_channel(GraphSpec{adjacency, r}); });
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  }
  return out;
}

Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols,
                        const std::string& field) {
  const auto v = numbers(j, field);
  if (static_cast<Eigen::Index>(v.size()) != rows * cols) {
    throw FormatError(field, "expected " + std::to_string(rows * cols) +
                                 " entries (row-major " + std::to_string(rows) + "x" +
                                 std::to_string(cols) + "), got " + std::to_string(v.size()));
  }
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = v[r * cols + c];
  }
  return m;
}

Json channel_to_json(const GaussianChannel& ch) {
  return Json{{"modes", ch.modes()},
              {"ordering", "xxpp"},
              {"amp", matrix_to_json(ch.amp())},
              {"noise", matrix_to_json(ch.noise())},
              {"disp", vector_to_json(ch.disp())}};
}

GaussianChannel channel_from_json(const Json& j) {
  const std::string f = "channel";
  const int m = mode_count(j, f);
  if (j.contains("ordering") && j["ordering"] != "xxpp") {
    throw FormatError(f + ".ordering", "only \"xxpp\" is supported");
  }
  Matrix amp = matrix_from_json(require(j, "amp", f), 2 * m, 2 * m, f + ".amp");
  Matrix noise = matrix_from_json(require(j, "noise", f), 2 * m, 2 * m, f + ".noise");
  Vector disp = j.contains("disp") ? vector_from_json(j["disp"], 2 * m, f + ".disp")
                                   : Vector::Zero(2 * m);
  return rethrow_as_format(f, [&] {
    return GaussianChannel(std::move(amp), std::move(noise), std::move(disp));
  });
}

Json result_to_json(const CharacterizationResult& r, const ResultMetadata& meta) {
  Json j = channel_to_json(GaussianChannel(r.amp_hat, r.noise_hat, r.disp_hat));
  j["diagnostics"] = Json{{"loglik", r.loglik},
                          {"margin", r.margin},
                          {"iterations", r.iterations},
                          {"converged", r.converged},
                          {"seed", meta.seed},
                          {"q_amplitude", meta.q_amplitude},
                          {"shots",
                           {{"mean_stage", meta.shots_mean_stage},
                            {"vacuum_stage", meta.shots_vacuum_stage}}}};
  return j;
}

ResultFile result_from_json(const Json& j) {
  const GaussianChannel ch = channel_from_json(j);
  const std::string f = "diagnostics";
  const Json& d = require(j, "diagnostics", "result");
  ResultFile out;
  out.result.amp_hat = ch.amp();
  out.result.noise_hat = ch.noise();
  out.result.disp_hat = ch.disp();
  out.result.loglik = number(require(d, "loglik", f), f + ".loglik");
  out.result.margin = number(require(d, "margin", f), f + ".margin");
  out.result.iterations = static_cast<int>(integer(require(d, "iterations", f), f + ".iterations"));
  const Json& conv = require(d, "converged", f);
  if (!conv.is_boolean()) throw FormatError(f + ".converged", "expected a boolean");
  out.result.converged = conv.get<bool>();
  out.meta.seed = static_cast<std::uint64_t>(integer(require(d, "seed", f), f + ".seed"));
  out.meta.q_amplitude = number(require(d, "q_amplitude", f), f + ".q_amplitude");
  const Json& shots = require(d, "shots", f);
  out.meta.shots_mean_stage =
      static_cast<std::uint64_t>(integer(require(shots, "mean_stage", f + ".shots"),
                                         f + ".shots.mean_stage"));
  out.meta.shots_vacuum_stage =
      static_cast<std::uint64_t>(integer(require(shots, "vacuum_stage", f + ".shots"),
                                         f + ".shots.vacuum_stage"));
  return out;
}

GaussianChannel channel_from_spec(const Json& spec, const std::string& field) {
  const Json& name_json = require(spec, "constructor", field);
  if (!name_json.is_string()) throw FormatError(field + ".constructor", "expected a string");
  const std::string name = name_json.get<std::string>();
  const Json params = spec.contains("params") ? spec["params"] : Json::object();
  const std::string f = field + ".params";
  if (!params.is_object()) throw FormatError(f, "expected an object");

  if (name == "identity") {
    return GaussianChannel::identity(mode_count(params, f));
  }
  if (name == "two_mode_squeezer") {
    const int modes = mode_count(params, f);
    const Json& pair = require(params, "pair", f);
    if (!pair.is_array() || pair.size() != 2) {
      throw FormatError(f + ".pair", "expected two mode numbers");
    }
    const int a = mode_index(pair[0], modes, f + ".pair[0]");
    const int b = mode_index(pair[1], modes, f + ".pair[1]");
    const double r = number(require(params, "r", f), f + ".r");
    return rethrow_as_format(f, [&] { return two_mode_squeezer(r, a, b, modes); });
  }
  if (name == "dfg") return dfg_from_spec(params, f);
  if (name == "loss") {
    const auto eta = numbers(require(params, "transmissivities", f), f + ".transmissivities");
    LossSpec spec{eta, std::nullopt};
    if (params.contains("rotation_matrix") || params.contains("beamsplitters")) {
      spec.rotation = rotation_from_spec(params, static_cast<int>(eta.size()), f);
    }
    return rethrow_as_format(f + ".transmissivities", [&] { return loss_channel(spec); });
  }
  if (name == "cluster") return cluster_from_spec(params, f);
  if (name == "quantum_noise") {
    const int modes = mode_count(params, f);
    const double eta = number(require(params, "eta", f), f + ".eta");
    double squeeze = 0.0;
    if (params.contains("target_ppt")) {
      const double target = number(params["target_ppt"], f + ".target_ppt");
      squeeze = rethrow_as_format(f + ".target_ppt", [&] {
        return calibrate_quantum_noise_squeeze(eta, target);
      });
    } else {
      squeeze = number(require(params, "noise_squeeze", f), f + ".noise_squeeze");
    }
    return rethrow_as_format(f, [&] { return quantum_noise_channel(eta, squeeze, modes); });
  }
  if (name == "classical_noise") {
    const int modes = mode_count(params, f);
    const Matrix n = matrix_from_json(require(params, "noise", f), 2 * modes, 2 * modes,
                                      f + ".noise");
    return rethrow_as_format(f + ".noise", [&] { return classical_noise_channel(n); });
  }
  if (name == "explicit") return channel_from_json(params);
  if (name == "sequence") {
    const Json& stages = require(params, "stages", f);
    if (!stages.is_array() || stages.empty()) {
      throw FormatError(f + ".stages", "expected a non-empty array");
    }
    std::optional<GaussianChannel> total;
    for (std::size_t k = 0; k < stages.size(); ++k) {
      const std::string sf = f + ".stages[" + std::to_string(k) + "]";
      GaussianChannel next = channel_from_spec(stages[k], sf);
      total = total ? rethrow_as_format(sf, [&] { return compose(next, *total); }) : next;
    }
    return *total;
  }
  throw FormatError(field + ".constructor", "unknown constructor \"" + name + "\"");
}

ExperimentConfig config_from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw FormatError("config", "expected an object");
  ExperimentConfig cfg;
  if (j.contains("channel")) cfg.channel_spec = j["channel"];
  if (j.contains("channel_file")) {
    if (!j["channel_file"].is_string()) {
      throw FormatError("channel_file", "expected a path string");
    }
    std::filesystem::path p = j["channel_file"].get<std::string>();
    cfg.channel_file = p.is_absolute() ? p : base_dir / p;
  }
  if (cfg.channel_spec && cfg.channel_file) {
    throw FormatError("channel", "give either \"channel\" or \"channel_file\", not both");
  }
  if (j.contains("protocol")) {
    const Json& p = j["protocol"];
    if (!p.is_object()) throw FormatError("protocol", "expected an object");
    auto& o = cfg.protocol;
    if (p.contains("q_amplitude")) {
      o.q_amplitude = number(p["q_amplitude"], "protocol.q_amplitude");
      if (!(o.q_amplitude > 0.0)) throw FormatError("protocol.q_amplitude", "must be > 0");
    }
    if (p.contains("shots_mean_stage")) {
      o.shots_mean_stage = positive_count(p["shots_mean_stage"], "protocol.shots_mean_stage");
    }
    if (p.contains("shots_vacuum_stage")) {
      o.shots_vacuum_stage =
          positive_count(p["shots_vacuum_stage"], "protocol.shots_vacuum_stage");
    }
    if (p.contains("seed")) {
      const Json& s = p["seed"];
      if (!s.is_number_unsigned() && !s.is_number_integer()) {
        throw FormatError("protocol.seed", "expected a non-negative integer");
      }
      if (s.is_number_integer() && s.get<std::int64_t>() < 0) {
        throw FormatError("protocol.seed", "expected a non-negative integer");
      }
      o.seed = s.get<std::uint64_t>();
    }
    if (p.contains("max_iterations")) {
      o.mle.max_iterations =
          static_cast<int>(positive_count(p["max_iterations"], "protocol.max_iterations"));
    }
  }
  if (j.contains("outputs")) {
    const Json& o = j["outputs"];
    if (!o.is_object()) throw FormatError("outputs", "expected an object");
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) throw FormatError("outputs.dir", "expected a path string");
      std::filesystem::path d = o["dir"].get<std::string>();
      cfg.out_dir = d.is_absolute() ? d : base_dir / d;
    }
    if (o.contains("emit_figures")) {
      if (!o["emit_figures"].is_boolean()) {
        throw FormatError("outputs.emit_figures", "expected a boolean");
      }
      cfg.emit_figures = o["emit_figures"].get<bool>();
    }
  }
  return cfg;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string(), "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path.string(), "cannot open file for writing");
  out << j.dump(2) << '\n';
  if (!out) throw FormatError(path.string(), "write failed");
}

namespace {

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::string& field) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw FormatError(field, "truncated sample dump");
  }
  return v;
}

constexpr char kDumpMagic[8] = {'G', 'C', 'S', 'A', 'M', 'P', '0', '1'};

}  // namespace

void write_sample_dump(const std::filesystem::path& path, const std::vector<SampleSet>& sets) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path.string(), "cannot open file for writing");
  out.write(kDumpMagic, sizeof(kDumpMagic));
  put<std::uint64_t>(out, sets.size());
  for (const auto& s : sets) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.setting.label.size()));
    out.write(s.setting.label.data(), static_cast<std::streamsize>(s.setting.label.size()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.setting.direction.size()));
    out.write(reinterpret_cast<const char*>(s.setting.direction.data()),
              static_cast<std::streamsize>(s.setting.direction.size() * sizeof(double)));
    put<std::uint64_t>(out, s.samples.size());
    out.write(reinterpret_cast<const char*>(s.samples.data()),
              static_cast<std::streamsize>(s.samples.size() * sizeof(double)));
  }
  if (!out) throw FormatError(path.string(), "write failed");
}

std::vector<SampleSet> read_sample_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  const std::string f = path.string();
  if (!in) throw FormatError(f, "cannot open file");
  char magic[8];
  if (!in.read(magic, sizeof(magic)) || !std::equal(magic, magic + 8, kDumpMagic)) {
    throw FormatError(f, "not a sample dump");
  }
  const auto count = get<std::uint64_t>(in, f);
  std::vector<SampleSet> sets;
  for (std::uint64_t k = 0; k < count; ++k) {
    SampleSet s;
    s.setting.label.resize(get<std::uint32_t>(in, f));
    if (!in.read(s.setting.label.data(), static_cast<std::streamsize>(s.setting.label.size()))) {
      throw FormatError(f, "truncated sample dump");
    }
    s.setting.direction.resize(get<std::uint32_t>(in, f));
    if (!in.read(reinterpret_cast<char*>(s.setting.direction.data()),
                 static_cast<std::streamsize>(s.setting.direction.size() * sizeof(double)))) {
      throw FormatError(f, "truncated sample dump");
    }
    s.samples.resize(get<std::uint64_t>(in, f));
    if (!in.read(reinterpret_cast<char*>(s.samples.data()),
                 static_cast<std::streamsize>(s.samples.size() * sizeof(double)))) {
      throw FormatError(f, "truncated sample dump");
    }
    sets.push_back(std::move(s));
  }
  return sets;
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw FormatError(path.string(), "cannot open file for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "\t" : "") << header[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "\t" : "") << row[c];
    out << '\n';
  }
}

void write_matrix_table(const std::filesystem::path& path, const Matrix& m) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw FormatError(path.string(), "cannot open file for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "\t" : "") << m(r, c);
    out << '\n';
  }
}

}  // namespace gchar::io
