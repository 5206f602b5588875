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

#include "commands.hpp"

#include "gchar/analysis.hpp"
#include "gchar/channels.hpp"
#include "gchar/characterization.hpp"
#include "gchar/io.hpp"
#include "gchar/kernels.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>

namespace gchar::cli {

namespace fs = std::filesystem;

namespace {

struct Partition {
  std::string label;
  std::vector<int> modes;  // 0-based
};

std::vector<Partition> parse_partitions(const std::vector<std::string>& specs, int modes) {
  std::vector<Partition> out;
  for (const auto& spec : specs) {
    Partition p{spec, {}};
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      int m = 0;
      try {
        std::size_t used = 0;
        m = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw io::FormatError("--partition", "bad mode number \"" + item + "\"");
      }
      if (m < 1 || m > modes) {
        throw io::FormatError("--partition", "mode " + std::to_string(m) + " outside 1.." +
                                                 std::to_string(modes));
      }
      p.modes.push_back(m - 1);
    }
    out.push_back(std::move(p));
  }
  return out;
}

void emit_analysis(const fs::path& dir, const Matrix& amp, const Matrix& noise,
                   const std::vector<Partition>& partitions, bool heat_maps, std::ostream& out) {
  const int m = modes_from_dimension(amp.rows());
  const EigenAnalysis svd = svd_channel(amp);
  std::vector<std::vector<double>> rows;
  for (Eigen::Index k = 0; k < svd.d.size(); ++k) {
    rows.push_back({static_cast<double>(k + 1), svd.d(k)});
  }
  io::write_table(dir / "singular_values.tsv", {"index", "amplification"}, rows);

  const auto eigen_table = [&](const Matrix& cols, const fs::path& path) {
    std::vector<std::vector<double>> t;
    for (Eigen::Index c = 0; c < cols.cols(); ++c) {
      const ModeAmplitudePhase ap = to_amplitude_phase(cols.col(c));
      for (int k = 0; k < m; ++k) {
        t.push_back({static_cast<double>(c + 1), static_cast<double>(k + 1), ap.amplitudes(k),
                     ap.phases(k)});
      }
    }
    io::write_table(path, {"eigenquadrature", "mode", "amplitude", "phase"}, t);
  };
  eigen_table(svd.v, dir / "input_eigenquadratures.tsv");
  eigen_table(svd.u, dir / "output_eigenquadratures.tsv");

  const NoiseEigen ne = noise_eigendecomposition(noise);
  rows.clear();
  for (Eigen::Index k = 0; k < ne.values.size(); ++k) {
    rows.push_back({static_cast<double>(k + 1), ne.values(k)});
  }
  io::write_table(dir / "noise_eigenvalues.tsv", {"index", "eigenvalue"}, rows);
  eigen_table(ne.vectors, dir / "noise_eigenquadratures.tsv");
  io::write_matrix_table(dir / "noise_eigenvectors.tsv", ne.vectors);

  const GaussianState vac_out(Vector::Zero(2 * m), symmetrized(amp * amp.transpose() + noise));
  rows.clear();
  out << std::setprecision(6);
  out << "singular values:";
  for (Eigen::Index k = 0; k < svd.d.size(); ++k) out << ' ' << svd.d(k);
  out << "\nnoise eigenvalues:";
  for (Eigen::Index k = 0; k < ne.values.size(); ++k) out << ' ' << ne.values(k);
  out << '\n';
  std::vector<std::vector<double>> ppt_rows;
  if (partitions.empty() && m % 2 == 0) {
    const auto pairs = conjugate_pairs(m);
    const auto values = pair_ppt_eigenvalues(vac_out);
    out << "pair PPT eigenvalues (vacuum input):";
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      ppt_rows.push_back({static_cast<double>(pairs[k].first + 1),
                          static_cast<double>(pairs[k].second + 1), values[k]});
      out << ' ' << values[k];
    }
    out << '\n';
    io::write_table(dir / "ppt.tsv", {"mode_a", "mode_b", "ppt_min_eigenvalue"}, ppt_rows);
  } else if (!partitions.empty()) {
    for (const auto& p : partitions) {
      const double v = ppt_min_eigenvalue(vac_out.cov(), p.modes);
      out << "PPT eigenvalue, transposed {" << p.label << "}: " << v << '\n';
      std::vector<double> row{v};
      for (int mode : p.modes) row.push_back(mode + 1);
      ppt_rows.push_back(std::move(row));
    }
    io::write_table(dir / "ppt.tsv", {"ppt_min_eigenvalue", "transposed_modes..."}, ppt_rows);
  }
  if (heat_maps) {
    io::write_matrix_table(dir / "amp_matrix.tsv", amp);
    io::write_matrix_table(dir / "noise_matrix.tsv", noise);
    io::write_matrix_table(dir / "output_covariance.tsv", vac_out.cov());
  }
}

GaussianChannel load_channel(const io::ExperimentConfig& cfg) {
  if (cfg.channel_spec) return io::channel_from_spec(*cfg.channel_spec);
  if (cfg.channel_file) {
    if (!fs::exists(*cfg.channel_file)) {
      throw io::FormatError("channel_file", "no such file: " + cfg.channel_file->string());
    }
    return io::channel_from_json(io::read_json_file(*cfg.channel_file));
  }
  throw io::FormatError("channel", "config needs \"channel\" or \"channel_file\"");
}

io::ExperimentConfig load_config(const std::string& path) {
  const fs::path p(path);
  if (!fs::exists(p)) throw io::FormatError("--config", "no such file: " + path);
  return io::config_from_json(io::read_json_file(p), p.parent_path());
}

// Channel matrices from either a result file or a plain channel file.
GaussianChannel load_any_channel(const fs::path& path) {
  if (!fs::exists(path)) throw io::FormatError(path.string(), "no such file");
  return io::channel_from_json(io::read_json_file(path));
}

void apply_thread_override() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      kernels::omp::set_threads(std::stoi(env));
    } catch (const std::exception&) {
      // Ignore malformed values.
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  apply_thread_override();
  CLI::App app{"Gaussian-channel characterization toolkit", "gchar"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
  bool emit_figures = false;
  bool dump_samples = false;

  auto* synth = app.add_subcommand("synthesize", "Write a ground-truth channel file");
  synth->add_option("--config", config_path, "Experiment config (JSON)")->required();
  synth->add_option("--out", out_dir, "Output directory");

  auto* charac = app.add_subcommand("characterize", "Run the two-stage probe protocol");
  charac->add_option("--config", config_path, "Experiment config (JSON)")->required();
  charac->add_option("--seed", seed, "Master seed (overrides config)");
  charac->add_option("--shots", shots, "Shots for both stages (overrides config)")
      ->check(CLI::PositiveNumber);
  charac->add_option("--out", out_dir, "Output directory");
  charac->add_flag("--emit-figures", emit_figures, "Write figure tables");
  charac->add_flag("--dump-samples", dump_samples, "Write raw vacuum-stage samples");

  std::string input_path;
  std::vector<std::string> partitions;
  auto* analyze = app.add_subcommand("analyze", "Decompose a result or channel file");
  analyze->add_option("input", input_path, "Result or channel file")->required();
  analyze->add_option("--out", out_dir, "Output directory");
  analyze->add_option("--partition", partitions,
                      "Comma-separated 1-based modes to transpose (repeatable)");
  analyze->add_flag("--emit-figures", emit_figures, "Also write matrix heat-map tables");

  std::string truth_path;
  double tol_amp = 0.02;
  double tol_noise = 0.05;
  double min_margin = -1e-8;
  auto* verify = app.add_subcommand("verify", "Compare a result against a truth channel");
  verify->add_option("result", input_path, "Result file")->required();
  verify->add_option("truth", truth_path, "Truth channel file")->required();
  verify->add_option("--tol-amp", tol_amp, "Max-abs tolerance on Â");
  verify->add_option("--tol-noise", tol_noise, "Max-abs tolerance on N̂");
  verify->add_option("--min-margin", min_margin, "Smallest acceptable physicality margin");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    out << std::setprecision(6);
    if (synth->parsed()) {
      const auto cfg = load_config(config_path);
      const GaussianChannel ch = load_channel(cfg);
      const fs::path dir = out_dir.empty() ? cfg.out_dir : fs::path(out_dir);
      io::write_json_file(dir / "channel.json", io::channel_to_json(ch));
      const double margin = physicality_margin(ch);
      out << "modes: " << ch.modes() << "\nphysicality margin: " << margin << '\n';
      if (classify_margin(margin) == Physicality::kUnphysical) {
        err << "warning: channel violates the physicality condition (margin " << margin
            << ")\n";
      }
      out << "wrote " << (dir / "channel.json").string() << '\n';
      return kSuccess;
    }

    if (charac->parsed()) {
      auto cfg = load_config(config_path);
      if (seed) cfg.protocol.seed = *seed;
      if (shots) cfg.protocol.shots_mean_stage = cfg.protocol.shots_vacuum_stage = *shots;
      const GaussianChannel ch = load_channel(cfg);
      const fs::path dir = out_dir.empty() ? cfg.out_dir : fs::path(out_dir);
      std::vector<SampleSet> raw;
      const CharacterizationResult r =
          characterize(ch, cfg.protocol, dump_samples ? &raw : nullptr);
      const io::ResultMetadata meta{cfg.protocol.seed, cfg.protocol.shots_mean_stage,
                                    cfg.protocol.shots_vacuum_stage, cfg.protocol.q_amplitude};
      io::write_json_file(dir / "result.json", io::result_to_json(r, meta));
      if (dump_samples) io::write_sample_dump(dir / "samples.bin", raw);
      if (emit_figures || cfg.emit_figures) {
        emit_analysis(dir / "figures", r.amp_hat, r.noise_hat, {}, true, out);
      }
      out << "loglik: " << std::setprecision(12) << r.loglik << std::setprecision(6)
          << "\nmargin: " << r.margin << "\niterations: " << r.iterations
          << "\nconverged: " << (r.converged ? "yes" : "no") << '\n';
      out << "wrote " << (dir / "result.json").string() << '\n';
      if (!r.converged) {
        err << "error: noise estimation did not converge in " << r.iterations
            << " iterations\n";
        return kNotConverged;
      }
      return kSuccess;
    }

    if (analyze->parsed()) {
      const GaussianChannel ch = load_any_channel(input_path);
      const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
      emit_analysis(dir, ch.amp(), ch.noise(), parse_partitions(partitions, ch.modes()),
                    emit_figures, out);
      out << "wrote analysis tables to " << dir.string() << '\n';
      return kSuccess;
    }

    if (verify->parsed()) {
      const GaussianChannel est = load_any_channel(input_path);
      const GaussianChannel truth = load_any_channel(truth_path);
      if (est.modes() != truth.modes()) {
        err << "error: dimension mismatch (" << est.modes() << " vs " << truth.modes()
            << " modes)\n";
        return kInputError;
      }
      const double amp_err = max_abs(est.amp() - truth.amp());
      const double noise_err = max_abs(est.noise() - truth.noise());
      const double est_margin = physicality_margin(est);
      const double truth_margin = physicality_margin(truth);
      out << std::setprecision(6) << "max|A_hat - A|: " << amp_err
          << "\nmax|N_hat - N|: " << noise_err << "\nmargin(result): " << est_margin
          << "\nmargin(truth): " << truth_margin << '\n';
      const EigenAnalysis a_est = svd_channel(est.amp());
      const EigenAnalysis a_true = svd_channel(truth.amp());
      const auto groups = degenerate_groups(a_true.d, 1e-6);
      out << "eigenquadrature overlaps (input subspace projection):\n";
      for (const auto& g : groups) {
        for (int i : g) {
          double proj = 0.0;
          for (int k : g) {
            const double c = a_est.v.col(i).dot(a_true.v.col(k));
            proj += c * c;
          }
          out << "  " << (i + 1) << '\t' << a_true.d(i) << '\t' << a_est.d(i) << '\t' << proj
              << '\n';
        }
      }
      const bool ok = amp_err <= tol_amp && noise_err <= tol_noise && est_margin >= min_margin;
      out << (ok ? "PASS" : "FAIL") << '\n';
      return ok ? kSuccess : kVerificationFailed;
    }
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace gchar::cli
