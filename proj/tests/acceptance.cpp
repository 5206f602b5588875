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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances and time budgets are pinned here.

#include "commands.hpp"
#include "fock_oracle.hpp"
#include "gchar/analysis.hpp"
#include "gchar/channels.hpp"
#include "gchar/characterization.hpp"
#include "gchar/io.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gchar;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// Four-mode DFG followed by loss in a beamsplitter-mixed basis.
GaussianChannel rotated_lossy_dfg(const std::vector<double>& eta, Matrix* rotation = nullptr) {
  const Matrix r = beamsplitter_rotation(M_PI / 4, 0, 1, 4) *
                   beamsplitter_rotation(M_PI / 3, 2, 3, 4) *
                   beamsplitter_rotation(M_PI / 5, 1, 2, 4);
  if (rotation) *rotation = r;
  return compose(loss_channel({eta, r}), dfg_array(uniform_dfg(4, 0.4)));
}

// 1. Core relations and the physicality margin.
Outcome criterion1() {
  Outcome o;
  double worst_symplectic = std::abs(physicality_margin(GaussianChannel::identity(4)));
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    worst_symplectic = std::max(
        worst_symplectic, std::abs(physicality_margin(testing::random_symplectic_channel(rng, 1 + t % 5))));
  }
  worst_symplectic =
      std::max(worst_symplectic, std::abs(physicality_margin(dfg_array(uniform_dfg(16, 0.5)))));
  double worst_state = 1e300;
  for (int t = 0; t < 1000; ++t) {
    const int modes = 1 + t % 4;
    if (t % 2 == 0) {
      const auto ch = testing::random_physical_channel(rng, modes);
      const auto st = testing::random_physical_state(rng, modes);
      worst_state = std::min(worst_state, state_physicality(apply_channel(ch, st).cov()));
    } else {
      // Boundary case: pure loss after a symplectic map, on a pure state.
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<double> eta(modes);
      for (double& e : eta) e = u(rng);
      const auto ch = compose(loss_channel({eta, std::nullopt}),
                              testing::random_symplectic_channel(rng, modes));
      const auto pure = apply_channel(testing::random_symplectic_channel(rng, modes),
                                      vacuum_state(modes));
      worst_state = std::min(worst_state, state_physicality(apply_channel(ch, pure).cov()));
    }
  }
  o.pass = worst_symplectic <= 1e-10 && worst_state >= -1e-9;
  o.detail = "max|symplectic margin|=" + fmt(worst_symplectic) +
             ", min output physicality over 1000 cases=" + fmt(worst_state);
  return o;
}

// 2. Fock-oracle equivalence.
Outcome criterion2() {
  double worst = 0.0;
  for (double r : {0.0, 0.25, 0.5}) {
    const auto fock_state = testing::build_two_mode_squeezer_state(r, 40);
    const auto sq = two_mode_squeezer(r, 0, 1, 2);
    worst = std::max(worst, max_diff(testing::quadrature_moments(fock_state).cov,
                                     apply_channel(sq, vacuum_state(2)).cov()));
    for (double eta : {0.3, 0.7, 1.0}) {
      for (int mode : {0, 1}) {
        std::vector<double> etas = {1.0, 1.0};
        etas[mode] = eta;
        const Matrix gauss =
            apply_channel(compose(loss_channel({etas, std::nullopt}), sq), vacuum_state(2)).cov();
        worst = std::max(worst, max_diff(testing::apply_loss_fock(fock_state, eta, mode).cov, gauss));
      }
    }
  }
  return {worst < 1e-3, "max-abs moment difference=" + fmt(worst) + " (cutoff 40)"};
}

// 3. Characterization recovery over 20 seeds.
Outcome criterion3() {
  const auto ch = rotated_lossy_dfg({0.9, 0.7, 0.8, 0.6});
  int passes = 0;
  double worst_amp = 0.0, worst_noise = 0.0, worst_margin = 1e300;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ProtocolOptions opt;
    opt.q_amplitude = 10.0;
    opt.shots_mean_stage = 100000;
    opt.shots_vacuum_stage = 100000;
    opt.seed = seed;
    const auto res = characterize(ch, opt);
    const double ea = max_diff(res.amp_hat, ch.amp());
    const double en = max_diff(res.noise_hat, ch.noise());
    worst_amp = std::max(worst_amp, ea);
    worst_noise = std::max(worst_noise, en);
    worst_margin = std::min(worst_margin, res.margin);
    if (ea < 0.02 && en < 0.05 && res.margin >= -1e-8) ++passes;
  }
  return {passes >= 19, std::to_string(passes) + "/20 seeds within tolerance; worst |dA|=" +
                            fmt(worst_amp) + ", worst |dN|=" + fmt(worst_noise) +
                            ", min margin=" + fmt(worst_margin)};
}

// 4. MLE exactness on noiseless variances.
Outcome criterion4() {
  std::mt19937_64 rng(77);
  std::vector<GaussianChannel> truths = {rotated_lossy_dfg({0.9, 0.7, 0.8, 0.6})};
  for (int t = 0; t < 4; ++t) truths.push_back(testing::random_physical_channel(rng, 2 + t % 2));
  double worst = 0.0;
  bool monotone = true;
  for (const auto& ch : truths) {
    const Matrix v = ch.amp() * ch.amp().transpose() + ch.noise();
    const auto res = mle_noise(ch.amp(), v, 100000);
    worst = std::max(worst, (res.noise_hat - ch.noise()).norm());
    for (std::size_t k = 1; k < res.loglik_trace.size(); ++k) {
      monotone = monotone && res.loglik_trace[k] >= res.loglik_trace[k - 1];
    }
  }
  return {worst < 1e-6 && monotone, "max ||N_hat - N*||_F=" + fmt(worst) +
                                        ", log-likelihood monotone: " + (monotone ? "yes" : "no")};
}

// 5. SVD analysis of a 16-mode lossless DFG.
Outcome criterion5() {
  const auto ch = dfg_array({16, {0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65}});
  const auto e = svd_channel(ch.amp());
  double worst_pair = 0.0;
  for (int m = 0; m < 32; ++m) worst_pair = std::max(worst_pair, std::abs(e.d(m) * e.d(31 - m) - 1.0));
  const bool gap = e.d.head(16).minCoeff() > 1.0 && e.d.tail(16).maxCoeff() < 1.0;
  const auto rep = verify_eigenquadratures(ch, e, 10.0, 10000, 3);
  const double min_overlap = rep.subspace_overlaps.minCoeff();
  return {worst_pair <= 1e-8 && gap && min_overlap > 0.99,
          "max|d_m d_(2M+1-m) - 1|=" + fmt(worst_pair) + ", d_16=" + fmt(e.d(15)) +
              " > 1 > d_17=" + fmt(e.d(16)) + ", min overlap at 1e4 shots=" + fmt(min_overlap)};
}

// 6. Calibrated negativities.
Outcome criterion6() {
  const int transposed[] = {1};
  const double eta_qn = 0.1;
  const double s = calibrate_quantum_noise_squeeze(eta_qn, -0.37);
  const double qn = ppt_min_eigenvalue(
      predict_output(quantum_noise_channel(eta_qn, s, 2), vacuum_state(2)).cov(), transposed);

  const std::vector<double> targets = {-0.27, -0.26, -0.24, -0.25, -0.26, -0.27, -0.25, -0.28};
  const double eta = 0.9;
  const auto r = calibrate_lossy_dfg_squeeze(eta, targets);
  const auto ch = compose(loss_channel({std::vector<double>(16, eta), std::nullopt}),
                          dfg_array({16, r}));
  const auto ppt = pair_ppt_eigenvalues(predict_output(ch, vacuum_state(16)));
  bool in_band = ppt.size() == 8;
  std::string list;
  for (double v : ppt) {
    in_band = in_band && v >= -0.30 && v <= -0.20;
    list += (list.empty() ? "" : ", ") + fmt(v);
  }
  return {std::abs(qn + 0.37) <= 0.01 && in_band,
          "quantum-noise PPT=" + fmt(qn) + "; 16-mode pairs: " + list};
}

// 7. Noise eigenquadratures of rotated loss, from characterized data.
Outcome criterion7() {
  const std::vector<double> eta = {0.9, 0.6, 0.3, 0.75};
  Matrix rot;
  const auto ch = rotated_lossy_dfg(eta, &rot);
  ProtocolOptions opt;
  opt.shots_mean_stage = 100000;
  opt.shots_vacuum_stage = 100000;
  opt.seed = 11;
  const auto res = characterize(ch, opt);
  const auto ne = noise_eigendecomposition(res.noise_hat);
  // Each 1-η_m is doubly degenerate (x and p of the lossy mode); compare
  // eigenvalue pairs and the 2-d eigenspaces.
  std::vector<std::pair<double, int>> expected;
  for (int m = 0; m < 4; ++m) expected.push_back({1.0 - eta[m], m});
  std::sort(expected.rbegin(), expected.rend());
  double worst_value = 0.0, worst_overlap = 1.0;
  for (int k = 0; k < 4; ++k) {
    const auto [value, mode] = expected[k];
    worst_value = std::max({worst_value, std::abs(ne.values(2 * k) - value),
                            std::abs(ne.values(2 * k + 1) - value)});
    const Matrix space = ne.vectors.middleCols(2 * k, 2);
    for (int col : {mode, 4 + mode}) {
      const double overlap = (space.transpose() * rot.col(col)).squaredNorm();
      worst_overlap = std::min(worst_overlap, overlap);
    }
  }
  return {worst_value <= 0.05 && worst_overlap >= 0.98,
          "max eigenvalue error=" + fmt(worst_value) +
              ", min squared eigenvector overlap=" + fmt(worst_overlap)};
}

// 8. Determinism and the CLI exit-code contract.
Outcome criterion8() {
  const fs::path dir = fs::temp_directory_path() / "gchar_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const auto run = [&](std::vector<std::string> args) {
    args.insert(args.begin(), "gchar");
    std::ostringstream out, err;
    return cli::run(args, out, err);
  };
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  const std::string cfg = write("cfg.json", R"({
    "channel": {"constructor": "sequence", "params": {"stages": [
      {"constructor": "dfg", "params": {"modes": 4, "squeeze": 0.4}},
      {"constructor": "loss", "params": {"transmissivities": [0.9, 0.7, 0.8, 0.6],
        "beamsplitters": [{"theta": 0.7853981633974483, "modes": [1, 2]}]}}]}},
    "protocol": {"shots_mean_stage": 20000, "shots_vacuum_stage": 20000, "seed": 42}})");
  const std::string unconverged = write("slow.json", R"({
    "channel": {"constructor": "dfg", "params": {"modes": 4, "squeeze": 0.4, "loss": 0.8}},
    "protocol": {"shots_mean_stage": 1000, "shots_vacuum_stage": 1000, "max_iterations": 1}})");
  const std::string bad = write("bad.json", R"({
    "channel": {"constructor": "loss", "params": {"transmissivities": [1.5]}}})");

  std::vector<std::string> failures;
  const auto expect = [&](const char* what, int got, int want) {
    if (got != want) {
      failures.push_back(std::string(what) + " exited " + std::to_string(got) + " (want " +
                         std::to_string(want) + ")");
    }
  };
  expect("synthesize", run({"synthesize", "--config", cfg, "--out", (dir / "t").string()}), 0);
  expect("synthesize bad", run({"synthesize", "--config", bad, "--out", dir.string()}), 2);
  expect("characterize a", run({"characterize", "--config", cfg, "--out", (dir / "a").string()}), 0);
  expect("characterize b", run({"characterize", "--config", cfg, "--out", (dir / "b").string()}), 0);
  expect("characterize unconverged",
         run({"characterize", "--config", unconverged, "--out", (dir / "u").string()}), 3);
  expect("characterize missing", run({"characterize", "--config", (dir / "nope.json").string()}), 2);
  const std::string truth = (dir / "t" / "channel.json").string();
  const std::string result = (dir / "a" / "result.json").string();
  expect("analyze", run({"analyze", result, "--out", (dir / "an").string()}), 0);
  expect("analyze malformed", run({"analyze", bad, "--out", (dir / "an").string()}), 2);
  expect("verify", run({"verify", result, truth}), 0);
  expect("verify self", run({"verify", truth, truth}), 0);
  auto corrupted = io::read_json_file(result);
  corrupted["noise"][0] = corrupted["noise"][0].get<double>() + 1.0;
  io::write_json_file(dir / "corrupt.json", corrupted);
  expect("verify corrupted", run({"verify", (dir / "corrupt.json").string(), truth}), 1);

  const bool identical = slurp(dir / "a" / "result.json") == slurp(dir / "b" / "result.json") &&
                         !slurp(dir / "a" / "result.json").empty();
  if (!identical) failures.push_back("result files differ between identical runs");
  std::string detail = identical ? "repeat runs byte-identical" : "repeat runs differ";
  detail += failures.empty() ? "; exit codes 0/1/2/3 as specified" : "";
  for (const auto& f : failures) detail += "; " + f;
  return {failures.empty(), detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "core relations and physicality margin", 10, criterion1},
      {2, "Fock-oracle equivalence", 30, criterion2},
      {3, "characterization recovery (20 seeds)", 300, criterion3},
      {4, "MLE exactness and monotonicity", 60, criterion4},
      {5, "SVD analysis of 16-mode DFG", 120, criterion5},
      {6, "calibrated PPT negativities", 60, criterion6},
      {7, "noise eigenquadratures of rotated loss", 60, criterion7},
      {8, "determinism and CLI exit codes", 60, criterion8},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " — "
              << o.detail << " [" << fmt(secs) << " s / budget " << c.budget_s << " s"
              << (in_time ? "" : ", OVER BUDGET") << "]" << std::endl;
  }
  std::cout << (failed == 0 ? "all acceptance criteria passed"
                            : std::to_string(failed) + " acceptance criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
