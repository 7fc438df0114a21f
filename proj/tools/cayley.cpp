// Copyright 2026 The cayley-geometry Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cayley: command line front end for the experiment library.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cayley/errors.hpp"
#include "cayley/harness.hpp"
#include "cayley/lattice.hpp"

namespace {

using namespace cayley;
using nlohmann::json;

struct CommonFlags {
  std::string group;
  std::vector<int> k;
  std::vector<std::string> orientation{"undirected"};
  int trials = 1;
  std::string seed = "0";
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--group", f.group, "group moduli, e.g. 100003 or 4,6 or 2^16")->required();
  cmd->add_option("--k", f.k, "number of generators (comma separated list allowed)")
      ->required()
      ->delimiter(',');
  cmd->add_option("--orientation", f.orientation, "undirected, directed or both")
      ->delimiter(',');
  cmd->add_option("--trials", f.trials, "trials per (k, orientation)");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

ExperimentConfig config_from_flags(const CommonFlags& f, Measurement m) {
  std::vector<std::string> orientations;
  for (const auto& o : f.orientation) {
    if (o == "both") {
      orientations.push_back("undirected");
      orientations.push_back("directed");
    } else {
      orientations.push_back(o);
    }
  }
  json j = {{"group", f.group},
            {"k_values", f.k},
            {"orientations", orientations},
            {"trials", f.trials},
            {"master_seed", f.seed},
            {"measurements", {std::string(to_string(m))}},
            {"output", f.out},
            {"format", f.format},
            {"threads", f.threads}};
  return config_from_json(j);
}

int run_and_report(const ExperimentConfig& config) {
  const auto records = run(config);
  write_report(config, records, std::cout);
  return exit_code(records);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distances, spectra and mixing of random Cayley graphs of finite Abelian groups"};
  app.require_subcommand(1);

  // balls
  int balls_k = 1;
  double balls_radius = 0.0;
  std::string balls_q = "1", balls_orientation = "undirected", balls_target;
  auto* balls = app.add_subcommand("balls", "exact lattice-ball size, or the inverse query");
  balls->add_option("--k", balls_k, "dimension")->required();
  auto* radius_opt = balls->add_option("--radius", balls_radius, "ball radius");
  auto* target_opt = balls->add_option("--target", balls_target, "smallest radius reaching this size");
  radius_opt->excludes(target_opt);
  balls->add_option("--q", balls_q, "norm exponent: integer or inf");
  balls->add_option("--orientation", balls_orientation, "undirected or directed");

  // predict
  std::string predict_group, predict_q = "1", predict_orientation = "undirected";
  int predict_k = 1;
  auto* predict = app.add_subcommand("predict", "closed-form typical-distance prediction");
  predict->add_option("--group", predict_group, "group moduli")->required();
  predict->add_option("--k", predict_k, "number of generators")->required();
  predict->add_option("--orientation", predict_orientation, "undirected or directed");
  predict->add_option("--q", predict_q, "norm exponent: integer or inf");

  CommonFlags dist_flags, diam_flags, spec_flags;
  std::vector<double> betas{0.25, 0.5, 0.75};
  auto* distances = app.add_subcommand("distances", "typical distances D(beta) of sampled graphs");
  add_common(distances, dist_flags);
  distances->add_option("--beta", betas, "ball fractions")->delimiter(',');
  auto* diameter = app.add_subcommand("diameter", "diameters of sampled graphs");
  add_common(diameter, diam_flags);
  diameter->add_option("--beta", betas, "ignored")->delimiter(',');
  auto* spectrum = app.add_subcommand("spectrum", "spectral gaps of sampled graphs");
  add_common(spectrum, spec_flags);

  // mixing
  std::string mix_group, mix_regime = "ball", mix_L = "auto", mix_radius = "auto",
                         mix_orientation = "undirected", mix_seed = "0", mix_out;
  int mix_k = 1;
  std::int64_t mix_trials = 10000;
  unsigned mix_threads = 0;
  auto* mixing = app.add_subcommand("mixing", "Monte Carlo L2 collision estimate");
  mixing->add_option("--group", mix_group, "group moduli")->required();
  mixing->add_option("--k", mix_k, "number of generators")->required();
  mixing->add_option("--regime", mix_regime, "sampling law: uniform ball or geometric proxy")->check(CLI::IsMember({"proxy", "ball"}));
  mixing->add_option("--L", mix_L, "geometric rate or auto");
  mixing->add_option("--radius", mix_radius, "ball radius or auto");
  mixing->add_option("--orientation", mix_orientation, "undirected or directed");
  mixing->add_option("--trials", mix_trials, "Monte Carlo trials");
  mixing->add_option("--seed", mix_seed, "master seed");
  mixing->add_option("--out", mix_out, "output file (default stdout)");
  mixing->add_option("--threads", mix_threads, "worker threads (0 = all cores)");

  // run
  std::string config_path, run_out, run_format, run_seed;
  int run_trials = 0;
  int run_threads = -1;
  auto* run_cmd = app.add_subcommand("run", "run an experiment described by a JSON config");
  run_cmd->add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run_out, "overrides config output");
  run_cmd->add_option("--format", run_format, "overrides config format")
      ->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--seed", run_seed, "overrides config master_seed");
  run_cmd->add_option("--trials", run_trials, "overrides config trials");
  run_cmd->add_option("--threads", run_threads, "overrides config threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*balls) {
      const Orientation o = parse_orientation(balls_orientation);
      const Norm norm = parse_norm(balls_q);
      if (*target_opt) {
        std::cout << min_radius(balls_k, BigInt(balls_target), o, norm) << '\n';
      } else {
        std::cout << count_ball_lq(balls_k, balls_radius, norm, o) << '\n';
      }
      return 0;
    }
    if (*predict) {
      const GroupSpec g = parse_group(predict_group);
      const Orientation o = parse_orientation(predict_orientation);
      const auto p = predict_typical_distance(predict_k, g.order(), o, parse_norm(predict_q));
      json j = {{"regime", std::string(to_string(p.regime))},
                {"value", p.value},
                {"r0", inflated_radius(predict_k, g.order(), o)}};
      try {
        j["calligraphic_r"] = binomial_radius(predict_k, BigInt(g.order()));
      } catch (const NoSolution&) {
      }
      if (p.regime == Regime::kLogK)
        j["alpha"] = alpha_lambda(predict_k / std::log(double(g.order())), o);
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (*distances) {
      auto config = config_from_flags(dist_flags, Measurement::kDistances);
      config.betas = betas;
      config.validate();
      return run_and_report(config);
    }
    if (*diameter) return run_and_report(config_from_flags(diam_flags, Measurement::kDiameter));
    if (*spectrum) return run_and_report(config_from_flags(spec_flags, Measurement::kSpectrum));
    if (*mixing) {
      json mix = {{"regime", mix_regime}, {"L", mix_L}, {"trials", mix_trials}};
      mix["radius"] = mix_radius == "auto" ? json("auto") : json(std::stoll(mix_radius));
      if (mix_L != "auto") mix["L"] = std::stod(mix_L);
      json j = {{"group", mix_group},
                {"k_values", {mix_k}},
                {"orientations", {mix_orientation}},
                {"master_seed", mix_seed},
                {"measurements", {"mixing"}},
                {"mixing", mix},
                {"threads", mix_threads}};
      const auto config = config_from_json(j);
      const auto records = run(config);
      const auto& r = records.front();
      if (r.error) {
        std::cerr << "error: " << *r.error << '\n';
        return 1;
      }
      const std::string text = r.results.dump(2);
      if (mix_out.empty()) {
        std::cout << text << '\n';
      } else {
        std::ofstream f(mix_out);
        if (!f) throw std::runtime_error("cannot write '" + mix_out + "'");
        f << text << '\n';
      }
      return 0;
    }
    if (*run_cmd) {
      auto config = load_config(config_path);
      if (!run_out.empty()) config.output = run_out;
      if (!run_format.empty())
        config.format = run_format == "json" ? ReportFormat::kJson : ReportFormat::kCsv;
      if (!run_seed.empty()) config.master_seed = std::stoull(run_seed, nullptr, 0);
      if (run_trials > 0) config.trials = run_trials;
      if (run_threads >= 0) config.threads = static_cast<unsigned>(run_threads);
      config.validate();
      return run_and_report(config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
