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

#ifndef CAYLEY_HARNESS_HPP
#define CAYLEY_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cayley/group.hpp"
#include "cayley/lattice.hpp"
#include "cayley/mixing.hpp"
#include "cayley/random.hpp"

namespace cayley {

enum class Measurement { kDistances, kDiameter, kSpectrum, kMixing, kPredict };
std::string_view to_string(Measurement m);
Measurement parse_measurement(std::string_view text);

enum class ReportFormat { kCsv, kJson };

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string group;
  std::vector<int> k_values;
  std::vector<Orientation> orientations{Orientation::kUndirected};
  int trials = 1;
  Seed master_seed = 0;
  std::vector<double> betas{0.25, 0.5, 0.75};
  std::vector<Measurement> measurements{Measurement::kDistances};
  /// Empty writes to stdout.
  std::string output;
  ReportFormat format = ReportFormat::kCsv;

  // mixing cells
  MixingRegime mixing_regime = MixingRegime::kUniformBall;
  /// Unset means auto: R_0 for the ball, R_0 / k for the proxy rate.
  std::optional<double> mixing_L;
  std::optional<std::int64_t> mixing_radius;
  std::int64_t mixing_trials = 10'000;

  unsigned threads = 0;

  /// Throws ConfigError.
  void validate() const;
};

/// Keys: group, k_values, orientations (or orientation), trials, master_seed,
/// betas, measurements, output, format, mixing {regime, L, radius, trials},
/// threads. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& config);

struct TrialRecord {
  Measurement measurement = Measurement::kDistances;
  Index n = 0;
  int k = 0;
  Orientation orientation = Orientation::kUndirected;
  int trial = 0;
  Seed seed = 0;
  nlohmann::json results;
  double wall_time = 0.0;
  std::optional<std::string> error;
  int bound_violations = 0;
};

nlohmann::json to_json(const TrialRecord& record);

/// Executes every (measurement, k, orientation, trial) cell. A failing cell
/// becomes an error record; the batch always completes.
std::vector<TrialRecord> run(const ExperimentConfig& config);

struct SummaryRow {
  Measurement measurement = Measurement::kDistances;
  int k = 0;
  Orientation orientation = Orientation::kUndirected;
  std::optional<double> beta;
  /// Ratios measured / predicted over successful trials.
  std::int64_t count = 0;
  double median = 0.0;
  double mean = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
  int bound_violations = 0;
  int disconnected = 0;
  int errors = 0;
  bool hypothesis_small_k = false;
};

/// Linear-interpolation quantile of a non-empty sample, p in [0, 1].
double quantile(std::vector<double> values, double p);

/// Throws std::invalid_argument on an empty record list.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records,
                                  const GroupSpec& group);
nlohmann::json to_json(const SummaryRow& row);

/// Table of one measurement's records, header first.
void write_csv(std::ostream& out, Measurement m, const std::vector<TrialRecord>& records);
void write_json(std::ostream& out, const ExperimentConfig& config,
                const std::vector<TrialRecord>& records, const std::vector<SummaryRow>& summary);

/// Writes the report(s) named by config.output. CSV with several
/// measurements writes <stem>.<measurement>.csv per measurement. Throws
/// std::runtime_error when a file cannot be opened.
void write_report(const ExperimentConfig& config, const std::vector<TrialRecord>& records,
                  std::ostream& fallback);

/// 0 iff no record errored and no deterministic bound was violated.
int exit_code(const std::vector<TrialRecord>& records);

/// Shortest round-trip decimal form of x.
std::string format_number(double x);
/// RFC 4180 field quoting.
std::string csv_field(const std::string& text);

}  // namespace cayley

#endif  // CAYLEY_HARNESS_HPP
