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

#include "cayley/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "cayley/errors.hpp"
#include "cayley/explorer.hpp"
#include "cayley/spectrum.hpp"

namespace cayley {

using nlohmann::json;

std::string_view to_string(Measurement m) {
  switch (m) {
    case Measurement::kDistances: return "distances";
    case Measurement::kDiameter: return "diameter";
    case Measurement::kSpectrum: return "spectrum";
    case Measurement::kMixing: return "mixing";
    case Measurement::kPredict: return "predict";
  }
  return "?";
}

Measurement parse_measurement(std::string_view text) {
  for (auto m : {Measurement::kDistances, Measurement::kDiameter, Measurement::kSpectrum,
                 Measurement::kMixing, Measurement::kPredict})
    if (to_string(m) == text) return m;
  throw std::invalid_argument("unknown measurement '" + std::string(text) + "'");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

// ---------------------------------------------------------------- config

void ExperimentConfig::validate() const {
  try {
    parse_group(group);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("group: ") + e.what());
  }
  if (k_values.empty()) throw ConfigError("k_values must be nonempty");
  for (int k : k_values)
    if (k < 1) throw ConfigError("k_values must be positive");
  if (orientations.empty()) throw ConfigError("orientations must be nonempty");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  for (double b : betas)
    if (!(b > 0.0 && b < 1.0)) throw ConfigError("betas must lie in (0, 1)");
  if (measurements.empty()) throw ConfigError("measurements must be nonempty");
  if (mixing_trials < 1000) throw ConfigError("mixing trials must be >= 1000");
  if (mixing_L && !(*mixing_L > 1.0)) throw ConfigError("mixing L must exceed 1");
  if (mixing_radius && *mixing_radius < 0) throw ConfigError("mixing radius must be >= 0");
}

namespace {

template <typename T>
std::vector<T> scalar_or_list(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

Seed parse_seed(const json& j) {
  if (j.is_number_unsigned()) return j.get<Seed>();
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw ConfigError("master_seed must be non-negative");
    return static_cast<Seed>(v);
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t used = 0;
    const Seed v = std::stoull(s, &used, 0);
    if (used != s.size()) throw ConfigError("master_seed: trailing characters");
    return v;
  }
  throw ConfigError("master_seed must be an integer or a string");
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{
      "group", "k_values", "k", "orientations", "orientation", "trials", "master_seed",
      "seed", "betas", "measurements", "output", "format", "mixing", "threads"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

  ExperimentConfig c;
  try {
    if (!j.contains("group")) throw ConfigError("missing key 'group'");
    c.group = j.at("group").get<std::string>();
    if (j.contains("k_values")) c.k_values = scalar_or_list<int>(j.at("k_values"));
    else if (j.contains("k")) c.k_values = scalar_or_list<int>(j.at("k"));
    else throw ConfigError("missing key 'k_values'");
    const char* okey = j.contains("orientations") ? "orientations" : "orientation";
    if (j.contains(okey)) {
      c.orientations.clear();
      for (const auto& s : scalar_or_list<std::string>(j.at(okey)))
        c.orientations.push_back(parse_orientation(s));
    }
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("master_seed")) c.master_seed = parse_seed(j.at("master_seed"));
    else if (j.contains("seed")) c.master_seed = parse_seed(j.at("seed"));
    if (j.contains("betas")) c.betas = scalar_or_list<double>(j.at("betas"));
    if (j.contains("measurements")) {
      c.measurements.clear();
      for (const auto& s : scalar_or_list<std::string>(j.at("measurements")))
        c.measurements.push_back(parse_measurement(s));
    }
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("format")) {
      const auto f = j.at("format").get<std::string>();
      if (f == "csv") c.format = ReportFormat::kCsv;
      else if (f == "json") c.format = ReportFormat::kJson;
      else throw ConfigError("format must be 'csv' or 'json'");
    }
    if (j.contains("mixing")) {
      const auto& m = j.at("mixing");
      if (!m.is_object()) throw ConfigError("mixing must be an object");
      for (const auto& [key, value] : m.items())
        if (key != "regime" && key != "L" && key != "radius" && key != "trials")
          throw ConfigError("unknown mixing key '" + key + "'");
      if (m.contains("regime")) {
        const auto r = m.at("regime").get<std::string>();
        if (r == "ball") c.mixing_regime = MixingRegime::kUniformBall;
        else if (r == "proxy") c.mixing_regime = MixingRegime::kGeometricProxy;
        else throw ConfigError("mixing regime must be 'ball' or 'proxy'");
      }
      auto is_auto = [](const json& v) { return v.is_string() && v.get<std::string>() == "auto"; };
      if (m.contains("L") && !is_auto(m.at("L"))) c.mixing_L = m.at("L").get<double>();
      if (m.contains("radius") && !is_auto(m.at("radius")))
        c.mixing_radius = m.at("radius").get<std::int64_t>();
      if (m.contains("trials")) c.mixing_trials = m.at("trials").get<std::int64_t>();
    }
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("unparseable config: " + std::string(e.what()));
  }
  return config_from_json(j);
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["group"] = c.group;
  j["k_values"] = c.k_values;
  json os = json::array();
  for (auto o : c.orientations) os.push_back(std::string(to_string(o)));
  j["orientations"] = os;
  j["trials"] = c.trials;
  j["master_seed"] = c.master_seed;
  j["betas"] = c.betas;
  json ms = json::array();
  for (auto m : c.measurements) ms.push_back(std::string(to_string(m)));
  j["measurements"] = ms;
  j["output"] = c.output;
  j["format"] = c.format == ReportFormat::kCsv ? "csv" : "json";
  json mix;
  mix["regime"] = c.mixing_regime == MixingRegime::kUniformBall ? "ball" : "proxy";
  mix["L"] = c.mixing_L ? json(*c.mixing_L) : json("auto");
  mix["radius"] = c.mixing_radius ? json(*c.mixing_radius) : json("auto");
  mix["trials"] = c.mixing_trials;
  j["mixing"] = mix;
  j["threads"] = c.threads;
  return j;
}

json to_json(const TrialRecord& r) {
  json j;
  j["measurement"] = std::string(to_string(r.measurement));
  j["n"] = r.n;
  j["k"] = r.k;
  j["orientation"] = std::string(to_string(r.orientation));
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["results"] = r.results;
  j["wall_time"] = r.wall_time;
  j["error"] = r.error ? json(*r.error) : json(nullptr);
  j["bound_violations"] = r.bound_violations;
  return j;
}

// ---------------------------------------------------------------- run

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json optional_json(const std::optional<std::uint32_t>& v) {
  return v ? json(*v) : json(nullptr);
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

bool wants(const ExperimentConfig& c, Measurement m) {
  return std::find(c.measurements.begin(), c.measurements.end(), m) != c.measurements.end();
}

TrialRecord base_record(Measurement m, Index n, int k, Orientation o, int trial, Seed seed) {
  TrialRecord r;
  r.measurement = m;
  r.n = n;
  r.k = k;
  r.orientation = o;
  r.trial = trial;
  r.seed = seed;
  r.results = json::object();
  return r;
}

void run_concentration(const ExperimentConfig& c, const GroupSpec& g, int k, Orientation o,
                       std::vector<TrialRecord>& out) {
  const bool distances = wants(c, Measurement::kDistances);
  const bool diam = wants(c, Measurement::kDiameter);
  const std::vector<double> betas = distances ? c.betas : std::vector<double>{0.5};
  const auto start = Clock::now();
  ConcentrationReport report;
  try {
    report = concentration_report(g, k, o, c.trials, betas, c.master_seed, c.threads);
  } catch (const std::exception& e) {
    for (auto m : {Measurement::kDistances, Measurement::kDiameter}) {
      if (!wants(c, m)) continue;
      for (int t = 0; t < c.trials; ++t) {
        auto r = base_record(m, g.order(), k, o, t, derive_seed(c.master_seed, cell_id(k, o), t));
        r.error = e.what();
        out.push_back(std::move(r));
      }
    }
    return;
  }
  // Trials run in parallel; wall time is the cell time amortized per trial.
  const double per_trial = seconds_since(start) / c.trials;

  for (const auto& t : report.trials) {
    if (distances) {
      auto r = base_record(Measurement::kDistances, report.n, k, o, t.trial, t.seed);
      r.wall_time = per_trial;
      r.bound_violations = t.bound_violations;
      if (t.error) {
        r.error = *t.error;
      } else {
        json rows = json::array();
        for (const auto& row : t.rows)
          rows.push_back({{"beta", row.beta},
                          {"d_beta", row.d_beta},
                          {"lower_bound_radius", row.lower_bound_radius},
                          {"predicted", row.predicted},
                          {"ratio", row.ratio}});
        r.results = {{"rows", rows},
                     {"regime", std::string(to_string(report.regime))},
                     {"diameter", optional_json(t.diameter)},
                     {"connected", t.connected},
                     {"half_distance", optional_json(t.half_distance)}};
      }
      out.push_back(std::move(r));
    }
    if (diam) {
      auto r = base_record(Measurement::kDiameter, report.n, k, o, t.trial, t.seed);
      r.wall_time = per_trial;
      if (t.error) {
        r.error = *t.error;
      } else {
        bool sandwich = true;
        if (t.diameter && t.half_distance)
          sandwich = *t.half_distance <= *t.diameter && *t.diameter <= 2 * *t.half_distance + 1;
        r.bound_violations = sandwich ? 0 : 1;
        r.results = {{"diameter", optional_json(t.diameter)},
                     {"connected", t.connected},
                     {"half_distance", optional_json(t.half_distance)},
                     {"predicted", report.predicted},
                     {"ratio", t.diameter ? json(*t.diameter / report.predicted) : json(nullptr)},
                     {"sandwich_ok", sandwich}};
      }
      out.push_back(std::move(r));
    }
  }
}

void run_spectrum(const ExperimentConfig& c, const GroupSpec& g, int k, Orientation o,
                  std::vector<TrialRecord>& out) {
  const auto start = Clock::now();
  std::vector<SpectrumRow> rows;
  try {
    rows = spectrum_report(g, k, o, c.trials, c.master_seed, c.threads);
  } catch (const std::exception& e) {
    for (int t = 0; t < c.trials; ++t) {
      auto r = base_record(Measurement::kSpectrum, g.order(), k, o, t,
                           derive_seed(c.master_seed, cell_id(k, o), t));
      r.error = e.what();
      out.push_back(std::move(r));
    }
    return;
  }
  const double per_trial = seconds_since(start) / c.trials;
  for (const auto& row : rows) {
    auto r = base_record(Measurement::kSpectrum, row.n, k, o, row.trial, row.seed);
    r.wall_time = per_trial;
    r.bound_violations = row.violation ? 1 : 0;
    r.results = {{"gap", row.gap},
                 {"abs_gap", row.abs_gap},
                 {"t_rel", finite_or_null(row.t_rel)},
                 {"t_rel_star", finite_or_null(row.t_rel_star)},
                 {"n_pow_2k", row.n_pow_2k},
                 {"ratio", finite_or_null(row.ratio)},
                 {"dirichlet_bound", row.dirichlet_bound ? json(*row.dirichlet_bound) : json(nullptr)},
                 {"window_ok", row.window_ok},
                 {"connected", row.gap > 0.0}};
    out.push_back(std::move(r));
  }
}

void run_mixing(const ExperimentConfig& c, const GroupSpec& g, int k, Orientation o,
                std::vector<TrialRecord>& out) {
  const Seed seed = derive_seed(c.master_seed, cell_id(k, o), 0);
  auto r = base_record(Measurement::kMixing, g.order(), k, o, 0, seed);
  const auto start = Clock::now();
  try {
    MixingParams params;
    params.regime = c.mixing_regime;
    params.orientation = o;
    json param;
    if (params.regime == MixingRegime::kUniformBall) {
      params.radius = c.mixing_radius ? *c.mixing_radius : inflated_radius(k, g.order(), o);
      param = {{"regime", "ball"}, {"radius", params.radius}};
    } else {
      params.L = c.mixing_L ? *c.mixing_L : auto_proxy_rate(k, g.order(), o);
      param = {{"regime", "proxy"}, {"L", params.L}};
    }
    const auto est = collision_estimate(g, k, params, c.mixing_trials, seed, c.threads);
    const auto gp = gcd_power_expectation(g, k, params, c.mixing_trials, seed, c.threads);
    json hist = json::object();
    for (const auto& [key, count] : est.gcd_histogram) hist[std::to_string(key)] = count;
    json support = json::object();
    for (const auto& [size, b] : gp.by_support)
      support[std::to_string(size)] = {{"count", b.count}, {"sum", b.sum}};
    r.results = {{"params", param},
                 {"estimate", est.estimate},
                 {"std_error", est.std_error},
                 {"trials", est.trials},
                 {"accepted", est.accepted},
                 {"typical_fraction", est.typical_fraction},
                 {"gcd_histogram", hist},
                 {"gcd_power", {{"d", gp.d},
                                {"estimate", gp.estimate},
                                {"std_error", gp.std_error},
                                {"by_support", support}}}};
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.wall_time = seconds_since(start);
  out.push_back(std::move(r));
}

void run_predict(const ExperimentConfig& c, const GroupSpec& g, int k, Orientation o,
                 std::vector<TrialRecord>& out) {
  auto r = base_record(Measurement::kPredict, g.order(), k, o, 0, 0);
  const auto start = Clock::now();
  (void)c;
  try {
    const auto p = predict_typical_distance(k, g.order(), o);
    r.results = {{"regime", std::string(to_string(p.regime))},
                 {"value", p.value},
                 {"r0", inflated_radius(k, g.order(), o)},
                 {"hypothesis_small_k", satisfies_small_k_hypothesis(k, g)}};
    try {
      r.results["calligraphic_r"] = binomial_radius(k, BigInt(g.order()));
    } catch (const NoSolution&) {
      r.results["calligraphic_r"] = nullptr;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.wall_time = seconds_since(start);
  out.push_back(std::move(r));
}

}  // namespace

std::vector<TrialRecord> run(const ExperimentConfig& config) {
  config.validate();
  const GroupSpec g = parse_group(config.group);
  std::vector<TrialRecord> out;
  for (int k : config.k_values)
    for (auto o : config.orientations) {
      if (wants(config, Measurement::kDistances) || wants(config, Measurement::kDiameter))
        run_concentration(config, g, k, o, out);
      if (wants(config, Measurement::kSpectrum)) run_spectrum(config, g, k, o, out);
      if (wants(config, Measurement::kMixing)) run_mixing(config, g, k, o, out);
      if (wants(config, Measurement::kPredict)) run_predict(config, g, k, o, out);
    }
  // Stable grouping by measurement, keeping cell and trial order.
  std::stable_sort(out.begin(), out.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return static_cast<int>(a.measurement) < static_cast<int>(b.measurement);
  });
  return out;
}

// ---------------------------------------------------------------- summary

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = p * double(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - double(lo)) * (values[hi] - values[lo]);
}

namespace {

struct Cell {
  Measurement m;
  int k;
  Orientation o;
  std::optional<double> beta;
  bool operator<(const Cell& other) const {
    return std::tie(m, k, o, beta) < std::tie(other.m, other.k, other.o, other.beta);
  }
};

struct Tally {
  std::vector<double> ratios;
  int violations = 0, disconnected = 0, errors = 0;
};

bool disconnected(const TrialRecord& r) {
  return r.results.contains("connected") && !r.results.at("connected").get<bool>();
}

std::optional<double> number_at(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records, const GroupSpec& group) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  std::map<Cell, Tally> cells;
  for (const auto& r : records) {
    if (r.measurement == Measurement::kDistances && !r.error) {
      for (const auto& row : r.results.at("rows")) {
        auto& t = cells[{r.measurement, r.k, r.orientation, row.at("beta").get<double>()}];
        t.ratios.push_back(row.at("ratio").get<double>());
        t.violations += r.bound_violations;
        t.disconnected += disconnected(r) ? 1 : 0;
      }
      continue;
    }
    auto& t = cells[{r.measurement, r.k, r.orientation, std::nullopt}];
    t.violations += r.bound_violations;
    if (r.error) {
      ++t.errors;
      continue;
    }
    t.disconnected += disconnected(r) ? 1 : 0;
    std::optional<double> value;
    switch (r.measurement) {
      case Measurement::kDistances: break;
      case Measurement::kDiameter:
      case Measurement::kSpectrum: value = number_at(r.results, "ratio"); break;
      case Measurement::kMixing: value = number_at(r.results, "estimate"); break;
      case Measurement::kPredict: value = number_at(r.results, "value"); break;
    }
    if (value) t.ratios.push_back(*value);
  }
  // Error trials of a distances cell carry no beta; charge them to every beta row.
  for (const auto& r : records) {
    if (r.measurement != Measurement::kDistances || !r.error) continue;
    bool charged = false;
    for (auto& [cell, t] : cells)
      if (cell.m == r.measurement && cell.k == r.k && cell.o == r.orientation && cell.beta) {
        ++t.errors;
        charged = true;
      }
    if (!charged) ++cells[{r.measurement, r.k, r.orientation, std::nullopt}].errors;
  }

  std::vector<SummaryRow> out;
  for (const auto& [cell, t] : cells) {
    SummaryRow row;
    row.measurement = cell.m;
    row.k = cell.k;
    row.orientation = cell.o;
    row.beta = cell.beta;
    row.count = static_cast<std::int64_t>(t.ratios.size());
    if (!t.ratios.empty()) {
      row.median = quantile(t.ratios, 0.5);
      row.q10 = quantile(t.ratios, 0.1);
      row.q90 = quantile(t.ratios, 0.9);
      double sum = 0.0;
      for (double x : t.ratios) sum += x;
      row.mean = sum / double(t.ratios.size());
    }
    row.bound_violations = t.violations;
    row.disconnected = t.disconnected;
    row.errors = t.errors;
    row.hypothesis_small_k = satisfies_small_k_hypothesis(cell.k, group);
    out.push_back(row);
  }
  return out;
}

json to_json(const SummaryRow& row) {
  return {{"measurement", std::string(to_string(row.measurement))},
          {"k", row.k},
          {"orientation", std::string(to_string(row.orientation))},
          {"beta", row.beta ? json(*row.beta) : json(nullptr)},
          {"count", row.count},
          {"median", finite_or_null(row.median)},
          {"mean", finite_or_null(row.mean)},
          {"q10", finite_or_null(row.q10)},
          {"q90", finite_or_null(row.q90)},
          {"bound_violations", row.bound_violations},
          {"disconnected", row.disconnected},
          {"errors", row.errors},
          {"hypothesis_small_k", row.hypothesis_small_k}};
}

// ---------------------------------------------------------------- writers

namespace {

std::string cell(const json& j) {
  if (j.is_null()) return "";
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return std::to_string(j.get<std::uint64_t>());
  if (j.is_number()) return format_number(j.get<double>());
  if (j.is_string()) return csv_field(j.get<std::string>());
  return csv_field(j.dump());
}

std::string field(const json& j, const char* key) {
  return j.contains(key) ? cell(j.at(key)) : std::string();
}

void write_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << "\r\n";
}

}  // namespace

void write_csv(std::ostream& out, Measurement m, const std::vector<TrialRecord>& records) {
  switch (m) {
    case Measurement::kDistances:
    case Measurement::kDiameter:
      write_line(out, {"trial", "n", "k", "orientation", "beta", "d_beta", "lower_bound_radius",
                       "diameter", "connected", "predicted", "ratio"});
      break;
    case Measurement::kSpectrum:
      write_line(out, {"trial", "n", "k", "gap", "abs_gap", "t_rel", "t_rel_star", "n_pow_2k",
                       "ratio", "dirichlet_bound", "window_ok", "orientation"});
      break;
    case Measurement::kMixing:
      write_line(out, {"n", "k", "orientation", "regime", "L", "radius", "trials", "accepted",
                       "estimate", "std_error", "typical_fraction", "gcd_power"});
      break;
    case Measurement::kPredict:
      write_line(out, {"n", "k", "orientation", "regime", "value", "r0", "calligraphic_r",
                       "hypothesis_small_k"});
      break;
  }
  for (const auto& r : records) {
    if (r.measurement != m) continue;
    const std::string trial = std::to_string(r.trial), n = std::to_string(r.n),
                      k = std::to_string(r.k), o(to_string(r.orientation));
    const json& x = r.results;
    switch (m) {
      case Measurement::kDistances:
        if (r.error) {
          write_line(out, {trial, n, k, o, "", "error", "", "", "", "", ""});
          break;
        }
        for (const auto& row : x.at("rows"))
          write_line(out, {trial, n, k, o, field(row, "beta"), field(row, "d_beta"),
                           field(row, "lower_bound_radius"), field(x, "diameter"),
                           field(x, "connected"), field(row, "predicted"), field(row, "ratio")});
        break;
      case Measurement::kDiameter:
        if (r.error) {
          write_line(out, {trial, n, k, o, "", "error", "", "", "", "", ""});
          break;
        }
        write_line(out, {trial, n, k, o, "", "", "", field(x, "diameter"), field(x, "connected"),
                         field(x, "predicted"), field(x, "ratio")});
        break;
      case Measurement::kSpectrum:
        if (r.error) {
          write_line(out, {trial, n, k, "error", "", "", "", "", "", "", "", o});
          break;
        }
        write_line(out, {trial, n, k, field(x, "gap"), field(x, "abs_gap"), field(x, "t_rel"),
                         field(x, "t_rel_star"), field(x, "n_pow_2k"), field(x, "ratio"),
                         field(x, "dirichlet_bound"), field(x, "window_ok"), o});
        break;
      case Measurement::kMixing: {
        if (r.error) {
          write_line(out, {n, k, o, "error", "", "", "", "", "", "", "", ""});
          break;
        }
        const json& p = x.at("params");
        write_line(out, {n, k, o, field(p, "regime"), field(p, "L"), field(p, "radius"),
                         field(x, "trials"), field(x, "accepted"), field(x, "estimate"),
                         field(x, "std_error"), field(x, "typical_fraction"),
                         field(x.at("gcd_power"), "estimate")});
        break;
      }
      case Measurement::kPredict:
        if (r.error) {
          write_line(out, {n, k, o, "error", "", "", "", ""});
          break;
        }
        write_line(out, {n, k, o, field(x, "regime"), field(x, "value"), field(x, "r0"),
                         field(x, "calligraphic_r"), field(x, "hypothesis_small_k")});
        break;
    }
  }
}

void write_json(std::ostream& out, const ExperimentConfig& config,
                const std::vector<TrialRecord>& records, const std::vector<SummaryRow>& summary) {
  json j;
  j["config"] = to_json(config);
  json recs = json::array();
  for (const auto& r : records) recs.push_back(to_json(r));
  j["records"] = recs;
  json sum = json::array();
  for (const auto& s : summary) sum.push_back(to_json(s));
  j["summary"] = sum;
  out << j.dump(2) << '\n';
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  return f;
}

}  // namespace

void write_report(const ExperimentConfig& config, const std::vector<TrialRecord>& records,
                  std::ostream& fallback) {
  if (config.format == ReportFormat::kJson) {
    const auto summary = summarize(records, parse_group(config.group));
    if (config.output.empty()) {
      write_json(fallback, config, records, summary);
    } else {
      auto f = open_output(config.output);
      write_json(f, config, records, summary);
    }
    return;
  }
  if (config.output.empty()) {
    for (std::size_t i = 0; i < config.measurements.size(); ++i) {
      if (i) fallback << "\r\n";
      write_csv(fallback, config.measurements[i], records);
    }
    return;
  }
  if (config.measurements.size() == 1) {
    auto f = open_output(config.output);
    write_csv(f, config.measurements.front(), records);
    return;
  }
  const std::filesystem::path base(config.output);
  for (auto m : config.measurements) {
    auto path = base.parent_path() /
                (base.stem().string() + "." + std::string(to_string(m)) + ".csv");
    auto f = open_output(path);
    write_csv(f, m, records);
  }
}

int exit_code(const std::vector<TrialRecord>& records) {
  for (const auto& r : records)
    if (r.error || r.bound_violations > 0) return 1;
  return 0;
}

}  // namespace cayley
