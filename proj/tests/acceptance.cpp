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

// Acceptance suite: one PASS/FAIL line per check. Run with no arguments for
// all checks or with --only <name> for one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cayley/explorer.hpp"
#include "cayley/mixing.hpp"
#include "cayley/spectrum.hpp"
#include "oracles.hpp"

using namespace cayley;

namespace {

constexpr Orientation kU = Orientation::kUndirected;
constexpr Orientation kD = Orientation::kDirected;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const std::vector<double> kBetas{0.25, 0.5, 0.75};

Outcome lower_bound() {
  const auto t0 = Clock::now();
  const Index n = 100003;
  const auto g = make_group({n});
  int violations = 0, rows = 0, errors = 0;
  for (int k : {3, 4, 5})
    for (auto o : {kU, kD}) {
      const auto rep = concentration_report(g, k, o, 50, kBetas, 1001);
      std::vector<std::int64_t> radius;
      for (double b : kBetas)
        radius.push_back(min_radius(k, BigInt(static_cast<std::int64_t>(std::ceil(b * n))), o));
      for (const auto& t : rep.trials) {
        if (t.error) {
          ++errors;
          continue;
        }
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
          ++rows;
          if (t.rows[i].d_beta < radius[i]) ++violations;
        }
        violations += t.bound_violations;
      }
    }
  const double secs = seconds_since(t0);
  return {violations == 0 && errors == 0 && secs < 120,
          fmt("%d (trial, beta) rows, %d violations, %d errors, %.1f s", rows, violations, errors, secs)};
}

Outcome diameter_sandwich() {
  const auto g = make_group({100003});
  int checked = 0, violations = 0;
  for (int k : {3, 4, 5})
    for (auto o : {kU, kD})
      for (int t = 0; t < 50; ++t) {
        const auto p = distance_profile(sample_generators(g, k, o, derive_seed(1001, cell_id(k, o), t)));
        if (!p.connected()) continue;
        ++checked;
        const auto half = typical_distance(p, 0.5);
        const auto diam = *diameter(p);
        if (!(half <= diam && diam <= 2 * half + 1)) ++violations;
      }
  return {violations == 0 && checked > 0, fmt("%d connected graphs, %d violations", checked, violations)};
}

Outcome small_k_concentration() {
  const auto t0 = Clock::now();
  const Index n = 1'000'003;
  const int k = 6;
  const auto r0 = inflated_radius(k, n, kU);
  const std::vector<double> half{0.5};
  const auto rep = concentration_report(make_group({n}), k, kU, 20, half, 2003);
  std::vector<double> ratios;
  for (const auto& t : rep.trials)
    if (!t.error) ratios.push_back(double(t.rows.front().d_beta) / double(r0));
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios.empty() ? 0.0 : (ratios[(ratios.size() - 1) / 2] + ratios[ratios.size() / 2]) / 2;
  const double secs = seconds_since(t0);
  return {median >= 0.70 && median <= 1.10 && secs < 300,
          fmt("R_0 = %lld, median D(1/2)/R_0 = %.3f over %zu trials (target [0.70, 1.10]), %.1f s",
              static_cast<long long>(r0), median, ratios.size(), secs)};
}

Outcome large_k_diameter() {
  const auto t0 = Clock::now();
  const auto g = parse_group("2^16");
  const int k = 1024;
  const double predicted = predicted_radius_large_k(k, double(g.order()));
  const auto upper = static_cast<std::uint32_t>(std::ceil(1.3 * predicted));
  const auto lower = binomial_radius(k, BigInt(g.order())) - 1;
  int ok = 0;
  std::uint32_t lo = ~0u, hi = 0;
  for (int t = 0; t < 10; ++t) {
    const auto p = distance_profile(sample_generators(g, k, kU, derive_seed(4004, cell_id(k, kU), t)));
    const auto d = diameter(p);
    if (!d) continue;
    lo = std::min(lo, *d);
    hi = std::max(hi, *d);
    if (*d <= upper && std::int64_t(*d) >= lower) ++ok;
  }
  const double secs = seconds_since(t0);
  return {ok == 10 && secs < 120,
          fmt("diameters in [%u, %u], allowed [%lld, %u], %d/10 within, %.1f s", lo, hi,
              static_cast<long long>(lower), upper, ok, secs)};
}

Outcome spectrum_oracle() {
  Rng rng(5005);
  double worst = 0.0;
  int instances = 0;
  for (; instances < 20; ++instances) {
    const auto n = static_cast<std::int64_t>(2 + rng.below(143));
    const auto decomps = oracle::decompositions(n);
    const auto g = make_group(decomps[rng.below(decomps.size())]);
    const int k = 1 + static_cast<int>(rng.below(5));
    const auto gs = sample_generators(g, k, rng.sign() > 0 ? kU : kD, rng.next());
    auto fast = full_spectrum(gs).eigenvalues;
    std::vector<double> mine(fast.data(), fast.data() + fast.size());
    std::sort(mine.begin(), mine.end());
    const auto dense = oracle::dense_spectrum(gs);
    for (std::size_t i = 0; i < mine.size(); ++i) worst = std::max(worst, std::abs(mine[i] - dense[i]));
  }
  return {worst <= 1e-9, fmt("%d instances, max sorted deviation %.2e", instances, worst)};
}

Outcome relaxation_certificate() {
  int checked = 0, violations = 0;
  for (Index n : {Index{1000}, Index{10'000}, Index{100'000}})
    for (int k : {2, 3, 4}) {
      if (!dirichlet_window_ok(k, n)) continue;
      const double bound = dirichlet_lower_certificate(k, n);
      for (const auto& row : spectrum_report(make_group({n}), k, kU, 100, 6006)) {
        ++checked;
        if (row.t_rel < bound) ++violations;
      }
    }
  return {violations == 0 && checked == 900, fmt("%d graphs, %d below the certificate", checked, violations)};
}

Outcome gap_calibration() {
  std::string detail;
  bool pass = true;
  for (int k : {4, 6}) {
    const auto rows = spectrum_report(make_group({10007}), k, kU, 50, 7007);
    int within = 0;
    double worst = 0.0;
    for (const auto& r : rows) {
      within += r.ratio <= 25.0;
      worst = std::max(worst, r.ratio);
    }
    pass = pass && within >= 45;
    detail += fmt("k=%d: %d/50 with t_rel <= 25 n^(2/k) (max ratio %.2f)  ", k, within, worst);
  }
  return {pass, detail};
}

Outcome gcd_lemmas() {
  int laws = 0, law_failures = 0, quotient_checks = 0, quotient_failures = 0;
  for (std::int64_t n = 2; n <= 24; ++n)
    for (const auto& moduli : oracle::decompositions(n)) {
      const auto g = make_group(moduli);
      for (std::int64_t a = -n; a <= n; ++a) {
        ++laws;
        law_failures += !image_law_check(g, std::vector<std::int64_t>{a}).uniform;
        for (std::int64_t b = -n; b <= n; ++b) {
          ++laws;
          law_failures += !image_law_check(g, std::vector<std::int64_t>{a, b}).uniform;
        }
      }
    }
  for (std::int64_t n = 2; n <= 100; ++n)
    for (const auto& moduli : oracle::decompositions(n)) {
      const auto g = make_group(moduli);
      const double d = double(g.min_generators());
      for (std::int64_t gamma = 1; gamma <= n; ++gamma) {
        ++quotient_checks;
        if (double(n / subgroup_gamma_order(g, gamma)) > std::pow(double(gamma), d)) ++quotient_failures;
      }
    }
  return {law_failures == 0 && quotient_failures == 0,
          fmt("%d image laws (%d failures), %d quotient bounds (%d failures)", laws, law_failures,
              quotient_checks, quotient_failures)};
}

Outcome lattice_counts() {
  int checks = 0, mismatches = 0;
  auto expect = [&](const BigInt& got, std::int64_t want) {
    ++checks;
    if (got != want) ++mismatches;
  };
  for (auto o : {kU, kD})
    for (int k = 1; k <= 4; ++k)
      for (std::int64_t R = 0; R <= 6; ++R) {
        expect(count_ball_l1(k, R, o), oracle::lattice_ball(k, R, 1, o));
        expect(count_ball_lq(k, double(R), Norm::l(2), o), oracle::lattice_ball(k, R, 2, o));
        expect(count_ball_lq(k, double(R), Norm::infinity(), o), oracle::lattice_ball(k, R, 0, o));
        if (R <= k) expect(count_sphere_linf_cap(k, R, o), oracle::sphere_cap(k, int(R), o));
      }
  expect(count_ball_l1(2, 2, kU), 13);
  expect(count_ball_l1(2, 2, kD), 6);
  expect(count_ball_l1(3, 3, kU), 63);
  return {mismatches == 0, fmt("%d exact counts, %d mismatches", checks, mismatches)};
}

Outcome growth_rates() {
  double worst = 0.0;
  for (auto o : {kU, kD})
    for (double a : {0.5, 1.0, 2.0}) {
      const double exact = log_big(count_ball_l1(400, std::llround(400 * a), o)) / 400.0;
      worst = std::max(worst, std::abs(exact - growth_rate(a, o)));
    }
  return {worst <= 0.05, fmt("max |log|B_400(400a)|/400 - c(a)| = %.4f", worst)};
}

Outcome ball_sampler() {
  const BallSampler s(3, 4, kU);
  const auto points = s.size().convert_to<std::int64_t>();
  std::vector<std::int64_t> counts(points, 0);
  Rng rng(1111);
  const std::int64_t N = 1'000'000;
  // Rank of a point: index in the enumeration of the 9^3 box, mapped densely.
  std::vector<std::int64_t> slot(9 * 9 * 9, -1);
  std::int64_t next = 0;
  for (std::int64_t i = 0; i < N; ++i) {
    const auto w = s(rng);
    const auto key = (w[0] + 4) * 81 + (w[1] + 4) * 9 + (w[2] + 4);
    if (slot[key] < 0) slot[key] = next++;
    if (slot[key] < points) ++counts[slot[key]];
  }
  double tv = 0.0;
  for (auto c : counts) tv += std::abs(double(c) / N - 1.0 / double(points));
  tv /= 2.0;
  return {next == points && tv < 0.02,
          fmt("%lld support points (expected %lld), TV = %.4f", static_cast<long long>(next),
              static_cast<long long>(points), tv)};
}

Outcome cosine_sandwich() {
  const int N = 10'000;
  double worst = -1.0;
  for (int i = 0; i <= N; ++i) {
    const double theta = -0.5 + double(i) / N;
    const double pt = std::numbers::pi * theta;
    const double v = 1.0 - std::cos(2.0 * std::numbers::pi * theta);
    worst = std::max({worst, (2.0 / 3.0) * pt * pt - v, v - 2.0 * pt * pt});
  }
  return {worst <= 1e-12, fmt("%d grid points, worst excess %.2e", N + 1, worst)};
}

Outcome collision_decay() {
  std::vector<CollisionEstimate> est;
  std::string detail;
  for (Index n : {Index{1000}, Index{10'000}, Index{100'000}}) {
    MixingParams p;
    p.radius = inflated_radius(5, n, kU);
    est.push_back(collision_estimate(make_group({n}), 5, p, 100'000, 1313));
    detail += fmt("n=%lld R=%lld: %.4f +- %.4f  ", static_cast<long long>(n),
                  static_cast<long long>(p.radius), est.back().estimate, est.back().std_error);
  }
  bool pass = true;
  for (std::size_t i = 1; i < est.size(); ++i)
    pass = pass && est[i].estimate <= est[i - 1].estimate +
                                          2.0 * std::hypot(est[i].std_error, est[i - 1].std_error);
  return {pass, detail};
}

struct Check {
  const char* name;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Check> kChecks{
    {"lower-bound", "typical distance above the lattice-ball radius", lower_bound},
    {"diameter-sandwich", "D(1/2) <= diam <= 2 D(1/2) + 1", diameter_sandwich},
    {"small-k-concentration", "median D(1/2)/R_0 on Z_{10^6+3}, k = 6", small_k_concentration},
    {"large-k-diameter", "diameter of Z_2^16 with k = 1024", large_k_diameter},
    {"spectrum-oracle", "character spectrum equals dense eigensolver", spectrum_oracle},
    {"relaxation-certificate", "t_rel above the Dirichlet certificate", relaxation_certificate},
    {"gap-calibration", "t_rel <= 25 n^(2/k) on Z_10007", gap_calibration},
    {"gcd-lemmas", "image law and quotient bound, exhaustive", gcd_lemmas},
    {"lattice-counts", "exact counts equal enumeration", lattice_counts},
    {"growth-rates", "growth rates against exact counts at k = 400", growth_rates},
    {"ball-sampler", "uniform ball sampler, k = 3, R = 4", ball_sampler},
    {"cosine-sandwich", "(2/3)(pi t)^2 <= 1 - cos(2 pi t) <= 2 (pi t)^2", cosine_sandwich},
    {"collision-decay", "L2 collision estimates nonincreasing in n", collision_decay},
};

}  // namespace

int main(int argc, char** argv) {
  const char* only = nullptr;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = argv[++i];
    } else if (std::strcmp(argv[i], "--list") == 0) {
      for (const auto& c : kChecks) std::printf("%s\n", c.name);
      return 0;
    } else {
      std::fprintf(stderr, "usage: %s [--only NAME | --list]\n", argv[0]);
      return 2;
    }
  }
  int failures = 0, ran = 0;
  for (std::size_t i = 0; i < kChecks.size(); ++i) {
    const auto& c = kChecks[i];
    if (only && std::strcmp(only, c.name) != 0) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %-22s %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, c.name, c.title,
                o.detail.c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no check named '%s'\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
