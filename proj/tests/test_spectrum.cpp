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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "cayley/errors.hpp"
#include "cayley/spectrum.hpp"
#include "oracles.hpp"

using namespace cayley;
using doctest::Approx;

namespace {

constexpr Orientation kU = Orientation::kUndirected;
constexpr Orientation kD = Orientation::kDirected;

GeneratorSet gens_of(std::vector<std::int64_t> moduli, std::vector<std::vector<std::int64_t>> zs,
                     Orientation o = kU) {
  std::vector<Element> gens;
  for (auto& z : zs) gens.push_back(Element{z});
  return make_generator_set(make_group(std::move(moduli)), std::move(gens), o);
}

std::vector<double> sorted(const Eigen::ArrayXd& a) {
  std::vector<double> v(a.data(), a.data() + a.size());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("eigenvalue_at") {
  const auto gs = gens_of({6}, {{1}});
  CHECK(eigenvalue_at(gs, Element{{1}}) == Approx(0.5).epsilon(1e-15));
  CHECK(eigenvalue_at(gs, Element{{3}}) == -1.0);
  CHECK(eigenvalue_at(gs, Element{{0}}) == 1.0);
  CHECK(eigenvalue_at(gens_of({4, 6}, {{1, 2}, {3, 3}}), Element{{0, 0}}) == 1.0);
  CHECK_THROWS(eigenvalue_at(gs, Element{{0, 0}}));
  CHECK_THROWS(eigenvalue_at(gs, Element{{6}}));
}

TEST_CASE("full_spectrum small cases") {
  auto s = full_spectrum(gens_of({6}, {{1}}));
  const std::vector<double> expected{1, .5, -.5, -1, -.5, .5};
  for (int x = 0; x < 6; ++x) CHECK(s.eigenvalues[x] == Approx(expected[x]).epsilon(1e-14));
  CHECK(s.gap == Approx(0.5));
  CHECK(s.t_rel == Approx(2.0));
  CHECK(s.abs_gap == Approx(0.0).epsilon(1e-15));
  CHECK(std::isinf(s.t_rel_star));

  s = full_spectrum(gens_of({2}, {{1}}));
  CHECK(s.eigenvalues[0] == 1.0);
  CHECK(s.eigenvalues[1] == -1.0);
  CHECK(s.gap == 2.0);
  CHECK(s.abs_gap == 0.0);

  const auto one = full_spectrum(gens_of({5}, {{1}}));
  const auto two = full_spectrum(gens_of({5}, {{1}, {1}}));
  for (int x = 0; x < 5; ++x) CHECK(one.eigenvalues[x] == Approx(two.eigenvalues[x]));

  // Directed sets are symmetrised.
  const auto d = full_spectrum(gens_of({7}, {{2}, {3}}, kD));
  const auto u = full_spectrum(gens_of({7}, {{2}, {3}}, kU));
  for (int x = 0; x < 7; ++x) CHECK(d.eigenvalues[x] == u.eigenvalues[x]);

  // Disconnected: a unit eigenvalue off the identity.
  s = full_spectrum(gens_of({4}, {{2}}));
  CHECK(s.gap == 0.0);
  CHECK(std::isinf(s.t_rel));
}

TEST_CASE("spectrum invariants and the dense oracle") {
  Seed seed = 100;
  for (const auto& moduli : {std::vector<std::int64_t>{144}, {12, 12}, {2, 3, 4, 6}, {97}, {8, 9}}) {
    const auto g = make_group(moduli);
    for (int k = 1; k <= 5; ++k) {
      const auto gs = sample_generators(g, k, k % 2 ? kU : kD, seed++);
      const auto s = full_spectrum(gs);
      CHECK(s.eigenvalues[0] == 1.0);
      CHECK((s.eigenvalues >= -1.0).all());
      CHECK((s.eigenvalues <= 1.0).all());
      CHECK(s.abs_gap <= s.gap);
      for (Index x = 0; x < g.order(); ++x)
        CHECK(s.eigenvalues[x] == s.eigenvalues[g.index_of(neg(g, g.element_of(x)))]);

      const auto dense = oracle::dense_spectrum(gs);
      const auto fast = sorted(s.eigenvalues);
      double worst = 0.0;
      for (std::size_t i = 0; i < fast.size(); ++i) worst = std::max(worst, std::abs(fast[i] - dense[i]));
      CHECK(worst <= 1e-9);
      // Trace both ways.
      CHECK(s.eigenvalues.sum() == Approx(oracle::transition_matrix(gs).trace()).epsilon(1e-9));
    }
  }
}

TEST_CASE("eigenvalues match pointwise evaluation on a large cyclic group") {
  const auto gs = sample_generators(make_group({10'000'019}), 3, kU, 5);
  const auto s = full_spectrum(gs);
  for (Index x : {Index{1}, Index{2}, Index{12345}, Index{9'999'999}, Index{10'000'018}})
    CHECK(s.eigenvalues[x] == Approx(eigenvalue_at(gs, Element{{x}})).epsilon(1e-15));
  // Direct double phase for comparison; the exact reduction keeps it within rounding.
  for (Index x : {Index{7}, Index{5'000'000}}) {
    double sum = 0.0;
    for (const auto& z : gs.gens) {
      const auto num = static_cast<__int128>(x) * z.coords[0] % 10'000'019;
      sum += std::cos(2.0 * std::numbers::pi * double(num) / 10'000'019.0);
    }
    CHECK(s.eigenvalues[x] == Approx(sum / 3).epsilon(1e-12));
  }
}

TEST_CASE("s_star and class sizes") {
  CHECK(s_star(make_group({6}), Element{{2}}) == 3);
  CHECK(s_star(make_group({6}), Element{{0}}) == 1);
  CHECK(s_star(make_group({4, 6}), Element{{2, 3}}) == 2);

  for (const auto& moduli : {std::vector<std::int64_t>{6}, {4, 6}, {2, 2, 2}, {12, 18}, {9973},
                             {10, 10, 10, 10}}) {
    const auto g = make_group(moduli);
    const auto classes = class_sizes(g);
    Index total = 0;
    std::int64_t prev = 0;
    for (const auto& c : classes) {
      CHECK(c.s > prev);
      prev = c.s;
      total += c.members;
      if (c.s == 1) CHECK(c.members == 1);
      if (c.s >= 2)
        CHECK(double(c.members) <= crude_class_bound(c.s, static_cast<int>(g.dimension())));
      if (c.s >= 2) CHECK(BigInt(c.members) <= divisor_weighted_class_bound(g, c.s));
    }
    CHECK(total == g.order());
    // Against direct enumeration.
    std::map<std::int64_t, Index> direct;
    for (Index x = 0; x < g.order(); ++x) ++direct[s_star(g, g.element_of(x))];
    CHECK(direct.size() == classes.size());
    for (const auto& c : classes) CHECK(direct[c.s] == c.members);
  }
}

TEST_CASE("class bound: cyclic groups up to 10^4, all small-rank groups up to 2000") {
  int violations = 0;
  for (Index n = 2; n <= 10'000; ++n) {
    const auto all = n <= 2000 ? oracle::decompositions(n) : std::vector<std::vector<std::int64_t>>{{n}};
    for (const auto& moduli : all) {
      if (moduli.size() > 3) continue;
      const auto g = make_group(moduli);
      for (const auto& c : class_sizes(g))
        if (c.s >= 2 && double(c.members) > crude_class_bound(c.s, int(g.dimension()))) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("divisor-weighted bound") {
  CHECK(divisor_weighted_class_bound(12, 4, 1) == 10);
  CHECK(divisor_weighted_class_bound(10007, 100, 1) == 1);
  CHECK(divisor_weighted_class_bound(12, 5, 2) == 100);
  CHECK(crude_class_bound(4, 2) == 64.0);
}

TEST_CASE("Dirichlet certificate") {
  CHECK(dirichlet_window_ok(3, 1000));
  CHECK(dirichlet_lower_certificate(3, 1000) == Approx(64.0 / (std::numbers::pi * std::numbers::pi)));
  CHECK(dirichlet_lower_certificate(3, 1000) == Approx(6.484555753).epsilon(1e-9));
  CHECK(dirichlet_lower_certificate(1, 10) == Approx(3.647562611).epsilon(1e-9));
  CHECK(!dirichlet_window_ok(20, 100));
  CHECK_THROWS_AS(dirichlet_lower_certificate(20, 100), WindowViolation);
  // Boundary: 2 * 3^k <= n.
  CHECK(dirichlet_window_ok(2, 18));
  CHECK(!dirichlet_window_ok(2, 17));
  CHECK_NOTHROW(dirichlet_lower_certificate(2, 18));
  // L agrees with the real-valued formula away from integer boundaries.
  for (Index n : {Index{1000}, Index{10'000}, Index{100'000}, Index{123'457}})
    for (int k = 1; dirichlet_window_ok(k, n); ++k) {
      const double L = std::floor((std::pow(n / 2.0, 1.0 / k) - 1.0) / 2.0);
      CHECK(dirichlet_lower_certificate(k, n) ==
            Approx(4.0 * (L + 1) * (L + 1) / (std::numbers::pi * std::numbers::pi)));
    }
}

TEST_CASE("cosine sandwich on a grid") {
  const int N = 10'000;
  int violations = 0;
  for (int i = 0; i <= N; ++i) {
    const double theta = -0.5 + double(i) / N;
    const double pt = std::numbers::pi * theta;
    const double v = 1.0 - std::cos(2.0 * std::numbers::pi * theta);
    if (v < (2.0 / 3.0) * pt * pt - 1e-12 || v > 2.0 * pt * pt + 1e-12) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("spectrum_report") {
  const auto rows = spectrum_report(make_group({1000}), 3, kU, 30, 9);
  CHECK(rows.size() == 30);
  for (const auto& r : rows) {
    CHECK(r.window_ok);
    REQUIRE(r.dirichlet_bound.has_value());
    CHECK(!r.violation);
    CHECK(r.t_rel >= *r.dirichlet_bound);
    CHECK(r.n_pow_2k == Approx(100.0));
    CHECK(r.seed == derive_seed(9, cell_id(3, kU), r.trial));
    const auto s = full_spectrum(sample_generators(make_group({1000}), 3, kU, r.seed));
    CHECK(r.gap == s.gap);
  }
  const auto outside = spectrum_report(make_group({100}), 5, kU, 3, 9);
  for (const auto& r : outside) {
    CHECK(!r.window_ok);
    CHECK(!r.dirichlet_bound.has_value());
    CHECK(!r.violation);
  }
}
