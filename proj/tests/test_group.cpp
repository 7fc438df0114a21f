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

#include <set>
#include <stdexcept>

#include "cayley/group.hpp"
#include "oracles.hpp"

using namespace cayley;

TEST_CASE("make_group: order, invariant factors, d and m_*") {
  auto g = make_group({6});
  CHECK(g.order() == 6);
  CHECK(g.min_generators() == 1);
  CHECK(g.min_side_length() == 6);

  g = make_group({2, 3});
  CHECK(g.order() == 6);
  CHECK(std::vector<std::int64_t>(g.invariant_factors().begin(), g.invariant_factors().end()) ==
        std::vector<std::int64_t>{6});
  CHECK(g.min_generators() == 1);
  CHECK(g.min_side_length() == 6);

  g = make_group({4, 6});
  CHECK(g.order() == 24);
  CHECK(std::vector<std::int64_t>(g.invariant_factors().begin(), g.invariant_factors().end()) ==
        std::vector<std::int64_t>{2, 12});
  CHECK(g.min_generators() == 2);
  CHECK(g.min_side_length() == 4);  // Z_4 + Z_6, not Z_2 + Z_12
  CHECK(make_group({2, 3, 9}).min_side_length() == 6);
  CHECK(make_group({4, 4, 3, 3, 5}).min_side_length() == 12);
}

TEST_CASE("make_group rejects bad input") {
  CHECK_THROWS_AS(make_group({}), std::invalid_argument);
  CHECK_THROWS_AS(make_group({1}), std::invalid_argument);
  CHECK_THROWS_AS(make_group({4, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_group({1LL << 40, 1LL << 40}), std::overflow_error);
  CHECK_NOTHROW(make_group({1LL << 48}));
}

TEST_CASE("parse_group") {
  CHECK(parse_group("4,6") == make_group({4, 6}));
  CHECK(parse_group("2^3,5,25") == make_group({2, 2, 2, 5, 25}));
  CHECK(parse_group("2^16").order() == 65536);
  CHECK(parse_group("100003").order() == 100003);
  CHECK(format_group(parse_group("2^2,7")) == "2,2,7");
  for (const char* bad : {"", "4, 6", " 4", "4,", ",4", "-4", "+4", "4,,6", "2^", "^3", "2^0", "abc", "4x6"})
    CHECK_THROWS_AS(parse_group(bad), std::invalid_argument);
}

TEST_CASE("add and neg") {
  const auto g = make_group({4, 6});
  CHECK(add(g, Element{{3, 5}}, Element{{2, 2}}) == Element{{1, 1}});
  CHECK(neg(g, Element{{0, 0}}) == Element{{0, 0}});
  CHECK(add(make_group({5}), Element{{3}}, Element{{3}}) == Element{{1}});
  CHECK_THROWS(add(g, Element{{4, 0}}, Element{{0, 0}}));
  CHECK_THROWS(neg(g, Element{{0, 6}}));
  CHECK_THROWS(add(g, Element{{0}}, Element{{0, 0}}));
}

TEST_CASE("group axioms, exhaustive on small groups") {
  for (auto moduli : {std::vector<std::int64_t>{6}, {2, 2}, {4, 6}, {3, 3, 2}}) {
    const auto g = make_group(moduli);
    for (Index a = 0; a < g.order(); ++a) {
      const auto x = g.element_of(a);
      CHECK(add(g, x, g.identity()) == x);
      CHECK(add(g, x, neg(g, x)) == g.identity());
      for (Index b = 0; b < g.order(); ++b) {
        const auto y = g.element_of(b);
        CHECK(add(g, x, y) == add(g, y, x));
        const auto z = g.element_of((a * 7 + b) % g.order());
        CHECK(add(g, add(g, x, y), z) == add(g, x, add(g, y, z)));
      }
    }
  }
}

TEST_CASE("index_of and element_of") {
  const auto g = make_group({4, 6});
  CHECK(g.index_of(Element{{0, 0}}) == 0);
  CHECK(g.index_of(Element{{3, 0}}) == 3);
  CHECK(g.index_of(Element{{1, 2}}) == 9);
  CHECK(g.element_of(9) == Element{{1, 2}});
  std::set<std::vector<std::int64_t>> seen;
  for (Index i = 0; i < g.order(); ++i) {
    const auto x = g.element_of(i);
    CHECK(g.contains(x));
    CHECK(g.index_of(x) == i);
    seen.insert(x.coords);
  }
  CHECK(seen.size() == 24);
  CHECK_THROWS_AS(g.element_of(24), std::out_of_range);
  CHECK_THROWS_AS(g.element_of(-1), std::out_of_range);
  CHECK_THROWS_AS(g.index_of(Element{{4, 0}}), std::out_of_range);
}

TEST_CASE("subgroup_gamma_order") {
  const auto g = make_group({4, 6});
  CHECK(subgroup_gamma_order(g, 2) == 6);
  CHECK(g.order() / subgroup_gamma_order(g, 2) == 4);
  CHECK(subgroup_gamma_order(g, 1) == g.order());
  CHECK(subgroup_gamma_order(make_group({5}), 5) == 1);
  CHECK_THROWS(subgroup_gamma_order(g, 0));

  // |gamma G| against the enumerated image of x -> gamma x.
  for (auto moduli : {std::vector<std::int64_t>{4, 6}, {12}, {2, 2, 8}, {9, 3}}) {
    const auto h = make_group(moduli);
    for (std::int64_t gamma = 1; gamma <= 13; ++gamma) {
      std::set<Index> image;
      for (Index i = 0; i < h.order(); ++i) {
        Element x = h.element_of(i);
        for (std::size_t j = 0; j < h.dimension(); ++j)
          x.coords[j] = x.coords[j] * gamma % h.modulus(j);
        image.insert(h.index_of(x));
      }
      CHECK(subgroup_gamma_order(h, gamma) == static_cast<Index>(image.size()));
    }
  }
}

TEST_CASE("invariant factors match the element-order oracle, all decompositions n <= 64") {
  for (std::int64_t n = 2; n <= 64; ++n) {
    for (const auto& moduli : oracle::decompositions(n)) {
      const auto g = make_group(moduli);
      const auto t = g.invariant_factors();
      Index product = 1;
      for (std::size_t i = 0; i < t.size(); ++i) {
        product *= t[i];
        if (i + 1 < t.size()) CHECK(t[i + 1] % t[i] == 0);
      }
      CHECK(product == n);
      const auto canonical = make_group(std::vector<std::int64_t>(t.begin(), t.end()));
      CHECK(oracle::order_signature(g) == oracle::order_signature(canonical));
      CHECK(g.min_generators() == oracle::min_generators(g));
    }
  }
}

TEST_CASE("m_* is the best minimum modulus over all decompositions, n <= 64") {
  for (std::int64_t n = 2; n <= 64; ++n) {
    const auto all = oracle::decompositions(n);
    for (const auto& moduli : all) {
      const auto g = make_group(moduli);
      const auto sig = oracle::order_signature(g);
      std::int64_t best = 0;
      for (const auto& other : all) {
        const auto h = make_group(other);
        if (oracle::order_signature(h) != sig) continue;
        best = std::max(best, *std::min_element(other.begin(), other.end()));
      }
      CHECK(g.min_side_length() == best);
    }
  }
}

TEST_CASE("n / |gamma G| <= gamma^d, every group with n <= 100") {
  int violations = 0;
  for (std::int64_t n = 2; n <= 100; ++n)
    for (const auto& moduli : oracle::decompositions(n)) {
      const auto g = make_group(moduli);
      const auto d = static_cast<double>(g.min_generators());
      for (std::int64_t gamma = 1; gamma <= n; ++gamma) {
        const Index quotient = n / subgroup_gamma_order(g, gamma);
        if (double(quotient) > std::pow(double(gamma), d)) ++violations;
      }
    }
  CHECK(violations == 0);
}

TEST_CASE("factorize") {
  CHECK(factorize(360) == std::vector<std::pair<std::int64_t, int>>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(factorize(100003) == std::vector<std::pair<std::int64_t, int>>{{100003, 1}});
}
