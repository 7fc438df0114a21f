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

#include "cayley/spectrum.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "cayley/errors.hpp"
#include "cayley/parallel.hpp"

namespace cayley {

namespace {

// Characters evaluated as phase / denom with denom = lcm(m_j); generator i
// advances the phase by coef(i, j) when coordinate j of x grows by one.
struct PhaseTable {
  std::int64_t denom = 1;
  std::vector<std::int64_t> coef;  // row-major k x d

  explicit PhaseTable(const GeneratorSet& gs) {
    const auto& g = gs.group;
    for (std::int64_t m : g.moduli()) denom = std::lcm(denom, m);
    const std::size_t d = g.dimension();
    coef.resize(gs.gens.size() * d);
    for (std::size_t i = 0; i < gs.gens.size(); ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        coef[i * d + j] = gs.gens[i].coords[j] * (denom / g.modulus(j));
      }
    }
  }

  double cosine(std::int64_t phase) const {
    // Fold into (-denom/2, denom/2] so the argument is as small as possible.
    if (2 * phase > denom) phase -= denom;
    return std::cos(2.0 * std::numbers::pi * static_cast<double>(phase) /
                    static_cast<double>(denom));
  }
};

}  // namespace

double eigenvalue_at(const GeneratorSet& gs, const Element& x) {
  if (!gs.group.contains(x)) throw std::invalid_argument("element and generators differ in group");
  const PhaseTable table(gs);
  const std::size_t d = gs.group.dimension();
  double sum = 0.0;
  for (std::size_t i = 0; i < gs.gens.size(); ++i) {
    __int128 phase = 0;
    for (std::size_t j = 0; j < d; ++j) {
      phase += static_cast<__int128>(x.coords[j]) * table.coef[i * d + j];
    }
    sum += table.cosine(static_cast<std::int64_t>(phase % table.denom));
  }
  return sum / gs.k();
}

SpectrumSummary full_spectrum(const GeneratorSet& gs) {
  const GroupSpec& g = gs.group;
  const Index n = g.order();
  if (n > kMaxDenseOrder) {
    throw MemoryCapExceeded("group order " + std::to_string(n) + " exceeds the dense cap");
  }
  const PhaseTable table(gs);
  const std::size_t d = g.dimension();
  const std::size_t k = gs.gens.size();

  // Cosines of every phase, when the denominator is small enough to tabulate.
  Eigen::ArrayXd cosines;
  const bool tabulate = table.denom <= (std::int64_t{1} << 22);
  if (tabulate) {
    cosines.resize(table.denom);
    for (std::int64_t p = 0; p < table.denom; ++p) cosines(p) = table.cosine(p);
  }

  SpectrumSummary out;
  out.eigenvalues.resize(n);
  std::vector<std::int64_t> coords(d, 0);
  std::vector<std::int64_t> phase(k, 0);
  for (Index x = 0; x < n; ++x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      sum += tabulate ? cosines(phase[i]) : table.cosine(phase[i]);
    }
    out.eigenvalues(x) = sum / static_cast<double>(k);
    // Odometer step: every coordinate that changes (wrapping ones included)
    // moves each phase by its coefficient, since m_j * coef == 0 mod denom.
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < k; ++i) {
        phase[i] += table.coef[i * d + j];
        if (phase[i] >= table.denom) phase[i] -= table.denom;
      }
      if (++coords[j] < g.modulus(j)) break;
      coords[j] = 0;
    }
  }

  const auto rest = out.eigenvalues.tail(n - 1);
  Eigen::Index at = 0;
  out.gap = (1.0 - rest).minCoeff(&at);
  out.argmin = at + 1;
  out.abs_gap = (1.0 - rest.abs()).minCoeff(&at);
  out.abs_argmin = at + 1;
  const double inf = std::numeric_limits<double>::infinity();
  out.t_rel = out.gap > 0.0 ? 1.0 / out.gap : inf;
  out.t_rel_star = out.abs_gap > 0.0 ? 1.0 / out.abs_gap : inf;
  return out;
}

std::int64_t s_star(const GroupSpec& g, const Element& x) {
  if (!g.contains(x)) throw std::out_of_range("element not in group");
  std::int64_t s = 1;
  for (std::size_t j = 0; j < g.dimension(); ++j) {
    s = std::max(s, g.modulus(j) / std::gcd(x.coords[j], g.modulus(j)));
  }
  return s;
}

std::vector<SStarClass> class_sizes(const GroupSpec& g) {
  if (g.order() > kMaxDenseOrder) {
    throw MemoryCapExceeded("group order " + std::to_string(g.order()) + " exceeds the dense cap");
  }
  std::map<std::int64_t, Index> counts;
  Element x = g.identity();
  for (Index i = 0; i < g.order(); ++i) {
    ++counts[s_star(g, x)];
    for (std::size_t j = 0; j < g.dimension(); ++j) {
      if (++x.coords[j] < g.modulus(j)) break;
      x.coords[j] = 0;
    }
  }
  std::vector<SStarClass> out;
  for (auto [s, members] : counts) out.push_back({s, members});
  return out;
}

double crude_class_bound(std::int64_t s, int d) {
  return std::pow(0.5 * static_cast<double>(s) * static_cast<double>(s), d);
}

BigInt divisor_weighted_class_bound(Index n, std::int64_t s, int d) {
  if (s < 2) throw std::invalid_argument("class bound needs s >= 2");
  if (d < 0) throw std::invalid_argument("dimension must be >= 0");
  BigInt sum = 0;
  for (std::int64_t i = 1; i <= s; ++i) {
    if (n % i == 0) sum += i;
  }
  return boost::multiprecision::pow(sum, static_cast<unsigned>(d));
}

BigInt divisor_weighted_class_bound(const GroupSpec& g, std::int64_t s) {
  return divisor_weighted_class_bound(g.order(), s, static_cast<int>(g.dimension()));
}

bool dirichlet_window_ok(int k, Index n) {
  if (k < 1) return false;
  __int128 power = 2;
  for (int i = 0; i < k; ++i) {
    power *= 3;
    if (power > n) return false;
  }
  return true;
}

double dirichlet_lower_certificate(int k, Index n) {
  if (!dirichlet_window_ok(k, n)) {
    throw WindowViolation("certificate needs k <= log_3(n/2)");
  }
  // Largest L with 2 (2L+1)^k <= n, from a floating guess corrected exactly.
  auto fits = [k, n](std::int64_t l) {
    BigInt side = 2 * l + 1;
    return 2 * boost::multiprecision::pow(side, static_cast<unsigned>(k)) <= n;
  };
  auto l = static_cast<std::int64_t>(
      std::floor((std::pow(static_cast<double>(n) / 2.0, 1.0 / k) - 1.0) / 2.0));
  l = std::max<std::int64_t>(l, 1);
  while (!fits(l)) --l;
  while (fits(l + 1)) ++l;
  const double side = static_cast<double>(l + 1);
  return 4.0 * side * side / (std::numbers::pi * std::numbers::pi);
}

std::vector<SpectrumRow> spectrum_report(const GroupSpec& group, int k, Orientation o,
                                         int trials, Seed seed, unsigned threads) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const Index n = group.order();
  const bool window = dirichlet_window_ok(k, n);
  const std::optional<double> bound =
      window ? std::optional(dirichlet_lower_certificate(k, n)) : std::nullopt;
  const double scale = std::pow(static_cast<double>(n), 2.0 / k);

  std::vector<SpectrumRow> rows(static_cast<std::size_t>(trials));
  parallel_for(
      rows.size(),
      [&](std::size_t t) {
        SpectrumRow& row = rows[t];
        row.trial = static_cast<int>(t);
        row.seed = derive_seed(seed, cell_id(k, o), t);
        row.n = n;
        row.k = k;
        const auto summary = full_spectrum(sample_generators(group, k, o, row.seed));
        row.gap = summary.gap;
        row.abs_gap = summary.abs_gap;
        row.t_rel = summary.t_rel;
        row.t_rel_star = summary.t_rel_star;
        row.n_pow_2k = scale;
        row.ratio = summary.t_rel / scale;
        row.window_ok = window;
        row.dirichlet_bound = bound;
        row.violation = bound && summary.t_rel < *bound;
      },
      threads);
  return rows;
}

}  // namespace cayley
