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

#include "cayley/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cayley/parallel.hpp"

namespace cayley {

std::vector<std::int64_t> ProxyVector::signed_w() const {
  std::vector<std::int64_t> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = chi[i] * w[i];
  return out;
}

ProxyVector sample_proxy(int k, double L, Orientation o, Rng& rng) {
  if (k < 1) throw std::invalid_argument("sample_proxy: k must be positive");
  if (!(L > 1.0)) throw std::invalid_argument("sample_proxy: L must exceed 1");
  ProxyVector out;
  out.L = L;
  out.w.resize(k);
  out.chi.assign(k, 1);
  const double p = 1.0 / L;
  for (int i = 0; i < k; ++i) out.w[i] = rng.geometric(p);
  if (o == Orientation::kUndirected)
    for (int i = 0; i < k; ++i) out.chi[i] = rng.sign();
  return out;
}

ProxyVector sample_proxy(int k, double L, Orientation o, Seed seed) {
  Rng rng(seed);
  return sample_proxy(k, L, o, rng);
}

double TypicalitySet::base_rate() const {
  return L * (1.0 - std::log(double(k)) / std::sqrt(double(k)));
}
double TypicalitySet::norm_low() const { return k * (base_rate() + 1.0); }
double TypicalitySet::norm_high() const { return k * L; }
double TypicalitySet::max_cap() const { return 3.0 * L * std::log(double(k)); }

bool TypicalitySet::contains(std::span<const std::int64_t> w) const {
  if (w.size() != static_cast<std::size_t>(k)) return false;
  std::int64_t sum = 0, top = 0;
  for (auto x : w) {
    const std::int64_t a = x < 0 ? -x : x;
    sum += a;
    top = std::max(top, a);
  }
  return double(sum) >= norm_low() && double(sum) <= norm_high() && double(top) <= max_cap();
}

bool is_typical(const ProxyVector& w, const TypicalitySet& set) { return set.contains(w.w); }

// ---------------------------------------------------------------- ball sampler

BallSampler::BallSampler(int k, std::int64_t radius, Orientation o)
    : k_(k), radius_(radius), orientation_(o) {
  if (k < 1) throw std::invalid_argument("BallSampler: k must be positive");
  if (radius < 0) throw std::invalid_argument("BallSampler: radius must be non-negative");
  const auto R = static_cast<std::size_t>(radius);
  counts_.assign(k + 1, std::vector<BigInt>(R + 1, BigInt(1)));
  for (int j = 1; j <= k; ++j) {
    // |B_j(r)| = sum_v |B_{j-1}(r - |v|)|; running prefix sums over r.
    BigInt prefix = 0;
    for (std::size_t r = 0; r <= R; ++r) {
      prefix += counts_[j - 1][r];
      if (o == Orientation::kDirected) {
        counts_[j][r] = prefix;
      } else {
        // B_{j-1}(r) + 2 sum_{s<r} B_{j-1}(s)
        counts_[j][r] = 2 * prefix - counts_[j - 1][r];
      }
    }
  }
  if (size() < (BigInt(1) << 63)) {
    small_.assign(k + 1, std::vector<std::uint64_t>(R + 1));
    for (int j = 0; j <= k; ++j)
      for (std::size_t r = 0; r <= R; ++r)
        small_[j][r] = counts_[j][r].convert_to<std::uint64_t>();
  }
}

namespace {

// Uniform on [0, bound) by masked rejection over 64-bit limbs.
BigInt big_below(Rng& rng, const BigInt& bound) {
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  const unsigned limbs = (bits + 63) / 64;
  for (;;) {
    BigInt x = 0;
    for (unsigned i = 0; i < limbs; ++i) x = (x << 64) | BigInt(rng.next());
    x &= (BigInt(1) << bits) - 1;
    if (x < bound) return x;
  }
}

// i-th value in the enumeration order of one coordinate.
std::int64_t nth_value(std::int64_t i, Orientation o) {
  if (o == Orientation::kDirected) return i;
  return (i & 1) ? (i + 1) / 2 : -(i / 2);
}

}  // namespace

std::vector<std::int64_t> BallSampler::unrank_small(std::uint64_t u) const {
  std::vector<std::int64_t> out(k_);
  std::int64_t r = radius_;
  for (int c = 0; c < k_; ++c) {
    const auto& below = small_[k_ - c - 1];
    for (std::int64_t i = 0;; ++i) {
      const std::int64_t v = nth_value(i, orientation_);
      const std::uint64_t block = below[r - (v < 0 ? -v : v)];
      if (u < block) {
        out[c] = v;
        r -= v < 0 ? -v : v;
        break;
      }
      u -= block;
    }
  }
  return out;
}

std::vector<std::int64_t> BallSampler::unrank(BigInt u) const {
  if (u < 0 || u >= size()) throw std::out_of_range("BallSampler::unrank: rank out of range");
  if (!small_.empty()) return unrank_small(u.convert_to<std::uint64_t>());
  std::vector<std::int64_t> out(k_);
  std::int64_t r = radius_;
  for (int c = 0; c < k_; ++c) {
    const auto& below = counts_[k_ - c - 1];
    for (std::int64_t i = 0;; ++i) {
      const std::int64_t v = nth_value(i, orientation_);
      const BigInt& block = below[r - (v < 0 ? -v : v)];
      if (u < block) {
        out[c] = v;
        r -= v < 0 ? -v : v;
        break;
      }
      u -= block;
    }
  }
  return out;
}

std::vector<std::int64_t> BallSampler::operator()(Rng& rng) const {
  if (!small_.empty()) return unrank_small(rng.below(small_.back().back()));
  return unrank(big_below(rng, size()));
}

std::vector<std::int64_t> sample_uniform_ball(int k, std::int64_t radius, Orientation o,
                                              Seed seed) {
  Rng rng(seed);
  return BallSampler(k, radius, o)(rng);
}

// ---------------------------------------------------------------- gcd, image law

GcdStat gcd_stat(std::span<const std::int64_t> v, const GroupSpec& g) {
  GcdStat out;
  out.v.assign(v.begin(), v.end());
  std::int64_t common = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) out.support.push_back(i);
    common = std::gcd(common, v[i] < 0 ? -v[i] : v[i]);
  }
  out.g = std::gcd(common, g.order());
  out.g_per_factor.resize(g.dimension());
  for (std::size_t j = 0; j < g.dimension(); ++j)
    out.g_per_factor[j] = std::gcd(common, g.modulus(j));
  return out;
}

namespace {

std::int64_t reduce(std::int64_t x, std::int64_t m) {
  x %= m;
  return x < 0 ? x + m : x;
}

}  // namespace

ImageLawVerdict image_law_check(const GroupSpec& g, std::span<const std::int64_t> v) {
  const Index n = g.order();
  const std::size_t k = v.size();
  if (k == 0) throw std::invalid_argument("image_law_check: empty vector");
  double total_d = std::pow(double(n), double(k));
  if (total_d > double(kMaxImageLawEnumeration))
    throw std::length_error("image_law_check: n^k exceeds enumeration budget");
  std::int64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= n;

  const std::size_t d = g.dimension();
  // scaled[(i * n + x) * d + j] = j-th coordinate of v_i * x.
  std::vector<std::int64_t> scaled(k * n * d);
  for (std::size_t i = 0; i < k; ++i)
    for (Index x = 0; x < n; ++x) {
      const Element e = g.element_of(x);
      for (std::size_t j = 0; j < d; ++j) {
        const std::int64_t m = g.modulus(j);
        scaled[(i * n + x) * d + j] = static_cast<std::int64_t>(
            (static_cast<__int128>(reduce(v[i], m)) * e.coords[j]) % m);
      }
    }

  std::vector<std::int64_t> freq(n, 0);
  std::vector<Index> z(k, 0);
  std::vector<std::int64_t> acc(d);
  for (std::int64_t t = 0; t < total; ++t) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        acc[j] += scaled[(i * n + z[i]) * d + j];
        if (acc[j] >= g.modulus(j)) acc[j] -= g.modulus(j);
      }
    Index idx = 0;
    for (std::size_t j = 0; j < d; ++j) idx += acc[j] * g.stride(j);
    ++freq[idx];
    for (std::size_t i = 0; i < k; ++i) {
      if (++z[i] < n) break;
      z[i] = 0;
    }
  }

  ImageLawVerdict out;
  out.gamma = gcd_stat(v, g).g;
  out.subgroup_order = subgroup_gamma_order(g, out.gamma);
  const std::int64_t expected = total / out.subgroup_order;
  out.uniform = true;
  for (Index y = 0; y < n; ++y) {
    const Element e = g.element_of(y);
    bool member = true;
    for (std::size_t j = 0; j < d; ++j)
      if (e.coords[j] % std::gcd(out.gamma, g.modulus(j)) != 0) member = false;
    if (freq[y] != (member ? expected : 0)) {
      out.uniform = false;
      out.offending = e;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------- estimators

double auto_proxy_rate(int k, Index n, Orientation o) {
  const double rate = double(inflated_radius(k, n, o)) / k;
  return std::max(rate, 1.0 + 1e-6);
}

namespace {

struct PairDraw {
  bool accepted = false;
  std::vector<std::int64_t> v;
};

class PairSource {
 public:
  PairSource(int k, const MixingParams& params) : k_(k), params_(params) {
    if (params.regime == MixingRegime::kUniformBall) {
      ball_.emplace(k, params.radius, params.orientation);
    } else {
      if (!(params.L > 1.0)) throw std::invalid_argument("mixing: L must exceed 1");
      typical_ = TypicalitySet{k, params.L};
    }
  }

  PairDraw draw(Rng& rng) const {
    PairDraw out;
    out.v.resize(k_);
    if (ball_) {
      const auto a = (*ball_)(rng);
      const auto b = (*ball_)(rng);
      for (int i = 0; i < k_; ++i) out.v[i] = a[i] - b[i];
      out.accepted = true;
      return out;
    }
    const auto a = sample_proxy(k_, params_.L, params_.orientation, rng);
    const auto b = sample_proxy(k_, params_.L, params_.orientation, rng);
    for (int i = 0; i < k_; ++i) out.v[i] = a.chi[i] * a.w[i] - b.chi[i] * b.w[i];
    out.accepted = is_typical(a, typical_) && is_typical(b, typical_);
    return out;
  }

 private:
  int k_;
  MixingParams params_;
  std::optional<BallSampler> ball_;
  TypicalitySet typical_;
};

// V . Z = 0 for fresh uniform Z in G^k.
bool hits_identity(const GroupSpec& g, std::span<const std::int64_t> v, Rng& rng) {
  const std::size_t d = g.dimension();
  std::vector<__int128> acc(d, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Element z = g.element_of(static_cast<Index>(rng.below(g.order())));
    for (std::size_t j = 0; j < d; ++j) {
      const std::int64_t m = g.modulus(j);
      acc[j] = (acc[j] + static_cast<__int128>(reduce(v[i], m)) * z.coords[j]) % m;
    }
  }
  return std::all_of(acc.begin(), acc.end(), [](__int128 x) { return x == 0; });
}

constexpr std::size_t kChunks = 256;

template <typename Partial, typename Body>
std::vector<Partial> run_chunks(std::int64_t trials, unsigned threads, Body&& body) {
  const std::size_t chunks = std::min<std::size_t>(kChunks, static_cast<std::size_t>(trials));
  std::vector<Partial> parts(chunks);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        const std::int64_t lo = trials * static_cast<std::int64_t>(c) / chunks;
        const std::int64_t hi = trials * static_cast<std::int64_t>(c + 1) / chunks;
        for (std::int64_t t = lo; t < hi; ++t) body(parts[c], t);
      },
      threads);
  return parts;
}

}  // namespace

CollisionEstimate collision_estimate(const GroupSpec& g, int k, const MixingParams& params,
                                     std::int64_t trials, Seed seed, unsigned threads) {
  if (trials < 1) throw std::invalid_argument("collision_estimate: trials must be positive");
  const PairSource source(k, params);
  struct Partial {
    std::int64_t accepted = 0, hits = 0;
    std::map<std::int64_t, std::int64_t> hist;
  };
  auto parts = run_chunks<Partial>(trials, threads, [&](Partial& p, std::int64_t t) {
    Rng rng(derive_seed(seed, kMixingStream, static_cast<std::uint64_t>(t)));
    const auto pair = source.draw(rng);
    if (!pair.accepted) return;
    ++p.accepted;
    ++p.hist[gcd_stat(pair.v, g).g];
    if (hits_identity(g, pair.v, rng)) ++p.hits;
  });

  CollisionEstimate out;
  out.trials = trials;
  for (const auto& p : parts) {
    out.accepted += p.accepted;
    out.collisions += p.hits;
    for (const auto& [key, count] : p.hist) out.gcd_histogram[key] += count;
  }
  if (out.accepted == 0) throw std::runtime_error("collision_estimate: no typical samples");
  const double n = double(g.order());
  const double phat = double(out.collisions) / double(out.accepted);
  out.estimate = n * phat - 1.0;
  out.std_error = n * std::sqrt(phat * (1.0 - phat) / double(out.accepted));
  out.typical_fraction = double(out.accepted) / double(trials);
  return out;
}

GcdExpectation gcd_power_expectation(const GroupSpec& g, int k, const MixingParams& params,
                                     std::int64_t trials, Seed seed, unsigned threads) {
  if (trials < 1) throw std::invalid_argument("gcd_power_expectation: trials must be positive");
  const PairSource source(k, params);
  const int d = static_cast<int>(g.min_generators());
  struct Partial {
    std::int64_t accepted = 0;
    double sum = 0.0, sum_sq = 0.0;
    std::map<std::size_t, SupportBreakdown> by_support;
  };
  auto parts = run_chunks<Partial>(trials, threads, [&](Partial& p, std::int64_t t) {
    Rng rng(derive_seed(seed, kMixingStream, static_cast<std::uint64_t>(t)));
    const auto pair = source.draw(rng);
    if (!pair.accepted) return;
    ++p.accepted;
    const auto stat = gcd_stat(pair.v, g);
    const double x = stat.support.empty() ? 0.0 : std::pow(double(stat.g), d);
    p.sum += x;
    p.sum_sq += x * x;
    auto& slot = p.by_support[stat.support.size()];
    ++slot.count;
    slot.sum += x;
  });

  GcdExpectation out;
  out.trials = trials;
  out.d = d;
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& p : parts) {
    out.accepted += p.accepted;
    sum += p.sum;
    sum_sq += p.sum_sq;
    for (const auto& [size, b] : p.by_support) {
      out.by_support[size].count += b.count;
      out.by_support[size].sum += b.sum;
    }
  }
  if (out.accepted == 0) throw std::runtime_error("gcd_power_expectation: no typical samples");
  const double a = double(out.accepted);
  out.estimate = sum / a;
  const double var = std::max(0.0, sum_sq / a - out.estimate * out.estimate);
  out.std_error = std::sqrt(var / a);
  return out;
}

}  // namespace cayley
