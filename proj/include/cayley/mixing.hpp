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

#ifndef CAYLEY_MIXING_HPP
#define CAYLEY_MIXING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cayley/group.hpp"
#include "cayley/lattice.hpp"
#include "cayley/random.hpp"

namespace cayley {

/// W ~ Geom(1/L)^k on {1, 2, ...} with signs chi (all +1 when directed).
struct ProxyVector {
  std::vector<std::int64_t> w;
  std::vector<int> chi;
  double L = 0.0;

  /// chi_i w_i.
  std::vector<std::int64_t> signed_w() const;
};

ProxyVector sample_proxy(int k, double L, Orientation o, Rng& rng);
ProxyVector sample_proxy(int k, double L, Orientation o, Seed seed);

/// Typical geometric vectors: L_0 + 1 <= |w|_1 / k <= L and
/// max_i w_i <= 3 L log k, where L_0 = L (1 - log k / sqrt k).
struct TypicalitySet {
  int k = 1;
  double L = 2.0;

  double base_rate() const;   // L_0
  double norm_low() const;    // k (L_0 + 1)
  double norm_high() const;   // k L
  double max_cap() const;     // 3 L log k
  bool contains(std::span<const std::int64_t> w) const;
};

bool is_typical(const ProxyVector& w, const TypicalitySet& set);

/// Exactly uniform points of B_k(R) (Z^k or Z_+^k, L_1 norm).
///
/// A uniform rank u < |B_k(R)| is unranked coordinate by coordinate: the
/// first coordinate takes value v with probability |B_{k-1}(R - |v|)| / |B_k(R)|,
/// values ordered 0, 1, -1, 2, -2, ... (0, 1, 2, ... when directed).
class BallSampler {
 public:
  BallSampler(int k, std::int64_t radius, Orientation o);

  int dimension() const { return k_; }
  std::int64_t radius() const { return radius_; }
  Orientation orientation() const { return orientation_; }
  const BigInt& size() const { return counts_.back().back(); }

  std::vector<std::int64_t> operator()(Rng& rng) const;
  /// The point of rank u in [0, size()).
  std::vector<std::int64_t> unrank(BigInt u) const;

 private:
  std::vector<std::int64_t> unrank_small(std::uint64_t u) const;

  int k_;
  std::int64_t radius_;
  Orientation orientation_;
  // counts_[j][r] = |B_j(r)|, with |B_0(r)| = 1.
  std::vector<std::vector<BigInt>> counts_;
  // Same table in 64 bits when |B_k(R)| fits; empty otherwise.
  std::vector<std::vector<std::uint64_t>> small_;
};

std::vector<std::int64_t> sample_uniform_ball(int k, std::int64_t radius, Orientation o,
                                              Seed seed);

/// gcd statistics of a lattice vector against G = sum Z_{m_j}.
struct GcdStat {
  std::vector<std::int64_t> v;
  /// gcd(v_1, ..., v_k, n); equals n when v = 0.
  std::int64_t g = 0;
  /// gcd(v_1, ..., v_k, m_j) per factor.
  std::vector<std::int64_t> g_per_factor;
  /// {i : v_i != 0}.
  std::vector<std::size_t> support;
};

GcdStat gcd_stat(std::span<const std::int64_t> v, const GroupSpec& g);

struct ImageLawVerdict {
  bool uniform = false;
  std::int64_t gamma = 0;
  Index subgroup_order = 0;
  /// An element whose frequency is wrong, on failure.
  std::optional<Element> offending;
};

/// Tabulates v . Z over all Z in G^k (k = v.size()) and checks the law is
/// exactly uniform on gamma G with gamma = gcd(v, n). Throws
/// std::length_error when n^k > kMaxImageLawEnumeration.
ImageLawVerdict image_law_check(const GroupSpec& g, std::span<const std::int64_t> v);
inline constexpr std::int64_t kMaxImageLawEnumeration = 10'000'000;

enum class MixingRegime { kGeometricProxy, kUniformBall };

struct MixingParams {
  MixingRegime regime = MixingRegime::kUniformBall;
  Orientation orientation = Orientation::kUndirected;
  /// Geometric rate, proxy regime.
  double L = 2.0;
  /// Ball radius, uniform-ball regime.
  std::int64_t radius = 0;
};

/// L = R_0 / k, kept above 1.
double auto_proxy_rate(int k, Index n, Orientation o);

struct CollisionEstimate {
  /// n P(V . Z = 0 | accepted) - 1 with V = W - W' (proxy: chi W - chi' W',
  /// accepted iff both W and W' are typical).
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
  std::int64_t accepted = 0;
  std::int64_t collisions = 0;
  double typical_fraction = 0.0;
  /// Frequency of gcd(V, n) over accepted pairs.
  std::map<std::int64_t, std::int64_t> gcd_histogram;
};

/// Monte Carlo, with fresh generators Z for every trial. Trial t draws from
/// derive_seed(seed, kMixingStream, t). Throws std::runtime_error when no
/// pair is accepted.
CollisionEstimate collision_estimate(const GroupSpec& g, int k, const MixingParams& params,
                                     std::int64_t trials, Seed seed, unsigned threads = 0);

struct SupportBreakdown {
  std::int64_t count = 0;
  /// Sum of g^d over pairs with this support size.
  double sum = 0.0;
};

struct GcdExpectation {
  /// E[g^d 1{V != 0} | accepted], d = d(G).
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
  std::int64_t accepted = 0;
  int d = 0;
  /// Keyed by |I| = |{i : V_i != 0}|.
  std::map<std::size_t, SupportBreakdown> by_support;
};

/// Uses the same per-trial streams as collision_estimate, so both see the
/// same difference vectors V.
GcdExpectation gcd_power_expectation(const GroupSpec& g, int k, const MixingParams& params,
                                     std::int64_t trials, Seed seed, unsigned threads = 0);

inline constexpr std::uint64_t kMixingStream = 0x6d6978696e67ULL;

}  // namespace cayley

#endif  // CAYLEY_MIXING_HPP
