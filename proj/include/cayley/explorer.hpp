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

#ifndef CAYLEY_EXPLORER_HPP
#define CAYLEY_EXPLORER_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cayley/group.hpp"
#include "cayley/lattice.hpp"
#include "cayley/random.hpp"

namespace cayley {

/// A multiset of k generators of a group. Duplicates and the identity are
/// kept: they add parallel edges or loops, which change spectra but not
/// distances.
struct GeneratorSet {
  GroupSpec group;
  std::vector<Element> gens;
  Orientation orientation = Orientation::kUndirected;
  Seed seed = 0;

  int k() const { return static_cast<int>(gens.size()); }
};

/// k iid uniform elements: gens[i] = element_of(Rng(seed).below(n)), in order.
GeneratorSet sample_generators(const GroupSpec& group, int k, Orientation o, Seed seed);

/// Wraps explicit generators after checking each belongs to the group.
GeneratorSet make_generator_set(const GroupSpec& group, std::vector<Element> gens,
                                Orientation o);

/// Graph distances from the identity, as computed by distance_profile.
class DistanceProfile {
 public:
  static constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

  Index order() const { return order_; }
  Index reached() const { return ball_sizes_.back(); }
  bool connected() const { return reached() == order_; }
  /// Distance of element x from the identity, or kUnreached.
  std::uint32_t distance(Index x) const;
  /// ball_sizes()[r] = |B(r)|, the number of elements within distance r.
  std::span<const Index> ball_sizes() const { return ball_sizes_; }
  /// Largest finite distance.
  std::uint32_t eccentricity() const { return static_cast<std::uint32_t>(ball_sizes_.size() - 1); }

 private:
  friend DistanceProfile distance_profile(const GeneratorSet& gens);

  Index order_ = 0;
  // Distances live in bytes (255 = unreached) until some distance reaches 255.
  std::vector<std::uint8_t> narrow_;
  std::vector<std::uint32_t> wide_;
  std::vector<Index> ball_sizes_;
};

/// Breadth-first search of the Cayley graph from the identity. Neighbours of
/// x are x + Z_i (directed) or x +- Z_i (undirected). O(n k) time, O(n)
/// memory; throws MemoryCapExceeded when n > kMaxDenseOrder.
DistanceProfile distance_profile(const GeneratorSet& gens);

/// min{r : |B(r)| >= beta n}. Throws UnreachableThreshold when the generated
/// subgroup is smaller than beta n, std::invalid_argument unless 0 < beta < 1.
std::uint32_t typical_distance(const DistanceProfile& profile, double beta);

/// Maximal distance, or nullopt when the generators do not generate the group.
std::optional<std::uint32_t> diameter(const DistanceProfile& profile);

/// Distances in the L_q word metric: the cost of x is the least sum |w_i|^q
/// over lattice vectors w with w . Z = x (w >= 0 for directed sets).
struct LqDistanceProfile {
  unsigned q = 2;
  /// Exact least cost per element, or -1 when not reached within budget.
  std::vector<std::int64_t> cost;
  Index reached = 0;
  /// Lattice vectors expanded.
  std::int64_t expanded = 0;
  /// Set when the budget ran out before every element was reached.
  bool partial = false;

  /// cost^{1/q}, or +infinity when unreached.
  double distance(Index x) const;
  /// Least L_q radius covering a beta-fraction; nullopt when the explored
  /// part does not cover it.
  std::optional<double> typical_distance(double beta) const;
};

/// Best-first enumeration of lattice vectors in order of sum |w_i|^q, each
/// generated once from a canonical parent; the first vector to reach an
/// element gives its exact distance. `budget` bounds the vectors expanded.
LqDistanceProfile lq_distance_profile(const GeneratorSet& gens, unsigned q, std::int64_t budget);

/// One (trial, beta) line of a concentration experiment.
struct DistanceRow {
  int trial = 0;
  Index n = 0;
  int k = 0;
  Orientation orientation = Orientation::kUndirected;
  double beta = 0.0;
  std::uint32_t d_beta = 0;
  std::int64_t lower_bound_radius = 0;
  std::optional<std::uint32_t> diameter;
  bool connected = false;
  double predicted = 0.0;
  double ratio = 0.0;
};

struct TrialResult {
  int trial = 0;
  Seed seed = 0;
  std::vector<DistanceRow> rows;
  std::optional<std::uint32_t> diameter;
  bool connected = false;
  std::optional<std::uint32_t> half_distance;  // D(1/2) when defined
  /// Failed deterministic checks: D(beta) below the lattice-ball radius, a
  /// ball larger than the lattice ball, or the D(1/2) diameter sandwich.
  int bound_violations = 0;
  std::optional<std::string> error;
};

struct ConcentrationReport {
  Index n = 0;
  int k = 0;
  Orientation orientation = Orientation::kUndirected;
  Regime regime = Regime::kSmallK;
  double predicted = 0.0;
  std::vector<double> betas;
  /// min{R : |B_k(R)| >= beta n} per beta.
  std::vector<std::int64_t> lower_bound_radius;
  std::vector<TrialResult> trials;

  int bound_violations() const;
  int errors() const;
};

/// Prediction used for ratios: R_0 for small k, alpha_lambda k for
/// k of order log n, the large-k formula otherwise.
double concentration_prediction(int k, Index n, Orientation o, Regime regime);

/// Experiment cell identifier used for seed derivation.
constexpr std::uint64_t cell_id(int k, Orientation o) {
  return (static_cast<std::uint64_t>(k) << 1) | (o == Orientation::kDirected ? 1u : 0u);
}

/// Samples `trials` generator sets (trial t uses derive_seed(seed,
/// cell_id(k, o), t)) and measures D(beta) for each beta and the diameter.
ConcentrationReport concentration_report(const GroupSpec& group, int k, Orientation o,
                                         int trials, std::span<const double> betas,
                                         Seed seed, unsigned threads = 0);

}  // namespace cayley

#endif  // CAYLEY_EXPLORER_HPP
