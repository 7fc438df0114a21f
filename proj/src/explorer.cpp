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

#include "cayley/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "cayley/errors.hpp"
#include "cayley/parallel.hpp"

namespace cayley {

namespace {

// Adds precomputed steps to mixed-radix indices. Cyclic groups and
// elementary Abelian 2-groups get index arithmetic without decoding.
class Stepper {
 public:
  Stepper(const GroupSpec& g, const std::vector<Element>& steps) : group_(g) {
    const auto moduli = g.moduli();
    cyclic_ = moduli.size() == 1;
    binary_ = std::all_of(moduli.begin(), moduli.end(), [](auto m) { return m == 2; });
    for (const auto& s : steps) {
      indices_.push_back(g.index_of(s));
      coords_.insert(coords_.end(), s.coords.begin(), s.coords.end());
    }
  }

  template <typename F>
  void for_each_neighbor(Index x, std::vector<std::int64_t>& scratch, F&& visit) const {
    if (cyclic_) {
      const Index n = group_.order();
      for (Index s : indices_) {
        Index y = x + s;
        if (y >= n) y -= n;
        visit(y);
      }
      return;
    }
    if (binary_) {
      for (Index s : indices_) visit(x ^ s);
      return;
    }
    const std::size_t d = group_.dimension();
    scratch.resize(d);
    Index rest = x;
    for (std::size_t j = 0; j < d; ++j) {
      scratch[j] = rest % group_.modulus(j);
      rest /= group_.modulus(j);
    }
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      const std::int64_t* s = coords_.data() + i * d;
      Index y = 0;
      for (std::size_t j = 0; j < d; ++j) {
        std::int64_t c = scratch[j] + s[j];
        if (c >= group_.modulus(j)) c -= group_.modulus(j);
        y += c * group_.stride(j);
      }
      visit(y);
    }
  }

 private:
  const GroupSpec& group_;
  bool cyclic_ = false;
  bool binary_ = false;
  std::vector<Index> indices_;
  std::vector<std::int64_t> coords_;
};

std::vector<Element> walk_steps(const GeneratorSet& gs) {
  std::vector<Element> steps;
  for (const auto& z : gs.gens) {
    steps.push_back(z);
    if (gs.orientation == Orientation::kUndirected) steps.push_back(neg(gs.group, z));
  }
  // Repeated steps are parallel edges; one copy suffices for distances.
  std::sort(steps.begin(), steps.end(),
            [](const Element& a, const Element& b) { return a.coords < b.coords; });
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

// Level-synchronous BFS. Returns false if a distance would hit `unreached`.
template <typename Dist>
bool bfs(const Stepper& stepper, Index n, Dist unreached, std::vector<Dist>& dist,
         std::vector<Index>& ball_sizes) {
  dist.assign(static_cast<std::size_t>(n), unreached);
  ball_sizes.assign(1, 1);
  dist[0] = 0;
  std::vector<Index> frontier{0}, next;
  std::vector<std::int64_t> scratch;
  Dist level = 0;
  while (!frontier.empty()) {
    if (static_cast<std::uint64_t>(level) + 1 >= static_cast<std::uint64_t>(unreached)) {
      return false;
    }
    const Dist step = level + 1;
    next.clear();
    for (Index x : frontier) {
      stepper.for_each_neighbor(x, scratch, [&](Index y) {
        if (dist[y] == unreached) {
          dist[y] = step;
          next.push_back(y);
        }
      });
    }
    if (next.empty()) break;
    ball_sizes.push_back(ball_sizes.back() + static_cast<Index>(next.size()));
    level = step;
    frontier.swap(next);
  }
  return true;
}

std::int64_t checked_pow(std::int64_t base, unsigned q) {
  std::int64_t out = 1;
  for (unsigned i = 0; i < q; ++i) {
    if (__builtin_mul_overflow(out, base, &out)) return -1;
  }
  return out;
}

}  // namespace

GeneratorSet sample_generators(const GroupSpec& group, int k, Orientation o, Seed seed) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  Rng rng(seed);
  GeneratorSet out{group, {}, o, seed};
  out.gens.reserve(static_cast<std::size_t>(k));
  const auto n = static_cast<std::uint64_t>(group.order());
  for (int i = 0; i < k; ++i) {
    out.gens.push_back(group.element_of(static_cast<Index>(rng.below(n))));
  }
  return out;
}

GeneratorSet make_generator_set(const GroupSpec& group, std::vector<Element> gens,
                                Orientation o) {
  if (gens.empty()) throw std::invalid_argument("generator set must be non-empty");
  for (const auto& z : gens) {
    if (!group.contains(z)) throw std::out_of_range("generator not in group");
  }
  return GeneratorSet{group, std::move(gens), o, 0};
}

std::uint32_t DistanceProfile::distance(Index x) const {
  if (x < 0 || x >= order_) throw std::out_of_range("index out of range");
  if (!narrow_.empty()) {
    const std::uint8_t d = narrow_[static_cast<std::size_t>(x)];
    return d == 0xff ? kUnreached : d;
  }
  return wide_[static_cast<std::size_t>(x)];
}

DistanceProfile distance_profile(const GeneratorSet& gs) {
  const Index n = gs.group.order();
  if (n > kMaxDenseOrder) {
    throw MemoryCapExceeded("group order " + std::to_string(n) + " exceeds the dense cap");
  }
  const Stepper stepper(gs.group, walk_steps(gs));
  DistanceProfile out;
  out.order_ = n;
  if (!bfs<std::uint8_t>(stepper, n, 0xff, out.narrow_, out.ball_sizes_)) {
    out.narrow_.clear();
    out.narrow_.shrink_to_fit();
    bfs<std::uint32_t>(stepper, n, DistanceProfile::kUnreached, out.wide_, out.ball_sizes_);
  }
  return out;
}

std::uint32_t typical_distance(const DistanceProfile& profile, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  const double threshold = beta * static_cast<double>(profile.order());
  const auto sizes = profile.ball_sizes();
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    if (static_cast<double>(sizes[r]) >= threshold) return static_cast<std::uint32_t>(r);
  }
  throw UnreachableThreshold(profile.reached(), profile.order(), beta);
}

std::optional<std::uint32_t> diameter(const DistanceProfile& profile) {
  if (!profile.connected()) return std::nullopt;
  return profile.eccentricity();
}

double LqDistanceProfile::distance(Index x) const {
  const std::int64_t c = cost.at(static_cast<std::size_t>(x));
  if (c < 0) return std::numeric_limits<double>::infinity();
  return std::pow(static_cast<double>(c), 1.0 / q);
}

std::optional<double> LqDistanceProfile::typical_distance(double beta) const {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  std::vector<std::int64_t> found;
  for (std::int64_t c : cost) {
    if (c >= 0) found.push_back(c);
  }
  const double needed = std::ceil(beta * static_cast<double>(cost.size()));
  if (static_cast<double>(found.size()) < needed) return std::nullopt;
  std::sort(found.begin(), found.end());
  const auto at = static_cast<std::size_t>(std::max(needed, 1.0)) - 1;
  return std::pow(static_cast<double>(found[at]), 1.0 / q);
}

LqDistanceProfile lq_distance_profile(const GeneratorSet& gs, unsigned q, std::int64_t budget) {
  if (q < 2) throw std::invalid_argument("L_q profiles need integer q >= 2");
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  const GroupSpec& g = gs.group;
  const Index n = g.order();
  if (n > kMaxDenseOrder) {
    throw MemoryCapExceeded("group order " + std::to_string(n) + " exceeds the dense cap");
  }
  const int k = gs.k();
  const bool directed = gs.orientation == Orientation::kDirected;
  // Coordinate ranks enumerate values in order of |v|: 0, 1, 2, ... when
  // directed and 0, 1, -1, 2, -2, ... when undirected.
  auto value_of = [directed](std::int64_t rank) -> std::int64_t {
    if (directed) return rank;
    return rank % 2 == 1 ? (rank + 1) / 2 : -(rank / 2);
  };
  auto shift = [&g](Index x, const Element& z, std::int64_t times) {
    Index y = 0;
    for (std::size_t j = 0; j < g.dimension(); ++j) {
      const std::int64_t m = g.modulus(j);
      const std::int64_t xj = (x / g.stride(j)) % m;
      const auto t = static_cast<__int128>(((times % m) + m) % m) * z.coords[j];
      y += static_cast<Index>((xj + static_cast<std::int64_t>(t % m)) % m) * g.stride(j);
    }
    return y;
  };

  struct Node {
    std::int64_t cost;
    Index element;
    int last;  // highest coordinate with non-zero rank, -1 for the origin
    std::int64_t rank;
    bool operator>(const Node& o) const { return cost > o.cost; }
  };
  std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
  heap.push({0, 0, -1, 0});

  LqDistanceProfile out;
  out.q = q;
  out.cost.assign(static_cast<std::size_t>(n), -1);
  while (!heap.empty() && out.expanded < budget && out.reached < n) {
    const Node node = heap.top();
    heap.pop();
    ++out.expanded;
    auto& slot = out.cost[static_cast<std::size_t>(node.element)];
    if (slot < 0) {
      slot = node.cost;
      ++out.reached;
    }
    for (int j = std::max(node.last, 0); j < k; ++j) {
      const std::int64_t from = j == node.last ? node.rank : 0;
      const std::int64_t old_v = value_of(from), new_v = value_of(from + 1);
      const std::int64_t old_c = checked_pow(std::abs(old_v), q);
      const std::int64_t new_c = checked_pow(std::abs(new_v), q);
      if (new_c < 0) continue;
      std::int64_t cost = 0;
      if (__builtin_add_overflow(node.cost - old_c, new_c, &cost)) continue;
      heap.push({cost, shift(node.element, gs.gens[static_cast<std::size_t>(j)], new_v - old_v), j,
                 from + 1});
    }
  }
  out.partial = out.reached < n;
  return out;
}

int ConcentrationReport::bound_violations() const {
  int total = 0;
  for (const auto& t : trials) total += t.bound_violations;
  return total;
}

int ConcentrationReport::errors() const {
  return static_cast<int>(std::count_if(trials.begin(), trials.end(),
                                        [](const TrialResult& t) { return t.error.has_value(); }));
}

double concentration_prediction(int k, Index n, Orientation o, Regime regime) {
  const auto nd = static_cast<double>(n);
  switch (regime) {
    case Regime::kSmallK: return static_cast<double>(inflated_radius(k, n, o));
    case Regime::kLogK: return alpha_lambda(k / std::log(nd), o) * k;
    case Regime::kLargeK: return predicted_radius_large_k(k, nd);
  }
  return 0.0;
}

ConcentrationReport concentration_report(const GroupSpec& group, int k, Orientation o,
                                         int trials, std::span<const double> betas, Seed seed,
                                         unsigned threads) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  for (double b : betas) {
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  }
  const Index n = group.order();
  ConcentrationReport report;
  report.n = n;
  report.k = k;
  report.orientation = o;
  report.regime = select_regime(k, static_cast<double>(n));
  report.predicted = concentration_prediction(k, n, o, report.regime);
  report.betas.assign(betas.begin(), betas.end());
  for (double b : betas) {
    const auto needed = static_cast<std::int64_t>(std::ceil(b * static_cast<double>(n)));
    report.lower_bound_radius.push_back(min_radius(k, BigInt(needed), o));
  }

  report.trials.resize(static_cast<std::size_t>(trials));
  parallel_for(
      static_cast<std::size_t>(trials),
      [&](std::size_t t) {
        TrialResult& result = report.trials[t];
        result.trial = static_cast<int>(t);
        result.seed = derive_seed(seed, cell_id(k, o), t);
        try {
          const auto gens = sample_generators(group, k, o, result.seed);
          const auto profile = distance_profile(gens);
          result.connected = profile.connected();
          result.diameter = diameter(profile);

          const auto sizes = profile.ball_sizes();
          for (std::size_t r = 0; r < sizes.size(); ++r) {
            if (BigInt(sizes[r]) > count_ball_l1(k, static_cast<std::int64_t>(r), o)) {
              ++result.bound_violations;
            }
          }
          if (static_cast<double>(profile.reached()) >= 0.5 * static_cast<double>(n)) {
            result.half_distance = typical_distance(profile, 0.5);
            if (result.diameter && (*result.half_distance > *result.diameter ||
                                    *result.diameter > 2 * *result.half_distance + 1)) {
              ++result.bound_violations;
            }
          }
          for (std::size_t b = 0; b < betas.size(); ++b) {
            DistanceRow row;
            row.trial = result.trial;
            row.n = n;
            row.k = k;
            row.orientation = o;
            row.beta = betas[b];
            row.d_beta = typical_distance(profile, betas[b]);
            row.lower_bound_radius = report.lower_bound_radius[b];
            row.diameter = result.diameter;
            row.connected = result.connected;
            row.predicted = report.predicted;
            row.ratio = row.d_beta / report.predicted;
            if (row.d_beta < row.lower_bound_radius) ++result.bound_violations;
            result.rows.push_back(row);
          }
        } catch (const std::exception& e) {
          result.rows.clear();
          result.error = e.what();
        }
      },
      threads);
  return report;
}

}  // namespace cayley
