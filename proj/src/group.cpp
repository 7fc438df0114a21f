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

#include "cayley/group.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cayley {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out) || out > kMaxGroupOrder) {
    throw std::overflow_error("group order exceeds 2^62");
  }
  return out;
}

std::int64_t parse_positive(std::string_view field, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
      field.front() == '+' || field.front() == '-') {
    throw std::invalid_argument("malformed group spec '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t m) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p <= m / p; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::vector<std::int64_t> invariant_factors(std::span<const std::int64_t> moduli) {
  std::map<std::int64_t, std::vector<int>> exponents;
  for (std::int64_t m : moduli) {
    for (auto [p, e] : factorize(m)) exponents[p].push_back(e);
  }
  std::size_t rank = 0;
  for (auto& [p, es] : exponents) {
    std::sort(es.begin(), es.end(), std::greater<>());
    rank = std::max(rank, es.size());
  }
  if (rank == 0) return {1};
  // factors[0] is the largest: it collects the largest exponent of each prime.
  std::vector<std::int64_t> factors(rank, 1);
  for (const auto& [p, es] : exponents) {
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (int e = 0; e < es[i]; ++e) factors[i] *= p;
    }
  }
  std::reverse(factors.begin(), factors.end());
  return factors;
}

namespace {

// Branch and bound over assignments of prime-power parts to d cyclic factors,
// each factor taking at most one part per prime; maximises the least factor.
class SideLengthSearch {
 public:
  SideLengthSearch(std::vector<std::vector<std::int64_t>> parts, std::size_t d)
      : parts_(std::move(parts)), slots_(d, 1) {}

  std::int64_t run() {
    greedy();
    used_.assign(slots_.size(), false);
    visit(0, 0, slots_.size());
    return best_;
  }

 private:
  void greedy() {
    std::vector<std::int64_t> v(slots_.size(), 1);
    for (const auto& ps : parts_) {
      std::vector<std::size_t> order(v.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
      for (std::size_t i = 0; i < ps.size(); ++i) v[order[i]] *= ps[i];
    }
    best_ = *std::min_element(v.begin(), v.end());
  }

  // Largest value slot s could still reach.
  unsigned __int128 reach(std::size_t s, std::size_t prime, std::size_t part) const {
    unsigned __int128 x = static_cast<unsigned __int128>(slots_[s]);
    if (part < parts_[prime].size() && !used_[s]) x *= parts_[prime][part];
    for (std::size_t q = prime + 1; q < parts_.size() && x <= kCap; ++q) x *= parts_[q].front();
    return x;
  }

  void visit(std::size_t prime, std::size_t part, std::size_t last) {
    if (++nodes_ > kNodeBudget) return;
    if (prime == parts_.size()) {
      best_ = std::max(best_, *std::min_element(slots_.begin(), slots_.end()));
      return;
    }
    if (part == parts_[prime].size()) {
      const auto saved = used_;
      std::fill(used_.begin(), used_.end(), false);
      visit(prime + 1, 0, slots_.size());
      used_ = saved;
      return;
    }
    for (std::size_t s = 0; s < slots_.size(); ++s)
      if (reach(s, prime, part) <= static_cast<unsigned __int128>(best_)) return;
    const std::int64_t value = parts_[prime][part];
    const bool repeat = part > 0 && parts_[prime][part - 1] == value;
    std::vector<std::int64_t> tried;
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      if (used_[s] || (repeat && last != slots_.size() && s <= last)) continue;
      if (std::find(tried.begin(), tried.end(), slots_[s]) != tried.end()) continue;
      tried.push_back(slots_[s]);
      used_[s] = true;
      slots_[s] *= value;
      visit(prime, part + 1, s);
      slots_[s] /= value;
      used_[s] = false;
    }
  }

  static constexpr unsigned __int128 kCap = static_cast<unsigned __int128>(1) << 64;
  static constexpr std::int64_t kNodeBudget = 2'000'000;

  std::vector<std::vector<std::int64_t>> parts_;
  std::vector<std::int64_t> slots_;
  std::vector<bool> used_;
  std::int64_t best_ = 1;
  std::int64_t nodes_ = 0;
};

}  // namespace

std::int64_t min_side_length(std::span<const std::int64_t> moduli) {
  std::map<std::int64_t, std::vector<std::int64_t>> by_prime;
  for (std::int64_t m : moduli)
    for (auto [p, e] : factorize(m)) {
      std::int64_t q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      by_prime[p].push_back(q);
    }
  if (by_prime.empty()) return 1;
  std::vector<std::vector<std::int64_t>> parts;
  std::size_t d = 0;
  for (auto& [p, qs] : by_prime) {
    std::sort(qs.begin(), qs.end(), std::greater<>());
    d = std::max(d, qs.size());
    parts.push_back(qs);
  }
  // Primes with the most parts first: they constrain the search most.
  std::stable_sort(parts.begin(), parts.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return SideLengthSearch(std::move(parts), d).run();
}

GroupSpec::GroupSpec(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw std::invalid_argument("group needs at least one modulus");
  strides_.reserve(moduli_.size());
  for (std::int64_t m : moduli_) {
    if (m < 2) throw std::invalid_argument("modulus " + std::to_string(m) + " < 2");
    strides_.push_back(order_);
    order_ = checked_mul(order_, m);
  }
  invariant_factors_ = cayley::invariant_factors(moduli_);
  min_side_length_ = cayley::min_side_length(moduli_);
}

bool GroupSpec::contains(const Element& a) const {
  if (a.coords.size() != moduli_.size()) return false;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    if (a.coords[j] < 0 || a.coords[j] >= moduli_[j]) return false;
  }
  return true;
}

Index GroupSpec::index_of(const Element& a) const {
  if (!contains(a)) throw std::out_of_range("element not in group");
  Index i = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) i += a.coords[j] * strides_[j];
  return i;
}

Element GroupSpec::element_of(Index i) const {
  if (i < 0 || i >= order_) throw std::out_of_range("index out of range");
  Element a{std::vector<std::int64_t>(moduli_.size())};
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    a.coords[j] = i % moduli_[j];
    i /= moduli_[j];
  }
  return a;
}

GroupSpec make_group(std::vector<std::int64_t> moduli) { return GroupSpec(std::move(moduli)); }

GroupSpec parse_group(std::string_view text) {
  std::vector<std::int64_t> moduli;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view field = text.substr(start, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - start);
    std::size_t caret = field.find('^');
    if (caret == std::string_view::npos) {
      moduli.push_back(parse_positive(field, text));
    } else {
      std::int64_t base = parse_positive(field.substr(0, caret), text);
      std::int64_t copies = parse_positive(field.substr(caret + 1), text);
      if (copies < 1 || copies > 62) {
        throw std::invalid_argument("power count out of range in '" + std::string(text) + "'");
      }
      moduli.insert(moduli.end(), static_cast<std::size_t>(copies), base);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return GroupSpec(std::move(moduli));
}

std::string format_group(const GroupSpec& g) {
  std::string out;
  for (std::int64_t m : g.moduli()) {
    if (!out.empty()) out += ',';
    out += std::to_string(m);
  }
  return out;
}

Element add(const GroupSpec& g, const Element& a, const Element& b) {
  if (!g.contains(a) || !g.contains(b)) throw std::out_of_range("element not in group");
  Element c = a;
  for (std::size_t j = 0; j < g.dimension(); ++j) {
    c.coords[j] += b.coords[j];
    if (c.coords[j] >= g.modulus(j)) c.coords[j] -= g.modulus(j);
  }
  return c;
}

Element neg(const GroupSpec& g, const Element& a) {
  if (!g.contains(a)) throw std::out_of_range("element not in group");
  Element c = a;
  for (std::size_t j = 0; j < g.dimension(); ++j) {
    if (c.coords[j] != 0) c.coords[j] = g.modulus(j) - c.coords[j];
  }
  return c;
}

Index subgroup_gamma_order(const GroupSpec& g, std::int64_t gamma) {
  if (gamma < 1) throw std::invalid_argument("gamma must be >= 1");
  Index out = 1;
  for (std::int64_t m : g.moduli()) out *= m / std::gcd(gamma, m);
  return out;
}

}  // namespace cayley
