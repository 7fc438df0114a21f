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

#ifndef CAYLEY_GROUP_HPP
#define CAYLEY_GROUP_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cayley {

/// Mixed-radix element index in [0, n).
using Index = std::int64_t;

/// Largest group order accepted by make_group (arithmetic width).
inline constexpr Index kMaxGroupOrder = Index{1} << 62;

/// Largest group order for which per-element tables (distances, spectra)
/// are built.
inline constexpr Index kMaxDenseOrder = Index{1} << 27;

/// A group element as a residue vector in the user-supplied decomposition.
struct Element {
  std::vector<std::int64_t> coords;

  friend bool operator==(const Element&, const Element&) = default;
};

/// A finite Abelian group G = Z_{m_1} + ... + Z_{m_d}.
///
/// Elements live in the decomposition exactly as given; the invariant-factor
/// decomposition t_1 | t_2 | ... is kept as metadata and determines the
/// minimal number of generators d(G) and the minimal side-length m_*(G).
class GroupSpec {
 public:
  /// Throws std::invalid_argument on a modulus < 2 or an empty list and
  /// std::overflow_error when the order exceeds kMaxGroupOrder.
  explicit GroupSpec(std::vector<std::int64_t> moduli);

  std::span<const std::int64_t> moduli() const { return moduli_; }
  std::int64_t modulus(std::size_t j) const { return moduli_[j]; }
  /// Number of cyclic factors in the stored decomposition.
  std::size_t dimension() const { return moduli_.size(); }
  Index order() const { return order_; }

  std::span<const std::int64_t> invariant_factors() const { return invariant_factors_; }
  std::size_t min_generators() const { return invariant_factors_.size(); }
  std::int64_t min_side_length() const { return min_side_length_; }

  bool contains(const Element& a) const;
  Element identity() const { return Element{std::vector<std::int64_t>(dimension(), 0)}; }

  /// index = sum_j x_j * prod_{j' < j} m_{j'}.
  Index index_of(const Element& a) const;
  Element element_of(Index i) const;
  /// Stride of coordinate j in the mixed-radix index.
  Index stride(std::size_t j) const { return strides_[j]; }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.moduli_ == b.moduli_;
  }

 private:
  std::vector<std::int64_t> moduli_;
  std::vector<Index> strides_;
  Index order_ = 1;
  std::vector<std::int64_t> invariant_factors_;
  std::int64_t min_side_length_ = 1;
};

GroupSpec make_group(std::vector<std::int64_t> moduli);

/// Parses "4,6", "2^16" (sixteen copies of Z_2) or "2^3,5,25". Whitespace,
/// empty fields and signs are rejected with std::invalid_argument.
GroupSpec parse_group(std::string_view text);

/// Inverse of parse_group without shorthand, e.g. "4,6".
std::string format_group(const GroupSpec& g);

/// Invariant factors t_1 | ... | t_r (ascending) of Z_{m_1} + ... + Z_{m_d}:
/// per-prime exponent lists sorted descending and recombined by CRT.
std::vector<std::int64_t> invariant_factors(std::span<const std::int64_t> moduli);

/// Largest achievable least modulus over all cyclic decompositions.
std::int64_t min_side_length(std::span<const std::int64_t> moduli);

/// Prime factorisation by trial division, as (prime, exponent) pairs.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t m);

Element add(const GroupSpec& g, const Element& a, const Element& b);
Element neg(const GroupSpec& g, const Element& a);

/// |gamma G| = prod_j m_j / gcd(gamma, m_j).
Index subgroup_gamma_order(const GroupSpec& g, std::int64_t gamma);

}  // namespace cayley

#endif  // CAYLEY_GROUP_HPP
