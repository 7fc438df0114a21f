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

#ifndef CAYLEY_SPECTRUM_HPP
#define CAYLEY_SPECTRUM_HPP

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <vector>

#include "cayley/explorer.hpp"
#include "cayley/group.hpp"
#include "cayley/lattice.hpp"

namespace cayley {

/// Eigenvalue of the symmetrised walk P = (1/2k) sum_i (delta_{Z_i} + delta_{-Z_i})
/// at the character indexed by x:
///
///   lambda_x = (1/k) sum_i cos(2 pi sum_j x_j Z_i^j / m_j).
///
/// The phase is reduced exactly, over the common denominator lcm(m_j), before
/// the cosine is taken. Directed generator sets are symmetrised.
double eigenvalue_at(const GeneratorSet& gens, const Element& x);

struct SpectrumSummary {
  /// lambda_x indexed by mixed-radix element index.
  Eigen::ArrayXd eigenvalues;
  /// min_{x != 0} (1 - lambda_x) and its argmin.
  double gap = 0.0;
  Index argmin = 0;
  /// min_{x != 0} (1 - |lambda_x|) and its argmin.
  double abs_gap = 0.0;
  Index abs_argmin = 0;
  /// 1/gap and 1/abs_gap; +infinity when the gap is zero.
  double t_rel = 0.0;
  double t_rel_star = 0.0;
};

/// All n character eigenvalues in O(n k) after an O(k d) set-up.
/// Throws MemoryCapExceeded when n > kMaxDenseOrder.
SpectrumSummary full_spectrum(const GeneratorSet& gens);

/// s_*(x) = max_j m_j / gcd(x_j, m_j); equals 1 only at the identity.
std::int64_t s_star(const GroupSpec& g, const Element& x);

struct SStarClass {
  std::int64_t s = 0;
  Index members = 0;
};

/// |A(s)| = |{x : s_*(x) = s}| for every s that occurs, ascending in s.
std::vector<SStarClass> class_sizes(const GroupSpec& g);

/// (s^2 / 2)^d, the crude bound on |A(s)|.
double crude_class_bound(std::int64_t s, int d);

/// (sum_{i <= s, i | n} i)^d, the divisor-weighted bound on |A(s)|. The group
/// overload takes d as the number of moduli in the stored decomposition.
BigInt divisor_weighted_class_bound(Index n, std::int64_t s, int d);
BigInt divisor_weighted_class_bound(const GroupSpec& g, std::int64_t s);

/// k <= log_3(n/2), checked in integers as 2 * 3^k <= n.
bool dirichlet_window_ok(int k, Index n);

/// With L the largest integer with (2L+1)^k <= n/2, returns 4 (L+1)^2 / pi^2:
/// a lower bound on t_rel for every k-generator undirected Cayley graph of an
/// Abelian group of order n. Throws WindowViolation outside the window.
double dirichlet_lower_certificate(int k, Index n);

/// One sampled graph in a spectral experiment.
struct SpectrumRow {
  int trial = 0;
  Seed seed = 0;
  Index n = 0;
  int k = 0;
  double gap = 0.0;
  double abs_gap = 0.0;
  double t_rel = 0.0;
  double t_rel_star = 0.0;
  double n_pow_2k = 0.0;  // n^{2/k}
  double ratio = 0.0;     // t_rel / n^{2/k}
  std::optional<double> dirichlet_bound;
  bool window_ok = false;
  /// t_rel below the certificate inside its window.
  bool violation = false;
};

/// Spectra of `trials` sampled generator sets, seeded exactly as
/// concentration_report so trial t describes the same graph.
std::vector<SpectrumRow> spectrum_report(const GroupSpec& group, int k, Orientation o,
                                         int trials, Seed seed, unsigned threads = 0);

}  // namespace cayley

#endif  // CAYLEY_SPECTRUM_HPP
