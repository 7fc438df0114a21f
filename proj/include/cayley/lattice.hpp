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

#ifndef CAYLEY_LATTICE_HPP
#define CAYLEY_LATTICE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string_view>

#include "cayley/group.hpp"

namespace cayley {

using BigInt = boost::multiprecision::cpp_int;

/// UNDIRECTED walks the full lattice Z^k (ball B^-), DIRECTED the orthant
/// Z_+^k (ball B^+).
enum class Orientation { kUndirected, kDirected };

std::string_view to_string(Orientation o);
/// Accepts "undirected" / "directed".
Orientation parse_orientation(std::string_view text);

/// L_q norm index, q in {1, 2, ...} or infinity.
class Norm {
 public:
  static constexpr Norm l(unsigned q) { return Norm(q); }
  static constexpr Norm infinity() { return Norm(0); }

  constexpr bool is_infinite() const { return q_ == 0; }
  /// Exponent for finite norms; undefined for infinity.
  constexpr unsigned q() const { return q_; }
  /// q as a real, +inf for the max-norm.
  constexpr double exponent() const {
    return q_ == 0 ? std::numeric_limits<double>::infinity() : q_;
  }

  friend constexpr bool operator==(Norm, Norm) = default;

 private:
  constexpr explicit Norm(unsigned q) : q_(q) {}
  unsigned q_;
};

/// Accepts "inf" or a positive integer.
Norm parse_norm(std::string_view text);

BigInt binomial(std::int64_t n, std::int64_t r);

/// Natural log of a positive big integer, accurate to double precision.
double log_big(const BigInt& x);

/// |B_k(R)| in the L_1 norm: C(R+k, k) directed, the Delannoy number
/// sum_i 2^i C(k,i) C(R,i) undirected.
BigInt count_ball_l1(int k, std::int64_t radius, Orientation o);

/// |{w : sum |w_i|^q <= R^q}|, or max |w_i| <= R for q = infinity.
/// The threshold floor(R^q) is evaluated exactly from the binary value of R.
/// Throws std::length_error when floor(R^q) exceeds kMaxLqThreshold.
BigInt count_ball_lq(int k, double radius, Norm norm, Orientation o);
inline constexpr std::int64_t kMaxLqThreshold = 5'000'000;

/// |S_{k,1}(R) intersected with B_{k,inf}(1)|: C(k,R) directed, 2^R C(k,R)
/// undirected, zero when R > k.
BigInt count_sphere_linf_cap(int k, std::int64_t radius, Orientation o);

/// Smallest integer R with |B_k(R)| >= target under the given norm.
std::int64_t min_radius(int k, const BigInt& target, Orientation o,
                        Norm norm = Norm::l(1));

/// Slowly diverging inflation omega = max{(log k)^2, k / n^{1/(2k)}}.
double omega(int k, double n);

/// R_0: the least R with |B_k(R)| >= ceil(n e^omega).
std::int64_t inflated_radius(int k, Index n, Orientation o);
std::int64_t inflated_radius(int k, const BigInt& n, Orientation o);

/// The least R with C(k, R) >= n. Throws NoSolution when no R exists.
std::int64_t binomial_radius(int k, const BigInt& n);

/// k n^{1/k} / (2e) undirected, k n^{1/k} / e directed.
double predicted_radius_small_k(int k, double n, Orientation o);

/// Exponential growth rate c(a) = lim log|B_k(ak)| / k.
double growth_rate(double a, Orientation o);

/// The unique alpha with growth_rate(alpha) = 1 / lambda.
double alpha_lambda(double lambda, Orientation o);

/// rho/(rho-1) * log n / log k with rho = log k / log log n; requires rho > 1.
double predicted_radius_large_k(int k, double n);

/// C^-_q = 2 Gamma(1/q + 1) (q e)^{1/q}, C^+_q = C^-_q / 2; q >= 1 or +inf.
double lq_constant(double q, Orientation o);

/// k^{1/q} n^{1/k} / C_q.
double predicted_radius_lq(int k, double n, double q, Orientation o);

enum class Regime { kSmallK, kLogK, kLargeK };
std::string_view to_string(Regime r);

/// Heuristic regime thresholds on k / log n.
inline constexpr double kSmallKThreshold = 0.2;
inline constexpr double kLargeKThreshold = 5.0;
Regime select_regime(int k, double n);

struct PredictedRadius {
  Regime regime;
  double value;
  int k;
  Index n;
  Orientation orientation;
  double q;
};

/// Closed-form prediction for the typical distance in the regime selected by
/// k / log n: k^{1/q} n^{1/k} / C_q for small k, alpha_lambda * k with
/// lambda = k / log n in between, the large-k formula otherwise.
PredictedRadius predict_typical_distance(int k, Index n, Orientation o,
                                         Norm norm = Norm::l(1));

/// Whether (k, G) satisfies (k - d - 1)/k >= 5k/log n + 2 d log log k / log n.
bool satisfies_small_k_hypothesis(int k, const GroupSpec& g);

}  // namespace cayley

#endif  // CAYLEY_LATTICE_HPP
