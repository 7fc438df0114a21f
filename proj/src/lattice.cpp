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

#include "cayley/lattice.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayley/errors.hpp"

namespace cayley {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

void require_dimension(int k) {
  if (k < 1) throw std::invalid_argument("lattice dimension k must be >= 1");
}

double xlogx(double x) { return x <= 0.0 ? 0.0 : x * std::log(x); }

// Natural-log binary entropy.
double entropy(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return -xlogx(t) - xlogx(1.0 - t);
}

// floor(radius^q) computed exactly from the binary expansion of radius.
BigInt floor_power(double radius, unsigned q) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("radius must be finite and >= 0");
  }
  if (radius == 0.0) return 0;
  int exp2 = 0;
  double frac = std::frexp(radius, &exp2);
  auto mantissa = static_cast<std::int64_t>(std::ldexp(frac, 53));
  BigInt value = boost::multiprecision::pow(BigInt(mantissa), q);
  long shift = static_cast<long>(exp2 - 53) * static_cast<long>(q);
  if (shift >= 0) return value << shift;
  return value >> -shift;
}

// Golden-section maximisation of a concave function on [lo, hi].
template <typename F>
double maximize_concave(F f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    }
  }
  return std::max({f(0.5 * (a + b)), fc, fd});
}

}  // namespace

std::string_view to_string(Orientation o) {
  return o == Orientation::kDirected ? "directed" : "undirected";
}

Orientation parse_orientation(std::string_view text) {
  if (text == "undirected") return Orientation::kUndirected;
  if (text == "directed") return Orientation::kDirected;
  throw std::invalid_argument("orientation must be 'directed' or 'undirected'");
}

Norm parse_norm(std::string_view text) {
  if (text == "inf") return Norm::infinity();
  unsigned q = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), q);
  if (ec != std::errc() || ptr != text.data() + text.size() || q < 1) {
    throw std::invalid_argument("q must be 'inf' or an integer >= 1");
  }
  return Norm::l(q);
}

BigInt binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt out = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;
  }
  return out;
}

double log_big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log of a non-positive integer");
  const auto bits = static_cast<long>(boost::multiprecision::msb(x));
  if (bits < 62) return std::log(x.convert_to<double>());
  const long drop = bits - 62;
  BigInt top = x >> drop;
  return std::log(top.convert_to<double>()) + static_cast<double>(drop) * std::numbers::ln2;
}

BigInt count_ball_l1(int k, std::int64_t radius, Orientation o) {
  require_dimension(k);
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  if (o == Orientation::kDirected) return binomial(radius + k, k);
  // sum_i 2^i C(k,i) C(R,i): choose i non-zero coordinates and their signs,
  // then positive parts summing to at most R.
  BigInt total = 0;
  BigInt choose_k = 1, choose_r = 1, pow2 = 1;
  const std::int64_t top = std::min<std::int64_t>(k, radius);
  for (std::int64_t i = 0; i <= top; ++i) {
    total += pow2 * choose_k * choose_r;
    choose_k = choose_k * (k - i) / (i + 1);
    choose_r = choose_r * (radius - i) / (i + 1);
    pow2 <<= 1;
  }
  return total;
}

BigInt count_ball_lq(int k, double radius, Norm norm, Orientation o) {
  require_dimension(k);
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("radius must be finite and >= 0");
  }
  const auto whole = static_cast<std::int64_t>(std::floor(radius));
  if (norm.is_infinite()) {
    const std::int64_t side = o == Orientation::kDirected ? whole + 1 : 2 * whole + 1;
    return boost::multiprecision::pow(BigInt(side), static_cast<unsigned>(k));
  }
  if (norm.q() == 1) return count_ball_l1(k, whole, o);

  const BigInt threshold_big = floor_power(radius, norm.q());
  if (threshold_big > kMaxLqThreshold) {
    throw std::length_error("L_q threshold floor(R^q) too large for exact counting");
  }
  const auto threshold = threshold_big.convert_to<std::int64_t>();

  std::vector<std::int64_t> costs;  // v^q for v = 0, 1, ... while <= threshold
  for (std::int64_t v = 0;; ++v) {
    BigInt c = boost::multiprecision::pow(BigInt(v), norm.q());
    if (c > threshold) break;
    costs.push_back(c.convert_to<std::int64_t>());
  }
  const int sign_weight = o == Orientation::kDirected ? 1 : 2;

  // ways[s] = number of vectors in the coordinates so far with cost exactly s.
  std::vector<BigInt> ways(static_cast<std::size_t>(threshold) + 1, 0);
  ways[0] = 1;
  std::int64_t reach = 0;
  for (int coord = 0; coord < k; ++coord) {
    std::vector<BigInt> next(ways.size(), 0);
    for (std::int64_t s = 0; s <= reach; ++s) {
      if (ways[s] == 0) continue;
      next[s] += ways[s];
      for (std::size_t v = 1; v < costs.size() && s + costs[v] <= threshold; ++v) {
        next[s + costs[v]] += sign_weight * ways[s];
      }
    }
    reach = std::min(threshold, reach + costs.back());
    ways = std::move(next);
  }
  BigInt total = 0;
  for (const auto& w : ways) total += w;
  return total;
}

BigInt count_sphere_linf_cap(int k, std::int64_t radius, Orientation o) {
  require_dimension(k);
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  if (radius > k) return 0;
  BigInt out = binomial(k, radius);
  if (o == Orientation::kUndirected) out <<= radius;
  return out;
}

std::int64_t min_radius(int k, const BigInt& target, Orientation o, Norm norm) {
  require_dimension(k);
  auto count = [&](std::int64_t r) {
    return norm == Norm::l(1) ? count_ball_l1(k, r, o)
                              : count_ball_lq(k, static_cast<double>(r), norm, o);
  };
  if (target <= 1) return 0;
  std::int64_t hi = 1;
  while (count(hi) < target) {
    if (hi > (std::int64_t{1} << 61)) throw std::overflow_error("radius search overflow");
    hi *= 2;
  }
  std::int64_t lo = hi / 2;  // count(lo) < target, or lo == 0 with target > 1
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (count(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double omega(int k, double n) {
  require_dimension(k);
  const double log_k = std::log(static_cast<double>(k));
  return std::max(log_k * log_k, k / std::pow(n, 1.0 / (2.0 * k)));
}

std::int64_t inflated_radius(int k, const BigInt& n, Orientation o) {
  require_dimension(k);
  if (n < 2) throw std::invalid_argument("group order must be >= 2");
  const double w = omega(k, n.convert_to<double>());
  if (w > 1e6) throw std::overflow_error("n e^omega exceeds the big-integer budget");
  BigFloat volume = BigFloat(n) * boost::multiprecision::exp(BigFloat(w));
  BigInt target = boost::multiprecision::ceil(volume).convert_to<BigInt>();
  return min_radius(k, target, o);
}

std::int64_t inflated_radius(int k, Index n, Orientation o) {
  return inflated_radius(k, BigInt(n), o);
}

std::int64_t binomial_radius(int k, const BigInt& n) {
  require_dimension(k);
  BigInt c = 1;  // C(k, r)
  for (std::int64_t r = 0; r <= k / 2; ++r) {
    if (c >= n) return r;
    c = c * (k - r) / (r + 1);
  }
  throw NoSolution("no R with C(" + std::to_string(k) + ", R) >= " + n.str());
}

double predicted_radius_small_k(int k, double n, Orientation o) {
  require_dimension(k);
  if (!(n >= 2.0)) throw std::invalid_argument("group order must be >= 2");
  const double denom = o == Orientation::kDirected ? std::numbers::e : 2.0 * std::numbers::e;
  return k * std::exp(std::log(n) / k) / denom;
}

double growth_rate(double a, Orientation o) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("growth rate needs a > 0");
  if (o == Orientation::kDirected) return xlogx(1.0 + a) - xlogx(a);
  // Undirected: a fraction s of coordinates is non-zero; signs give s log 2,
  // the positions H(s), and the positive parts summing to <= ak give a H(s/a).
  auto rate = [a](double s) {
    return entropy(s) + s * std::numbers::ln2 + a * entropy(s / a);
  };
  return maximize_concave(rate, 0.0, std::min(1.0, a), 1e-10);
}

double alpha_lambda(double lambda, Orientation o) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("alpha_lambda needs lambda > 0");
  }
  const double target = 1.0 / lambda;
  double lo = 0.0, hi = 1.0;
  while (growth_rate(hi, o) < target) hi *= 2.0;
  for (int it = 0; it < 400 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (growth_rate(mid, o) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double predicted_radius_large_k(int k, double n) {
  require_dimension(k);
  const double log_n = std::log(n);
  const double rho = std::log(static_cast<double>(k)) / std::log(log_n);
  if (!(log_n > 1.0) || !(rho > 1.0)) {
    throw std::domain_error("large-k prediction needs rho = log k / log log n > 1");
  }
  return rho / (rho - 1.0) * log_n / std::log(static_cast<double>(k));
}

double lq_constant(double q, Orientation o) {
  if (!(q >= 1.0)) throw std::domain_error("L_q constant needs q >= 1");
  const double undirected =
      std::isinf(q) ? 2.0
                    : 2.0 * std::tgamma(1.0 / q + 1.0) * std::pow(q * std::numbers::e, 1.0 / q);
  return o == Orientation::kDirected ? undirected / 2.0 : undirected;
}

double predicted_radius_lq(int k, double n, double q, Orientation o) {
  require_dimension(k);
  const double k_root = std::isinf(q) ? 1.0 : std::pow(static_cast<double>(k), 1.0 / q);
  return k_root * std::exp(std::log(n) / k) / lq_constant(q, o);
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::kSmallK: return "SMALL_K";
    case Regime::kLogK: return "LOG_K";
    case Regime::kLargeK: return "LARGE_K";
  }
  return "?";
}

Regime select_regime(int k, double n) {
  const double ratio = k / std::log(n);
  if (ratio < kSmallKThreshold) return Regime::kSmallK;
  if (ratio <= kLargeKThreshold) return Regime::kLogK;
  return Regime::kLargeK;
}

PredictedRadius predict_typical_distance(int k, Index n, Orientation o, Norm norm) {
  const auto nd = static_cast<double>(n);
  PredictedRadius out{select_regime(k, nd), 0.0, k, n, o, norm.exponent()};
  switch (out.regime) {
    case Regime::kSmallK:
      out.value = predicted_radius_lq(k, nd, norm.exponent(), o);
      break;
    case Regime::kLogK:
      out.value = alpha_lambda(k / std::log(nd), o) * k;
      break;
    case Regime::kLargeK:
      out.value = predicted_radius_large_k(k, nd);
      break;
  }
  return out;
}

bool satisfies_small_k_hypothesis(int k, const GroupSpec& g) {
  require_dimension(k);
  const double d = static_cast<double>(g.min_generators());
  const double log_n = std::log(static_cast<double>(g.order()));
  const double loglog_k = k >= 3 ? std::log(std::log(static_cast<double>(k))) : 0.0;
  return (k - d - 1.0) / k >= 5.0 * k / log_n + 2.0 * d * loglog_k / log_n;
}

}  // namespace cayley
