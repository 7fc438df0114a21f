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

#ifndef CAYLEY_RANDOM_HPP
#define CAYLEY_RANDOM_HPP

#include <cstdint>
#include <random>

namespace cayley {

using Seed = std::uint64_t;

/// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of trial `trial` in experiment cell `cell`:
///
///   mix64(mix64(master ^ mix64(cell)) + trial)
///
/// Streams depend only on (master, cell, trial), never on scheduling.
constexpr Seed derive_seed(Seed master, std::uint64_t cell,
                           std::uint64_t trial) noexcept {
  return mix64(mix64(master ^ mix64(cell)) + trial);
}

/// Bit-reproducible random source. The engine is std::mt19937_64, whose
/// output sequence is fixed by the standard; all distributions are
/// implemented here so results do not depend on the standard library.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound); bound > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double open01();

  /// +1 or -1 with probability 1/2 each.
  int sign() { return (next() >> 63) ? 1 : -1; }

  /// Geometric on {1, 2, ...} with success probability p, by inverse CDF:
  /// ceil(log U / log(1 - p)).
  std::int64_t geometric(double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace cayley

#endif  // CAYLEY_RANDOM_HPP
