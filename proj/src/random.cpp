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

#include "cayley/random.hpp"

#include <cmath>
#include <stdexcept>

namespace cayley {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below needs bound > 0");
  unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t floor = (0 - bound) % bound;
    while (low < floor) {
      product = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double Rng::open01() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::int64_t Rng::geometric(double p) {
  if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("geometric needs p in (0, 1]");
  if (p == 1.0) return 1;
  const double draw = std::ceil(std::log(open01()) / std::log1p(-p));
  return draw < 1.0 ? 1 : static_cast<std::int64_t>(draw);
}

}  // namespace cayley
