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

#ifndef CAYLEY_ERRORS_HPP
#define CAYLEY_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cayley {

/// A group whose dense per-element tables would exceed kMaxDenseOrder.
class MemoryCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// The Cayley graph does not reach a beta-fraction of the group.
class UnreachableThreshold : public std::runtime_error {
 public:
  UnreachableThreshold(std::int64_t reached, std::int64_t order, double beta)
      : std::runtime_error("typical distance undefined: reached " +
                           std::to_string(reached) + " of " +
                           std::to_string(order) + " elements, beta " +
                           std::to_string(beta)),
        reached_(reached),
        order_(order) {}

  std::int64_t reached() const noexcept { return reached_; }
  std::int64_t order() const noexcept { return order_; }

 private:
  std::int64_t reached_;
  std::int64_t order_;
};

/// An inverse query (e.g. minimal R with C(k,R) >= n) that has no answer.
class NoSolution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inputs outside the range where a deterministic bound is proved.
class WindowViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace cayley

#endif  // CAYLEY_ERRORS_HPP
