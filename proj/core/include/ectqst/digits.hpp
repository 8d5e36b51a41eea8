// Copyright 2026 The ectqst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ectqst {

using Complex = std::complex<double>;

/// d^n with an overflow check; throws size_guard when the result exceeds limit.
std::size_t checked_power(int base, int exponent, std::size_t limit = std::size_t{1} << 40);

/// Base-d digits of index, most significant first (digit 0 belongs to qudit 1).
std::vector<int> to_digits(std::size_t index, int d, int n);

std::size_t from_digits(const std::vector<int> &digits, int d);

/// Digit r (0-based, most significant first) of index in base d over n positions.
inline int digit_at(std::size_t index, int d, int n, int r) {
    for (int p = n - 1; p > r; --p) index /= static_cast<std::size_t>(d);
    return static_cast<int>(index % static_cast<std::size_t>(d));
}

}  // namespace ectqst
