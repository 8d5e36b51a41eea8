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

#include "ectqst/digits.hpp"

#include <string>

#include "ectqst/error.hpp"

namespace ectqst {

std::size_t checked_power(int base, int exponent, std::size_t limit) {
    if (base < 1 || exponent < 0) {
        fail(ErrorCode::invalid_dimension,
             "bad power " + std::to_string(base) + "^" + std::to_string(exponent));
    }
    std::size_t result = 1;
    for (int e = 0; e < exponent; ++e) {
        result *= static_cast<std::size_t>(base);
        if (result > limit) {
            fail(ErrorCode::size_guard, std::to_string(base) + "^" + std::to_string(exponent) +
                                            " exceeds limit " + std::to_string(limit));
        }
    }
    return result;
}

std::vector<int> to_digits(std::size_t index, int d, int n) {
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (int r = n - 1; r >= 0; --r) {
        digits[static_cast<std::size_t>(r)] = static_cast<int>(index % static_cast<std::size_t>(d));
        index /= static_cast<std::size_t>(d);
    }
    if (index != 0) fail(ErrorCode::index_out_of_range, "index does not fit in the digit count");
    return digits;
}

std::size_t from_digits(const std::vector<int> &digits, int d) {
    std::size_t index = 0;
    for (int digit : digits) {
        if (digit < 0 || digit >= d) fail(ErrorCode::index_out_of_range, "digit out of range");
        index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(digit);
    }
    return index;
}

}  // namespace ectqst
