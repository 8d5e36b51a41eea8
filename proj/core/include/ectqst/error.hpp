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

#include <stdexcept>
#include <string>

namespace ectqst {

enum class ErrorCode {
    invalid_argument,
    invalid_dimension,
    index_out_of_range,
    empty_measurement,
    undefined_sparsity,
    calibration,
    diagonal_element,
    planning,
    size_guard,
    not_normalized,
    dimension_mismatch,
    empty_problem,
    not_psd,
    parse,
    io,
};

const char *to_string(ErrorCode code);

/// Every failure raised by the library carries an ErrorCode so callers
/// (the CLI in particular) can map it without string matching.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &message);

}  // namespace ectqst
