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

#include "ectqst/error.hpp"

namespace ectqst {

const char *to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument:
            return "invalid-argument";
        case ErrorCode::invalid_dimension:
            return "invalid-dimension";
        case ErrorCode::index_out_of_range:
            return "index-out-of-range";
        case ErrorCode::empty_measurement:
            return "empty-measurement";
        case ErrorCode::undefined_sparsity:
            return "undefined-sparsity";
        case ErrorCode::calibration:
            return "calibration";
        case ErrorCode::diagonal_element:
            return "diagonal-element";
        case ErrorCode::planning:
            return "planning";
        case ErrorCode::size_guard:
            return "size-guard";
        case ErrorCode::not_normalized:
            return "not-normalized";
        case ErrorCode::dimension_mismatch:
            return "dimension-mismatch";
        case ErrorCode::empty_problem:
            return "empty-problem";
        case ErrorCode::not_psd:
            return "not-psd";
        case ErrorCode::parse:
            return "parse";
        case ErrorCode::io:
            return "io";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string &message) { throw Error(code, message); }

}  // namespace ectqst
