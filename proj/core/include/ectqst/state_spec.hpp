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

#include <cstdint>
#include <string>

#include "ectqst/states.hpp"

namespace ectqst {

/// Parsed state description:
///   ghz:d,N   w:N   wtree:N   random:N,depth,seed   file:path
/// A file holds {"d", "n", "amplitudes": [[re, im], ...]} for a dense vector.
struct StateSpec {
    enum class Kind { ghz, w, w_tree, random, file };
    Kind kind = Kind::ghz;
    int d = 2;
    int n = 1;
    int depth = 0;
    std::uint64_t seed = 0;
    std::string path;
};

StateSpec parse_state_spec(const std::string &text);
SparseStateVector make_state(const StateSpec &spec);
inline SparseStateVector make_state(const std::string &text) { return make_state(parse_state_spec(text)); }

}  // namespace ectqst
