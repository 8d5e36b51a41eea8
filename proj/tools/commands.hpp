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
#include <iosfwd>
#include <optional>
#include <string>

#include "ectqst/target_selection.hpp"

namespace ectqst::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNotConverged = 3;

struct PlanArgs {
    std::optional<std::string> state;
    std::optional<std::string> diagonal;
    std::optional<int> d;
    std::optional<int> n;
    std::string threshold;
    bool skip_imaginary = false;
    std::string mas = "identity";
    std::uint64_t seed = 0;
    std::string out;
};

struct SimulateArgs {
    std::string state;
    std::string plan;
    double shots = 1e4;
    std::string mode = "sampled";
    std::uint64_t seed = 0;
    double noise = 0.0;
    std::string out;
};

struct ReconstructArgs {
    std::string counts;
    std::string plan;
    int rank = 0;
    bool progressive = false;
    bool early_stop = false;
    double stop_fidelity = 0.95;
    int stability = 3;
    std::optional<std::string> target;
    std::uint64_t seed = 0;
    double floor = 1.0;
    std::string out;
    std::optional<std::string> curve;
};

struct CompareArgs {
    std::string state;
    std::string threshold;
    std::string mas = "identity";
    std::string out;
};

/// "fixed:v", "gini", "min-nonzero" or "noise:calibration.json".
ThresholdPolicy parse_threshold(const std::string &text, int n_qudits);

int cmd_plan(const PlanArgs &args, std::ostream &log);
int cmd_simulate(const SimulateArgs &args, std::ostream &log);
int cmd_reconstruct(const ReconstructArgs &args, std::ostream &log);
int cmd_compare(const CompareArgs &args, std::ostream &log);

}  // namespace ectqst::cli
