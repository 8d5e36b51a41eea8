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

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "ectqst/generators.hpp"
#include "ectqst/planner.hpp"
#include "ectqst/target_selection.hpp"

namespace ectqst {

struct ProjectorChoice {
    TargetElement target;
    Setting setting;
    /// Smallest outcome index maximising |A_{m,n}|^2.
    std::size_t n_max = 0;
    double overlap_squared = 0.0;
    Eigen::VectorXcd projector;
};

/// Projector-based selection for one off-diagonal target.
ProjectorChoice tqst_projector(const ObservableCatalog &catalog, const TargetElement &target, int n_qudits);

struct MethodCost {
    /// Number of measurement settings.
    double settings = 0.0;
    /// Number of projective measurements.
    double projectors = 0.0;
};

struct CostReport {
    int d = 2;
    int n = 1;
    MethodCost full;
    /// For qubits: 3^N settings with 2^N outcomes each. Otherwise the
    /// zero-threshold bound 2 [d(d-1)/2 + 1]^N - 1 on the setting count.
    bool full_is_bound = false;
    MethodCost threshold;
    MethodCost ect;
};

CostReport cost_report(const ObservableCatalog &catalog, const TomographyPlan &plan);

}  // namespace ectqst
