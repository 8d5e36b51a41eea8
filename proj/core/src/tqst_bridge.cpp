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
#include "ectqst/tqst_bridge.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "ectqst/error.hpp"
#include "ectqst/measurement_sim.hpp"

namespace ectqst {

ProjectorChoice tqst_projector(const ObservableCatalog &catalog, const TargetElement &target, int n_qudits) {
    if (target.i == target.j) fail(ErrorCode::diagonal_element, "diagonal elements are read from the diagonal setting");
    ProjectorChoice choice;
    choice.target = target;
    choice.setting = setting_for_element(catalog, target, n_qudits);
    const std::vector<double> amplitudes = overlap_amplitudes(catalog, choice.setting, target);
    double best = -1.0;
    for (std::size_t n = 0; n < amplitudes.size(); ++n) {
        const double value = amplitudes[n] * amplitudes[n];
        if (value > best * (1.0 + 1e-12)) {
            best = value;
            choice.n_max = n;
        }
    }
    choice.overlap_squared = best;
    choice.projector = SettingBasis(catalog, choice.setting).vector(choice.n_max);
    return choice;
}

CostReport cost_report(const ObservableCatalog &catalog, const TomographyPlan &plan) {
    if (plan.settings.empty() || !plan.settings.front().setting.is_diagonal())
        fail(ErrorCode::planning, "plan must start with the diagonal setting");
    CostReport report;
    report.d = plan.d;
    report.n = plan.n;
    const double outcomes = std::pow(static_cast<double>(plan.d), plan.n);

    if (plan.d == 2) {
        report.full.settings = std::pow(3.0, plan.n);
    } else {
        report.full.settings = 2.0 * std::pow(plan.d * (plan.d - 1) / 2.0 + 1.0, plan.n) - 1.0;
        report.full_is_bound = true;
    }
    report.full.projectors = report.full.settings * outcomes;

    std::set<std::pair<Setting, std::size_t>> projectors;
    std::set<Setting> settings;
    for (const TargetElement &target : plan.targets) {
        const ProjectorChoice choice = tqst_projector(catalog, target, plan.n);
        projectors.emplace(choice.setting, choice.n_max);
        settings.insert(choice.setting);
    }
    report.threshold.settings = 1.0 + static_cast<double>(settings.size());
    report.threshold.projectors = outcomes + static_cast<double>(projectors.size());

    report.ect.settings = static_cast<double>(plan.size());
    report.ect.projectors = report.ect.settings * outcomes;
    return report;
}

}  // namespace ectqst
