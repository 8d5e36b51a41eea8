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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ectqst/digits.hpp"
#include "ectqst/generators.hpp"
#include "ectqst/target_selection.hpp"

namespace ectqst {

/// Product observable sigma^(k_1) x ... x sigma^(k_N); indices[0] acts on the
/// most significant qudit.
struct Setting {
    std::vector<int> indices;

    bool is_diagonal() const;
    std::size_t qudits() const noexcept { return indices.size(); }
    /// "s(1001)"; indices are dot-separated once any exceeds 9.
    std::string label() const;

    friend auto operator<=>(const Setting &, const Setting &) = default;
    friend bool operator==(const Setting &, const Setting &) = default;
};

Setting diagonal_setting(int n_qudits);

/// The setting whose matrix element at (i, j) has a non-zero real (Re target)
/// or imaginary (Im target) part: sigma^(0) where the base-d digits agree, the
/// real generator on (i_r, j_r) where they differ, with the first differing
/// position switched to its imaginary partner for Im targets.
Setting setting_for_element(const ObservableCatalog &catalog, const TargetElement &target, int n_qudits);

/// s^(K)_ij as the product of single-qudit entries.
Complex element_contribution(const ObservableCatalog &catalog, const Setting &setting, std::size_t i,
                             std::size_t j);

/// A^(s)_mn = <phi_n| O_m |phi_n> for every outcome n of the setting's product
/// eigenbasis.
std::vector<double> overlap_amplitudes(const ObservableCatalog &catalog, const Setting &setting,
                                       const TargetElement &target);

/// C_sm = sum_n |A^(s)_mn|^2, evaluated in factorised form.
double overlap(const ObservableCatalog &catalog, const Setting &setting, const TargetElement &target);

/// Sparse |S| x |targets| overlap matrix with per-column maxima beta.
class OverlapMatrix {
   public:
    struct Entry {
        std::size_t column;
        double value;
    };

    static OverlapMatrix build(const ObservableCatalog &catalog, int n_qudits, std::vector<Setting> settings,
                               std::vector<TargetElement> targets);

    std::size_t rows() const noexcept { return settings_.size(); }
    std::size_t cols() const noexcept { return targets_.size(); }
    const std::vector<Setting> &settings() const noexcept { return settings_; }
    const std::vector<TargetElement> &targets() const noexcept { return targets_; }
    std::span<const Entry> row(std::size_t s) const;
    double at(std::size_t s, std::size_t m) const;
    const std::vector<double> &beta() const noexcept { return beta_; }
    Eigen::MatrixXd dense() const;
    /// Sum over the given rows, per column.
    std::vector<double> column_sums(std::span<const std::size_t> rows) const;

   private:
    std::vector<Setting> settings_;
    std::vector<TargetElement> targets_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<double> beta_;
};

/// Distinct settings of the targets, in order of first appearance.
std::vector<Setting> candidate_settings(const ObservableCatalog &catalog, std::span<const TargetElement> targets,
                                        int n_qudits);

/// Tolerance on the coverage comparisons.
inline constexpr double kCoverageTolerance = 1e-9;

/// Greedy reduction of the candidate rows. Repeatedly picks the row with the
/// fewest zeros over still-uncovered columns (ties: lexicographically
/// smallest setting) until every column is covered. A column m is covered once
/// a selected row alone reaches beta_m, or the selected rows together strictly
/// exceed it. Returns row indices in selection order.
std::vector<std::size_t> prune(const OverlapMatrix &overlap);

struct PlannedSetting {
    Setting setting;
    double weight = 0.0;
    /// Indices into the plan's targets with a non-zero overlap.
    std::vector<std::size_t> informs;

    friend bool operator==(const PlannedSetting &, const PlannedSetting &) = default;
};

/// w_s = sum_m C_sm r_m for the selected rows, ordered by non-increasing
/// weight with ties broken by the lexicographic order of the setting.
std::vector<PlannedSetting> sort_by_weight(const OverlapMatrix &overlap, std::span<const std::size_t> selected);

struct TomographyPlan {
    int d = 2;
    int n = 1;
    MasMode mas = MasMode::identity;
    double threshold = 0.0;
    std::string policy = "fixed";
    std::uint64_t seed = 0;
    std::vector<TargetElement> targets;
    std::vector<double> beta;
    /// |S_t|: distinct settings before pruning, diagonal excluded.
    std::size_t candidate_count = 0;
    /// settings[0] is always the diagonal setting.
    std::vector<PlannedSetting> settings;

    std::size_t size() const noexcept { return settings.size(); }
    std::vector<Setting> setting_list() const;

    friend bool operator==(const TomographyPlan &, const TomographyPlan &) = default;
};

struct PlanOptions {
    bool skip_imaginary = false;
    std::string policy = "fixed";
    std::uint64_t seed = 0;
};

TomographyPlan build_plan(const ObservableCatalog &catalog, const DiagonalMeasurement &diag, double threshold,
                          const PlanOptions &options = {});

/// Plan for the t -> 0 limit on a uniform diagonal; guarded to d^N <= 4096.
TomographyPlan full_qst_plan(const ObservableCatalog &catalog, int n_qudits);

}  // namespace ectqst
