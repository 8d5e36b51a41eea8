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
#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ectqst/measurement_sim.hpp"
#include "ectqst/planner.hpp"
#include "ectqst/target_selection.hpp"
#include "ectqst/tqst_bridge.hpp"

namespace ectqst {

inline constexpr int kFileVersion = 1;

/// Sorted keys, two-space indent, %.17g floats, LF line endings, trailing newline.
std::string canonical_dump(const nlohmann::json &value);

nlohmann::json read_json_file(const std::filesystem::path &path);
std::string read_text_file(const std::filesystem::path &path);
/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path &path, const std::string &content);

nlohmann::json setting_to_json(const Setting &setting);
Setting setting_from_json(const nlohmann::json &value);

nlohmann::json plan_to_json(const TomographyPlan &plan);
TomographyPlan plan_from_json(const nlohmann::json &value);

struct CountsFile {
    int d = 2;
    int n = 1;
    double shots = 0.0;
    CountsMode mode = CountsMode::sampled;
    std::string noise = "none";
    std::uint64_t seed = 0;
    std::vector<CountsRecord> records;

    friend bool operator==(const CountsFile &, const CountsFile &) = default;
};

nlohmann::json counts_to_json(const CountsFile &file);
CountsFile counts_from_json(const nlohmann::json &value);

/// {"shots", "counts", optional "d", "n", "lost_shots"}; d and n may come from
/// the caller instead.
DiagonalMeasurement diagonal_from_json(const nlohmann::json &value, std::optional<int> d, std::optional<int> n);

/// {"noiseless", "noisy_runs", "shots", optional "n"}.
NoiseCalibration calibration_from_json(const nlohmann::json &value, std::optional<int> n);

/// Row-major list of [re, im] rows.
nlohmann::json matrix_to_json(const Eigen::MatrixXcd &matrix);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json &value);

nlohmann::json cost_to_json(const CostReport &cost);
CostReport cost_from_json(const nlohmann::json &value);

struct CurvePoint {
    std::size_t l = 0;
    double fidelity_prev = 0.0;
    std::optional<double> fidelity_target;
};

struct ReportFile {
    int d = 2;
    int n = 1;
    Eigen::MatrixXcd rho;
    std::optional<double> fidelity_target;
    std::optional<double> fidelity_full_plan;
    std::optional<CostReport> cost;
    std::vector<CurvePoint> curve;
    std::optional<std::size_t> stop_l;
    double objective = 0.0;
    int iterations = 0;
    std::vector<int> rank_history;
    double purity = 1.0;
    bool converged = true;
};

nlohmann::json report_to_json(const ReportFile &report);
ReportFile report_from_json(const nlohmann::json &value);

/// "l,fidelity_prev,fidelity_target" with 6 significant digits.
std::string curve_to_csv(const std::vector<CurvePoint> &curve);

}  // namespace ectqst
