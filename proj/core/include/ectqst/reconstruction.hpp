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
#include <optional>
#include <span>
#include <vector>

#include "ectqst/generators.hpp"
#include "ectqst/measurement_sim.hpp"
#include "ectqst/planner.hpp"
#include "ectqst/states.hpp"

namespace ectqst {

struct MeasuredSetting {
    SettingBasis basis;
    std::vector<double> counts;
    double shots;
};

/// rho(M) = M M^dagger / tr(M M^dagger).
Eigen::MatrixXcd density_from_factor(const Eigen::MatrixXcd &m);

/// Least-squares likelihood over measured settings:
///   L = sum_{s,n} (E_n - N_n)^2 / (4 max(E_n, floor)),  E_n = shots <phi_n|rho(M)|phi_n>.
class LikelihoodProblem {
   public:
    LikelihoodProblem(const ObservableCatalog &catalog, int n_qudits, std::span<const CountsRecord> records,
                      double floor = 1.0);

    /// Records reordered to follow the plan; every plan setting must be present.
    static LikelihoodProblem from_plan(const ObservableCatalog &catalog, const TomographyPlan &plan,
                                       std::span<const CountsRecord> records, double floor = 1.0);

    int d() const noexcept { return d_; }
    int n() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return dim_; }
    std::size_t size() const noexcept { return settings_.size(); }
    double floor() const noexcept { return floor_; }
    const std::vector<MeasuredSetting> &settings() const noexcept { return settings_; }

    /// The first count settings.
    LikelihoodProblem prefix(std::size_t count) const;

    double value(const Eigen::MatrixXcd &m) const;
    /// Gradient as dL/dRe M + i dL/dIm M.
    double value_and_gradient(const Eigen::MatrixXcd &m, Eigen::MatrixXcd &gradient) const;

    /// Measured diagonal frequencies, or uniform when no diagonal setting is present.
    std::vector<double> diagonal_frequencies() const;

   private:
    LikelihoodProblem() = default;
    double evaluate(const Eigen::MatrixXcd &m, Eigen::MatrixXcd *gradient) const;

    int d_ = 2;
    int n_ = 1;
    std::size_t dim_ = 0;
    double floor_ = 1.0;
    std::vector<MeasuredSetting> settings_;
};

struct FitConfig {
    /// 0 selects r = N.
    int initial_rank = 0;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    double grad_tol = 1e-8;
    int max_iter = 5000;
    int max_escalations = 3;
};

struct FitReport {
    DensityMatrix rho;
    double objective = 0.0;
    int iterations = 0;
    double gradient_norm = 0.0;
    std::vector<int> rank_history;
    double purity = 1.0;
    bool converged = false;
    /// False when the final rank still fails r > 1/tr(rho^2).
    bool rank_adequate = true;
};

FitReport fit(const LikelihoodProblem &problem, const FitConfig &config = {});

/// Uhlmann fidelity (tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2.
double fidelity(const DensityMatrix &rho1, const DensityMatrix &rho2);
double fidelity(const Eigen::MatrixXcd &rho1, const Eigen::MatrixXcd &rho2);

struct ProgressiveOptions {
    double threshold = 0.95;
    int stability = 3;
    bool early_stop = false;
    /// Upper bound on the number of non-diagonal settings used; 0 means all.
    std::size_t max_settings = 0;
};

struct ProgressivePoint {
    /// Number of non-diagonal settings included.
    std::size_t l;
    double fidelity_prev;
    std::optional<double> fidelity_target;
    FitReport report;
};

struct ProgressiveResult {
    std::vector<ProgressivePoint> curve;
    /// First l where fidelity_prev exceeds the threshold for l..l+stability.
    std::optional<std::size_t> stop_l;
};

/// Refits with the diagonal plus the first l settings for l = 1, 2, ...; the
/// problem's first setting must be the diagonal.
ProgressiveResult progressive_fit(const LikelihoodProblem &problem, const FitConfig &config,
                                  const ProgressiveOptions &options = {}, const DensityMatrix *target = nullptr);

}  // namespace ectqst
