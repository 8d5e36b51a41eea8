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
#include <string>
#include <vector>

#include "ectqst/generators.hpp"
#include "ectqst/planner.hpp"
#include "ectqst/states.hpp"

namespace ectqst {

/// Product eigenbasis |phi_n> = x_r |v^(k_r)_{n_r}> of a setting. The basis is
/// never materialised as a d^N x d^N matrix; it is applied qudit by qudit.
class SettingBasis {
   public:
    SettingBasis(const ObservableCatalog &catalog, Setting setting);

    const Setting &setting() const noexcept { return setting_; }
    int d() const noexcept { return d_; }
    int n() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return dim_; }

    Eigen::VectorXcd vector(std::size_t outcome) const;
    /// Product of single-qudit eigenvalues for each outcome.
    const std::vector<double> &eigenvalues() const noexcept { return eigenvalues_; }

    /// x <- B^dagger x (rows of x indexed by computational basis states).
    void to_basis(Eigen::MatrixXcd &x) const;
    /// x <- B x.
    void from_basis(Eigen::MatrixXcd &x) const;

   private:
    void apply(Eigen::MatrixXcd &x, bool adjoint) const;

    Setting setting_;
    int d_;
    int n_;
    std::size_t dim_;
    std::vector<Eigen::MatrixXcd> local_;  // empty entry: identity
    std::vector<double> eigenvalues_;
};

/// p_n = <phi_n| rho |phi_n>; round-off negatives are clamped and the vector
/// renormalised when its sum drifts from 1 by more than 1e-12.
std::vector<double> probabilities(const DensityMatrix &rho, const ObservableCatalog &catalog, const Setting &setting);

/// <s^(K)> as sum_n lambda_n p_n.
double setting_expectation(const DensityMatrix &rho, const ObservableCatalog &catalog, const Setting &setting);

/// <s^(K)> from matrix elements: sum_i s_ii rho_ii + 2 sum_{i<j} [Re s_ij Re rho_ij + Im s_ij Im rho_ij].
double setting_expectation_from_elements(const DensityMatrix &rho, const ObservableCatalog &catalog,
                                         const Setting &setting);

/// Independent per-qudit readout confusion: a symbol is reported correctly
/// with probability 1 - epsilon and otherwise replaced by another level, drawn
/// uniformly or in proportion to level_bias when given.
struct ReadoutNoiseModel {
    double epsilon = 0.0;
    std::vector<double> level_bias;

    /// Column-stochastic d x d matrix: entry (reported, true).
    Eigen::MatrixXd confusion(int d) const;
    std::string describe() const;
    void validate(int d) const;
};

std::vector<double> apply_readout_noise(const std::vector<double> &probabilities, int d, int n,
                                        const ReadoutNoiseModel &noise);

enum class CountsMode { sampled, exact };

const char *to_string(CountsMode mode);
CountsMode counts_mode_from_string(const std::string &text);

struct CountsRecord {
    Setting setting;
    /// Integers in sampled mode; real-valued shots * p_n in exact mode.
    std::vector<double> counts;
    double shots = 0.0;
    CountsMode mode = CountsMode::sampled;
    std::string noise = "none";
    std::uint64_t seed = 0;

    friend bool operator==(const CountsRecord &, const CountsRecord &) = default;
};

/// Seed for one record derived from the run seed and the setting, so settings
/// can be sampled in any order with identical results.
std::uint64_t record_seed(std::uint64_t seed, const Setting &setting);

CountsRecord sample_counts(const DensityMatrix &rho, const ObservableCatalog &catalog, const Setting &setting,
                           double shots, std::uint64_t seed, CountsMode mode = CountsMode::sampled,
                           const ReadoutNoiseModel *noise = nullptr);

/// Multinomial draw of shots outcomes from probabilities.
std::vector<double> sample_multinomial(const std::vector<double> &probabilities, std::uint64_t shots,
                                       std::uint64_t seed);

}  // namespace ectqst
