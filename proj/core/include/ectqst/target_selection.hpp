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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ectqst {

/// Counts collected in the computational (diagonal) basis. Counts are stored as
/// doubles so noiseless pseudo-counts (shots * p) are representable.
struct DiagonalMeasurement {
    int d = 2;
    int n = 1;
    std::vector<double> counts;
    double shots = 0.0;
    /// When set, counts may sum to less than shots (lost or discarded shots).
    bool lost_shots = false;

    static DiagonalMeasurement from_probabilities(int d, int n, std::span<const double> probabilities);

    std::size_t dimension() const noexcept { return counts.size(); }
    std::vector<double> frequencies() const;
    void validate() const;
};

enum class Part { re, im };

const char *to_string(Part part);
Part part_from_string(const std::string &text);

/// Real or imaginary part of rho_ij (i < j) together with its magnitude bound
/// sqrt(rho_ii rho_jj).
struct TargetElement {
    std::size_t i = 0;
    std::size_t j = 0;
    Part part = Part::re;
    double bound = 0.0;

    friend bool operator==(const TargetElement &, const TargetElement &) = default;
};

/// Every pair i < j with sqrt(p_i p_j) >= threshold, Re before Im, ordered by
/// (i, j, part). With skip_imaginary only Re targets are produced.
std::vector<TargetElement> select_targets(const DiagonalMeasurement &diag, double threshold,
                                          bool skip_imaginary = false);

/// Gini sparsity index of a non-negative vector: 0 for uniform, 1 - 1/n for a
/// single spike. Scale invariant.
double gini_index(std::span<const double> values);

/// GI(diagonal) / (d^N - 1).
double gini_threshold(const DiagonalMeasurement &diag);

/// Threshold derived from noisy repetitions of a circuit whose noiseless
/// diagonal is known. noiseless splits outcomes into expected-zero and
/// expected-non-zero sets; the larger of the noise threshold
/// c0 + N sqrt(c0) and the signal threshold c1 - N sqrt(c1) is returned in
/// probability units.
double noise_calibrated_threshold(std::span<const double> noiseless,
                                  std::span<const std::vector<double>> noisy_runs, int n_qudits,
                                  double shots);

struct NoiseCalibration {
    std::vector<double> noiseless;
    std::vector<std::vector<double>> noisy_runs;
    int n_qudits = 0;
    double shots = 0.0;
};

struct ThresholdPolicy {
    enum class Mode {
        fixed,
        gini,
        noise_calibrated,
        /// Smallest non-zero diagonal frequency (noiseless planning).
        min_nonzero,
    };

    Mode mode = Mode::fixed;
    double value = 0.0;
    NoiseCalibration calibration;

    static ThresholdPolicy fixed(double t);
    static ThresholdPolicy gini();
    static ThresholdPolicy min_nonzero();
    static ThresholdPolicy noise(NoiseCalibration calibration);

    /// Threshold in probability units, within [0, 1].
    double resolve(const DiagonalMeasurement &diag) const;
    std::string mode_name() const;
};

}  // namespace ectqst
