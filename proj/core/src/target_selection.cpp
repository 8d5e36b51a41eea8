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
#include "ectqst/target_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ectqst/digits.hpp"
#include "ectqst/error.hpp"

namespace ectqst {

namespace {

// Relative slack for pseudo-count sums and the noiseless threshold.
constexpr double kCountTolerance = 1e-9;

}  // namespace

const char *to_string(Part part) { return part == Part::re ? "re" : "im"; }

Part part_from_string(const std::string &text) {
    if (text == "re") return Part::re;
    if (text == "im") return Part::im;
    fail(ErrorCode::parse, "unknown part '" + text + "'");
}

DiagonalMeasurement DiagonalMeasurement::from_probabilities(int d, int n,
                                                            std::span<const double> probabilities) {
    DiagonalMeasurement diag;
    diag.d = d;
    diag.n = n;
    diag.shots = 1.0;
    diag.counts.assign(probabilities.begin(), probabilities.end());
    for (double &c : diag.counts) c = std::max(c, 0.0);
    const double total = std::accumulate(diag.counts.begin(), diag.counts.end(), 0.0);
    if (total > 0.0)
        for (double &c : diag.counts) c /= total;
    diag.validate();
    return diag;
}

void DiagonalMeasurement::validate() const {
    if (d < 2) fail(ErrorCode::invalid_dimension, "qudit dimension must be >= 2");
    if (n < 1) fail(ErrorCode::invalid_dimension, "qudit count must be >= 1");
    const std::size_t expected = checked_power(d, n);
    if (counts.size() != expected) {
        fail(ErrorCode::dimension_mismatch, "expected " + std::to_string(expected) + " diagonal counts, got " +
                                                std::to_string(counts.size()));
    }
    if (!(shots > 0.0)) fail(ErrorCode::empty_measurement, "diagonal measurement has zero shots");
    double total = 0.0;
    for (double c : counts) {
        if (!(c >= 0.0) || !std::isfinite(c)) fail(ErrorCode::invalid_argument, "counts must be finite and >= 0");
        total += c;
    }
    const double slack = kCountTolerance * shots;
    if (total > shots + slack) fail(ErrorCode::invalid_argument, "counts exceed the shot total");
    if (!lost_shots && total < shots - slack) {
        fail(ErrorCode::invalid_argument, "counts sum to less than shots and lost_shots is not set");
    }
}

std::vector<double> DiagonalMeasurement::frequencies() const {
    if (!(shots > 0.0)) fail(ErrorCode::empty_measurement, "diagonal measurement has zero shots");
    std::vector<double> p(counts.size());
    std::transform(counts.begin(), counts.end(), p.begin(), [&](double c) { return c / shots; });
    return p;
}

std::vector<TargetElement> select_targets(const DiagonalMeasurement &diag, double threshold,
                                          bool skip_imaginary) {
    diag.validate();
    if (!(threshold >= 0.0)) fail(ErrorCode::invalid_argument, "threshold must be >= 0");
    const std::vector<double> p = diag.frequencies();
    std::vector<TargetElement> targets;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const double bound = std::sqrt(p[i] * p[j]);
            if (bound < threshold) continue;
            targets.push_back({i, j, Part::re, bound});
            if (!skip_imaginary) targets.push_back({i, j, Part::im, bound});
        }
    }
    return targets;
}

double gini_index(std::span<const double> values) {
    if (values.empty()) fail(ErrorCode::undefined_sparsity, "Gini index of an empty vector");
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted)
        if (!(v >= 0.0)) fail(ErrorCode::invalid_argument, "Gini index needs non-negative entries");
    std::sort(sorted.begin(), sorted.end());
    const double norm = std::accumulate(sorted.begin(), sorted.end(), 0.0);
    if (!(norm > 0.0)) fail(ErrorCode::undefined_sparsity, "Gini index of an all-zero vector");
    const double n = static_cast<double>(sorted.size());
    double weighted = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        // 1-based rank k+1: weight (n - (k+1) + 1/2) / n
        weighted += (sorted[k] / norm) * ((n - static_cast<double>(k) - 0.5) / n);
    }
    return std::clamp(1.0 - 2.0 * weighted, 0.0, 1.0 - 1.0 / n);
}

double gini_threshold(const DiagonalMeasurement &diag) {
    diag.validate();
    const std::vector<double> p = diag.frequencies();
    return gini_index(p) / static_cast<double>(p.size() - 1);
}

double noise_calibrated_threshold(std::span<const double> noiseless,
                                  std::span<const std::vector<double>> noisy_runs, int n_qudits,
                                  double shots) {
    if (noisy_runs.empty()) fail(ErrorCode::calibration, "at least one noisy run is required");
    if (!(shots > 0.0)) fail(ErrorCode::empty_measurement, "calibration needs a positive shot count");
    std::vector<std::size_t> zero_set;
    std::vector<std::size_t> smallest_set;
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < noiseless.size(); ++i) {
        if (noiseless[i] <= 0.0) {
            zero_set.push_back(i);
        } else if (noiseless[i] < smallest) {
            smallest = noiseless[i];
            smallest_set.assign(1, i);
        } else if (noiseless[i] == smallest) {
            smallest_set.push_back(i);
        }
    }
    if (smallest_set.empty()) fail(ErrorCode::calibration, "noiseless diagonal has no non-zero entries");

    double c0_max = 0.0;
    double c1_min = std::numeric_limits<double>::infinity();
    for (const auto &run : noisy_runs) {
        if (run.size() != noiseless.size()) fail(ErrorCode::dimension_mismatch, "noisy run length mismatch");
        for (std::size_t i : zero_set) c0_max = std::max(c0_max, run[i]);
        for (std::size_t i : smallest_set) c1_min = std::min(c1_min, run[i]);
    }
    const double N = static_cast<double>(n_qudits);
    const double noise_threshold = c0_max + N * std::sqrt(c0_max);
    const double signal_threshold = c1_min - N * std::sqrt(c1_min);
    return std::clamp(std::max(noise_threshold, signal_threshold) / shots, 0.0, 1.0);
}

ThresholdPolicy ThresholdPolicy::fixed(double t) {
    ThresholdPolicy policy;
    policy.mode = Mode::fixed;
    policy.value = t;
    return policy;
}

ThresholdPolicy ThresholdPolicy::gini() {
    ThresholdPolicy policy;
    policy.mode = Mode::gini;
    return policy;
}

ThresholdPolicy ThresholdPolicy::min_nonzero() {
    ThresholdPolicy policy;
    policy.mode = Mode::min_nonzero;
    return policy;
}

ThresholdPolicy ThresholdPolicy::noise(NoiseCalibration calibration) {
    ThresholdPolicy policy;
    policy.mode = Mode::noise_calibrated;
    policy.calibration = std::move(calibration);
    return policy;
}

double ThresholdPolicy::resolve(const DiagonalMeasurement &diag) const {
    switch (mode) {
        case Mode::fixed:
            if (!(value >= 0.0 && value <= 1.0)) fail(ErrorCode::invalid_argument, "threshold must lie in [0, 1]");
            return value;
        case Mode::gini:
            return gini_threshold(diag);
        case Mode::noise_calibrated: {
            const int n = calibration.n_qudits > 0 ? calibration.n_qudits : diag.n;
            return noise_calibrated_threshold(calibration.noiseless, calibration.noisy_runs, n,
                                              calibration.shots);
        }
        case Mode::min_nonzero: {
            diag.validate();
            double smallest = std::numeric_limits<double>::infinity();
            for (double p : diag.frequencies())
                if (p > 0.0) smallest = std::min(smallest, p);
            if (!std::isfinite(smallest)) fail(ErrorCode::empty_measurement, "diagonal has no support");
            // sqrt(p p) may round just below p.
            return smallest * (1.0 - kCountTolerance);
        }
    }
    return value;
}

std::string ThresholdPolicy::mode_name() const {
    switch (mode) {
        case Mode::fixed:
            return "fixed";
        case Mode::gini:
            return "gini";
        case Mode::noise_calibrated:
            return "noise";
        case Mode::min_nonzero:
            return "min-nonzero";
    }
    return "fixed";
}

}  // namespace ectqst
