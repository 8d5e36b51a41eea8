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
#include "ectqst/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ectqst/error.hpp"
#include "lbfgs.hpp"

namespace ectqst {

namespace {

Eigen::VectorXd pack(const Eigen::MatrixXcd &m) {
    const Eigen::Index size = m.size();
    Eigen::VectorXd x(2 * size);
    x.head(size) = Eigen::Map<const Eigen::VectorXcd>(m.data(), size).real();
    x.tail(size) = Eigen::Map<const Eigen::VectorXcd>(m.data(), size).imag();
    return x;
}

Eigen::MatrixXcd unpack(const Eigen::VectorXd &x, Eigen::Index rows, Eigen::Index cols) {
    const Eigen::Index size = rows * cols;
    Eigen::MatrixXcd m(rows, cols);
    Eigen::Map<Eigen::VectorXcd> flat(m.data(), size);
    flat.real() = x.head(size);
    flat.imag() = x.tail(size);
    return m;
}

// Positive square root factor K with rho = K K^dagger.
Eigen::MatrixXcd psd_factor(const Eigen::MatrixXcd &rho) {
    const Eigen::MatrixXcd hermitian = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
    if (solver.info() != Eigen::Success) fail(ErrorCode::not_psd, "eigendecomposition failed");
    const Eigen::VectorXd values = solver.eigenvalues();
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    if (values.minCoeff() < -1e-9 * scale) fail(ErrorCode::not_psd, "fidelity input is not positive semidefinite");
    // Eigenvalues below the solver's resolution are zero; their square roots
    // would otherwise leak O(1e-8) into the fidelity of pure states.
    const double cutoff = static_cast<double>(rho.rows()) * std::numeric_limits<double>::epsilon() * values.maxCoeff();
    Eigen::Index kept = 0;
    for (Eigen::Index k = 0; k < values.size(); ++k) kept += values(k) > cutoff ? 1 : 0;
    Eigen::MatrixXcd factor(rho.rows(), std::max<Eigen::Index>(kept, 1));
    factor.setZero();
    Eigen::Index col = 0;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        if (values(k) <= cutoff) continue;
        factor.col(col++) = solver.eigenvectors().col(k) * std::sqrt(values(k));
    }
    return factor;
}

Eigen::MatrixXcd initial_factor(const LikelihoodProblem &problem, int rank, std::uint64_t seed) {
    const auto dim = static_cast<Eigen::Index>(problem.dimension());
    Eigen::MatrixXcd m(dim, rank);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1e-2);
    for (Eigen::Index c = 0; c < rank; ++c)
        for (Eigen::Index r = 0; r < dim; ++r) m(r, c) = Complex(gauss(rng), gauss(rng));
    const std::vector<double> freq = problem.diagonal_frequencies();
    for (Eigen::Index r = 0; r < dim; ++r) m(r, 0) = std::sqrt(std::max(freq[static_cast<std::size_t>(r)], 0.0));
    return m;
}

Eigen::MatrixXcd widen(const Eigen::MatrixXcd &m, int rank, std::uint64_t seed) {
    Eigen::MatrixXcd wider(m.rows(), rank);
    wider.leftCols(m.cols()) = m;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1e-2 * std::sqrt(m.squaredNorm()));
    for (Eigen::Index c = m.cols(); c < rank; ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) wider(r, c) = Complex(gauss(rng), gauss(rng));
    return wider;
}

double purity_of(const Eigen::MatrixXcd &rho) { return rho.cwiseAbs2().sum(); }

}  // namespace

Eigen::MatrixXcd density_from_factor(const Eigen::MatrixXcd &m) {
    const double trace = m.squaredNorm();
    if (!(trace > 0.0)) fail(ErrorCode::invalid_argument, "factor has zero norm");
    Eigen::MatrixXcd rho = m * m.adjoint() / trace;
    return 0.5 * (rho + rho.adjoint());
}

LikelihoodProblem::LikelihoodProblem(const ObservableCatalog &catalog, int n_qudits,
                                     std::span<const CountsRecord> records, double floor)
    : d_(catalog.dimension()), n_(n_qudits), floor_(floor) {
    if (records.empty()) fail(ErrorCode::empty_problem, "likelihood needs at least one setting");
    if (!(floor > 0.0)) fail(ErrorCode::invalid_argument, "denominator floor must be > 0");
    dim_ = checked_power(d_, n_);
    settings_.reserve(records.size());
    for (const CountsRecord &record : records) {
        if (static_cast<int>(record.setting.qudits()) != n_)
            fail(ErrorCode::dimension_mismatch, "setting " + record.setting.label() + " has the wrong qudit count");
        if (record.counts.size() != dim_)
            fail(ErrorCode::dimension_mismatch, "counts for " + record.setting.label() + " have the wrong length");
        if (!(record.shots > 0.0)) fail(ErrorCode::invalid_argument, "shots must be > 0");
        for (double c : record.counts)
            if (!(c >= 0.0) || !std::isfinite(c)) fail(ErrorCode::invalid_argument, "counts must be finite and >= 0");
        settings_.push_back(MeasuredSetting{SettingBasis(catalog, record.setting), record.counts, record.shots});
    }
}

LikelihoodProblem LikelihoodProblem::from_plan(const ObservableCatalog &catalog, const TomographyPlan &plan,
                                               std::span<const CountsRecord> records, double floor) {
    if (plan.d != catalog.dimension()) fail(ErrorCode::dimension_mismatch, "plan and catalog dimensions differ");
    std::vector<CountsRecord> ordered;
    ordered.reserve(plan.size());
    for (const PlannedSetting &planned : plan.settings) {
        const auto it = std::find_if(records.begin(), records.end(),
                                     [&](const CountsRecord &r) { return r.setting == planned.setting; });
        if (it == records.end()) fail(ErrorCode::empty_measurement, "missing counts for " + planned.setting.label());
        ordered.push_back(*it);
    }
    for (const CountsRecord &record : records) {
        const bool planned = std::any_of(plan.settings.begin(), plan.settings.end(),
                                         [&](const PlannedSetting &p) { return p.setting == record.setting; });
        if (!planned) fail(ErrorCode::invalid_argument, "counts for " + record.setting.label() + " are not in the plan");
    }
    return LikelihoodProblem(catalog, plan.n, ordered, floor);
}

LikelihoodProblem LikelihoodProblem::prefix(std::size_t count) const {
    if (count == 0 || count > settings_.size()) fail(ErrorCode::invalid_argument, "prefix length out of range");
    LikelihoodProblem out;
    out.d_ = d_;
    out.n_ = n_;
    out.dim_ = dim_;
    out.floor_ = floor_;
    out.settings_.assign(settings_.begin(), settings_.begin() + static_cast<std::ptrdiff_t>(count));
    return out;
}

double LikelihoodProblem::value(const Eigen::MatrixXcd &m) const { return evaluate(m, nullptr); }

double LikelihoodProblem::value_and_gradient(const Eigen::MatrixXcd &m, Eigen::MatrixXcd &gradient) const {
    return evaluate(m, &gradient);
}

double LikelihoodProblem::evaluate(const Eigen::MatrixXcd &m, Eigen::MatrixXcd *gradient) const {
    if (static_cast<std::size_t>(m.rows()) != dim_) fail(ErrorCode::dimension_mismatch, "factor has the wrong row count");
    const double tau = m.squaredNorm();
    if (!(tau > 0.0)) fail(ErrorCode::invalid_argument, "factor has zero norm");
    if (gradient != nullptr) gradient->setZero(m.rows(), m.cols());

    double total = 0.0;
    Eigen::MatrixXcd w;
    Eigen::VectorXd h(static_cast<Eigen::Index>(dim_));
    for (const MeasuredSetting &setting : settings_) {
        w = m;
        setting.basis.to_basis(w);
        const Eigen::VectorXd q = w.rowwise().squaredNorm();
        double hq = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) {
            const auto n = static_cast<Eigen::Index>(k);
            const double expected = setting.shots * q(n) / tau;
            const double observed = setting.counts[k];
            const double diff = expected - observed;
            if (expected >= floor_) {
                total += diff * diff / (4.0 * expected);
                h(n) = (expected * expected - observed * observed) / (4.0 * expected * expected);
            } else {
                total += diff * diff / (4.0 * floor_);
                h(n) = diff / (2.0 * floor_);
            }
            hq += h(n) * q(n);
        }
        if (gradient == nullptr) continue;
        w = h.asDiagonal() * w;
        setting.basis.from_basis(w);
        *gradient += (2.0 * setting.shots / tau) * (w - (hq / tau) * m);
    }
    return total;
}

std::vector<double> LikelihoodProblem::diagonal_frequencies() const {
    for (const MeasuredSetting &setting : settings_) {
        if (!setting.basis.setting().is_diagonal()) continue;
        std::vector<double> freq(setting.counts.size());
        for (std::size_t k = 0; k < freq.size(); ++k) freq[k] = setting.counts[k] / setting.shots;
        return freq;
    }
    return std::vector<double>(dim_, 1.0 / static_cast<double>(dim_));
}

FitReport fit(const LikelihoodProblem &problem, const FitConfig &config) {
    if (problem.size() == 0) fail(ErrorCode::empty_problem, "nothing to fit");
    const int dim = static_cast<int>(std::min<std::size_t>(problem.dimension(), 1U << 30));
    int rank = config.initial_rank == 0 ? problem.n() : config.initial_rank;
    if (rank < 1) fail(ErrorCode::invalid_argument, "rank must be >= 1");
    rank = std::min(rank, dim);
    const int step = (problem.n() + 1) / 2;

    detail::LbfgsOptions options;
    options.max_iter = config.max_iter;
    options.rel_tol = config.tol;
    options.grad_tol = config.grad_tol;

    Eigen::MatrixXcd m = initial_factor(problem, rank, config.seed);
    std::vector<int> history;
    int escalations = 0;
    int iterations = 0;
    detail::LbfgsResult last;
    bool all_converged = true;
    for (;;) {
        history.push_back(rank);
        const Eigen::Index rows = m.rows();
        const Eigen::Index cols = m.cols();
        const detail::Objective objective = [&](const Eigen::VectorXd &x, Eigen::VectorXd &g) {
            Eigen::MatrixXcd grad;
            const double value = problem.value_and_gradient(unpack(x, rows, cols), grad);
            g = pack(grad);
            return value;
        };
        Eigen::VectorXd x = pack(m);
        last = detail::minimize_lbfgs(objective, x, options);
        iterations += last.iterations;
        all_converged = last.converged;
        m = unpack(x, rows, cols);
        m /= std::sqrt(m.squaredNorm());

        const double inverse_purity = 1.0 / purity_of(density_from_factor(m));
        const bool adequate = static_cast<double>(rank) > inverse_purity + 0.5;
        if (adequate || rank >= dim || escalations >= config.max_escalations) break;
        ++escalations;
        rank = std::min(dim, rank + step);
        m = widen(m, rank, config.seed + static_cast<std::uint64_t>(escalations));
    }

    const Eigen::MatrixXcd rho = density_from_factor(m);
    FitReport report{DensityMatrix(problem.d(), problem.n(), rho), last.value, iterations, last.gradient_norm,
                     history, purity_of(rho), all_converged, true};
    report.rank_adequate = static_cast<double>(rank) > 1.0 / report.purity + 0.5 || rank >= dim;
    return report;
}

double fidelity(const Eigen::MatrixXcd &rho1, const Eigen::MatrixXcd &rho2) {
    if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols() || rho1.rows() != rho1.cols())
        fail(ErrorCode::dimension_mismatch, "fidelity needs square matrices of equal size");
    // With rho1 = K K^dagger and rho2 = L L^dagger, tr|sqrt(rho1) sqrt(rho2)| is the
    // nuclear norm of K^dagger L.
    const Eigen::MatrixXcd k = psd_factor(rho1);
    const Eigen::MatrixXcd l = psd_factor(rho2);
    const Eigen::MatrixXcd overlap = k.adjoint() * l;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(overlap);
    const double root = svd.singularValues().sum();
    return std::clamp(root * root, 0.0, 1.0);
}

double fidelity(const DensityMatrix &rho1, const DensityMatrix &rho2) {
    if (rho1.d() != rho2.d() || rho1.n() != rho2.n()) fail(ErrorCode::dimension_mismatch, "fidelity of mismatched states");
    return fidelity(rho1.matrix(), rho2.matrix());
}

ProgressiveResult progressive_fit(const LikelihoodProblem &problem, const FitConfig &config,
                                  const ProgressiveOptions &options, const DensityMatrix *target) {
    if (problem.size() == 0 || !problem.settings().front().basis.setting().is_diagonal())
        fail(ErrorCode::invalid_argument, "progressive fit needs the diagonal setting first");
    if (options.stability < 0) fail(ErrorCode::invalid_argument, "stability must be >= 0");
    std::size_t last_l = problem.size() - 1;
    if (options.max_settings != 0) last_l = std::min(last_l, options.max_settings);

    ProgressiveResult result;
    FitReport previous = fit(problem.prefix(1), config);
    std::size_t run = 0;
    for (std::size_t l = 1; l <= last_l; ++l) {
        FitReport current = fit(problem.prefix(l + 1), config);
        ProgressivePoint point{l, fidelity(current.rho, previous.rho), std::nullopt, current};
        if (target != nullptr) point.fidelity_target = fidelity(current.rho, *target);
        run = point.fidelity_prev > options.threshold ? run + 1 : 0;
        result.curve.push_back(std::move(point));
        previous = std::move(current);
        if (!result.stop_l && run == static_cast<std::size_t>(options.stability) + 1) {
            result.stop_l = l - static_cast<std::size_t>(options.stability);
            if (options.early_stop) break;
        }
    }
    return result;
}

}  // namespace ectqst
