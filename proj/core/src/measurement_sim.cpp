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
#include "ectqst/measurement_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "ectqst/error.hpp"

namespace ectqst {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Applies a d x d operator to digit position r of the row index of x.
void apply_local(Eigen::MatrixXcd &x, const Eigen::MatrixXcd &op, int d, int n, int r) {
    const auto stride = static_cast<Eigen::Index>(checked_power(d, n - 1 - r));
    const Eigen::Index block = stride * d;
    const Eigen::Index rows = x.rows();
    Eigen::MatrixXcd gathered(d, x.cols());
    for (Eigen::Index base = 0; base < rows; base += block) {
        for (Eigen::Index off = 0; off < stride; ++off) {
            for (int a = 0; a < d; ++a) gathered.row(a) = x.row(base + off + a * stride);
            for (int a = 0; a < d; ++a) x.row(base + off + a * stride) = op.row(a) * gathered;
        }
    }
}

void apply_local_real(std::vector<double> &p, const Eigen::MatrixXd &op, int d, int n, int r) {
    const std::size_t stride = checked_power(d, n - 1 - r);
    const std::size_t block = stride * static_cast<std::size_t>(d);
    std::vector<double> gathered(static_cast<std::size_t>(d));
    for (std::size_t base = 0; base < p.size(); base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            for (int a = 0; a < d; ++a) gathered[static_cast<std::size_t>(a)] = p[base + off + static_cast<std::size_t>(a) * stride];
            for (int a = 0; a < d; ++a) {
                double acc = 0.0;
                for (int b = 0; b < d; ++b) acc += op(a, b) * gathered[static_cast<std::size_t>(b)];
                p[base + off + static_cast<std::size_t>(a) * stride] = acc;
            }
        }
    }
}

void normalize_simplex(std::vector<double> &p) {
    for (double &v : p) v = std::max(v, 0.0);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12 && total > 0.0)
        for (double &v : p) v /= total;
}

}  // namespace

SettingBasis::SettingBasis(const ObservableCatalog &catalog, Setting setting)
    : setting_(std::move(setting)), d_(catalog.dimension()), n_(static_cast<int>(setting_.qudits())) {
    if (n_ < 1) fail(ErrorCode::invalid_dimension, "setting must act on at least one qudit");
    dim_ = checked_power(d_, n_);
    local_.resize(setting_.indices.size());
    std::vector<std::vector<double>> values(setting_.indices.size());
    for (std::size_t r = 0; r < setting_.indices.size(); ++r) {
        const int k = setting_.indices[r];
        if (k < 0 || k >= catalog.size()) fail(ErrorCode::index_out_of_range, "invalid observable in setting");
        if (!catalog.is_computational(k)) local_[r] = catalog.eigenbasis(k);
        for (const auto &pair : catalog.eigensystem(k)) values[r].push_back(pair.value);
    }
    eigenvalues_.assign(dim_, 1.0);
    for (std::size_t outcome = 0; outcome < dim_; ++outcome) {
        std::size_t rest = outcome;
        for (int r = n_ - 1; r >= 0; --r) {
            eigenvalues_[outcome] *= values[static_cast<std::size_t>(r)][rest % static_cast<std::size_t>(d_)];
            rest /= static_cast<std::size_t>(d_);
        }
    }
}

Eigen::VectorXcd SettingBasis::vector(std::size_t outcome) const {
    if (outcome >= dim_) fail(ErrorCode::index_out_of_range, "outcome out of range");
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_), 1);
    e(static_cast<Eigen::Index>(outcome), 0) = 1.0;
    from_basis(e);
    return e.col(0);
}

void SettingBasis::apply(Eigen::MatrixXcd &x, bool adjoint) const {
    if (static_cast<std::size_t>(x.rows()) != dim_) fail(ErrorCode::dimension_mismatch, "basis transform size mismatch");
    for (std::size_t r = 0; r < local_.size(); ++r) {
        if (local_[r].size() == 0) continue;
        if (adjoint) {
            apply_local(x, local_[r].adjoint(), d_, n_, static_cast<int>(r));
        } else {
            apply_local(x, local_[r], d_, n_, static_cast<int>(r));
        }
    }
}

void SettingBasis::to_basis(Eigen::MatrixXcd &x) const { apply(x, true); }

void SettingBasis::from_basis(Eigen::MatrixXcd &x) const { apply(x, false); }

std::vector<double> probabilities(const DensityMatrix &rho, const ObservableCatalog &catalog, const Setting &setting) {
    if (rho.d() != catalog.dimension() || static_cast<std::size_t>(rho.n()) != setting.qudits()) {
        fail(ErrorCode::dimension_mismatch, "state and setting dimensions disagree");
    }
    const SettingBasis basis(catalog, setting);
    Eigen::MatrixXcd y = rho.matrix();
    basis.to_basis(y);  // B^dagger rho
    Eigen::MatrixXcd z = y.adjoint();
    basis.to_basis(z);  // B^dagger rho B
    std::vector<double> p(basis.dimension());
    for (std::size_t n = 0; n < p.size(); ++n) p[n] = z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)).real();
    normalize_simplex(p);
    return p;
}

double setting_expectation(const DensityMatrix &rho, const ObservableCatalog &catalog, const Setting &setting) {
    const std::vector<double> p = probabilities(rho, catalog, setting);
    const SettingBasis basis(catalog, setting);
    double value = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) value += basis.eigenvalues()[n] * p[n];
    return value;
}

double setting_expectation_from_elements(const DensityMatrix &rho, const ObservableCatalog &catalog,
                                         const Setting &setting) {
    if (rho.d() != catalog.dimension() || static_cast<std::size_t>(rho.n()) != setting.qudits()) {
        fail(ErrorCode::dimension_mismatch, "state and setting dimensions disagree");
    }
    const Eigen::MatrixXcd &m = rho.matrix();
    const auto dim = static_cast<std::size_t>(m.rows());
    double value = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        value += element_contribution(catalog, setting, i, i).real() * m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        for (std::size_t j = i + 1; j < dim; ++j) {
            const Complex s = element_contribution(catalog, setting, i, j);
            if (s == 0.0) continue;
            const Complex r = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            value += 2.0 * (s.real() * r.real() + s.imag() * r.imag());
        }
    }
    return value;
}

Eigen::MatrixXd ReadoutNoiseModel::confusion(int d) const {
    validate(d);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
    for (int truth = 0; truth < d; ++truth) {
        double norm = 0.0;
        for (int reported = 0; reported < d; ++reported) {
            if (reported == truth) continue;
            norm += level_bias.empty() ? 1.0 : level_bias[static_cast<std::size_t>(reported)];
        }
        c(truth, truth) = 1.0 - epsilon;
        for (int reported = 0; reported < d; ++reported) {
            if (reported == truth) continue;
            const double w = level_bias.empty() ? 1.0 : level_bias[static_cast<std::size_t>(reported)];
            c(reported, truth) = norm > 0.0 ? epsilon * w / norm : 0.0;
        }
        if (norm <= 0.0) c(truth, truth) = 1.0;
    }
    return c;
}

std::string ReadoutNoiseModel::describe() const {
    if (epsilon == 0.0) return "none";
    std::ostringstream out;
    out.precision(17);
    out << "readout:" << epsilon;
    if (!level_bias.empty()) {
        out << ";bias=";
        for (std::size_t k = 0; k < level_bias.size(); ++k) out << (k ? "," : "") << level_bias[k];
    }
    return out.str();
}

void ReadoutNoiseModel::validate(int d) const {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) fail(ErrorCode::invalid_argument, "readout epsilon must lie in [0, 1)");
    if (!level_bias.empty()) {
        if (static_cast<int>(level_bias.size()) != d) fail(ErrorCode::dimension_mismatch, "level bias needs d entries");
        for (double w : level_bias)
            if (!(w >= 0.0)) fail(ErrorCode::invalid_argument, "level bias must be >= 0");
    }
}

std::vector<double> apply_readout_noise(const std::vector<double> &probabilities, int d, int n,
                                        const ReadoutNoiseModel &noise) {
    if (probabilities.size() != checked_power(d, n)) fail(ErrorCode::dimension_mismatch, "probability vector size");
    std::vector<double> p = probabilities;
    if (noise.epsilon == 0.0) return p;
    const Eigen::MatrixXd c = noise.confusion(d);
    for (int r = 0; r < n; ++r) apply_local_real(p, c, d, n, r);
    normalize_simplex(p);
    return p;
}

const char *to_string(CountsMode mode) { return mode == CountsMode::sampled ? "sampled" : "exact"; }

CountsMode counts_mode_from_string(const std::string &text) {
    if (text == "sampled") return CountsMode::sampled;
    if (text == "exact") return CountsMode::exact;
    fail(ErrorCode::parse, "unknown counts mode '" + text + "'");
}

std::uint64_t record_seed(std::uint64_t seed, const Setting &setting) {
    std::uint64_t h = splitmix64(seed);
    for (int k : setting.indices) h = splitmix64(h ^ static_cast<std::uint64_t>(k + 1));
    return h;
}

std::vector<double> sample_multinomial(const std::vector<double> &probabilities, std::uint64_t shots,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> counts(probabilities.size(), 0.0);
    std::uint64_t remaining = shots;
    double mass = 1.0;
    // Sequential conditional binomials.
    for (std::size_t k = 0; k < probabilities.size() && remaining > 0; ++k) {
        if (k + 1 == probabilities.size()) {
            counts[k] = static_cast<double>(remaining);
            break;
        }
        const double q = mass > 0.0 ? std::clamp(probabilities[k] / mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::uint64_t> draw(remaining, q);
        const std::uint64_t hits = q > 0.0 ? draw(rng) : 0;
        counts[k] = static_cast<double>(hits);
        remaining -= hits;
        mass -= probabilities[k];
    }
    return counts;
}

CountsRecord sample_counts(const DensityMatrix &rho, const ObservableCatalog &catalog, const Setting &setting,
                           double shots, std::uint64_t seed, CountsMode mode, const ReadoutNoiseModel *noise) {
    if (!(shots >= 1.0)) fail(ErrorCode::invalid_argument, "shots must be >= 1");
    std::vector<double> p = probabilities(rho, catalog, setting);
    if (noise != nullptr) p = apply_readout_noise(p, rho.d(), rho.n(), *noise);

    CountsRecord record;
    record.setting = setting;
    record.shots = shots;
    record.mode = mode;
    record.noise = noise != nullptr ? noise->describe() : "none";
    record.seed = seed;
    if (mode == CountsMode::exact) {
        record.counts.resize(p.size());
        std::transform(p.begin(), p.end(), record.counts.begin(), [&](double v) { return shots * v; });
    } else {
        if (shots != std::floor(shots)) fail(ErrorCode::invalid_argument, "sampled mode needs an integer shot count");
        record.counts = sample_multinomial(p, static_cast<std::uint64_t>(shots), record_seed(seed, setting));
    }
    return record;
}

}  // namespace ectqst
