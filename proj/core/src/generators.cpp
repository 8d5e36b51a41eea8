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
#include "ectqst/generators.hpp"

#include <cmath>
#include <string>

#include "ectqst/error.hpp"

namespace ectqst {

const char *to_string(MasMode mode) {
    return mode == MasMode::identity ? "identity" : "first-generator";
}

MasMode mas_mode_from_string(const std::string &text) {
    if (text == "identity") return MasMode::identity;
    if (text == "first-generator") return MasMode::first_generator;
    fail(ErrorCode::parse, "unknown MAS mode '" + text + "'");
}

ObservableCatalog::ObservableCatalog(int d, MasMode mas) : d_(d), mas_(mas) {}

ObservableCatalog ObservableCatalog::build(int d, MasMode mas) {
    if (d < 2) fail(ErrorCode::invalid_dimension, "qudit dimension must be >= 2, got " + std::to_string(d));
    ObservableCatalog catalog(d, mas);
    const Eigen::Index n = d;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex I(0.0, 1.0);

    // Index 0: MAS representative. Eigenvectors are the computational basis.
    Eigen::MatrixXcd mas_matrix = Eigen::MatrixXcd::Identity(n, n);
    if (mas == MasMode::first_generator) {
        mas_matrix.setZero();
        mas_matrix(0, 0) = 1.0;
        mas_matrix(1, 1) = -1.0;
    }
    std::vector<Eigenpair> mas_pairs;
    for (int c = 0; c < d; ++c) {
        mas_pairs.push_back({mas_matrix(c, c).real(), Eigen::VectorXcd::Unit(n, c)});
    }
    catalog.matrices_.push_back(mas_matrix);
    catalog.eigensystems_.push_back(std::move(mas_pairs));
    catalog.positions_.emplace_back(-1, -1);

    std::vector<std::pair<int, int>> upper;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) upper.emplace_back(a, b);

    for (int imaginary = 0; imaginary < 2; ++imaginary) {
        for (auto [a, b] : upper) {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
            std::vector<Eigenpair> pairs;
            pairs.reserve(static_cast<std::size_t>(d));
            for (int c = 0; c < d; ++c) {
                Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
                double value = 0.0;
                if (c == a || c == b) {
                    const double sign = (c == a) ? 1.0 : -1.0;
                    v(a) = inv_sqrt2;
                    // real: (|a> +- |b>)/sqrt2 ; imaginary: (|a> -+ i|b>)/sqrt2
                    v(b) = imaginary ? Complex(-sign * inv_sqrt2 * I) : Complex(sign * inv_sqrt2);
                    value = sign;
                } else {
                    v(c) = 1.0;
                }
                pairs.push_back({value, std::move(v)});
            }
            if (imaginary) {
                m(a, b) = I;
                m(b, a) = -I;
            } else {
                m(a, b) = 1.0;
                m(b, a) = 1.0;
            }
            catalog.matrices_.push_back(std::move(m));
            catalog.eigensystems_.push_back(std::move(pairs));
            catalog.positions_.emplace_back(a, b);
        }
    }

    for (const auto &pairs : catalog.eigensystems_) {
        Eigen::MatrixXcd basis(n, n);
        for (int c = 0; c < d; ++c) basis.col(c) = pairs[static_cast<std::size_t>(c)].vector;
        catalog.computational_.push_back(basis == Eigen::MatrixXcd::Identity(n, n));
        catalog.bases_.push_back(std::move(basis));
    }
    return catalog;
}

void ObservableCatalog::check_index(int k) const {
    if (k < 0 || k >= size()) {
        fail(ErrorCode::index_out_of_range,
             "observable index " + std::to_string(k) + " outside [0, " + std::to_string(size() - 1) + "]");
    }
}

const Eigen::MatrixXcd &ObservableCatalog::matrix(int k) const {
    check_index(k);
    return matrices_[static_cast<std::size_t>(k)];
}

std::span<const Eigenpair> ObservableCatalog::eigensystem(int k) const {
    check_index(k);
    return eigensystems_[static_cast<std::size_t>(k)];
}

const Eigen::MatrixXcd &ObservableCatalog::eigenbasis(int k) const {
    check_index(k);
    return bases_[static_cast<std::size_t>(k)];
}

bool ObservableCatalog::is_computational(int k) const {
    check_index(k);
    return computational_[static_cast<std::size_t>(k)];
}

bool ObservableCatalog::is_imaginary(int k) const {
    check_index(k);
    return k > real_count();
}

std::pair<int, int> ObservableCatalog::position(int k) const {
    check_index(k);
    if (k == 0) fail(ErrorCode::invalid_argument, "the MAS representative has no off-diagonal position");
    return positions_[static_cast<std::size_t>(k)];
}

int ObservableCatalog::real_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= d_ || a == b) {
        fail(ErrorCode::index_out_of_range,
             "no generator at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    // Row-major enumeration of the strict upper triangle, 1-based.
    return a * (2 * d_ - a - 1) / 2 + (b - a - 1) + 1;
}

int ObservableCatalog::imaginary_partner(int k) const {
    check_index(k);
    if (k == 0 || is_imaginary(k)) fail(ErrorCode::invalid_argument, "only real generators have partners");
    return k + real_count();
}

ObservableCatalog ObservableCatalog::with_permuted_slots(int k, std::span<const int> perm) const {
    check_index(k);
    if (static_cast<int>(perm.size()) != d_) fail(ErrorCode::invalid_argument, "permutation size mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(d_), false);
    for (int p : perm) {
        if (p < 0 || p >= d_ || seen[static_cast<std::size_t>(p)]) {
            fail(ErrorCode::invalid_argument, "not a permutation");
        }
        seen[static_cast<std::size_t>(p)] = true;
    }
    ObservableCatalog copy = *this;
    const auto &old_pairs = eigensystems_[static_cast<std::size_t>(k)];
    auto &pairs = copy.eigensystems_[static_cast<std::size_t>(k)];
    auto &basis = copy.bases_[static_cast<std::size_t>(k)];
    for (int s = 0; s < d_; ++s) {
        pairs[static_cast<std::size_t>(s)] = old_pairs[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])];
        basis.col(s) = pairs[static_cast<std::size_t>(s)].vector;
    }
    copy.computational_[static_cast<std::size_t>(k)] =
        basis == Eigen::MatrixXcd::Identity(d_, d_);
    return copy;
}

}  // namespace ectqst
