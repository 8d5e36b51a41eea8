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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ectqst/digits.hpp"

namespace ectqst {

/// How the diagonal representative sigma^(0) is realised. Both choices are
/// diagonal in the computational basis, so the measured basis is the same.
enum class MasMode {
    identity,         ///< sigma^(0) = I_d, all eigenvalues 1.
    first_generator,  ///< sigma^(0) = diag(1, -1, 0, ..., 0).
};

const char *to_string(MasMode mode);
MasMode mas_mode_from_string(const std::string &text);

struct Eigenpair {
    double value;
    Eigen::VectorXcd vector;
};

/// Single-qudit observables: the MAS representative at index 0 followed by
/// the d(d-1)/2 real off-diagonal generators and their imaginary partners.
///
/// Real index k in [1, d(d-1)/2] enumerates upper-triangular positions (a, b),
/// a < b, in row-major order. The generator has 1 at (a, b) and (b, a); its
/// imaginary partner k + d(d-1)/2 has +i at (a, b) and -i at (b, a).
///
/// Eigenvectors are stored in a canonical slot order: for an off-diagonal
/// generator at (a, b), slot a holds the +1 eigenvector, slot b the -1
/// eigenvector, and every other slot c holds |c>. This keeps the map between
/// outcome index digits and eigenvectors stable for product bases.
class ObservableCatalog {
   public:
    static ObservableCatalog build(int d, MasMode mas = MasMode::identity);

    int dimension() const noexcept { return d_; }
    MasMode mas() const noexcept { return mas_; }
    int size() const noexcept { return static_cast<int>(matrices_.size()); }
    int real_count() const noexcept { return d_ * (d_ - 1) / 2; }

    const Eigen::MatrixXcd &matrix(int k) const;
    std::span<const Eigenpair> eigensystem(int k) const;
    /// Columns are the eigenvectors in slot order.
    const Eigen::MatrixXcd &eigenbasis(int k) const;
    /// True when eigenbasis(k) is the identity matrix (diagonal observables).
    bool is_computational(int k) const;

    bool is_imaginary(int k) const;
    /// Upper-triangular position (a, b) of an off-diagonal generator.
    std::pair<int, int> position(int k) const;
    /// Index of the real generator supported on {a, b} (order-insensitive).
    int real_index(int a, int b) const;
    int imaginary_partner(int k) const;

    /// Copy of this catalog with the eigenvector slots of observable k
    /// permuted: new slot s holds old slot perm[s].
    ObservableCatalog with_permuted_slots(int k, std::span<const int> perm) const;

   private:
    ObservableCatalog(int d, MasMode mas);
    void check_index(int k) const;

    int d_;
    MasMode mas_;
    std::vector<Eigen::MatrixXcd> matrices_;
    std::vector<std::vector<Eigenpair>> eigensystems_;
    std::vector<Eigen::MatrixXcd> bases_;
    std::vector<bool> computational_;
    std::vector<std::pair<int, int>> positions_;
};

inline ObservableCatalog build_catalog(int d, MasMode mas = MasMode::identity) {
    return ObservableCatalog::build(d, mas);
}

}  // namespace ectqst
