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
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ectqst/digits.hpp"

namespace ectqst {

/// Pure state over d^N levels storing only non-zero amplitudes.
class SparseStateVector {
   public:
    SparseStateVector(int d, int n);

    static SparseStateVector from_dense(int d, int n, const Eigen::VectorXcd &amplitudes);
    /// Computational basis state |index>.
    static SparseStateVector basis(int d, int n, std::size_t index);

    int d() const noexcept { return d_; }
    int n() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return dim_; }

    Complex amplitude(std::size_t index) const;
    void set(std::size_t index, Complex value);
    const std::map<std::size_t, Complex> &amplitudes() const noexcept { return amps_; }
    std::size_t nonzeros() const noexcept { return amps_.size(); }

    double norm_squared() const;
    bool is_normalized(double tolerance = 1e-12) const;
    Eigen::VectorXcd dense() const;

    /// Applies a 4x4 unitary to qubits (first, second); basis order |first second>.
    /// Qubit 0 is the most significant. Requires d == 2.
    void apply_two_qubit(int first, int second, const Eigen::Matrix4cd &gate);

   private:
    int d_;
    int n_;
    std::size_t dim_;
    std::map<std::size_t, Complex> amps_;
};

/// Hermitian, trace-one, positive semidefinite matrix over d^N levels.
class DensityMatrix {
   public:
    /// Validates Hermiticity (1e-12), unit trace (1e-10) and PSD (-1e-9).
    DensityMatrix(int d, int n, Eigen::MatrixXcd matrix);

    int d() const noexcept { return d_; }
    int n() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    const Eigen::MatrixXcd &matrix() const noexcept { return matrix_; }
    double purity() const;
    Eigen::VectorXd diagonal() const;

   private:
    int d_;
    int n_;
    Eigen::MatrixXcd matrix_;
};

SparseStateVector ghz_state(int d, int n);
SparseStateVector w_state_direct(int n);

/// One B(p) block: controlled-G(p) on (control, target) followed by a CNOT
/// controlled by target acting on control. B(p)|10> = sqrt(p)|10> + sqrt(1-p)|01>.
struct BlockGate {
    int control;
    int target;
    double p;
};

Eigen::Matrix4cd block_gate_matrix(double p);

/// Logarithmic-depth block tree. A node (n, m) covers m qubits and hands a
/// fraction n/m of the excitation to its first n qubits; its children are
/// (floor(n/2), n) and (floor((m-n)/2), m-n). Gates are listed layer by layer.
std::vector<BlockGate> w_state_block_circuit(int n);

/// Simulates w_state_block_circuit(n) on |10...0>.
SparseStateVector w_state_block_tree(int n);

/// Seeded random circuit: each layer applies, on every qubit independently,
/// either a Haar-random unitary (probability 1/2) or a random phase gate, then
/// CNOTs on a random matching of adjacent pairs. depth = 0 gives |0...0>.
SparseStateVector random_circuit_state(int n, int depth, std::uint64_t seed);

/// Number of diagonal entries |psi_i|^2 above cutoff.
std::size_t diagonal_fill(const SparseStateVector &psi, double cutoff = 1e-6);

DensityMatrix to_density(const SparseStateVector &psi);
DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights);
DensityMatrix maximally_mixed(int d, int n);

}  // namespace ectqst
