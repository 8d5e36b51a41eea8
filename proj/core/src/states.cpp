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
#include "ectqst/states.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <string>

#include "ectqst/error.hpp"

namespace ectqst {

namespace {

constexpr std::size_t kSparseLimit = std::size_t{1} << 24;
constexpr double kDropAmplitude = 1e-300;

void apply_single_qubit_dense(Eigen::VectorXcd &psi, int n, int qubit, const Eigen::Matrix2cd &u) {
    const std::size_t stride = std::size_t{1} << (n - 1 - qubit);
    const std::size_t dim = static_cast<std::size_t>(psi.size());
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const auto i0 = static_cast<Eigen::Index>(base + off);
            const auto i1 = static_cast<Eigen::Index>(base + off + stride);
            const Complex a = psi(i0);
            const Complex b = psi(i1);
            psi(i0) = u(0, 0) * a + u(0, 1) * b;
            psi(i1) = u(1, 0) * a + u(1, 1) * b;
        }
    }
}

void apply_cnot_dense(Eigen::VectorXcd &psi, int n, int control, int target) {
    const std::size_t cmask = std::size_t{1} << (n - 1 - control);
    const std::size_t tmask = std::size_t{1} << (n - 1 - target);
    for (std::size_t i = 0; i < static_cast<std::size_t>(psi.size()); ++i) {
        if ((i & cmask) && !(i & tmask)) std::swap(psi(static_cast<Eigen::Index>(i)), psi(static_cast<Eigen::Index>(i | tmask)));
    }
}

Eigen::Matrix2cd haar_unitary(std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Matrix2cd z;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) z(r, c) = Complex(gauss(rng), gauss(rng)) / std::sqrt(2.0);
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
    Eigen::Matrix2cd q = qr.householderQ();
    const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 2; ++c) {
        const double mag = std::abs(r(c, c));
        if (mag > 0.0) q.col(c) *= r(c, c) / mag;
    }
    return q;
}

}  // namespace

SparseStateVector::SparseStateVector(int d, int n) : d_(d), n_(n) {
    if (d < 2) fail(ErrorCode::invalid_dimension, "qudit dimension must be >= 2");
    if (n < 1) fail(ErrorCode::invalid_dimension, "qudit count must be >= 1");
    dim_ = checked_power(d, n, kSparseLimit);
}

SparseStateVector SparseStateVector::from_dense(int d, int n, const Eigen::VectorXcd &amplitudes) {
    SparseStateVector psi(d, n);
    if (static_cast<std::size_t>(amplitudes.size()) != psi.dim_) {
        fail(ErrorCode::dimension_mismatch, "amplitude vector has the wrong length");
    }
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) psi.set(static_cast<std::size_t>(i), amplitudes(i));
    return psi;
}

SparseStateVector SparseStateVector::basis(int d, int n, std::size_t index) {
    SparseStateVector psi(d, n);
    if (index >= psi.dim_) fail(ErrorCode::index_out_of_range, "basis index out of range");
    psi.set(index, 1.0);
    return psi;
}

Complex SparseStateVector::amplitude(std::size_t index) const {
    const auto it = amps_.find(index);
    return it == amps_.end() ? Complex{} : it->second;
}

void SparseStateVector::set(std::size_t index, Complex value) {
    if (index >= dim_) fail(ErrorCode::index_out_of_range, "amplitude index out of range");
    if (std::abs(value) <= kDropAmplitude) {
        amps_.erase(index);
    } else {
        amps_[index] = value;
    }
}

double SparseStateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &[index, amp] : amps_) total += std::norm(amp);
    return total;
}

bool SparseStateVector::is_normalized(double tolerance) const { return std::abs(norm_squared() - 1.0) <= tolerance; }

Eigen::VectorXcd SparseStateVector::dense() const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim_));
    for (const auto &[index, amp] : amps_) v(static_cast<Eigen::Index>(index)) = amp;
    return v;
}

void SparseStateVector::apply_two_qubit(int first, int second, const Eigen::Matrix4cd &gate) {
    if (d_ != 2) fail(ErrorCode::invalid_dimension, "two-qubit gates need d = 2");
    if (first < 0 || second < 0 || first >= n_ || second >= n_ || first == second) {
        fail(ErrorCode::index_out_of_range, "bad qubit pair for a two-qubit gate");
    }
    const std::size_t fmask = std::size_t{1} << (n_ - 1 - first);
    const std::size_t smask = std::size_t{1} << (n_ - 1 - second);
    std::map<std::size_t, Complex> out;
    std::map<std::size_t, bool> visited;
    for (const auto &[index, amp] : amps_) {
        const std::size_t rest = index & ~(fmask | smask);
        if (visited[rest]) continue;
        visited[rest] = true;
        Eigen::Vector4cd in;
        for (int local = 0; local < 4; ++local) {
            const std::size_t full = rest | ((local & 2) ? fmask : 0) | ((local & 1) ? smask : 0);
            in(local) = amplitude(full);
        }
        const Eigen::Vector4cd result = gate * in;
        for (int local = 0; local < 4; ++local) {
            if (std::abs(result(local)) <= kDropAmplitude) continue;
            out[rest | ((local & 2) ? fmask : 0) | ((local & 1) ? smask : 0)] = result(local);
        }
    }
    amps_ = std::move(out);
}

DensityMatrix::DensityMatrix(int d, int n, Eigen::MatrixXcd matrix) : d_(d), n_(n), matrix_(std::move(matrix)) {
    const std::size_t dim = checked_power(d, n);
    if (static_cast<std::size_t>(matrix_.rows()) != dim || matrix_.rows() != matrix_.cols()) {
        fail(ErrorCode::dimension_mismatch, "density matrix must be d^N x d^N");
    }
    const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) fail(ErrorCode::not_psd, "density matrix is not Hermitian");
    const Complex trace = matrix_.trace();
    if (std::abs(trace - 1.0) > 1e-10) fail(ErrorCode::not_normalized, "density matrix trace is not 1");
    matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(matrix_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-9) fail(ErrorCode::not_psd, "density matrix has a negative eigenvalue");
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

Eigen::VectorXd DensityMatrix::diagonal() const { return matrix_.diagonal().real(); }

SparseStateVector ghz_state(int d, int n) {
    if (d < 2 || n < 2) fail(ErrorCode::invalid_dimension, "GHZ state needs d >= 2 and N >= 2");
    SparseStateVector psi(d, n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int level = 0; level < d; ++level) {
        psi.set(from_digits(std::vector<int>(static_cast<std::size_t>(n), level), d), amp);
    }
    return psi;
}

SparseStateVector w_state_direct(int n) {
    if (n < 2) fail(ErrorCode::invalid_dimension, "W state needs N >= 2");
    SparseStateVector psi(2, n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (int r = 0; r < n; ++r) psi.set(std::size_t{1} << (n - 1 - r), amp);
    return psi;
}

Eigen::Matrix4cd block_gate_matrix(double p) {
    if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::invalid_argument, "B(p) needs 0 < p < 1");
    const double a = std::sqrt(p);
    const double b = std::sqrt(1.0 - p);
    // Controlled-G(p), G = [[a, -b], [b, a]], basis |control target>.
    Eigen::Matrix4cd cg = Eigen::Matrix4cd::Zero();
    cg(0, 0) = 1.0;
    cg(1, 1) = 1.0;
    cg(2, 2) = a;
    cg(3, 2) = b;
    cg(2, 3) = -b;
    cg(3, 3) = a;
    // CNOT with the target qubit as control: swaps |01> and |11>.
    Eigen::Matrix4cd inverted_cnot = Eigen::Matrix4cd::Zero();
    inverted_cnot(0, 0) = 1.0;
    inverted_cnot(2, 2) = 1.0;
    inverted_cnot(3, 1) = 1.0;
    inverted_cnot(1, 3) = 1.0;
    return inverted_cnot * cg;
}

std::vector<BlockGate> w_state_block_circuit(int n) {
    if (n < 2 || n > 20) fail(ErrorCode::invalid_dimension, "block-tree W state supports 2 <= N <= 20");
    struct Node {
        int split;
        int size;
        int offset;
    };
    std::vector<BlockGate> gates;
    std::deque<Node> layer{{n / 2, n, 0}};
    while (!layer.empty()) {
        std::deque<Node> next;
        for (const Node &node : layer) {
            if (node.size < 2) continue;
            gates.push_back({node.offset, node.offset + node.split,
                             static_cast<double>(node.split) / static_cast<double>(node.size)});
            const int rest = node.size - node.split;
            next.push_back({node.split / 2, node.split, node.offset});
            next.push_back({rest / 2, rest, node.offset + node.split});
        }
        layer = std::move(next);
    }
    return gates;
}

SparseStateVector w_state_block_tree(int n) {
    const std::vector<BlockGate> gates = w_state_block_circuit(n);
    SparseStateVector psi = SparseStateVector::basis(2, n, std::size_t{1} << (n - 1));
    for (const BlockGate &g : gates) psi.apply_two_qubit(g.control, g.target, block_gate_matrix(g.p));
    return psi;
}

SparseStateVector random_circuit_state(int n, int depth, std::uint64_t seed) {
    if (n < 1 || n > 12) fail(ErrorCode::size_guard, "random circuits support 1 <= N <= 12");
    if (depth < 0) fail(ErrorCode::invalid_argument, "circuit depth must be >= 0");
    const std::size_t dim = std::size_t{1} << n;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    psi(0) = 1.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int layer = 0; layer < depth; ++layer) {
        for (int q = 0; q < n; ++q) {
            if (uniform(rng) < 0.5) {
                apply_single_qubit_dense(psi, n, q, haar_unitary(rng));
            } else {
                Eigen::Matrix2cd phase = Eigen::Matrix2cd::Identity();
                phase(1, 1) = std::polar(1.0, 2.0 * std::numbers::pi * uniform(rng));
                apply_single_qubit_dense(psi, n, q, phase);
            }
        }
        const int offset = uniform(rng) < 0.5 ? 0 : 1;
        for (int q = offset; q + 1 < n; q += 2) {
            if (uniform(rng) < 0.5) {
                apply_cnot_dense(psi, n, q, q + 1);
            } else {
                apply_cnot_dense(psi, n, q + 1, q);
            }
        }
    }
    psi.normalize();
    return SparseStateVector::from_dense(2, n, psi);
}

std::size_t diagonal_fill(const SparseStateVector &psi, double cutoff) {
    return static_cast<std::size_t>(std::count_if(psi.amplitudes().begin(), psi.amplitudes().end(),
                                                  [&](const auto &kv) { return std::norm(kv.second) > cutoff; }));
}

DensityMatrix to_density(const SparseStateVector &psi) {
    if (!psi.is_normalized(1e-10)) fail(ErrorCode::not_normalized, "state vector is not normalized");
    const Eigen::VectorXcd v = psi.dense();
    return DensityMatrix(psi.d(), psi.n(), v * v.adjoint());
}

DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights) {
    if (states.empty() || states.size() != weights.size()) {
        fail(ErrorCode::invalid_argument, "mix needs one weight per state");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) fail(ErrorCode::invalid_argument, "mixture weights must be >= 0");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-10) fail(ErrorCode::not_normalized, "mixture weights must sum to 1");
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(states[0].matrix().rows(), states[0].matrix().cols());
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].d() != states[0].d() || states[k].n() != states[0].n()) {
            fail(ErrorCode::dimension_mismatch, "mixture components differ in dimension");
        }
        sum += weights[k] * states[k].matrix();
    }
    return DensityMatrix(states[0].d(), states[0].n(), std::move(sum));
}

DensityMatrix maximally_mixed(int d, int n) {
    const auto dim = static_cast<Eigen::Index>(checked_power(d, n));
    return DensityMatrix(d, n, Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

}  // namespace ectqst
