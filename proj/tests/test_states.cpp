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
#include <gtest/gtest.h>

#include <random>

#include "ectqst/error.hpp"
#include "ectqst/states.hpp"
#include "test_support.hpp"

namespace ectqst {
namespace {

// Distance between states modulo a global phase.
double phase_distance(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    const Complex overlap = b.dot(a);
    const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

TEST(Ghz, Amplitudes) {
    const auto bell = ghz_state(2, 2);
    EXPECT_EQ(bell.nonzeros(), 2U);
    EXPECT_NEAR(bell.amplitude(0).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(bell.amplitude(3).real(), 1 / std::sqrt(2.0), 1e-15);
    const auto qutrit = ghz_state(3, 2);
    for (std::size_t k : {0U, 4U, 8U}) EXPECT_NEAR(std::norm(qutrit.amplitude(k)), 1.0 / 3, 1e-15);
    const auto seven = ghz_state(2, 7);
    EXPECT_EQ(seven.nonzeros(), 2U);
    EXPECT_NEAR(seven.amplitude(127).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_TRUE(seven.is_normalized());
    EXPECT_THROW(ghz_state(1, 3), Error);
    EXPECT_THROW(ghz_state(2, 0), Error);
}

TEST(W, Direct) {
    const auto w2 = w_state_direct(2);
    EXPECT_NEAR(w2.amplitude(1).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(w2.amplitude(2).real(), 1 / std::sqrt(2.0), 1e-15);
    const auto w3 = w_state_direct(3);
    for (std::size_t k : {1U, 2U, 4U}) EXPECT_NEAR(w3.amplitude(k).real(), 1 / std::sqrt(3.0), 1e-15);
    const auto rho = to_density(w_state_direct(7));
    int nonzero = 0;
    for (Eigen::Index k = 0; k < rho.diagonal().size(); ++k) {
        if (rho.diagonal()(k) > 0) {
            ++nonzero;
            EXPECT_NEAR(rho.diagonal()(k), 1.0 / 7, 1e-15);
        }
    }
    EXPECT_EQ(nonzero, 7);
}

TEST(W, BlockGate) {
    const double p = 0.3;
    const Eigen::Matrix4cd b = block_gate_matrix(p);
    EXPECT_LE((b.adjoint() * b - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 1e-15);
    Eigen::Vector4cd e00 = Eigen::Vector4cd::Zero();
    e00(0) = 1;
    Eigen::Vector4cd e10 = Eigen::Vector4cd::Zero();
    e10(2) = 1;
    EXPECT_LE((b * e00 - e00).norm(), 1e-15);
    Eigen::Vector4cd expected = Eigen::Vector4cd::Zero();
    expected(2) = std::sqrt(p);
    expected(1) = std::sqrt(1 - p);
    EXPECT_LE((b * e10 - expected).norm(), 1e-15);
}

TEST(W, BlockTreeMatchesDirectUpToTwenty) {
    for (int n = 2; n <= 20; ++n) {
        const auto tree = w_state_block_tree(n);
        const auto direct = w_state_direct(n);
        EXPECT_EQ(tree.nonzeros(), static_cast<std::size_t>(n)) << n;
        // Compare on the union of supports; everything else is zero in both.
        Complex phase(0.0);
        for (const auto &[k, a] : direct.amplitudes()) phase += std::conj(a) * tree.amplitude(k);
        phase /= std::abs(phase);
        double err = 0.0;
        for (const auto &[k, a] : tree.amplitudes()) err = std::max(err, std::abs(a - phase * direct.amplitude(k)));
        for (const auto &[k, a] : direct.amplitudes()) err = std::max(err, std::abs(tree.amplitude(k) - phase * a));
        EXPECT_LE(err, 1e-10) << "N=" << n;
    }
    const auto circuit = w_state_block_circuit(10);
    EXPECT_EQ(circuit.size(), 9U);
    for (const auto &g : circuit) {
        EXPECT_GT(g.p, 0.0);
        EXPECT_LT(g.p, 1.0);
    }
}

TEST(Random, DeterministicAndNormalised) {
    const auto zero = random_circuit_state(4, 0, 99);
    EXPECT_EQ(zero.nonzeros(), 1U);
    EXPECT_NEAR(std::abs(zero.amplitude(0)), 1.0, 1e-15);
    const auto a = random_circuit_state(5, 3, 1234);
    const auto b = random_circuit_state(5, 3, 1234);
    EXPECT_EQ(a.amplitudes(), b.amplitudes());
    EXPECT_TRUE(a.is_normalized(1e-12));
    const auto c = random_circuit_state(5, 3, 1235);
    EXPECT_GT(phase_distance(a.dense(), c.dense()), 1e-3);
    EXPECT_THROW(random_circuit_state(13, 1, 0), Error);
}

TEST(Random, FillSpreadsAtSevenQubits) {
    std::size_t lo = 1000, hi = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t fill = diagonal_fill(random_circuit_state(7, 3, seed));
        lo = std::min(lo, fill);
        hi = std::max(hi, fill);
    }
    EXPECT_LE(lo, 32U);
    EXPECT_GE(hi, 64U);
}

TEST(Density, PurityMixAndValidation) {
    std::mt19937_64 rng(4);
    const auto psi = SparseStateVector::from_dense(2, 3, oracle::random_pure(8, rng));
    EXPECT_NEAR(to_density(psi).purity(), 1.0, 1e-10);
    const DensityMatrix zero = to_density(SparseStateVector::basis(2, 1, 0));
    const DensityMatrix one = to_density(SparseStateVector::basis(2, 1, 1));
    const std::vector<DensityMatrix> parts = {zero, one};
    const std::vector<double> half = {0.5, 0.5};
    const DensityMatrix mixed = mix(parts, half);
    EXPECT_LE((mixed.matrix() - 0.5 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-15);

    std::vector<DensityMatrix> comps;
    for (int k = 0; k < 3; ++k) comps.push_back(to_density(SparseStateVector::from_dense(2, 3, oracle::random_pure(8, rng))));
    const std::vector<double> w = {0.2, 0.3, 0.5};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mix(comps, w).matrix());
    int rank = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) rank += es.eigenvalues()(k) > 1e-10 ? 1 : 0;
    EXPECT_EQ(rank, 3);

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_THROW(DensityMatrix(2, 1, bad), Error);  // trace 2
    bad << 1.5, 0, 0, -0.5;
    try {
        DensityMatrix(2, 1, bad);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::not_psd);
    }
    bad << 0.5, 0.1, 0.2, 0.5;
    EXPECT_THROW(DensityMatrix(2, 1, bad), Error);
    EXPECT_NEAR(maximally_mixed(3, 2).purity(), 1.0 / 9, 1e-15);
}

TEST(Sparse, Basics) {
    SparseStateVector v(3, 2);
    v.set(4, Complex(0.6, 0));
    v.set(8, Complex(0, 0.8));
    EXPECT_TRUE(v.is_normalized());
    EXPECT_EQ(v.nonzeros(), 2U);
    v.set(8, 0.0);
    EXPECT_EQ(v.nonzeros(), 1U);
    EXPECT_THROW(v.set(9, 1.0), Error);
    EXPECT_THROW(SparseStateVector(3, 2).apply_two_qubit(0, 1, Eigen::Matrix4cd::Identity()), Error);
}

}  // namespace
}  // namespace ectqst
