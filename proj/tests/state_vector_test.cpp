// Copyright 2026 The wigner_lab Authors
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

#include "wigner_lab/state_vector.hpp"

#include <limits>
#include <random>

#include "gtest/gtest.h"
#include "test_util.hpp"
#include "wigner_lab/matrix.hpp"
#include "wigner_lab/protocol.hpp"

using namespace wigner_lab;
using wigner_lab::test_util::s;

TEST(state_vector, rejects_bad_lengths_and_norms) {
    EXPECT_THROW(StateVector(std::vector<Amplitude>{}), std::invalid_argument);
    EXPECT_THROW(StateVector(std::vector<Amplitude>{1.0}), std::invalid_argument);  // 0 qubits
    EXPECT_THROW((StateVector{1.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW((StateVector{1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW((StateVector{std::numeric_limits<double>::quiet_NaN(), 0.0}), std::invalid_argument);
    EXPECT_THROW((StateVector{std::numeric_limits<double>::infinity(), 0.0}), std::invalid_argument);
    EXPECT_NO_THROW((StateVector{Amplitude(0, 1), 0.0}));
}

TEST(state_vector, basis_and_index_convention) {
    auto v = StateVector::basis(2, 2);  // |1 0>
    EXPECT_EQ(v.num_qubits(), 2u);
    EXPECT_EQ(v[2], Amplitude(1));
    EXPECT_THROW(StateVector::basis(2, 4), std::out_of_range);
}

TEST(tensor, identity_case) {
    auto e0 = StateVector::basis(1, 0);
    EXPECT_EQ(tensor(e0, e0), StateVector::basis(2, 0));
}

TEST(tensor, heads_register) {
    auto v = tensor(StateVector{s(1.0 / 3), s(2.0 / 3)}, StateVector{1.0, 0.0});
    EXPECT_EQ(v.num_qubits(), 2u);
    EXPECT_LE(max_abs_diff(v.amplitudes(), std::vector<Amplitude>{s(1.0 / 3), 0, s(2.0 / 3), 0}), 1e-15);
}

TEST(tensor, tails_register) {
    auto v = tensor(StateVector{s(1.0 / 3), s(2.0 / 3)}, StateVector{s(0.5), s(0.5)});
    std::vector<Amplitude> expected{s(1.0 / 6), s(1.0 / 6), s(1.0 / 3), s(1.0 / 3)};
    EXPECT_LE(max_abs_diff(v.amplitudes(), expected), 1e-15);
}

TEST(tensor, index_is_first_factor_major) {
    std::mt19937_64 rng(11);
    auto a = test_util::random_state(1, rng);
    auto b = test_util::random_state(2, rng);
    auto ab = tensor(a, b);
    ASSERT_EQ(ab.num_qubits(), 3u);
    for (std::size_t i = 0; i < 2; i++) {
        for (std::size_t j = 0; j < 4; j++) {
            EXPECT_LE(std::abs(ab[i * 4 + j] - a[i] * b[j]), 1e-15);
        }
    }
}

TEST(inner, normalization_and_orthogonality) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; trial++) {
        auto v = test_util::random_state(3, rng);
        EXPECT_NEAR(inner(v, v).real(), 1.0, 1e-12);
        EXPECT_NEAR(inner(v, v).imag(), 0.0, 1e-12);
    }
    StateVector ok{s(0.5), -s(0.5)}, fail{s(0.5), s(0.5)};
    EXPECT_NEAR(std::abs(inner(ok, fail)), 0.0, 1e-16);
}

TEST(inner, conjugates_first_argument) {
    StateVector a{Amplitude(0, 1), 0.0};
    StateVector b{1.0, 0.0};
    EXPECT_EQ(inner(a, b), Amplitude(0, -1));
    EXPECT_EQ(inner(b, a), Amplitude(0, 1));
}

TEST(inner, heads_amplitude_of_first_qubit) {
    auto h = StateVector::basis(1, 0);
    EXPECT_NEAR(inner(h, protocol::alice_first_qubit()).real(), s(1.0 / 3), 1e-15);
}

TEST(inner, dimension_mismatch) {
    EXPECT_THROW(inner(StateVector::basis(1, 0), StateVector::basis(2, 0)), std::invalid_argument);
}

TEST(is_unitary, identity) {
    auto r = is_unitary(Matrix::identity(4));
    EXPECT_TRUE(r.unitary);
    EXPECT_EQ(r.max_deviation, 0.0);
}

TEST(is_unitary, duplicated_row_is_rejected) {
    // Two equal rows: columns are no longer orthonormal; U^dagger U picks up
    // an off-diagonal entry of magnitude 1/2 + 1/2 = 1 between columns 0 and 1.
    const double h = s(0.5);
    Matrix m{{h, h}, {h, h}};
    auto r = is_unitary(m, 1e-12);
    EXPECT_FALSE(r.unitary);
    EXPECT_NEAR(r.max_deviation, 1.0, 1e-15);
}

TEST(is_unitary, non_square) {
    EXPECT_THROW(is_unitary(Matrix(2, 3)), std::invalid_argument);
}

TEST(is_unitary, published_tails_matrix) {
    auto r = is_unitary(protocol::matrix_A(protocol::AliceOutcome::Tails).matrix());
    EXPECT_TRUE(r.unitary);
    EXPECT_LE(r.max_deviation, 1e-12);
}

TEST(square_unitary, constructor_enforces_invariant) {
    EXPECT_THROW(SquareUnitary(Matrix{{1.0, 1.0}, {0.0, 1.0}}), std::invalid_argument);
    EXPECT_NO_THROW(SquareUnitary(Matrix{{0.0, 1.0}, {1.0, 0.0}}));
}

TEST(apply, identity_and_published_examples) {
    std::mt19937_64 rng(2);
    auto v = test_util::random_state(2, rng);
    EXPECT_LE(max_abs_diff(apply(SquareUnitary::identity(4), v).amplitudes(), v.amplitudes()), 0.0);

    auto e0 = apply(protocol::matrix_A(protocol::AliceOutcome::Heads), StateVector{s(1.0 / 3), 0.0, s(2.0 / 3), 0.0});
    EXPECT_LE(max_abs_diff(e0.amplitudes(), StateVector::basis(2, 0).amplitudes()), 1e-15);

    auto ab = apply(protocol::matrix_R(), StateVector::basis(2, 0));
    EXPECT_LE(max_abs_diff(ab.amplitudes(), std::vector<Amplitude>{s(1.0 / 3), 0, s(1.0 / 3), s(1.0 / 3)}), 1e-15);
}

TEST(apply, dimension_mismatch) {
    EXPECT_THROW(apply(SquareUnitary::identity(2), StateVector::basis(2, 0)), std::invalid_argument);
}

// Every unitary passing the check at 1e-12 preserves the norm to 1e-10.
TEST(apply, property_norm_preservation) {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 200; trial++) {
        std::size_t q = 1 + trial % 5;
        auto u = test_util::random_unitary(std::size_t{1} << q, rng);
        ASSERT_TRUE(is_unitary(u, 1e-12).unitary);
        SquareUnitary U(u);
        auto v = test_util::random_state(q, rng);
        EXPECT_LE(std::abs(apply(U, v).physical_norm_squared() - 1), 1e-10);
    }
}
