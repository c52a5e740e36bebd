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

#include "wigner_lab/protocol.hpp"

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace wigner_lab;
using namespace wigner_lab::protocol;
using wigner_lab::test_util::s;

namespace {

void expect_amplitudes(const StateVector &v, const std::vector<double> &expected, double tol) {
    ASSERT_EQ(v.dim(), expected.size());
    for (std::size_t k = 0; k < expected.size(); k++) {
        EXPECT_NEAR(v[k].real(), expected[k], tol) << "index " << k;
        EXPECT_NEAR(v[k].imag(), 0.0, tol) << "index " << k;
    }
}

}  // namespace

TEST(protocol, first_qubit) {
    auto a = alice_first_qubit();
    expect_amplitudes(a, {0.57735, 0.81650}, 1e-5);
    EXPECT_NEAR(a.physical_norm_squared(), 1.0, 1e-15);
}

TEST(protocol, second_qubit) {
    expect_amplitudes(prepare_second_qubit(AliceOutcome::Heads), {1, 0}, 0);
    expect_amplitudes(prepare_second_qubit(AliceOutcome::Tails), {0.70711, 0.70711}, 1e-5);
}

TEST(protocol, initial_registers) {
    expect_amplitudes(initial_register(AliceOutcome::Heads), {s(1.0 / 3), 0, s(2.0 / 3), 0}, 1e-15);
    expect_amplitudes(initial_register(AliceOutcome::Tails), {s(1.0 / 6), s(1.0 / 6), s(1.0 / 3), s(1.0 / 3)}, 1e-15);
}

TEST(protocol, matrices_are_unitary) {
    for (auto key : kMatrixKeys) {
        auto m = lookup_matrix(key);
        ASSERT_TRUE(m.has_value()) << key;
        EXPECT_LE(is_unitary(m->matrix()).max_deviation, 1e-12) << key;
    }
}

TEST(protocol, transforms_send_registers_to_e0) {
    auto e0 = StateVector::basis(2, 0);
    for (auto o : {AliceOutcome::Heads, AliceOutcome::Tails}) {
        EXPECT_LE(distance(apply(matrix_A(o), initial_register(o)).amplitudes(), e0.amplitudes()), 1e-12);
    }
}

TEST(protocol, target_state_and_convergence) {
    auto ab = target_state();
    expect_amplitudes(ab, {s(1.0 / 3), 0, s(1.0 / 3), s(1.0 / 3)}, 1e-15);
    for (auto o : {AliceOutcome::Heads, AliceOutcome::Tails}) {
        auto out = apply(matrix_R(), apply(matrix_A(o), initial_register(o)));
        EXPECT_LE(distance(out.amplitudes(), ab.amplitudes()), 1e-12);
    }
}

TEST(protocol, wrong_states) {
    auto ht = wrong_state(WrongStateLabel::ABht);
    expect_amplitudes(ht, {0.8471, 0, 0.5137, -0.1361}, 1e-4);
    EXPECT_LE(std::abs(ht[1]), 1e-12);
    expect_amplitudes(wrong_state(WrongStateLabel::ABth), {0.6804, -0.2357, 0.6804, -0.1361}, 1e-4);
    for (auto l : {WrongStateLabel::ABht, WrongStateLabel::ABth}) {
        EXPECT_NEAR(wrong_state(l).physical_norm_squared(), 1.0, 1e-10);
    }
}

// Exact coefficients derived by hand:
//   ABht = R A_t01 psi_h0, ABth = R A_h0 psi_t01.
TEST(protocol, wrong_states_exact) {
    const double a = s(1.0 / 3), b = s(2.0 / 3), c = s(1.0 / 6), h = s(0.5);
    // A_t01 psi_h0 = (a c + b a, a a - b c, -a c + b a, a a + b c)
    std::vector<double> mid{a * c + b * a, a * a - b * c, -a * c + b * a, a * a + b * c};
    std::vector<double> ht{a * mid[0] + h * mid[2] + c * mid[3], mid[1], a * mid[0] - h * mid[2] + c * mid[3],
                           a * mid[0] - b * mid[3]};
    expect_amplitudes(wrong_state(WrongStateLabel::ABht), ht, 1e-14);
}

TEST(protocol, bases) {
    EXPECT_EQ(alice_basis().labels(), (std::vector<std::string>{"h", "t"}));
    EXPECT_EQ(bob_basis().labels(), (std::vector<std::string>{"0", "1"}));
    auto c = charlie_basis(Party::B);
    EXPECT_EQ(c.labels(), (std::vector<std::string>{"ok", "fail"}));
    EXPECT_NEAR(c.vector(0)[0].real(), s(0.5), 1e-15);
    EXPECT_NEAR(c.vector(0)[1].real(), -s(0.5), 1e-15);
}

TEST(paradox_audit, target_state_fires) {
    auto r = paradox_audit(target_state());
    EXPECT_LE(std::abs(r.amp_h1), 1e-12);
    EXPECT_LE(std::abs(r.amp_0okA), 1e-12);
    EXPECT_LE(std::abs(r.amp_tokB), 1e-12);
    EXPECT_NEAR(r.p_okok, 1.0 / 12, 1e-15);
    EXPECT_TRUE(r.contradiction_flag);
}

TEST(paradox_audit, product_and_wrong_states_do_not_fire) {
    EXPECT_FALSE(paradox_audit(initial_register(AliceOutcome::Heads)).contradiction_flag);
    EXPECT_FALSE(paradox_audit(wrong_state(WrongStateLabel::ABht)).contradiction_flag);
    EXPECT_FALSE(paradox_audit(wrong_state(WrongStateLabel::ABth)).contradiction_flag);
    EXPECT_THROW(paradox_audit(alice_first_qubit()), std::invalid_argument);
}

// The flag is exactly the conjunction of the four conditions.
TEST(paradox_audit, flag_is_conjunction) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; trial++) {
        auto v = test_util::random_state(2, rng);
        double tol = trial % 2 == 0 ? kAuditTol : 0.9;
        auto r = paradox_audit(v, tol);
        bool expected = std::abs(r.amp_h1) <= tol && std::abs(r.amp_0okA) <= tol && std::abs(r.amp_tokB) <= tol &&
                        r.p_okok > tol;
        EXPECT_EQ(r.contradiction_flag, expected);
    }
}

TEST(frame_views, wrong_state_views) {
    auto bs_ht = frame_views(wrong_state(WrongStateLabel::ABht), FrameView::BS);
    std::vector<double> e1{1.1980, 0, -0.3334, -0.1361};
    for (std::size_t k = 0; k < 4; k++) EXPECT_NEAR(bs_ht[k].real(), e1[k], 1e-4) << k;
    EXPECT_NEAR(bs_ht.naive_norm(), 1.5649, 1e-3);

    auto bs_th = frame_views(wrong_state(WrongStateLabel::ABth), FrameView::BS);
    std::vector<double> e2{0.9622, -0.3333, 0, 0.0996};
    for (std::size_t k = 0; k < 4; k++) EXPECT_NEAR(bs_th[k].real(), e2[k], 1e-4) << k;

    auto as_ht = frame_views(wrong_state(WrongStateLabel::ABht), FrameView::AS);
    EXPECT_EQ(as_ht.labels(), (std::vector<std::string>{"h_0", "h_fail", "t_0", "t_fail"}));
    std::vector<double> e3{0.8471, 0, 0.6498, -0.1925};
    for (std::size_t k = 0; k < 4; k++) EXPECT_NEAR(as_ht[k].real(), e3[k], 1e-4) << k;

    auto as_th = frame_views(wrong_state(WrongStateLabel::ABth), FrameView::AS);
    std::vector<double> e4{0.9161, -0.3333, 0.8165, -0.1925};
    for (std::size_t k = 0; k < 4; k++) EXPECT_NEAR(as_th[k].real(), e4[k], 1e-4) << k;
}

TEST(frame_views, naive_norm_differs_from_physical_norm) {
    for (auto l : {WrongStateLabel::ABht, WrongStateLabel::ABth}) {
        auto v = wrong_state(l);
        EXPECT_NEAR(v.physical_norm_squared(), 1.0, 1e-10);
        EXPECT_GT(std::abs(frame_views(v, FrameView::BS).naive_norm() - 1), 1e-3);
    }
}

TEST(registry, all_keys_resolve) {
    for (auto key : kStateKeys) EXPECT_TRUE(lookup_state(key).has_value()) << key;
    EXPECT_FALSE(lookup_state("psi_nope").has_value());
    EXPECT_FALSE(lookup_matrix("Q").has_value());
    EXPECT_EQ(*lookup_state("psi_ABth"), wrong_state(WrongStateLabel::ABth));
}
