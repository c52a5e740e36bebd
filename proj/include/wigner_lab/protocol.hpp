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

// Canonical states, bases and matrices of the extended Wigner's friend
// protocol with a single super-observer (Charlie), plus the checks that
// expose its four-condition contradiction.
//
// Alice's qubit is the first (most significant) one, labelled h/t; Bob's
// qubit is the second, labelled 0/1. Charlie measures each in its own
// Hadamard basis {ok, fail}.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wigner_lab/basis.hpp"
#include "wigner_lab/matrix.hpp"
#include "wigner_lab/state_vector.hpp"

namespace wigner_lab::protocol {

enum class AliceOutcome { Heads, Tails };

inline std::string_view to_string(AliceOutcome o) { return o == AliceOutcome::Heads ? "h" : "t"; }

inline AliceOutcome opposite(AliceOutcome o) {
    return o == AliceOutcome::Heads ? AliceOutcome::Tails : AliceOutcome::Heads;
}

/// States reached when the transform keyed to the wrong outcome is applied.
///   ABht = R A_t01 psi_h0
///   ABth = R A_h0  psi_t01
enum class WrongStateLabel { ABht, ABth };

inline std::string_view to_string(WrongStateLabel l) { return l == WrongStateLabel::ABht ? "ABht" : "ABth"; }

enum class Party { A, B };

namespace detail {

inline double sq(double x) { return std::sqrt(x); }

}  // namespace detail

/// sqrt(1/3)|h> + sqrt(2/3)|t>.
inline StateVector alice_first_qubit() { return StateVector{detail::sq(1.0 / 3), detail::sq(2.0 / 3)}; }

inline StateVector prepare_second_qubit(AliceOutcome outcome) {
    if (outcome == AliceOutcome::Heads) {
        return StateVector{1.0, 0.0};
    }
    return StateVector{detail::sq(0.5), detail::sq(0.5)};
}

/// psi_h0 for Heads, psi_t01 for Tails.
inline StateVector initial_register(AliceOutcome outcome) {
    return tensor(alice_first_qubit(), prepare_second_qubit(outcome));
}

/// A_h0 (Heads) or A_t01 (Tails), entry for entry as published. Each maps
/// the matching initial register onto |00>.
inline SquareUnitary matrix_A(AliceOutcome outcome) {
    using detail::sq;
    const double a = sq(1.0 / 3), b = sq(2.0 / 3), c = sq(1.0 / 6);
    if (outcome == AliceOutcome::Heads) {
        return SquareUnitary(Matrix{
            {a, 0, b, 0},
            {0, a, 0, -b},
            {b, 0, -a, 0},
            {0, b, 0, a},
        });
    }
    return SquareUnitary(Matrix{
        {c, c, a, a},
        {a, a, -c, -c},
        {-c, c, a, -a},
        {a, -a, c, -c},
    });
}

/// R, mapping |00> onto the shared target state.
inline SquareUnitary matrix_R() {
    using detail::sq;
    const double a = sq(1.0 / 3), h = sq(0.5), c = sq(1.0 / 6), b = sq(2.0 / 3);
    return SquareUnitary(Matrix{
        {a, 0, h, c},
        {0, 1, 0, 0},
        {a, 0, -h, c},
        {a, 0, 0, -b},
    });
}

/// psi_AB = sqrt(1/3)(|h0> + |t0> + |t1>). The |h1> amplitude is exactly 0.
inline StateVector target_state() {
    const double a = detail::sq(1.0 / 3);
    return StateVector{a, 0.0, a, a};
}

inline MeasurementBasis alice_basis() { return MeasurementBasis::from_columns(Matrix::identity(2), {"h", "t"}); }

inline MeasurementBasis bob_basis() { return MeasurementBasis::computational(2); }

/// {ok = (e0 - e1)/sqrt2, fail = (e0 + e1)/sqrt2}, in that order. Same
/// vectors for both parties.
inline MeasurementBasis charlie_basis(Party) {
    const double h = detail::sq(0.5);
    return MeasurementBasis(std::vector<std::vector<Amplitude>>{{h, -h}, {h, h}}, {"ok", "fail"});
}

/// Both Charlie bases, A first.
inline std::array<MeasurementBasis, 2> charlie_bases() { return {charlie_basis(Party::A), charlie_basis(Party::B)}; }

inline StateVector wrong_state(WrongStateLabel label) {
    if (label == WrongStateLabel::ABht) {
        return apply(matrix_R(), apply(matrix_A(AliceOutcome::Tails), initial_register(AliceOutcome::Heads)));
    }
    return apply(matrix_R(), apply(matrix_A(AliceOutcome::Heads), initial_register(AliceOutcome::Tails)));
}

/// The four quantities whose joint values make the protocol contradictory.
struct ParadoxReport {
    Amplitude amp_h1;    // <h1|psi>: Alice h together with Bob 1
    Amplitude amp_0okA;  // |0>|ok>_A coefficient over {ok,fail}_A (x) {0,1}
    Amplitude amp_tokB;  // |t>|ok>_B coefficient over {h,t} (x) {ok,fail}_B
    double p_okok;       // P(ok_A, ok_B)
    bool contradiction_flag;
};

inline constexpr double kAuditTol = 1e-9;

inline ParadoxReport paradox_audit(const StateVector &state, double tol = kAuditTol) {
    if (state.num_qubits() != 2) {
        throw std::invalid_argument("paradox audit needs a 2-qubit state, got " + std::to_string(state.num_qubits()));
    }
    const MeasurementBasis ht = alice_basis();
    const MeasurementBasis zo = bob_basis();
    const MeasurementBasis okA = charlie_basis(Party::A);
    const MeasurementBasis okB = charlie_basis(Party::B);

    ParadoxReport r{};
    r.amp_h1 = change_basis(state, std::array{ht, zo}).at("h_1");
    r.amp_0okA = change_basis(state, std::array{okA, zo}).at("ok_0");
    r.amp_tokB = change_basis(state, std::array{ht, okB}).at("t_ok");
    r.p_okok = std::norm(change_basis(state, std::array{okA, okB}).at("ok_ok"));
    r.contradiction_flag = std::abs(r.amp_h1) <= tol && std::abs(r.amp_0okA) <= tol && std::abs(r.amp_tokB) <= tol &&
                           r.p_okok > tol;
    return r;
}

/// Non-orthogonal substitution views.
///   BS: {fail_A, t} (x) {0, 1}      (h eliminated via h = sqrt2 fail_A - t)
///   AS: {h, t} (x) {0, fail_B}      (1 eliminated via 1 = sqrt2 fail_B - 0)
enum class FrameView { BS, AS };

inline std::string_view to_string(FrameView v) { return v == FrameView::BS ? "bs" : "as"; }

inline Frame view_frame(FrameView view) {
    const double h = detail::sq(0.5);
    if (view == FrameView::BS) {
        std::array factors{Frame({{h, h}, {0.0, 1.0}}, {"fail", "t"}), Frame(bob_basis())};
        return Frame::product(factors);
    }
    std::array factors{Frame(alice_basis()), Frame({{1.0, 0.0}, {h, h}}, {"0", "fail"})};
    return Frame::product(factors);
}

inline ExpansionCoefficients frame_views(const StateVector &state, FrameView view) {
    if (state.num_qubits() != 2) {
        throw std::invalid_argument("frame views need a 2-qubit state");
    }
    return expand_in_frame(state, view_frame(view));
}

/// Keys: psi_A psi_AB psi_h0 psi_t01 psi_ABht psi_ABth.
inline std::optional<StateVector> lookup_state(std::string_view key) {
    if (key == "psi_A") return alice_first_qubit();
    if (key == "psi_AB") return target_state();
    if (key == "psi_h0") return initial_register(AliceOutcome::Heads);
    if (key == "psi_t01") return initial_register(AliceOutcome::Tails);
    if (key == "psi_ABht") return wrong_state(WrongStateLabel::ABht);
    if (key == "psi_ABth") return wrong_state(WrongStateLabel::ABth);
    return std::nullopt;
}

/// Keys: A_h0 A_t01 R.
inline std::optional<SquareUnitary> lookup_matrix(std::string_view key) {
    if (key == "A_h0") return matrix_A(AliceOutcome::Heads);
    if (key == "A_t01") return matrix_A(AliceOutcome::Tails);
    if (key == "R") return matrix_R();
    return std::nullopt;
}

inline constexpr std::array<std::string_view, 6> kStateKeys{"psi_A",   "psi_AB",   "psi_h0",
                                                             "psi_t01", "psi_ABht", "psi_ABth"};
inline constexpr std::array<std::string_view, 3> kMatrixKeys{"A_h0", "A_t01", "R"};

}  // namespace wigner_lab::protocol
