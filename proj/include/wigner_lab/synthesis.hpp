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

#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wigner_lab/matrix.hpp"
#include "wigner_lab/state_vector.hpp"

namespace wigner_lab {

inline constexpr double kSynthesisInputTol = 1e-10;
inline constexpr double kComposeTol = 1e-11;

struct SynthesisResult {
    SquareUnitary matrix;
    double residual;  // ||U v - e0|| or ||U e0 - t||
};

namespace detail {

inline void check_unit_input(std::span<const Amplitude> v, double tol) {
    if (v.empty()) {
        throw std::invalid_argument("cannot synthesize a unitary for an empty vector");
    }
    for (const auto &a : v) {
        if (!is_finite(a)) {
            throw std::invalid_argument("input vector has a non-finite entry");
        }
    }
    double n2 = squared_norm(v);
    if (n2 == 0) {
        throw std::invalid_argument("input vector is zero");
    }
    if (std::abs(std::sqrt(n2) - 1) > tol) {
        throw std::invalid_argument("input vector is not a unit vector (norm " + std::to_string(std::sqrt(n2)) + ")");
    }
}

/// e^{-i phi} (I - 2 w w^dagger / |w|^2), w = v - e^{i phi} e0, phi = arg v_0.
inline Matrix householder_to_e0(std::span<const Amplitude> v) {
    const std::size_t d = v.size();
    const Amplitude phase = std::polar(1.0, std::arg(v[0]));
    std::vector<Amplitude> w(v.begin(), v.end());
    w[0] -= phase;
    const double w2 = squared_norm(w);
    Matrix u = Matrix::identity(d);
    if (std::sqrt(w2) >= 1e-12) {
        for (std::size_t r = 0; r < d; r++) {
            for (std::size_t c = 0; c < d; c++) {
                u(r, c) -= 2.0 * w[r] * std::conj(w[c]) / w2;
            }
        }
    }
    const Amplitude unphase = std::conj(phase);
    for (std::size_t r = 0; r < d; r++) {
        for (std::size_t c = 0; c < d; c++) {
            u(r, c) *= unphase;
        }
    }
    return u;
}

}  // namespace detail

/// Deterministic unitary with U v = e0 exactly up to rounding: a single
/// Householder reflection followed by a global phase. For v = e^{i phi} e0
/// the reflection is skipped and U = e^{-i phi} I.
inline SynthesisResult synthesize_to_e0(std::span<const Amplitude> v, double tol = kSynthesisInputTol) {
    detail::check_unit_input(v, tol);
    SquareUnitary u(detail::householder_to_e0(v), 1e-10);
    std::vector<Amplitude> image = u.matrix() * v;
    image[0] -= 1.0;
    return {std::move(u), std::sqrt(squared_norm(image))};
}

inline SynthesisResult synthesize_to_e0(const StateVector &v) { return synthesize_to_e0(v.amplitudes()); }

/// Unitary with U e0 = t; the adjoint of synthesize_to_e0(t).
inline SynthesisResult synthesize_from_e0(std::span<const Amplitude> t, double tol = kSynthesisInputTol) {
    SquareUnitary u = synthesize_to_e0(t, tol).matrix.adjoint();
    std::vector<Amplitude> image = u.matrix().column(0);
    for (std::size_t k = 0; k < t.size(); k++) {
        image[k] -= t[k];
    }
    return {std::move(u), std::sqrt(squared_norm(image))};
}

inline SynthesisResult synthesize_from_e0(const StateVector &t) { return synthesize_from_e0(t.amplitudes()); }

/// second * first.
inline SquareUnitary compose(const SquareUnitary &second, const SquareUnitary &first) {
    if (second.dim() != first.dim()) {
        throw std::invalid_argument("cannot compose unitaries of dimension " + std::to_string(second.dim()) + " and " +
                                    std::to_string(first.dim()));
    }
    return SquareUnitary(second.matrix() * first.matrix(), kComposeTol);
}

}  // namespace wigner_lab
