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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wigner_lab {

using Amplitude = std::complex<double>;

/// Default tolerances shared by every module.
inline constexpr double kTolNorm = 1e-10;
inline constexpr double kTolUnitary = 1e-12;
inline constexpr double kTolRank = 1e-9;

inline bool is_finite(Amplitude a) { return std::isfinite(a.real()) && std::isfinite(a.imag()); }

inline double squared_norm(std::span<const Amplitude> amps) {
    double total = 0;
    for (const auto &a : amps) {
        total += std::norm(a);
    }
    return total;
}

/// Returns log2(n) when n is a positive power of two, otherwise throws.
inline std::size_t qubit_count_for_length(std::size_t n) {
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("amplitude count " + std::to_string(n) + " is not a power of two");
    }
    std::size_t q = 0;
    while ((std::size_t{1} << q) < n) {
        q++;
    }
    return q;
}

/// A normalized pure state over n qubits.
///
/// Amplitudes are indexed with the first qubit most significant, so the
/// two-qubit ket |a b> lives at index 2a+b. A 0-qubit state is not allowed.
class StateVector {
   public:
    explicit StateVector(std::vector<Amplitude> amplitudes, double tol = kTolNorm)
        : num_qubits_(qubit_count_for_length(amplitudes.size())), amplitudes_(std::move(amplitudes)) {
        if (num_qubits_ == 0) {
            throw std::invalid_argument("state vector needs at least one qubit");
        }
        for (const auto &a : amplitudes_) {
            if (!is_finite(a)) {
                throw std::invalid_argument("state vector has a non-finite amplitude");
            }
        }
        double n2 = squared_norm(amplitudes_);
        if (std::abs(n2 - 1) > tol) {
            throw std::invalid_argument("state vector is not normalized (squared norm " + std::to_string(n2) + ")");
        }
    }

    StateVector(std::initializer_list<Amplitude> amplitudes) : StateVector(std::vector<Amplitude>(amplitudes)) {}

    /// Computational basis vector |index> on num_qubits qubits.
    static StateVector basis(std::size_t num_qubits, std::size_t index) {
        std::size_t d = std::size_t{1} << num_qubits;
        if (index >= d) {
            throw std::out_of_range("basis index out of range");
        }
        std::vector<Amplitude> amps(d);
        amps[index] = 1;
        return StateVector(std::move(amps));
    }

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    Amplitude operator[](std::size_t k) const { return amplitudes_[k]; }
    double physical_norm_squared() const { return squared_norm(amplitudes_); }

    bool operator==(const StateVector &) const = default;

   private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

/// Max entrywise |a_k - b_k|.
inline double max_abs_diff(std::span<const Amplitude> a, std::span<const Amplitude> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dimension mismatch");
    }
    double m = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        m = std::max(m, std::abs(a[k] - b[k]));
    }
    return m;
}

/// Euclidean distance ||a - b||.
inline double distance(std::span<const Amplitude> a, std::span<const Amplitude> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dimension mismatch");
    }
    double total = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        total += std::norm(a[k] - b[k]);
    }
    return std::sqrt(total);
}

/// <a|b>, conjugating the first argument.
inline Amplitude inner(std::span<const Amplitude> a, std::span<const Amplitude> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner product dimension mismatch");
    }
    Amplitude total = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        total += std::conj(a[k]) * b[k];
    }
    return total;
}

inline Amplitude inner(const StateVector &a, const StateVector &b) { return inner(a.amplitudes(), b.amplitudes()); }

/// Kronecker product with `a` as the most significant factor.
inline std::vector<Amplitude> kron(std::span<const Amplitude> a, std::span<const Amplitude> b) {
    std::vector<Amplitude> out;
    out.reserve(a.size() * b.size());
    for (const auto &x : a) {
        for (const auto &y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

inline StateVector tensor(const StateVector &a, const StateVector &b) {
    return StateVector(kron(a.amplitudes(), b.amplitudes()));
}

}  // namespace wigner_lab
