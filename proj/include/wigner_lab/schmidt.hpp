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

#include <Eigen/Dense>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wigner_lab/state_vector.hpp"

namespace wigner_lab {

/// Schmidt coefficients across the cut after the first `split` qubits,
/// in descending order. There are min(2^split, 2^(n-split)) of them.
inline std::vector<double> schmidt_values(const StateVector &v, std::size_t split) {
    if (split < 1 || split >= v.num_qubits()) {
        throw std::invalid_argument("split " + std::to_string(split) + " is not inside a " +
                                    std::to_string(v.num_qubits()) + "-qubit register");
    }
    auto rows = Eigen::Index{1} << split;
    auto cols = static_cast<Eigen::Index>(v.dim()) / rows;
    // Row-major reshape: row index = leading qubits, column index = trailing.
    Eigen::Matrix<Amplitude, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(rows, cols);
    for (Eigen::Index r = 0; r < rows; r++) {
        for (Eigen::Index c = 0; c < cols; c++) {
            m(r, c) = v[static_cast<std::size_t>(r * cols + c)];
        }
    }
    Eigen::JacobiSVD<decltype(m)> svd(m);
    const auto &s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

inline bool is_separable(const StateVector &v, std::size_t split, double tol = kTolRank) {
    auto s = schmidt_values(v, split);
    for (std::size_t k = 1; k < s.size(); k++) {
        if (s[k] > tol) {
            return false;
        }
    }
    return true;
}

}  // namespace wigner_lab
