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

// Orthonormal measurement bases, non-orthogonal frames, and the coefficient
// expansions of a state in either.
//
// Multi-subsystem bases and frames are always products of per-subsystem
// factors. The k-th product element enumerates label combinations with the
// first factor most significant, matching the state index convention, and its
// label joins the factor labels with '_' (e.g. "ok_fail").

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wigner_lab/matrix.hpp"
#include "wigner_lab/state_vector.hpp"

namespace wigner_lab {

namespace detail {

using EigenMatrix = Eigen::Matrix<Amplitude, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EigenVector = Eigen::Matrix<Amplitude, Eigen::Dynamic, 1>;

inline EigenMatrix to_eigen(const Matrix &m) {
    EigenMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); r++) {
        for (std::size_t c = 0; c < m.cols(); c++) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

/// Builds a square matrix whose k-th column is vectors[k].
inline Matrix columns_to_matrix(const std::vector<std::vector<Amplitude>> &vectors) {
    std::size_t d = vectors.size();
    Matrix m(d, d);
    for (std::size_t c = 0; c < d; c++) {
        if (vectors[c].size() != d) {
            throw std::invalid_argument("a " + std::to_string(d) + "-element basis needs vectors of length " +
                                        std::to_string(d));
        }
        for (std::size_t r = 0; r < d; r++) {
            m(r, c) = vectors[c][r];
        }
    }
    return m;
}

inline void check_labels(std::size_t d, const std::vector<std::string> &labels) {
    if (labels.size() != d) {
        throw std::invalid_argument("expected " + std::to_string(d) + " labels, got " + std::to_string(labels.size()));
    }
}

inline std::vector<std::string> join_labels(const std::vector<std::string> &a, const std::vector<std::string> &b) {
    std::vector<std::string> joined;
    joined.reserve(a.size() * b.size());
    for (const auto &x : a) {
        for (const auto &y : b) {
            joined.push_back(x + "_" + y);
        }
    }
    return joined;
}

/// Kronecker product of the column matrices together with joined labels.
template <typename Factor>
std::pair<Matrix, std::vector<std::string>> product_columns(std::span<const Factor> factors) {
    if (factors.empty()) {
        throw std::invalid_argument("product of zero factors");
    }
    Matrix cols = factors[0].columns();
    std::vector<std::string> labels = factors[0].labels();
    for (std::size_t f = 1; f < factors.size(); f++) {
        const Matrix &b = factors[f].columns();
        Matrix next(cols.rows() * b.rows(), cols.cols() * b.cols());
        for (std::size_t r1 = 0; r1 < cols.rows(); r1++) {
            for (std::size_t c1 = 0; c1 < cols.cols(); c1++) {
                for (std::size_t r2 = 0; r2 < b.rows(); r2++) {
                    for (std::size_t c2 = 0; c2 < b.cols(); c2++) {
                        next(r1 * b.rows() + r2, c1 * b.cols() + c2) = cols(r1, c1) * b(r2, c2);
                    }
                }
            }
        }
        cols = std::move(next);
        labels = join_labels(labels, factors[f].labels());
    }
    return {std::move(cols), std::move(labels)};
}

inline double smallest_singular_value(const Matrix &m) {
    Eigen::JacobiSVD<EigenMatrix> svd(to_eigen(m));
    const auto &s = svd.singularValues();
    return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

}  // namespace detail

/// Ordered orthonormal basis of one subsystem (or a product of subsystems).
class MeasurementBasis {
   public:
    /// vectors[k] is the k-th basis vector.
    MeasurementBasis(const std::vector<std::vector<Amplitude>> &vectors, std::vector<std::string> labels)
        : MeasurementBasis(detail::columns_to_matrix(vectors), std::move(labels), 0) {}

    /// Basis vectors are the columns of `columns`.
    static MeasurementBasis from_columns(Matrix columns, std::vector<std::string> labels) {
        return MeasurementBasis(std::move(columns), std::move(labels), 0);
    }

    /// {|0>, |1>, ...} labelled by index.
    static MeasurementBasis computational(std::size_t d = 2) {
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < d; k++) {
            labels.push_back(std::to_string(k));
        }
        return from_columns(Matrix::identity(d), std::move(labels));
    }

    static MeasurementBasis product(std::span<const MeasurementBasis> factors) {
        auto [cols, labels] = detail::product_columns(factors);
        return from_columns(std::move(cols), std::move(labels));
    }

    std::size_t dim() const { return columns_.rows(); }
    const Matrix &columns() const { return columns_; }
    const std::vector<std::string> &labels() const { return labels_; }
    std::vector<Amplitude> vector(std::size_t k) const { return columns_.column(k); }

    /// Index of `label`; throws std::out_of_range when absent.
    std::size_t index_of(const std::string &label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw std::out_of_range("no basis label '" + label + "'");
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }

   private:
    MeasurementBasis(Matrix columns, std::vector<std::string> labels, int)
        : columns_(std::move(columns)), labels_(std::move(labels)) {
        if (!columns_.is_square() || columns_.rows() == 0) {
            throw std::invalid_argument("basis must have as many vectors as dimensions");
        }
        detail::check_labels(dim(), labels_);
        auto report = is_unitary(columns_, kTolUnitary);
        if (!report.unitary) {
            throw std::invalid_argument("basis is not orthonormal (max |<b_i|b_j> - delta_ij| = " +
                                        std::to_string(report.max_deviation) + ")");
        }
    }

    Matrix columns_;
    std::vector<std::string> labels_;
};

/// Ordered spanning set of linearly independent, not necessarily orthogonal,
/// vectors.
class Frame {
   public:
    /// vectors[k] is the k-th frame vector.
    Frame(const std::vector<std::vector<Amplitude>> &vectors, std::vector<std::string> labels)
        : Frame(detail::columns_to_matrix(vectors), std::move(labels), 0) {}

    static Frame from_columns(Matrix columns, std::vector<std::string> labels) {
        return Frame(std::move(columns), std::move(labels), 0);
    }

    // Every orthonormal basis is a frame.
    Frame(const MeasurementBasis &basis) : Frame(basis.columns(), basis.labels(), 0) {}  // NOLINT

    static Frame product(std::span<const Frame> factors) {
        auto [cols, labels] = detail::product_columns(factors);
        return from_columns(std::move(cols), std::move(labels));
    }

    std::size_t dim() const { return columns_.rows(); }
    const Matrix &columns() const { return columns_; }
    const std::vector<std::string> &labels() const { return labels_; }
    std::vector<Amplitude> vector(std::size_t k) const { return columns_.column(k); }
    double smallest_singular_value() const { return smallest_sv_; }

   private:
    Frame(Matrix columns, std::vector<std::string> labels, int)
        : columns_(std::move(columns)), labels_(std::move(labels)) {
        if (!columns_.is_square() || columns_.rows() == 0) {
            throw std::invalid_argument("frame must have as many vectors as dimensions");
        }
        detail::check_labels(dim(), labels_);
        for (const auto &a : columns_.data()) {
            if (!is_finite(a)) {
                throw std::invalid_argument("frame has a non-finite entry");
            }
        }
        smallest_sv_ = detail::smallest_singular_value(columns_);
        if (!(smallest_sv_ > kTolRank)) {
            throw std::invalid_argument("frame vectors are linearly dependent (smallest singular value " +
                                        std::to_string(smallest_sv_) + ")");
        }
    }

    Matrix columns_;
    std::vector<std::string> labels_;
    double smallest_sv_ = 0;
};

/// Coefficients of a state over a labelled basis or frame.
///
/// naive_norm is sum |c_i|^2. It equals the physical squared norm of the
/// expanded state only when the underlying vectors are orthonormal.
class ExpansionCoefficients {
   public:
    ExpansionCoefficients(std::vector<std::string> labels, std::vector<Amplitude> coefficients)
        : labels_(std::move(labels)), coefficients_(std::move(coefficients)) {
        if (labels_.size() != coefficients_.size()) {
            throw std::invalid_argument("label/coefficient count mismatch");
        }
        naive_norm_ = squared_norm(coefficients_);
    }

    const std::vector<std::string> &labels() const { return labels_; }
    std::span<const Amplitude> coefficients() const { return coefficients_; }
    std::size_t size() const { return coefficients_.size(); }
    Amplitude operator[](std::size_t k) const { return coefficients_[k]; }
    double naive_norm() const { return naive_norm_; }

    Amplitude at(const std::string &label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw std::out_of_range("no coefficient labelled '" + label + "'");
        }
        return coefficients_[static_cast<std::size_t>(it - labels_.begin())];
    }

   private:
    std::vector<std::string> labels_;
    std::vector<Amplitude> coefficients_;
    double naive_norm_;
};

namespace detail {

inline std::size_t product_dim(std::span<const MeasurementBasis> bases) {
    std::size_t d = 1;
    for (const auto &b : bases) {
        d *= b.dim();
    }
    return d;
}

}  // namespace detail

/// c_k = <B_k|v> for the product basis B = bases[0] (x) bases[1] (x) ...
///
/// Applies each factor's adjoint along its own tensor axis, so the full
/// product basis is never materialized.
inline ExpansionCoefficients change_basis(const StateVector &v, std::span<const MeasurementBasis> bases) {
    if (bases.empty()) {
        throw std::invalid_argument("change_basis needs at least one basis");
    }
    if (detail::product_dim(bases) != v.dim()) {
        throw std::invalid_argument("product of basis dimensions (" + std::to_string(detail::product_dim(bases)) +
                                    ") does not match state dimension (" + std::to_string(v.dim()) + ")");
    }
    std::vector<Amplitude> cur(v.amplitudes().begin(), v.amplitudes().end());
    std::vector<Amplitude> next(cur.size());
    std::size_t outer = 1;
    for (const auto &basis : bases) {
        std::size_t d = basis.dim();
        std::size_t inner_size = cur.size() / (outer * d);
        const Matrix &m = basis.columns();
        for (std::size_t o = 0; o < outer; o++) {
            for (std::size_t k = 0; k < d; k++) {
                for (std::size_t i = 0; i < inner_size; i++) {
                    Amplitude acc = 0;
                    for (std::size_t j = 0; j < d; j++) {
                        acc += std::conj(m(j, k)) * cur[(o * d + j) * inner_size + i];
                    }
                    next[(o * d + k) * inner_size + i] = acc;
                }
            }
        }
        std::swap(cur, next);
        outer *= d;
    }
    std::vector<std::string> labels = bases[0].labels();
    for (std::size_t f = 1; f < bases.size(); f++) {
        labels = detail::join_labels(labels, bases[f].labels());
    }
    return ExpansionCoefficients(std::move(labels), std::move(cur));
}

inline ExpansionCoefficients change_basis(const StateVector &v, const MeasurementBasis &basis) {
    return change_basis(v, std::span<const MeasurementBasis>(&basis, 1));
}

/// Solves F c = v, where F's columns are the frame vectors, by LU with
/// partial pivoting.
inline ExpansionCoefficients expand_in_frame(std::span<const Amplitude> v, const Frame &frame) {
    if (frame.dim() != v.size()) {
        throw std::invalid_argument("frame dimension " + std::to_string(frame.dim()) +
                                    " does not match vector dimension " + std::to_string(v.size()));
    }
    detail::EigenVector rhs(v.size());
    for (std::size_t k = 0; k < v.size(); k++) {
        rhs(static_cast<Eigen::Index>(k)) = v[k];
    }
    Eigen::PartialPivLU<detail::EigenMatrix> lu(detail::to_eigen(frame.columns()));
    detail::EigenVector c = lu.solve(rhs);
    return ExpansionCoefficients(frame.labels(), std::vector<Amplitude>(c.data(), c.data() + c.size()));
}

inline ExpansionCoefficients expand_in_frame(const StateVector &v, const Frame &frame) {
    return expand_in_frame(v.amplitudes(), frame);
}

inline ExpansionCoefficients expand_in_frame(const StateVector &v, std::span<const Frame> factors) {
    return expand_in_frame(v.amplitudes(), Frame::product(factors));
}

/// sum_i c_i f_i.
inline std::vector<Amplitude> reconstruct(const ExpansionCoefficients &coeffs, const Frame &frame) {
    if (coeffs.size() != frame.dim()) {
        throw std::invalid_argument("coefficient count does not match frame size");
    }
    return frame.columns() * coeffs.coefficients();
}

}  // namespace wigner_lab
