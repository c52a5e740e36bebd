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
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wigner_lab/state_vector.hpp"

namespace wigner_lab {

/// Dense row-major complex matrix. No structural invariant beyond shape.
class Matrix {
   public:
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<Amplitude> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw std::invalid_argument("matrix data size does not match shape");
        }
    }

    /// Square matrix from nested rows; throws if ragged.
    Matrix(std::initializer_list<std::initializer_list<Amplitude>> rows) : rows_(rows.size()), cols_(0) {
        if (rows_ > 0) {
            cols_ = rows.begin()->size();
        }
        for (const auto &r : rows) {
            if (r.size() != cols_) {
                throw std::invalid_argument("ragged matrix rows");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t d) {
        Matrix m(d, d);
        for (std::size_t k = 0; k < d; k++) {
            m(k, k) = 1;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    std::span<const Amplitude> data() const { return data_; }

    Amplitude &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Amplitude operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Amplitude> column(std::size_t c) const {
        std::vector<Amplitude> out(rows_);
        for (std::size_t r = 0; r < rows_; r++) {
            out[r] = (*this)(r, c);
        }
        return out;
    }

    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; r++) {
            for (std::size_t c = 0; c < cols_; c++) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    bool operator==(const Matrix &) const = default;

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Amplitude> data_;
};

inline Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix product dimension mismatch");
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t k = 0; k < a.cols(); k++) {
            Amplitude x = a(r, k);
            for (std::size_t c = 0; c < b.cols(); c++) {
                out(r, c) += x * b(k, c);
            }
        }
    }
    return out;
}

inline std::vector<Amplitude> operator*(const Matrix &m, std::span<const Amplitude> v) {
    if (m.cols() != v.size()) {
        throw std::invalid_argument("matrix-vector dimension mismatch");
    }
    std::vector<Amplitude> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); r++) {
        Amplitude acc = 0;
        for (std::size_t c = 0; c < m.cols(); c++) {
            acc += m(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

struct UnitarityReport {
    bool unitary;
    double max_deviation;  // max entry of |U^dagger U - I|
};

inline UnitarityReport is_unitary(const Matrix &u, double tol = kTolUnitary) {
    if (!u.is_square()) {
        throw std::invalid_argument("unitarity check needs a square matrix, got " + std::to_string(u.rows()) + "x" +
                                    std::to_string(u.cols()));
    }
    std::size_t d = u.rows();
    double dev = 0;
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            Amplitude acc = 0;
            for (std::size_t k = 0; k < d; k++) {
                acc += std::conj(u(k, i)) * u(k, j);
            }
            if (i == j) {
                acc -= 1.0;
            }
            dev = std::max(dev, std::abs(acc));
        }
    }
    return {dev <= tol, dev};
}

/// A square matrix that passed a unitarity check at construction.
class SquareUnitary {
   public:
    explicit SquareUnitary(Matrix m, double tol = kTolUnitary) : matrix_(std::move(m)), tol_(tol) {
        auto report = is_unitary(matrix_, tol);
        for (const auto &a : matrix_.data()) {
            if (!is_finite(a)) {
                throw std::invalid_argument("matrix has a non-finite entry");
            }
        }
        if (!report.unitary) {
            throw std::invalid_argument("matrix is not unitary (max deviation " + std::to_string(report.max_deviation) +
                                        ")");
        }
    }

    static SquareUnitary identity(std::size_t d) { return SquareUnitary(Matrix::identity(d)); }

    std::size_t dim() const { return matrix_.rows(); }
    const Matrix &matrix() const { return matrix_; }
    Amplitude operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

    /// Tolerance the unitarity check passed at.
    double tolerance() const { return tol_; }

    SquareUnitary adjoint() const { return SquareUnitary(matrix_.adjoint(), tol_); }

   private:
    Matrix matrix_;
    double tol_;
};

inline StateVector apply(const SquareUnitary &u, const StateVector &v) {
    if (u.dim() != v.dim()) {
        throw std::invalid_argument("cannot apply a " + std::to_string(u.dim()) + "-dim unitary to a " +
                                    std::to_string(v.dim()) + "-dim state");
    }
    return StateVector(u.matrix() * v.amplitudes());
}

}  // namespace wigner_lab
