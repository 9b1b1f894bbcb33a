// Copyright 2026 The qsens Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Dense square complex matrices and normalized state vectors.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qsens {

using Complex = std::complex<double>;

/**
 * @brief Dense square matrix of complex doubles, stored row-major.
 *
 * The dimension is always at least one. Entries supplied through the
 * checked constructor must be finite.
 */
class ComplexMatrix {
  public:
    ComplexMatrix() : ComplexMatrix(1) {}
    /// Zero matrix of the given dimension.
    explicit ComplexMatrix(std::size_t dim);
    /// Row-major entries; throws InvalidArgument on a non-square or
    /// non-finite input.
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const Complex> diag);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    Complex &operator()(std::size_t row, std::size_t col) noexcept {
        return data_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const noexcept {
        return data_[row * dim_ + col];
    }

    [[nodiscard]] std::span<Complex> data() noexcept { return data_; }
    [[nodiscard]] std::span<const Complex> data() const noexcept {
        return data_;
    }
    /// Contiguous view of one row.
    [[nodiscard]] std::span<Complex> row(std::size_t r) noexcept {
        return {data_.data() + r * dim_, dim_};
    }
    [[nodiscard]] std::span<const Complex> row(std::size_t r) const noexcept {
        return {data_.data() + r * dim_, dim_};
    }

    [[nodiscard]] ComplexMatrix adjoint() const;
    [[nodiscard]] Complex trace() const noexcept;
    [[nodiscard]] double frobeniusNorm() const noexcept;
    [[nodiscard]] double maxAbs() const noexcept;
    [[nodiscard]] bool isFinite() const noexcept;

    ComplexMatrix &operator+=(const ComplexMatrix &rhs);
    ComplexMatrix &operator-=(const ComplexMatrix &rhs);
    ComplexMatrix &operator*=(Complex scale) noexcept;

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs) {
        return lhs += rhs;
    }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs) {
        return lhs -= rhs;
    }
    friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) {
        return lhs *= scale;
    }
    friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) {
        return rhs *= scale;
    }
    friend ComplexMatrix operator*(const ComplexMatrix &lhs,
                                   const ComplexMatrix &rhs);

  private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

/// Kronecker product a ⊗ b.
[[nodiscard]] ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Matrix-vector product.
[[nodiscard]] std::vector<Complex> matVec(const ComplexMatrix &m,
                                         std::span<const Complex> v);

/// Hermitian inner product <a|b>.
[[nodiscard]] Complex inner(std::span<const Complex> a,
                            std::span<const Complex> b);

[[nodiscard]] double norm2(std::span<const Complex> v);

/**
 * @brief Pure state amplitudes; squared magnitudes sum to one within 1e-10.
 */
class StateVector {
  public:
    /// Throws NotNormalized unless the amplitudes already have unit norm.
    explicit StateVector(std::vector<Complex> amplitudes);

    /// Rescales to unit norm; throws InvalidArgument on a zero vector.
    static StateVector normalized(std::vector<Complex> amplitudes);
    /// Computational basis state |index> of the given dimension.
    static StateVector basis(std::size_t dim, std::size_t index);

    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }
    const Complex &operator[](std::size_t i) const noexcept { return amps_[i]; }

    /// U|psi>; throws DimensionMismatch.
    [[nodiscard]] StateVector evolved(const ComplexMatrix &unitary) const;

  private:
    std::vector<Complex> amps_;
};

} // namespace qsens
