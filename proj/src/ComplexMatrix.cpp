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
#include "qsens/ComplexMatrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsens/Error.hpp"

namespace qsens {

namespace {

void requireSameDim(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch(std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
    }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) {
        throw InvalidArgument("matrix dimension must be at least 1");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
    if (dim == 0) {
        throw InvalidArgument("matrix dimension must be at least 1");
    }
    if (data_.size() != dim * dim) {
        throw InvalidArgument("expected " + std::to_string(dim * dim) +
                              " entries, got " + std::to_string(data_.size()));
    }
    if (!isFinite()) {
        throw InvalidArgument("matrix has non-finite entries");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const noexcept {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) {
        acc += (*this)(i, i);
    }
    return acc;
}

double ComplexMatrix::frobeniusNorm() const noexcept {
    double acc = 0.0;
    for (const auto &z : data_) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

double ComplexMatrix::maxAbs() const noexcept {
    double best = 0.0;
    for (const auto &z : data_) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

bool ComplexMatrix::isFinite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), finite);
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &rhs) {
    requireSameDim(*this, rhs);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += rhs.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &rhs) {
    requireSameDim(*this, rhs);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= rhs.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) noexcept {
    for (auto &z : data_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
    requireSameDim(lhs, rhs);
    const std::size_t n = lhs.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        auto out_row = out.row(r);
        for (std::size_t k = 0; k < n; ++k) {
            const Complex a = lhs(r, k);
            if (a == Complex{}) {
                continue;
            }
            const auto rhs_row = rhs.row(k);
            for (std::size_t c = 0; c < n; ++c) {
                out_row[c] += a * rhs_row[c];
            }
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

std::vector<Complex> matVec(const ComplexMatrix &m, std::span<const Complex> v) {
    if (m.dim() != v.size()) {
        throw DimensionMismatch("matrix " + std::to_string(m.dim()) +
                                " vs vector " + std::to_string(v.size()));
    }
    std::vector<Complex> out(v.size());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        const auto row = m.row(r);
        Complex acc{};
        for (std::size_t c = 0; c < v.size(); ++c) {
            acc += row[c] * v[c];
        }
        out[r] = acc;
    }
    return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("vector sizes " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
    }
    Complex acc{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

double norm2(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto &z : v) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

StateVector::StateVector(std::vector<Complex> amplitudes)
    : amps_(std::move(amplitudes)) {
    if (amps_.empty()) {
        throw InvalidArgument("state vector must have at least one amplitude");
    }
    if (!std::all_of(amps_.begin(), amps_.end(), finite)) {
        throw InvalidArgument("state vector has non-finite amplitudes");
    }
    double total = 0.0;
    for (const auto &z : amps_) {
        total += std::norm(z);
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw NotNormalized("squared magnitudes sum to " +
                            std::to_string(total));
    }
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
    const double n = norm2(amplitudes);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw InvalidArgument("cannot normalize a zero or non-finite vector");
    }
    for (auto &z : amplitudes) {
        z /= n;
    }
    return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw IndexOutOfRange("basis index " + std::to_string(index) +
                              " >= dim " + std::to_string(dim));
    }
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return StateVector(std::move(amps));
}

StateVector StateVector::evolved(const ComplexMatrix &unitary) const {
    return StateVector::normalized(matVec(unitary, amps_));
}

} // namespace qsens
