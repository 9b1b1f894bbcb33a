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
 * Small dense eigensolvers, spectral norm and the planar hull distance
 * used by the unitary-channel distance.
 */
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qsens/ComplexMatrix.hpp"

namespace qsens::linalg {

/// Largest dimension accepted by the eigensolvers.
inline constexpr std::size_t kMaxDim = 64;

/// Absolute tolerance used to group numerically equal eigenvalues of the
/// Hermitian part in unitarySpectrum.
inline constexpr double kEigenspaceTol = 1e-8;

struct Spectrum {
    std::vector<Complex> eigenvalues;
    /// Orthonormal eigenvectors, same order as eigenvalues.
    std::optional<std::vector<StateVector>> eigenvectors;

    /// Q diag(eigenvalues) Q^dagger. Requires eigenvectors.
    [[nodiscard]] ComplexMatrix reconstruct() const;
};

/// Max-entry deviation |H - H^dagger|.
[[nodiscard]] double hermiticityError(const ComplexMatrix &h);
/// Max-entry deviation |W^dagger W - I|.
[[nodiscard]] double unitarityError(const ComplexMatrix &w);

void requireUnitary(const ComplexMatrix &w, double tol = 1e-9);

/**
 * @brief Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
 * rotations.
 *
 * Eigenvalues are real (stored with zero imaginary part) in descending
 * order. Throws NotHermitian when |H - H^dagger| exceeds 1e-10 in any entry
 * (scaled by max(1, |H|_max)).
 */
[[nodiscard]] Spectrum hermEig(const ComplexMatrix &h);

/**
 * @brief Spectral decomposition of a unitary matrix.
 *
 * Splits W = A + iB into commuting Hermitian parts, diagonalizes A and then
 * B inside each (tolerance-grouped) eigenspace of A. Eigenvalues are sorted
 * by descending real part, then descending imaginary part.
 */
[[nodiscard]] Spectrum unitarySpectrum(const ComplexMatrix &w);

/**
 * @brief Largest singular value of M.
 *
 * Power iteration on M^dagger M. The start vector comes from repeated
 * squaring of the normalized Gram matrix, which isolates the dominant
 * eigenspace even when the leading eigenvalues are nearly degenerate.
 * Throws ConvergenceFailure if 10,000 iterations leave a relative residual
 * above 1e-8.
 */
[[nodiscard]] double spectralNorm(const ComplexMatrix &m);

/// Euclidean distance from 0 to the convex hull of the points in the
/// complex plane. Zero when the hull contains the origin.
[[nodiscard]] double hullDistanceToOrigin(std::span<const Complex> points);

} // namespace qsens::linalg
