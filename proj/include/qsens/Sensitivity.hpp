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
 * Distinguishability of U(theta) and U(theta + delta).
 *
 * Two readings of the diamond distance are reported side by side:
 *
 *  - the channel reading: the diamond distance between the conjugation
 *    channels rho -> U rho U^dagger and rho -> V rho V^dagger, which is
 *    2 sqrt(1 - nu^2) with nu the distance from 0 to the convex hull of
 *    spec(U^dagger V). Invariant under global phases; lies in [0, 2].
 *
 *  - the operator-difference reading: the diamond norm of X -> C X C^dagger
 *    with C = U - V, i.e. |C|_spec^2. Sensitive to global phase, hence the
 *    optional gauge fixing of V against U.
 *
 * The first-order bound sum_j |delta_j| / 2 is checked against the
 * operator-difference reading.
 */
#pragma once

#include <cstdint>

#include "qsens/Ansatz.hpp"
#include "qsens/ComplexMatrix.hpp"

namespace qsens::sensitivity {

/// Frobenius deviation (relative to sqrt(dim)) of A^dagger B from a multiple
/// of the identity below which gauge fixing fires.
inline constexpr double kDefaultOverlapThreshold = 0.1;

enum class GaugeSign {
    /// theta* = -arg Tr(A^dagger B): the aligned overlap is real, >= 0.
    Cancel,
    /// theta* = arctan(Im z / Re z), applied as B <- e^{i theta*} B.
    Literal,
};

struct SensitivityRecord {
    double bound = 0.0;
    double cs_opdiff = 0.0;
    double cs_opdiff_gauged = 0.0;
    double cs_channel = 0.0;
    double spectral_diff = 0.0;
    double delta_abs_sum = 0.0;
};

/// 2 sqrt(1 - nu^2), nu = hull distance of spec(U^dagger V) to 0.
/// Throws NotUnitary, DimensionMismatch.
[[nodiscard]] double channelDiamondDistance(const ComplexMatrix &u,
                                            const ComplexMatrix &v);

/// |A^dagger B - (Tr(A^dagger B)/d) I|_F / sqrt(d).
[[nodiscard]] double overlapDeviation(const ComplexMatrix &a,
                                      const ComplexMatrix &b);

/// Global-phase alignment of B against A when A^dagger B is close to a
/// multiple of the identity; B unchanged otherwise.
[[nodiscard]] ComplexMatrix
gaugeFix(const ComplexMatrix &a, const ComplexMatrix &b,
         double overlap_threshold = kDefaultOverlapThreshold,
         GaugeSign sign = GaugeSign::Cancel);

/// |U - V'|_spec^2 with V' = gaugeFix(U, V) when `gauged`.
[[nodiscard]] double opDiffDiamond(const ComplexMatrix &u, const ComplexMatrix &v,
                                   bool gauged);

/// sum_j |delta_j| / 2.
[[nodiscard]] double sensitivityBound(const circuit::ParamVector &delta);

/// Largest dimension accepted by the brute-force oracle.
inline constexpr std::size_t kBruteForceMaxDim = 16;

/**
 * @brief Independent lower bound on the channel reading.
 *
 * Maximizes 2 sqrt(1 - |<psi|(U^dagger V (x) I)|psi>|^2) over pure states
 * on the doubled space by random restarts and normalized-gradient local
 * search with step halving. Throws DimensionTooLarge when d > 16.
 */
[[nodiscard]] double bruteForceDistinguishability(const ComplexMatrix &u,
                                                  const ComplexMatrix &v,
                                                  int restarts,
                                                  std::uint64_t seed);

/// Every reading for one (theta, delta) pair.
[[nodiscard]] SensitivityRecord
channelSensitivity(const circuit::AnsatzConfig &config,
                   const circuit::ParamVector &theta,
                   const circuit::ParamVector &delta);

/// Same readings from already-built unitaries.
[[nodiscard]] SensitivityRecord
sensitivityFromUnitaries(const ComplexMatrix &u, const ComplexMatrix &v,
                         const circuit::ParamVector &delta);

} // namespace qsens::sensitivity
