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
 * Welch-bound diagnostics for ensembles of pure states.
 *
 * The frame sum runs over all ordered pairs (j, k), diagonal included:
 *   sum_{j,k} |<psi_j|psi_k>|^{2t} >= n^2 / C(d + t - 1, t).
 * The max form compares max_{j != k} |<psi_j|psi_k>|^{2t} against
 *   (n / C(d + t - 1, t) - 1) / (n - 1).
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsens/Ansatz.hpp"
#include "qsens/ComplexMatrix.hpp"
#include "qsens/Random.hpp"

namespace qsens::design {

struct StateEnsemble {
    std::size_t dim = 1;
    std::vector<StateVector> states;
    /// haar | ansatz:<config> | basis | custom
    std::string provenance = "custom";
    /// Parameters that produced each state (ansatz ensembles only).
    std::vector<circuit::ParamVector> parameters;
};

struct WelchRow {
    int t = 1;
    std::size_t n = 0;
    std::size_t d = 0;
    double welch_sum = 0.0;
    double welch_bound = 0.0;
    double ratio = 0.0;
    double max_overlap_lhs = 0.0;
    double max_overlap_rhs = 0.0;
    std::string provenance;
};

/// Haar-random pure state: 2d standard normals, normalized.
[[nodiscard]] StateVector haarState(std::size_t d, Rng &rng);

/// Haar-random unitary: QR (modified Gram-Schmidt) of a complex Ginibre
/// matrix with the column phases fixed.
[[nodiscard]] ComplexMatrix haarUnitary(std::size_t d, Rng &rng);

[[nodiscard]] StateEnsemble haarEnsemble(std::size_t d, std::size_t count,
                                         std::uint64_t seed);

/// Orthonormal computational basis of dimension d.
[[nodiscard]] StateEnsemble basisEnsemble(std::size_t d);

/// U(theta)|0...0> for theta uniform in [0, 2pi)^P. Throws InvalidArgument
/// when count is zero.
[[nodiscard]] StateEnsemble ansatzStateEnsemble(const circuit::AnsatzConfig &config,
                                                std::size_t count,
                                                std::uint64_t seed);

/// C(d + t - 1, t) as a double; exact while representable.
[[nodiscard]] double symmetricDimension(std::size_t d, int t);

/// sum over ordered pairs (diagonal included) of |<psi_j|psi_k>|^{2t}.
[[nodiscard]] double welchSum(const StateEnsemble &ensemble, int t);

/// n^2 / C(d + t - 1, t).
[[nodiscard]] double welchBound(std::size_t n, std::size_t d, int t);

/// Rows for t = 1..t_max.
[[nodiscard]] std::vector<WelchRow> welchReport(const StateEnsemble &ensemble,
                                                int t_max);

} // namespace qsens::design
