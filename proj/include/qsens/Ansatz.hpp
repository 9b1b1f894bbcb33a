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
 * Pauli rotations, entangling chains and the layered hardware-efficient
 * ansatz.
 *
 * Qubit 0 is the most significant bit of a basis index. A layer applies
 * the entangling block first (CNOT chain, then CZ chain, each over the
 * nearest-neighbour pairs (i, i+1) in ascending i), then one rotation per
 * (qubit, rotation kind) in the order X, Y, Z. Layer 0 acts first on the
 * state. Parameter j addresses (layer, qubit, rotation) as
 * j = (layer * n + qubit) * |rotations| + rotation.
 */
#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qsens/ComplexMatrix.hpp"

namespace qsens::circuit {

enum class RotationKind { RX, RY, RZ };
enum class EntanglerKind { CNOT, CZ };

using ParamVector = std::vector<double>;

/// Largest supported register.
inline constexpr int kMaxQubits = 6;

/// Recorded in experiment metadata.
inline constexpr std::string_view kEntanglerTopology = "linear-chain";

[[nodiscard]] std::string_view toString(RotationKind kind) noexcept;
[[nodiscard]] std::string_view toString(EntanglerKind kind) noexcept;

struct AnsatzConfig {
    int qubits = 1;
    int layers = 1;
    std::vector<RotationKind> rotations{RotationKind::RX};
    std::vector<EntanglerKind> entanglers{};

    /// Sorts and deduplicates the rotation and entangler lists and checks
    /// ranges. Throws InvalidArgument.
    [[nodiscard]] AnsatzConfig canonical() const;

    [[nodiscard]] std::size_t numParams() const noexcept {
        return static_cast<std::size_t>(qubits) * layers * rotations.size();
    }
    [[nodiscard]] std::size_t dim() const noexcept {
        return std::size_t{1} << qubits;
    }
    [[nodiscard]] std::size_t paramIndex(int layer, int qubit,
                                         std::size_t rotation) const noexcept {
        return (static_cast<std::size_t>(layer) * qubits + qubit) *
                   rotations.size() +
               rotation;
    }

    /// "rx+ry", "cnot+cz" ("none" for no entanglers).
    [[nodiscard]] std::string rotationsText() const;
    [[nodiscard]] std::string entanglersText() const;
    /// e.g. "n=3,L=5,rot=rx+ry,ent=cnot+cz".
    [[nodiscard]] std::string toString() const;
    static AnsatzConfig parse(std::string_view text);

    friend bool operator==(const AnsatzConfig &, const AnsatzConfig &) = default;
};

[[nodiscard]] std::vector<RotationKind> parseRotations(std::string_view text);
[[nodiscard]] std::vector<EntanglerKind> parseEntanglers(std::string_view text);

/// The seven rotation sets of the employed grid: X, Y, Z, XY, YZ, XZ, XYZ.
[[nodiscard]] std::vector<std::vector<RotationKind>> gridRotationSets();
/// The three entangler sets: CNOT, CZ, CNOT CZ.
[[nodiscard]] std::vector<std::vector<EntanglerKind>> gridEntanglerSets();

/// Every grid config for qubits in [q_lo, q_hi] and layers in [l_lo, l_hi],
/// ordered by rotations, entanglers, qubits, layers.
[[nodiscard]] std::vector<AnsatzConfig> configGrid(int q_lo, int q_hi, int l_lo,
                                                   int l_hi);

/// Pauli generator of a rotation.
[[nodiscard]] ComplexMatrix pauli(RotationKind kind);

/// exp(-i angle/2 P) = cos(angle/2) I - i sin(angle/2) P.
[[nodiscard]] ComplexMatrix gateMatrix(RotationKind kind, double angle);

/// Chain of two-qubit gates (i -> i+1) on n qubits; identity for n = 1.
[[nodiscard]] ComplexMatrix entanglerLayer(EntanglerKind kind, int n);

/// U(theta). Throws ParamLengthMismatch.
[[nodiscard]] ComplexMatrix buildUnitary(const AnsatzConfig &config,
                                         const ParamVector &theta);

/// U(theta + delta) - U(theta), accumulated gate by gate so that small
/// perturbations keep full relative precision. Throws ParamLengthMismatch.
[[nodiscard]] ComplexMatrix unitaryDifference(const AnsatzConfig &config,
                                              const ParamVector &theta,
                                              const ParamVector &delta);

/// dU/dtheta_j, exact: the circuit with generator P_j inserted right after
/// gate j, times -i/2. Throws IndexOutOfRange, ParamLengthMismatch.
[[nodiscard]] ComplexMatrix partialDerivative(const AnsatzConfig &config,
                                              const ParamVector &theta,
                                              std::size_t j);

/// Left-multiplies `m` by a 2x2 gate (row-major) acting on `qubit`.
void applySingleQubit(ComplexMatrix &m, const std::array<Complex, 4> &gate,
                      int qubit, int n);
/// Left-multiplies `m` by one two-qubit entangler on (control, target).
void applyEntangler(ComplexMatrix &m, EntanglerKind kind, int control,
                    int target, int n);

} // namespace qsens::circuit
