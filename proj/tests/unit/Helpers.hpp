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
#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "qsens/Ansatz.hpp"
#include "qsens/ComplexMatrix.hpp"
#include "qsens/Random.hpp"

namespace qsens::test {

inline ComplexMatrix randomMatrix(std::size_t d, Rng &rng) {
    ComplexMatrix m(d);
    for (auto &z : m.data()) {
        z = Complex(rng.normal(), rng.normal());
    }
    return m;
}

inline ComplexMatrix randomHermitian(std::size_t d, Rng &rng) {
    const auto g = randomMatrix(d, rng);
    auto h = g + g.adjoint();
    h *= Complex(0.5, 0.0);
    return h;
}

inline double maxDiff(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).maxAbs();
}

/// Determinant by partial-pivoting LU.
inline Complex determinant(ComplexMatrix m) {
    const std::size_t n = m.dim();
    Complex det(1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(m(r, k)) > std::abs(m(piv, k))) {
                piv = r;
            }
        }
        if (std::abs(m(piv, k)) == 0.0) {
            return Complex(0.0, 0.0);
        }
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(m(k, c), m(piv, c));
            }
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex f = m(r, k) / m(k, k);
            for (std::size_t c = k; c < n; ++c) {
                m(r, c) -= f * m(k, c);
            }
        }
    }
    return det;
}

inline circuit::ParamVector uniformAngles(std::size_t p, Rng &rng) {
    circuit::ParamVector theta(p);
    for (auto &x : theta) {
        x = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return theta;
}

/// Random config with at most `max_qubits` qubits and `max_layers` layers.
inline circuit::AnsatzConfig randomConfig(Rng &rng, int max_qubits, int max_layers) {
    const auto rots = circuit::gridRotationSets();
    auto ents = circuit::gridEntanglerSets();
    ents.emplace_back();
    circuit::AnsatzConfig c;
    c.qubits = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(max_qubits)));
    c.layers = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(max_layers)));
    c.rotations = rots[rng.index(rots.size())];
    c.entanglers = ents[rng.index(ents.size())];
    return c.canonical();
}

} // namespace qsens::test
