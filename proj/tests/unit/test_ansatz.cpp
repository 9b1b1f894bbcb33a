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
#include <catch_amalgamated.hpp>

#include <cmath>

#include "Helpers.hpp"
#include "qsens/Ansatz.hpp"
#include "qsens/Error.hpp"
#include "qsens/Linalg.hpp"

using namespace qsens;
using namespace qsens::circuit;
using Catch::Matchers::WithinAbs;

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix rotation(RotationKind kind, double a) {
    const double c = std::cos(a / 2.0);
    const double s = std::sin(a / 2.0);
    switch (kind) {
    case RotationKind::RX:
        return ComplexMatrix(2, {c, -I * s, -I * s, c});
    case RotationKind::RY:
        return ComplexMatrix(2, {c, -s, s, c});
    case RotationKind::RZ:
        break;
    }
    return ComplexMatrix(2, {std::exp(-I * (a / 2.0)), 0.0, 0.0, std::exp(I * (a / 2.0))});
}

std::size_t bit(std::size_t index, int qubit, int n) {
    return (index >> (n - 1 - qubit)) & 1U;
}

ComplexMatrix cnot(int control, int target, int n) {
    const std::size_t d = std::size_t{1} << n;
    ComplexMatrix m(d);
    for (std::size_t x = 0; x < d; ++x) {
        std::size_t y = x;
        if (bit(x, control, n) == 1) {
            y ^= std::size_t{1} << (n - 1 - target);
        }
        m(y, x) = 1.0;
    }
    return m;
}

ComplexMatrix cz(int a, int b, int n) {
    const std::size_t d = std::size_t{1} << n;
    ComplexMatrix m(d);
    for (std::size_t x = 0; x < d; ++x) {
        m(x, x) = bit(x, a, n) == 1 && bit(x, b, n) == 1 ? -1.0 : 1.0;
    }
    return m;
}

/// The ansatz assembled from dense Kronecker products.
ComplexMatrix referenceUnitary(const AnsatzConfig &c, const ParamVector &theta) {
    const int n = c.qubits;
    auto u = ComplexMatrix::identity(c.dim());
    for (int l = 0; l < c.layers; ++l) {
        for (const auto e : c.entanglers) {
            for (int q = 0; q + 1 < n; ++q) {
                u = (e == EntanglerKind::CNOT ? cnot(q, q + 1, n) : cz(q, q + 1, n)) * u;
            }
        }
        ComplexMatrix layer = ComplexMatrix::identity(1);
        for (int q = 0; q < n; ++q) {
            auto g = ComplexMatrix::identity(2);
            for (std::size_t r = 0; r < c.rotations.size(); ++r) {
                g = rotation(c.rotations[r], theta[c.paramIndex(l, q, r)]) * g;
            }
            layer = kron(layer, g);
        }
        u = layer * u;
    }
    return u;
}

} // namespace

TEST_CASE("single-qubit closed forms", "[ansatz]") {
    AnsatzConfig c;
    CHECK(test::maxDiff(buildUnitary(c, {0.0}), ComplexMatrix::identity(2)) < 1e-15);
    for (const auto k : {RotationKind::RX, RotationKind::RY, RotationKind::RZ}) {
        CHECK(test::maxDiff(gateMatrix(k, 0.37), rotation(k, 0.37)) < 1e-15);
    }
    // R_X(theta) derivative is -(i/2) sigma_x R_X(theta).
    const double t = 0.81;
    const auto d = partialDerivative(c, {t}, 0);
    const auto expected = Complex(0.0, -0.5) * (pauli(RotationKind::RX) * rotation(RotationKind::RX, t));
    CHECK(test::maxDiff(d, expected) < 1e-15);
}

TEST_CASE("buildUnitary matches a dense Kronecker construction", "[ansatz]") {
    Rng rng(101);
    for (int rep = 0; rep < 60; ++rep) {
        const auto c = test::randomConfig(rng, 4, 3);
        const auto theta = test::uniformAngles(c.numParams(), rng);
        const auto u = buildUnitary(c, theta);
        INFO(c.toString());
        CHECK(test::maxDiff(u, referenceUnitary(c, theta)) < 1e-12);
        CHECK(linalg::unitarityError(u) < 1e-10);
    }
}

TEST_CASE("all-RZ CZ circuits are diagonal", "[ansatz]") {
    Rng rng(4);
    AnsatzConfig c{2, 1, {RotationKind::RZ}, {EntanglerKind::CZ}};
    const auto u = buildUnitary(c, test::uniformAngles(c.numParams(), rng));
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            if (i != j) {
                CHECK(std::abs(u(i, j)) == 0.0);
            }
        }
    }
}

TEST_CASE("entangler layers", "[ansatz]") {
    CHECK(test::maxDiff(entanglerLayer(EntanglerKind::CNOT, 1), ComplexMatrix::identity(2)) == 0.0);
    CHECK(test::maxDiff(entanglerLayer(EntanglerKind::CNOT, 3), cnot(1, 2, 3) * cnot(0, 1, 3)) < 1e-15);
    CHECK(test::maxDiff(entanglerLayer(EntanglerKind::CZ, 3), cz(1, 2, 3) * cz(0, 1, 3)) < 1e-15);
}

TEST_CASE("partialDerivative matches central differences", "[ansatz]") {
    Rng rng(17);
    for (int rep = 0; rep < 30; ++rep) {
        const auto c = test::randomConfig(rng, 3, 3);
        auto theta = test::uniformAngles(c.numParams(), rng);
        const std::size_t j = rng.index(c.numParams());
        const auto d = partialDerivative(c, theta, j);
        const double h = 1e-5;
        auto plus = theta;
        auto minus = theta;
        plus[j] += h;
        minus[j] -= h;
        auto fd = buildUnitary(c, plus) - buildUnitary(c, minus);
        fd *= Complex(1.0 / (2.0 * h), 0.0);
        INFO(c.toString() << " j=" << j);
        CHECK(test::maxDiff(d, fd) < 1e-9);
        // A product of unitaries times 1/2.
        CHECK_THAT(linalg::spectralNorm(d), WithinAbs(0.5, 1e-12));
    }
    AnsatzConfig c;
    CHECK_THROWS_AS(partialDerivative(c, {0.1}, 1), IndexOutOfRange);
    CHECK_THROWS_AS(buildUnitary(c, {0.1, 0.2}), ParamLengthMismatch);
}

TEST_CASE("parameter index layout", "[ansatz]") {
    AnsatzConfig c{3, 2, {RotationKind::RX, RotationKind::RZ}, {}};
    CHECK(c.numParams() == 12);
    CHECK(c.paramIndex(0, 0, 0) == 0);
    CHECK(c.paramIndex(0, 0, 1) == 1);
    CHECK(c.paramIndex(0, 1, 0) == 2);
    CHECK(c.paramIndex(1, 0, 0) == 6);
    CHECK(c.paramIndex(1, 2, 1) == 11);
}

TEST_CASE("config text round trip and validation", "[ansatz]") {
    AnsatzConfig c{3, 5, {RotationKind::RY, RotationKind::RX},
                   {EntanglerKind::CZ, EntanglerKind::CNOT}};
    const auto canon = c.canonical();
    CHECK(canon.toString() == "n=3,L=5,rot=rx+ry,ent=cnot+cz");
    CHECK(AnsatzConfig::parse(canon.toString()) == canon);
    const auto none = AnsatzConfig::parse("n=1,L=2,rot=rz,ent=none");
    CHECK(none.entanglers.empty());
    CHECK(none.entanglersText() == "none");

    CHECK_THROWS_AS(AnsatzConfig::parse("n=1,rot=rx"), InvalidArgument);
    CHECK_THROWS_AS(AnsatzConfig::parse("n=7,L=1,rot=rx"), InvalidArgument);
    CHECK_THROWS_AS(AnsatzConfig::parse("n=1,L=0,rot=rx"), InvalidArgument);
    CHECK_THROWS_AS(parseRotations("rw"), InvalidArgument);
    CHECK_THROWS_AS((AnsatzConfig{1, 1, {}, {}}.canonical()), InvalidArgument);
}

TEST_CASE("config grid arithmetic", "[ansatz]") {
    CHECK(gridRotationSets().size() == 7);
    CHECK(gridEntanglerSets().size() == 3);
    CHECK(configGrid(1, 4, 1, 5).size() == 420);
    const auto grid = configGrid(1, 3, 1, 3);
    CHECK(grid.size() == 189);
    CHECK(grid.front().toString() == "n=1,L=1,rot=rx,ent=cnot");
    CHECK_THROWS_AS(configGrid(3, 1, 1, 1), InvalidArgument);
}
