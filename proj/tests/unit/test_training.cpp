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
#include <string>

#include "Helpers.hpp"
#include "qsens/Dataset.hpp"
#include "qsens/Error.hpp"
#include "qsens/Training.hpp"

using namespace qsens;
using namespace qsens::qml;
using circuit::AnsatzConfig;
using circuit::RotationKind;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const std::string kFixtures = QSENS_FIXTURE_DIR;

Dataset toyDataset() {
    std::vector<std::vector<double>> x;
    std::vector<std::string> y;
    Rng rng(3);
    for (int i = 0; i < 40; ++i) {
        const bool pos = i % 3 != 0;
        std::vector<double> row;
        for (int f = 0; f < 5; ++f) {
            row.push_back(rng.normal() + (pos ? 1.0 : -1.0) * (f + 1) * 0.3);
        }
        x.push_back(row);
        y.emplace_back(pos ? "a" : "b");
    }
    return makeDataset("toy", x, y);
}

} // namespace

TEST_CASE("makeDataset keeps the two most frequent classes", "[dataset]") {
    const std::vector<std::vector<double>> x{{1}, {2}, {3}, {4}, {5}, {6}};
    const std::vector<std::string> y{"b", "a", "a", "c", "a", "b"};
    const auto d = makeDataset("t", x, y);
    CHECK(d.positive_class == "a");
    CHECK(d.negative_class == "b");
    CHECK(d.labels == std::vector<int>{-1, 1, 1, 1, -1});
    CHECK(d.features.size() == 5);
    CHECK_THROWS_AS(makeDataset("t", {{1}, {2}}, {"a", "a"}), SingleClass);
}

TEST_CASE("wine fixture loads", "[dataset]") {
    const auto d = loadDatasetCsv(kFixtures + "/wine.csv");
    CHECK(d.features.size() == 130);
    CHECK(d.features.front().size() == 13);
    CHECK(d.positive_class == "class_1");
    CHECK(d.negative_class == "class_0");
    const auto bc = loadDatasetCsv(kFixtures + "/breast_cancer.csv");
    CHECK(bc.features.size() == 569);
    CHECK(bc.positive_class == "benign");
    CHECK_THROWS_AS(loadDatasetCsv(kFixtures + "/missing.csv"), IoError);
}

TEST_CASE("standardize and pca", "[dataset]") {
    const std::vector<std::vector<double>> rows{{1, 5, 2}, {2, 5, 4}, {3, 5, 6}, {6, 5, 0}};
    const auto z = standardize(rows);
    for (std::size_t c = 0; c < 3; ++c) {
        double mean = 0.0;
        double sq = 0.0;
        for (const auto &r : z) {
            mean += r[c];
            sq += r[c] * r[c];
        }
        CHECK_THAT(mean / 4.0, WithinAbs(0.0, 1e-15));
        CHECK_THAT(sq / 4.0, WithinAbs(c == 1 ? 0.0 : 1.0, 1e-14));
    }

    // Points on the line y = 2x: one axis carries all variance.
    std::vector<std::vector<double>> line;
    for (int i = -3; i <= 3; ++i) {
        line.push_back({static_cast<double>(i), 2.0 * i});
    }
    const auto p = pca(line, 2);
    CHECK_THAT(p.components[0][0], WithinAbs(1.0 / std::sqrt(5.0), 1e-12));
    CHECK_THAT(p.components[0][1], WithinAbs(2.0 / std::sqrt(5.0), 1e-12));
    CHECK_THAT(p.variances[0], WithinAbs(5.0 * 28.0 / 6.0, 1e-12));
    CHECK_THAT(p.variances[1], WithinAbs(0.0, 1e-12));
    CHECK_THROWS_AS(pca(line, 3), TooFewFeatures);
}

TEST_CASE("encodings", "[dataset]") {
    const std::vector<double> v{3.0, 0.0, 4.0, 0.0};
    const auto s = amplitudeEncode(v);
    CHECK_THAT(s[0].real(), WithinAbs(0.6, 1e-15));
    CHECK_THAT(s[2].real(), WithinAbs(0.8, 1e-15));
    const auto zero = amplitudeEncode(std::vector<double>(4, 0.0));
    CHECK(zero[0] == Complex(1.0, 0.0));

    const std::vector<double> angles{0.3, 1.2};
    const auto a = angleEncode(angles);
    const auto expected =
        kron(circuit::gateMatrix(RotationKind::RY, 0.3), circuit::gateMatrix(RotationKind::RY, 1.2));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(a[i] - expected(i, 0)) < 1e-15);
    }

    const auto toy = toyDataset();
    const auto amp = prepareDataset(toy, 2, Encoding::Amplitude);
    CHECK(amp.states.front().dim() == 4);
    CHECK(amp.states.size() == toy.labels.size());
    const auto ang = prepareDataset(toy, 3, Encoding::Angle);
    CHECK(ang.states.front().dim() == 8);
    CHECK_THROWS_AS(prepareDataset(toy, 3, Encoding::Amplitude), TooFewFeatures);
    CHECK(parseEncoding("angle") == Encoding::Angle);
    CHECK_THROWS_AS(parseEncoding("basis"), InvalidArgument);
}

TEST_CASE("expectation measures Z on the first qubit", "[training]") {
    const auto id = ComplexMatrix::identity(4);
    CHECK(expectation(id, StateVector::basis(4, 0)) == 1.0);
    CHECK(expectation(id, StateVector::basis(4, 1)) == 1.0);
    CHECK(expectation(id, StateVector::basis(4, 2)) == -1.0);
    CHECK_THAT(expectation(id, StateVector::normalized({1.0, 0.0, 1.0, 0.0})), WithinAbs(0.0, 1e-15));
}

TEST_CASE("parameter-shift gradient matches finite differences", "[training]") {
    const auto data = prepareDataset(toyDataset(), 2, Encoding::Amplitude);
    Rng rng(12);
    for (int rep = 0; rep < 10; ++rep) {
        const auto c = test::randomConfig(rng, 2, 2);
        if (c.qubits != 2) {
            continue;
        }
        const auto theta = test::uniformAngles(c.numParams(), rng);
        const auto [value, grad] = lossAndGrad(c, theta, data);
        CHECK_THAT(value, WithinRel(loss(c, theta, data), 1e-14));
        for (std::size_t j = 0; j < theta.size(); ++j) {
            auto p = theta;
            auto m = theta;
            p[j] += 1e-6;
            m[j] -= 1e-6;
            const double fd = (loss(c, p, data) - loss(c, m, data)) / 2e-6;
            CHECK_THAT(grad[j], WithinAbs(fd, 1e-7));
        }
    }
}

TEST_CASE("adam step", "[training]") {
    TrainHyper h;
    const circuit::ParamVector theta{1.0, 2.0, 3.0};
    const std::vector<double> grad{0.5, -2.0, 0.0};
    const auto [next, state] = adamStep(theta, AdamState::fresh(3), grad, h);
    // First step moves by lr * g / (|g| + eps).
    CHECK_THAT(next[0], WithinAbs(1.0 - 0.01 * 0.5 / (0.5 + 1e-8), 1e-15));
    CHECK_THAT(next[1], WithinAbs(2.0 + 0.01 * 2.0 / (2.0 + 1e-8), 1e-15));
    CHECK(next[2] == 3.0);
    CHECK(state.step == 1);
    CHECK_THROWS_AS(adamStep(theta, AdamState::fresh(2), grad, h), ParamLengthMismatch);
    TrainHyper bad;
    bad.beta1 = 1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("train is deterministic and records every iteration", "[training]") {
    const auto data = prepareDataset(toyDataset(), 2, Encoding::Angle);
    const AnsatzConfig c{2, 2, {RotationKind::RX, RotationKind::RY}, {circuit::EntanglerKind::CNOT}};
    TrainHyper h;
    h.iterations = 12;
    const auto a = train(c, data, h, 42);
    const auto b = train(c, data, h, 42);
    REQUIRE(a.iterations.size() == 12);
    CHECK(a.final_params == b.final_params);
    for (std::size_t i = 0; i < a.iterations.size(); ++i) {
        const auto &r = a.iterations[i];
        CHECK(r.loss == b.iterations[i].loss);
        CHECK(r.frac_params_changed >= 0.0);
        CHECK(r.frac_params_changed <= 1.0);
        CHECK(r.sensitivity.cs_opdiff_gauged <= r.sensitivity.bound);
    }
    CHECK(a.iterations.back().loss < a.iterations.front().loss);
    const auto other = train(c, data, h, 43);
    CHECK(other.initial_params != a.initial_params);
}
