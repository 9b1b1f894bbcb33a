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
#include <limits>
#include <sstream>

#include <json.hpp>

#include "Helpers.hpp"
#include "qsens/Csv.hpp"
#include "qsens/Error.hpp"
#include "qsens/Experiments.hpp"

using namespace qsens;
using namespace qsens::experiments;
using circuit::AnsatzConfig;
using circuit::RotationKind;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PerturbationSpec smallSpec() {
    PerturbationSpec s;
    s.samples_per_param = 3;
    s.scales = {0.01, 0.0};
    s.configs = {AnsatzConfig{1, 1, {RotationKind::RZ}, {}},
                 AnsatzConfig{2, 2, {RotationKind::RX, RotationKind::RY},
                              {circuit::EntanglerKind::CNOT}}};
    s.seed = 17;
    return s;
}

} // namespace

TEST_CASE("doubles survive formatting", "[csv]") {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double x = std::ldexp(rng.uniform(-1.0, 1.0), static_cast<int>(rng.index(200)) - 100);
        CHECK(csv::parseDouble(csv::formatDouble(x)) == x);
    }
    CHECK(csv::formatDouble(0.1) == "0.1");
    CHECK(csv::formatOptional(std::nullopt).empty());
    CHECK_THROWS_AS(csv::parseDouble("1.0x"), InvalidArgument);
}

TEST_CASE("tables round trip with quoting and metadata", "[csv]") {
    csv::Table t;
    t.metadata = {{"seed", "3"}, {"note", "a=b"}};
    t.header = {"config", "value"};
    t.rows = {{"n=1,L=1,rot=rx,ent=none", "1.5"}, {"say \"hi\"", ""}};
    std::stringstream ss;
    csv::writeTable(ss, t);
    CHECK(ss.str().find("\"n=1,L=1,rot=rx,ent=none\"") != std::string::npos);
    const auto back = csv::readTable(ss);
    CHECK(back.metadata == t.metadata);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK(back.column("value") == 1);
    CHECK_THROWS_AS(back.column("missing"), InvalidArgument);

    std::stringstream ragged("a,b\n1\n");
    CHECK_THROWS_AS(csv::readTable(ragged), InvalidArgument);
}

TEST_CASE("perturbation selection", "[experiments]") {
    CHECK(perturbedCount(0.95, 1) == 1);
    CHECK(perturbedCount(0.95, 20) == 19);
    CHECK(perturbedCount(0.95, 12) == 11);
    CHECK(perturbedCount(0.01, 5) == 1);
    Rng rng(4);
    const auto theta = test::uniformAngles(20, rng);
    const auto delta = randomPerturbation(theta, 0.95, 0.01, rng);
    std::size_t nonzero = 0;
    for (std::size_t j = 0; j < 20; ++j) {
        if (delta[j] != 0.0) {
            ++nonzero;
            CHECK(std::abs(delta[j]) == 0.01 * theta[j]);
        }
    }
    CHECK(nonzero == 19);
}

TEST_CASE("perturbation sweep", "[experiments]") {
    const auto spec = smallSpec();
    const auto rows = runPerturbation(spec);
    CHECK(rows.size() == plannedSampleCount(spec));
    CHECK(rows.size() == (3 * 1 + 3 * 8) * 2);
    for (const auto &r : rows) {
        CHECK(r.kind == "perturb");
        CHECK(r.record.bound == r.record.delta_abs_sum / 2.0);
        if (*r.scale == 0.0) {
            CHECK(r.record.bound == 0.0);
            CHECK(r.record.cs_opdiff_gauged == 0.0);
        } else {
            CHECK(r.record.cs_opdiff_gauged <= r.record.bound);
        }
    }
    const auto again = runPerturbation(spec);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].record.cs_channel == again[i].record.cs_channel);
    }

    PerturbationSpec full;
    full.useFullGrid();
    CHECK(full.resolvedConfigs().size() == 420);
    CHECK(plannedSampleCount(full) == 3 * 100 * 5400);

    PerturbationSpec bad;
    bad.fraction = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = PerturbationSpec{};
    bad.qubits_lo = 3;
    bad.qubits_hi = 2;
    CHECK_THROWS_AS(runPerturbation(bad), InvalidArgument);
}

TEST_CASE("rows round trip through CSV", "[experiments][csv]") {
    const auto rows = runPerturbation(smallSpec());
    std::stringstream ss;
    csv::writeTable(ss, rowsToTable(rows, baseMetadata("perturb", 17)));
    const auto back = rowsFromTable(csv::readTable(ss));
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].config == rows[i].config);
        CHECK(back[i].scale == rows[i].scale);
        CHECK(back[i].seed == rows[i].seed);
        CHECK(back[i].record.cs_opdiff_gauged == rows[i].record.cs_opdiff_gauged);
        CHECK(back[i].record.cs_channel == rows[i].record.cs_channel);
        CHECK(!back[i].run.has_value());
        CHECK(!back[i].loss.has_value());
    }
    csv::Table wrong;
    wrong.header = {"kind"};
    CHECK_THROWS_AS(rowsFromTable(wrong), InvalidArgument);
}

TEST_CASE("json output types", "[experiments]") {
    const auto rows = runPerturbation(smallSpec());
    std::stringstream ss;
    writeJson(ss, rowsToTable(rows, baseMetadata("perturb", 17)));
    const auto doc = nlohmann::json::parse(ss.str());
    CHECK(doc["metadata"]["seed"] == "17");
    const auto &first = doc["rows"][0];
    CHECK(first["n"].is_number_integer());
    CHECK(first["cs_channel"].is_number_float());
    CHECK(first["loss"].is_null());
    CHECK(first["config"] == "n=1,L=1,rot=rz,ent=none");
    CHECK(doc["rows"].size() == rows.size());
}

TEST_CASE("mean and confidence interval", "[experiments]") {
    const auto [m, ci] = meanCi95({1.0, 2.0, 3.0, 4.0});
    CHECK(m == 2.5);
    CHECK_THAT(ci, WithinRel(1.96 * std::sqrt(5.0 / 3.0) / 2.0, 1e-14));
    CHECK(meanCi95({7.0}).second == 0.0);
    CHECK(meanCi95({}).first == 0.0);
}

TEST_CASE("bound comparison", "[experiments]") {
    PerturbationSpec spec;
    spec.configs = {AnsatzConfig{1, 1, {RotationKind::RZ}, {}}};
    spec.scales = {0.0};
    spec.samples_per_param = 4;
    const auto zero = compareBound(runPerturbation(spec));
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].cs_channel.max_ratio == 0.0);
    CHECK(zero[0].violations == 0);
    CHECK(zero[0].eligible == 4);

    spec.scales = {0.001};
    spec.samples_per_param = 50;
    const auto rz = compareBound(runPerturbation(spec));
    // Channel reading is 2 sin(|delta|/2) against |delta|/2.
    CHECK_THAT(rz[0].cs_channel.mean_ratio, WithinAbs(2.0, 1e-5));
    CHECK_THAT(rz[0].cs_opdiff_gauged.max_ratio, WithinAbs(rz[0].mean_bound * 4.0, 0.01));

    auto grid = smallSpec();
    grid.configs.push_back(AnsatzConfig{3, 1, {RotationKind::RY}, {circuit::EntanglerKind::CZ}});
    const auto by_n = compareBound(runPerturbation(grid), BoundGrouping::Qubits);
    CHECK(by_n.size() == 3);
    CHECK(by_n[0].group == "n=1");
    std::size_t total = 0;
    for (const auto &g : by_n) {
        total += g.count;
        CHECK(g.violations == 0);
    }
    CHECK(total == plannedSampleCount(grid));
}

TEST_CASE("training sweep rows and summary", "[experiments]") {
    std::vector<std::vector<double>> x;
    std::vector<std::string> y;
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        x.push_back({rng.normal(), rng.normal(), rng.normal(), rng.normal()});
        y.emplace_back(i % 2 == 0 ? "p" : "q");
    }
    const auto data = qml::makeDataset("toy", x, y);
    qml::TrainHyper h;
    h.runs = 1;
    h.iterations = 1;
    const std::vector<AnsatzConfig> configs{
        AnsatzConfig{2, 1, {RotationKind::RY}, {circuit::EntanglerKind::CNOT}},
        AnsatzConfig{1, 2, {RotationKind::RX, RotationKind::RY}, {}}};
    const auto one = runTraining(configs, h, {data}, qml::Encoding::Amplitude, 5);
    CHECK(one.rows.size() == 2);
    CHECK(one.summary.size() == 2);

    h.runs = 3;
    h.iterations = 4;
    const auto res = runTraining(configs, h, {data}, qml::Encoding::Angle, 5);
    CHECK(res.rows.size() == 2 * 3 * 4);
    CHECK(res.summary.size() == 2 * 4);
    CHECK(res.rows.front().kind == "train");
    CHECK(res.rows.front().encoding == "angle");
    CHECK(res.rows.front().loss.has_value());
    double loss_mean = 0.0;
    for (std::size_t r = 0; r < 3; ++r) {
        loss_mean += *res.rows[r * 4].loss / 3.0;
    }
    CHECK_THAT(res.summary.front().metrics.front().second.first, WithinRel(loss_mean, 1e-14));
    const auto table = summaryToTable(res.summary, {});
    CHECK(table.hasColumn("loss_ci95"));
    CHECK_THROWS_AS(runTraining(configs, h, {}, qml::Encoding::Angle, 5), InvalidArgument);
}
