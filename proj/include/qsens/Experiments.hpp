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
 * Experiment grids: random perturbation sweeps, training sweeps and the
 * bound comparison, plus their flat row schema.
 *
 * Every work item (config x scale, or config x dataset x run) draws from its
 * own stream seeded by deriveSeed(master, item index), so results do not
 * depend on execution order.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsens/Ansatz.hpp"
#include "qsens/Csv.hpp"
#include "qsens/Dataset.hpp"
#include "qsens/Training.hpp"
#include "qsens/Welch.hpp"

namespace qsens::experiments {

struct PerturbationSpec {
    double fraction = 0.95;
    std::vector<double> scales{0.01, 0.005, 0.001};
    std::size_t samples_per_param = 100;
    int qubits_lo = 1;
    int qubits_hi = 3;
    int layers_lo = 1;
    int layers_hi = 3;
    /// When empty the full rotation x entangler grid over the ranges is used.
    std::vector<circuit::AnsatzConfig> configs;
    std::uint64_t seed = 0;

    /// Restores the 1-4 qubit, 1-5 layer grid.
    void useFullGrid() {
        qubits_hi = 4;
        layers_hi = 5;
    }
    [[nodiscard]] std::vector<circuit::AnsatzConfig> resolvedConfigs() const;
    /// Throws InvalidArgument.
    void validate() const;
};

struct ExperimentRow {
    std::string kind;
    circuit::AnsatzConfig config;
    std::optional<double> scale;
    std::string dataset;
    std::string encoding;
    std::optional<std::size_t> run;
    std::size_t index = 0;
    std::uint64_t seed = 0;
    sensitivity::SensitivityRecord record;
    std::optional<double> loss;
    std::optional<double> mean_abs_rel_change;
    std::optional<double> frac_params_changed;
};

/// Number of selected parameters: max(1, round(fraction * P)).
[[nodiscard]] std::size_t perturbedCount(double fraction, std::size_t params);

/// Random perturbation of the selected entries: delta_j = +-scale * theta_j.
[[nodiscard]] circuit::ParamVector randomPerturbation(const circuit::ParamVector &theta,
                                                      double fraction, double scale,
                                                      Rng &rng);

/// sum over configs and scales of samples_per_param * P.
[[nodiscard]] std::size_t plannedSampleCount(const PerturbationSpec &spec);

[[nodiscard]] std::vector<ExperimentRow> runPerturbation(const PerturbationSpec &spec);

struct TrainingSummaryRow {
    circuit::AnsatzConfig config;
    std::string dataset;
    std::string encoding;
    std::size_t iteration = 0;
    std::size_t runs = 0;
    /// metric name -> (mean, 1.96 * standard error)
    std::vector<std::pair<std::string, std::pair<double, double>>> metrics;
};

struct TrainingResult {
    std::vector<ExperimentRow> rows;
    std::vector<TrainingSummaryRow> summary;
};

[[nodiscard]] TrainingResult runTraining(const std::vector<circuit::AnsatzConfig> &configs,
                                         const qml::TrainHyper &hyper,
                                         const std::vector<qml::Dataset> &datasets,
                                         qml::Encoding encoding,
                                         std::uint64_t seed);

/// Mean and 1.96 * sample standard deviation / sqrt(n) (zero when n < 2).
[[nodiscard]] std::pair<double, double> meanCi95(const std::vector<double> &values);

struct ReadingStats {
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    double ci95_ratio = 0.0;
};

struct BoundSummaryRow {
    /// Config text, or "n=<q>" when grouped by qubit count.
    std::string group;
    std::string kind;
    int qubits = 0;
    std::size_t count = 0;
    double mean_bound = 0.0;
    double mean_cs_opdiff_gauged = 0.0;
    /// mean of bound - cs_opdiff_gauged
    double mean_gap = 0.0;
    ReadingStats cs_opdiff;
    ReadingStats cs_opdiff_gauged;
    ReadingStats cs_channel;
    ReadingStats spectral_diff;
    /// rows with delta_abs_sum <= 2
    std::size_t eligible = 0;
    /// eligible rows with cs_opdiff_gauged > bound
    std::size_t violations = 0;
};

enum class BoundGrouping { Config, Qubits };

/// Ratios against the bound; rows with a zero bound contribute ratio 0.
[[nodiscard]] std::vector<BoundSummaryRow>
compareBound(const std::vector<ExperimentRow> &rows,
             BoundGrouping grouping = BoundGrouping::Config);

// Serialization.

[[nodiscard]] const std::vector<std::string> &rowColumns();
[[nodiscard]] csv::Table rowsToTable(const std::vector<ExperimentRow> &rows,
                                     csv::Metadata metadata);
/// Throws InvalidArgument on schema mismatch.
[[nodiscard]] std::vector<ExperimentRow> rowsFromTable(const csv::Table &table);

[[nodiscard]] csv::Table summaryToTable(const std::vector<TrainingSummaryRow> &rows,
                                        csv::Metadata metadata);
[[nodiscard]] csv::Table boundToTable(const std::vector<BoundSummaryRow> &rows,
                                      csv::Metadata metadata);
[[nodiscard]] csv::Table welchToTable(const std::vector<design::WelchRow> &rows,
                                      csv::Metadata metadata);

/// Rendered as {"metadata": {...}, "rows": [{column: value}, ...]}; numeric
/// columns become JSON numbers, empty cells null.
void writeJson(std::ostream &out, const csv::Table &table);

/// Metadata shared by every output.
[[nodiscard]] csv::Metadata baseMetadata(const std::string &subcommand,
                                         std::uint64_t seed);

} // namespace qsens::experiments
