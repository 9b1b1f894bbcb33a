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
 * Exact-expectation binary classifier training with per-iteration channel
 * sensitivity logging.
 *
 * The model output is <psi|U^dagger (Z (x) I...) U|psi>, trained against
 * labels in {-1, +1} with mean squared error.
 */
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qsens/Ansatz.hpp"
#include "qsens/Dataset.hpp"
#include "qsens/Sensitivity.hpp"

namespace qsens::qml {

struct TrainHyper {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.99;
    double epsilon = 1e-8;
    int iterations = 150;
    int runs = 50;

    /// Throws InvalidArgument.
    void validate() const;
};

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::uint64_t step = 0;

    static AdamState fresh(std::size_t size) {
        return AdamState{std::vector<double>(size, 0.0),
                         std::vector<double>(size, 0.0), 0};
    }
};

/// An update counts as a change when |delta theta_j| exceeds this.
inline constexpr double kChangeThreshold = 1e-12;

struct IterationRecord {
    /// Loss at the parameters before the update.
    double loss = 0.0;
    /// mean_j |delta theta_j| / max(|theta_j|, 1e-12).
    double mean_abs_rel_change = 0.0;
    double frac_params_changed = 0.0;
    /// Between the iterates before and after the update.
    sensitivity::SensitivityRecord sensitivity;
};

struct TrainingTrace {
    circuit::ParamVector initial_params;
    circuit::ParamVector final_params;
    std::vector<IterationRecord> iterations;
};

/// Z on qubit 0. Throws DimensionMismatch.
[[nodiscard]] double expectation(const ComplexMatrix &u, const StateVector &state);

/// Loss and parameter-shift gradient. Throws EmptyDataset,
/// ParamLengthMismatch.
[[nodiscard]] std::pair<double, circuit::ParamVector>
lossAndGrad(const circuit::AnsatzConfig &config, const circuit::ParamVector &theta,
            const EncodedDataset &data);

/// Mean squared error only.
[[nodiscard]] double loss(const circuit::AnsatzConfig &config,
                          const circuit::ParamVector &theta,
                          const EncodedDataset &data);

/// One bias-corrected Adam step:
/// theta - lr * m_hat / (sqrt(v_hat) + eps).
[[nodiscard]] std::pair<circuit::ParamVector, AdamState>
adamStep(const circuit::ParamVector &theta, const AdamState &state,
         std::span<const double> grad, const TrainHyper &hyper);

/// Parameters drawn uniformly from [0, 2pi) using `seed`.
[[nodiscard]] TrainingTrace train(const circuit::AnsatzConfig &config,
                                  const EncodedDataset &data,
                                  const TrainHyper &hyper, std::uint64_t seed);

} // namespace qsens::qml
