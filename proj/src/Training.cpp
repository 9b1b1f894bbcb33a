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
#include "qsens/Training.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qsens/Error.hpp"
#include "qsens/Random.hpp"

namespace qsens::qml {

namespace {

void requireData(const EncodedDataset &data) {
    if (data.states.empty()) {
        throw EmptyDataset("no encoded samples");
    }
    if (data.states.size() != data.labels.size()) {
        throw InvalidArgument("states and labels differ in length");
    }
}

std::vector<double> predictions(const ComplexMatrix &u,
                                const EncodedDataset &data) {
    std::vector<double> out;
    out.reserve(data.states.size());
    for (const auto &s : data.states) {
        out.push_back(expectation(u, s));
    }
    return out;
}

} // namespace

void TrainHyper::validate() const {
    if (!(learning_rate > 0.0) || !(epsilon > 0.0)) {
        throw InvalidArgument("learning rate and epsilon must be positive");
    }
    if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0)) {
        throw InvalidArgument("betas must lie in (0, 1)");
    }
    if (iterations < 0 || runs < 1) {
        throw InvalidArgument("iterations must be >= 0 and runs >= 1");
    }
}

double expectation(const ComplexMatrix &u, const StateVector &state) {
    const auto out = matVec(u, state.amplitudes());
    const std::size_t half = out.size() / 2;
    if (half == 0) {
        throw DimensionMismatch("observable needs at least one qubit");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        acc += i < half ? std::norm(out[i]) : -std::norm(out[i]);
    }
    return acc;
}

double loss(const circuit::AnsatzConfig &config, const circuit::ParamVector &theta,
            const EncodedDataset &data) {
    requireData(data);
    const auto f = predictions(circuit::buildUnitary(config, theta), data);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = f[i] - data.labels[i];
        acc += r * r;
    }
    return acc / static_cast<double>(f.size());
}

std::pair<double, circuit::ParamVector>
lossAndGrad(const circuit::AnsatzConfig &config, const circuit::ParamVector &theta,
            const EncodedDataset &data) {
    requireData(data);
    const auto f = predictions(circuit::buildUnitary(config, theta), data);
    const double m = static_cast<double>(f.size());
    double value = 0.0;
    std::vector<double> residual(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        residual[i] = f[i] - data.labels[i];
        value += residual[i] * residual[i];
    }
    value /= m;

    constexpr double shift = std::numbers::pi / 2.0;
    circuit::ParamVector grad(theta.size(), 0.0);
    circuit::ParamVector probe = theta;
    for (std::size_t j = 0; j < theta.size(); ++j) {
        probe[j] = theta[j] + shift;
        const auto plus = predictions(circuit::buildUnitary(config, probe), data);
        probe[j] = theta[j] - shift;
        const auto minus = predictions(circuit::buildUnitary(config, probe), data);
        probe[j] = theta[j];
        double acc = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            acc += 2.0 * residual[i] * (plus[i] - minus[i]) / 2.0;
        }
        grad[j] = acc / m;
    }
    return {value, std::move(grad)};
}

std::pair<circuit::ParamVector, AdamState>
adamStep(const circuit::ParamVector &theta, const AdamState &state,
         std::span<const double> grad, const TrainHyper &hyper) {
    if (state.m.size() != theta.size() || state.v.size() != theta.size() ||
        grad.size() != theta.size()) {
        throw ParamLengthMismatch("optimizer state, gradient and parameters "
                                  "must have equal length");
    }
    AdamState next = state;
    next.step += 1;
    const double t = static_cast<double>(next.step);
    const double bc1 = 1.0 - std::pow(hyper.beta1, t);
    const double bc2 = 1.0 - std::pow(hyper.beta2, t);
    circuit::ParamVector out = theta;
    for (std::size_t j = 0; j < theta.size(); ++j) {
        next.m[j] = hyper.beta1 * state.m[j] + (1.0 - hyper.beta1) * grad[j];
        next.v[j] = hyper.beta2 * state.v[j] + (1.0 - hyper.beta2) * grad[j] * grad[j];
        const double m_hat = next.m[j] / bc1;
        const double v_hat = next.v[j] / bc2;
        out[j] -= hyper.learning_rate * m_hat / (std::sqrt(v_hat) + hyper.epsilon);
    }
    return {std::move(out), std::move(next)};
}

TrainingTrace train(const circuit::AnsatzConfig &config, const EncodedDataset &data,
                    const TrainHyper &hyper, std::uint64_t seed) {
    hyper.validate();
    requireData(data);
    const auto cfg = config.canonical();
    if (data.states.front().dim() != cfg.dim()) {
        throw DimensionMismatch("encoded states have dim " +
                                std::to_string(data.states.front().dim()) +
                                ", circuit " + std::to_string(cfg.dim()));
    }

    Rng rng(seed);
    circuit::ParamVector theta(cfg.numParams());
    for (auto &x : theta) {
        x = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }

    TrainingTrace trace;
    trace.initial_params = theta;
    trace.iterations.reserve(static_cast<std::size_t>(hyper.iterations));
    AdamState adam = AdamState::fresh(theta.size());
    for (int it = 0; it < hyper.iterations; ++it) {
        auto [value, grad] = lossAndGrad(cfg, theta, data);
        auto [next, next_state] = adamStep(theta, adam, grad, hyper);

        circuit::ParamVector delta(theta.size());
        double rel = 0.0;
        std::size_t changed = 0;
        for (std::size_t j = 0; j < theta.size(); ++j) {
            delta[j] = next[j] - theta[j];
            rel += std::abs(delta[j]) / std::max(std::abs(theta[j]), 1e-12);
            if (std::abs(delta[j]) > kChangeThreshold) {
                ++changed;
            }
        }
        IterationRecord rec;
        rec.loss = value;
        rec.mean_abs_rel_change = rel / static_cast<double>(theta.size());
        rec.frac_params_changed =
            static_cast<double>(changed) / static_cast<double>(theta.size());
        rec.sensitivity = sensitivity::channelSensitivity(cfg, theta, delta);
        trace.iterations.push_back(rec);

        theta = std::move(next);
        adam = std::move(next_state);
    }
    trace.final_params = theta;
    return trace;
}

} // namespace qsens::qml
