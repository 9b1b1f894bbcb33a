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
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsens/Error.hpp"
#include "qsens/Experiments.hpp"
#include "qsens/Random.hpp"
#include "qsens/Sensitivity.hpp"

namespace {

using namespace qsens;
using experiments::ExperimentRow;

struct Shared {
    std::string qubits;
    std::string layers;
    std::string rotations;
    std::string entanglers;
    std::uint64_t seed = 0;
    std::string output = "-";
    std::string format = "csv";
};

void addShared(CLI::App *cmd, Shared &s, const std::string &qubits_default,
               const std::string &layers_default) {
    s.qubits = qubits_default;
    s.layers = layers_default;
    cmd->add_option("--qubits", s.qubits, "Qubit counts: 2, 1..3 or 1,3")
        ->capture_default_str();
    cmd->add_option("--layers", s.layers, "Layer counts: 2, 1..3 or 1,3")
        ->capture_default_str();
    cmd->add_option("--rotations", s.rotations,
                    "Comma-separated rotation sets, e.g. rx+ry,rz (default: grid)");
    cmd->add_option("--entanglers", s.entanglers,
                    "Comma-separated entangler sets, e.g. cnot,cnot+cz,none "
                    "(default: grid)");
    cmd->add_option("--seed", s.seed, "Master seed")->capture_default_str();
    cmd->add_option("--output", s.output, "Output path, '-' for stdout")
        ->capture_default_str();
    cmd->add_option("--format", s.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::string cell;
    for (const char c : text) {
        if (c == sep) {
            out.push_back(cell);
            cell.clear();
        } else {
            cell += c;
        }
    }
    out.push_back(cell);
    return out;
}

int parseInt(const std::string &text) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used == text.size()) {
            return v;
        }
    } catch (const std::logic_error &) {
    }
    throw InvalidArgument("not an integer: '" + text + "'");
}

std::vector<int> parseRange(const std::string &text) {
    std::vector<int> out;
    for (const auto &part : split(text, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(parseInt(part));
            continue;
        }
        const int lo = parseInt(part.substr(0, dots));
        const int hi = parseInt(part.substr(dots + 2));
        if (lo > hi) {
            throw InvalidArgument("empty range '" + part + "'");
        }
        for (int v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<circuit::AnsatzConfig> resolveConfigs(const Shared &s) {
    auto rot_sets = circuit::gridRotationSets();
    auto ent_sets = circuit::gridEntanglerSets();
    if (!s.rotations.empty()) {
        rot_sets.clear();
        for (const auto &part : split(s.rotations, ',')) {
            rot_sets.push_back(circuit::parseRotations(part));
        }
    }
    if (!s.entanglers.empty()) {
        ent_sets.clear();
        for (const auto &part : split(s.entanglers, ',')) {
            ent_sets.push_back(circuit::parseEntanglers(part));
        }
    }
    const auto qubits = parseRange(s.qubits);
    const auto layers = parseRange(s.layers);
    std::vector<circuit::AnsatzConfig> out;
    for (const auto &r : rot_sets) {
        for (const auto &e : ent_sets) {
            for (const int q : qubits) {
                for (const int l : layers) {
                    circuit::AnsatzConfig c;
                    c.qubits = q;
                    c.layers = l;
                    c.rotations = r;
                    c.entanglers = e;
                    out.push_back(c.canonical());
                }
            }
        }
    }
    return out;
}

circuit::AnsatzConfig singleConfig(const Shared &s) {
    const auto configs = resolveConfigs(s);
    if (configs.size() != 1) {
        throw InvalidArgument("this subcommand needs exactly one config; got " +
                              std::to_string(configs.size()));
    }
    return configs.front();
}

std::string joinDoubles(const std::vector<double> &values) {
    std::string out;
    for (const double v : values) {
        if (!out.empty()) {
            out += ',';
        }
        out += csv::formatDouble(v);
    }
    return out;
}

void emitTo(std::ostream &out, const csv::Table &table, const std::string &format) {
    if (format == "json") {
        experiments::writeJson(out, table);
    } else {
        csv::writeTable(out, table);
    }
}

void emit(const csv::Table &table, const std::string &path, const std::string &format) {
    if (path == "-") {
        emitTo(std::cout, table, format);
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    emitTo(file, table, format);
    if (!file) {
        throw IoError("failed writing '" + path + "'");
    }
}

struct PerturbArgs {
    Shared shared;
    double fraction = 0.95;
    std::vector<double> scales{0.01, 0.005, 0.001};
    std::size_t samples_per_param = 100;
    bool full_grid = false;
};

void runPerturb(const PerturbArgs &a, const CLI::App &cmd) {
    Shared s = a.shared;
    if (a.full_grid) {
        if (cmd.count("--qubits") == 0) {
            s.qubits = "1..4";
        }
        if (cmd.count("--layers") == 0) {
            s.layers = "1..5";
        }
    }
    experiments::PerturbationSpec spec;
    spec.fraction = a.fraction;
    spec.scales = a.scales;
    spec.samples_per_param = a.samples_per_param;
    spec.configs = resolveConfigs(s);
    spec.seed = s.seed;
    const auto rows = experiments::runPerturbation(spec);

    auto meta = experiments::baseMetadata("perturb", s.seed);
    meta.emplace_back("fraction", csv::formatDouble(a.fraction));
    meta.emplace_back("scales", joinDoubles(a.scales));
    meta.emplace_back("samples_per_param", std::to_string(a.samples_per_param));
    meta.emplace_back("samples_per_config", std::to_string(a.samples_per_param) + "*P");
    meta.emplace_back("perturbation", "delta_j=s_j*scale*theta_j");
    meta.emplace_back("sign_mode", "per-parameter");
    meta.emplace_back("configs", std::to_string(spec.configs.size()));
    emit(experiments::rowsToTable(rows, std::move(meta)), s.output, s.format);
}

struct TrainArgs {
    Shared shared;
    std::vector<std::string> datasets;
    std::string encoding = "amplitude";
    int runs = 5;
    int iterations = 150;
    double lr = 0.01;
    std::vector<double> betas{0.9, 0.99};
    double eps = 1e-8;
    std::string summary;
    bool full_grid = false;
};

void runTrain(const TrainArgs &a, const CLI::App &cmd) {
    Shared s = a.shared;
    int runs = a.runs;
    if (a.full_grid) {
        if (cmd.count("--qubits") == 0) {
            s.qubits = "1..4";
        }
        if (cmd.count("--layers") == 0) {
            s.layers = "1..5";
        }
        if (cmd.count("--runs") == 0) {
            runs = 50;
        }
    }
    if (a.betas.size() != 2) {
        throw InvalidArgument("--betas takes two values");
    }
    qml::TrainHyper hyper;
    hyper.learning_rate = a.lr;
    hyper.beta1 = a.betas[0];
    hyper.beta2 = a.betas[1];
    hyper.epsilon = a.eps;
    hyper.iterations = a.iterations;
    hyper.runs = runs;

    std::vector<qml::Dataset> datasets;
    for (const auto &path : a.datasets) {
        datasets.push_back(qml::loadDatasetCsv(path));
    }
    const auto encoding = qml::parseEncoding(a.encoding);
    const auto result = experiments::runTraining(resolveConfigs(s), hyper, datasets,
                                                 encoding, s.seed);

    auto meta = experiments::baseMetadata("train", s.seed);
    meta.emplace_back("encoding", std::string(qml::toString(encoding)));
    meta.emplace_back("runs", std::to_string(hyper.runs));
    meta.emplace_back("iterations", std::to_string(hyper.iterations));
    meta.emplace_back("lr", csv::formatDouble(hyper.learning_rate));
    meta.emplace_back("betas", joinDoubles({hyper.beta1, hyper.beta2}));
    meta.emplace_back("eps", csv::formatDouble(hyper.epsilon));
    meta.emplace_back("preprocessing", "standardize,pca,encode");
    meta.emplace_back("rel_change", "mean_j |delta_j|/|theta_j|");
    meta.emplace_back("change_threshold", csv::formatDouble(qml::kChangeThreshold));
    meta.emplace_back("ci95", "1.96*stderr");
    if (!a.summary.empty()) {
        emit(experiments::summaryToTable(result.summary, meta), a.summary, s.format);
    }
    emit(experiments::rowsToTable(result.rows, std::move(meta)), s.output, s.format);
}

struct SensitivityArgs {
    Shared shared;
    std::vector<double> theta;
    std::vector<double> delta;
    double scale = 0.01;
    double fraction = 0.95;
};

void runSensitivity(const SensitivityArgs &a) {
    const auto cfg = singleConfig(a.shared);
    const std::size_t p = cfg.numParams();
    Rng rng(deriveSeed(a.shared.seed, 0));
    circuit::ParamVector theta = a.theta;
    if (theta.empty()) {
        theta.resize(p);
        for (auto &x : theta) {
            x = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
    }
    circuit::ParamVector delta = a.delta;
    if (delta.empty()) {
        delta = experiments::randomPerturbation(theta, a.fraction, a.scale, rng);
    }
    if (theta.size() != p || delta.size() != p) {
        throw ParamLengthMismatch("config has " + std::to_string(p) +
                                  " parameters; got theta " +
                                  std::to_string(theta.size()) + ", delta " +
                                  std::to_string(delta.size()));
    }
    ExperimentRow row;
    row.kind = "sensitivity";
    row.config = cfg;
    row.seed = a.shared.seed;
    row.record = sensitivity::channelSensitivity(cfg, theta, delta);
    if (a.delta.empty()) {
        row.scale = a.scale;
    }
    auto meta = experiments::baseMetadata("sensitivity", a.shared.seed);
    meta.emplace_back("theta", joinDoubles(theta));
    meta.emplace_back("delta", joinDoubles(delta));
    emit(experiments::rowsToTable({row}, std::move(meta)), a.shared.output,
         a.shared.format);
}

struct WelchArgs {
    Shared shared;
    std::string ensemble = "haar";
    std::size_t dim = 4;
    std::size_t count = 200;
    int tmax = 4;
};

void runWelch(const WelchArgs &a) {
    design::StateEnsemble ens;
    if (a.ensemble == "haar") {
        ens = design::haarEnsemble(a.dim, a.count, a.shared.seed);
    } else if (a.ensemble == "basis") {
        ens = design::basisEnsemble(a.dim);
    } else {
        ens = design::ansatzStateEnsemble(singleConfig(a.shared), a.count, a.shared.seed);
    }
    auto meta = experiments::baseMetadata("welch", a.shared.seed);
    meta.emplace_back("ensemble", ens.provenance);
    meta.emplace_back("welch_pairs", "ordered,diagonal-included");
    emit(experiments::welchToTable(design::welchReport(ens, a.tmax), std::move(meta)),
         a.shared.output, a.shared.format);
}

struct CompareArgs {
    std::string input;
    std::string group_by = "config";
    std::string output = "-";
    std::string format = "csv";
};

void runCompare(const CompareArgs &a) {
    std::ifstream in(a.input, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + a.input + "'");
    }
    const auto table = csv::readTable(in);
    const auto rows = experiments::rowsFromTable(table);
    const auto grouping = a.group_by == "qubits" ? experiments::BoundGrouping::Qubits
                                                 : experiments::BoundGrouping::Config;
    csv::Metadata meta{{"tool", "qsens"},
                       {"subcommand", "compare-bound"},
                       {"group_by", a.group_by},
                       {"violation_rule", "cs_opdiff_gauged>bound where delta_abs_sum<=2"}};
    emit(experiments::boundToTable(experiments::compareBound(rows, grouping),
                                   std::move(meta)),
         a.output, a.format);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Channel sensitivity of hardware-efficient ansatzes"};
    app.require_subcommand(1);

    PerturbArgs perturb;
    auto *perturb_cmd = app.add_subcommand("perturb", "Random perturbation sweep");
    addShared(perturb_cmd, perturb.shared, "1..3", "1..3");
    perturb_cmd->add_option("--fraction", perturb.fraction, "Fraction of parameters perturbed")
        ->capture_default_str();
    perturb_cmd->add_option("--scales", perturb.scales, "Relative perturbation scales")
        ->delimiter(',')
        ->capture_default_str();
    perturb_cmd->add_option("--samples-per-param", perturb.samples_per_param,
                            "Samples per circuit parameter")
        ->capture_default_str();
    perturb_cmd->add_flag("--full-grid", perturb.full_grid,
                          "Use 1..4 qubits and 1..5 layers unless given");

    TrainArgs train;
    auto *train_cmd = app.add_subcommand("train", "Training sweep with Adam");
    addShared(train_cmd, train.shared, "2", "3");
    train_cmd->add_option("--dataset", train.datasets, "Dataset CSV (repeatable)")
        ->required();
    train_cmd->add_option("--encoding", train.encoding, "amplitude or angle")
        ->check(CLI::IsMember({"amplitude", "angle"}))
        ->capture_default_str();
    train_cmd->add_option("--runs", train.runs, "Runs per config and dataset")
        ->capture_default_str();
    train_cmd->add_option("--iters", train.iterations, "Iterations per run")
        ->capture_default_str();
    train_cmd->add_option("--lr", train.lr, "Learning rate")->capture_default_str();
    train_cmd->add_option("--betas", train.betas, "Adam betas")
        ->delimiter(',')
        ->expected(2)
        ->capture_default_str();
    train_cmd->add_option("--eps", train.eps, "Adam epsilon")->capture_default_str();
    train_cmd->add_option("--summary", train.summary,
                          "Write per-iteration mean and 95% CI across runs here");
    train_cmd->add_flag("--full-grid", train.full_grid,
                        "Use 1..4 qubits, 1..5 layers and 50 runs unless given");

    SensitivityArgs sens;
    auto *sens_cmd = app.add_subcommand("sensitivity", "Evaluate a single perturbation");
    addShared(sens_cmd, sens.shared, "1", "1");
    sens_cmd->add_option("--theta", sens.theta, "Parameters (default: random)")
        ->delimiter(',');
    sens_cmd->add_option("--delta", sens.delta, "Perturbation (default: random)")
        ->delimiter(',');
    sens_cmd->add_option("--scale", sens.scale, "Scale for a random perturbation")
        ->capture_default_str();
    sens_cmd->add_option("--fraction", sens.fraction,
                         "Fraction perturbed for a random perturbation")
        ->capture_default_str();

    WelchArgs welch;
    auto *welch_cmd = app.add_subcommand("welch", "Welch-bound design diagnostics");
    addShared(welch_cmd, welch.shared, "1", "1");
    welch_cmd->add_option("--ensemble", welch.ensemble, "haar, ansatz or basis")
        ->check(CLI::IsMember({"haar", "ansatz", "basis"}))
        ->capture_default_str();
    welch_cmd->add_option("--dim", welch.dim, "Dimension for haar and basis ensembles")
        ->capture_default_str();
    welch_cmd->add_option("--count", welch.count, "Ensemble size")->capture_default_str();
    welch_cmd->add_option("--tmax", welch.tmax, "Largest moment order")
        ->capture_default_str();

    CompareArgs compare;
    auto *compare_cmd =
        app.add_subcommand("compare-bound", "Compare observed sensitivity to the bound");
    compare_cmd->add_option("--input", compare.input, "Row CSV from perturb or train")
        ->required();
    compare_cmd->add_option("--group-by", compare.group_by, "config or qubits")
        ->check(CLI::IsMember({"config", "qubits"}))
        ->capture_default_str();
    compare_cmd->add_option("--output", compare.output, "Output path, '-' for stdout")
        ->capture_default_str();
    compare_cmd->add_option("--format", compare.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*perturb_cmd) {
            runPerturb(perturb, *perturb_cmd);
        } else if (*train_cmd) {
            runTrain(train, *train_cmd);
        } else if (*sens_cmd) {
            runSensitivity(sens);
        } else if (*welch_cmd) {
            runWelch(welch);
        } else if (*compare_cmd) {
            runCompare(compare);
        }
    } catch (const qsens::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
