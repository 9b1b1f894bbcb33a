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
#include "qsens/Experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "qsens/Error.hpp"
#include "qsens/Random.hpp"
#include "qsens/Sensitivity.hpp"

namespace qsens::experiments {

namespace {

const std::vector<std::string> kSummaryMetrics{
    "loss",       "mean_abs_rel_change", "frac_params_changed",
    "cs_opdiff",  "cs_opdiff_gauged",    "cs_channel",
    "spectral_diff", "bound"};

double metricValue(const ExperimentRow &row, const std::string &name) {
    const auto &r = row.record;
    if (name == "loss") {
        return row.loss.value_or(0.0);
    }
    if (name == "mean_abs_rel_change") {
        return row.mean_abs_rel_change.value_or(0.0);
    }
    if (name == "frac_params_changed") {
        return row.frac_params_changed.value_or(0.0);
    }
    if (name == "cs_opdiff") {
        return r.cs_opdiff;
    }
    if (name == "cs_opdiff_gauged") {
        return r.cs_opdiff_gauged;
    }
    if (name == "cs_channel") {
        return r.cs_channel;
    }
    if (name == "spectral_diff") {
        return r.spectral_diff;
    }
    return r.bound;
}

double ratio(double value, double bound) { return bound > 0.0 ? value / bound : 0.0; }

ReadingStats readingStats(const std::vector<double> &ratios) {
    ReadingStats s;
    if (ratios.empty()) {
        return s;
    }
    s.max_ratio = *std::max_element(ratios.begin(), ratios.end());
    const auto [mean, ci] = meanCi95(ratios);
    s.mean_ratio = mean;
    s.ci95_ratio = ci;
    return s;
}

std::string u64(std::uint64_t x) { return std::to_string(x); }

nlohmann::json cellToJson(const std::string &cell) {
    if (cell.empty()) {
        return nullptr;
    }
    const char *first = cell.data();
    const char *last = first + cell.size();
    if (cell.front() != '-') {
        std::uint64_t u = 0;
        if (auto [p, ec] = std::from_chars(first, last, u);
            ec == std::errc{} && p == last) {
            return u;
        }
    } else {
        std::int64_t i = 0;
        if (auto [p, ec] = std::from_chars(first, last, i);
            ec == std::errc{} && p == last) {
            return i;
        }
    }
    double d = 0.0;
    if (auto [p, ec] = std::from_chars(first, last, d);
        ec == std::errc{} && p == last && std::isfinite(d)) {
        return d;
    }
    return cell;
}

} // namespace

std::vector<circuit::AnsatzConfig> PerturbationSpec::resolvedConfigs() const {
    if (!configs.empty()) {
        std::vector<circuit::AnsatzConfig> out;
        out.reserve(configs.size());
        for (const auto &c : configs) {
            out.push_back(c.canonical());
        }
        return out;
    }
    return circuit::configGrid(qubits_lo, qubits_hi, layers_lo, layers_hi);
}

void PerturbationSpec::validate() const {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw InvalidArgument("fraction must lie in (0, 1]");
    }
    if (scales.empty()) {
        throw InvalidArgument("at least one scale is required");
    }
    for (const double s : scales) {
        if (!std::isfinite(s) || s < 0.0) {
            throw InvalidArgument("scales must be finite and non-negative");
        }
    }
    if (samples_per_param == 0) {
        throw InvalidArgument("samples per parameter must be >= 1");
    }
    if (configs.empty()) {
        (void)circuit::configGrid(qubits_lo, qubits_hi, layers_lo, layers_hi);
    }
}

std::size_t perturbedCount(double fraction, std::size_t params) {
    const auto rounded = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(params)));
    return std::clamp<std::size_t>(rounded, 1, params);
}

circuit::ParamVector randomPerturbation(const circuit::ParamVector &theta,
                                        double fraction, double scale, Rng &rng) {
    circuit::ParamVector delta(theta.size(), 0.0);
    if (theta.empty()) {
        return delta;
    }
    for (const auto j : rng.choose(theta.size(), perturbedCount(fraction, theta.size()))) {
        const double sign = rng.coin() ? 1.0 : -1.0;
        delta[j] = sign * scale * theta[j];
    }
    return delta;
}

std::size_t plannedSampleCount(const PerturbationSpec &spec) {
    std::size_t total = 0;
    for (const auto &c : spec.resolvedConfigs()) {
        total += spec.samples_per_param * c.numParams();
    }
    return total * spec.scales.size();
}

std::vector<ExperimentRow> runPerturbation(const PerturbationSpec &spec) {
    spec.validate();
    const auto configs = spec.resolvedConfigs();
    std::vector<ExperimentRow> rows;
    rows.reserve(plannedSampleCount(spec));
    std::uint64_t cell = 0;
    for (const auto &cfg : configs) {
        const std::size_t p = cfg.numParams();
        for (const double scale : spec.scales) {
            const std::uint64_t cell_seed = deriveSeed(spec.seed, cell++);
            Rng rng(cell_seed);
            const std::size_t samples = spec.samples_per_param * p;
            for (std::size_t s = 0; s < samples; ++s) {
                circuit::ParamVector theta(p);
                for (auto &x : theta) {
                    x = rng.uniform(0.0, 2.0 * std::numbers::pi);
                }
                const auto delta = randomPerturbation(theta, spec.fraction, scale, rng);
                ExperimentRow row;
                row.kind = "perturb";
                row.config = cfg;
                row.scale = scale;
                row.index = s;
                row.seed = cell_seed;
                row.record = sensitivity::channelSensitivity(cfg, theta, delta);
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::pair<double, double> meanCi95(const std::vector<double> &values) {
    if (values.empty()) {
        return {0.0, 0.0};
    }
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (const double v : values) {
        mean += v;
    }
    mean /= n;
    if (values.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (const double v : values) {
        ss += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(ss / (n - 1.0));
    return {mean, 1.96 * sd / std::sqrt(n)};
}

TrainingResult runTraining(const std::vector<circuit::AnsatzConfig> &configs,
                           const qml::TrainHyper &hyper,
                           const std::vector<qml::Dataset> &datasets,
                           qml::Encoding encoding, std::uint64_t seed) {
    hyper.validate();
    if (datasets.empty()) {
        throw InvalidArgument("at least one dataset is required");
    }
    TrainingResult result;
    std::map<std::pair<std::size_t, int>, qml::EncodedDataset> encoded;
    std::uint64_t cell = 0;
    for (const auto &raw_cfg : configs) {
        const auto cfg = raw_cfg.canonical();
        for (std::size_t d = 0; d < datasets.size(); ++d) {
            const auto key = std::make_pair(d, cfg.qubits);
            if (!encoded.contains(key)) {
                encoded.emplace(key, qml::prepareDataset(datasets[d], cfg.qubits,
                                                         encoding));
            }
            const auto &data = encoded.at(key);
            std::vector<std::vector<ExperimentRow>> per_run;
            for (int r = 0; r < hyper.runs; ++r) {
                const std::uint64_t cell_seed = deriveSeed(seed, cell++);
                const auto trace = qml::train(cfg, data, hyper, cell_seed);
                std::vector<ExperimentRow> run_rows;
                for (std::size_t it = 0; it < trace.iterations.size(); ++it) {
                    const auto &rec = trace.iterations[it];
                    ExperimentRow row;
                    row.kind = "train";
                    row.config = cfg;
                    row.dataset = datasets[d].name;
                    row.encoding = std::string(qml::toString(encoding));
                    row.run = static_cast<std::size_t>(r);
                    row.index = it;
                    row.seed = cell_seed;
                    row.record = rec.sensitivity;
                    row.loss = rec.loss;
                    row.mean_abs_rel_change = rec.mean_abs_rel_change;
                    row.frac_params_changed = rec.frac_params_changed;
                    run_rows.push_back(row);
                    result.rows.push_back(std::move(row));
                }
                per_run.push_back(std::move(run_rows));
            }
            for (int it = 0; it < hyper.iterations; ++it) {
                TrainingSummaryRow s;
                s.config = cfg;
                s.dataset = datasets[d].name;
                s.encoding = std::string(qml::toString(encoding));
                s.iteration = static_cast<std::size_t>(it);
                s.runs = per_run.size();
                for (const auto &metric : kSummaryMetrics) {
                    std::vector<double> values;
                    values.reserve(per_run.size());
                    for (const auto &run_rows : per_run) {
                        values.push_back(metricValue(run_rows[it], metric));
                    }
                    s.metrics.emplace_back(metric, meanCi95(values));
                }
                result.summary.push_back(std::move(s));
            }
        }
    }
    return result;
}

std::vector<BoundSummaryRow> compareBound(const std::vector<ExperimentRow> &rows,
                                          BoundGrouping grouping) {
    // Groups keep first-appearance order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<const ExperimentRow *>> groups;
    for (const auto &row : rows) {
        const std::string key = grouping == BoundGrouping::Config
                                    ? row.kind + "|" + row.config.toString()
                                    : row.kind + "|n=" + std::to_string(row.config.qubits);
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) {
            order.push_back(key);
        }
        it->second.push_back(&row);
    }

    std::vector<BoundSummaryRow> out;
    for (const auto &key : order) {
        const auto &members = groups.at(key);
        BoundSummaryRow s;
        s.kind = members.front()->kind;
        s.qubits = members.front()->config.qubits;
        s.group = grouping == BoundGrouping::Config
                      ? members.front()->config.toString()
                      : "n=" + std::to_string(s.qubits);
        s.count = members.size();
        std::vector<double> r_op;
        std::vector<double> r_opg;
        std::vector<double> r_ch;
        std::vector<double> r_sd;
        double bound_sum = 0.0;
        double cs_sum = 0.0;
        double gap_sum = 0.0;
        for (const auto *row : members) {
            const auto &rec = row->record;
            r_op.push_back(ratio(rec.cs_opdiff, rec.bound));
            r_opg.push_back(ratio(rec.cs_opdiff_gauged, rec.bound));
            r_ch.push_back(ratio(rec.cs_channel, rec.bound));
            r_sd.push_back(ratio(rec.spectral_diff, rec.bound));
            bound_sum += rec.bound;
            cs_sum += rec.cs_opdiff_gauged;
            gap_sum += rec.bound - rec.cs_opdiff_gauged;
            if (rec.delta_abs_sum <= 2.0) {
                ++s.eligible;
                if (rec.cs_opdiff_gauged > rec.bound) {
                    ++s.violations;
                }
            }
        }
        const double n = static_cast<double>(members.size());
        s.mean_bound = bound_sum / n;
        s.mean_cs_opdiff_gauged = cs_sum / n;
        s.mean_gap = gap_sum / n;
        s.cs_opdiff = readingStats(r_op);
        s.cs_opdiff_gauged = readingStats(r_opg);
        s.cs_channel = readingStats(r_ch);
        s.spectral_diff = readingStats(r_sd);
        out.push_back(std::move(s));
    }
    return out;
}

const std::vector<std::string> &rowColumns() {
    static const std::vector<std::string> cols{
        "kind",          "config",           "n",
        "L",             "rotations",        "entanglers",
        "n_params",      "scale",            "dataset",
        "encoding",      "run",              "index",
        "seed",          "delta_abs_sum",    "bound",
        "cs_opdiff",     "cs_opdiff_gauged", "cs_channel",
        "spectral_diff", "loss",             "mean_abs_rel_change",
        "frac_params_changed"};
    return cols;
}

csv::Table rowsToTable(const std::vector<ExperimentRow> &rows,
                       csv::Metadata metadata) {
    csv::Table t;
    t.metadata = std::move(metadata);
    t.header = rowColumns();
    t.rows.reserve(rows.size());
    for (const auto &r : rows) {
        const auto &rec = r.record;
        t.rows.push_back({r.kind,
                          r.config.toString(),
                          std::to_string(r.config.qubits),
                          std::to_string(r.config.layers),
                          r.config.rotationsText(),
                          r.config.entanglersText(),
                          std::to_string(r.config.numParams()),
                          csv::formatOptional(r.scale),
                          r.dataset,
                          r.encoding,
                          r.run ? std::to_string(*r.run) : std::string{},
                          std::to_string(r.index),
                          u64(r.seed),
                          csv::formatDouble(rec.delta_abs_sum),
                          csv::formatDouble(rec.bound),
                          csv::formatDouble(rec.cs_opdiff),
                          csv::formatDouble(rec.cs_opdiff_gauged),
                          csv::formatDouble(rec.cs_channel),
                          csv::formatDouble(rec.spectral_diff),
                          csv::formatOptional(r.loss),
                          csv::formatOptional(r.mean_abs_rel_change),
                          csv::formatOptional(r.frac_params_changed)});
    }
    return t;
}

std::vector<ExperimentRow> rowsFromTable(const csv::Table &table) {
    std::vector<std::size_t> idx;
    for (const auto &c : rowColumns()) {
        idx.push_back(table.column(c));
    }
    auto get = [&](const std::vector<std::string> &cells, std::size_t k) -> const std::string & {
        return cells[idx[k]];
    };
    std::vector<ExperimentRow> out;
    out.reserve(table.rows.size());
    for (const auto &cells : table.rows) {
        ExperimentRow r;
        r.kind = get(cells, 0);
        r.config = circuit::AnsatzConfig::parse(get(cells, 1));
        r.scale = csv::parseOptional(get(cells, 7));
        r.dataset = get(cells, 8);
        r.encoding = get(cells, 9);
        if (!get(cells, 10).empty()) {
            r.run = std::stoull(get(cells, 10));
        }
        r.index = std::stoull(get(cells, 11));
        r.seed = std::stoull(get(cells, 12));
        r.record.delta_abs_sum = csv::parseDouble(get(cells, 13));
        r.record.bound = csv::parseDouble(get(cells, 14));
        r.record.cs_opdiff = csv::parseDouble(get(cells, 15));
        r.record.cs_opdiff_gauged = csv::parseDouble(get(cells, 16));
        r.record.cs_channel = csv::parseDouble(get(cells, 17));
        r.record.spectral_diff = csv::parseDouble(get(cells, 18));
        r.loss = csv::parseOptional(get(cells, 19));
        r.mean_abs_rel_change = csv::parseOptional(get(cells, 20));
        r.frac_params_changed = csv::parseOptional(get(cells, 21));
        out.push_back(std::move(r));
    }
    return out;
}

csv::Table summaryToTable(const std::vector<TrainingSummaryRow> &rows,
                          csv::Metadata metadata) {
    csv::Table t;
    t.metadata = std::move(metadata);
    t.header = {"config", "n", "L", "rotations", "entanglers", "n_params",
                "dataset", "encoding", "iteration", "runs"};
    for (const auto &m : kSummaryMetrics) {
        t.header.push_back(m + "_mean");
        t.header.push_back(m + "_ci95");
    }
    for (const auto &s : rows) {
        std::vector<std::string> cells{s.config.toString(),
                                       std::to_string(s.config.qubits),
                                       std::to_string(s.config.layers),
                                       s.config.rotationsText(),
                                       s.config.entanglersText(),
                                       std::to_string(s.config.numParams()),
                                       s.dataset,
                                       s.encoding,
                                       std::to_string(s.iteration),
                                       std::to_string(s.runs)};
        for (const auto &[name, stats] : s.metrics) {
            cells.push_back(csv::formatDouble(stats.first));
            cells.push_back(csv::formatDouble(stats.second));
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

csv::Table boundToTable(const std::vector<BoundSummaryRow> &rows,
                        csv::Metadata metadata) {
    csv::Table t;
    t.metadata = std::move(metadata);
    t.header = {"group", "kind", "n", "count", "mean_bound",
                "mean_cs_opdiff_gauged", "mean_gap"};
    for (const std::string reading :
         {"cs_opdiff", "cs_opdiff_gauged", "cs_channel", "spectral_diff"}) {
        t.header.push_back(reading + "_max_ratio");
        t.header.push_back(reading + "_mean_ratio");
        t.header.push_back(reading + "_ci95_ratio");
    }
    t.header.push_back("eligible");
    t.header.push_back("violations");
    for (const auto &s : rows) {
        std::vector<std::string> cells{s.group,
                                       s.kind,
                                       std::to_string(s.qubits),
                                       std::to_string(s.count),
                                       csv::formatDouble(s.mean_bound),
                                       csv::formatDouble(s.mean_cs_opdiff_gauged),
                                       csv::formatDouble(s.mean_gap)};
        for (const auto *st :
             {&s.cs_opdiff, &s.cs_opdiff_gauged, &s.cs_channel, &s.spectral_diff}) {
            cells.push_back(csv::formatDouble(st->max_ratio));
            cells.push_back(csv::formatDouble(st->mean_ratio));
            cells.push_back(csv::formatDouble(st->ci95_ratio));
        }
        cells.push_back(std::to_string(s.eligible));
        cells.push_back(std::to_string(s.violations));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

csv::Table welchToTable(const std::vector<design::WelchRow> &rows,
                        csv::Metadata metadata) {
    csv::Table t;
    t.metadata = std::move(metadata);
    t.header = {"t",     "n",
                "d",     "welch_sum",
                "welch_bound", "ratio",
                "max_overlap_lhs", "max_overlap_rhs",
                "provenance"};
    for (const auto &r : rows) {
        t.rows.push_back({std::to_string(r.t), std::to_string(r.n),
                          std::to_string(r.d), csv::formatDouble(r.welch_sum),
                          csv::formatDouble(r.welch_bound),
                          csv::formatDouble(r.ratio),
                          csv::formatDouble(r.max_overlap_lhs),
                          csv::formatDouble(r.max_overlap_rhs), r.provenance});
    }
    return t;
}

void writeJson(std::ostream &out, const csv::Table &table) {
    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto &[k, v] : table.metadata) {
        doc["metadata"][k] = v;
    }
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto &cells : table.rows) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            row[table.header[c]] = cellToJson(cells[c]);
        }
        doc["rows"].push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
}

csv::Metadata baseMetadata(const std::string &subcommand, std::uint64_t seed) {
    return {{"tool", "qsens"},
            {"subcommand", subcommand},
            {"seed", u64(seed)},
            {"entangler_topology", std::string(circuit::kEntanglerTopology)},
            {"param_index", "(layer*n+qubit)*n_rotations+rotation"},
            {"gauge_sign", "cancel"},
            {"gauge_overlap_threshold",
             csv::formatDouble(sensitivity::kDefaultOverlapThreshold)}};
}

} // namespace qsens::experiments
