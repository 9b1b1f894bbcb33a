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
#include "qsens/Dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "qsens/Error.hpp"
#include "qsens/Linalg.hpp"

namespace qsens::qml {

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\"");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> splitCsvLine(const std::string &line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        out.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

} // namespace

std::string_view toString(Encoding e) noexcept {
    return e == Encoding::Amplitude ? "amplitude" : "angle";
}

Encoding parseEncoding(std::string_view text) {
    if (text == "amplitude") {
        return Encoding::Amplitude;
    }
    if (text == "angle") {
        return Encoding::Angle;
    }
    throw InvalidArgument("unknown encoding '" + std::string(text) + "'");
}

Dataset makeDataset(std::string name, std::vector<std::vector<double>> features,
                    const std::vector<std::string> &classes) {
    if (features.size() != classes.size()) {
        throw InvalidArgument("feature rows and labels differ in length");
    }
    if (features.empty()) {
        throw EmptyDataset("no samples");
    }
    const std::size_t width = features.front().size();
    for (const auto &row : features) {
        if (row.size() != width) {
            throw InvalidArgument("ragged feature rows");
        }
    }

    std::map<std::string, std::size_t> counts;
    for (const auto &c : classes) {
        ++counts[c];
    }
    if (counts.size() < 2) {
        throw SingleClass("dataset '" + name + "' has fewer than two classes");
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(),
                                                            counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
        return a.second > b.second;
    });

    Dataset out;
    out.name = std::move(name);
    out.positive_class = ranked[0].first;
    out.negative_class = ranked[1].first;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i] == out.positive_class) {
            out.features.push_back(std::move(features[i]));
            out.labels.push_back(+1);
        } else if (classes[i] == out.negative_class) {
            out.features.push_back(std::move(features[i]));
            out.labels.push_back(-1);
        }
    }
    return out;
}

Dataset loadDatasetCsv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("'" + path.string() + "' is empty");
    }
    const auto header = splitCsvLine(line);
    const auto label_it = std::find(header.begin(), header.end(), "label");
    if (label_it == header.end()) {
        throw IoError("'" + path.string() + "' has no label column");
    }
    const auto label_col = static_cast<std::size_t>(label_it - header.begin());

    std::vector<std::vector<double>> features;
    std::vector<std::string> classes;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = splitCsvLine(line);
        if (cells.size() != header.size()) {
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": expected " + std::to_string(header.size()) +
                          " cells, got " + std::to_string(cells.size()));
        }
        std::vector<double> row;
        row.reserve(cells.size() - 1);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c == label_col) {
                continue;
            }
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cells[c], &used));
                if (used != cells[c].size()) {
                    throw std::invalid_argument(cells[c]);
                }
            } catch (const std::exception &) {
                throw IoError(path.string() + ":" + std::to_string(line_no) +
                              ": non-numeric feature '" + cells[c] + "'");
            }
        }
        features.push_back(std::move(row));
        classes.push_back(cells[label_col]);
    }
    return makeDataset(path.stem().string(), std::move(features), classes);
}

std::vector<std::vector<double>>
standardize(const std::vector<std::vector<double>> &rows) {
    if (rows.empty()) {
        return {};
    }
    const std::size_t m = rows.size();
    const std::size_t f = rows.front().size();
    std::vector<double> mean(f, 0.0);
    std::vector<double> sd(f, 0.0);
    for (const auto &r : rows) {
        for (std::size_t c = 0; c < f; ++c) {
            mean[c] += r[c];
        }
    }
    for (auto &x : mean) {
        x /= static_cast<double>(m);
    }
    for (const auto &r : rows) {
        for (std::size_t c = 0; c < f; ++c) {
            sd[c] += (r[c] - mean[c]) * (r[c] - mean[c]);
        }
    }
    for (auto &x : sd) {
        x = std::sqrt(x / static_cast<double>(m));
    }
    std::vector<std::vector<double>> out(m, std::vector<double>(f, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t c = 0; c < f; ++c) {
            out[i][c] = sd[c] > 0.0 ? (rows[i][c] - mean[c]) / sd[c] : 0.0;
        }
    }
    return out;
}

Pca pca(const std::vector<std::vector<double>> &centred, std::size_t k) {
    if (centred.size() < 2) {
        throw EmptyDataset("PCA needs at least two samples");
    }
    const std::size_t f = centred.front().size();
    if (k > f) {
        throw TooFewFeatures("requested " + std::to_string(k) +
                             " components from " + std::to_string(f) +
                             " features");
    }
    ComplexMatrix cov(f);
    for (const auto &r : centred) {
        for (std::size_t a = 0; a < f; ++a) {
            for (std::size_t b = 0; b < f; ++b) {
                cov(a, b) += r[a] * r[b];
            }
        }
    }
    cov *= Complex{1.0 / static_cast<double>(centred.size() - 1), 0.0};
    const auto spec = linalg::hermEig(cov);

    Pca out;
    for (std::size_t i = 0; i < k; ++i) {
        const auto &v = (*spec.eigenvectors)[i];
        // Jacobi on a real symmetric matrix keeps vectors real up to a
        // global phase; rotate it away before dropping the imaginary part.
        std::size_t lead = 0;
        for (std::size_t a = 1; a < f; ++a) {
            if (std::abs(v[a]) > std::abs(v[lead])) {
                lead = a;
            }
        }
        const Complex phase = std::conj(v[lead]) / std::abs(v[lead]);
        std::vector<double> axis(f);
        double nrm = 0.0;
        for (std::size_t a = 0; a < f; ++a) {
            axis[a] = (v[a] * phase).real();
            nrm += axis[a] * axis[a];
        }
        nrm = std::sqrt(nrm);
        for (auto &x : axis) {
            x /= nrm;
        }
        out.components.push_back(std::move(axis));
        out.variances.push_back(spec.eigenvalues[i].real());
    }
    return out;
}

StateVector amplitudeEncode(std::span<const double> components) {
    std::vector<Complex> amps(components.begin(), components.end());
    if (norm2(amps) == 0.0) {
        return StateVector::basis(amps.size(), 0);
    }
    return StateVector::normalized(std::move(amps));
}

StateVector angleEncode(std::span<const double> angles) {
    std::vector<Complex> amps{1.0};
    for (const double x : angles) {
        const double c = std::cos(x / 2.0);
        const double s = std::sin(x / 2.0);
        std::vector<Complex> next(amps.size() * 2);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            next[2 * i] = amps[i] * c;
            next[2 * i + 1] = amps[i] * s;
        }
        amps = std::move(next);
    }
    return StateVector::normalized(std::move(amps));
}

EncodedDataset prepareDataset(const Dataset &raw, int qubits, Encoding encoding) {
    if (qubits < 1) {
        throw InvalidArgument("qubits must be >= 1");
    }
    if (raw.features.empty()) {
        throw EmptyDataset("dataset '" + raw.name + "' has no samples");
    }
    const bool has_pos = std::find(raw.labels.begin(), raw.labels.end(), 1) !=
                         raw.labels.end();
    const bool has_neg = std::find(raw.labels.begin(), raw.labels.end(), -1) !=
                         raw.labels.end();
    if (!has_pos || !has_neg) {
        throw SingleClass("dataset '" + raw.name + "' needs both labels");
    }
    const std::size_t k = encoding == Encoding::Amplitude
                              ? (std::size_t{1} << qubits)
                              : static_cast<std::size_t>(qubits);
    if (raw.features.front().size() < k) {
        throw TooFewFeatures(std::to_string(raw.features.front().size()) +
                             " features, need " + std::to_string(k));
    }

    const auto z = standardize(raw.features);
    const auto axes = pca(z, k);
    std::vector<std::vector<double>> projected(z.size(), std::vector<double>(k));
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (std::size_t c = 0; c < k; ++c) {
            double acc = 0.0;
            for (std::size_t a = 0; a < z[i].size(); ++a) {
                acc += z[i][a] * axes.components[c][a];
            }
            projected[i][c] = acc;
        }
    }

    EncodedDataset out;
    out.encoding = encoding;
    out.labels = raw.labels;
    out.states.reserve(z.size());
    if (encoding == Encoding::Amplitude) {
        for (const auto &row : projected) {
            out.states.push_back(amplitudeEncode(row));
        }
        return out;
    }

    std::vector<double> lo(k, 0.0);
    std::vector<double> hi(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        lo[c] = hi[c] = projected.front()[c];
        for (const auto &row : projected) {
            lo[c] = std::min(lo[c], row[c]);
            hi[c] = std::max(hi[c], row[c]);
        }
    }
    for (const auto &row : projected) {
        std::vector<double> angles(k, 0.0);
        for (std::size_t c = 0; c < k; ++c) {
            const double span = hi[c] - lo[c];
            angles[c] = span > 0.0 ? std::numbers::pi * (row[c] - lo[c]) / span : 0.0;
        }
        out.states.push_back(angleEncode(angles));
    }
    return out;
}

} // namespace qsens::qml
