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
#include "qsens/Ansatz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>

#include "qsens/Error.hpp"

namespace qsens::circuit {

namespace {

using Gate2 = std::array<Complex, 4>;

constexpr Complex kI{0.0, 1.0};

Gate2 pauliEntries(RotationKind kind) {
    switch (kind) {
    case RotationKind::RX:
        return {0.0, 1.0, 1.0, 0.0};
    case RotationKind::RY:
        return {0.0, -kI, kI, 0.0};
    case RotationKind::RZ:
        return {1.0, 0.0, 0.0, -1.0};
    }
    return {};
}

Gate2 rotationEntries(RotationKind kind, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const Gate2 p = pauliEntries(kind);
    Gate2 g{};
    for (std::size_t i = 0; i < 4; ++i) {
        const Complex id = (i == 0 || i == 3) ? 1.0 : 0.0;
        g[i] = c * id - kI * s * p[i];
    }
    return g;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return s;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

int parseInt(const std::string &s, std::string_view what) {
    int value = 0;
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw InvalidArgument("bad integer for " + std::string(what) + ": '" +
                              s + "'");
    }
    return value;
}

// Applies the whole circuit to `m` (left multiplication). When `generator_at`
// is set, the Pauli generator of that gate is applied right after it.
void applyCircuit(ComplexMatrix &m, const AnsatzConfig &config,
                  const ParamVector &theta,
                  std::optional<std::size_t> generator_at) {
    const int n = config.qubits;
    for (int layer = 0; layer < config.layers; ++layer) {
        for (const auto ent : config.entanglers) {
            for (int q = 0; q + 1 < n; ++q) {
                applyEntangler(m, ent, q, q + 1, n);
            }
        }
        for (int q = 0; q < n; ++q) {
            for (std::size_t r = 0; r < config.rotations.size(); ++r) {
                const std::size_t j = config.paramIndex(layer, q, r);
                const RotationKind kind = config.rotations[r];
                applySingleQubit(m, rotationEntries(kind, theta[j]), q, n);
                if (generator_at && *generator_at == j) {
                    applySingleQubit(m, pauliEntries(kind), q, n);
                }
            }
        }
    }
}

void requireParamLength(const AnsatzConfig &config, const ParamVector &theta) {
    if (theta.size() != config.numParams()) {
        throw ParamLengthMismatch("expected " +
                                  std::to_string(config.numParams()) +
                                  " parameters, got " +
                                  std::to_string(theta.size()));
    }
}

// R(a + h) - R(a) = -2 sin(h/4) (sin(a/2 + h/4) I + i cos(a/2 + h/4) P),
// accurate relative to the size of the difference.
Gate2 rotationDifference(RotationKind kind, double angle, double h) {
    const double scale = -2.0 * std::sin(h / 4.0);
    const double mid = angle / 2.0 + h / 4.0;
    const Gate2 p = pauliEntries(kind);
    Gate2 g{};
    for (std::size_t i = 0; i < 4; ++i) {
        const Complex id = (i == 0 || i == 3) ? 1.0 : 0.0;
        g[i] = scale * (std::sin(mid) * id + kI * std::cos(mid) * p[i]);
    }
    return g;
}

} // namespace

std::string_view toString(RotationKind kind) noexcept {
    switch (kind) {
    case RotationKind::RX:
        return "rx";
    case RotationKind::RY:
        return "ry";
    case RotationKind::RZ:
        return "rz";
    }
    return "?";
}

std::string_view toString(EntanglerKind kind) noexcept {
    switch (kind) {
    case EntanglerKind::CNOT:
        return "cnot";
    case EntanglerKind::CZ:
        return "cz";
    }
    return "?";
}

AnsatzConfig AnsatzConfig::canonical() const {
    if (qubits < 1 || qubits > kMaxQubits) {
        throw InvalidArgument("qubits must be in [1, " +
                              std::to_string(kMaxQubits) + "], got " +
                              std::to_string(qubits));
    }
    if (layers < 1) {
        throw InvalidArgument("layers must be >= 1, got " +
                              std::to_string(layers));
    }
    if (rotations.empty()) {
        throw InvalidArgument("at least one rotation kind is required");
    }
    AnsatzConfig out = *this;
    std::sort(out.rotations.begin(), out.rotations.end());
    out.rotations.erase(std::unique(out.rotations.begin(), out.rotations.end()),
                        out.rotations.end());
    std::sort(out.entanglers.begin(), out.entanglers.end());
    out.entanglers.erase(
        std::unique(out.entanglers.begin(), out.entanglers.end()),
        out.entanglers.end());
    return out;
}

std::string AnsatzConfig::rotationsText() const {
    std::string out;
    for (const auto r : rotations) {
        if (!out.empty()) {
            out += '+';
        }
        out += circuit::toString(r);
    }
    return out;
}

std::string AnsatzConfig::entanglersText() const {
    if (entanglers.empty()) {
        return "none";
    }
    std::string out;
    for (const auto e : entanglers) {
        if (!out.empty()) {
            out += '+';
        }
        out += circuit::toString(e);
    }
    return out;
}

std::string AnsatzConfig::toString() const {
    return "n=" + std::to_string(qubits) + ",L=" + std::to_string(layers) +
           ",rot=" + rotationsText() + ",ent=" + entanglersText();
}

std::vector<RotationKind> parseRotations(std::string_view text) {
    std::vector<RotationKind> out;
    for (const auto &tok : split(text, '+')) {
        const auto t = lower(tok);
        if (t == "rx" || t == "x") {
            out.push_back(RotationKind::RX);
        } else if (t == "ry" || t == "y") {
            out.push_back(RotationKind::RY);
        } else if (t == "rz" || t == "z") {
            out.push_back(RotationKind::RZ);
        } else {
            throw InvalidArgument("unknown rotation '" + tok + "'");
        }
    }
    return out;
}

std::vector<EntanglerKind> parseEntanglers(std::string_view text) {
    std::vector<EntanglerKind> out;
    if (lower(trim(text)) == "none" || trim(text).empty()) {
        return out;
    }
    for (const auto &tok : split(text, '+')) {
        const auto t = lower(tok);
        if (t == "cnot" || t == "cx") {
            out.push_back(EntanglerKind::CNOT);
        } else if (t == "cz") {
            out.push_back(EntanglerKind::CZ);
        } else {
            throw InvalidArgument("unknown entangler '" + tok + "'");
        }
    }
    return out;
}

AnsatzConfig AnsatzConfig::parse(std::string_view text) {
    AnsatzConfig cfg;
    bool seen_n = false;
    bool seen_l = false;
    bool seen_rot = false;
    for (const auto &field : split(text, ',')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument("expected key=value, got '" + field + "'");
        }
        const auto key = lower(trim(std::string_view(field).substr(0, eq)));
        const auto value = trim(std::string_view(field).substr(eq + 1));
        if (key == "n") {
            cfg.qubits = parseInt(value, "n");
            seen_n = true;
        } else if (key == "l") {
            cfg.layers = parseInt(value, "L");
            seen_l = true;
        } else if (key == "rot") {
            cfg.rotations = parseRotations(value);
            seen_rot = true;
        } else if (key == "ent") {
            cfg.entanglers = parseEntanglers(value);
        } else {
            throw InvalidArgument("unknown config key '" + key + "'");
        }
    }
    if (!seen_n || !seen_l || !seen_rot) {
        throw InvalidArgument("config needs n, L and rot: '" +
                              std::string(text) + "'");
    }
    return cfg.canonical();
}

std::vector<std::vector<RotationKind>> gridRotationSets() {
    using R = RotationKind;
    return {{R::RX},         {R::RY},         {R::RZ},
            {R::RX, R::RY},  {R::RY, R::RZ},  {R::RX, R::RZ},
            {R::RX, R::RY, R::RZ}};
}

std::vector<std::vector<EntanglerKind>> gridEntanglerSets() {
    using E = EntanglerKind;
    return {{E::CNOT}, {E::CZ}, {E::CNOT, E::CZ}};
}

std::vector<AnsatzConfig> configGrid(int q_lo, int q_hi, int l_lo, int l_hi) {
    if (q_lo < 1 || q_hi < q_lo || q_hi > kMaxQubits || l_lo < 1 ||
        l_hi < l_lo) {
        throw InvalidArgument("invalid grid ranges");
    }
    std::vector<AnsatzConfig> out;
    for (const auto &rot : gridRotationSets()) {
        for (const auto &ent : gridEntanglerSets()) {
            for (int q = q_lo; q <= q_hi; ++q) {
                for (int l = l_lo; l <= l_hi; ++l) {
                    out.push_back(AnsatzConfig{q, l, rot, ent}.canonical());
                }
            }
        }
    }
    return out;
}

ComplexMatrix pauli(RotationKind kind) {
    const auto p = pauliEntries(kind);
    return ComplexMatrix(2, {p.begin(), p.end()});
}

ComplexMatrix gateMatrix(RotationKind kind, double angle) {
    if (!std::isfinite(angle)) {
        throw InvalidArgument("rotation angle must be finite");
    }
    const auto g = rotationEntries(kind, angle);
    return ComplexMatrix(2, {g.begin(), g.end()});
}

void applySingleQubit(ComplexMatrix &m, const Gate2 &gate, int qubit, int n) {
    const std::size_t dim = m.dim();
    const std::size_t bit = std::size_t{1} << (n - 1 - qubit);
    for (std::size_t r0 = 0; r0 < dim; ++r0) {
        if ((r0 & bit) != 0U) {
            continue;
        }
        auto row0 = m.row(r0);
        auto row1 = m.row(r0 | bit);
        for (std::size_t c = 0; c < dim; ++c) {
            const Complex a = row0[c];
            const Complex b = row1[c];
            row0[c] = gate[0] * a + gate[1] * b;
            row1[c] = gate[2] * a + gate[3] * b;
        }
    }
}

void applyEntangler(ComplexMatrix &m, EntanglerKind kind, int control,
                    int target, int n) {
    const std::size_t dim = m.dim();
    const std::size_t cbit = std::size_t{1} << (n - 1 - control);
    const std::size_t tbit = std::size_t{1} << (n - 1 - target);
    for (std::size_t r = 0; r < dim; ++r) {
        if ((r & cbit) == 0U) {
            continue;
        }
        if (kind == EntanglerKind::CNOT) {
            if ((r & tbit) == 0U) {
                auto a = m.row(r);
                auto b = m.row(r | tbit);
                std::swap_ranges(a.begin(), a.end(), b.begin());
            }
        } else if ((r & tbit) != 0U) {
            for (auto &z : m.row(r)) {
                z = -z;
            }
        }
    }
}

ComplexMatrix entanglerLayer(EntanglerKind kind, int n) {
    if (n < 1 || n > kMaxQubits) {
        throw InvalidArgument("qubit count out of range");
    }
    ComplexMatrix m = ComplexMatrix::identity(std::size_t{1} << n);
    for (int q = 0; q + 1 < n; ++q) {
        applyEntangler(m, kind, q, q + 1, n);
    }
    return m;
}

ComplexMatrix buildUnitary(const AnsatzConfig &config, const ParamVector &theta) {
    requireParamLength(config, theta);
    ComplexMatrix m = ComplexMatrix::identity(config.dim());
    applyCircuit(m, config, theta, std::nullopt);
    return m;
}

ComplexMatrix unitaryDifference(const AnsatzConfig &config,
                                const ParamVector &theta,
                                const ParamVector &delta) {
    requireParamLength(config, theta);
    requireParamLength(config, delta);
    const int n = config.qubits;
    // After gate k: prefix = g_k ... g_1 and
    // diff = sum_{j <= k} g'_k ... g'_{j+1} (g'_j - g_j) g_{j-1} ... g_1.
    ComplexMatrix prefix = ComplexMatrix::identity(config.dim());
    ComplexMatrix diff(config.dim());
    for (int layer = 0; layer < config.layers; ++layer) {
        for (const auto ent : config.entanglers) {
            for (int q = 0; q + 1 < n; ++q) {
                applyEntangler(prefix, ent, q, q + 1, n);
                applyEntangler(diff, ent, q, q + 1, n);
            }
        }
        for (int q = 0; q < n; ++q) {
            for (std::size_t r = 0; r < config.rotations.size(); ++r) {
                const std::size_t j = config.paramIndex(layer, q, r);
                const RotationKind kind = config.rotations[r];
                applySingleQubit(diff, rotationEntries(kind, theta[j] + delta[j]), q, n);
                if (delta[j] != 0.0) {
                    ComplexMatrix term = prefix;
                    applySingleQubit(term, rotationDifference(kind, theta[j], delta[j]), q, n);
                    diff += term;
                }
                applySingleQubit(prefix, rotationEntries(kind, theta[j]), q, n);
            }
        }
    }
    return diff;
}

ComplexMatrix partialDerivative(const AnsatzConfig &config,
                                const ParamVector &theta, std::size_t j) {
    requireParamLength(config, theta);
    if (j >= config.numParams()) {
        throw IndexOutOfRange("parameter index " + std::to_string(j) +
                              " >= " + std::to_string(config.numParams()));
    }
    ComplexMatrix m = ComplexMatrix::identity(config.dim());
    applyCircuit(m, config, theta, j);
    m *= Complex{0.0, -0.5};
    return m;
}

} // namespace qsens::circuit
