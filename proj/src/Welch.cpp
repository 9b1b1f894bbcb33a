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
#include "qsens/Welch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsens/Error.hpp"

namespace qsens::design {

namespace {

// Squared overlaps |<psi_j|psi_k>|^2 for j < k, row by row.
std::vector<double> pairOverlaps(const StateEnsemble &ensemble) {
    const auto &s = ensemble.states;
    std::vector<double> out;
    out.reserve(s.size() * (s.size() - 1) / 2);
    for (std::size_t j = 0; j < s.size(); ++j) {
        for (std::size_t k = j + 1; k < s.size(); ++k) {
            out.push_back(std::norm(inner(s[j].amplitudes(), s[k].amplitudes())));
        }
    }
    return out;
}

void requireEnsemble(const StateEnsemble &ensemble) {
    if (ensemble.states.empty()) {
        throw InvalidArgument("ensemble is empty");
    }
    for (const auto &s : ensemble.states) {
        if (s.dim() != ensemble.dim) {
            throw DimensionMismatch("ensemble member has dim " +
                                    std::to_string(s.dim()) + ", expected " +
                                    std::to_string(ensemble.dim));
        }
    }
}

double sumFromOverlaps(std::size_t n, const std::vector<double> &overlaps,
                       int t) {
    double off = 0.0;
    for (const double p : overlaps) {
        off += std::pow(p, t);
    }
    return static_cast<double>(n) + 2.0 * off;
}

} // namespace

StateVector haarState(std::size_t d, Rng &rng) {
    if (d == 0) {
        throw InvalidArgument("dimension must be >= 1");
    }
    std::vector<Complex> amps(d);
    for (auto &z : amps) {
        const double re = rng.normal();
        const double im = rng.normal();
        z = Complex{re, im};
    }
    return StateVector::normalized(std::move(amps));
}

ComplexMatrix haarUnitary(std::size_t d, Rng &rng) {
    // columns[c] holds column c.
    std::vector<std::vector<Complex>> cols(d, std::vector<Complex>(d));
    for (auto &col : cols) {
        for (auto &z : col) {
            const double re = rng.normal();
            const double im = rng.normal();
            z = Complex{re, im} / std::numbers::sqrt2;
        }
    }
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            const Complex proj = inner(cols[p], cols[c]);
            for (std::size_t r = 0; r < d; ++r) {
                cols[c][r] -= proj * cols[p][r];
            }
        }
        const double n = norm2(cols[c]);
        for (auto &z : cols[c]) {
            z /= n;
        }
    }
    ComplexMatrix u(d);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t r = 0; r < d; ++r) {
            u(r, c) = cols[c][r];
        }
    }
    return u;
}

StateEnsemble haarEnsemble(std::size_t d, std::size_t count,
                           std::uint64_t seed) {
    if (count == 0) {
        throw InvalidArgument("ensemble size must be >= 1");
    }
    Rng rng(seed);
    StateEnsemble out;
    out.dim = d;
    out.provenance = "haar";
    out.states.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.states.push_back(haarState(d, rng));
    }
    return out;
}

StateEnsemble basisEnsemble(std::size_t d) {
    StateEnsemble out;
    out.dim = d;
    out.provenance = "basis";
    for (std::size_t i = 0; i < d; ++i) {
        out.states.push_back(StateVector::basis(d, i));
    }
    return out;
}

StateEnsemble ansatzStateEnsemble(const circuit::AnsatzConfig &config,
                                  std::size_t count, std::uint64_t seed) {
    if (count == 0) {
        throw InvalidArgument("ensemble size must be >= 1");
    }
    const auto cfg = config.canonical();
    Rng rng(seed);
    StateEnsemble out;
    out.dim = cfg.dim();
    out.provenance = "ansatz:" + cfg.toString();
    out.states.reserve(count);
    out.parameters.reserve(count);
    const auto zero = StateVector::basis(cfg.dim(), 0);
    for (std::size_t i = 0; i < count; ++i) {
        circuit::ParamVector theta(cfg.numParams());
        for (auto &x : theta) {
            x = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
        out.states.push_back(zero.evolved(circuit::buildUnitary(cfg, theta)));
        out.parameters.push_back(std::move(theta));
    }
    return out;
}

double symmetricDimension(std::size_t d, int t) {
    if (d == 0 || t < 1) {
        throw InvalidArgument("need d >= 1 and t >= 1");
    }
    double c = 1.0;
    for (int i = 1; i <= t; ++i) {
        c = c * static_cast<double>(d - 1 + i) / i;
        if (c > 0x1.0p52) {
            const double dd = static_cast<double>(d);
            return std::exp(std::lgamma(dd + t) - std::lgamma(t + 1.0) -
                            std::lgamma(dd));
        }
    }
    return c;
}

double welchSum(const StateEnsemble &ensemble, int t) {
    if (t < 1) {
        throw InvalidArgument("t must be >= 1");
    }
    requireEnsemble(ensemble);
    return sumFromOverlaps(ensemble.states.size(), pairOverlaps(ensemble), t);
}

double welchBound(std::size_t n, std::size_t d, int t) {
    if (n == 0) {
        throw InvalidArgument("n must be >= 1");
    }
    const double nn = static_cast<double>(n);
    return nn * nn / symmetricDimension(d, t);
}

std::vector<WelchRow> welchReport(const StateEnsemble &ensemble, int t_max) {
    if (t_max < 1) {
        throw InvalidArgument("t_max must be >= 1");
    }
    requireEnsemble(ensemble);
    const std::size_t n = ensemble.states.size();
    const auto overlaps = pairOverlaps(ensemble);
    const double max_overlap =
        overlaps.empty() ? 0.0 : *std::max_element(overlaps.begin(), overlaps.end());

    std::vector<WelchRow> rows;
    for (int t = 1; t <= t_max; ++t) {
        WelchRow row;
        row.t = t;
        row.n = n;
        row.d = ensemble.dim;
        row.welch_sum = sumFromOverlaps(n, overlaps, t);
        row.welch_bound = welchBound(n, ensemble.dim, t);
        row.ratio = row.welch_sum / row.welch_bound;
        row.max_overlap_lhs = overlaps.empty() ? 0.0 : std::pow(max_overlap, t);
        row.max_overlap_rhs =
            n < 2 ? 0.0
                  : (static_cast<double>(n) / symmetricDimension(ensemble.dim, t) -
                     1.0) /
                        static_cast<double>(n - 1);
        row.provenance = ensemble.provenance;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace qsens::design
