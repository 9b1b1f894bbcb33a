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
#include "qsens/Sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qsens/Error.hpp"
#include "qsens/Linalg.hpp"
#include "qsens/Random.hpp"

namespace qsens::sensitivity {

namespace {

constexpr int kMaxLocalSteps = 20'000;

void requirePair(const ComplexMatrix &u, const ComplexMatrix &v) {
    if (u.dim() != v.dim()) {
        throw DimensionMismatch(std::to_string(u.dim()) + " vs " +
                                std::to_string(v.dim()));
    }
    linalg::requireUnitary(u);
    linalg::requireUnitary(v);
}

// |<psi| (W (x) I) |psi>|^2 with psi stored as a d x d matrix.
struct Overlap {
    Complex z;
    ComplexMatrix w_psi;
};

Overlap overlap(const ComplexMatrix &w, const ComplexMatrix &psi) {
    Overlap out{Complex{}, w * psi};
    const auto a = psi.data();
    const auto b = out.w_psi.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.z += std::conj(a[i]) * b[i];
    }
    return out;
}

double localSearch(const ComplexMatrix &w, const ComplexMatrix &wd,
                   ComplexMatrix psi) {
    psi *= Complex{1.0 / psi.frobeniusNorm(), 0.0};
    Overlap cur = overlap(w, psi);
    double f = std::norm(cur.z);
    double step = 0.5;
    for (int it = 0; it < kMaxLocalSteps && f > 0.0; ++it) {
        // d f / d conj(psi), projected onto the tangent space of the sphere.
        ComplexMatrix grad = cur.w_psi * std::conj(cur.z) + (wd * psi) * cur.z;
        Complex along{};
        {
            const auto p = psi.data();
            const auto g = grad.data();
            for (std::size_t i = 0; i < p.size(); ++i) {
                along += std::conj(p[i]) * g[i];
            }
        }
        grad -= psi * along;
        const double gn = grad.frobeniusNorm();
        if (!(gn > 1e-300)) {
            break;
        }
        bool accepted = false;
        while (step >= 1e-14) {
            ComplexMatrix trial = psi - grad * Complex{step / gn, 0.0};
            trial *= Complex{1.0 / trial.frobeniusNorm(), 0.0};
            Overlap next = overlap(w, trial);
            const double fn = std::norm(next.z);
            if (fn < f) {
                const double improvement = f - fn;
                psi = std::move(trial);
                cur = std::move(next);
                f = fn;
                accepted = improvement >= 1e-10;
                step = std::min(2.0 * step, 1.0);
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            break;
        }
    }
    return f;
}

// |X - (Tr X / d) I|_F / sqrt(d).
double deviationFromScalar(const ComplexMatrix &x) {
    const double d = static_cast<double>(x.dim());
    const Complex mean = x.trace() / d;
    const ComplexMatrix dev = x - ComplexMatrix::identity(x.dim()) * mean;
    return dev.frobeniusNorm() / std::sqrt(d);
}

// Phase for B given excess = A^dagger B - I, or nothing when the trigger does
// not fire. Working with the excess keeps small overlaps accurate.
std::optional<double> gaugePhase(const ComplexMatrix &excess, double overlap_threshold,
                                 GaugeSign sign) {
    if (!(deviationFromScalar(excess) < overlap_threshold)) {
        return std::nullopt;
    }
    const Complex z = static_cast<double>(excess.dim()) + excess.trace();
    if (sign == GaugeSign::Cancel) {
        return -std::arg(z);
    }
    return z.real() != 0.0 ? std::atan(z.imag() / z.real()) : 0.0;
}

// diff = V - U.
SensitivityRecord fromDifference(const ComplexMatrix &u, const ComplexMatrix &v,
                                 const ComplexMatrix &diff,
                                 const circuit::ParamVector &delta) {
    SensitivityRecord rec;
    rec.bound = sensitivityBound(delta);
    rec.delta_abs_sum = 2.0 * rec.bound;
    const double raw = linalg::spectralNorm(diff);
    rec.cs_opdiff = raw * raw;
    rec.spectral_diff = raw;
    if (const auto phase = gaugePhase(u.adjoint() * diff, kDefaultOverlapThreshold,
                                      GaugeSign::Cancel)) {
        // U - e^{i p} V = (1 - e^{i p}) U - e^{i p} (V - U).
        const Complex rot = std::polar(1.0, *phase);
        const Complex one_minus = Complex(0.0, -2.0 * std::sin(*phase / 2.0)) *
                                  std::polar(1.0, *phase / 2.0);
        rec.spectral_diff = linalg::spectralNorm(u * one_minus - diff * rot);
    }
    rec.cs_opdiff_gauged = rec.spectral_diff * rec.spectral_diff;
    rec.cs_channel = channelDiamondDistance(u, v);
    return rec;
}

} // namespace

double channelDiamondDistance(const ComplexMatrix &u, const ComplexMatrix &v) {
    requirePair(u, v);
    const auto spec = linalg::unitarySpectrum(u.adjoint() * v);
    if (linalg::hullDistanceToOrigin(spec.eigenvalues) == 0.0) {
        return 2.0;
    }
    // For points on the unit circle nu = cos(w/2), w the width of the
    // smallest arc holding them, so 2 sqrt(1 - nu^2) = 2 sin(w/2). The sine
    // form avoids the cancellation in 1 - nu^2 for nearby unitaries.
    std::vector<double> phases;
    phases.reserve(spec.eigenvalues.size());
    for (const auto &z : spec.eigenvalues) {
        phases.push_back(std::arg(z));
    }
    std::sort(phases.begin(), phases.end());
    double largest_gap = 2.0 * std::numbers::pi - (phases.back() - phases.front());
    for (std::size_t i = 1; i < phases.size(); ++i) {
        largest_gap = std::max(largest_gap, phases[i] - phases[i - 1]);
    }
    const double width = 2.0 * std::numbers::pi - largest_gap;
    return std::clamp(2.0 * std::sin(width / 2.0), 0.0, 2.0);
}

double overlapDeviation(const ComplexMatrix &a, const ComplexMatrix &b) {
    return deviationFromScalar(a.adjoint() * b);
}

ComplexMatrix gaugeFix(const ComplexMatrix &a, const ComplexMatrix &b,
                       double overlap_threshold, GaugeSign sign) {
    requirePair(a, b);
    const auto phase = gaugePhase(a.adjoint() * b - ComplexMatrix::identity(a.dim()),
                                  overlap_threshold, sign);
    return phase ? b * std::polar(1.0, *phase) : b;
}

double opDiffDiamond(const ComplexMatrix &u, const ComplexMatrix &v,
                     bool gauged) {
    requirePair(u, v);
    const ComplexMatrix rhs = gauged ? gaugeFix(u, v) : v;
    const double s = linalg::spectralNorm(u - rhs);
    return s * s;
}

double sensitivityBound(const circuit::ParamVector &delta) {
    double acc = 0.0;
    for (const double d : delta) {
        acc += std::abs(d);
    }
    return acc / 2.0;
}

double bruteForceDistinguishability(const ComplexMatrix &u,
                                    const ComplexMatrix &v, int restarts,
                                    std::uint64_t seed) {
    if (u.dim() > kBruteForceMaxDim) {
        throw DimensionTooLarge("brute force limited to d <= " +
                                std::to_string(kBruteForceMaxDim));
    }
    requirePair(u, v);
    const ComplexMatrix w = u.adjoint() * v;
    const ComplexMatrix wd = w.adjoint();
    Rng rng(seed);
    double best_f = 1.0;
    for (int r = 0; r < std::max(restarts, 1); ++r) {
        ComplexMatrix psi(w.dim());
        for (auto &z : psi.data()) {
            z = Complex{rng.normal(), rng.normal()};
        }
        best_f = std::min(best_f, localSearch(w, wd, std::move(psi)));
    }
    return 2.0 * std::sqrt(std::max(0.0, 1.0 - best_f));
}

SensitivityRecord sensitivityFromUnitaries(const ComplexMatrix &u,
                                           const ComplexMatrix &v,
                                           const circuit::ParamVector &delta) {
    requirePair(u, v);
    return fromDifference(u, v, v - u, delta);
}

SensitivityRecord channelSensitivity(const circuit::AnsatzConfig &config,
                                     const circuit::ParamVector &theta,
                                     const circuit::ParamVector &delta) {
    if (delta.size() != theta.size()) {
        throw ParamLengthMismatch("delta has " + std::to_string(delta.size()) +
                                  " entries, theta " +
                                  std::to_string(theta.size()));
    }
    circuit::ParamVector shifted = theta;
    for (std::size_t j = 0; j < shifted.size(); ++j) {
        shifted[j] += delta[j];
    }
    return fromDifference(circuit::buildUnitary(config, theta),
                          circuit::buildUnitary(config, shifted),
                          circuit::unitaryDifference(config, theta, delta), delta);
}

} // namespace qsens::sensitivity
