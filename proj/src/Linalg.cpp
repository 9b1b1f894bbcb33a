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
#include "qsens/Linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qsens/Error.hpp"

namespace qsens::linalg {

namespace {

constexpr int kMaxSweeps = 100;
constexpr int kMaxPowerIterations = 10'000;
constexpr int kMaxSquarings = 64;

void requireSupportedDim(const ComplexMatrix &m) {
    if (m.dim() > kMaxDim) {
        throw DimensionTooLarge("dimension " + std::to_string(m.dim()) +
                                " exceeds " + std::to_string(kMaxDim));
    }
}

std::vector<Complex> column(const ComplexMatrix &m, std::size_t c) {
    std::vector<Complex> out(m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        out[r] = m(r, c);
    }
    return out;
}

double offDiagonalNorm(const ComplexMatrix &a) {
    double acc = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            if (r != c) {
                acc += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(acc);
}

// One complex Jacobi rotation zeroing a(p, q). G = D * R with
// D = diag(1, e^{-i phi}) making the pivot real, R the real Jacobi rotation.
void rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) {
        return;
    }
    const Complex phase_conj = std::conj(apq / mag);
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Complex gpp = c;
    const Complex gpq = s;
    const Complex gqp = -s * phase_conj;
    const Complex gqq = c * phase_conj;

    const std::size_t n = a.dim();
    for (std::size_t r = 0; r < n; ++r) {
        const Complex arp = a(r, p);
        const Complex arq = a(r, q);
        a(r, p) = arp * gpp + arq * gqp;
        a(r, q) = arp * gpq + arq * gqq;
        const Complex vrp = v(r, p);
        const Complex vrq = v(r, q);
        v(r, p) = vrp * gpp + vrq * gqp;
        v(r, q) = vrp * gpq + vrq * gqq;
    }
    for (std::size_t col = 0; col < n; ++col) {
        const Complex apc = a(p, col);
        const Complex aqc = a(q, col);
        a(p, col) = std::conj(gpp) * apc + std::conj(gqp) * aqc;
        a(q, col) = std::conj(gpq) * apc + std::conj(gqq) * aqc;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

// Rayleigh-Ritz on span{x, y}: returns the dominant Ritz vector of g.
std::vector<Complex> dominantRitzVector(const ComplexMatrix &g,
                                        std::span<const Complex> x,
                                        std::span<const Complex> y) {
    std::vector<Complex> u(x.begin(), x.end());
    std::vector<Complex> w(y.begin(), y.end());
    const Complex proj = inner(u, w);
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] -= proj * u[i];
    }
    const double wn = norm2(w);
    if (wn < 1e-300) {
        return u;
    }
    for (auto &z : w) {
        z /= wn;
    }
    const auto gu = matVec(g, u);
    const auto gw = matVec(g, w);
    ComplexMatrix small(2);
    small(0, 0) = inner(u, gu).real();
    small(0, 1) = inner(u, gw);
    small(1, 0) = std::conj(small(0, 1));
    small(1, 1) = inner(w, gw).real();
    const auto sp = hermEig(small);
    const auto &top = (*sp.eigenvectors)[0];
    std::vector<Complex> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] = top[0] * u[i] + top[1] * w[i];
    }
    const double on = norm2(out);
    for (auto &z : out) {
        z /= on;
    }
    return out;
}

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

double segmentDistanceToOrigin(Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) {
        return std::abs(a);
    }
    double t = -(a.real() * ab.real() + a.imag() * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(a + t * ab);
}

} // namespace

ComplexMatrix Spectrum::reconstruct() const {
    if (!eigenvectors || eigenvectors->size() != eigenvalues.size()) {
        throw InvalidArgument("spectrum has no eigenvectors");
    }
    const std::size_t n = eigenvalues.size();
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto &q = (*eigenvectors)[k];
        for (std::size_t r = 0; r < n; ++r) {
            const Complex left = eigenvalues[k] * q[r];
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += left * std::conj(q[c]);
            }
        }
    }
    return out;
}

double hermiticityError(const ComplexMatrix &h) {
    double worst = 0.0;
    for (std::size_t r = 0; r < h.dim(); ++r) {
        for (std::size_t c = r; c < h.dim(); ++c) {
            worst = std::max(worst, std::abs(h(r, c) - std::conj(h(c, r))));
        }
    }
    return worst;
}

double unitarityError(const ComplexMatrix &w) {
    const ComplexMatrix gram = w.adjoint() * w;
    return (gram - ComplexMatrix::identity(w.dim())).maxAbs();
}

void requireUnitary(const ComplexMatrix &w, double tol) {
    if (!w.isFinite()) {
        throw NotUnitary("matrix has non-finite entries");
    }
    const double err = unitarityError(w);
    if (err > tol) {
        throw NotUnitary("|W^dagger W - I|_max = " + std::to_string(err));
    }
}

Spectrum hermEig(const ComplexMatrix &h) {
    requireSupportedDim(h);
    if (!h.isFinite()) {
        throw NotHermitian("matrix has non-finite entries");
    }
    const double herm_err = hermiticityError(h);
    if (herm_err > 1e-10 * std::max(1.0, h.maxAbs())) {
        throw NotHermitian("|H - H^dagger|_max = " + std::to_string(herm_err));
    }

    const std::size_t n = h.dim();
    ComplexMatrix a = h;
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            a(j, i) = std::conj(a(i, j));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = a.frobeniusNorm();
    bool converged = scale == 0.0;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (offDiagonalNorm(a) <= 1e-15 * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                rotate(a, v, p, q);
            }
        }
    }
    if (!converged && offDiagonalNorm(a) > 1e-10 * scale) {
        throw ConvergenceFailure("Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
        return a(i, i).real() > a(j, j).real();
    });

    Spectrum out;
    out.eigenvalues.reserve(n);
    std::vector<StateVector> vectors;
    vectors.reserve(n);
    for (auto k : order) {
        out.eigenvalues.emplace_back(a(k, k).real(), 0.0);
        vectors.push_back(StateVector::normalized(column(v, k)));
    }
    out.eigenvectors = std::move(vectors);
    return out;
}

Spectrum unitarySpectrum(const ComplexMatrix &w) {
    requireSupportedDim(w);
    requireUnitary(w);
    const std::size_t n = w.dim();
    const ComplexMatrix wd = w.adjoint();
    const ComplexMatrix herm_part = (w + wd) * Complex{0.5, 0.0};
    const ComplexMatrix anti_part = (w - wd) * Complex{0.0, -0.5};

    const Spectrum real_spec = hermEig(herm_part);
    const auto &basis = *real_spec.eigenvectors;

    std::vector<std::vector<Complex>> vectors;
    vectors.reserve(n);
    std::size_t start = 0;
    while (start < n) {
        std::size_t stop = start + 1;
        while (stop < n && real_spec.eigenvalues[stop - 1].real() -
                                   real_spec.eigenvalues[stop].real() <=
                               kEigenspaceTol) {
            ++stop;
        }
        const std::size_t k = stop - start;
        if (k == 1) {
            const auto amps = basis[start].amplitudes();
            vectors.emplace_back(amps.begin(), amps.end());
        } else {
            std::vector<std::vector<Complex>> images;
            images.reserve(k);
            for (std::size_t j = 0; j < k; ++j) {
                images.push_back(matVec(anti_part, basis[start + j].amplitudes()));
            }
            ComplexMatrix block(k);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) {
                    block(i, j) = inner(basis[start + i].amplitudes(), images[j]);
                }
            }
            for (std::size_t i = 0; i < k; ++i) {
                block(i, i) = block(i, i).real();
                for (std::size_t j = i + 1; j < k; ++j) {
                    const Complex avg =
                        0.5 * (block(i, j) + std::conj(block(j, i)));
                    block(i, j) = avg;
                    block(j, i) = std::conj(avg);
                }
            }
            const Spectrum inner_spec = hermEig(block);
            for (const auto &y : *inner_spec.eigenvectors) {
                std::vector<Complex> u(n);
                for (std::size_t j = 0; j < k; ++j) {
                    const auto q = basis[start + j].amplitudes();
                    for (std::size_t r = 0; r < n; ++r) {
                        u[r] += y[j] * q[r];
                    }
                }
                vectors.push_back(std::move(u));
            }
        }
        start = stop;
    }

    std::vector<Complex> values;
    values.reserve(n);
    for (const auto &u : vectors) {
        values.push_back(inner(u, matVec(w, u)) / std::norm(norm2(u)));
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
        if (values[i].real() != values[j].real()) {
            return values[i].real() > values[j].real();
        }
        return values[i].imag() > values[j].imag();
    });

    Spectrum out;
    std::vector<StateVector> sorted_vectors;
    sorted_vectors.reserve(n);
    for (auto i : order) {
        out.eigenvalues.push_back(values[i]);
        sorted_vectors.push_back(StateVector::normalized(vectors[i]));
    }
    out.eigenvectors = std::move(sorted_vectors);
    return out;
}

double spectralNorm(const ComplexMatrix &m) {
    if (!m.isFinite()) {
        throw InvalidArgument("matrix has non-finite entries");
    }
    const ComplexMatrix gram = m.adjoint() * m;
    const double gram_norm = gram.frobeniusNorm();
    if (gram_norm == 0.0) {
        return 0.0;
    }

    // Repeated squaring: S_k ~ G^(2^k), normalized. Converges to a multiple
    // of the projector on the dominant eigenspace.
    ComplexMatrix s = gram * Complex{1.0 / gram_norm, 0.0};
    for (int k = 0; k < kMaxSquarings; ++k) {
        ComplexMatrix next = s * s;
        const double nn = next.frobeniusNorm();
        if (!(nn > 0.0)) {
            break;
        }
        next *= Complex{1.0 / nn, 0.0};
        const double change = (next - s).frobeniusNorm();
        s = std::move(next);
        if (change < 1e-13) {
            break;
        }
    }

    std::size_t best_col = 0;
    double best_norm = -1.0;
    for (std::size_t c = 0; c < s.dim(); ++c) {
        const double cn = norm2(column(s, c));
        if (cn > best_norm) {
            best_norm = cn;
            best_col = c;
        }
    }
    std::vector<Complex> x = column(s, best_col);
    if (!(best_norm > 0.0)) {
        x.assign(s.dim(), Complex{1.0 / std::sqrt(double(s.dim())), 0.0});
    } else {
        for (auto &z : x) {
            z /= best_norm;
        }
    }

    double rho = 0.0;
    double residual = 0.0;
    double prev_rho = -1.0;
    int stalled = 0;
    for (int it = 0; it < kMaxPowerIterations; ++it) {
        auto y = matVec(gram, x);
        rho = inner(x, y).real();
        std::vector<Complex> r(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            r[i] = y[i] - rho * x[i];
        }
        residual = norm2(r);
        if (rho <= 0.0 || residual <= 1e-13 * rho) {
            break;
        }
        if (std::abs(rho - prev_rho) <= 1e-16 * rho) {
            if (++stalled >= 3) {
                x = dominantRitzVector(gram, x, y);
                stalled = 0;
                prev_rho = rho;
                continue;
            }
        } else {
            stalled = 0;
        }
        prev_rho = rho;
        const double yn = norm2(y);
        for (std::size_t i = 0; i < y.size(); ++i) {
            x[i] = y[i] / yn;
        }
    }
    if (rho > 0.0 && residual > 1e-8 * rho) {
        throw ConvergenceFailure("power iteration residual " +
                                 std::to_string(residual / rho));
    }
    return std::sqrt(std::max(rho, 0.0));
}

double hullDistanceToOrigin(std::span<const Complex> points) {
    if (points.empty()) {
        throw InvalidArgument("hull of an empty point set");
    }
    std::vector<Complex> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() < b.real() ||
               (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() == 1) {
        return std::abs(pts.front());
    }

    // Andrew's monotone chain, counter-clockwise, collinear points dropped.
    std::vector<Complex> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto &p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) {
            --k;
        }
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) {
            --k;
        }
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);

    if (hull.size() <= 2) {
        return segmentDistanceToOrigin(hull.front(), hull.back());
    }
    bool inside = true;
    double best = std::abs(hull.front());
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Complex a = hull[i];
        const Complex b = hull[(i + 1) % hull.size()];
        if (cross(a, b, Complex{}) < 0.0) {
            inside = false;
        }
        best = std::min(best, segmentDistanceToOrigin(a, b));
    }
    return inside ? 0.0 : best;
}

} // namespace qsens::linalg
