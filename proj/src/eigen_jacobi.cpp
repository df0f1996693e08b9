// Copyright 2026 The segmap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "segmap/eigen_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "segmap/errors.hpp"

namespace segmap {

namespace {

double offdiag_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = i + 1; j < a.dim(); ++j) {
            s += 2.0 * std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition spectral_decompose(const ComplexMatrix &input, int max_sweeps) {
    const int n = input.dim();
    ComplexMatrix a = input.hermitian_part();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    const double stop = 1e-15 * scale * n;

    bool converged = offdiag_norm(a) <= stop;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cplx u = apq / mag;

                // Rotation angle zeroing a(p,q): t solves t^2 + 2*theta*t - 1 = 0.
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // A <- R* A R with R = I except R(p,p)=c, R(p,q)=s*u,
                // R(q,p)=-s*conj(u), R(q,q)=c. Hermitian structure kept explicitly.
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) {
                        continue;
                    }
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(u) * akq;
                    a(k, q) = s * u * akp + c * akq;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                a(p, p) = c * c * app + s * s * aqq - 2.0 * c * s * mag;
                a(q, q) = s * s * app + c * c * aqq + 2.0 * c * s * mag;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - s * std::conj(u) * vkq;
                    v(k, q) = s * u * vkp + c * vkq;
                }
            }
        }
        converged = offdiag_norm(a) <= stop;
    }
    if (!converged) {
        throw ConvergenceFailure("jacobi sweep budget exhausted");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int lhs, int rhs) { return a(lhs, lhs).real() > a(rhs, rhs).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) {
            out.vectors(i, j) = v(i, order[j]);
        }
    }
    return out;
}

std::vector<double> singular_values(const ComplexMatrix &m) {
    EigenDecomposition gram = spectral_decompose(m.adjoint() * m);
    std::vector<double> out(gram.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::sqrt(std::max(gram.values[i], 0.0));
    }
    return out;
}

double spectral_norm(const ComplexMatrix &m) { return singular_values(m).front(); }

double condition_number(const ComplexMatrix &m) {
    std::vector<double> s = singular_values(m);
    if (s.back() <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return s.front() / s.back();
}

ComplexMatrix hermitian_function(const ComplexMatrix &h, const std::function<double(double)> &f) {
    EigenDecomposition eig = spectral_decompose(h);
    const int n = h.dim();
    ComplexMatrix out(n);
    for (int k = 0; k < n; ++k) {
        const double fv = f(eig.values[k]);
        if (fv == 0.0) {
            continue;
        }
        for (int i = 0; i < n; ++i) {
            const cplx vik = eig.vectors(i, k);
            if (vik == cplx(0.0)) {
                continue;
            }
            for (int j = 0; j < n; ++j) {
                out(i, j) += fv * vik * std::conj(eig.vectors(j, k));
            }
        }
    }
    return out;
}

}  // namespace segmap
