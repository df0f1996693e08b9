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

#include "segmap/states.hpp"

#include <algorithm>
#include <cmath>

#include "segmap/eigen_jacobi.hpp"
#include "segmap/errors.hpp"

namespace segmap {

HermitianMatrix::HermitianMatrix(const ComplexMatrix &m, double tol) {
    if (!m.is_hermitian(tol)) {
        throw NotHermitian("matrix deviates from its conjugate transpose beyond tolerance");
    }
    m_ = m.hermitian_part();
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix &m) {
    return HermitianMatrix(Trusted{}, m.hermitian_part());
}

DensityOperator DensityOperator::validated(const HermitianMatrix &h) {
    const cplx tr = h.matrix().trace();
    if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol) {
        throw TraceNotOne("trace is not 1 within tolerance");
    }
    EigenDecomposition eig = spectral_decompose(h.matrix());
    if (eig.values.back() < -kPsdTol) {
        throw NotPositive("smallest eigenvalue " + std::to_string(eig.values.back()) +
                          " below -1e-10");
    }
    return DensityOperator(h);
}

DensityOperator DensityOperator::clipped(const ComplexMatrix &nearly) {
    EigenDecomposition eig = spectral_decompose(nearly.hermitian_part());
    const int n = nearly.dim();
    double total = 0.0;
    for (double &v : eig.values) {
        v = std::max(v, 0.0);
        total += v;
    }
    if (total <= 1e-14) {
        throw NumericallySingular("no positive spectral mass to normalize");
    }
    ComplexMatrix out(n);
    for (int k = 0; k < n; ++k) {
        const double w = eig.values[k] / total;
        if (w == 0.0) {
            continue;
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                out(i, j) += w * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
            }
        }
    }
    return DensityOperator(HermitianMatrix::symmetrized(out));
}

DensityOperator DensityOperator::from_product(const ComplexMatrix &product) {
    ComplexMatrix h = product.hermitian_part();
    const double tr = h.trace().real();
    if (tr <= 1e-14) {
        throw NumericallySingular("product has numerically vanishing trace");
    }
    h *= cplx(1.0 / tr);
    return DensityOperator(HermitianMatrix::symmetrized(h));
}

DensityOperator DensityOperator::maximally_mixed(int n) {
    ComplexMatrix m = ComplexMatrix::identity(n);
    m *= cplx(1.0 / n);
    return DensityOperator(HermitianMatrix::symmetrized(m));
}

double DensityOperator::purity() const {
    const double f = matrix().frobenius_norm();
    return f * f;
}

PureState::PureState(CVector amplitudes) : v_(std::move(amplitudes)) {
    if (v_.empty()) {
        throw ParameterOutOfRange("pure state needs at least one amplitude");
    }
    if (std::abs(vec_norm(v_) - 1.0) > 1e-12) {
        throw ParameterOutOfRange("pure state vector is not normalized");
    }
}

PureState PureState::normalized(CVector v) {
    const double nrm = vec_norm(v);
    if (nrm <= 1e-300) {
        throw ParameterOutOfRange("cannot normalize the zero vector");
    }
    for (cplx &z : v) {
        z /= nrm;
    }
    return PureState(Trusted{}, std::move(v));
}

DensityOperator PureState::projector() const {
    return DensityOperator::from_product(outer(v_));
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

DensityOperator validate_density(const HermitianMatrix &candidate) {
    return DensityOperator::validated(candidate);
}

DensityOperator segment_point(const DensityOperator &rho1, const DensityOperator &rho2, double t) {
    if (rho1.dim() != rho2.dim()) {
        throw DimensionMismatch("segment endpoints have different dimensions");
    }
    if (t < 0.0 || t > 1.0) {
        throw ParameterOutOfRange("segment parameter outside [0, 1]");
    }
    ComplexMatrix m = cplx(t) * rho1.matrix() + cplx(1.0 - t) * rho2.matrix();
    return DensityOperator::from_product(m);
}

double trace_distance(const HermitianMatrix &a, const HermitianMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("trace distance of mismatched dimensions");
    }
    EigenDecomposition eig = spectral_decompose(a.matrix() - b.matrix());
    double s = 0.0;
    for (double v : eig.values) {
        s += std::abs(v);
    }
    return 0.5 * s;
}

double trace_distance(const DensityOperator &rho1, const DensityOperator &rho2) {
    return trace_distance(rho1.hermitian(), rho2.hermitian());
}

DensityOperator transpose_in_standard_basis(const DensityOperator &rho) {
    return DensityOperator::from_product(rho.matrix().transpose());
}

DensityOperator bloch_to_state(const BlochVector &v) {
    if (v.norm() > 1.0 + 1e-12) {
        throw OutsideBall("bloch vector has norm > 1");
    }
    ComplexMatrix m(2);
    m(0, 0) = 0.5 * (1.0 + v.z);
    m(1, 1) = 0.5 * (1.0 - v.z);
    m(0, 1) = 0.5 * cplx(v.x, -v.y);
    m(1, 0) = 0.5 * cplx(v.x, v.y);
    return DensityOperator::from_product(m);
}

BlochVector state_to_bloch(const DensityOperator &rho) {
    if (rho.dim() != 2) {
        throw DimensionMismatch("bloch coordinates are defined for qubit states only");
    }
    const ComplexMatrix &m = rho.matrix();
    BlochVector v;
    v.x = 2.0 * m(1, 0).real();
    v.y = 2.0 * m(1, 0).imag();
    v.z = m(0, 0).real() - m(1, 1).real();
    return v;
}

bool validate_frame(const ProjectionFrame &frame, double tol) {
    const int n = frame.dim();
    if (n == 0 || static_cast<int>(frame.projections.size()) != n) {
        return false;
    }
    for (const DensityOperator &p : frame.projections) {
        if (p.dim() != n) {
            return false;
        }
    }
    ComplexMatrix sum(n);
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix &pi = frame.projections[i].matrix();
        sum += pi;
        for (int j = 0; j < n; ++j) {
            ComplexMatrix prod = pi * frame.projections[j].matrix();
            if (i == j) {
                prod -= pi;
            }
            if (prod.max_abs() > tol) {
                return false;
            }
        }
    }
    return max_abs_diff(sum, ComplexMatrix::identity(n)) <= tol;
}

ComplexMatrix random_ginibre(int n, Rng &rng) {
    ComplexMatrix g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g(i, j) = rng.complex_gaussian();
        }
    }
    return g;
}

DensityOperator random_density(int n, Rng &rng) {
    ComplexMatrix g = random_ginibre(n, rng);
    return DensityOperator::from_product(g * g.adjoint());
}

DensityOperator random_density(int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(n, rng);
}

PureState random_pure(int n, Rng &rng) {
    CVector v(n);
    for (cplx &z : v) {
        z = rng.complex_gaussian();
    }
    return PureState::normalized(std::move(v));
}

PureState random_pure(int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_pure(n, rng);
}

ComplexMatrix random_invertible(int n, Rng &rng, double max_condition) {
    if (max_condition <= 1.0) {
        throw ParameterOutOfRange("max_condition must exceed 1");
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        ComplexMatrix g = random_ginibre(n, rng);
        if (condition_number(g) <= max_condition) {
            return g;
        }
    }
    throw ResampleBudgetExceeded("no matrix within the condition bound after 64 draws");
}

ComplexMatrix random_invertible(int n, std::uint64_t seed, double max_condition) {
    Rng rng(seed);
    return random_invertible(n, rng, max_condition);
}

ComplexMatrix random_unitary(int n, Rng &rng) {
    ComplexMatrix g = random_ginibre(n, rng);
    // Modified Gram-Schmidt on columns.
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            cplx proj = 0.0;
            for (int i = 0; i < n; ++i) {
                proj += std::conj(g(i, k)) * g(i, j);
            }
            for (int i = 0; i < n; ++i) {
                g(i, j) -= proj * g(i, k);
            }
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) {
            nrm += std::norm(g(i, j));
        }
        nrm = std::sqrt(nrm);
        if (nrm <= 1e-12) {
            // Ginibre columns are independent almost surely; start over.
            return random_unitary(n, rng);
        }
        for (int i = 0; i < n; ++i) {
            g(i, j) /= nrm;
        }
    }
    return g;
}

ProjectionFrame random_frame(int n, Rng &rng) {
    ComplexMatrix u = random_unitary(n, rng);
    ProjectionFrame frame;
    frame.projections.reserve(n);
    for (int j = 0; j < n; ++j) {
        CVector col(n);
        for (int i = 0; i < n; ++i) {
            col[i] = u(i, j);
        }
        frame.projections.push_back(DensityOperator::from_product(outer(col)));
    }
    return frame;
}

BlochVector random_unit_bloch(Rng &rng) {
    while (true) {
        BlochVector v{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double nrm = v.norm();
        if (nrm > 1e-6) {
            v.x /= nrm;
            v.y /= nrm;
            v.z /= nrm;
            return v;
        }
    }
}

BlochVector random_ball_bloch(Rng &rng) {
    BlochVector v = random_unit_bloch(rng);
    const double r = std::cbrt(rng.uniform());
    v.x *= r;
    v.y *= r;
    v.z *= r;
    return v;
}

}  // namespace segmap
