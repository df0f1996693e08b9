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

#include "segmap/maps.hpp"

#include <cmath>

#include "segmap/eigen_jacobi.hpp"
#include "segmap/errors.hpp"
#include "segmap/hermitian_basis.hpp"

namespace segmap {

MeasurementMap::MeasurementMap(const ComplexMatrix &m, bool transposed)
    : m_(m), transposed_(transposed) {
    std::vector<double> sv = singular_values(m_);
    if (sv.back() <= 1e-12 * sv.front()) {
        throw NumericallySingular("measurement operator is numerically singular");
    }
    m_ *= cplx(1.0 / m_.frobenius_norm());
    for (int i = 0; i < m_.dim(); ++i) {
        bool done = false;
        for (int j = 0; j < m_.dim(); ++j) {
            const double mag = std::abs(m_(i, j));
            if (mag > 1e-10) {
                m_ *= std::conj(m_(i, j)) / mag;
                done = true;
                break;
            }
        }
        if (done) {
            break;
        }
    }
}

DensityOperator apply_measurement(const MeasurementMap &map, const DensityOperator &rho) {
    if (map.dim() != rho.dim()) {
        throw DimensionMismatch("map and state dimensions differ");
    }
    const ComplexMatrix &m = map.matrix();
    ComplexMatrix x = map.transposed() ? rho.matrix().transpose() : rho.matrix();
    return DensityOperator::from_product(m * x * m.adjoint());
}

MeasurementMap invert_map(const MeasurementMap &map) {
    if (!map.transposed()) {
        return MeasurementMap(map.matrix().inverse(), false);
    }
    return MeasurementMap(map.matrix().conjugate().inverse(), true);
}

MeasurementMap compose(const MeasurementMap &outer, const MeasurementMap &inner) {
    if (outer.dim() != inner.dim()) {
        throw DimensionMismatch("composed maps have different dimensions");
    }
    const bool flag = outer.transposed() != inner.transposed();
    if (outer.transposed()) {
        return MeasurementMap(outer.matrix() * inner.matrix().conjugate(), flag);
    }
    return MeasurementMap(outer.matrix() * inner.matrix(), flag);
}

bool maps_equal_up_to_scale(const MeasurementMap &a, const MeasurementMap &b, int samples,
                            double tol, std::uint64_t seed) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("maps have different dimensions");
    }
    if (a.transposed() != b.transposed()) {
        return false;
    }
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
        DensityOperator rho = random_density(a.dim(), rng);
        if (trace_distance(apply_measurement(a, rho), apply_measurement(b, rho)) > tol) {
            return false;
        }
    }
    return true;
}

CVector vec(const ComplexMatrix &x) {
    const int n = x.dim();
    CVector v(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            v[static_cast<std::size_t>(j) * n + i] = x(i, j);
        }
    }
    return v;
}

ComplexMatrix unvec(int n, const CVector &v) {
    if (static_cast<int>(v.size()) != n * n) {
        throw DimensionMismatch("vector length is not n^2");
    }
    ComplexMatrix x(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            x(i, j) = v[static_cast<std::size_t>(j) * n + i];
        }
    }
    return x;
}

Superoperator::Superoperator(int n, ComplexMatrix action) : n_(n), action_(std::move(action)) {
    if (action_.dim() != n * n) {
        throw DimensionMismatch("superoperator action must be n^2 x n^2");
    }
}

Superoperator Superoperator::from_action(
    int n, const std::function<ComplexMatrix(const ComplexMatrix &)> &f) {
    ComplexMatrix action(n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const CVector img = vec(f(ComplexMatrix::matrix_unit(n, i, j)));
            const int col = j * n + i;
            for (int r = 0; r < n * n; ++r) {
                action(r, col) = img[r];
            }
        }
    }
    return Superoperator(n, std::move(action));
}

ComplexMatrix Superoperator::apply(const ComplexMatrix &x) const {
    if (x.dim() != n_) {
        throw DimensionMismatch("superoperator applied to wrong dimension");
    }
    return unvec(n_, matvec(action_, vec(x)));
}

bool Superoperator::hermiticity_preserving(double tol) const {
    for (int k = 0; k < n_ * n_; ++k) {
        if (!apply(hermitian_basis_element(n_, k)).is_hermitian(tol)) {
            return false;
        }
    }
    return true;
}

Superoperator linearize(const MeasurementMap &map) {
    const ComplexMatrix &m = map.matrix();
    const ComplexMatrix ma = m.adjoint();
    if (map.transposed()) {
        return Superoperator::from_action(
            map.dim(), [&](const ComplexMatrix &x) { return m * x.transpose() * ma; });
    }
    return Superoperator::from_action(map.dim(),
                                      [&](const ComplexMatrix &x) { return m * x * ma; });
}

Superoperator identity_superoperator(int n) {
    return Superoperator(n, ComplexMatrix::identity(n * n));
}

Superoperator transpose_superoperator(int n) {
    return Superoperator::from_action(n, [](const ComplexMatrix &x) { return x.transpose(); });
}

ChoiMatrix::ChoiMatrix(const ComplexMatrix &base)
    : base_(base, 1e-10), system_dim_(0) {
    int n = 0;
    while (n * n < base.dim()) {
        ++n;
    }
    if (n * n != base.dim()) {
        throw DimensionMismatch("choi matrix dimension is not a perfect square");
    }
    system_dim_ = n;
}

ChoiMatrix choi_matrix(const Superoperator &s) {
    const int n = s.dim();
    ComplexMatrix c(n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const ComplexMatrix block = s.apply(ComplexMatrix::matrix_unit(n, i, j));
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) {
                    c(i * n + k, j * n + l) = block(k, l);
                }
            }
        }
    }
    return ChoiMatrix(c);
}

double choi_min_eigenvalue(const ChoiMatrix &c) {
    return spectral_decompose(c.base().matrix()).values.back();
}

bool is_completely_positive(const ChoiMatrix &c, double tol) {
    if (tol <= 0.0) {
        throw ParameterOutOfRange("tolerance must be positive");
    }
    return choi_min_eigenvalue(c) >= -tol;
}

FractionalLinearMap::FractionalLinearMap(int n, ComplexMatrix psi, HermitianMatrix offset,
                                         std::vector<double> f, double c)
    : n_(n), psi_(std::move(psi)), offset_(std::move(offset)), f_(std::move(f)), c_(c) {
    const int nn = hermitian_basis_size(n);
    if (psi_.dim() != nn || offset_.dim() != n || static_cast<int>(f_.size()) != nn) {
        throw DimensionMismatch("fractional linear map components have inconsistent dimensions");
    }
}

FractionalLinearMap FractionalLinearMap::identity(int n) {
    return FractionalLinearMap(n, ComplexMatrix::identity(n * n),
                               HermitianMatrix::symmetrized(ComplexMatrix(n)),
                               std::vector<double>(static_cast<std::size_t>(n) * n, 0.0), 1.0);
}

FractionalLinearMap FractionalLinearMap::from_measurement(const MeasurementMap &map) {
    const int n = map.dim();
    const int nn = hermitian_basis_size(n);
    const ComplexMatrix &m = map.matrix();
    const ComplexMatrix ma = m.adjoint();
    ComplexMatrix psi(nn);
    for (int k = 0; k < nn; ++k) {
        ComplexMatrix b = hermitian_basis_element(n, k);
        if (map.transposed()) {
            b = b.transpose();
        }
        const std::vector<double> img = hermitian_to_coords(m * b * ma);
        for (int r = 0; r < nn; ++r) {
            psi(r, k) = img[r];
        }
    }
    // tr(M rho' M*) = tr(F rho) with F = M*M, transposed to conj(M*M) when the
    // input is transposed first.
    ComplexMatrix f_mat = ma * m;
    if (map.transposed()) {
        f_mat = f_mat.transpose();
    }
    return FractionalLinearMap(n, std::move(psi),
                               HermitianMatrix::symmetrized(ComplexMatrix(n)),
                               hermitian_to_coords(f_mat), 0.0);
}

double FractionalLinearMap::denominator(const DensityOperator &rho) const {
    const std::vector<double> r = hermitian_to_coords(rho.matrix());
    double d = c_;
    for (std::size_t k = 0; k < f_.size(); ++k) {
        d += f_[k] * r[k];
    }
    return d;
}

double FractionalLinearMap::denominator_lower_bound() const {
    const ComplexMatrix f_mat = coords_to_hermitian(n_, f_);
    return spectral_decompose(f_mat).values.back() + c_;
}

HermitianMatrix apply_fractional_linear(const FractionalLinearMap &g, const DensityOperator &rho) {
    if (g.dim() != rho.dim()) {
        throw DimensionMismatch("map and state dimensions differ");
    }
    const double den = g.denominator(rho);
    if (den <= 1e-14) {
        throw DenominatorNonpositive("denominator " + std::to_string(den) + " is not positive");
    }
    const std::vector<double> r = hermitian_to_coords(rho.matrix());
    const int nn = static_cast<int>(r.size());
    std::vector<double> num(r.size(), 0.0);
    const ComplexMatrix &psi = g.psi();
    for (int i = 0; i < nn; ++i) {
        double s = 0.0;
        for (int k = 0; k < nn; ++k) {
            s += psi(i, k).real() * r[k];
        }
        num[i] = s;
    }
    ComplexMatrix out = coords_to_hermitian(g.dim(), num) + g.offset().matrix();
    out *= cplx(1.0 / den);
    return HermitianMatrix::symmetrized(out);
}

StateMapOracle::StateMapOracle(int n, Fn fn)
    : n_(n),
      fn_(std::move(fn)),
      counter_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
    if (n < 1) {
        throw ParameterOutOfRange("oracle dimension must be >= 1");
    }
}

DensityOperator StateMapOracle::evaluate(const DensityOperator &rho) const {
    if (rho.dim() != n_) {
        throw OracleDimensionMismatch("oracle expects dimension " + std::to_string(n_));
    }
    counter_->fetch_add(1);
    return fn_(rho);
}

StateMapOracle StateMapOracle::from_map(const MeasurementMap &map) {
    return StateMapOracle(map.dim(),
                          [map](const DensityOperator &rho) { return apply_measurement(map, rho); });
}

StateMapOracle StateMapOracle::identity(int n) {
    return StateMapOracle(n, [](const DensityOperator &rho) { return rho; });
}

}  // namespace segmap
