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

#include "segmap/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "segmap/errors.hpp"

namespace segmap {

namespace {
void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("matrix dimensions differ: " + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()));
    }
}
}  // namespace

ComplexMatrix::ComplexMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {
    if (n < 1) {
        throw ParameterOutOfRange("matrix dimension must be >= 1");
    }
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::matrix_unit(int n, int i, int j) {
    ComplexMatrix m(n);
    m(i, j) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            m(j, i) = std::conj((*this)(i, j));
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            m(j, i) = (*this)(i, j);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            m(i, j) = std::conj((*this)(i, j));
        }
    }
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < n_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx &z : a_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0.0;
    for (const cplx &z : a_) {
        s = std::max(s, std::abs(z));
    }
    return s;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (int i = 0; i < n_; ++i) {
        for (int j = i; j < n_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
    ComplexMatrix m(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::inverse() const {
    const int n = n_;
    ComplexMatrix work = *this;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    const double scale = std::max(max_abs(), 1e-300);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(work(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(work(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best <= 1e-14 * scale) {
            throw NumericallySingular("matrix is numerically singular");
        }
        if (pivot != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(work(pivot, c), work(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        const cplx d = work(col, col);
        for (int c = 0; c < n; ++c) {
            work(col, c) /= d;
            inv(col, c) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const cplx f = work(r, col);
            if (f == cplx(0.0)) {
                continue;
            }
            for (int c = 0; c < n; ++c) {
                work(r, c) -= f * work(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &rhs) {
    require_same_dim(*this, rhs);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            (*this)(i, j) += rhs(i, j);
        }
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &rhs) {
    require_same_dim(*this, rhs);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            (*this)(i, j) -= rhs(i, j);
        }
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) {
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            (*this)(i, j) *= s;
        }
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs) {
    lhs += rhs;
    return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs) {
    lhs -= rhs;
    return lhs;
}

ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
    require_same_dim(lhs, rhs);
    const int n = lhs.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cplx f = lhs(i, k);
            if (f == cplx(0.0)) {
                continue;
            }
            for (int j = 0; j < n; ++j) {
                out(i, j) += f * rhs(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix operator*(cplx s, ComplexMatrix m) {
    m *= s;
    return m;
}

ComplexMatrix operator*(ComplexMatrix m, cplx s) {
    m *= s;
    return m;
}

double max_abs_diff(const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
    require_same_dim(lhs, rhs);
    double s = 0.0;
    for (int i = 0; i < lhs.dim(); ++i) {
        for (int j = 0; j < lhs.dim(); ++j) {
            s = std::max(s, std::abs(lhs(i, j) - rhs(i, j)));
        }
    }
    return s;
}

cplx frobenius_inner(const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
    require_same_dim(lhs, rhs);
    cplx s = 0.0;
    for (int i = 0; i < lhs.dim(); ++i) {
        for (int j = 0; j < lhs.dim(); ++j) {
            s += std::conj(lhs(i, j)) * rhs(i, j);
        }
    }
    return s;
}

CVector matvec(const ComplexMatrix &m, const CVector &v) {
    if (static_cast<int>(v.size()) != m.dim()) {
        throw DimensionMismatch("matvec: vector length does not match matrix dimension");
    }
    CVector out(v.size(), cplx(0.0));
    for (int i = 0; i < m.dim(); ++i) {
        cplx s = 0.0;
        for (int j = 0; j < m.dim(); ++j) {
            s += m(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

ComplexMatrix outer(const CVector &u) { return outer(u, u); }

ComplexMatrix outer(const CVector &u, const CVector &v) {
    if (u.size() != v.size()) {
        throw DimensionMismatch("outer: vector lengths differ");
    }
    ComplexMatrix m(static_cast<int>(u.size()));
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            m(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return m;
}

cplx vec_dot(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("vec_dot: vector lengths differ");
    }
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

double vec_norm(const CVector &v) {
    double s = 0.0;
    for (const cplx &z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

}  // namespace segmap
