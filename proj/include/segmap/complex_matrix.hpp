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

#ifndef SEGMAP_COMPLEX_MATRIX_HPP
#define SEGMAP_COMPLEX_MATRIX_HPP

#include <complex>
#include <vector>

namespace segmap {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense square complex matrix, row-major. The supported regime is small
/// dimensions (tests go up to 64), so everything is plain O(n^3) code with
/// value semantics.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int n);

    static ComplexMatrix identity(int n);
    static ComplexMatrix matrix_unit(int n, int i, int j);

    int dim() const { return n_; }

    cplx &operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const cplx &operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool is_hermitian(double tol) const;

    /// (A + A*) / 2.
    ComplexMatrix hermitian_part() const;

    /// Gauss-Jordan with partial pivoting. Throws NumericallySingular.
    ComplexMatrix inverse() const;

    ComplexMatrix &operator+=(const ComplexMatrix &rhs);
    ComplexMatrix &operator-=(const ComplexMatrix &rhs);
    ComplexMatrix &operator*=(cplx s);

  private:
    int n_ = 0;
    CVector a_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs);
ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cplx s);

/// Max entrywise |lhs - rhs|.
double max_abs_diff(const ComplexMatrix &lhs, const ComplexMatrix &rhs);

/// Frobenius inner product tr(lhs* rhs).
cplx frobenius_inner(const ComplexMatrix &lhs, const ComplexMatrix &rhs);

CVector matvec(const ComplexMatrix &m, const CVector &v);
ComplexMatrix outer(const CVector &u);                    // u u*
ComplexMatrix outer(const CVector &u, const CVector &v);  // u v*
cplx vec_dot(const CVector &a, const CVector &b);         // sum conj(a_i) b_i
double vec_norm(const CVector &v);

}  // namespace segmap

#endif
