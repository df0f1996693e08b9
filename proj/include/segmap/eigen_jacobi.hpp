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

#ifndef SEGMAP_EIGEN_JACOBI_HPP
#define SEGMAP_EIGEN_JACOBI_HPP

#include <functional>
#include <vector>

#include "segmap/complex_matrix.hpp"

namespace segmap {

struct EigenDecomposition {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // orthonormal columns, paired with values
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. The input is
/// symmetrized first so that roundoff-level asymmetry is harmless.
/// Throws ConvergenceFailure if the off-diagonal mass has not collapsed
/// after `max_sweeps` full sweeps (does not happen for sane inputs; the
/// method converges unconditionally).
EigenDecomposition spectral_decompose(const ComplexMatrix &a, int max_sweeps = 100);

/// Singular values of a general square matrix, descending
/// (square roots of the eigenvalues of m* m).
std::vector<double> singular_values(const ComplexMatrix &m);

double spectral_norm(const ComplexMatrix &m);

/// sigma_max / sigma_min; infinity when numerically singular.
double condition_number(const ComplexMatrix &m);

/// Applies f to the spectrum of a Hermitian matrix: V diag(f(lambda)) V*.
ComplexMatrix hermitian_function(const ComplexMatrix &h, const std::function<double(double)> &f);

}  // namespace segmap

#endif
