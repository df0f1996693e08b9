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

#ifndef SEGMAP_HERMITIAN_BASIS_HPP
#define SEGMAP_HERMITIAN_BASIS_HPP

#include <vector>

#include "segmap/complex_matrix.hpp"

namespace segmap {

// Real coordinates on the n^2-dimensional space of Hermitian matrices, using
// the basis orthonormal under tr(A B):
//   k in [0, n):          E_kk
//   then pairs i < j:     (E_ij + E_ji) / sqrt(2)        (row-major order)
//   then pairs i < j:     i (E_ij - E_ji) / sqrt(2)
// Linear maps and functionals on Hermitian matrices become plain real
// matrices and vectors in these coordinates.

inline int hermitian_basis_size(int n) { return n * n; }

ComplexMatrix hermitian_basis_element(int n, int k);

std::vector<double> hermitian_to_coords(const ComplexMatrix &h);

ComplexMatrix coords_to_hermitian(int n, const std::vector<double> &coords);

}  // namespace segmap

#endif
