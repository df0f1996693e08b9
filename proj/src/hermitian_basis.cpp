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

#include "segmap/hermitian_basis.hpp"

#include <cmath>

#include "segmap/errors.hpp"

namespace segmap {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Row-major rank of the pair (i, j), i < j.
int pair_index(int n, int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); }
}  // namespace

ComplexMatrix hermitian_basis_element(int n, int k) {
    const int pairs = n * (n - 1) / 2;
    ComplexMatrix b(n);
    if (k < 0 || k >= n * n) {
        throw ParameterOutOfRange("basis index out of range");
    }
    if (k < n) {
        b(k, k) = 1.0;
        return b;
    }
    int p = k - n;
    const bool antisymmetric = p >= pairs;
    if (antisymmetric) {
        p -= pairs;
    }
    int i = 0;
    while (pair_index(n, i, n - 1) < p) {
        ++i;
    }
    const int j = p - pair_index(n, i, i + 1) + i + 1;
    if (antisymmetric) {
        b(i, j) = cplx(0.0, kInvSqrt2);
        b(j, i) = cplx(0.0, -kInvSqrt2);
    } else {
        b(i, j) = kInvSqrt2;
        b(j, i) = kInvSqrt2;
    }
    return b;
}

std::vector<double> hermitian_to_coords(const ComplexMatrix &h) {
    const int n = h.dim();
    const int pairs = n * (n - 1) / 2;
    std::vector<double> c(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        c[k] = h(k, k).real();
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int p = pair_index(n, i, j);
            c[n + p] = std::sqrt(2.0) * h(i, j).real();
            c[n + pairs + p] = std::sqrt(2.0) * h(i, j).imag();
        }
    }
    return c;
}

ComplexMatrix coords_to_hermitian(int n, const std::vector<double> &coords) {
    if (static_cast<int>(coords.size()) != n * n) {
        throw DimensionMismatch("coordinate vector has wrong length");
    }
    const int pairs = n * (n - 1) / 2;
    ComplexMatrix h(n);
    for (int k = 0; k < n; ++k) {
        h(k, k) = coords[k];
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int p = pair_index(n, i, j);
            const cplx v = kInvSqrt2 * cplx(coords[n + p], coords[n + pairs + p]);
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

}  // namespace segmap
