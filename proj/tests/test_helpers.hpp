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

#ifndef SEGMAP_TEST_HELPERS_HPP
#define SEGMAP_TEST_HELPERS_HPP

#include <complex>
#include <vector>

#include "segmap/maps.hpp"
#include "segmap/states.hpp"

namespace segmap::test {

inline ComplexMatrix diag2(double a, double b) {
    ComplexMatrix m(2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

inline DensityOperator diag_state(std::vector<double> entries) {
    ComplexMatrix m(static_cast<int>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(static_cast<int>(i), static_cast<int>(i)) = entries[i];
    }
    return DensityOperator::validated(HermitianMatrix::symmetrized(m));
}

inline ComplexMatrix random_hermitian(int n, Rng &rng) {
    return random_ginibre(n, rng).hermitian_part();
}

inline MeasurementMap random_map(int n, std::uint64_t seed, bool transposed,
                                 double max_condition = 100.0) {
    Rng rng(seed);
    return MeasurementMap(random_invertible(n, rng, max_condition), transposed);
}

/// Half the sum of |eigenvalues| of a 2x2 Hermitian difference, straight from
/// the quadratic formula. Independent of the Jacobi solver.
inline double qubit_trace_distance_oracle(const ComplexMatrix &a, const ComplexMatrix &b) {
    const ComplexMatrix d = a - b;
    const double tr = d.trace().real();
    const double det = (d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0)).real();
    const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
    return 0.5 * (std::abs(0.5 * (tr + disc)) + std::abs(0.5 * (tr - disc)));
}

}  // namespace segmap::test

#endif
