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

#include "segmap/oracles.hpp"

#include "segmap/eigen_jacobi.hpp"
#include "segmap/errors.hpp"

namespace segmap {

StateMapOracle oracle_identity(int n) { return StateMapOracle::identity(n); }

StateMapOracle oracle_from_map(const MeasurementMap &map) { return StateMapOracle::from_map(map); }

StateMapOracle oracle_mixer(int n, double weight) {
    if (weight < 0.0 || weight > 1.0) {
        throw ParameterOutOfRange("mixing weight outside [0, 1]");
    }
    return StateMapOracle(n, [n, weight](const DensityOperator &rho) {
        ComplexMatrix m = cplx(1.0 - weight) * rho.matrix() +
                          cplx(weight / n) * ComplexMatrix::identity(n);
        return DensityOperator::from_product(m);
    });
}

StateMapOracle oracle_square_normalize(int n) {
    return StateMapOracle(n, [](const DensityOperator &rho) {
        return DensityOperator::from_product(rho.matrix() * rho.matrix());
    });
}

StateMapOracle oracle_symmetrize(int n) {
    return StateMapOracle(n, [](const DensityOperator &rho) {
        return DensityOperator::from_product(rho.matrix() + rho.matrix().transpose());
    });
}

StateMapOracle oracle_singular_image(int n) {
    return StateMapOracle(n, [n](const DensityOperator &) {
        return DensityOperator::from_product(ComplexMatrix::matrix_unit(n, 0, 0));
    });
}

StateMapOracle oracle_rank_split(const MeasurementMap &low, const MeasurementMap &high,
                                 int rank_threshold) {
    if (low.dim() != high.dim()) {
        throw DimensionMismatch("rank-split branches have different dimensions");
    }
    return StateMapOracle(low.dim(), [low, high, rank_threshold](const DensityOperator &rho) {
        EigenDecomposition eig = spectral_decompose(rho.matrix());
        int rank = 0;
        for (double v : eig.values) {
            if (v > 1e-9) {
                ++rank;
            }
        }
        return apply_measurement(rank <= rank_threshold ? low : high, rho);
    });
}

}  // namespace segmap
