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

#ifndef SEGMAP_ORACLES_HPP
#define SEGMAP_ORACLES_HPP

#include "segmap/maps.hpp"

namespace segmap {

// Named oracles. The broken ones exist on purpose: every certification check
// needs a control it rejects.

StateMapOracle oracle_identity(int n);

StateMapOracle oracle_from_map(const MeasurementMap &map);

/// rho -> (1 - weight) rho + weight I/n. Destroys purity.
StateMapOracle oracle_mixer(int n, double weight = 0.5);

/// rho -> rho^2 / tr(rho^2). Nonlinear; violates segment containment.
StateMapOracle oracle_square_normalize(int n);

/// rho -> (rho + rho^T) / 2. Not injective; defeats the branch decision.
StateMapOracle oracle_symmetrize(int n);

/// Constant map onto a fixed rank-1 state; its image of I/n is singular.
StateMapOracle oracle_singular_image(int n);

/// Applies `low` to states of rank <= threshold and `high` otherwise
/// (rank counted as eigenvalues > 1e-9). A piecewise bijection whose
/// subspace restrictions do not glue to one global measurement map.
StateMapOracle oracle_rank_split(const MeasurementMap &low, const MeasurementMap &high,
                                 int rank_threshold);

}  // namespace segmap

#endif
