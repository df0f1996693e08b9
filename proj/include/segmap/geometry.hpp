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

#ifndef SEGMAP_GEOMETRY_HPP
#define SEGMAP_GEOMETRY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "segmap/maps.hpp"
#include "segmap/states.hpp"

namespace segmap {

struct StatePair {
    DensityOperator rho1;
    DensityOperator rho2;
};

/// Deterministic batch of random state pairs. Pair i is derived from
/// Rng::mix(seed, i), so callers (and tests) can regenerate the exact pairs a
/// certification run used, independent of evaluation order.
std::vector<StatePair> sample_state_pairs(int n, int count, std::uint64_t seed);

struct SegmentWitness {
    DensityOperator rho1;
    DensityOperator rho2;
    double t = 0.0;
};

/// Outcome of a sampled segment certification. `worst_deviation` is the
/// largest Frobenius distance from a tested image to the target segment;
/// the trace distance at the same witness is reported alongside.
struct SegmentCertificate {
    bool satisfied = false;
    double worst_deviation = 0.0;
    double worst_trace_distance = 0.0;
    std::optional<SegmentWitness> worst_pair;
    std::vector<double> s_values;  // recovered segment parameters, in test order
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    int pairs = 0;
    int grid = 0;
    int bisection_failures = 0;  // surjectivity targets that could not be hit
};

struct SegmentProjection {
    double s;         // argmin over [0,1] of ||sigma - (s rho1 + (1-s) rho2)||_F
    double distance;  // attained Frobenius distance
};

/// Closed-form least squares onto the chord, clamped to [0,1].
/// Throws DegenerateSegment when rho1 and rho2 coincide.
SegmentProjection project_to_segment(const DensityOperator &sigma, const DensityOperator &rho1,
                                     const DensityOperator &rho2);

/// Samples `pairs` random state pairs and `t_grid` equispaced interior
/// parameters, pushes each segment point through the oracle and projects the
/// image onto the image segment. Satisfied iff every distance is <= tol.
SegmentCertificate check_segment_containment(const StateMapOracle &oracle, int pairs, int t_grid,
                                             double tol, std::uint64_t seed);

/// Beyond containment: certifies surjectivity onto the image segment. For
/// each target parameter s on an equispaced interior grid, solves
/// s(t) = s_target by bracketed iteration on [0,1] (s(t) is continuous and
/// monotone for the maps in scope). Satisfied iff every target is hit within
/// tol; targets that are not are counted in bisection_failures rather than
/// silently passed.
SegmentCertificate check_segment_equality(const StateMapOracle &oracle, int pairs, int s_grid,
                                          double tol, std::uint64_t seed);

/// True iff images of `samples` random pure states have purity >= 1 - tol,
/// and likewise through `inverse` when one is supplied.
bool check_pure_preservation(const StateMapOracle &oracle,
                             const std::optional<StateMapOracle> &inverse, int samples, double tol,
                             std::uint64_t seed);

/// For `frames` random orthonormal projection frames, checks that the images
/// again form a frame (pairwise products and sum-to-identity within tol).
/// The oracle must fix I/n within tol already; throws NotNormalized if not.
bool check_frame_preservation(const StateMapOracle &oracle, double tol, std::uint64_t seed,
                              int frames = 20);

/// The ball map induced by a qubit oracle through the Bloch identification.
BlochVector induced_ball_map(const StateMapOracle &oracle, const BlochVector &v);

/// For a normalized qubit oracle: fixes the origin within tol, maps 200
/// random unit vectors to unit vectors within tol, and is midpoint-affine on
/// random ball pairs within tol. Throws DimensionMismatch / NotNormalized.
bool qubit_ball_check(const StateMapOracle &oracle, double tol, std::uint64_t seed);

struct BallMapFit {
    double m[3][3] = {};
    double residual = 0.0;  // max ||phi_hat(v) - L v|| over fresh unit vectors
};

/// Least-squares 3x3 matrix through `fit_samples` ball points, residual taken
/// over `check_samples` fresh unit vectors.
BallMapFit fit_qubit_ball_map(const StateMapOracle &oracle, int fit_samples, int check_samples,
                              std::uint64_t seed);

}  // namespace segmap

#endif
