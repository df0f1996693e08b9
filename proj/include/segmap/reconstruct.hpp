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

#ifndef SEGMAP_RECONSTRUCT_HPP
#define SEGMAP_RECONSTRUCT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "segmap/maps.hpp"
#include "segmap/states.hpp"

namespace segmap {

// Recovery of (M, transpose flag) from oracle access to a bijective
// segment-preserving map on states. The stages mirror the structure of the
// problem: whiten at the maximally mixed state, read off the image frame of
// the standard basis projections, recover the column phases and the branch
// from two families of superposition probes, then undo the whitening.

/// Oracle conjugated so that it fixes I/n: evaluates S phi(rho) S* followed
/// by trace renormalization, with S the inverse of the spectral square root
/// of phi(I/n).
class NormalizedOracle {
  public:
    NormalizedOracle(ComplexMatrix whitener, StateMapOracle inner);

    DensityOperator evaluate(const DensityOperator &rho) const;

    const ComplexMatrix &whitener() const { return whitener_; }
    const StateMapOracle &inner() const { return inner_; }
    int dim() const { return inner_.dim(); }

    /// The whitened map as a plain oracle (queries still hit the inner one).
    StateMapOracle as_oracle() const;

  private:
    ComplexMatrix whitener_;
    StateMapOracle inner_;
};

/// Queries phi(I/n) once, checks its invertibility, and whitens with the
/// inverse spectral square root. Throws ImageSingular when the image of the
/// maximally mixed state is rank deficient (such an oracle cannot be a
/// bijective segment preserver), NormalizationFailed when the whitened map
/// does not fix I/n within 1e-9.
NormalizedOracle normalize_at_maximally_mixed(const StateMapOracle &oracle);

/// Images of the standard basis projections under the whitened oracle, each
/// collapsed to its dominant eigenvector. Throws ImageNotPure (image purity
/// below 1 - 1e-8) or FrameNotOrthogonal.
ProjectionFrame recover_frame_images(const NormalizedOracle &norm);

struct KadisonForm {
    ComplexMatrix unitary;
    bool transposed = false;
    double branch_margin = 0.0;  // min over probes of |Im of the phase ratio|
};

/// Assembles the unitary column by column against the recovered frame.
/// Probes at the pure states on (e_1 + e_j)/sqrt(2) fix the relative column
/// phases; probes at (e_1 + i e_j)/sqrt(2) read the branch: the off-diagonal
/// phase ratio lands at -i on the linear branch and +i on the transpose
/// branch. Disagreement between probes or a margin under 1e-6 raises
/// BranchInconsistent; a vanishing off-diagonal raises PhaseAmbiguous.
KadisonForm recover_unitary_and_branch(const NormalizedOracle &norm, const ProjectionFrame &frame);

struct ReconstructionResult {
    MeasurementMap map;
    double residual = 0.0;       // max trace distance oracle vs map on verify states
    double branch_margin = 0.0;
    std::uint64_t queries = 0;   // oracle evaluations consumed, verification included
};

/// Full pipeline: normalize, frame, phases and branch, M = S^{-1} U, then
/// verification on `verify_samples` random states. Uses exactly
/// 1 + n + 2(n-1) oracle calls before verification. Throws
/// VerificationFailed when the reconstructed map misses the oracle by more
/// than 1e-6 in trace distance (the oracle passed every probed necessary
/// condition but is not a measurement map).
ReconstructionResult reconstruct_measurement_map(const StateMapOracle &oracle, int verify_samples,
                                                 std::uint64_t seed);

/// Min eigenvalue of the Choi matrix of the map's linearization after M is
/// scaled to unit spectral norm. Positive semidefinite on the linear branch;
/// at most -sigma_min(M)^2 on the transpose branch.
double choi_branch_min_eigenvalue(const MeasurementMap &map);

struct PalesFit {
    FractionalLinearMap map;
    double residual = 0.0;             // smallest / largest singular value
    std::string scale_convention;      // "f(I/n) + c = 1"
    double denominator_min = 0.0;      // exact min of f(rho) + c over states
    int null_dimension = 0;
};

/// Fits the fractional-linear representation (psi, B, f, c) to input/output
/// state pairs. The identity image (f(rho) + c) - psi(rho) - B = 0 is linear
/// in the unknowns; the solution is the minimal right singular vector of the
/// homogeneous system, normalized so f(I/n) + c = 1. Unit-trace samples
/// cannot separate B from a trace multiple inside psi, nor c from a trace
/// multiple inside f, so the system is solved in reduced coordinates and the
/// returned representative has B = 0 and f traceless (affine oracles fit
/// with f = 0 as a consequence). Throws InsufficientSamples
/// (< n^4 + 2n^2 + 2 pairs) or RankDeficient (solution space dimension > 1:
/// samples not in general position).
PalesFit fit_pales(const std::vector<std::pair<DensityOperator, DensityOperator>> &samples);

/// Complex-linear extension of the fitted numerator psi to all matrices, as
/// a superoperator. Feeding its Choi matrix to is_completely_positive
/// separates the two branches without reconstructing M.
Superoperator pales_numerator_superoperator(const FractionalLinearMap &map);

/// Reconstructs the map restricted to random nested subspaces L1 in L2
/// (dimensions k1 < k2) and checks that the restriction of M_{L2} to L1
/// matches M_{L1} up to a scalar (deviation <= 1e-7), `trials` times.
/// Throws RestrictionNotInvariant when restricted images leave the expected
/// image subspace; returns false on any other inconsistency.
bool nested_subspace_consistency(const StateMapOracle &oracle, int k1, int k2, int trials,
                                 std::uint64_t seed);

}  // namespace segmap

#endif
