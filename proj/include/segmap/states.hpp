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

#ifndef SEGMAP_STATES_HPP
#define SEGMAP_STATES_HPP

#include <cstdint>
#include <vector>

#include "segmap/complex_matrix.hpp"
#include "segmap/rng.hpp"

namespace segmap {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-12;

/// A ComplexMatrix whose Hermiticity has been checked (or enforced).
class HermitianMatrix {
  public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const ComplexMatrix &m, double tol = kHermitianTol);

    /// (m + m*) / 2 without a check, for inputs Hermitian up to roundoff.
    static HermitianMatrix symmetrized(const ComplexMatrix &m);

    const ComplexMatrix &matrix() const { return m_; }
    int dim() const { return m_.dim(); }

  private:
    struct Trusted {};
    HermitianMatrix(Trusted, ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

/// A state: Hermitian, positive semidefinite (eigenvalues >= -kPsdTol at
/// validation), unit trace. Instances are immutable once built.
class DensityOperator {
  public:
    DensityOperator() = default;

    /// Strict check of the PSD and trace invariants.
    /// Throws NotPositive / TraceNotOne.
    static DensityOperator validated(const HermitianMatrix &h);

    /// Hermitize, clip negative eigenvalues to zero, renormalize the trace.
    /// For near-states produced by whitening and file input. Throws
    /// NumericallySingular when nothing positive is left to normalize.
    static DensityOperator clipped(const ComplexMatrix &nearly);

    /// Hermitize and renormalize the trace only. For M rho M* style products
    /// that are PSD by construction up to roundoff; keeps map application at
    /// O(n^3) with no eigensolve.
    static DensityOperator from_product(const ComplexMatrix &product);

    static DensityOperator maximally_mixed(int n);

    const ComplexMatrix &matrix() const { return h_.matrix(); }
    const HermitianMatrix &hermitian() const { return h_; }
    int dim() const { return h_.dim(); }

    /// tr(rho^2) = squared Frobenius norm; 1 exactly on rank-1 projections.
    double purity() const;

  private:
    explicit DensityOperator(HermitianMatrix h) : h_(std::move(h)) {}
    HermitianMatrix h_;
};

/// Unit vector; its projector is a rank-1 state.
class PureState {
  public:
    explicit PureState(CVector amplitudes);
    static PureState normalized(CVector v);

    const CVector &amplitudes() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }
    DensityOperator projector() const;

  private:
    struct Trusted {};
    PureState(Trusted, CVector v) : v_(std::move(v)) {}
    CVector v_;
};

/// Point of the closed unit ball in R^3, identified with a qubit state.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double norm() const;
};

/// n mutually orthogonal rank-1 projections summing to the identity.
struct ProjectionFrame {
    std::vector<DensityOperator> projections;
    int dim() const {
        return projections.empty() ? 0 : projections.front().dim();
    }
};

/// Wraps a Hermitian candidate as a state iff the PSD / unit-trace
/// invariants hold. Throws NotPositive or TraceNotOne.
DensityOperator validate_density(const HermitianMatrix &candidate);

/// t rho1 + (1-t) rho2 for t in [0,1].
DensityOperator segment_point(const DensityOperator &rho1, const DensityOperator &rho2, double t);

/// Half the sum of absolute eigenvalues of the difference.
double trace_distance(const DensityOperator &rho1, const DensityOperator &rho2);
double trace_distance(const HermitianMatrix &a, const HermitianMatrix &b);

/// Entrywise transpose in the fixed computational basis. A transpose in any
/// other orthonormal basis differs by a unitary congruence, which a
/// measurement map absorbs into its matrix.
DensityOperator transpose_in_standard_basis(const DensityOperator &rho);

/// (1/2) I + (1/2) [[z, x-iy], [x+iy, -z]]. Throws OutsideBall.
DensityOperator bloch_to_state(const BlochVector &v);

/// Inverse of bloch_to_state; requires dimension 2.
BlochVector state_to_bloch(const DensityOperator &rho);

/// True iff pairwise products match delta_ij P_i entrywise within tol and
/// the projections sum to the identity within tol.
bool validate_frame(const ProjectionFrame &frame, double tol = 1e-10);

/// Matrix of i.i.d. standard complex Gaussians.
ComplexMatrix random_ginibre(int n, Rng &rng);

/// G G* / tr(G G*): full rank with probability 1.
DensityOperator random_density(int n, Rng &rng);
DensityOperator random_density(int n, std::uint64_t seed);

PureState random_pure(int n, Rng &rng);
PureState random_pure(int n, std::uint64_t seed);

/// Resamples Ginibre matrices until the condition number is within bound.
/// Throws ResampleBudgetExceeded after 64 attempts.
ComplexMatrix random_invertible(int n, Rng &rng, double max_condition = 100.0);
ComplexMatrix random_invertible(int n, std::uint64_t seed, double max_condition = 100.0);

/// Gram-Schmidt of a Ginibre matrix (Haar-distributed up to column phases).
ComplexMatrix random_unitary(int n, Rng &rng);

/// Projections onto the columns of a random unitary.
ProjectionFrame random_frame(int n, Rng &rng);

BlochVector random_unit_bloch(Rng &rng);
BlochVector random_ball_bloch(Rng &rng);

}  // namespace segmap

#endif
