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

#ifndef SEGMAP_MAPS_HPP
#define SEGMAP_MAPS_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "segmap/complex_matrix.hpp"
#include "segmap/states.hpp"

namespace segmap {

/// rho -> M rho M* / tr(M rho M*), optionally preceded by a transpose in the
/// standard basis. M is invertible and stored canonically: unit Frobenius
/// norm, first non-negligible entry (row-major) rotated real positive. The
/// quotient makes M unique only up to a nonzero complex scalar, so the
/// canonical representative is what equality testing works with.
class MeasurementMap {
  public:
    MeasurementMap(const ComplexMatrix &m, bool transposed);

    const ComplexMatrix &matrix() const { return m_; }
    bool transposed() const { return transposed_; }
    int dim() const { return m_.dim(); }

  private:
    ComplexMatrix m_;
    bool transposed_ = false;
};

DensityOperator apply_measurement(const MeasurementMap &map, const DensityOperator &rho);

/// Inverse as a map on states: plain matrix inverse on the linear branch;
/// conj(M)^{-1} with the flag kept on the transpose branch.
MeasurementMap invert_map(const MeasurementMap &map);

/// Single map acting as outer after inner on every state. Transpose flags
/// XOR; a transpose passing through the inner matrix conjugates it.
MeasurementMap compose(const MeasurementMap &outer, const MeasurementMap &inner);

/// True iff the transpose flags agree and the two maps act identically
/// (trace distance <= tol) on `samples` seeded random states.
bool maps_equal_up_to_scale(const MeasurementMap &a, const MeasurementMap &b, int samples,
                            double tol, std::uint64_t seed);

/// Column-stacked vectorization: vec(X)[i + j*n] = X(i, j).
CVector vec(const ComplexMatrix &x);
ComplexMatrix unvec(int n, const CVector &v);

/// Linear map on matrices as an n^2 x n^2 matrix on column-vectorized inputs.
class Superoperator {
  public:
    Superoperator(int n, ComplexMatrix action);

    /// Builds the matrix by applying `f` to every matrix unit.
    static Superoperator from_action(int n,
                                     const std::function<ComplexMatrix(const ComplexMatrix &)> &f);

    int dim() const { return n_; }
    const ComplexMatrix &action() const { return action_; }

    ComplexMatrix apply(const ComplexMatrix &x) const;

    /// Checked on the Hermitian basis.
    bool hermiticity_preserving(double tol = 1e-10) const;

  private:
    int n_;
    ComplexMatrix action_;
};

/// X -> M X M* (or M X^T M* on the transpose branch), without the trace
/// renormalization. Applying then renormalizing reproduces apply_measurement.
Superoperator linearize(const MeasurementMap &map);

Superoperator identity_superoperator(int n);
Superoperator transpose_superoperator(int n);

/// C = sum_ij E_ij (x) S(E_ij); Hermitian for Hermiticity-preserving S, and
/// positive semidefinite exactly when S is completely positive.
class ChoiMatrix {
  public:
    explicit ChoiMatrix(const ComplexMatrix &base);

    const HermitianMatrix &base() const { return base_; }
    int system_dim() const { return system_dim_; }

  private:
    HermitianMatrix base_;
    int system_dim_;
};

ChoiMatrix choi_matrix(const Superoperator &s);
double choi_min_eigenvalue(const ChoiMatrix &c);
bool is_completely_positive(const ChoiMatrix &c, double tol);

/// rho -> (psi(rho) + B) / (f(rho) + c) on Hermitian matrices, with psi a
/// real-linear map and f a real functional, both in the orthonormal Hermitian
/// coordinates of hermitian_basis.hpp. The denominator must stay positive on
/// states; pure states are the extreme points, so the exact certificate is
/// lambda_min(F) + c for the Hermitian F representing f.
class FractionalLinearMap {
  public:
    FractionalLinearMap(int n, ComplexMatrix psi, HermitianMatrix offset, std::vector<double> f,
                        double c);

    static FractionalLinearMap identity(int n);

    /// psi = X -> M X' M*, f the matching trace functional, B = 0, c = 0.
    static FractionalLinearMap from_measurement(const MeasurementMap &map);

    int dim() const { return n_; }
    const ComplexMatrix &psi() const { return psi_; }
    const HermitianMatrix &offset() const { return offset_; }
    const std::vector<double> &functional() const { return f_; }
    double constant() const { return c_; }

    double denominator(const DensityOperator &rho) const;
    double denominator_lower_bound() const;

  private:
    int n_;
    ComplexMatrix psi_;  // n^2 x n^2, real entries
    HermitianMatrix offset_;
    std::vector<double> f_;
    double c_;
};

HermitianMatrix apply_fractional_linear(const FractionalLinearMap &g, const DensityOperator &rho);

/// Opaque state-to-state transformation; the only access the reconstruction
/// pipeline gets. The callable must be pure and reentrant. Evaluations are
/// counted through a shared counter so query complexity can be asserted.
class StateMapOracle {
  public:
    using Fn = std::function<DensityOperator(const DensityOperator &)>;

    StateMapOracle(int n, Fn fn);

    DensityOperator evaluate(const DensityOperator &rho) const;

    int dim() const { return n_; }
    std::uint64_t queries() const { return counter_->load(); }

    static StateMapOracle from_map(const MeasurementMap &map);
    static StateMapOracle identity(int n);

  private:
    int n_;
    Fn fn_;
    std::shared_ptr<std::atomic<std::uint64_t>> counter_;
};

}  // namespace segmap

#endif
