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

#include "segmap/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "segmap/eigen_jacobi.hpp"
#include "segmap/errors.hpp"
#include "segmap/hermitian_basis.hpp"

namespace segmap {

namespace {

CVector column_of(const ComplexMatrix &m, int j) {
    CVector v(m.dim());
    for (int i = 0; i < m.dim(); ++i) {
        v[i] = m(i, j);
    }
    return v;
}

CVector dominant_eigenvector(const DensityOperator &rho) {
    return column_of(spectral_decompose(rho.matrix()).vectors, 0);
}

/// u1* A uj.
cplx sandwich(const CVector &u1, const ComplexMatrix &a, const CVector &uj) {
    return vec_dot(u1, matvec(a, uj));
}

DensityOperator superposition_probe(int n, int j, cplx amplitude) {
    CVector v(n, cplx(0.0));
    v[0] = 1.0;
    v[j] = amplitude;
    return PureState::normalized(std::move(v)).projector();
}

}  // namespace

NormalizedOracle::NormalizedOracle(ComplexMatrix whitener, StateMapOracle inner)
    : whitener_(std::move(whitener)), inner_(std::move(inner)) {
    if (whitener_.dim() != inner_.dim()) {
        throw DimensionMismatch("whitener and oracle dimensions differ");
    }
}

DensityOperator NormalizedOracle::evaluate(const DensityOperator &rho) const {
    const DensityOperator image = inner_.evaluate(rho);
    return DensityOperator::clipped(whitener_ * image.matrix() * whitener_.adjoint());
}

StateMapOracle NormalizedOracle::as_oracle() const {
    NormalizedOracle copy = *this;
    return StateMapOracle(dim(), [copy](const DensityOperator &rho) { return copy.evaluate(rho); });
}

NormalizedOracle normalize_at_maximally_mixed(const StateMapOracle &oracle) {
    const int n = oracle.dim();
    if (n < 2) {
        throw ParameterOutOfRange("normalization needs dimension >= 2");
    }
    const DensityOperator t0 = oracle.evaluate(DensityOperator::maximally_mixed(n));
    EigenDecomposition eig = spectral_decompose(t0.matrix());
    if (eig.values.back() <= 1e-10) {
        throw ImageSingular("image of the maximally mixed state has min eigenvalue " +
                            std::to_string(eig.values.back()));
    }
    // S = R^{-1} for the spectral square root R; basis independent and stable
    // for near-degenerate spectra.
    ComplexMatrix s(n);
    for (int k = 0; k < n; ++k) {
        const double w = 1.0 / std::sqrt(eig.values[k]);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                s(i, j) += w * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
            }
        }
    }
    // Certify against the cached image rather than re-querying.
    const DensityOperator whitened =
        DensityOperator::from_product(s * t0.matrix() * s.adjoint());
    if (trace_distance(whitened, DensityOperator::maximally_mixed(n)) > 1e-9) {
        throw NormalizationFailed("whitened oracle does not fix the maximally mixed state");
    }
    return NormalizedOracle(std::move(s), oracle);
}

ProjectionFrame recover_frame_images(const NormalizedOracle &norm) {
    const int n = norm.dim();
    ProjectionFrame frame;
    frame.projections.reserve(n);
    for (int i = 0; i < n; ++i) {
        const DensityOperator image =
            norm.evaluate(DensityOperator::from_product(ComplexMatrix::matrix_unit(n, i, i)));
        if (image.purity() < 1.0 - 1e-8) {
            throw ImageNotPure("image of basis projection " + std::to_string(i) +
                               " has purity " + std::to_string(image.purity()));
        }
        frame.projections.push_back(
            DensityOperator::from_product(outer(dominant_eigenvector(image))));
    }
    if (!validate_frame(frame, 1e-8)) {
        throw FrameNotOrthogonal("images of the basis projections do not form a frame");
    }
    return frame;
}

KadisonForm recover_unitary_and_branch(const NormalizedOracle &norm,
                                       const ProjectionFrame &frame) {
    const int n = norm.dim();
    if (static_cast<int>(frame.projections.size()) != n) {
        throw DimensionMismatch("frame size does not match oracle dimension");
    }

    std::vector<CVector> u(n);
    for (int i = 0; i < n; ++i) {
        u[i] = dominant_eigenvector(frame.projections[i]);
    }
    // Gauge: the largest entry of the first column is real positive; any
    // global phase of U cancels in M rho M*.
    int arg_max = 0;
    for (int i = 1; i < n; ++i) {
        if (std::abs(u[0][i]) > std::abs(u[0][arg_max])) {
            arg_max = i;
        }
    }
    const cplx lead = u[0][arg_max];
    for (cplx &z : u[0]) {
        z *= std::conj(lead) / std::abs(lead);
    }

    ComplexMatrix unitary(n);
    for (int i = 0; i < n; ++i) {
        unitary(i, 0) = u[0][i];
    }

    double margin = 2.0;
    int votes_transposed = 0;
    for (int j = 1; j < n; ++j) {
        // Relative phase of column j from the real superposition with e_1.
        const DensityOperator real_image = norm.evaluate(superposition_probe(n, j, 1.0));
        const cplx c_j = sandwich(u[0], real_image.matrix(), u[j]);
        if (std::abs(2.0 * c_j) < 1e-8) {
            throw PhaseAmbiguous("off-diagonal magnitude " + std::to_string(std::abs(2.0 * c_j)) +
                                 " too small at column " + std::to_string(j));
        }
        cplx beta = std::conj(2.0 * c_j);
        beta /= std::abs(beta);
        for (int i = 0; i < n; ++i) {
            unitary(i, j) = beta * u[j][i];
        }

        // Branch probe: the imaginary superposition picks up -i (linear) or
        // +i (transpose) relative to c_j.
        const DensityOperator imag_image = norm.evaluate(superposition_probe(n, j, cplx(0.0, 1.0)));
        const cplx ratio = sandwich(u[0], imag_image.matrix(), u[j]) / c_j;
        const double m_j = std::abs(ratio.imag());
        if (m_j < 1e-6) {
            throw BranchInconsistent("branch margin " + std::to_string(m_j) +
                                     " below threshold at column " + std::to_string(j));
        }
        votes_transposed += ratio.imag() > 0.0 ? 1 : 0;
        margin = std::min(margin, m_j);
    }
    if (votes_transposed != 0 && votes_transposed != n - 1) {
        throw BranchInconsistent("branch probes disagree across columns");
    }
    if (max_abs_diff(unitary.adjoint() * unitary, ComplexMatrix::identity(n)) > 1e-8) {
        throw FrameNotOrthogonal("assembled columns are not unitary");
    }
    return KadisonForm{std::move(unitary), votes_transposed != 0, margin};
}

ReconstructionResult reconstruct_measurement_map(const StateMapOracle &oracle, int verify_samples,
                                                 std::uint64_t seed) {
    if (verify_samples < 1) {
        throw ParameterOutOfRange("verification needs at least one sample");
    }
    const std::uint64_t queries_before = oracle.queries();
    const NormalizedOracle norm = normalize_at_maximally_mixed(oracle);
    const ProjectionFrame frame = recover_frame_images(norm);
    const KadisonForm kadison = recover_unitary_and_branch(norm, frame);

    const MeasurementMap map(norm.whitener().inverse() * kadison.unitary, kadison.transposed);

    double residual = 0.0;
    for (int i = 0; i < verify_samples; ++i) {
        const DensityOperator rho = random_density(oracle.dim(), Rng::mix(seed, i));
        residual = std::max(residual,
                            trace_distance(oracle.evaluate(rho), apply_measurement(map, rho)));
    }
    const std::uint64_t queries = oracle.queries() - queries_before;
    if (residual > 1e-6) {
        throw VerificationFailed("reconstructed map misses the oracle by " +
                                 std::to_string(residual) + " in trace distance");
    }
    return ReconstructionResult{map, residual, kadison.branch_margin, queries};
}

double choi_branch_min_eigenvalue(const MeasurementMap &map) {
    const ComplexMatrix scaled = map.matrix() * cplx(1.0 / spectral_norm(map.matrix()));
    const ComplexMatrix adj = scaled.adjoint();
    const auto action = map.transposed()
                            ? std::function<ComplexMatrix(const ComplexMatrix &)>(
                                  [&](const ComplexMatrix &x) { return scaled * x.transpose() * adj; })
                            : std::function<ComplexMatrix(const ComplexMatrix &)>(
                                  [&](const ComplexMatrix &x) { return scaled * x * adj; });
    return choi_min_eigenvalue(choi_matrix(Superoperator::from_action(map.dim(), action)));
}

PalesFit fit_pales(const std::vector<std::pair<DensityOperator, DensityOperator>> &samples) {
    if (samples.empty()) {
        throw InsufficientSamples("no samples");
    }
    const int n = samples.front().first.dim();
    const int nn = hermitian_basis_size(n);
    const int required = nn * nn + 2 * nn + 2;
    if (static_cast<int>(samples.size()) < required) {
        throw InsufficientSamples("need at least " + std::to_string(required) + " samples, got " +
                                  std::to_string(samples.size()));
    }

    // On unit-trace samples the components (psi, B, f, c) are not separately
    // identifiable: B matches a trace multiple inside psi and c a trace
    // multiple inside f. The system is therefore assembled in the reduced
    // unknowns (psi with B absorbed, g = f + c * trace), which have a
    // one-dimensional solution space exactly when the samples are in general
    // position. The reported representative splits g back into a traceless f
    // plus c and carries B = 0.
    const int unknowns = nn * nn + nn;
    std::vector<std::vector<double>> in_coords, out_coords;
    in_coords.reserve(samples.size());
    out_coords.reserve(samples.size());
    for (const auto &[rho, image] : samples) {
        if (rho.dim() != n || image.dim() != n) {
            throw DimensionMismatch("samples have mixed dimensions");
        }
        in_coords.push_back(hermitian_to_coords(rho.matrix()));
        out_coords.push_back(hermitian_to_coords(image.matrix()));
    }

    ComplexMatrix gram(unknowns);
    std::vector<std::pair<int, double>> row;
    row.reserve(2 * nn);
    const auto build_row = [&](std::size_t sample, int k) {
        const std::vector<double> &r = in_coords[sample];
        const std::vector<double> &y = out_coords[sample];
        row.clear();
        for (int l = 0; l < nn; ++l) {
            row.emplace_back(k * nn + l, -r[l]);  // psi(k, l)
        }
        for (int l = 0; l < nn; ++l) {
            row.emplace_back(nn * nn + l, y[k] * r[l]);  // g_l
        }
    };
    for (std::size_t s = 0; s < samples.size(); ++s) {
        for (int k = 0; k < nn; ++k) {
            build_row(s, k);
            for (const auto &[a, va] : row) {
                for (const auto &[b, vb] : row) {
                    gram(a, b) += va * vb;
                }
            }
        }
    }

    EigenDecomposition eig = spectral_decompose(gram);
    const double sigma_max = std::sqrt(std::max(eig.values.front(), 0.0));
    if (sigma_max <= 0.0) {
        throw RankDeficient("system is identically zero");
    }
    const double rank_tol = 1e-7 * sigma_max;
    int null_dim = 0;
    for (double v : eig.values) {
        if (std::sqrt(std::max(v, 0.0)) <= rank_tol) {
            ++null_dim;
        }
    }
    if (null_dim > 1) {
        throw RankDeficient("solution space has dimension " + std::to_string(null_dim) +
                            "; samples are not in general position");
    }

    // Smallest singular vector, made real (the normal matrix is real
    // symmetric, so the eigenvector is real up to one phase).
    CVector col = column_of(eig.vectors, unknowns - 1);
    int arg_max = 0;
    for (int i = 1; i < unknowns; ++i) {
        if (std::abs(col[i]) > std::abs(col[arg_max])) {
            arg_max = i;
        }
    }
    const cplx lead = col[arg_max] / std::abs(col[arg_max]);
    std::vector<double> theta(unknowns);
    for (int i = 0; i < unknowns; ++i) {
        theta[i] = (col[i] * std::conj(lead)).real();
    }

    // ||A theta|| recomputed row by row: the normal-matrix eigenvalue floors
    // at machine-epsilon * lambda_max, but the eigenvector does not, so the
    // direct residual resolves well below sqrt(eps).
    double rss = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        for (int k = 0; k < nn; ++k) {
            build_row(s, k);
            double dot = 0.0;
            for (const auto &[a, va] : row) {
                dot += va * theta[a];
            }
            rss += dot * dot;
        }
    }
    const double residual = std::sqrt(rss) / sigma_max;

    // Split g = f + c * trace with f traceless, then scale so f(I/n) + c = 1
    // (which is c = 1 for traceless f).
    double c = 0.0;
    for (int k = 0; k < n; ++k) {
        c += theta[nn * nn + k];
    }
    c /= n;
    if (std::abs(c) < 1e-10) {
        throw RankDeficient("denominator vanishes at the maximally mixed state");
    }
    for (double &x : theta) {
        x /= c;
    }

    ComplexMatrix psi(nn);
    for (int k = 0; k < nn; ++k) {
        for (int l = 0; l < nn; ++l) {
            psi(k, l) = theta[k * nn + l];
        }
    }
    std::vector<double> f(theta.begin() + nn * nn, theta.end());
    for (int k = 0; k < n; ++k) {
        f[k] -= 1.0;
    }

    PalesFit fit{FractionalLinearMap(n, std::move(psi),
                                     HermitianMatrix::symmetrized(ComplexMatrix(n)), std::move(f),
                                     1.0),
                 residual, "f(I/n) + c = 1", 0.0, null_dim};
    fit.denominator_min = fit.map.denominator_lower_bound();
    return fit;
}

Superoperator pales_numerator_superoperator(const FractionalLinearMap &map) {
    const int n = map.dim();
    const int nn = hermitian_basis_size(n);
    // Images of the Hermitian basis under psi.
    std::vector<ComplexMatrix> images;
    images.reserve(nn);
    for (int k = 0; k < nn; ++k) {
        std::vector<double> col(nn);
        for (int r = 0; r < nn; ++r) {
            col[r] = map.psi()(r, k).real();
        }
        images.push_back(coords_to_hermitian(n, col));
    }
    // Extend by complex linearity: E_ij = sum_k tr(B_k E_ij) B_k, and the
    // trace form picks the (j, i) entry of each basis matrix.
    ComplexMatrix action(nn);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            ComplexMatrix img(n);
            for (int k = 0; k < nn; ++k) {
                const cplx z = hermitian_basis_element(n, k)(j, i);
                if (z != cplx(0.0)) {
                    img += z * images[k];
                }
            }
            const CVector v = vec(img);
            const int col = j * n + i;
            for (int r = 0; r < nn; ++r) {
                action(r, col) = v[r];
            }
        }
    }
    return Superoperator(n, std::move(action));
}

namespace {

/// First k columns of a unitary, as vectors.
std::vector<CVector> isometry_columns(const ComplexMatrix &u, int k) {
    std::vector<CVector> cols;
    cols.reserve(k);
    for (int j = 0; j < k; ++j) {
        cols.push_back(column_of(u, j));
    }
    return cols;
}

ComplexMatrix lift(const std::vector<CVector> &iso, const ComplexMatrix &small) {
    const int n = static_cast<int>(iso.front().size());
    const int k = static_cast<int>(iso.size());
    ComplexMatrix out(n);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            const cplx w = small(a, b);
            if (w == cplx(0.0)) {
                continue;
            }
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    out(i, j) += w * iso[a][i] * std::conj(iso[b][j]);
                }
            }
        }
    }
    return out;
}

struct RestrictedReconstruction {
    MeasurementMap map;
    std::vector<CVector> image_basis;  // n-dim coordinates of the image subspace
};

/// Restricts the oracle to states supported on span(iso), reconstructs the
/// restricted map, and reports the image-subspace basis used to compress.
RestrictedReconstruction reconstruct_restriction(const StateMapOracle &oracle,
                                                 const std::vector<CVector> &iso,
                                                 std::uint64_t seed) {
    const int n = oracle.dim();
    const int k = static_cast<int>(iso.size());
    const double sub_tol = 1e-7;

    // Image subspace from the images of the lifted basis projections.
    ComplexMatrix mean(n);
    for (int a = 0; a < k; ++a) {
        const DensityOperator image = oracle.evaluate(DensityOperator::from_product(outer(iso[a])));
        mean += image.matrix();
    }
    mean *= cplx(1.0 / k);
    EigenDecomposition eig = spectral_decompose(mean);
    double tail = 0.0;
    for (int i = k; i < n; ++i) {
        tail += std::abs(eig.values[i]);
    }
    if (tail > sub_tol) {
        throw RestrictionNotInvariant("images of the restricted basis span more than " +
                                      std::to_string(k) + " dimensions");
    }
    std::vector<CVector> w = isometry_columns(eig.vectors, k);

    StateMapOracle restricted(k, [oracle, iso, w, n, k, sub_tol](const DensityOperator &rho) {
        const DensityOperator image = oracle.evaluate(DensityOperator::from_product(lift(iso, rho.matrix())));
        ComplexMatrix compressed(k);
        for (int a = 0; a < k; ++a) {
            const CVector col = matvec(image.matrix(), w[a]);
            for (int b = 0; b < k; ++b) {
                compressed(b, a) = vec_dot(w[b], col);
            }
        }
        const double full = image.matrix().frobenius_norm();
        const double kept = compressed.frobenius_norm();
        const double leak = std::sqrt(std::max(full * full - kept * kept, 0.0));
        if (leak > sub_tol) {
            throw RestrictionNotInvariant("restricted image leaks " + std::to_string(leak) +
                                          " outside the image subspace");
        }
        return DensityOperator::clipped(compressed);
    });

    ReconstructionResult result = reconstruct_measurement_map(restricted, 10, seed);
    return RestrictedReconstruction{result.map, std::move(w)};
}

}  // namespace

bool nested_subspace_consistency(const StateMapOracle &oracle, int k1, int k2, int trials,
                                 std::uint64_t seed) {
    const int n = oracle.dim();
    if (!(2 <= k1 && k1 < k2 && k2 <= n)) {
        throw ParameterOutOfRange("need 2 <= k1 < k2 <= n");
    }
    if (trials < 1) {
        throw ParameterOutOfRange("need at least one trial");
    }
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(Rng::mix(seed, trial));
        const ComplexMatrix v = random_unitary(n, rng);
        const std::vector<CVector> v1 = isometry_columns(v, k1);
        const std::vector<CVector> v2 = isometry_columns(v, k2);

        RestrictedReconstruction rec1 = reconstruct_restriction(oracle, v1, Rng::mix(seed, trial, 1));
        RestrictedReconstruction rec2 = reconstruct_restriction(oracle, v2, Rng::mix(seed, trial, 2));
        if (rec1.map.transposed() != rec2.map.transposed()) {
            return false;
        }

        // Ambient action on L1: X_k = W_k * (M_k restricted to the first k1
        // coordinates). Both should agree up to one complex scalar.
        const auto ambient = [n](const RestrictedReconstruction &rec, int cols) {
            const int k = static_cast<int>(rec.image_basis.size());
            std::vector<CVector> x(cols, CVector(n, cplx(0.0)));
            for (int a = 0; a < cols; ++a) {
                for (int b = 0; b < k; ++b) {
                    const cplx m = rec.map.matrix()(b, a);
                    for (int i = 0; i < n; ++i) {
                        x[a][i] += m * rec.image_basis[b][i];
                    }
                }
            }
            return x;
        };
        const std::vector<CVector> x1 = ambient(rec1, k1);
        const std::vector<CVector> x2 = ambient(rec2, k1);

        cplx inner11 = 0.0, inner12 = 0.0;
        double norm2_x2 = 0.0;
        for (int a = 0; a < k1; ++a) {
            inner11 += vec_dot(x1[a], x1[a]);
            inner12 += vec_dot(x1[a], x2[a]);
            const double na = vec_norm(x2[a]);
            norm2_x2 += na * na;
        }
        const cplx lambda = inner12 / inner11;
        double dev2 = 0.0;
        for (int a = 0; a < k1; ++a) {
            for (int i = 0; i < n; ++i) {
                dev2 += std::norm(x2[a][i] - lambda * x1[a][i]);
            }
        }
        if (std::sqrt(dev2) > 1e-7 * std::max(std::sqrt(norm2_x2), 1e-30)) {
            return false;
        }
    }
    return true;
}

}  // namespace segmap
