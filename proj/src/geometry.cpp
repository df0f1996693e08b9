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

#include "segmap/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "segmap/errors.hpp"

namespace segmap {

namespace {

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).frobenius_norm();
}

/// Projection that tolerates a collapsed image segment: distance to the
/// single point, parameter 0.
SegmentProjection project_or_point(const DensityOperator &sigma, const DensityOperator &rho1,
                                   const DensityOperator &rho2) {
    try {
        return project_to_segment(sigma, rho1, rho2);
    } catch (const DegenerateSegment &) {
        return {0.0, frobenius_distance(sigma.matrix(), rho1.matrix())};
    }
}

}  // namespace

std::vector<StatePair> sample_state_pairs(int n, int count, std::uint64_t seed) {
    if (count < 1) {
        throw ParameterOutOfRange("pair count must be >= 1");
    }
    std::vector<StatePair> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        out.push_back({random_density(n, Rng::mix(seed, 2 * i)),
                       random_density(n, Rng::mix(seed, 2 * i + 1))});
    }
    return out;
}

SegmentProjection project_to_segment(const DensityOperator &sigma, const DensityOperator &rho1,
                                     const DensityOperator &rho2) {
    if (sigma.dim() != rho1.dim() || rho1.dim() != rho2.dim()) {
        throw DimensionMismatch("projection operands have different dimensions");
    }
    const ComplexMatrix chord = rho1.matrix() - rho2.matrix();
    const double len2 = std::pow(chord.frobenius_norm(), 2);
    if (trace_distance(rho1, rho2) <= 1e-12) {
        throw DegenerateSegment("segment endpoints coincide");
    }
    const double s_raw = frobenius_inner(chord, sigma.matrix() - rho2.matrix()).real() / len2;
    const double s = std::clamp(s_raw, 0.0, 1.0);
    const ComplexMatrix closest = cplx(s) * rho1.matrix() + cplx(1.0 - s) * rho2.matrix();
    return {s, frobenius_distance(sigma.matrix(), closest)};
}

SegmentCertificate check_segment_containment(const StateMapOracle &oracle, int pairs, int t_grid,
                                             double tol, std::uint64_t seed) {
    if (pairs < 1 || t_grid < 1) {
        throw ParameterOutOfRange("pair and grid counts must be >= 1");
    }
    SegmentCertificate cert;
    cert.tolerance = tol;
    cert.seed = seed;
    cert.pairs = pairs;
    cert.grid = t_grid;

    std::optional<DensityOperator> worst_image;
    std::optional<DensityOperator> worst_target;

    const std::vector<StatePair> sampled = sample_state_pairs(oracle.dim(), pairs, seed);
    for (const StatePair &pair : sampled) {
        const DensityOperator img1 = oracle.evaluate(pair.rho1);
        const DensityOperator img2 = oracle.evaluate(pair.rho2);
        for (int k = 1; k <= t_grid; ++k) {
            const double t = static_cast<double>(k) / (t_grid + 1);
            const DensityOperator image = oracle.evaluate(segment_point(pair.rho1, pair.rho2, t));
            const SegmentProjection proj = project_or_point(image, img1, img2);
            cert.s_values.push_back(proj.s);
            if (proj.distance > cert.worst_deviation || !cert.worst_pair) {
                cert.worst_deviation = proj.distance;
                cert.worst_pair = SegmentWitness{pair.rho1, pair.rho2, t};
                worst_image = image;
                worst_target = segment_point(img1, img2, proj.s);
            }
        }
    }
    if (worst_image && worst_target) {
        cert.worst_trace_distance = trace_distance(*worst_image, *worst_target);
    }
    cert.satisfied = cert.worst_deviation <= tol;
    return cert;
}

SegmentCertificate check_segment_equality(const StateMapOracle &oracle, int pairs, int s_grid,
                                          double tol, std::uint64_t seed) {
    if (pairs < 1 || s_grid < 1) {
        throw ParameterOutOfRange("pair and grid counts must be >= 1");
    }
    SegmentCertificate cert;
    cert.tolerance = tol;
    cert.seed = seed;
    cert.pairs = pairs;
    cert.grid = s_grid;

    std::optional<DensityOperator> worst_image;
    std::optional<DensityOperator> worst_target;

    // Tighter than tol so that hitting a target is limited by the oracle,
    // not by the root finder.
    const double exit_tol = std::max(tol * 1e-2, 1e-13);
    const int max_iterations = 80;

    const std::vector<StatePair> sampled = sample_state_pairs(oracle.dim(), pairs, seed);
    for (const StatePair &pair : sampled) {
        const DensityOperator img1 = oracle.evaluate(pair.rho1);
        const DensityOperator img2 = oracle.evaluate(pair.rho2);

        const auto eval = [&](double t) {
            const DensityOperator image = oracle.evaluate(segment_point(pair.rho1, pair.rho2, t));
            return std::pair<SegmentProjection, DensityOperator>(
                project_or_point(image, img1, img2), image);
        };

        for (int k = 1; k <= s_grid; ++k) {
            const double target = static_cast<double>(k) / (s_grid + 1);

            // Bracketed regula falsi (Illinois) on s(t) - target; the
            // endpoints of the input segment map to s = 0 and s = 1 exactly.
            double lo = 0.0, f_lo = -target;
            double hi = 1.0, f_hi = 1.0 - target;
            double t_best = 0.5, s_best = 0.0, err_best = 1.0;
            std::optional<DensityOperator> image_best;
            double miss_best = 0.0;

            for (int it = 0; it < max_iterations; ++it) {
                double t_next = hi - f_hi * (hi - lo) / (f_hi - f_lo);
                if (!std::isfinite(t_next) || t_next <= lo || t_next >= hi) {
                    t_next = 0.5 * (lo + hi);
                }
                auto [proj, image] = eval(t_next);
                const double f = proj.s - target;
                if (std::abs(f) < err_best) {
                    err_best = std::abs(f);
                    t_best = t_next;
                    s_best = proj.s;
                    image_best = image;
                    const ComplexMatrix want = cplx(target) * img1.matrix() +
                                               cplx(1.0 - target) * img2.matrix();
                    miss_best = frobenius_distance(image.matrix(), want);
                }
                if (std::abs(f) <= exit_tol || hi - lo <= 1e-15) {
                    break;
                }
                if (f * f_hi < 0.0) {
                    lo = hi;
                    f_lo = f_hi;
                } else {
                    f_lo *= 0.5;  // Illinois trick keeps the stalled endpoint moving
                }
                hi = t_next;
                f_hi = f;
                if (lo > hi) {
                    std::swap(lo, hi);
                    std::swap(f_lo, f_hi);
                }
            }

            cert.s_values.push_back(s_best);
            if (err_best > tol) {
                ++cert.bisection_failures;
            }
            if (miss_best > cert.worst_deviation || !cert.worst_pair) {
                cert.worst_deviation = miss_best;
                cert.worst_pair = SegmentWitness{pair.rho1, pair.rho2, t_best};
                worst_image = image_best;
                worst_target = segment_point(img1, img2, target);
            }
        }
    }
    if (worst_image && worst_target) {
        cert.worst_trace_distance = trace_distance(*worst_image, *worst_target);
    }
    cert.satisfied = cert.worst_deviation <= tol && cert.bisection_failures == 0;
    return cert;
}

bool check_pure_preservation(const StateMapOracle &oracle,
                             const std::optional<StateMapOracle> &inverse, int samples, double tol,
                             std::uint64_t seed) {
    const int n = oracle.dim();
    for (int i = 0; i < samples; ++i) {
        const PureState x = random_pure(n, Rng::mix(seed, i));
        if (oracle.evaluate(x.projector()).purity() < 1.0 - tol) {
            return false;
        }
        if (inverse && inverse->evaluate(x.projector()).purity() < 1.0 - tol) {
            return false;
        }
    }
    return true;
}

bool check_frame_preservation(const StateMapOracle &oracle, double tol, std::uint64_t seed,
                              int frames) {
    const int n = oracle.dim();
    const DensityOperator mixed = DensityOperator::maximally_mixed(n);
    if (trace_distance(oracle.evaluate(mixed), mixed) > tol) {
        throw NotNormalized("oracle does not fix the maximally mixed state");
    }
    for (int f = 0; f < frames; ++f) {
        Rng rng(Rng::mix(seed, f));
        const ProjectionFrame frame = random_frame(n, rng);
        ProjectionFrame images;
        images.projections.reserve(n);
        for (const DensityOperator &p : frame.projections) {
            images.projections.push_back(oracle.evaluate(p));
        }
        if (!validate_frame(images, tol)) {
            return false;
        }
    }
    return true;
}

BlochVector induced_ball_map(const StateMapOracle &oracle, const BlochVector &v) {
    return state_to_bloch(oracle.evaluate(bloch_to_state(v)));
}

bool qubit_ball_check(const StateMapOracle &oracle, double tol, std::uint64_t seed) {
    if (oracle.dim() != 2) {
        throw DimensionMismatch("ball check requires a qubit oracle");
    }
    const DensityOperator mixed = DensityOperator::maximally_mixed(2);
    if (trace_distance(oracle.evaluate(mixed), mixed) > tol) {
        throw NotNormalized("oracle does not fix the maximally mixed state");
    }
    if (induced_ball_map(oracle, BlochVector{}).norm() > tol) {
        return false;
    }
    Rng rng(seed);
    for (int i = 0; i < 200; ++i) {
        const BlochVector u = random_unit_bloch(rng);
        if (std::abs(induced_ball_map(oracle, u).norm() - 1.0) > tol) {
            return false;
        }
    }
    for (int i = 0; i < 50; ++i) {
        const BlochVector u = random_ball_bloch(rng);
        const BlochVector v = random_ball_bloch(rng);
        const BlochVector mid{0.5 * (u.x + v.x), 0.5 * (u.y + v.y), 0.5 * (u.z + v.z)};
        const BlochVector fu = induced_ball_map(oracle, u);
        const BlochVector fv = induced_ball_map(oracle, v);
        const BlochVector fm = induced_ball_map(oracle, mid);
        const BlochVector gap{fm.x - 0.5 * (fu.x + fv.x), fm.y - 0.5 * (fu.y + fv.y),
                              fm.z - 0.5 * (fu.z + fv.z)};
        if (gap.norm() > tol) {
            return false;
        }
    }
    return true;
}

BallMapFit fit_qubit_ball_map(const StateMapOracle &oracle, int fit_samples, int check_samples,
                              std::uint64_t seed) {
    if (oracle.dim() != 2) {
        throw DimensionMismatch("ball fit requires a qubit oracle");
    }
    if (fit_samples < 3) {
        throw ParameterOutOfRange("need at least 3 fit samples");
    }
    Rng rng(seed);
    ComplexMatrix gram(3);
    ComplexMatrix cross(3);
    for (int i = 0; i < fit_samples; ++i) {
        const BlochVector v = random_ball_bloch(rng);
        const BlochVector w = induced_ball_map(oracle, v);
        const double vv[3] = {v.x, v.y, v.z};
        const double ww[3] = {w.x, w.y, w.z};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                gram(r, c) += vv[r] * vv[c];
                cross(r, c) += ww[r] * vv[c];
            }
        }
    }
    const ComplexMatrix l_mat = cross * gram.inverse();
    BallMapFit fit;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            fit.m[r][c] = l_mat(r, c).real();
        }
    }
    for (int i = 0; i < check_samples; ++i) {
        const BlochVector v = random_unit_bloch(rng);
        const BlochVector w = induced_ball_map(oracle, v);
        const double vv[3] = {v.x, v.y, v.z};
        double err2 = 0.0;
        for (int r = 0; r < 3; ++r) {
            double pred = 0.0;
            for (int c = 0; c < 3; ++c) {
                pred += fit.m[r][c] * vv[c];
            }
            const double w_r = (r == 0 ? w.x : (r == 1 ? w.y : w.z));
            err2 += (pred - w_r) * (pred - w_r);
        }
        fit.residual = std::max(fit.residual, std::sqrt(err2));
    }
    return fit;
}

}  // namespace segmap
