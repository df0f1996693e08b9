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

#include "segmap/cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "segmap/eigen_jacobi.hpp"
#include "segmap/errors.hpp"
#include "segmap/geometry.hpp"
#include "segmap/jsonio.hpp"
#include "segmap/oracles.hpp"
#include "segmap/reconstruct.hpp"
#include "segmap/version.hpp"

namespace segmap {

namespace {

struct CommonOpts {
    std::uint64_t seed = 0;
    double tol = 1e-8;
    int samples = 100;
    std::string out;
};

void emit(const CommonOpts &opts, const JsonValue &report) {
    const std::string text = report.dump();
    if (opts.out.empty() || opts.out == "-") {
        std::cout << text;
    } else {
        save_file(opts.out, text);
    }
}

JsonValue report_base(const std::string &command, const CommonOpts &opts) {
    JsonValue j = JsonValue::object();
    j.add("version", JsonValue::string(kVersion));
    j.add("command", JsonValue::string(command));
    j.add("seed", JsonValue::uinteger(opts.seed));
    j.add("tol", JsonValue::number(opts.tol));
    return j;
}

/// Usage and malformed-input problems exit 2; everything else a stage can
/// throw is a finding about the oracle and exits 1 with the report written.
bool is_usage_error(const Error &e) {
    return dynamic_cast<const InputError *>(&e) != nullptr ||
           dynamic_cast<const ParameterOutOfRange *>(&e) != nullptr ||
           dynamic_cast<const DimensionMismatch *>(&e) != nullptr ||
           dynamic_cast<const OracleDimensionMismatch *>(&e) != nullptr ||
           dynamic_cast<const NotHermitian *>(&e) != nullptr ||
           dynamic_cast<const InsufficientSamples *>(&e) != nullptr;
}

struct OracleSpec {
    StateMapOracle oracle;
    std::optional<MeasurementMap> map;  // present when backed by a map file
};

ComplexMatrix random_unitary_from_seed(int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(n, rng);
}

/// `spec` is a path to a measurement-map JSON file or one of the built-in
/// names. Built-ins need an explicit dimension.
OracleSpec resolve_oracle(const std::string &spec, int n, std::uint64_t seed) {
    if (std::filesystem::exists(spec)) {
        MeasurementMap map = read_measurement_map(load_file(spec));
        return {oracle_from_map(map), map};
    }
    if (n < 1) {
        throw ParameterOutOfRange("built-in oracle '" + spec + "' needs --n");
    }
    if (spec == "identity") {
        return {oracle_identity(n), std::nullopt};
    }
    if (spec == "mixer") {
        return {oracle_mixer(n), std::nullopt};
    }
    if (spec == "square") {
        return {oracle_square_normalize(n), std::nullopt};
    }
    if (spec == "symmetrize") {
        return {oracle_symmetrize(n), std::nullopt};
    }
    if (spec == "singular") {
        return {oracle_singular_image(n), std::nullopt};
    }
    if (spec == "rank-split") {
        MeasurementMap low(random_unitary_from_seed(n, Rng::mix(seed, 101)), false);
        MeasurementMap high(random_unitary_from_seed(n, Rng::mix(seed, 202)), false);
        return {oracle_rank_split(low, high, n / 2), std::nullopt};
    }
    throw InputError("unknown oracle '" + spec + "' (not a file or built-in name)");
}

}  // namespace

int run_cli(const std::vector<std::string> &args) {
    CLI::App app{"Toolkit for segment-preserving maps on quantum states: generate instances, "
                 "apply maps, certify map geometry, reconstruct measurement maps from oracles."};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // gen
    auto *gen = app.add_subcommand("gen", "Generate a random map or state as JSON");
    std::string gen_kind = "map";
    int gen_n = 0;
    std::uint64_t gen_seed = 0;
    bool gen_transpose = false;
    double gen_max_condition = 100.0;
    std::string gen_out;
    gen->add_option("--kind", gen_kind, "map | state")->check(CLI::IsMember({"map", "state"}));
    gen->add_option("--n", gen_n, "dimension")->required();
    gen->add_option("--seed", gen_seed, "RNG seed")->required();
    gen->add_flag("--transpose", gen_transpose, "use the transpose branch (maps only)");
    gen->add_option("--max-condition", gen_max_condition, "condition number bound (maps only)");
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // apply
    auto *apply = app.add_subcommand("apply", "Apply a measurement map to a state");
    std::string apply_map, apply_in, apply_out;
    apply->add_option("--map", apply_map, "measurement map JSON file")->required();
    apply->add_option("--in", apply_in, "input state JSON file")->required();
    apply->add_option("--out", apply_out, "output path (default stdout)");

    // shared options helper
    const auto add_common = [](CLI::App *cmd, CommonOpts &opts, bool needs_seed = true) {
        auto *seed_opt = cmd->add_option("--seed", opts.seed, "RNG seed");
        if (needs_seed) {
            seed_opt->required();
        }
        cmd->add_option("--tol", opts.tol, "tolerance (default 1e-8)");
        cmd->add_option("--samples", opts.samples, "sample count (default 100)");
        cmd->add_option("--out", opts.out, "report path (default stdout)");
    };

    // check-segment
    auto *segment = app.add_subcommand("check-segment", "Certify segment containment (and "
                                                        "optionally equality) for an oracle");
    CommonOpts seg_opts;
    std::string seg_oracle;
    int seg_n = 0, seg_pairs = 32, seg_grid = 17;
    bool seg_equality = false;
    segment->add_option("--oracle", seg_oracle, "map JSON file or built-in name")->required();
    segment->add_option("--n", seg_n, "dimension (built-in oracles)");
    segment->add_option("--pairs", seg_pairs, "state pairs (default 32)");
    segment->add_option("--grid", seg_grid, "grid points per pair (default 17)");
    segment->add_flag("--equality", seg_equality, "also certify surjectivity onto the segment");
    add_common(segment, seg_opts);

    // check-pure
    auto *pure = app.add_subcommand("check-pure", "Check that pure states map to pure states");
    CommonOpts pure_opts;
    std::string pure_oracle;
    int pure_n = 0;
    pure->add_option("--oracle", pure_oracle, "map JSON file or built-in name")->required();
    pure->add_option("--n", pure_n, "dimension (built-in oracles)");
    add_common(pure, pure_opts);

    // check-frame
    auto *frame = app.add_subcommand("check-frame", "Check preservation of orthonormal "
                                                    "projection frames");
    CommonOpts frame_opts;
    std::string frame_oracle;
    int frame_n = 0, frame_count = 20;
    bool frame_normalize = false;
    frame->add_option("--oracle", frame_oracle, "map JSON file or built-in name")->required();
    frame->add_option("--n", frame_n, "dimension (built-in oracles)");
    frame->add_option("--frames", frame_count, "random frames to test (default 20)");
    frame->add_flag("--normalize", frame_normalize, "whiten at the maximally mixed state first");
    add_common(frame, frame_opts);

    // qubit-ball
    auto *ball = app.add_subcommand("qubit-ball", "Check the induced Bloch-ball map of a "
                                                  "normalized qubit oracle");
    CommonOpts ball_opts;
    std::string ball_oracle;
    bool ball_normalize = false;
    int ball_fit_samples = 20;
    ball->add_option("--oracle", ball_oracle, "map JSON file or built-in name")->required();
    ball->add_flag("--normalize", ball_normalize, "whiten at the maximally mixed state first");
    ball->add_option("--fit-samples", ball_fit_samples, "samples for the 3x3 fit (default 20)");
    add_common(ball, ball_opts);

    // reconstruct
    auto *rec = app.add_subcommand("reconstruct", "Recover (M, transpose) from a live oracle");
    CommonOpts rec_opts;
    rec_opts.samples = 20;
    std::string rec_oracle;
    int rec_n = 0;
    rec->add_option("--oracle", rec_oracle, "map JSON file or built-in name")->required();
    rec->add_option("--n", rec_n, "dimension (built-in oracles)");
    add_common(rec, rec_opts);

    // fit-pales
    auto *fit = app.add_subcommand("fit-pales", "Fit the fractional-linear representation to "
                                                "sampled input/output pairs");
    CommonOpts fit_opts;
    std::string fit_pairs_path, fit_oracle;
    int fit_n = 0, fit_count = 0;
    fit->add_option("--pairs", fit_pairs_path, "JSON array of {input, output} states");
    fit->add_option("--oracle", fit_oracle, "map JSON file or built-in name to sample from");
    fit->add_option("--n", fit_n, "dimension (built-in oracles)");
    fit->add_option("--count", fit_count, "samples to draw from the oracle");
    add_common(fit, fit_opts, /*needs_seed=*/false);

    // choi
    auto *choi = app.add_subcommand("choi", "Choi spectrum and complete positivity of a map");
    CommonOpts choi_opts;
    std::string choi_map;
    int choi_n = 0;
    choi->add_option("--map", choi_map, "map JSON file, 'identity', or 'transpose'")->required();
    choi->add_option("--n", choi_n, "dimension (built-in maps)");
    add_common(choi, choi_opts, /*needs_seed=*/false);

    // nested-check
    auto *nested = app.add_subcommand("nested-check", "Consistency of reconstructions on nested "
                                                      "subspaces");
    CommonOpts nested_opts;
    std::string nested_oracle;
    int nested_n = 0, nested_k1 = 2, nested_k2 = 4, nested_trials = 20;
    nested->add_option("--oracle", nested_oracle, "map JSON file or built-in name")->required();
    nested->add_option("--n", nested_n, "dimension (built-in oracles)");
    nested->add_option("--k1", nested_k1, "inner subspace dimension")->required();
    nested->add_option("--k2", nested_k2, "outer subspace dimension")->required();
    nested->add_option("--trials", nested_trials, "random nested pairs to test (default 20)");
    add_common(nested, nested_opts);

    std::vector<const char *> argv;
    argv.push_back("segmap");
    for (const std::string &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    CommonOpts *active = nullptr;
    JsonValue report = JsonValue::object();
    try {
        if (gen->parsed()) {
            CommonOpts opts;
            opts.out = gen_out;
            if (gen_kind == "map") {
                Rng rng(gen_seed);
                const MeasurementMap map(random_invertible(gen_n, rng, gen_max_condition),
                                         gen_transpose);
                emit(opts, measurement_map_json(map));
            } else {
                emit(opts, density_json(random_density(gen_n, gen_seed)));
            }
            return 0;
        }

        if (apply->parsed()) {
            CommonOpts opts;
            opts.out = apply_out;
            const MeasurementMap map = read_measurement_map(load_file(apply_map));
            const DensityOperator rho = read_density(load_file(apply_in));
            emit(opts, density_json(apply_measurement(map, rho)));
            return 0;
        }

        if (segment->parsed()) {
            active = &seg_opts;
            report = report_base("check-segment", seg_opts);
            report.add("oracle", JsonValue::string(seg_oracle));
            const OracleSpec spec = resolve_oracle(seg_oracle, seg_n, seg_opts.seed);
            const SegmentCertificate containment = check_segment_containment(
                spec.oracle, seg_pairs, seg_grid, seg_opts.tol, seg_opts.seed);
            bool ok = containment.satisfied;
            report.add("containment", certificate_json(containment));
            if (seg_equality) {
                const SegmentCertificate equality = check_segment_equality(
                    spec.oracle, seg_pairs, seg_grid, seg_opts.tol, Rng::mix(seg_opts.seed, 1));
                ok = ok && equality.satisfied;
                report.add("equality", certificate_json(equality));
            }
            report.add("satisfied", JsonValue::boolean(ok));
            report.add("errors", JsonValue::array());
            emit(seg_opts, report);
            return ok ? 0 : 1;
        }

        if (pure->parsed()) {
            active = &pure_opts;
            report = report_base("check-pure", pure_opts);
            report.add("oracle", JsonValue::string(pure_oracle));
            const OracleSpec spec = resolve_oracle(pure_oracle, pure_n, pure_opts.seed);
            std::optional<StateMapOracle> inverse;
            if (spec.map) {
                inverse = oracle_from_map(invert_map(*spec.map));
            } else if (pure_oracle == "identity") {
                inverse = oracle_identity(spec.oracle.dim());
            }
            const bool ok = check_pure_preservation(spec.oracle, inverse, pure_opts.samples,
                                                    pure_opts.tol, pure_opts.seed);
            report.add("pure_preserved", JsonValue::boolean(ok));
            report.add("inverse_checked", JsonValue::boolean(inverse.has_value()));
            report.add("errors", JsonValue::array());
            emit(pure_opts, report);
            return ok ? 0 : 1;
        }

        if (frame->parsed()) {
            active = &frame_opts;
            report = report_base("check-frame", frame_opts);
            report.add("oracle", JsonValue::string(frame_oracle));
            OracleSpec spec = resolve_oracle(frame_oracle, frame_n, frame_opts.seed);
            StateMapOracle oracle = frame_normalize
                                        ? normalize_at_maximally_mixed(spec.oracle).as_oracle()
                                        : spec.oracle;
            const bool ok =
                check_frame_preservation(oracle, frame_opts.tol, frame_opts.seed, frame_count);
            report.add("frames_preserved", JsonValue::boolean(ok));
            report.add("errors", JsonValue::array());
            emit(frame_opts, report);
            return ok ? 0 : 1;
        }

        if (ball->parsed()) {
            active = &ball_opts;
            report = report_base("qubit-ball", ball_opts);
            report.add("oracle", JsonValue::string(ball_oracle));
            OracleSpec spec = resolve_oracle(ball_oracle, 2, ball_opts.seed);
            StateMapOracle oracle = ball_normalize
                                        ? normalize_at_maximally_mixed(spec.oracle).as_oracle()
                                        : spec.oracle;
            const bool ok = qubit_ball_check(oracle, ball_opts.tol, ball_opts.seed);
            const BallMapFit fit_result =
                fit_qubit_ball_map(oracle, ball_fit_samples, 200, Rng::mix(ball_opts.seed, 1));
            report.add("ball_preserved", JsonValue::boolean(ok));
            JsonValue fit_json = JsonValue::object();
            JsonValue rows = JsonValue::array();
            for (int r = 0; r < 3; ++r) {
                JsonValue row = JsonValue::array();
                for (int c = 0; c < 3; ++c) {
                    row.push(JsonValue::number(fit_result.m[r][c]));
                }
                rows.push(std::move(row));
            }
            fit_json.add("matrix", std::move(rows));
            fit_json.add("residual", JsonValue::number(fit_result.residual));
            report.add("fit", std::move(fit_json));
            report.add("errors", JsonValue::array());
            emit(ball_opts, report);
            return ok ? 0 : 1;
        }

        if (rec->parsed()) {
            active = &rec_opts;
            report = report_base("reconstruct", rec_opts);
            report.add("oracle", JsonValue::string(rec_oracle));
            const OracleSpec spec = resolve_oracle(rec_oracle, rec_n, rec_opts.seed);
            const ReconstructionResult result =
                reconstruct_measurement_map(spec.oracle, rec_opts.samples, rec_opts.seed);
            report.add("M", matrix_json(result.map.matrix(), "matrix"));
            report.add("transpose", JsonValue::boolean(result.map.transposed()));
            report.add("residual", JsonValue::number(result.residual));
            report.add("branch_margin", JsonValue::number(result.branch_margin));
            report.add("queries", JsonValue::uinteger(result.queries));
            report.add("choi_min_eigenvalue",
                       JsonValue::number(choi_branch_min_eigenvalue(result.map)));
            report.add("errors", JsonValue::array());
            emit(rec_opts, report);
            return 0;
        }

        if (fit->parsed()) {
            active = &fit_opts;
            report = report_base("fit-pales", fit_opts);
            std::vector<std::pair<DensityOperator, DensityOperator>> samples;
            if (!fit_pairs_path.empty()) {
                samples = read_sample_pairs(load_file(fit_pairs_path));
            } else if (!fit_oracle.empty()) {
                if (fit_count < 1) {
                    throw ParameterOutOfRange("--count is required with --oracle");
                }
                const OracleSpec spec = resolve_oracle(fit_oracle, fit_n, fit_opts.seed);
                samples.reserve(fit_count);
                for (int i = 0; i < fit_count; ++i) {
                    const DensityOperator rho =
                        random_density(spec.oracle.dim(), Rng::mix(fit_opts.seed, i));
                    samples.emplace_back(rho, spec.oracle.evaluate(rho));
                }
            } else {
                throw ParameterOutOfRange("fit-pales needs --pairs or --oracle");
            }
            const PalesFit result = fit_pales(samples);
            report.add("fit", fractional_linear_json(result.map));
            report.add("residual", JsonValue::number(result.residual));
            report.add("null_dimension", JsonValue::integer(result.null_dimension));
            report.add("denominator_min", JsonValue::number(result.denominator_min));
            report.add("scale_convention", JsonValue::string(result.scale_convention));
            report.add("errors", JsonValue::array());
            emit(fit_opts, report);
            return 0;
        }

        if (choi->parsed()) {
            active = &choi_opts;
            report = report_base("choi", choi_opts);
            report.add("map", JsonValue::string(choi_map));
            Superoperator super = [&]() {
                if (std::filesystem::exists(choi_map)) {
                    return linearize(read_measurement_map(load_file(choi_map)));
                }
                if (choi_n < 1) {
                    throw ParameterOutOfRange("built-in map '" + choi_map + "' needs --n");
                }
                if (choi_map == "identity") {
                    return identity_superoperator(choi_n);
                }
                if (choi_map == "transpose") {
                    return transpose_superoperator(choi_n);
                }
                throw InputError("unknown map '" + choi_map + "'");
            }();
            const ChoiMatrix c = choi_matrix(super);
            const EigenDecomposition eig = spectral_decompose(c.base().matrix());
            JsonValue values = JsonValue::array();
            for (double v : eig.values) {
                values.push(JsonValue::number(v));
            }
            report.add("eigenvalues", std::move(values));
            report.add("min_eigenvalue", JsonValue::number(eig.values.back()));
            report.add("cp", JsonValue::boolean(is_completely_positive(c, choi_opts.tol)));
            report.add("errors", JsonValue::array());
            emit(choi_opts, report);
            return 0;
        }

        if (nested->parsed()) {
            active = &nested_opts;
            report = report_base("nested-check", nested_opts);
            report.add("oracle", JsonValue::string(nested_oracle));
            const OracleSpec spec = resolve_oracle(nested_oracle, nested_n, nested_opts.seed);
            const bool ok = nested_subspace_consistency(spec.oracle, nested_k1, nested_k2,
                                                        nested_trials, nested_opts.seed);
            report.add("consistent", JsonValue::boolean(ok));
            report.add("errors", JsonValue::array());
            emit(nested_opts, report);
            return ok ? 0 : 1;
        }
    } catch (const Error &e) {
        if (is_usage_error(e) || active == nullptr) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        JsonValue errors = JsonValue::array();
        errors.push(JsonValue::string(e.name()));
        report.add("errors", std::move(errors));
        report.add("error_message", JsonValue::string(e.what()));
        emit(*active, report);
        return 1;
    }
    return 2;
}

}  // namespace segmap
