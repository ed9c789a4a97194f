// Copyright 2026 The trapwalk Authors
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

#include "trapwalk/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "trapwalk/io.hpp"
#include "trapwalk/spectral.hpp"
#include "trapwalk/walk.hpp"

namespace trapwalk::cli {

using io::json;

namespace {

std::string normalized_family(const std::string &name) {
    if (name == "I" || name == "TypeI") return "TypeI";
    if (name == "IIa" || name == "TypeIIa") return "TypeIIa";
    if (name == "IIb" || name == "TypeIIb") return "TypeIIb";
    throw Error(ErrorKind::InvalidInput, "unknown family '" + name + "' (expected I, IIa or IIb)");
}

void emit(const RunConfig &cfg, std::ostream &out, const std::string &content) {
    if (cfg.output.empty() || cfg.output == "-") {
        out << content;
    } else {
        io::write_file_atomic(cfg.output, content);
    }
}

std::string join_path(const std::string &dir, const std::string &name) {
    return (std::filesystem::path(dir) / name).string();
}

Matrix4 load_coin(const RunConfig &cfg) {
    return io::coin_from_json(json::parse(io::read_file(cfg.coin_path)));
}

/// The coin named on the command line: a JSON file if given, else a family.
Matrix4 resolve_coin(const RunConfig &cfg) {
    if (!cfg.coin_path.empty()) return load_coin(cfg);
    if (cfg.family.empty()) {
        throw Error(ErrorKind::InvalidInput, "give either --coin FILE or --family");
    }
    return make_coin(family_params(cfg));
}

std::vector<double> split_numbers(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw Error(ErrorKind::InvalidInput, "cannot parse number '" + item + "'");
        }
    }
    return out;
}

Vector4 resolve_initial(const std::string &spec, const Matrix4 &coin, const ClassifyOptions &opts) {
    if (spec == "L") return Vector4::Unit(L);
    if (spec == "D") return Vector4::Unit(D);
    if (spec == "U") return Vector4::Unit(U);
    if (spec == "R") return Vector4::Unit(R);
    if (spec == "fig2") {
        Vector4 v;
        v << 0.5, Complex(0, 0.5), Complex(0, 0.5), 0.5;
        return v;
    }
    if (spec == "fig6") {
        Vector4 v;
        v << 0.5, 0.5, 0.5, Complex(0, 0.5);
        return v;
    }
    if (spec == "escape") {
        const MatrixX basis = escaping_subspace(coin, opts);
        if (basis.cols() == 0) {
            throw Error(ErrorKind::InvalidInput, "coin has no escaping state");
        }
        return basis.col(0);
    }
    const std::vector<double> nums = split_numbers(spec);
    if (nums.size() != 8) {
        throw Error(ErrorKind::InvalidInput,
                    "initial state must be L, D, U, R, fig2, fig6, escape or 8 numbers re,im,...");
    }
    Vector4 v;
    for (int c = 0; c < 4; ++c) v(c) = Complex(nums[2 * c], nums[2 * c + 1]);
    return v;
}

DispersionSpec resolve_dispersion(const RunConfig &cfg, const Matrix4 &coin) {
    if (cfg.coin_path.empty()) return dispersion_spec(family_params(cfg));
    const ClassificationResult res = classify_coin(coin, cfg.classify);
    if (!res.recovered_params) {
        throw Error(ErrorKind::Inconsistency,
                    "coin is not a recognized family member; no dispersion relation available");
    }
    return dispersion_spec(*res.recovered_params);
}

void run_simulation(const Matrix4 &coin, const Vector4 &init, int steps,
                    std::vector<int> snapshots, const std::string &dir, double floor) {
    if (snapshots.empty()) snapshots.push_back(steps);
    const Trajectory traj = simulate(coin, initial_state(init), steps, snapshots);
    for (const auto &[t, dist] : traj.snapshots) {
        io::write_file_atomic(join_path(dir, "dist_t" + std::to_string(t) + ".csv"),
                              io::distribution_csv(dist, floor));
    }
    io::write_file_atomic(join_path(dir, "trajectory.csv"), io::trajectory_csv(traj));
}

struct FigurePreset {
    FamilyParams params;
    std::string init;
};

FigurePreset figure_preset(const std::string &name) {
    if (name == "fig2") {
        TypeIParams p;
        p.delta1 = kPi / 3;
        p.delta2 = kPi / 4;
        return {p, "fig2"};
    }
    if (name == "fig4") {
        TypeIIaParams p;
        p.delta1 = kPi / 6;
        p.delta2 = kPi / 4;
        p.delta3 = kPi / 4;
        p.eta = kPi;
        return {p, "escape"};
    }
    if (name == "fig6") {
        TypeIIbParams p;
        p.variant = 1;
        p.delta = kPi / 4;
        return {p, "fig6"};
    }
    throw Error(ErrorKind::InvalidInput, "unknown figure '" + name + "' (expected fig2, fig4, fig6)");
}

void run_figure(const RunConfig &cfg, std::ostream &out) {
    const FigurePreset preset = figure_preset(cfg.figure);
    const Matrix4 coin = make_coin(preset.params);
    const Vector4 init = resolve_initial(preset.init, coin, cfg.classify);
    const int steps = 50;
    const SpreadRegion region = spread_region(dispersion_spec(preset.params));

    const Trajectory traj = simulate(coin, initial_state(init), steps, {steps});
    const Distribution &dist = traj.snapshots.at(steps);

    io::write_file_atomic(join_path(cfg.out_dir, "coin.json"),
                          io::coin_to_json(coin, preset.params).dump(2) + "\n");
    io::write_file_atomic(join_path(cfg.out_dir, "region.json"),
                          io::region_to_json(region).dump(2) + "\n");
    io::write_file_atomic(join_path(cfg.out_dir, "dist_t50.csv"),
                          io::distribution_csv(dist, cfg.floor));
    io::write_file_atomic(join_path(cfg.out_dir, "trajectory.csv"), io::trajectory_csv(traj));

    json summary;
    summary["figure"] = cfg.figure;
    summary["steps"] = steps;
    summary["initial"] = json::array();
    for (int c = 0; c < 4; ++c) summary["initial"].push_back(io::complex_to_json(init(c)));
    summary["origin_time_average"] = origin_time_average(traj);
    if (!region.segment) {
        summary["coverage_outside_1.05"] = coverage_fraction(dist, region, 1.05, cfg.floor);
    } else {
        // One-dimensional spreading: report leakage off the strip and past the light cone.
        const double edge = 1.05 * steps * std::cos(std::get<TypeIIbParams>(preset.params).delta) + 5;
        double off_strip = 0.0, beyond = 0.0;
        for (int y = -dist.radius; y <= dist.radius; ++y) {
            for (int x = -dist.radius; x <= dist.radius; ++x) {
                const double p = dist.at(x, y);
                if (std::abs(y) >= 2) off_strip = std::max(off_strip, p);
                if (std::abs(x) > edge) beyond += p;
            }
        }
        summary["max_probability_off_strip"] = off_strip;
        summary["mass_beyond_light_cone"] = beyond;
    }
    io::write_file_atomic(join_path(cfg.out_dir, "summary.json"), summary.dump(2) + "\n");
    out << summary.dump(2) << "\n";
}

}  // namespace

FamilyParams family_params(const RunConfig &cfg) {
    const double f = cfg.degrees ? kPi / 180.0 : 1.0;
    const std::string fam = normalized_family(cfg.family);
    if (fam == "TypeI") {
        TypeIParams p;
        p.delta1 = cfg.delta1 * f;
        p.delta2 = cfg.delta2 * f;
        p.phi_d = cfg.phi_d * f;
        p.phi_e = cfg.phi_e * f;
        p.phi_f = cfg.phi_f * f;
        p.phi_g = cfg.phi_g * f;
        p.phi_h = cfg.phi_h * f;
        return p;
    }
    if (fam == "TypeIIa") {
        TypeIIaParams p;
        p.delta1 = cfg.delta1 * f;
        p.delta2 = cfg.delta2 * f;
        p.delta3 = cfg.delta3 * f;
        p.eta = cfg.eta ? *cfg.eta * f : kPi;
        p.phi_d = cfg.phi_d * f;
        p.phi_e = cfg.phi_e * f;
        p.phi_f = cfg.phi_f * f;
        p.phi_g = cfg.phi_g * f;
        p.phi_h = cfg.phi_h * f;
        return p;
    }
    TypeIIbParams p;
    p.variant = cfg.variant;
    p.delta = cfg.delta * f;
    p.varphi = cfg.varphi * f;
    p.alpha = cfg.alpha * f;
    p.beta = cfg.beta * f;
    p.gamma = cfg.gamma * f;
    p.phi_f = cfg.phi_f * f;
    return p;
}

void dispatch(const RunConfig &cfg, std::ostream &out) {
    const std::string &cmd = cfg.subcommand;
    if (cmd == "coin") {
        const FamilyParams p = family_params(cfg);
        emit(cfg, out, io::coin_to_json(make_coin(p), p).dump(2) + "\n");
    } else if (cmd == "classify") {
        const ClassificationResult res = classify_coin(load_coin(cfg), cfg.classify);
        emit(cfg, out, io::classification_to_json(res).dump(2) + "\n");
    } else if (cmd == "escape") {
        emit(cfg, out, io::escaping_to_json(escaping_subspace(load_coin(cfg), cfg.classify)).dump(2) + "\n");
    } else if (cmd == "simulate") {
        const Matrix4 coin = resolve_coin(cfg);
        run_simulation(coin, resolve_initial(cfg.init, coin, cfg.classify), cfg.steps,
                       cfg.snapshots, cfg.out_dir, cfg.floor);
    } else if (cmd == "spectrum") {
        const Matrix4 coin = resolve_coin(cfg);
        emit(cfg, out, io::spectrum_csv(spectrum_grid(resolve_dispersion(cfg, coin), cfg.grid)));
    } else if (cmd == "region") {
        emit(cfg, out, io::region_to_json(spread_region(dispersion_spec(family_params(cfg)))).dump(2) + "\n");
    } else if (cmd == "areasweep") {
        emit(cfg, out, io::area_sweep_csv(area_sweep(cfg.grid)));
    } else if (cmd == "figure") {
        run_figure(cfg, out);
    } else {
        throw Error(ErrorKind::InvalidInput, "unknown subcommand '" + cmd + "'");
    }
}

namespace {

struct AngleOptions {
    double eta = kPi;
    CLI::Option *eta_opt = nullptr;
};

void add_family_options(CLI::App *sub, RunConfig &cfg, AngleOptions &angles) {
    sub->add_option("--family", cfg.family, "Coin family: I, IIa or IIb");
    sub->add_option("--variant", cfg.variant, "Type IIb variant (1 or 2)");
    sub->add_option("--delta1", cfg.delta1);
    sub->add_option("--delta2", cfg.delta2);
    sub->add_option("--delta3", cfg.delta3);
    angles.eta_opt = sub->add_option("--eta", angles.eta, "Escaping-direction phase (default pi)");
    sub->add_option("--phi-d", cfg.phi_d);
    sub->add_option("--phi-e", cfg.phi_e);
    sub->add_option("--phi-f", cfg.phi_f);
    sub->add_option("--phi-g", cfg.phi_g);
    sub->add_option("--phi-h", cfg.phi_h);
    sub->add_option("--delta", cfg.delta);
    sub->add_option("--varphi", cfg.varphi);
    sub->add_option("--alpha", cfg.alpha);
    sub->add_option("--beta", cfg.beta);
    sub->add_option("--gamma", cfg.gamma);
    sub->add_flag("--degrees", cfg.degrees, "Angles are given in degrees");
}

void add_classify_options(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--seed", cfg.classify.seed, "Seed for the k-sample selection");
    sub->add_option("--samples", cfg.classify.n_samples, "Random k samples (>= 4)");
    sub->add_option("--cluster-tol", cfg.classify.cluster_tol);
    sub->add_option("--rank-tol", cfg.classify.rank_tol);
}

void apply_thread_cap() {
    const char *env = std::getenv("TRAPWALK_THREADS");
    if (env == nullptr || *env == '\0') return;
    char *end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) {
        throw Error(ErrorKind::InvalidInput, "TRAPWALK_THREADS must be a positive integer");
    }
    omp_set_num_threads(static_cast<int>(std::min<long>(n, omp_get_num_procs())));
}

}  // namespace

int run(int argc, const char *const *argv) {
    RunConfig cfg;
    AngleOptions angles;
    CLI::App app{"Trapping coins for the four-state quantum walk on the square lattice"};
    app.require_subcommand(1);

    auto *coin = app.add_subcommand("coin", "Construct a family coin and print its JSON");
    add_family_options(coin, cfg, angles);
    coin->add_option("-o,--output", cfg.output, "Output file (default stdout)");

    auto *classify = app.add_subcommand("classify", "Classify a coin given as JSON");
    classify->add_option("coin", cfg.coin_path, "Coin JSON file")->required();
    classify->add_option("-o,--output", cfg.output);
    add_classify_options(classify, cfg);

    auto *escape = app.add_subcommand("escape", "Escaping subspace of a coin given as JSON");
    escape->add_option("coin", cfg.coin_path, "Coin JSON file")->required();
    escape->add_option("-o,--output", cfg.output);
    add_classify_options(escape, cfg);

    auto *sim = app.add_subcommand("simulate", "Simulate the walk from a point-localized state");
    add_family_options(sim, cfg, angles);
    sim->add_option("--coin", cfg.coin_path, "Coin JSON file (instead of --family)");
    sim->add_option("--init", cfg.init, "L, D, U, R, escape, fig2, fig6 or re,im x4");
    sim->add_option("--steps", cfg.steps)->check(CLI::PositiveNumber);
    sim->add_option("--snapshots", cfg.snapshots, "Times to write dist_t{t}.csv")->delimiter(',');
    sim->add_option("--out-dir", cfg.out_dir);
    sim->add_option("--floor", cfg.floor, "Drop sites with P <= floor from distribution CSVs");
    add_classify_options(sim, cfg);

    auto *spec = app.add_subcommand("spectrum", "Dispersion and group velocities on a k-grid");
    add_family_options(spec, cfg, angles);
    spec->add_option("--coin", cfg.coin_path);
    spec->add_option("--grid", cfg.grid)->check(CLI::PositiveNumber);
    spec->add_option("-o,--output", cfg.output);
    add_classify_options(spec, cfg);

    auto *region = app.add_subcommand("region", "Spreading region of a family coin");
    add_family_options(region, cfg, angles);
    region->add_option("-o,--output", cfg.output);

    auto *sweep = app.add_subcommand("areasweep", "Covered area of Type I coins over (delta1, delta2)");
    sweep->add_option("--grid", cfg.grid)->check(CLI::Range(2, 4096));
    sweep->add_option("-o,--output", cfg.output);

    auto *figure = app.add_subcommand("figure", "Run a named preset (fig2, fig4, fig6) end to end");
    figure->add_option("name", cfg.figure, "fig2, fig4 or fig6")->required();
    figure->add_option("--out-dir", cfg.out_dir);
    figure->add_option("--floor", cfg.floor);
    add_classify_options(figure, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    for (CLI::App *sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
    if (cfg.subcommand == "areasweep" && sweep->count("--grid") == 0) cfg.grid = 50;
    if (angles.eta_opt != nullptr && angles.eta_opt->count() > 0) cfg.eta = angles.eta;

    try {
        apply_thread_cap();
        dispatch(cfg, std::cout);
    } catch (const Error &e) {
        std::cerr << io::error_to_json(e).dump() << "\n";
        return 2;
    } catch (const io::json::exception &e) {
        std::cerr << io::error_to_json(Error(ErrorKind::InvalidInput, e.what())).dump() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace trapwalk::cli
