// Copyright 2026 The qgrad Authors
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

#include <cstdio>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "qgrad/errors.hpp"
#include "qgrad/runner.hpp"

namespace {

// Exit codes: 0 ok, 2 config error, 3 I/O error, 4 degenerate input.
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitDegenerate = 4;

struct CliOptions {
    qgrad::RunConfig cfg;
    std::string encoding = "qpie";
    std::string method;
    std::string shots = "1000000";
    std::string window = "gaussian";
};

void add_common_flags(CLI::App *cmd, CliOptions &opt) {
    cmd->add_option("--input", opt.cfg.inputs, "Input image(s), PGM (P5) or 8-bit PNG")
        ->required();
    cmd->add_option("--output-dir", opt.cfg.output_dir, "Artifact directory (created if missing)");
    cmd->add_option("--encoding", opt.encoding, "qpie | frqi-linear | frqi-arcsin");
    cmd->add_option("--seed", opt.cfg.seed, "Master seed; per-image sub-seeds derive from it");
    cmd->add_option("--resolution", opt.cfg.resolution, "Working resolution (64..1024, power of two)");
    cmd->add_option("--tau-fraction", opt.cfg.tau_fraction, "Edge threshold as fraction of max");
    cmd->add_option("--kappa", opt.cfg.kappa, "Harris sensitivity");
    cmd->add_option("--window", opt.window, "Harris window: gaussian | rect");
}

qgrad::Encoding parse_encoding(const std::string &token) {
    if (token == "qpie") {
        return qgrad::Encoding::Qpie;
    }
    if (token == "frqi-linear") {
        return qgrad::Encoding::FrqiLinear;
    }
    if (token == "frqi-arcsin") {
        return qgrad::Encoding::FrqiArcsin;
    }
    throw qgrad::ConfigError("unknown encoding '" + token + "'");
}

qgrad::Method parse_method(const std::string &token) {
    static const std::map<std::string, qgrad::Method> kMethods = {
        {"sobel", qgrad::Method::Sobel},
        {"qhed", qgrad::Method::Qhed},
        {"qhcd", qgrad::Method::Qhcd},
        {"qhed-corner", qgrad::Method::QhedCorner},
        {"classical-harris", qgrad::Method::ClassicalHarris},
    };
    const auto it = kMethods.find(token);
    if (it == kMethods.end()) {
        throw qgrad::ConfigError("unknown method '" + token + "'");
    }
    return it->second;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qgrad: statevector-simulated quantum gradient kernels driving Sobel edge "
                 "detection and Harris corner detection"};
    app.require_subcommand(1);

    CliOptions opt;

    CLI::App *reconstruct = app.add_subcommand(
        "reconstruct", "Encode, sample (or read exactly), decode, and score reconstruction");
    add_common_flags(reconstruct, opt);
    reconstruct->add_option("--shots", opt.shots, "Measurement shots, or 'exact'");

    CLI::App *edge = app.add_subcommand("edge", "Edge maps via sobel or qhed");
    add_common_flags(edge, opt);
    edge->add_option("--method", opt.method, "sobel | qhed (default sobel)");

    CLI::App *corner =
        app.add_subcommand("corner", "Corners via qhcd, qhed-corner or classical-harris");
    add_common_flags(corner, opt);
    corner->add_option("--method", opt.method, "qhcd | qhed-corner | classical-harris (default qhcd)");
    corner->add_option("--truth", opt.cfg.truth_path, "Ground-truth corner CSV (x,y per line)");

    CLI::App *metrics = app.add_subcommand(
        "metrics", "Edge-map metrics of an input, or ssim/relative difference vs --reference");
    add_common_flags(metrics, opt);
    metrics->add_option("--reference", opt.cfg.reference_path, "Reference image for pair metrics");

    CLI::App *bench = app.add_subcommand("bench", "Stage timings across the resolution grid");
    add_common_flags(bench, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help / --version
        }
        std::fprintf(stderr, "%s\n", e.what());
        return kExitConfig;
    }

    try {
        if (reconstruct->parsed()) {
            opt.cfg.command = qgrad::Command::Reconstruct;
            if (opt.shots == "exact") {
                opt.cfg.exact = true;
            } else {
                opt.cfg.exact = false;
                try {
                    opt.cfg.shots = std::stoull(opt.shots);
                } catch (const std::exception &) {
                    throw qgrad::ConfigError("--shots must be a positive integer or 'exact'");
                }
            }
        } else if (edge->parsed()) {
            opt.cfg.command = qgrad::Command::Edge;
            opt.cfg.method = parse_method(opt.method.empty() ? "sobel" : opt.method);
        } else if (corner->parsed()) {
            opt.cfg.command = qgrad::Command::Corner;
            opt.cfg.method = parse_method(opt.method.empty() ? "qhcd" : opt.method);
        } else if (metrics->parsed()) {
            opt.cfg.command = qgrad::Command::Metrics;
        } else if (bench->parsed()) {
            opt.cfg.command = qgrad::Command::Bench;
        }
        opt.cfg.encoding = parse_encoding(opt.encoding);
        if (opt.window == "gaussian") {
            opt.cfg.window = qgrad::WindowKind::Gaussian3;
        } else if (opt.window == "rect") {
            opt.cfg.window = qgrad::WindowKind::Rect3;
        } else {
            throw qgrad::ConfigError("unknown window '" + opt.window + "'");
        }
        qgrad::run(opt.cfg);
    } catch (const qgrad::ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const qgrad::IoError &e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kExitIo;
    } catch (const qgrad::DegenerateInputError &e) {
        std::fprintf(stderr, "degenerate input: %s\n", e.what());
        return kExitDegenerate;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
