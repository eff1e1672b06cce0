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

#ifndef QGRAD_RUNNER_HPP
#define QGRAD_RUNNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qgrad/corner.hpp"
#include "qgrad/gradient_kernel.hpp"

namespace qgrad {

enum class Command { Reconstruct, Edge, Corner, Metrics, Bench };
enum class Method { Sobel, Qhed, Qhcd, QhedCorner, ClassicalHarris };

/// Resolved run configuration. Detection commands read the state vector
/// exactly (no sampling); reconstruction samples unless exact is set.
struct RunConfig {
    Command command = Command::Edge;
    std::vector<std::string> inputs;
    std::string output_dir = ".";
    Encoding encoding = Encoding::Qpie;
    Method method = Method::Sobel;
    bool exact = false;               // reconstruct only; detection is always exact
    std::uint64_t shots = 1000000;
    std::uint64_t seed = 7;
    int resolution = 512;
    double tau_fraction = 0.2;
    double kappa = 0.05;
    WindowKind window = WindowKind::Gaussian3;
    std::string truth_path;           // optional corner ground truth CSV
    std::string reference_path;       // metrics command: compare against this image
};

/// Throws ConfigError on any invariant violation (bad resolution, missing
/// inputs, method/command mismatch, ...).
void validate_config(const RunConfig &cfg);

/// Executes the run: processes inputs (concurrently up to QGRAD_THREADS),
/// writes artifacts named <stem>.<encoding>.<method>.<artifact>.<ext> under
/// output_dir plus a manifest.json echoing the resolved config.
void run(const RunConfig &cfg);

/// Per-image deterministic sub-seed of the master seed (splitmix64 mix).
std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index);

/// Parses a ground-truth corner CSV of "x,y" lines (optional header).
std::vector<std::pair<int, int>> load_truth_csv(const std::string &path, int resolution);

std::string to_token(Encoding e);
std::string to_token(Method m);
std::string to_token(CornerSource s);

} // namespace qgrad

#endif
