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

#include "qgrad/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <thread>
#include <tuple>

#include "json.hpp"

#include "qgrad/errors.hpp"
#include "qgrad/frqi.hpp"
#include "qgrad/image_io.hpp"
#include "qgrad/metrics.hpp"
#include "qgrad/qpie.hpp"

namespace qgrad {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 step keyed by the image index.
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string to_token(Encoding e) {
    switch (e) {
        case Encoding::Qpie: return "qpie";
        case Encoding::FrqiLinear: return "frqi-linear";
        case Encoding::FrqiArcsin: return "frqi-arcsin";
    }
    return "?";
}

std::string to_token(Method m) {
    switch (m) {
        case Method::Sobel: return "sobel";
        case Method::Qhed: return "qhed";
        case Method::Qhcd: return "qhcd";
        case Method::QhedCorner: return "qhed-corner";
        case Method::ClassicalHarris: return "classical-harris";
    }
    return "?";
}

std::string to_token(CornerSource s) {
    switch (s) {
        case CornerSource::QhcdSobel: return "qhcd-sobel";
        case CornerSource::QhedHeuristic: return "qhed-heuristic";
        case CornerSource::ClassicalHarris: return "classical-harris";
    }
    return "?";
}

namespace {

std::string command_token(Command c) {
    switch (c) {
        case Command::Reconstruct: return "reconstruct";
        case Command::Edge: return "edge";
        case Command::Corner: return "corner";
        case Command::Metrics: return "metrics";
        case Command::Bench: return "bench";
    }
    return "?";
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string format_score(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string stem_of(const std::string &path) {
    return fs::path(path).stem().string();
}

void write_text(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << content;
    if (!out) {
        throw IoError("write failed for " + path);
    }
}

struct MetricRow {
    std::string image;
    std::string encoding;
    std::string method;
    std::string metric;
    std::string value;

    bool operator<(const MetricRow &o) const {
        return std::tie(image, encoding, method, metric, value) <
               std::tie(o.image, o.encoding, o.method, o.metric, o.value);
    }
};

struct CsvRows {
    std::string text = "image,encoding,method,metric,value\n";
    std::vector<MetricRow> rows;

    void add(const std::string &image, const std::string &enc, const std::string &method,
             const std::string &metric, const std::string &value) {
        text += image + "," + enc + "," + method + "," + metric + "," + value + "\n";
        rows.push_back(MetricRow{image, enc, method, metric, value});
    }
};

int max_threads() {
    if (const char *env = std::getenv("QGRAD_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) {
            return n;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

GrayImage load_and_resize(const std::string &path, int resolution) {
    return resize_pow2(load_grayscale(path), resolution);
}

HarrisConfig harris_config_from(const RunConfig &cfg) {
    HarrisConfig hc;
    hc.kappa = cfg.kappa;
    hc.window = cfg.window;
    hc.edge_config = EdgeConfig{TauMode::FractionOfMax, cfg.tau_fraction};
    return hc;
}

std::string artifact_base(const RunConfig &cfg, const std::string &input) {
    const std::string method = cfg.command == Command::Reconstruct ? command_token(cfg.command)
                                                                   : to_token(cfg.method);
    return (fs::path(cfg.output_dir) /
            (stem_of(input) + "." + to_token(cfg.encoding) + "." + method))
        .string();
}

// ---- reconstruct ---------------------------------------------------------

GrayImage reconstruct_exact(const GrayImage &img, Encoding enc) {
    if (enc == Encoding::Qpie) {
        return devectorize(qpie_decode_exact(qpie_encode(vectorize(img))), img.bit_depth);
    }
    const FrqiMode mode = enc == Encoding::FrqiArcsin ? FrqiMode::Arcsin : FrqiMode::Linear;
    const FrqiState f = frqi_encode(img, mode);
    // Exact readout: sin(theta_i) straight from the statevector amplitudes.
    const double root_n = std::sqrt(static_cast<double>(std::size_t{1} << f.r));
    const double maxv = static_cast<double>(img.max_value());
    ImageVector v;
    v.width = img.width;
    v.height = img.height;
    v.values.resize(static_cast<std::size_t>(img.width) * img.height);
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        const double sin_theta = std::clamp(f.state.amplitudes[2 * i + 1] * root_n, 0.0, 1.0);
        v.values[i] = mode == FrqiMode::Arcsin
                          ? maxv * sin_theta
                          : std::asin(sin_theta) * 2.0 * maxv / std::numbers::pi;
    }
    return devectorize(v, img.bit_depth);
}

GrayImage reconstruct_sampled(const GrayImage &img, Encoding enc, std::uint64_t shots,
                              std::uint64_t seed) {
    if (enc == Encoding::Qpie) {
        const QpieState q = qpie_encode(vectorize(img));
        const CountsMap counts = sample_measurements(q.state, shots, seed);
        return devectorize(qpie_decode_counts(counts, q.l2_norm, img.width, img.height),
                           img.bit_depth);
    }
    const FrqiMode mode = enc == Encoding::FrqiArcsin ? FrqiMode::Arcsin : FrqiMode::Linear;
    const FrqiState f = frqi_encode(img, mode);
    const CountsMap counts = sample_measurements(f.state, shots, seed);
    return devectorize(
        frqi_decode_counts(counts, img.bit_depth, f.r, mode, img.width, img.height),
        img.bit_depth);
}

std::vector<MetricRow> run_reconstruct_one(const RunConfig &cfg, const std::string &input,
                                           std::uint64_t seed) {
    const GrayImage original = load_and_resize(input, cfg.resolution);
    const GrayImage restored = cfg.exact
                                   ? reconstruct_exact(original, cfg.encoding)
                                   : reconstruct_sampled(original, cfg.encoding, cfg.shots, seed);
    const std::string base = artifact_base(cfg, input);
    save_png_gray(restored, base + ".reconstructed.png");
    CsvRows rows;
    const std::string stem = stem_of(input);
    const std::string enc = to_token(cfg.encoding);
    rows.add(stem, enc, "reconstruct", "ssim", format_double(ssim(original, restored)));
    rows.add(stem, enc, "reconstruct", "relative_difference",
             format_double(relative_difference(original, restored)));
    rows.add(stem, enc, "reconstruct", "shots",
             cfg.exact ? "exact" : std::to_string(cfg.shots));
    write_text(base + ".metrics.csv", rows.text);
    return rows.rows;
}

// ---- edge ----------------------------------------------------------------

EdgeMap edge_map_for(const RunConfig &cfg, const GrayImage &img) {
    const EdgeConfig ec{TauMode::FractionOfMax, cfg.tau_fraction};
    if (cfg.method == Method::Qhed) {
        return qhed_edge_map(img, cfg.encoding, ec);
    }
    const DiffPair pair = lag2_both_axes(img, cfg.encoding);
    const GradientField field = sobel_from_lag2(pair.dx, pair.dy);
    return threshold_edges(gradient_magnitude(field), img.width, img.height, ec);
}

GrayImage edge_map_to_image(const EdgeMap &map) {
    GrayImage img;
    img.width = map.width;
    img.height = map.height;
    img.pixels.resize(map.bits.size());
    for (std::size_t p = 0; p < map.bits.size(); ++p) {
        img.pixels[p] = map.bits[p] ? 255 : 0;
    }
    return img;
}

std::vector<MetricRow> run_edge_one(const RunConfig &cfg, const std::string &input) {
    const GrayImage img = load_and_resize(input, cfg.resolution);
    const EdgeMap map = edge_map_for(cfg, img);
    const std::string base = artifact_base(cfg, input);
    const GrayImage rendered = edge_map_to_image(map);
    save_pgm(rendered, base + ".edges.pgm");
    save_png_gray(rendered, base + ".edges.png");
    const EdgeMetrics m = compute_edge_metrics(map);
    CsvRows rows;
    const std::string stem = stem_of(input);
    const std::string enc = to_token(cfg.encoding);
    const std::string method = to_token(cfg.method);
    rows.add(stem, enc, method, "ED", format_double(m.ed));
    rows.add(stem, enc, method, "ET", format_double(m.et));
    rows.add(stem, enc, method, "EF", std::to_string(m.ef));
    rows.add(stem, enc, method, "EE", format_double(m.ee));
    write_text(base + ".metrics.csv", rows.text);
    return rows.rows;
}

// ---- corner --------------------------------------------------------------

void draw_cross(std::vector<std::uint8_t> &rgb, int width, int height, int x, int y) {
    auto paint = [&](int px, int py) {
        if (px < 0 || px >= width || py < 0 || py >= height) {
            return;
        }
        const std::size_t p = (static_cast<std::size_t>(py) * width + px) * 3;
        rgb[p] = 255;
        rgb[p + 1] = 0;
        rgb[p + 2] = 0;
    };
    paint(x, y);
    paint(x - 1, y);
    paint(x + 1, y);
    paint(x, y - 1);
    paint(x, y + 1);
}

std::vector<MetricRow> run_corner_one(const RunConfig &cfg, const std::string &input) {
    const GrayImage img = load_and_resize(input, cfg.resolution);
    const HarrisConfig hc = harris_config_from(cfg);
    CornerSet set;
    switch (cfg.method) {
        case Method::Qhcd: set = qhcd(img, cfg.encoding, hc); break;
        case Method::QhedCorner: set = qhed_corner_heuristic(img, cfg.encoding, hc); break;
        case Method::ClassicalHarris: set = classical_harris(img, hc); break;
        default:
            throw ConfigError("corner command supports qhcd, qhed-corner or classical-harris");
    }
    const std::string base = artifact_base(cfg, input);
    std::string csv = "x,y,score,source\n";
    for (const Corner &c : set.corners) {
        csv += std::to_string(c.x) + "," + std::to_string(c.y) + "," + format_score(c.score) +
               "," + to_token(set.source) + "\n";
    }
    write_text(base + ".corners.csv", csv);

    std::vector<std::uint8_t> rgb(static_cast<std::size_t>(img.width) * img.height * 3);
    for (std::size_t p = 0; p < img.pixels.size(); ++p) {
        const auto v = static_cast<std::uint8_t>(std::clamp(img.pixels[p], 0, 255));
        rgb[3 * p] = v;
        rgb[3 * p + 1] = v;
        rgb[3 * p + 2] = v;
    }
    for (const Corner &c : set.corners) {
        draw_cross(rgb, img.width, img.height, c.x, c.y);
    }
    save_png_rgb(rgb, img.width, img.height, base + ".overlay.png");

    if (!cfg.truth_path.empty()) {
        const auto truth = load_truth_csv(cfg.truth_path, cfg.resolution);
        const CornerMetrics cm = corner_match(set, truth);
        CsvRows rows;
        const std::string stem = stem_of(input);
        const std::string enc = to_token(cfg.encoding);
        const std::string method = to_token(cfg.method);
        rows.add(stem, enc, method, "TP", std::to_string(cm.tp));
        rows.add(stem, enc, method, "FP", std::to_string(cm.fp));
        rows.add(stem, enc, method, "CDA", format_double(cm.cda));
        rows.add(stem, enc, method, "FPR", format_double(cm.fpr));
        write_text(base + ".metrics.csv", rows.text);
        return rows.rows;
    }
    return {};
}

// ---- metrics -------------------------------------------------------------

std::vector<MetricRow> run_metrics_one(const RunConfig &cfg, const std::string &input) {
    const GrayImage img = load_grayscale(input);
    const std::string stem = stem_of(input);
    CsvRows rows;
    if (!cfg.reference_path.empty()) {
        const GrayImage ref = load_grayscale(cfg.reference_path);
        rows.add(stem, "na", "metrics", "ssim", format_double(ssim(ref, img)));
        rows.add(stem, "na", "metrics", "relative_difference",
                 format_double(relative_difference(ref, img)));
    } else {
        EdgeMap map;
        map.width = img.width;
        map.height = img.height;
        map.bits.resize(img.pixels.size());
        for (std::size_t p = 0; p < img.pixels.size(); ++p) {
            map.bits[p] = img.pixels[p] >= 128 ? 1 : 0;
        }
        const EdgeMetrics m = compute_edge_metrics(map);
        rows.add(stem, "na", "metrics", "ED", format_double(m.ed));
        rows.add(stem, "na", "metrics", "ET", format_double(m.et));
        rows.add(stem, "na", "metrics", "EF", std::to_string(m.ef));
        rows.add(stem, "na", "metrics", "EE", format_double(m.ee));
    }
    write_text((fs::path(cfg.output_dir) / (stem + ".metrics.csv")).string(), rows.text);
    return rows.rows;
}

// ---- bench ---------------------------------------------------------------

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void run_bench_one(const RunConfig &cfg, const std::string &input) {
    const GrayImage full = load_grayscale(input);
    const HarrisConfig hc = harris_config_from(cfg);
    std::string csv = "image,encoding,resolution,stage,seconds\n";
    const std::string stem = stem_of(input);
    const std::string enc = to_token(cfg.encoding);
    std::printf("%-10s %-12s %-12s %-12s %-12s\n", "res", "encode", "kernel", "post", "total");
    std::vector<double> log_n;
    std::vector<double> log_t;
    for (int res = 64; res <= cfg.resolution; res *= 2) {
        const GrayImage img = resize_pow2(full, res);

        auto t0 = std::chrono::steady_clock::now();
        if (cfg.encoding == Encoding::Qpie) {
            (void)qpie_encode(vectorize(img));
        } else {
            (void)frqi_encode(img, FrqiMode::Linear);
        }
        const double t_encode = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        const DiffPair pair = lag2_both_axes(img, cfg.encoding);
        const double t_kernel = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        const GradientField field = sobel_from_lag2(pair.dx, pair.dy);
        const StructureTensorField tensor = structure_tensor(field, hc);
        CornerSet corners = nms_and_threshold(harris_response(tensor, hc.kappa), res, res, hc);
        const EdgeMap verify =
            threshold_edges(gradient_magnitude(field), res, res, hc.edge_config);
        corners = fast_like_filter(corners, verify, hc.filter_radius);
        const double t_post = seconds_since(t0);

        std::printf("%-10d %-12.4f %-12.4f %-12.4f %-12.4f\n", res, t_encode, t_kernel, t_post,
                    t_encode + t_kernel + t_post);
        csv += stem + "," + enc + "," + std::to_string(res) + ",encode," +
               format_double(t_encode) + "\n";
        csv += stem + "," + enc + "," + std::to_string(res) + ",kernel," +
               format_double(t_kernel) + "\n";
        csv += stem + "," + enc + "," + std::to_string(res) + ",post," + format_double(t_post) +
               "\n";
        log_n.push_back(std::log(static_cast<double>(res) * res));
        log_t.push_back(std::log(std::max(t_kernel, 1e-7)));
    }
    if (log_n.size() >= 2) {
        // Least-squares slope of log(kernel time) vs log(pixels).
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < log_n.size(); ++i) {
            mx += log_n[i];
            my += log_t[i];
        }
        mx /= static_cast<double>(log_n.size());
        my /= static_cast<double>(log_n.size());
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < log_n.size(); ++i) {
            num += (log_n[i] - mx) * (log_t[i] - my);
            den += (log_n[i] - mx) * (log_n[i] - mx);
        }
        std::printf("kernel-stage scaling exponent vs pixel count: %.2f\n", num / den);
    }
    write_text(artifact_base(cfg, input) + ".timings.csv", csv);
}

void write_manifest(const RunConfig &cfg) {
    json j;
    j["command"] = command_token(cfg.command);
    j["inputs"] = cfg.inputs;
    j["output_dir"] = cfg.output_dir;
    j["encoding"] = to_token(cfg.encoding);
    j["method"] = to_token(cfg.method);
    j["shots"] = cfg.exact ? json("exact") : json(cfg.shots);
    j["seed"] = cfg.seed;
    j["resolution"] = cfg.resolution;
    j["tau_fraction"] = cfg.tau_fraction;
    j["kappa"] = cfg.kappa;
    j["window"] = cfg.window == WindowKind::Gaussian3 ? "gaussian" : "rect";
    j["truth"] = cfg.truth_path;
    j["reference"] = cfg.reference_path;
    write_text((fs::path(cfg.output_dir) / "manifest.json").string(), j.dump(2) + "\n");
}

} // namespace

void validate_config(const RunConfig &cfg) {
    if (cfg.inputs.empty()) {
        throw ConfigError("no input files given");
    }
    const int r = cfg.resolution;
    if (r != 64 && r != 128 && r != 256 && r != 512 && r != 1024) {
        throw ConfigError("resolution must be one of 64, 128, 256, 512, 1024");
    }
    if (!cfg.exact && cfg.shots < 1) {
        throw ConfigError("shots must be >= 1 (or exact)");
    }
    if (cfg.tau_fraction <= 0.0 || cfg.tau_fraction > 1.0) {
        throw ConfigError("tau fraction must be in (0, 1]");
    }
    if (cfg.kappa <= 0.0 || cfg.kappa >= 0.25) {
        throw ConfigError("kappa must be in (0, 0.25)");
    }
    switch (cfg.command) {
        case Command::Edge:
            if (cfg.method != Method::Sobel && cfg.method != Method::Qhed) {
                throw ConfigError("edge command supports methods sobel and qhed");
            }
            break;
        case Command::Corner:
            if (cfg.method != Method::Qhcd && cfg.method != Method::QhedCorner &&
                cfg.method != Method::ClassicalHarris) {
                throw ConfigError(
                    "corner command supports methods qhcd, qhed-corner and classical-harris");
            }
            break;
        default:
            break;
    }
    if ((cfg.command == Command::Edge || cfg.command == Command::Corner ||
         cfg.command == Command::Bench) &&
        cfg.encoding == Encoding::FrqiArcsin) {
        throw ConfigError("detection pipelines use qpie or frqi-linear encoding");
    }
}

void run(const RunConfig &cfg) {
    validate_config(cfg);
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + cfg.output_dir);
    }
    write_manifest(cfg);

    const int workers =
        std::min<int>(max_threads(), static_cast<int>(cfg.inputs.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex shared_mutex;
    std::vector<MetricRow> summary;

    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.inputs.size()) {
                return;
            }
            try {
                const std::string &input = cfg.inputs[i];
                std::vector<MetricRow> rows;
                switch (cfg.command) {
                    case Command::Reconstruct:
                        rows = run_reconstruct_one(cfg, input, sub_seed(cfg.seed, i));
                        break;
                    case Command::Edge: rows = run_edge_one(cfg, input); break;
                    case Command::Corner: rows = run_corner_one(cfg, input); break;
                    case Command::Metrics: rows = run_metrics_one(cfg, input); break;
                    case Command::Bench: run_bench_one(cfg, input); break;
                }
                if (!rows.empty()) {
                    std::lock_guard<std::mutex> lock(shared_mutex);
                    summary.insert(summary.end(), rows.begin(), rows.end());
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(shared_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                return;
            }
        }
    };

    if (workers <= 1 || cfg.command == Command::Bench) {
        worker(); // bench timings stay serial
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    if (cfg.command != Command::Bench) {
        // Per-run metric summary; sorted so parallel scheduling cannot
        // change the bytes.
        std::sort(summary.begin(), summary.end());
        json rows_json = json::array();
        for (const MetricRow &r : summary) {
            rows_json.push_back({{"image", r.image},
                                 {"encoding", r.encoding},
                                 {"method", r.method},
                                 {"metric", r.metric},
                                 {"value", r.value}});
        }
        json j;
        j["command"] = command_token(cfg.command);
        j["rows"] = rows_json;
        write_text((fs::path(cfg.output_dir) / "summary.json").string(), j.dump(2) + "\n");
    }
}

std::vector<std::pair<int, int>> load_truth_csv(const std::string &path, int resolution) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open truth file " + path);
    }
    std::vector<std::pair<int, int>> truth;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        int x = 0;
        int y = 0;
        if (std::sscanf(line.c_str(), "%d,%d", &x, &y) != 2) {
            if (first) {
                first = false;
                continue; // header row
            }
            throw IoError(path + ": malformed truth line '" + line + "'");
        }
        first = false;
        if (x < 0 || x >= resolution || y < 0 || y >= resolution) {
            throw ConfigError(path + ": truth corner (" + std::to_string(x) + "," +
                              std::to_string(y) + ") outside the " + std::to_string(resolution) +
                              "x" + std::to_string(resolution) + " frame");
        }
        truth.emplace_back(x, y);
    }
    return truth;
}

} // namespace qgrad
