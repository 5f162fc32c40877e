#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "rct/errors.hpp"
#include "rct/eval.hpp"
#include "rct/fft.hpp"
#include "rct/image_io.hpp"
#include "rct/response.hpp"
#include "rct/sequence.hpp"
#include "rct/synth.hpp"
#include "rct/tracker.hpp"

namespace fs = std::filesystem;
using namespace rct;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// One flag per TrackerConfig field so sweeps can be scripted without
/// writing config files; values land on top of --config.
void add_config_flags(CLI::App* cmd, Overrides& overrides) {
    static const char* kKeys[] = {
        "lambda",          "eta",           "num_scales",        "scale_step",
        "cell_size",       "proposal_ratio", "ratio_tolerance",  "area_threshold",
        "search_padding",  "admm_iterations", "admm_penalty_init", "admm_penalty_scale",
        "admm_penalty_max", "use_mask"};
    for (const char* key : kKeys) {
        cmd->add_option_function<std::string>(
            std::string("--") + key,
            [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); },
            std::string("override config field ") + key);
    }
}

TrackerConfig resolve_config(const std::string& config_path, const Overrides& overrides) {
    TrackerConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
    for (const auto& [key, value] : overrides) set_config_field(cfg, key, value);
    cfg.validate();
    return cfg;
}

BoundingBox parse_init_flag(const std::string& text) {
    const BoundingBox box = parse_groundtruth_line(text);
    // The flag is given in the same 1-based convention as ground-truth files.
    return {box.x - 1.0, box.y - 1.0, box.w, box.h};
}

void draw_box_overlay(Frame& frame, const BoundingBox& box) {
    const int x0 = std::max(0, static_cast<int>(std::lround(box.x)));
    const int y0 = std::max(0, static_cast<int>(std::lround(box.y)));
    const int x1 = std::min(frame.width - 1, static_cast<int>(std::lround(box.x + box.w)));
    const int y1 = std::min(frame.height - 1, static_cast<int>(std::lround(box.y + box.h)));
    const auto mark = [&](int x, int y) {
        frame.at(x, y, 0) = 255;
        frame.at(x, y, 1) = 32;
        frame.at(x, y, 2) = 32;
    };
    for (int x = x0; x <= x1; ++x)
        for (int y : {y0, std::min(y0 + 1, y1), std::max(y1 - 1, y0), y1}) mark(x, y);
    for (int y = y0; y <= y1; ++y)
        for (int x : {x0, std::min(x0 + 1, x1), std::max(x1 - 1, x0), x1}) mark(x, y);
}

Grid feature_energy(const FeatureMap& features) {
    Grid energy(features.rows, features.cols);
    for (int k = 0; k < features.channels; ++k)
        for (int r = 0; r < features.rows; ++r)
            for (int c = 0; c < features.cols; ++c)
                energy.at(r, c) += features.at(r, c, k) * features.at(r, c, k);
    for (double& v : energy.values) v = std::sqrt(v);
    return energy;
}

int cmd_track(const std::string& seq_dir, const std::string& config_path,
              const Overrides& overrides, const std::string& init_flag,
              const std::string& out_path, const std::string& dump_frames,
              const std::string& dump_response) {
    const TrackerConfig cfg = resolve_config(config_path, overrides);
    const Sequence seq = load_sequence(seq_dir);
    if (seq.frame_count() == 0) throw FormatError("sequence has no frames: " + seq_dir);

    BoundingBox first;
    if (!init_flag.empty())
        first = parse_init_flag(init_flag);
    else if (seq.ground_truth && !seq.ground_truth->empty())
        first = (*seq.ground_truth)[0];
    else
        throw FormatError("no initial box: sequence has no ground truth, pass --init x,y,w,h");

    Frame frame = seq.load_frame(0);
    TrackerState state = init(frame, first, cfg);
    std::vector<BoundingBox> boxes{first};

    if (!dump_frames.empty()) fs::create_directories(dump_frames);
    if (!dump_response.empty()) fs::create_directories(dump_response);
    char name[32];
    if (!dump_frames.empty()) {
        Frame annotated = frame;
        draw_box_overlay(annotated, first);
        std::snprintf(name, sizeof name, "%04d.png", 1);
        save_png(fs::path(dump_frames) / name, annotated);
    }

    double seconds = 0.0;
    long uncertain = 0;
    for (std::size_t i = 1; i < seq.frame_count(); ++i) {
        frame = seq.load_frame(i);
        const auto start = std::chrono::steady_clock::now();
        const BoundingBox box = track_frame(state, frame);
        seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                       .count();
        boxes.push_back(box);
        if (state.last_uncertain) {
            ++uncertain;
            std::fprintf(stderr, "frame %zu: reliable mask empty, used raw peak\n", i + 1);
        }
        std::snprintf(name, sizeof name, "%04zu.png", i + 1);
        if (!dump_frames.empty()) {
            Frame annotated = frame;
            draw_box_overlay(annotated, box);
            save_png(fs::path(dump_frames) / name, annotated);
        }
        if (!dump_response.empty())
            save_png_gray(fs::path(dump_response) / name, state.last_response);
    }

    save_trajectory(out_path, boxes);
    const std::size_t tracked = seq.frame_count() - 1;
    std::printf("%s: %zu frames tracked in %.3f s (%.1f FPS), %ld uncertain\n",
                seq.name.c_str(), tracked, seconds,
                seconds > 0.0 ? tracked / seconds : 0.0, uncertain);
    std::printf("trajectory written to %s\n", out_path.c_str());
    return kExitOk;
}

int cmd_eval(const std::string& dataset_root, const std::string& config_path,
             const Overrides& overrides, const std::string& report_dir, int jobs) {
    const TrackerConfig cfg = resolve_config(config_path, overrides);
    if (!fs::is_directory(dataset_root))
        throw NotFoundError("dataset root is not a directory: " + dataset_root);

    std::vector<fs::path> children;
    for (const auto& entry : fs::directory_iterator(dataset_root))
        if (entry.is_directory()) children.push_back(entry.path());
    std::sort(children.begin(), children.end());
    if (children.empty())
        throw NotFoundError("dataset root has no sequence directories: " + dataset_root);

    std::vector<Sequence> sequences;
    std::vector<std::string> load_failures;
    for (const fs::path& child : children) {
        try {
            sequences.push_back(load_sequence(child));
        } catch (const Error& e) {
            load_failures.push_back(child.filename().string() + ": " + e.what());
        }
    }
    if (sequences.empty())
        throw FormatError("no loadable sequences under " + dataset_root);

    OpeReport report = run_ope(sequences, cfg, "rct", jobs);
    for (const std::string& failure : load_failures)
        report.skipped.push_back(failure);
    if (report.sequences.empty())
        throw FormatError("every sequence under " + dataset_root + " was skipped");

    fs::create_directories(report_dir);
    const std::string text = format_report(report);
    std::ofstream out(fs::path(report_dir) / "report.txt");
    if (!out) throw Error("cannot write report to " + report_dir);
    out << text;
    out.close();
    export_curves(report, report_dir);

    std::fputs(text.c_str(), stdout);
    std::printf("report written to %s\n", report_dir.c_str());
    return kExitOk;
}

int cmd_synth(const std::string& preset_name, const std::string& out_dir,
              unsigned int seed) {
    SceneSpec spec;
    try {
        spec = preset(preset_name, seed);
    } catch (const NotFoundError&) {
        throw NotFoundError("unknown preset '" + preset_name +
                            "'; available: static, translate, zoom, occlude, distractor");
    }
    RenderedScene scene = render(spec);
    scene.name = preset_name;
    dump_scene(scene, out_dir);
    std::printf("%s: %zu frames written to %s\n", preset_name.c_str(),
                scene.frames.size(), out_dir.c_str());
    return kExitOk;
}

int cmd_inspect(const std::string& seq_dir, const std::string& config_path,
                const Overrides& overrides, const std::string& init_flag, int frame_no,
                bool want_features, bool want_response, bool want_mask) {
    const TrackerConfig cfg = resolve_config(config_path, overrides);
    const Sequence seq = load_sequence(seq_dir);
    if (frame_no < 1 || static_cast<std::size_t>(frame_no) > seq.frame_count())
        throw FormatError("frame " + std::to_string(frame_no) + " out of range; sequence has " +
                          std::to_string(seq.frame_count()) + " frames");

    BoundingBox first;
    if (!init_flag.empty())
        first = parse_init_flag(init_flag);
    else if (seq.ground_truth && !seq.ground_truth->empty())
        first = (*seq.ground_truth)[0];
    else
        throw FormatError("no initial box: sequence has no ground truth, pass --init x,y,w,h");

    Frame frame = seq.load_frame(0);
    TrackerState state = init(frame, first, cfg);
    for (int i = 1; i < frame_no; ++i) {
        frame = seq.load_frame(static_cast<std::size_t>(i));
        track_frame(state, frame);
    }

    // Recompute the unit-scale detection artifacts at the reached state.
    const FeatureMap features = window_feature_map(state, frame, 1.0);
    const Grid response = compute_response(state.model, dft2(features));
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "%04d.png", frame_no);

    if (want_features) {
        const std::string path = "inspect_features_" + std::string(suffix);
        save_png_gray(path, feature_energy(features));
        std::printf("features -> %s\n", path.c_str());
    }
    if (want_response) {
        const std::string path = "inspect_response_" + std::string(suffix);
        save_png_gray(path, response);
        std::printf("response -> %s (peak %.4g)\n", path.c_str(),
                    locate_peak(response).value);
    }
    if (want_mask) {
        const ReliableResult rel =
            reliable_peak(response, cfg, state.geometry.target_cell_area());
        Grid mask_grid(rel.mask.rows, rel.mask.cols);
        for (std::size_t i = 0; i < rel.mask.binary.size(); ++i)
            mask_grid.values[i] = rel.mask.binary[i];
        const std::string path = "inspect_mask_" + std::string(suffix);
        save_png_gray(path, mask_grid);
        std::printf("mask -> %s (threshold %d, ratio %.4f%s)\n", path.c_str(),
                    rel.mask.threshold_used, rel.mask.proposal_ratio_achieved,
                    rel.threshold.fallback ? ", fallback" : "");
    }
    if (!want_features && !want_response && !want_mask)
        std::printf("nothing to do: pass --features, --response and/or --mask\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RCT correlation-filter tracker"};
    app.require_subcommand(1);

    // track
    std::string track_seq, track_config, track_init, track_out = "trajectory.txt";
    std::string track_dump_frames, track_dump_response;
    Overrides track_overrides;
    CLI::App* track = app.add_subcommand("track", "track one sequence");
    track->add_option("seq_dir", track_seq, "sequence directory")->required();
    track->add_option("--config", track_config, "config file");
    track->add_option("--init", track_init, "initial box x,y,w,h (1-based, overrides ground truth)");
    track->add_option("--out", track_out, "trajectory output file");
    track->add_option("--dump-frames", track_dump_frames, "directory for annotated frames");
    track->add_option("--dump-response", track_dump_response, "directory for response maps");
    add_config_flags(track, track_overrides);

    // eval
    std::string eval_root, eval_config, eval_report = "report";
    int eval_jobs = 1;
    Overrides eval_overrides;
    CLI::App* eval = app.add_subcommand("eval", "one-pass evaluation over a dataset root");
    eval->add_option("dataset_root", eval_root, "directory of sequence directories")->required();
    eval->add_option("--config", eval_config, "config file");
    eval->add_option("--report", eval_report, "report output directory");
    eval->add_option("--jobs", eval_jobs, "parallel sequence evaluations")
        ->check(CLI::PositiveNumber);
    add_config_flags(eval, eval_overrides);

    // synth
    std::string synth_preset, synth_out;
    unsigned int synth_seed = 1;
    CLI::App* synth = app.add_subcommand("synth", "render a synthetic preset sequence");
    synth->add_option("preset", synth_preset,
                      "static | translate | zoom | occlude | distractor")->required();
    synth->add_option("out_dir", synth_out, "output sequence directory")->required();
    synth->add_option("--seed", synth_seed, "texture seed");

    // inspect
    std::string inspect_seq, inspect_config, inspect_init;
    int inspect_frame = 1;
    bool inspect_features = false, inspect_response = false, inspect_mask = false;
    Overrides inspect_overrides;
    CLI::App* inspect = app.add_subcommand("inspect", "dump detection internals at a frame");
    inspect->add_option("seq_dir", inspect_seq, "sequence directory")->required();
    inspect->add_option("--frame", inspect_frame, "frame number (1-based)")->required();
    inspect->add_option("--config", inspect_config, "config file");
    inspect->add_option("--init", inspect_init, "initial box x,y,w,h (1-based)");
    inspect->add_flag("--features", inspect_features, "dump fused feature energy");
    inspect->add_flag("--response", inspect_response, "dump the raw response map");
    inspect->add_flag("--mask", inspect_mask, "dump the reliability mask");
    add_config_flags(inspect, inspect_overrides);

    try {
        app.parse(argc, argv);
        if (track->parsed())
            return cmd_track(track_seq, track_config, track_overrides, track_init,
                             track_out, track_dump_frames, track_dump_response);
        if (eval->parsed())
            return cmd_eval(eval_root, eval_config, eval_overrides, eval_report, eval_jobs);
        if (synth->parsed()) return cmd_synth(synth_preset, synth_out, synth_seed);
        if (inspect->parsed())
            return cmd_inspect(inspect_seq, inspect_config, inspect_overrides, inspect_init,
                               inspect_frame, inspect_features, inspect_response,
                               inspect_mask);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kExitNumeric;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    }
}
