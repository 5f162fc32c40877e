#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "rct/bbox.hpp"
#include "rct/config.hpp"
#include "rct/sequence.hpp"

namespace rct {

/// Intersection-over-union of two boxes, in [0, 1].
double overlap(const BoundingBox& a, const BoundingBox& b);

/// Euclidean distance between box centers, pixels.
double center_error(const BoundingBox& a, const BoundingBox& b);

/// Success plot: fraction of frames whose overlap exceeds each threshold,
/// sampled at 0.00..1.00 in steps of 0.05. auc is the mean of the rates.
struct SuccessCurve {
    std::vector<double> thresholds;
    std::vector<double> rates;
    double auc = 0.0;
};

/// Precision plot: fraction of frames whose center error is at most each
/// threshold, sampled at 0..50 px in 1 px steps.
struct PrecisionCurve {
    std::vector<double> thresholds;
    std::vector<double> rates;
    double precision_at_20 = 0.0;
};

SuccessCurve make_success_curve(const std::vector<double>& overlaps);
PrecisionCurve make_precision_curve(const std::vector<double>& errors);

/// Per-sequence outcome. The first (initialization) frame is excluded from
/// every metric; `trajectory` still holds one box per frame.
struct SequenceResult {
    std::string name;
    int frames_scored = 0;
    std::vector<double> overlaps;
    std::vector<double> center_errors;
    SuccessCurve success;
    PrecisionCurve precision;
    double success_rate = 0.0;  // fraction of frames with overlap > 0.5
    double fps = 0.0;           // steady-state tracking loop only
    std::vector<BoundingBox> trajectory;
};

struct OpeReport {
    std::string label = "rct";
    std::vector<SequenceResult> sequences;  // sorted by name
    std::vector<std::string> skipped;       // "<name>: <reason>" notes
    long total_frames_scored = 0;

    // Aggregates under both conventions: equal weight per sequence, and
    // weight proportional to each sequence's scored frame count.
    SuccessCurve success_equal, success_weighted;
    PrecisionCurve precision_equal, precision_weighted;
    double success_rate_equal = 0.0, success_rate_weighted = 0.0;
};

/// A tracking run over one sequence: one box per frame (the first is the
/// initialization box) plus the wall time spent inside the tracking loop.
struct TrackRun {
    std::vector<BoundingBox> boxes;
    double track_seconds = 0.0;
};

using TrackerFn = std::function<TrackRun(const Sequence&)>;

/// The production tracker as a TrackerFn: initializes from the sequence's
/// first ground-truth box and tracks the remaining frames.
TrackerFn make_tracker_fn(const TrackerConfig& cfg);

/// One-pass evaluation: run the tracker once per sequence (up to `jobs` in
/// parallel), score every frame after the first against ground truth, and
/// aggregate. Sequences without ground truth are skipped with a note.
OpeReport run_ope(const std::vector<Sequence>& sequences, const TrackerFn& tracker,
                  const std::string& label = "rct", int jobs = 1);
OpeReport run_ope(const std::vector<Sequence>& sequences, const TrackerConfig& cfg,
                  const std::string& label = "rct", int jobs = 1);

/// Human-readable per-sequence and aggregate tables.
std::string format_report(const OpeReport& report);

/// Write aggregate curves as CSV (`threshold,rate`, 6 decimals) plus one
/// SVG per curve family with one labeled series per report.
void export_curves(const std::vector<OpeReport>& reports,
                   const std::filesystem::path& out_dir);
void export_curves(const OpeReport& report, const std::filesystem::path& out_dir);

}  // namespace rct
