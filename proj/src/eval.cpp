#include "rct/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "rct/errors.hpp"
#include "rct/tracker.hpp"

namespace rct {

double overlap(const BoundingBox& a, const BoundingBox& b) {
    const double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
    const double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
    const double inter = ix * iy;
    const double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

double center_error(const BoundingBox& a, const BoundingBox& b) {
    return std::hypot(a.cx() - b.cx(), a.cy() - b.cy());
}

SuccessCurve make_success_curve(const std::vector<double>& overlaps) {
    SuccessCurve curve;
    curve.thresholds.resize(21);
    curve.rates.resize(21);
    for (int i = 0; i <= 20; ++i) {
        const double t = i * 0.05;
        curve.thresholds[i] = t;
        long hits = 0;
        for (double os : overlaps)
            if (os > t) ++hits;
        curve.rates[i] =
            overlaps.empty() ? 0.0 : static_cast<double>(hits) / overlaps.size();
        curve.auc += curve.rates[i];
    }
    curve.auc /= 21.0;
    return curve;
}

PrecisionCurve make_precision_curve(const std::vector<double>& errors) {
    PrecisionCurve curve;
    curve.thresholds.resize(51);
    curve.rates.resize(51);
    for (int t = 0; t <= 50; ++t) {
        curve.thresholds[t] = t;
        long hits = 0;
        for (double ce : errors)
            if (ce <= t) ++hits;
        curve.rates[t] = errors.empty() ? 0.0 : static_cast<double>(hits) / errors.size();
    }
    curve.precision_at_20 = curve.rates[20];
    return curve;
}

TrackerFn make_tracker_fn(const TrackerConfig& cfg) {
    return [cfg](const Sequence& seq) {
        if (!seq.ground_truth || seq.ground_truth->empty())
            throw FormatError("tracker: sequence has no ground truth to initialize from");
        TrackRun run;
        run.boxes.reserve(seq.frame_count());

        Frame frame = seq.load_frame(0);
        TrackerState state = init(frame, (*seq.ground_truth)[0], cfg);
        run.boxes.push_back((*seq.ground_truth)[0]);

        for (std::size_t i = 1; i < seq.frame_count(); ++i) {
            frame = seq.load_frame(i);
            const auto start = std::chrono::steady_clock::now();
            const BoundingBox box = track_frame(state, frame);
            const auto stop = std::chrono::steady_clock::now();
            run.track_seconds += std::chrono::duration<double>(stop - start).count();
            run.boxes.push_back(box);
        }
        return run;
    };
}

namespace {

SequenceResult score_sequence(const Sequence& seq, const TrackRun& run) {
    const std::vector<BoundingBox>& gt = *seq.ground_truth;
    if (run.boxes.size() != gt.size())
        throw SizeError("run_ope: trajectory length differs from ground truth");

    SequenceResult result;
    result.name = seq.name;
    result.trajectory = run.boxes;
    for (std::size_t i = 1; i < gt.size(); ++i) {  // first frame initializes
        result.overlaps.push_back(overlap(run.boxes[i], gt[i]));
        result.center_errors.push_back(center_error(run.boxes[i], gt[i]));
    }
    result.frames_scored = static_cast<int>(result.overlaps.size());
    result.success = make_success_curve(result.overlaps);
    result.precision = make_precision_curve(result.center_errors);
    long hits = 0;
    for (double os : result.overlaps)
        if (os > 0.5) ++hits;
    result.success_rate =
        result.overlaps.empty() ? 0.0
                                : static_cast<double>(hits) / result.overlaps.size();
    result.fps = run.track_seconds > 0.0 ? result.frames_scored / run.track_seconds : 0.0;
    return result;
}

void aggregate(OpeReport& report) {
    const std::size_t n = report.sequences.size();
    report.success_equal.thresholds.resize(21);
    report.success_equal.rates.assign(21, 0.0);
    report.success_weighted = report.success_equal;
    report.precision_equal.thresholds.resize(51);
    report.precision_equal.rates.assign(51, 0.0);
    report.precision_weighted = report.precision_equal;
    for (int i = 0; i <= 20; ++i)
        report.success_equal.thresholds[i] = report.success_weighted.thresholds[i] =
            i * 0.05;
    for (int t = 0; t <= 50; ++t)
        report.precision_equal.thresholds[t] = report.precision_weighted.thresholds[t] = t;

    long frames = 0;
    double rate_equal = 0.0, hits_weighted = 0.0;
    for (const SequenceResult& s : report.sequences) {
        frames += s.frames_scored;
        rate_equal += s.success_rate;
        hits_weighted += s.success_rate * s.frames_scored;
        for (int i = 0; i <= 20; ++i) {
            report.success_equal.rates[i] += s.success.rates[i];
            report.success_weighted.rates[i] += s.success.rates[i] * s.frames_scored;
        }
        for (int t = 0; t <= 50; ++t) {
            report.precision_equal.rates[t] += s.precision.rates[t];
            report.precision_weighted.rates[t] += s.precision.rates[t] * s.frames_scored;
        }
    }
    report.total_frames_scored = frames;
    if (n > 0) {
        rate_equal /= n;
        for (double& r : report.success_equal.rates) r /= n;
        for (double& r : report.precision_equal.rates) r /= n;
    }
    if (frames > 0) {
        hits_weighted /= frames;
        for (double& r : report.success_weighted.rates) r /= frames;
        for (double& r : report.precision_weighted.rates) r /= frames;
    }
    report.success_rate_equal = rate_equal;
    report.success_rate_weighted = hits_weighted;
    for (SuccessCurve* c : {&report.success_equal, &report.success_weighted}) {
        c->auc = 0.0;
        for (double r : c->rates) c->auc += r;
        c->auc /= 21.0;
    }
    report.precision_equal.precision_at_20 = report.precision_equal.rates[20];
    report.precision_weighted.precision_at_20 = report.precision_weighted.rates[20];
}

}  // namespace

OpeReport run_ope(const std::vector<Sequence>& sequences, const TrackerFn& tracker,
                  const std::string& label, int jobs) {
    OpeReport report;
    report.label = label;

    std::vector<const Sequence*> runnable;
    for (const Sequence& seq : sequences) {
        if (!seq.ground_truth || seq.ground_truth->empty())
            report.skipped.push_back(seq.name + ": no ground truth");
        else if (seq.frame_count() < 2)
            report.skipped.push_back(seq.name + ": fewer than two frames");
        else
            runnable.push_back(&seq);
    }

    std::vector<SequenceResult> results(runnable.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    const int workers =
        std::max(1, std::min<int>(jobs, static_cast<int>(runnable.size())));

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= runnable.size()) return;
            try {
                results[i] = score_sequence(*runnable[i], tracker(*runnable[i]));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    report.sequences = std::move(results);
    std::sort(report.sequences.begin(), report.sequences.end(),
              [](const SequenceResult& a, const SequenceResult& b) { return a.name < b.name; });
    aggregate(report);
    return report;
}

OpeReport run_ope(const std::vector<Sequence>& sequences, const TrackerConfig& cfg,
                  const std::string& label, int jobs) {
    return run_ope(sequences, make_tracker_fn(cfg), label, jobs);
}

std::string format_report(const OpeReport& report) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "OPE report: %s\n", report.label.c_str());
    out += line;
    out += "sequence                 frames  succ@0.5     AUC  prec@20     fps\n";
    for (const SequenceResult& s : report.sequences) {
        std::snprintf(line, sizeof line, "%-24s %6d  %8.4f  %6.4f  %7.4f  %6.1f\n",
                      s.name.c_str(), s.frames_scored, s.success_rate, s.success.auc,
                      s.precision.precision_at_20, s.fps);
        out += line;
    }
    std::snprintf(line, sizeof line,
                  "aggregate (equal)        %6ld  %8.4f  %6.4f  %7.4f\n",
                  report.total_frames_scored, report.success_rate_equal,
                  report.success_equal.auc, report.precision_equal.precision_at_20);
    out += line;
    std::snprintf(line, sizeof line,
                  "aggregate (frame-wtd)    %6ld  %8.4f  %6.4f  %7.4f\n",
                  report.total_frames_scored, report.success_rate_weighted,
                  report.success_weighted.auc, report.precision_weighted.precision_at_20);
    out += line;
    for (const std::string& note : report.skipped) out += "skipped " + note + "\n";
    return out;
}

namespace {

void write_csv(const std::filesystem::path& path, const std::vector<double>& thresholds,
               const std::vector<double>& rates) {
    std::ofstream out(path);
    if (!out) throw Error("export_curves: cannot write " + path.string());
    out << "threshold,rate\n";
    char line[64];
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        std::snprintf(line, sizeof line, "%.6f,%.6f\n", thresholds[i], rates[i]);
        out << line;
    }
    if (!out) throw Error("export_curves: write failed for " + path.string());
}

struct Series {
    std::string label;
    const std::vector<double>* thresholds;
    const std::vector<double>* rates;
};

/// Minimal line plot: axes with ticks, one polyline per series and a
/// swatch legend in the top-right corner.
void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::string& x_label, double x_max, double x_tick,
               const std::vector<Series>& series) {
    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                     "#ff7f0e", "#9467bd", "#8c564b"};
    constexpr int kW = 640, kH = 480, kLeft = 64, kTop = 48, kRight = 24, kBottom = 56;
    const double plot_w = kW - kLeft - kRight;
    const double plot_h = kH - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + x / x_max * plot_w; };
    const auto py = [&](double y) { return kTop + (1.0 - y) * plot_h; };

    std::ofstream out(path);
    if (!out) throw Error("export_curves: cannot write " + path.string());
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\" font-family=\"sans-serif\" font-size=\"12\">\n",
                  kW, kH, kW, kH);
    out << buf << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">%s</text>\n",
                  kW / 2, title.c_str());
    out << buf;

    // Axes and ticks.
    std::snprintf(buf, sizeof buf,
                  "<path d=\"M %d %d V %.1f H %.1f\" stroke=\"black\" fill=\"none\"/>\n",
                  kLeft, kTop, py(0.0), px(x_max));
    out << buf;
    for (double y = 0.0; y <= 1.0001; y += 0.2) {
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%d\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>"
                      "<text x=\"%d\" y=\"%.1f\" text-anchor=\"end\">%.1f</text>\n",
                      kLeft, py(y), px(x_max), py(y), kLeft - 6, py(y) + 4, y);
        out << buf;
    }
    for (double x = 0.0; x <= x_max * 1.0001; x += x_tick) {
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>"
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%g</text>\n",
                      px(x), py(0.0), px(x), py(0.0) + 5, px(x), py(0.0) + 20, x);
        out << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" text-anchor=\"middle\">%s</text>\n",
                  kLeft + static_cast<int>(plot_w / 2), kH - 12, x_label.c_str());
    out << buf;

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof kPalette / sizeof *kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < series[s].thresholds->size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.1f,%.1f ", px((*series[s].thresholds)[i]),
                          py((*series[s].rates)[i]));
            out << buf;
        }
        out << "\"/>\n";
        const double ly = kTop + 16.0 + 18.0 * s;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                      "stroke-width=\"2\"/><text x=\"%.1f\" y=\"%.1f\">%s</text>\n",
                      px(x_max) - 150.0, ly, px(x_max) - 120.0, ly, color,
                      px(x_max) - 112.0, ly + 4, series[s].label.c_str());
        out << buf;
    }
    out << "</svg>\n";
    if (!out) throw Error("export_curves: write failed for " + path.string());
}

}  // namespace

void export_curves(const std::vector<OpeReport>& reports,
                   const std::filesystem::path& out_dir) {
    if (reports.empty()) throw FormatError("export_curves: empty report");
    for (const OpeReport& r : reports)
        if (r.success_equal.rates.empty())
            throw FormatError("export_curves: report has no aggregated curves");

    std::filesystem::create_directories(out_dir);
    std::vector<Series> success, precision;
    for (const OpeReport& r : reports) {
        write_csv(out_dir / (r.label + "_success.csv"), r.success_equal.thresholds,
                  r.success_equal.rates);
        write_csv(out_dir / (r.label + "_precision.csv"), r.precision_equal.thresholds,
                  r.precision_equal.rates);
        success.push_back({r.label, &r.success_equal.thresholds, &r.success_equal.rates});
        precision.push_back(
            {r.label, &r.precision_equal.thresholds, &r.precision_equal.rates});
    }
    write_svg(out_dir / "success.svg", "Success plot (OPE)", "overlap threshold", 1.0, 0.2,
              success);
    write_svg(out_dir / "precision.svg", "Precision plot (OPE)",
              "center error threshold (px)", 50.0, 10.0, precision);
}

void export_curves(const OpeReport& report, const std::filesystem::path& out_dir) {
    export_curves(std::vector<OpeReport>{report}, out_dir);
}

}  // namespace rct
