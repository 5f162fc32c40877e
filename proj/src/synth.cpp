#include "rct/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rct/errors.hpp"
#include "rct/image_io.hpp"
#include "rct/sequence.hpp"

namespace rct {

namespace {

std::uint32_t mix_seed(std::uint32_t seed, std::uint32_t salt) {
    std::uint32_t h = seed * 0x9e3779b9u + salt;
    h ^= h >> 16;
    h *= 0x85ebca6bu;
    h ^= h >> 13;
    return h;
}

/// Lattice value in [0, 1), a pure function of (seed, x, y).
double lattice(std::uint32_t seed, std::int32_t x, std::int32_t y) {
    std::uint32_t h = seed;
    h ^= static_cast<std::uint32_t>(x) * 0x8da6b343u;
    h ^= static_cast<std::uint32_t>(y) * 0xd8163841u;
    h *= 0x9e3779b1u;
    h ^= h >> 15;
    h *= 0x85ebca6bu;
    h ^= h >> 13;
    return h * (1.0 / 4294967296.0);
}

/// Bilinear value noise over the integer lattice.
double value_noise(std::uint32_t seed, double u, double v) {
    const double fu = std::floor(u), fv = std::floor(v);
    const std::int32_t x0 = static_cast<std::int32_t>(fu);
    const std::int32_t y0 = static_cast<std::int32_t>(fv);
    const double tu = u - fu, tv = v - fv;
    const double a = lattice(seed, x0, y0), b = lattice(seed, x0 + 1, y0);
    const double c = lattice(seed, x0, y0 + 1), d = lattice(seed, x0 + 1, y0 + 1);
    return (a * (1.0 - tu) + b * tu) * (1.0 - tv) + (c * (1.0 - tu) + d * tu) * tv;
}

std::uint8_t to_u8(double v) {
    return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

/// Patch appearance at patch-local pixel coordinates: two noise octaves per
/// channel, the finer one strong enough to give HOG crisp gradients.
void patch_color(const PatchSpec& patch, double u, double v, std::uint8_t rgb[3]) {
    for (int c = 0; c < 3; ++c) {
        const double coarse = value_noise(mix_seed(patch.texture_seed, 11u + c), u / 7.0, v / 7.0);
        const double fine = value_noise(mix_seed(patch.texture_seed, 29u + c), u / 2.5, v / 2.5);
        const double n = 0.45 * coarse + 0.55 * fine;
        rgb[c] = to_u8(255.0 * (0.5 + (n - 0.5) * patch.contrast) + 0.5);
    }
}

/// Low-contrast desaturated background, distinct from any patch texture.
void background_color(std::uint32_t seed, int x, int y, std::uint8_t rgb[3]) {
    const double n = value_noise(mix_seed(seed, 101u), x / 9.0, y / 9.0);
    const double base = 96.0 + 64.0 * n;
    rgb[0] = to_u8(base + 0.5);
    rgb[1] = to_u8(base * 0.96 + 0.5);
    rgb[2] = to_u8(base * 0.92 + 0.5);
}

/// Composite one placed patch over the frame, clipping at canvas edges.
void draw_patch(Frame& frame, const PatchSpec& patch, const Placement& at) {
    const double w = patch.width * at.scale, h = patch.height * at.scale;
    const double left = at.x - w / 2.0, top = at.y - h / 2.0;
    const int x0 = std::max(0, static_cast<int>(std::floor(left)));
    const int x1 = std::min(frame.width - 1, static_cast<int>(std::ceil(left + w)));
    const int y0 = std::max(0, static_cast<int>(std::floor(top)));
    const int y1 = std::min(frame.height - 1, static_cast<int>(std::ceil(top + h)));
    for (int y = y0; y <= y1; ++y) {
        const double py = y + 0.5;
        if (py < top || py >= top + h) continue;
        for (int x = x0; x <= x1; ++x) {
            const double px = x + 0.5;
            if (px < left || px >= left + w) continue;
            std::uint8_t rgb[3];
            patch_color(patch, (px - left) / at.scale, (py - top) / at.scale, rgb);
            for (int c = 0; c < 3; ++c) frame.at(x, y, c) = rgb[c];
        }
    }
}

BoundingBox placed_box(const PatchSpec& patch, const Placement& at) {
    return BoundingBox::from_center(at.x, at.y, patch.width * at.scale,
                                    patch.height * at.scale);
}

}  // namespace

RenderedScene render(const SceneSpec& spec) {
    if (spec.canvas_w < 1 || spec.canvas_h < 1) throw SizeError("render: empty canvas");
    if (spec.trajectory.empty()) throw SizeError("render: empty trajectory");
    for (const DistractorSpec& d : spec.distractors)
        if (d.trajectory.size() != spec.trajectory.size())
            throw SizeError("render: distractor trajectory length mismatch");

    RenderedScene scene;
    scene.frames.reserve(spec.trajectory.size());
    scene.ground_truth.reserve(spec.trajectory.size());

    for (std::size_t f = 0; f < spec.trajectory.size(); ++f) {
        const BoundingBox box = placed_box(spec.target, spec.trajectory[f]);
        if (box.x < 0.0 || box.y < 0.0 || box.x + box.w > spec.canvas_w ||
            box.y + box.h > spec.canvas_h)
            throw FormatError("render: target trajectory exits the canvas");

        Frame frame(spec.canvas_w, spec.canvas_h);
        for (int y = 0; y < spec.canvas_h; ++y)
            for (int x = 0; x < spec.canvas_w; ++x)
                background_color(spec.seed, x, y, &frame.pixels[(static_cast<std::size_t>(y) * spec.canvas_w + x) * 3]);

        for (const DistractorSpec& d : spec.distractors)
            if (!d.in_front) draw_patch(frame, d.patch, d.trajectory[f]);
        draw_patch(frame, spec.target, spec.trajectory[f]);
        for (const DistractorSpec& d : spec.distractors)
            if (d.in_front) draw_patch(frame, d.patch, d.trajectory[f]);

        for (const OccluderSpec& occ : spec.occluders) {
            if (static_cast<int>(f) < occ.first_frame || static_cast<int>(f) > occ.last_frame)
                continue;
            PatchSpec cover;
            cover.width = occ.rect.w;
            cover.height = occ.rect.h;
            cover.texture_seed = occ.texture_seed;
            cover.contrast = 0.5;
            draw_patch(frame, cover, {occ.rect.cx(), occ.rect.cy(), 1.0});
        }

        scene.frames.push_back(std::move(frame));
        scene.ground_truth.push_back(box);
    }
    return scene;
}

SceneSpec preset(const std::string& name, std::uint32_t seed) {
    SceneSpec spec;
    spec.seed = seed;
    spec.target.width = 42.0;
    spec.target.height = 42.0;
    spec.target.texture_seed = mix_seed(seed, 7u);

    const auto straight = [](std::size_t frames, double x0, double y0, double dx,
                             double dy) {
        std::vector<Placement> t(frames);
        for (std::size_t f = 0; f < frames; ++f) t[f] = {x0 + dx * f, y0 + dy * f, 1.0};
        return t;
    };

    if (name == "static") {
        spec.trajectory = straight(15, 160.0, 120.0, 0.0, 0.0);
    } else if (name == "translate") {
        spec.trajectory = straight(30, 100.0, 120.0, 2.0, 0.0);
    } else if (name == "zoom") {
        spec.trajectory = straight(21, 160.0, 120.0, 0.0, 0.0);
        for (std::size_t f = 0; f < spec.trajectory.size(); ++f)
            spec.trajectory[f].scale = std::pow(1.01, static_cast<double>(f));
    } else if (name == "occlude") {
        spec.trajectory = straight(40, 160.0, 120.0, 0.0, 0.0);
        OccluderSpec occ;
        occ.rect = BoundingBox::from_center(160.0, 120.0, 70.0, 70.0);
        occ.first_frame = 15;
        occ.last_frame = 25;
        occ.texture_seed = mix_seed(seed, 23u);
        spec.occluders.push_back(occ);
    } else if (name == "distractor") {
        // A same-textured, slightly smaller patch sweeps past the motionless
        // target, closest at frame 15. Around the crossing the target itself
        // deforms (a triangular shrink dip), so its own response sags while
        // the intruder's stays tall but narrow -- exactly the peak shape the
        // reliability mask prunes and a bare argmax chases.
        spec.trajectory = straight(30, 160.0, 120.0, 0.0, 0.0);
        for (std::size_t f = 0; f < spec.trajectory.size(); ++f) {
            const double ramp = 1.0 - std::abs(static_cast<double>(f) - 15.0) / 4.0;
            spec.trajectory[f].scale = 1.0 - 0.5 * std::max(0.0, ramp);
        }
        DistractorSpec d;
        d.patch = spec.target;
        d.patch.width = spec.target.width * 0.97;
        d.patch.height = spec.target.height * 0.97;
        d.patch.contrast = 1.3;
        d.in_front = true;
        const double dy = 38.0;  // vertical gap at the crossing frame
        d.trajectory = straight(30, 160.0 + 15.0 * 12.0, 120.0 + dy, -12.0, 0.0);
        spec.distractors.push_back(d);
    } else {
        throw NotFoundError("preset: unknown scene '" + name + "'");
    }
    return spec;
}

void dump_scene(const RenderedScene& scene, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "img");
    char name[32];
    for (std::size_t f = 0; f < scene.frames.size(); ++f) {
        std::snprintf(name, sizeof name, "%04zu.png", f + 1);
        save_png(dir / "img" / name, scene.frames[f]);
    }
    save_trajectory(dir / "groundtruth_rect.txt", scene.ground_truth);
}

}  // namespace rct
