#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rct/bbox.hpp"
#include "rct/frame.hpp"

namespace rct {

/// A textured patch: size in pixels at scale 1 plus the noise parameters
/// that make its appearance a pure function of (texture_seed, u, v).
struct PatchSpec {
    double width = 0.0, height = 0.0;
    std::uint32_t texture_seed = 0;
    double contrast = 1.0;
};

/// Per-frame placement of a patch; (x, y) is the patch center in canvas
/// pixels and scale multiplies the base size.
struct Placement {
    double x = 0.0, y = 0.0;
    double scale = 1.0;
};

struct DistractorSpec {
    PatchSpec patch;
    std::vector<Placement> trajectory;
    bool in_front = false;  // drawn over the target instead of behind it
};

/// Axis-aligned occluding rectangle, active on frames
/// [first_frame, last_frame] inclusive.
struct OccluderSpec {
    BoundingBox rect;
    int first_frame = 0, last_frame = -1;
    std::uint32_t texture_seed = 0;
};

struct SceneSpec {
    int canvas_w = 320, canvas_h = 240;
    std::uint32_t seed = 1;
    PatchSpec target;
    std::vector<Placement> trajectory;  // one entry per frame
    std::vector<DistractorSpec> distractors;
    std::vector<OccluderSpec> occluders;

    std::size_t frame_count() const { return trajectory.size(); }
};

/// A rendered scene: frames plus the exact per-frame target box.
struct RenderedScene {
    std::string name;
    std::vector<Frame> frames;
    std::vector<BoundingBox> ground_truth;
};

/// Rasterize the scene. Deterministic for a fixed spec; bit-identical
/// buffers on repeated calls. Throws FormatError when the target box ever
/// leaves the canvas and SizeError on inconsistent trajectory lengths.
RenderedScene render(const SceneSpec& spec);

/// Canonical scenes used by the acceptance suite:
///   static     15 frames, motionless target
///   translate  30 frames, 2 px/frame horizontal motion
///   zoom       21 frames, target inflating 1%/frame
///   occlude    40 frames, target hidden on frames 15-25
///   distractor 30 frames, a similar smaller patch crossing the target
/// The seed reskins every texture. Unknown names throw NotFoundError.
SceneSpec preset(const std::string& name, std::uint32_t seed = 1);

/// Write a rendered scene in the benchmark directory layout:
/// <dir>/img/%04d.png plus <dir>/groundtruth_rect.txt (1-based).
void dump_scene(const RenderedScene& scene, const std::filesystem::path& dir);

}  // namespace rct
