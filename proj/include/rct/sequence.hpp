#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rct/bbox.hpp"
#include "rct/frame.hpp"

namespace rct {

/// An image sequence in the benchmark layout: `<root>/img/<NNNN>.<jpg|png>`
/// plus an optional `groundtruth_rect.txt` with one box per frame.
/// Boxes are held 0-based; the files are 1-based.
struct Sequence {
    std::string name;
    std::vector<std::filesystem::path> frame_paths;
    std::optional<std::vector<BoundingBox>> ground_truth;

    std::size_t frame_count() const { return frame_paths.size(); }
    Frame load_frame(std::size_t index) const;
};

/// Load a sequence directory. Frames are ordered by the numeric value of
/// their file stem, so 2.jpg sorts before 10.jpg.
Sequence load_sequence(const std::filesystem::path& root);

/// Write a trajectory in the ground-truth file convention (1-based).
void save_trajectory(const std::filesystem::path& path, const std::vector<BoundingBox>& boxes);

/// Read a trajectory file back into 0-based boxes.
std::vector<BoundingBox> load_trajectory(const std::filesystem::path& path);

}  // namespace rct
