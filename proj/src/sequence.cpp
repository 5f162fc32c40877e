#include "rct/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>

#include "rct/errors.hpp"
#include "rct/image_io.hpp"

namespace fs = std::filesystem;

namespace rct {
namespace {

bool has_image_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == ".jpg" || ext == ".jpeg" || ext == ".png";
}

// Numeric value of the file stem; files without digits sort last.
long long stem_number(const fs::path& p) {
    const std::string stem = p.stem().string();
    std::string digits;
    for (char c : stem)
        if (std::isdigit(static_cast<unsigned char>(c))) digits.push_back(c);
    if (digits.empty() || digits.size() > 18) return std::numeric_limits<long long>::max();
    return std::stoll(digits);
}

bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

Frame Sequence::load_frame(std::size_t index) const {
    if (index >= frame_paths.size())
        throw SizeError("frame index " + std::to_string(index) + " out of range for sequence '" +
                        name + "'");
    return load_image(frame_paths[index]);
}

Sequence load_sequence(const fs::path& root) {
    if (!fs::is_directory(root)) throw NotFoundError("sequence directory not found: " + root.string());
    const fs::path img_dir = root / "img";
    if (!fs::is_directory(img_dir))
        throw NotFoundError("sequence has no img/ subdirectory: " + root.string());

    Sequence seq;
    seq.name = root.filename().string();
    if (seq.name.empty()) seq.name = root.parent_path().filename().string();

    for (const auto& entry : fs::directory_iterator(img_dir)) {
        if (entry.is_regular_file() && has_image_extension(entry.path()))
            seq.frame_paths.push_back(entry.path());
    }
    if (seq.frame_paths.empty())
        throw FormatError("no .jpg/.png frames under " + img_dir.string());
    std::sort(seq.frame_paths.begin(), seq.frame_paths.end(),
              [](const fs::path& a, const fs::path& b) {
                  const long long na = stem_number(a), nb = stem_number(b);
                  if (na != nb) return na < nb;
                  return a.filename().string() < b.filename().string();
              });

    const fs::path gt_path = root / "groundtruth_rect.txt";
    if (fs::exists(gt_path)) {
        std::ifstream in(gt_path);
        if (!in) throw FormatError("cannot read " + gt_path.string());
        std::vector<BoundingBox> boxes;
        std::string line;
        while (std::getline(in, line)) {
            if (is_blank(line)) continue;
            BoundingBox b = parse_groundtruth_line(line);
            b.x -= 1.0;  // disk convention is 1-based
            b.y -= 1.0;
            boxes.push_back(b);
        }
        if (boxes.size() != seq.frame_paths.size())
            throw FormatError("ground-truth count mismatch in " + root.string() + ": " +
                              std::to_string(boxes.size()) + " boxes vs " +
                              std::to_string(seq.frame_paths.size()) + " frames");
        seq.ground_truth = std::move(boxes);
    }
    return seq;
}

void save_trajectory(const fs::path& path, const std::vector<BoundingBox>& boxes) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write trajectory file: " + path.string());
    for (const BoundingBox& b : boxes) {
        BoundingBox disk = b;
        disk.x += 1.0;
        disk.y += 1.0;
        out << format_groundtruth_line(disk) << '\n';
    }
}

std::vector<BoundingBox> load_trajectory(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("cannot open trajectory file: " + path.string());
    std::vector<BoundingBox> boxes;
    std::string line;
    while (std::getline(in, line)) {
        if (is_blank(line)) continue;
        BoundingBox b = parse_groundtruth_line(line);
        b.x -= 1.0;
        b.y -= 1.0;
        boxes.push_back(b);
    }
    return boxes;
}

}  // namespace rct
