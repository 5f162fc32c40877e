#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "rct/bbox.hpp"
#include "rct/config.hpp"
#include "rct/errors.hpp"
#include "rct/image_io.hpp"
#include "rct/sequence.hpp"

using namespace rct;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("rct_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Frame tiny_frame(std::uint8_t shade) {
    Frame f(6, 4);
    for (std::uint8_t& p : f.pixels) p = shade;
    return f;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("parse_groundtruth_line accepts the benchmark delimiter mix") {
    BoundingBox b = parse_groundtruth_line("198,214,34,81");
    CHECK(b == BoundingBox{198.0, 214.0, 34.0, 81.0});

    b = parse_groundtruth_line("10\t20\t30\t40");
    CHECK(b == BoundingBox{10.0, 20.0, 30.0, 40.0});

    b = parse_groundtruth_line("10 20 30 40");
    CHECK(b == BoundingBox{10.0, 20.0, 30.0, 40.0});

    b = parse_groundtruth_line("  7.5,\t8.25 , 3.125\t 9 \r");
    CHECK(b == BoundingBox{7.5, 8.25, 3.125, 9.0});
}

TEST_CASE("parse_groundtruth_line rejects malformed lines") {
    CHECK_THROWS_AS(parse_groundtruth_line("10,20,30"), FormatError);
    CHECK_THROWS_AS(parse_groundtruth_line("1,2,3,4,5"), FormatError);
    CHECK_THROWS_AS(parse_groundtruth_line(""), FormatError);
    CHECK_THROWS_AS(parse_groundtruth_line("a,b,c,d"), FormatError);
    CHECK_THROWS_AS(parse_groundtruth_line("10,20,-5,40"), FormatError);
    CHECK_THROWS_AS(parse_groundtruth_line("10,20,30,0"), FormatError);
}

TEST_CASE("format_groundtruth_line round-trips exactly") {
    const BoundingBox boxes[] = {
        {198.0, 214.0, 34.0, 81.0},
        {0.0, 0.0, 1.0, 1.0},
        {-3.5, 7.25, 12.125, 98.0625},
        {79.0, 99.0, 80.0, 100.0},
        {1e-3, 2.5e8, 0.1, 0.2},
    };
    for (const BoundingBox& b : boxes) {
        const std::string line = format_groundtruth_line(b);
        CHECK(parse_groundtruth_line(line) == b);
    }
    // Integral values print as plain integers, not exponent notation.
    CHECK(format_groundtruth_line({79.0, 99.0, 80.0, 100.0}) == "79,99,80,100");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-42.0) == "-42");
}

TEST_CASE("load_sequence reads frames and 1-based ground truth") {
    TempDir dir("seq");
    fs::create_directories(dir.path / "img");
    for (int i = 1; i <= 5; ++i) {
        char name[16];
        std::snprintf(name, sizeof name, "%04d.png", i);
        save_png(dir.path / "img" / name, tiny_frame(static_cast<std::uint8_t>(40 * i)));
    }
    write_file(dir.path / "groundtruth_rect.txt",
               "10,20,30,40\n11,21,30,40\n12,22,30,40\n13,23,30,40\n14,24,30,40\n");

    const Sequence seq = load_sequence(dir.path);
    CHECK(seq.name == "rct_test_seq");
    REQUIRE(seq.frame_count() == 5);
    REQUIRE(seq.ground_truth.has_value());
    REQUIRE(seq.ground_truth->size() == 5);
    // Disk coordinates are 1-based; in memory they are 0-based.
    CHECK((*seq.ground_truth)[0] == BoundingBox{9.0, 19.0, 30.0, 40.0});
    CHECK((*seq.ground_truth)[4] == BoundingBox{13.0, 23.0, 30.0, 40.0});

    const Frame f = seq.load_frame(2);
    CHECK(f.valid());
    CHECK(f.width == 6);
    CHECK(f.height == 4);
    CHECK(f.at(0, 0, 0) == 120);
    CHECK_THROWS_AS(seq.load_frame(5), SizeError);

    // Determinism: a second load returns the identical path order.
    const Sequence again = load_sequence(dir.path);
    CHECK(again.frame_paths == seq.frame_paths);
}

TEST_CASE("load_sequence orders frames by numeric stem") {
    TempDir dir("order");
    fs::create_directories(dir.path / "img");
    for (const char* name : {"10.png", "2.png", "1.png", "0003.png"})
        save_png(dir.path / "img" / name, tiny_frame(9));

    const Sequence seq = load_sequence(dir.path);
    REQUIRE(seq.frame_count() == 4);
    CHECK(seq.frame_paths[0].filename() == "1.png");
    CHECK(seq.frame_paths[1].filename() == "2.png");
    CHECK(seq.frame_paths[2].filename() == "0003.png");
    CHECK(seq.frame_paths[3].filename() == "10.png");
    CHECK(!seq.ground_truth.has_value());
}

TEST_CASE("load_sequence error paths") {
    CHECK_THROWS_AS(load_sequence("/nonexistent/sequence/root"), NotFoundError);

    TempDir no_img("noimg");
    CHECK_THROWS_AS(load_sequence(no_img.path), NotFoundError);

    TempDir empty("empty");
    fs::create_directories(empty.path / "img");
    write_file(empty.path / "img" / "notes.txt", "not an image\n");
    CHECK_THROWS_AS(load_sequence(empty.path), FormatError);

    TempDir mismatch("mismatch");
    fs::create_directories(mismatch.path / "img");
    for (int i = 1; i <= 5; ++i)
        save_png(mismatch.path / "img" / (std::to_string(i) + ".png"), tiny_frame(7));
    write_file(mismatch.path / "groundtruth_rect.txt",
               "1,1,5,5\n2,2,5,5\n3,3,5,5\n4,4,5,5\n");
    CHECK_THROWS_AS(load_sequence(mismatch.path), FormatError);
}

TEST_CASE("default_config carries the published parameter values") {
    const TrackerConfig cfg = default_config();
    CHECK(cfg.lambda == 0.001);
    CHECK(cfg.eta == 0.013);
    CHECK(cfg.num_scales == 5);
    CHECK(cfg.scale_step == 1.01);
    CHECK(cfg.cell_size == 4);
    CHECK(cfg.area_threshold == 0.20);
    CHECK(cfg.proposal_ratio == 0.05);
    CHECK(cfg.ratio_tolerance == 0.03);
    CHECK(cfg.use_mask);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("validate rejects out-of-range settings") {
    TrackerConfig cfg = default_config();
    cfg.lambda = 0.0;
    CHECK_THROWS_AS(cfg.validate(), FormatError);

    cfg = default_config();
    cfg.num_scales = 4;  // must be odd
    CHECK_THROWS_AS(cfg.validate(), FormatError);

    cfg = default_config();
    cfg.scale_step = 1.0;
    CHECK_THROWS_AS(cfg.validate(), FormatError);

    cfg = default_config();
    cfg.eta = 1.5;
    CHECK_THROWS_AS(cfg.validate(), FormatError);

    cfg = default_config();
    cfg.proposal_ratio = 1.0;
    CHECK_THROWS_AS(cfg.validate(), FormatError);

    cfg = default_config();
    cfg.admm_penalty_max = cfg.admm_penalty_init / 2.0;
    CHECK_THROWS_AS(cfg.validate(), FormatError);
}

TEST_CASE("load_config reads key = value lines over defaults") {
    TempDir dir("config");
    const fs::path file = dir.path / "tracker.cfg";
    write_file(file,
               "# comment line\n"
               "\n"
               "lambda = 0.01\n"
               "num_scales=7\n"
               "use_mask = 0\n"
               "  eta =\t0.025  \n");

    const TrackerConfig cfg = load_config(file);
    CHECK(cfg.lambda == 0.01);
    CHECK(cfg.num_scales == 7);
    CHECK(!cfg.use_mask);
    CHECK(cfg.eta == 0.025);
    CHECK(cfg.scale_step == 1.01);  // untouched default

    write_file(file, "not_a_key = 3\n");
    CHECK_THROWS_AS(load_config(file), FormatError);
    write_file(file, "lambda = banana\n");
    CHECK_THROWS_AS(load_config(file), FormatError);
    CHECK_THROWS_AS(load_config(dir.path / "missing.cfg"), NotFoundError);
}

TEST_CASE("set_config_field applies single overrides") {
    TrackerConfig cfg = default_config();
    set_config_field(cfg, "scale_step", "1.02");
    CHECK(cfg.scale_step == 1.02);
    set_config_field(cfg, "admm_iterations", "4");
    CHECK(cfg.admm_iterations == 4);
    set_config_field(cfg, "use_mask", "1");
    CHECK(cfg.use_mask);
    CHECK_THROWS_AS(set_config_field(cfg, "bogus", "1"), FormatError);
}

TEST_CASE("trajectory files round-trip through the 1-based convention") {
    TempDir dir("traj");
    const fs::path file = dir.path / "trajectory.txt";
    const std::vector<BoundingBox> boxes = {
        {9.0, 19.0, 30.0, 40.0},
        {10.5, 21.25, 30.0, 40.0},
        {0.0, 0.0, 5.0, 6.0},
    };
    save_trajectory(file, boxes);

    // On disk the first line is 1-based.
    std::ifstream in(file);
    std::string first;
    std::getline(in, first);
    CHECK(first == "10,20,30,40");

    const std::vector<BoundingBox> back = load_trajectory(file);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == boxes[i]);

    CHECK_THROWS_AS(load_trajectory(dir.path / "missing.txt"), NotFoundError);
}

TEST_CASE("save_png and load_image round-trip RGB pixel data") {
    TempDir dir("png");
    Frame f(5, 3);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 5; ++x) {
            f.at(x, y, 0) = static_cast<std::uint8_t>(50 * x);
            f.at(x, y, 1) = static_cast<std::uint8_t>(80 * y);
            f.at(x, y, 2) = static_cast<std::uint8_t>(10 + x + y);
        }
    const fs::path file = dir.path / "frame.png";
    save_png(file, f);
    const Frame back = load_image(file);
    REQUIRE(back.width == 5);
    REQUIRE(back.height == 3);
    CHECK(back.pixels == f.pixels);

    CHECK_THROWS_AS(load_image(dir.path / "missing.png"), NotFoundError);
}
