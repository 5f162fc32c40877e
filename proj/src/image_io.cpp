#include "rct/image_io.hpp"

#include <algorithm>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>

#include <jpeglib.h>
#include <png.h>

#include "rct/errors.hpp"

namespace rct {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw NotFoundError("cannot open file: " + path.string());
    return f;
}

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(mgr->jump, 1);
}

Frame load_jpeg(std::FILE* f, const std::filesystem::path& path) {
    jpeg_decompress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = jpeg_error_exit;
    if (setjmp(jerr.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw FormatError("corrupt JPEG stream: " + path.string());
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;  // handles grayscale sources too
    jpeg_start_decompress(&cinfo);

    Frame frame(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height));
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = frame.pixels.data() +
                       static_cast<std::size_t>(cinfo.output_scanline) * frame.width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return frame;
}

Frame load_png(std::FILE* f, const std::filesystem::path& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("corrupt PNG stream: " + path.string());
    }
    png_init_io(png, f);
    png_read_info(png, info);

    // Force 8-bit RGB regardless of the source layout.
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_read_update_info(png, info);

    Frame frame(static_cast<int>(png_get_image_width(png, info)),
                static_cast<int>(png_get_image_height(png, info)));
    std::vector<png_bytep> rows(frame.height);
    for (int y = 0; y < frame.height; ++y)
        rows[y] = frame.pixels.data() + static_cast<std::size_t>(y) * frame.width * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return frame;
}

}  // namespace

Frame load_image(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");
    unsigned char magic[8] = {};
    const std::size_t n = std::fread(magic, 1, sizeof(magic), f.get());
    std::rewind(f.get());
    if (n >= 2 && magic[0] == 0xFF && magic[1] == 0xD8) return load_jpeg(f.get(), path);
    if (n >= 8 && png_sig_cmp(magic, 0, 8) == 0) return load_png(f.get(), path);
    throw FormatError("unsupported image format (not JPEG or PNG): " + path.string());
}

void save_png(const std::filesystem::path& path, const Frame& frame) {
    if (!frame.valid()) throw SizeError("save_png: invalid frame");
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw Error("cannot write file: " + path.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error("PNG encode failed: " + path.string());
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, frame.width, frame.height, 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < frame.height; ++y) {
        png_write_row(png, const_cast<png_bytep>(frame.pixels.data() +
                                                 static_cast<std::size_t>(y) * frame.width * 3));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void save_png_gray(const std::filesystem::path& path, const Grid& grid) {
    double lo = grid.values.empty() ? 0.0 : grid.values[0];
    double hi = lo;
    for (double v : grid.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi - lo;
    Frame img(grid.cols, grid.rows);
    for (int r = 0; r < grid.rows; ++r) {
        for (int c = 0; c < grid.cols; ++c) {
            const double v = span > 0.0 ? (grid.at(r, c) - lo) / span * 255.0 : 0.0;
            const auto g = static_cast<std::uint8_t>(v + 0.5);
            img.at(c, r, 0) = img.at(c, r, 1) = img.at(c, r, 2) = g;
        }
    }
    save_png(path, img);
}

}  // namespace rct
