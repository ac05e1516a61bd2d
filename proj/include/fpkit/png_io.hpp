#pragma once

// PNG read/write (libpng) and the fixed 9-color label palette used for
// RasterGrid rendering and label-map import.

#include <png.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpkit/geometry.hpp"

namespace fpkit {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // RGB8, row-major

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

    Rgb at(int row, int col) const {
        const std::size_t i = (static_cast<std::size_t>(row) * width + col) * 3;
        return {pixels[i], pixels[i + 1], pixels[i + 2]};
    }
    void set(int row, int col, Rgb c) {
        const std::size_t i = (static_cast<std::size_t>(row) * width + col) * 3;
        pixels[i] = c.r;
        pixels[i + 1] = c.g;
        pixels[i + 2] = c.b;
    }
};

/// Label 0 (background) plus one color per room type, exact-match on load.
struct Palette {
    Rgb background{255, 255, 255};
    std::array<Rgb, kRoomTypeCount> rooms{};

    Rgb color(int label) const {
        return label == 0 ? background : rooms[static_cast<std::size_t>(label - 1)];
    }
    std::optional<int> label_of(Rgb c) const {
        if (c == background) return 0;
        for (int i = 0; i < kRoomTypeCount; ++i)
            if (rooms[static_cast<std::size_t>(i)] == c) return i + 1;
        return std::nullopt;
    }
};

inline const Palette& default_palette() {
    static const Palette palette = [] {
        Palette p;
        p.background = {255, 255, 255};
        p.rooms[static_cast<int>(RoomType::CommonRoom)] = {244, 164, 96};
        p.rooms[static_cast<int>(RoomType::Bathroom)] = {70, 130, 180};
        p.rooms[static_cast<int>(RoomType::Balcony)] = {144, 238, 144};
        p.rooms[static_cast<int>(RoomType::LivingRoom)] = {255, 99, 71};
        p.rooms[static_cast<int>(RoomType::MasterRoom)] = {147, 112, 219};
        p.rooms[static_cast<int>(RoomType::Kitchen)] = {255, 215, 0};
        p.rooms[static_cast<int>(RoomType::Storage)] = {128, 128, 128};
        p.rooms[static_cast<int>(RoomType::DiningRoom)] = {64, 224, 208};
        return p;
    }();
    return palette;
}

inline void write_png(const std::filesystem::path& path, const RgbImage& image) {
    if (image.width <= 0 || image.height <= 0) throw std::invalid_argument("write_png: empty image");
    std::FILE* file = std::fopen(path.string().c_str(), "wb");
    if (!file) throw std::runtime_error("write_png: cannot open " + path.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    std::vector<png_bytep> rows(static_cast<std::size_t>(image.height));
    for (int r = 0; r < image.height; ++r) {
        rows[static_cast<std::size_t>(r)] = const_cast<png_bytep>(
            image.pixels.data() + static_cast<std::size_t>(r) * image.width * 3);
    }
    if (!png || !info || setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(file);
        throw std::runtime_error("write_png: libpng failure for " + path.string());
    }
    png_init_io(png, file);
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
                 static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(file);
}

/// Reads any PNG as RGB8 (grayscale and paletted inputs are expanded,
/// alpha is stripped).
inline RgbImage read_png(const std::filesystem::path& path) {
    std::FILE* file = std::fopen(path.string().c_str(), "rb");
    if (!file) throw std::runtime_error("read_png: cannot open " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    RgbImage image;
    if (!png || !info || setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(file);
        throw std::runtime_error("read_png: libpng failure for " + path.string());
    }
    png_init_io(png, file);
    png_read_png(png, info,
                 PNG_TRANSFORM_STRIP_16 | PNG_TRANSFORM_STRIP_ALPHA | PNG_TRANSFORM_PACKING |
                     PNG_TRANSFORM_EXPAND | PNG_TRANSFORM_GRAY_TO_RGB,
                 nullptr);
    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const png_bytepp rows = png_get_rows(png, info);
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    image = RgbImage(static_cast<int>(width), static_cast<int>(height));
    if (rowbytes < static_cast<std::size_t>(width) * 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(file);
        throw std::runtime_error("read_png: unexpected row layout in " + path.string());
    }
    for (png_uint_32 r = 0; r < height; ++r) {
        for (png_uint_32 c = 0; c < width; ++c) {
            image.set(static_cast<int>(r), static_cast<int>(c),
                      {rows[r][c * 3], rows[r][c * 3 + 1], rows[r][c * 3 + 2]});
        }
    }
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(file);
    return image;
}

inline RgbImage render(const RasterGrid& grid, const Palette& palette = default_palette()) {
    RgbImage image(grid.cols(), grid.rows());
    for (int r = 0; r < grid.rows(); ++r)
        for (int c = 0; c < grid.cols(); ++c) image.set(r, c, palette.color(grid.at(r, c)));
    return image;
}

/// Inverts render(); any pixel color missing from the palette is an error.
inline RasterGrid raster_from_image(const RgbImage& image, const Palette& palette) {
    RasterGrid grid(image.height, image.width);
    for (int r = 0; r < image.height; ++r) {
        for (int c = 0; c < image.width; ++c) {
            const auto label = palette.label_of(image.at(r, c));
            if (!label) {
                const Rgb px = image.at(r, c);
                throw std::invalid_argument(
                    "unknown label value (" + std::to_string(px.r) + "," + std::to_string(px.g) +
                    "," + std::to_string(px.b) + ") at pixel (" + std::to_string(r) + "," +
                    std::to_string(c) + ")");
            }
            grid.set(r, c, static_cast<std::uint8_t>(*label));
        }
    }
    return grid;
}

}  // namespace fpkit
