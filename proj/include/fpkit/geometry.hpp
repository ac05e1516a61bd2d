#pragma once

// Core value types and pixel conventions shared by every other header.
//
// Grid convention: 256x256 raster, row 0 is the top (north), column 0 is
// the left (west); y grows southward. A BBox stores the center column x,
// center row y, height h and width w. Its inclusive pixel footprint is
//   columns [x - floor(w/2), x - floor(w/2) + w - 1]
//   rows    [y - floor(h/2), y - floor(h/2) + h - 1]
// which makes footprint <-> BBox a bijection.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fpkit {

inline constexpr int kGridSize = 256;

enum class RoomType : std::uint8_t {
    CommonRoom = 0,
    Bathroom,
    Balcony,
    LivingRoom,
    MasterRoom,
    Kitchen,
    Storage,
    DiningRoom,
};

inline constexpr int kRoomTypeCount = 8;

inline constexpr std::array<RoomType, kRoomTypeCount> kAllRoomTypes = {
    RoomType::CommonRoom, RoomType::Bathroom,  RoomType::Balcony,
    RoomType::LivingRoom, RoomType::MasterRoom, RoomType::Kitchen,
    RoomType::Storage,    RoomType::DiningRoom,
};

/// Raster label index, 1..8; label 0 is background/exterior.
constexpr int label_index(RoomType t) { return static_cast<int>(t) + 1; }

inline std::optional<RoomType> room_type_from_label(int label) {
    if (label < 1 || label > kRoomTypeCount) return std::nullopt;
    return static_cast<RoomType>(label - 1);
}

/// Canonical lowercase display name, e.g. "living room".
inline std::string_view display_name(RoomType t) {
    static constexpr std::array<std::string_view, kRoomTypeCount> names = {
        "common room", "bathroom", "balcony", "living room",
        "master room", "kitchen",  "storage", "dining room",
    };
    return names[static_cast<int>(t)];
}

/// CamelCase name used in sequences and JSON, e.g. "LivingRoom".
inline std::string_view camel_name(RoomType t) {
    static constexpr std::array<std::string_view, kRoomTypeCount> names = {
        "CommonRoom", "Bathroom", "Balcony", "LivingRoom",
        "MasterRoom", "Kitchen",  "Storage", "DiningRoom",
    };
    return names[static_cast<int>(t)];
}

/// Accepts CamelCase or space-separated names, case-insensitively
/// ("LivingRoom", "living room", "Living Room", ...).
inline std::optional<RoomType> room_type_from_name(std::string_view name) {
    std::string key;
    key.reserve(name.size());
    for (char c : name) {
        if (c == ' ' || c == '\t') continue;
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    for (RoomType t : kAllRoomTypes) {
        std::string_view camel = camel_name(t);
        std::string compact;
        compact.reserve(camel.size());
        for (char c : camel) compact.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (key == compact) return t;
    }
    return std::nullopt;
}

/// Inclusive pixel rectangle; may extend outside the grid for flagged boxes.
struct Footprint {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    friend bool operator==(const Footprint&, const Footprint&) = default;

    int width() const { return x1 - x0 + 1; }
    int height() const { return y1 - y0 + 1; }
    long long area() const { return static_cast<long long>(width()) * height(); }
    bool in_grid() const {
        return x0 >= 0 && y0 >= 0 && x1 < kGridSize && y1 < kGridSize;
    }
};

/// Center/extent box. Values are representable as single sequence tokens
/// when 0 <= x,y <= 255 and 1 <= h,w <= 255. A box decoded from tokens may
/// have a footprint outside the grid; it is flagged, not rejected.
struct BBox {
    int x = 0;  // center column
    int y = 0;  // center row
    int h = 1;
    int w = 1;

    friend bool operator==(const BBox&, const BBox&) = default;
};

constexpr bool token_representable(const BBox& b) {
    return b.x >= 0 && b.x <= 255 && b.y >= 0 && b.y <= 255 &&
           b.h >= 1 && b.h <= 255 && b.w >= 1 && b.w <= 255;
}

inline Footprint footprint(const BBox& b) {
    Footprint f;
    f.x0 = b.x - b.w / 2;
    f.y0 = b.y - b.h / 2;
    f.x1 = f.x0 + b.w - 1;
    f.y1 = f.y0 + b.h - 1;
    return f;
}

inline bool footprint_in_grid(const BBox& b) { return footprint(b).in_grid(); }

inline long long box_area(const BBox& b) {
    return static_cast<long long>(b.h) * b.w;
}

inline BBox bbox_from_footprint(int x0, int y0, int x1, int y1) {
    if (x0 < 0 || y0 < 0 || x1 > 255 || y1 > 255 || x0 > x1 || y0 > y1) {
        throw std::invalid_argument("bbox_from_footprint: footprint outside [0,255]^2 or inverted");
    }
    const int w = x1 - x0 + 1;
    const int h = y1 - y0 + 1;
    if (w > 255 || h > 255) {
        throw std::invalid_argument("bbox_from_footprint: span too large for token range");
    }
    BBox b;
    b.w = w;
    b.h = h;
    b.x = x0 + w / 2;
    b.y = y0 + h / 2;
    return b;
}

inline BBox bbox_from_footprint(const Footprint& f) {
    return bbox_from_footprint(f.x0, f.y0, f.x1, f.y1);
}

/// 256x256 boolean mask; true = interior of the floor plan. The type
/// permits any mask; validity (nonempty, connected, hole-free) is a
/// separate check in boundary.hpp.
class BoundaryMask {
public:
    BoundaryMask() : cells_(kGridSize * kGridSize, 0) {}

    bool at(int row, int col) const { return cells_[index(row, col)] != 0; }
    void set(int row, int col, bool v) { cells_[index(row, col)] = v ? 1 : 0; }

    bool empty() const {
        for (auto c : cells_)
            if (c) return false;
        return true;
    }

    long long count() const {
        long long n = 0;
        for (auto c : cells_) n += c;
        return n;
    }

    void fill_footprint(const Footprint& f, bool v) {
        for (int r = std::max(0, f.y0); r <= std::min(kGridSize - 1, f.y1); ++r)
            for (int c = std::max(0, f.x0); c <= std::min(kGridSize - 1, f.x1); ++c)
                set(r, c, v);
    }

    friend bool operator==(const BoundaryMask&, const BoundaryMask&) = default;

private:
    static std::size_t index(int row, int col) {
        return static_cast<std::size_t>(row) * kGridSize + col;
    }
    std::vector<std::uint8_t> cells_;
};

/// Label grid; every cell holds a label index 0..8. Canonical size is
/// 256x256 but evaluation accepts any equal pair of dimensions.
class RasterGrid {
public:
    RasterGrid() : RasterGrid(kGridSize, kGridSize) {}
    RasterGrid(int rows, int cols)
        : rows_(rows), cols_(cols), labels_(static_cast<std::size_t>(rows) * cols, 0) {
        if (rows <= 0 || cols <= 0) throw std::invalid_argument("RasterGrid: nonpositive dimensions");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::uint8_t at(int row, int col) const { return labels_[index(row, col)]; }
    void set(int row, int col, std::uint8_t label) {
        if (label > kRoomTypeCount) throw std::invalid_argument("RasterGrid: label out of range");
        labels_[index(row, col)] = label;
    }

    friend bool operator==(const RasterGrid&, const RasterGrid&) = default;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * cols_ + col;
    }
    int rows_;
    int cols_;
    std::vector<std::uint8_t> labels_;
};

struct Room {
    RoomType type = RoomType::CommonRoom;
    BBox box;

    friend bool operator==(const Room&, const Room&) = default;
};

/// Boundary mask plus an ordered room list. Room order is preserved
/// exactly; it defines sequence encoding order, not painting order.
struct FloorPlan {
    BoundaryMask boundary;
    std::vector<Room> rooms;

    friend bool operator==(const FloorPlan&, const FloorPlan&) = default;
};

}  // namespace fpkit
