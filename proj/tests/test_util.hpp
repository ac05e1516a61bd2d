#pragma once

// Shared helpers for the test suites: deterministic generators for plans,
// masks and grids, plus independent brute-force oracles for the metrics.

#include <array>
#include <random>
#include <vector>

#include "fpkit/boundary.hpp"
#include "fpkit/eval.hpp"
#include "fpkit/geometry.hpp"

namespace fpkit::testing {

inline BBox random_token_bbox(std::mt19937& rng) {
    // in-grid footprint by construction
    const int w = 1 + static_cast<int>(rng() % 64);
    const int h = 1 + static_cast<int>(rng() % 64);
    const int x0 = static_cast<int>(rng() % static_cast<unsigned>(256 - w));
    const int y0 = static_cast<int>(rng() % static_cast<unsigned>(256 - h));
    return bbox_from_footprint(x0, y0, x0 + w - 1, y0 + h - 1);
}

inline FloorPlan random_plan(std::mt19937& rng, int min_rooms = 1, int max_rooms = 10) {
    FloorPlan plan;
    const int n = min_rooms + static_cast<int>(rng() % static_cast<unsigned>(max_rooms - min_rooms + 1));
    for (int i = 0; i < n; ++i) {
        plan.rooms.push_back({kAllRoomTypes[rng() % 8u], random_token_bbox(rng)});
    }
    return plan;
}

/// Union of 1..6 random axis-aligned rectangles (spans kept <= 255 so the
/// enclosing box stays token-representable).
inline BoundaryMask random_rect_union_mask(std::mt19937& rng, int max_rects = 6) {
    BoundaryMask mask;
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_rects));
    for (int i = 0; i < n; ++i) {
        const int w = 10 + static_cast<int>(rng() % 120);
        const int h = 10 + static_cast<int>(rng() % 120);
        const int x0 = static_cast<int>(rng() % static_cast<unsigned>(255 - w));
        const int y0 = static_cast<int>(rng() % static_cast<unsigned>(255 - h));
        mask.fill_footprint({x0, y0, x0 + w - 1, y0 + h - 1}, true);
    }
    return mask;
}

inline BoundaryMask l_shape_mask() {
    // rows 0..99 x cols 0..99 minus rows 0..49 x cols 50..99
    BoundaryMask mask;
    mask.fill_footprint({0, 0, 99, 99}, true);
    mask.fill_footprint({50, 0, 99, 49}, false);
    return mask;
}

/// Splits a footprint into up to `count` parts by random guillotine cuts,
/// never producing a side shorter than min_side.
inline std::vector<Footprint> guillotine_split(std::mt19937& rng, const Footprint& area, int count,
                                               int min_side) {
    std::vector<Footprint> parts{area};
    while (static_cast<int>(parts.size()) < count) {
        int best = -1;
        long long best_area = -1;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const bool splittable =
                parts[i].width() >= 2 * min_side || parts[i].height() >= 2 * min_side;
            if (splittable && parts[i].area() > best_area) {
                best = static_cast<int>(i);
                best_area = parts[i].area();
            }
        }
        if (best < 0) break;
        const Footprint p = parts[best];
        const bool can_v = p.width() >= 2 * min_side;
        const bool can_h = p.height() >= 2 * min_side;
        const bool vertical = can_v && (!can_h || rng() % 2u);
        if (vertical) {
            const int cut = p.x0 + min_side - 1 +
                            static_cast<int>(rng() % static_cast<unsigned>(p.width() - 2 * min_side + 1));
            parts[best] = {p.x0, p.y0, cut, p.y1};
            parts.push_back({cut + 1, p.y0, p.x1, p.y1});
        } else {
            const int cut = p.y0 + min_side - 1 +
                            static_cast<int>(rng() % static_cast<unsigned>(p.height() - 2 * min_side + 1));
            parts[best] = {p.x0, p.y0, p.x1, cut};
            parts.push_back({p.x0, cut + 1, p.x1, p.y1});
        }
    }
    return parts;
}

/// Ground-truth style plan whose rooms exactly tile a rectangular or
/// L-shaped boundary.
inline FloorPlan synthetic_plan(std::mt19937& rng, int room_count, bool l_shaped) {
    const int width = 150 + static_cast<int>(rng() % 70);
    const int height = 150 + static_cast<int>(rng() % 70);
    const int x0 = 8 + static_cast<int>(rng() % static_cast<unsigned>(240 - width));
    const int y0 = 8 + static_cast<int>(rng() % static_cast<unsigned>(240 - height));
    const Footprint outer{x0, y0, x0 + width - 1, y0 + height - 1};

    FloorPlan plan;
    std::vector<Footprint> parts;
    constexpr int kMinSide = 18;
    if (!l_shaped) {
        plan.boundary.fill_footprint(outer, true);
        parts = guillotine_split(rng, outer, room_count, kMinSide);
    } else {
        const int band = outer.y0 + height * (35 + static_cast<int>(rng() % 30)) / 100;
        const int notch = outer.x0 + width * (45 + static_cast<int>(rng() % 30)) / 100;
        const Footprint top{outer.x0, outer.y0, notch, band};
        const Footprint bottom{outer.x0, band + 1, outer.x1, outer.y1};
        plan.boundary.fill_footprint(top, true);
        plan.boundary.fill_footprint(bottom, true);
        const int top_share = std::max(
            1, static_cast<int>(room_count * top.area() / (top.area() + bottom.area())));
        const int n_top = std::min(top_share, room_count - 1);
        parts = guillotine_split(rng, top, n_top, kMinSide);
        const auto rest = guillotine_split(rng, bottom, room_count - n_top, kMinSide);
        parts.insert(parts.end(), rest.begin(), rest.end());
    }
    for (const Footprint& part : parts) {
        plan.rooms.push_back({kAllRoomTypes[rng() % 8u], bbox_from_footprint(part)});
    }
    return plan;
}

inline RasterGrid random_grid(std::mt19937& rng, int rows, int cols) {
    RasterGrid grid(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            grid.set(r, c, static_cast<std::uint8_t>(rng() % 9u));
    return grid;
}

inline RasterGrid shift_grid(const RasterGrid& grid, int dx, int dy) {
    RasterGrid out(grid.rows(), grid.cols());
    for (int r = 0; r < grid.rows(); ++r) {
        for (int c = 0; c < grid.cols(); ++c) {
            const int sr = r - dy, sc = c - dx;
            if (sr >= 0 && sc >= 0 && sr < grid.rows() && sc < grid.cols())
                out.set(r, c, grid.at(sr, sc));
        }
    }
    return out;
}

struct OracleScores {
    double micro = 0.0;
    double macro = 0.0;
    std::array<long long, kRoomTypeCount + 1> inter{};
    std::array<long long, kRoomTypeCount + 1> uni{};
};

/// Straight per-pixel recount of the IoU definitions, independent of the
/// eval implementation.
inline OracleScores oracle_iou(const RasterGrid& a, const RasterGrid& b, bool all_eight = false) {
    OracleScores out;
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) {
            const int va = a.at(r, c), vb = b.at(r, c);
            for (int label = 1; label <= kRoomTypeCount; ++label) {
                const bool in_a = va == label, in_b = vb == label;
                if (in_a && in_b) ++out.inter[label];
                if (in_a || in_b) ++out.uni[label];
            }
        }
    }
    long long is = 0, us = 0;
    double macro_sum = 0.0;
    int macro_n = 0;
    for (int label = 1; label <= kRoomTypeCount; ++label) {
        is += out.inter[label];
        us += out.uni[label];
        if (out.uni[label] > 0) {
            macro_sum += static_cast<double>(out.inter[label]) / static_cast<double>(out.uni[label]);
            ++macro_n;
        } else if (all_eight) {
            macro_sum += 1.0;
            ++macro_n;
        }
    }
    out.micro = us > 0 ? static_cast<double>(is) / static_cast<double>(us) : 1.0;
    out.macro = macro_n > 0 ? macro_sum / macro_n : 1.0;
    return out;
}

}  // namespace fpkit::testing
