#pragma once

// Rasterization and pixel-level IoU metrics, plus the box adjacency
// predicate shared with the instruction and solver headers.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "fpkit/geometry.hpp"

namespace fpkit {

/// Fixed painting order: room types by descending total area in the
/// source corpus. Later paints overwrite earlier ones.
inline constexpr std::array<RoomType, kRoomTypeCount> kPaintingOrder = {
    RoomType::LivingRoom, RoomType::CommonRoom, RoomType::MasterRoom, RoomType::Balcony,
    RoomType::Bathroom,   RoomType::Kitchen,    RoomType::Storage,    RoomType::DiningRoom,
};

inline constexpr int kDefaultAdjacencyGap = 2;
inline constexpr int kDefaultMaxShift = 32;

struct TypePixels {
    long long intersection = 0;
    long long unions = 0;

    friend bool operator==(const TypePixels&, const TypePixels&) = default;
};

struct IoUScores {
    double micro = 0.0;
    double macro = 0.0;
    std::map<RoomType, TypePixels> per_type;
};

/// Macro averaging: PresentOnly skips types with zero union (default);
/// AllEight averages over all 8 types, scoring absent-in-both types 1.0.
enum class MacroMode { PresentOnly, AllEight };

/// Paints room footprints in kPaintingOrder (rooms of equal type in plan
/// order), clipped to the 256 grid. Pixels outside the boundary interior
/// are kept unless clip_to_boundary is set (rendering aid); unclipped
/// output lets the IoU penalize out-of-boundary placement.
inline RasterGrid rasterize(const FloorPlan& plan, bool clip_to_boundary = false) {
    RasterGrid grid;
    for (RoomType type : kPaintingOrder) {
        for (const Room& room : plan.rooms) {
            if (room.type != type) continue;
            const Footprint f = footprint(room.box);
            const auto label = static_cast<std::uint8_t>(label_index(type));
            for (int r = std::max(0, f.y0); r <= std::min(kGridSize - 1, f.y1); ++r) {
                for (int c = std::max(0, f.x0); c <= std::min(kGridSize - 1, f.x1); ++c) {
                    if (clip_to_boundary && !plan.boundary.at(r, c)) continue;
                    grid.set(r, c, label);
                }
            }
        }
    }
    return grid;
}

namespace detail {

inline IoUScores scores_from_counts(const std::array<long long, kRoomTypeCount + 1>& inter,
                                    const std::array<long long, kRoomTypeCount + 1>& uni,
                                    MacroMode mode) {
    IoUScores scores;
    long long inter_sum = 0, union_sum = 0;
    double macro_sum = 0.0;
    int macro_n = 0;
    for (int label = 1; label <= kRoomTypeCount; ++label) {
        const RoomType type = *room_type_from_label(label);
        if (uni[label] > 0) {
            scores.per_type[type] = {inter[label], uni[label]};
            inter_sum += inter[label];
            union_sum += uni[label];
            macro_sum += static_cast<double>(inter[label]) / static_cast<double>(uni[label]);
            ++macro_n;
        } else if (mode == MacroMode::AllEight) {
            macro_sum += 1.0;  // absent in both grids
            ++macro_n;
        }
    }
    // two all-background grids agree perfectly
    scores.micro = union_sum > 0 ? static_cast<double>(inter_sum) / static_cast<double>(union_sum)
                                 : 1.0;
    scores.macro = macro_n > 0 ? macro_sum / macro_n : 1.0;
    return scores;
}

}  // namespace detail

inline IoUScores iou(const RasterGrid& gt, const RasterGrid& pred,
                     MacroMode mode = MacroMode::PresentOnly) {
    if (gt.rows() != pred.rows() || gt.cols() != pred.cols()) {
        throw std::invalid_argument("iou: grid dimension mismatch");
    }
    std::array<long long, kRoomTypeCount + 1> inter{}, uni{};
    for (int r = 0; r < gt.rows(); ++r) {
        for (int c = 0; c < gt.cols(); ++c) {
            const int a = gt.at(r, c), b = pred.at(r, c);
            if (a == b) {
                if (a != 0) {
                    ++inter[a];
                    ++uni[a];
                }
            } else {
                if (a != 0) ++uni[a];
                if (b != 0) ++uni[b];
            }
        }
    }
    return detail::scores_from_counts(inter, uni, mode);
}

struct Shift {
    int dx = 0;  // columns, positive = east
    int dy = 0;  // rows, positive = south

    friend bool operator==(const Shift&, const Shift&) = default;
};

/// Maximizes micro IoU over integer translations of pred with
/// |dx|,|dy| <= max_shift. Out-shifted pixels drop; vacated pixels are
/// background. Ties go to the smaller |dx|+|dy|, then lexicographic
/// (dx, dy).
inline std::pair<IoUScores, Shift> shift_max_iou(const RasterGrid& gt, const RasterGrid& pred,
                                                 int max_shift,
                                                 MacroMode mode = MacroMode::PresentOnly) {
    if (gt.rows() != pred.rows() || gt.cols() != pred.cols()) {
        throw std::invalid_argument("shift_max_iou: grid dimension mismatch");
    }
    if (max_shift < 0) throw std::invalid_argument("shift_max_iou: negative max_shift");

    const int rows = gt.rows(), cols = gt.cols();
    std::array<long long, kRoomTypeCount + 1> gt_count{};
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) ++gt_count[gt.at(r, c)];

    double best_micro = -1.0;
    Shift best;
    std::array<long long, kRoomTypeCount + 1> best_inter{}, best_uni{};
    for (int dy = -max_shift; dy <= max_shift; ++dy) {
        for (int dx = -max_shift; dx <= max_shift; ++dx) {
            // shifted pred value at (r, c) is pred(r - dy, c - dx)
            const int r_lo = std::max(0, dy), r_hi = std::min(rows, rows + dy);
            const int c_lo = std::max(0, dx), c_hi = std::min(cols, cols + dx);
            std::array<long long, kRoomTypeCount + 1> inter{}, pred_count{};
            for (int r = r_lo; r < r_hi; ++r) {
                for (int c = c_lo; c < c_hi; ++c) {
                    const int b = pred.at(r - dy, c - dx);
                    if (b == 0) continue;
                    ++pred_count[b];
                    if (gt.at(r, c) == b) ++inter[b];
                }
            }
            std::array<long long, kRoomTypeCount + 1> uni{};
            long long inter_sum = 0, union_sum = 0;
            for (int label = 1; label <= kRoomTypeCount; ++label) {
                uni[label] = gt_count[label] + pred_count[label] - inter[label];
                inter_sum += inter[label];
                union_sum += uni[label];
            }
            const double micro = union_sum > 0
                                     ? static_cast<double>(inter_sum) / static_cast<double>(union_sum)
                                     : 1.0;
            const bool better =
                micro > best_micro ||
                (micro == best_micro &&
                 (std::abs(dx) + std::abs(dy) < std::abs(best.dx) + std::abs(best.dy) ||
                  (std::abs(dx) + std::abs(dy) == std::abs(best.dx) + std::abs(best.dy) &&
                   std::pair(dx, dy) < std::pair(best.dx, best.dy))));
            if (better) {
                best_micro = micro;
                best = {dx, dy};
                best_inter = inter;
                best_uni = uni;
            }
        }
    }
    return {detail::scores_from_counts(best_inter, best_uni, mode), best};
}

/// True iff the footprints overlap outright, or are separated by at most
/// `gap` pixels along one axis while sharing at least one pixel of extent
/// along the other (corner contact does not count).
inline bool adjacent(const BBox& a, const BBox& b, int gap = kDefaultAdjacencyGap) {
    if (gap < 0) throw std::invalid_argument("adjacent: negative gap");
    const Footprint fa = footprint(a), fb = footprint(b);
    const int overlap_x = std::min(fa.x1, fb.x1) - std::max(fa.x0, fb.x0) + 1;
    const int overlap_y = std::min(fa.y1, fb.y1) - std::max(fa.y0, fb.y0) + 1;
    if (overlap_x >= 1 && overlap_y >= 1) return true;
    // -overlap is the pixel gap between the nearer edges
    if (overlap_y >= 1 && -overlap_x <= gap) return true;
    if (overlap_x >= 1 && -overlap_y <= gap) return true;
    return false;
}

}  // namespace fpkit
