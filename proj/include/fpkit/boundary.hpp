#pragma once

// Conversion between a raster BoundaryMask and the enclosing-box +
// exterior-boxes outline representation. decompose/reconstruct are exact
// inverses on every nonempty mask.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "fpkit/geometry.hpp"

namespace fpkit {

/// One enclosing box plus M exterior boxes. The exterior boxes tile the
/// cells that are inside the enclosing footprint but outside the plan.
struct BoundarySpec {
    BBox enclosing;
    std::vector<BBox> exterior;

    friend bool operator==(const BoundarySpec&, const BoundarySpec&) = default;
};

enum class ReconstructMode { Strict, Lenient };

/// Greedy horizontal-strip tiling: scan rows top to bottom inside the
/// enclosing box; each maximal horizontal run of exterior cells is extended
/// downward while the identical run repeats, then emitted as one box.
/// Exterior boxes come out ordered by (top row, left column).
inline BoundarySpec decompose(const BoundaryMask& mask) {
    int x0 = kGridSize, y0 = kGridSize, x1 = -1, y1 = -1;
    for (int r = 0; r < kGridSize; ++r) {
        for (int c = 0; c < kGridSize; ++c) {
            if (!mask.at(r, c)) continue;
            x0 = std::min(x0, c);
            x1 = std::max(x1, c);
            y0 = std::min(y0, r);
            y1 = std::max(y1, r);
        }
    }
    if (x1 < 0) throw std::invalid_argument("decompose: empty mask");

    BoundarySpec spec;
    spec.enclosing = bbox_from_footprint(x0, y0, x1, y1);

    struct Run {
        int c0, c1, top;
    };
    std::vector<Run> open;      // runs carried over from the previous row
    std::vector<Run> current;   // runs of the row being scanned
    for (int r = y0; r <= y1 + 1; ++r) {
        current.clear();
        if (r <= y1) {
            int c = x0;
            while (c <= x1) {
                if (mask.at(r, c)) {
                    ++c;
                    continue;
                }
                int start = c;
                while (c <= x1 && !mask.at(r, c)) ++c;
                current.push_back({start, c - 1, r});
            }
        }
        // close open runs that do not repeat identically in this row
        for (const Run& run : open) {
            bool repeated = false;
            for (Run& cur : current) {
                if (cur.c0 == run.c0 && cur.c1 == run.c1) {
                    cur.top = run.top;
                    repeated = true;
                    break;
                }
            }
            if (!repeated) {
                spec.exterior.push_back(bbox_from_footprint(run.c0, run.top, run.c1, r - 1));
            }
        }
        open = current;
    }

    std::sort(spec.exterior.begin(), spec.exterior.end(), [](const BBox& a, const BBox& b) {
        const Footprint fa = footprint(a), fb = footprint(b);
        return fa.y0 != fb.y0 ? fa.y0 < fb.y0 : fa.x0 < fb.x0;
    });
    return spec;
}

/// True cells = enclosing footprint minus the union of exterior footprints.
/// Strict mode rejects overlapping exterior boxes and boxes that leave the
/// enclosing footprint; lenient mode just subtracts whatever intersects.
inline BoundaryMask reconstruct(const BoundarySpec& spec,
                                ReconstructMode mode = ReconstructMode::Strict) {
    const Footprint enc = footprint(spec.enclosing);
    if (!enc.in_grid()) throw std::invalid_argument("reconstruct: enclosing box outside grid");

    BoundaryMask mask;
    mask.fill_footprint(enc, true);
    for (const BBox& box : spec.exterior) {
        const Footprint f = footprint(box);
        if (mode == ReconstructMode::Strict &&
            (f.x0 < enc.x0 || f.y0 < enc.y0 || f.x1 > enc.x1 || f.y1 > enc.y1)) {
            throw std::invalid_argument("reconstruct: exterior box outside enclosing footprint");
        }
        for (int r = std::max(f.y0, 0); r <= std::min(f.y1, kGridSize - 1); ++r) {
            for (int c = std::max(f.x0, 0); c <= std::min(f.x1, kGridSize - 1); ++c) {
                if (mode == ReconstructMode::Strict && !mask.at(r, c)) {
                    throw std::invalid_argument("reconstruct: overlapping exterior boxes");
                }
                mask.set(r, c, false);
            }
        }
    }
    return mask;
}

/// True iff the interior is nonempty, 4-connected, and hole-free
/// (every exterior cell reaches the grid border 4-connectedly).
inline bool is_rectilinear_simple(const BoundaryMask& mask) {
    int seed_r = -1, seed_c = -1;
    long long interior = 0;
    for (int r = 0; r < kGridSize && seed_r < 0; ++r)
        for (int c = 0; c < kGridSize; ++c)
            if (mask.at(r, c)) {
                seed_r = r;
                seed_c = c;
                break;
            }
    if (seed_r < 0) return false;
    for (int r = 0; r < kGridSize; ++r)
        for (int c = 0; c < kGridSize; ++c)
            if (mask.at(r, c)) ++interior;

    std::vector<std::uint8_t> seen(kGridSize * kGridSize, 0);
    auto idx = [](int r, int c) { return static_cast<std::size_t>(r) * kGridSize + c; };
    std::vector<std::pair<int, int>> stack;

    // interior connectivity
    stack.push_back({seed_r, seed_c});
    seen[idx(seed_r, seed_c)] = 1;
    long long reached = 0;
    const int dr[4] = {1, -1, 0, 0};
    const int dc[4] = {0, 0, 1, -1};
    while (!stack.empty()) {
        auto [r, c] = stack.back();
        stack.pop_back();
        ++reached;
        for (int k = 0; k < 4; ++k) {
            int nr = r + dr[k], nc = c + dc[k];
            if (nr < 0 || nc < 0 || nr >= kGridSize || nc >= kGridSize) continue;
            if (!mask.at(nr, nc) || seen[idx(nr, nc)]) continue;
            seen[idx(nr, nc)] = 1;
            stack.push_back({nr, nc});
        }
    }
    if (reached != interior) return false;

    // hole check: flood the exterior from the border
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < kGridSize; ++r) {
        for (int c : {0, kGridSize - 1}) {
            if (!mask.at(r, c) && !seen[idx(r, c)]) {
                seen[idx(r, c)] = 1;
                stack.push_back({r, c});
            }
        }
    }
    for (int c = 0; c < kGridSize; ++c) {
        for (int r : {0, kGridSize - 1}) {
            if (!mask.at(r, c) && !seen[idx(r, c)]) {
                seen[idx(r, c)] = 1;
                stack.push_back({r, c});
            }
        }
    }
    while (!stack.empty()) {
        auto [r, c] = stack.back();
        stack.pop_back();
        for (int k = 0; k < 4; ++k) {
            int nr = r + dr[k], nc = c + dc[k];
            if (nr < 0 || nc < 0 || nr >= kGridSize || nc >= kGridSize) continue;
            if (mask.at(nr, nc) || seen[idx(nr, nc)]) continue;
            seen[idx(nr, nc)] = 1;
            stack.push_back({nr, nc});
        }
    }
    for (int r = 0; r < kGridSize; ++r)
        for (int c = 0; c < kGridSize; ++c)
            if (!mask.at(r, c) && !seen[idx(r, c)]) return false;
    return true;
}

}  // namespace fpkit
