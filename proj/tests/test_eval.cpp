#include "fpkit/eval.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace fpkit;
using fpkit::testing::oracle_iou;
using fpkit::testing::random_grid;
using fpkit::testing::shift_grid;

TEST(Rasterize, EmptyPlanIsBackground) {
    const RasterGrid grid = rasterize(FloorPlan{});
    for (int r = 0; r < 256; r += 17)
        for (int c = 0; c < 256; c += 17) ASSERT_EQ(grid.at(r, c), 0);
}

TEST(Rasterize, PaintingOrderIsTypeFixed) {
    FloorPlan plan;
    plan.rooms.push_back({RoomType::LivingRoom, bbox_from_footprint(10, 10, 59, 59)});
    plan.rooms.push_back({RoomType::Kitchen, bbox_from_footprint(40, 40, 89, 89)});
    const RasterGrid grid = rasterize(plan);
    // the overlap belongs to the kitchen, painted later in the fixed order
    EXPECT_EQ(grid.at(50, 50), label_index(RoomType::Kitchen));
    EXPECT_EQ(grid.at(20, 20), label_index(RoomType::LivingRoom));

    FloorPlan reversed;
    reversed.rooms.push_back(plan.rooms[1]);
    reversed.rooms.push_back(plan.rooms[0]);
    EXPECT_TRUE(rasterize(reversed) == grid);
}

TEST(Rasterize, BalconyPixelCount) {
    FloorPlan plan;
    plan.rooms.push_back({RoomType::Balcony, BBox{87, 66, 18, 23}});
    const RasterGrid grid = rasterize(plan);
    long long count = 0;
    for (int r = 0; r < 256; ++r)
        for (int c = 0; c < 256; ++c)
            if (grid.at(r, c) == label_index(RoomType::Balcony)) ++count;
    EXPECT_EQ(count, 18 * 23);
    const Footprint f = footprint(BBox{87, 66, 18, 23});
    EXPECT_EQ(grid.at(f.y0, f.x0), label_index(RoomType::Balcony));
    EXPECT_EQ(grid.at(f.y1, f.x1), label_index(RoomType::Balcony));
    EXPECT_EQ(grid.at(f.y0 - 1, f.x0), 0);
    EXPECT_EQ(grid.at(f.y1 + 1, f.x1), 0);
}

TEST(Rasterize, ClipsToGridAndOptionallyBoundary) {
    FloorPlan plan;
    plan.boundary.fill_footprint({0, 0, 49, 49}, true);
    plan.rooms.push_back({RoomType::Kitchen, BBox{0, 0, 20, 20}});  // leaves the grid
    const RasterGrid unclipped = rasterize(plan);
    EXPECT_EQ(unclipped.at(0, 0), label_index(RoomType::Kitchen));

    plan.rooms[0].box = BBox{45, 45, 20, 20};  // leaves the boundary, stays in grid
    const RasterGrid loose = rasterize(plan);
    EXPECT_EQ(loose.at(52, 52), label_index(RoomType::Kitchen));
    const RasterGrid clipped = rasterize(plan, true);
    EXPECT_EQ(clipped.at(52, 52), 0);
    EXPECT_EQ(clipped.at(45, 45), label_index(RoomType::Kitchen));
}

TEST(Iou, TrivialAndWorkedExamples) {
    RasterGrid a(16, 16), b(16, 16);
    // identical nonempty grids
    a.set(3, 3, 2);
    b.set(3, 3, 2);
    IoUScores s = iou(a, b);
    EXPECT_DOUBLE_EQ(s.micro, 1.0);
    EXPECT_DOUBLE_EQ(s.macro, 1.0);

    // disjoint same-type boxes
    RasterGrid c(16, 16), d(16, 16);
    c.set(0, 0, 5);
    d.set(8, 8, 5);
    s = iou(c, d);
    EXPECT_DOUBLE_EQ(s.micro, 0.0);
    EXPECT_DOUBLE_EQ(s.macro, 0.0);

    // kitchen 2x2 at (0,0) vs kitchen 2x2 at (1,1): intersection 1, union 7
    RasterGrid gt(16, 16), pred(16, 16);
    const int k = label_index(RoomType::Kitchen);
    for (int r = 0; r <= 1; ++r)
        for (int col = 0; col <= 1; ++col) gt.set(r, col, static_cast<std::uint8_t>(k));
    for (int r = 1; r <= 2; ++r)
        for (int col = 1; col <= 2; ++col) pred.set(r, col, static_cast<std::uint8_t>(k));
    s = iou(gt, pred);
    EXPECT_DOUBLE_EQ(s.micro, 1.0 / 7.0);
    EXPECT_DOUBLE_EQ(s.macro, 1.0 / 7.0);
    EXPECT_EQ(s.per_type.at(RoomType::Kitchen).intersection, 1);
    EXPECT_EQ(s.per_type.at(RoomType::Kitchen).unions, 7);

    RasterGrid wrong(8, 8);
    EXPECT_THROW(iou(gt, wrong), std::invalid_argument);
}

TEST(Iou, MatchesOracleOnRandomGrids) {
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        const RasterGrid a = random_grid(rng, 16, 16);
        const RasterGrid b = random_grid(rng, 16, 16);
        const IoUScores mine = iou(a, b);
        const auto expect = oracle_iou(a, b);
        ASSERT_NEAR(mine.micro, expect.micro, 1e-12);
        ASSERT_NEAR(mine.macro, expect.macro, 1e-12);
        const IoUScores all8 = iou(a, b, MacroMode::AllEight);
        const auto expect8 = oracle_iou(a, b, true);
        ASSERT_NEAR(all8.macro, expect8.macro, 1e-12);

        // symmetry and range
        const IoUScores rev = iou(b, a);
        ASSERT_DOUBLE_EQ(mine.micro, rev.micro);
        ASSERT_DOUBLE_EQ(mine.macro, rev.macro);
        ASSERT_GE(mine.micro, 0.0);
        ASSERT_LE(mine.micro, 1.0);
        ASSERT_GE(mine.macro, 0.0);
        ASSERT_LE(mine.macro, 1.0);
    }
}

TEST(Iou, SingleTypeMicroEqualsMacro) {
    std::mt19937 rng(17);
    for (int i = 0; i < 50; ++i) {
        RasterGrid a(16, 16), b(16, 16);
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c) {
                if (rng() % 3u == 0) a.set(r, c, 4);
                if (rng() % 3u == 0) b.set(r, c, 4);
            }
        const IoUScores s = iou(a, b);
        ASSERT_DOUBLE_EQ(s.micro, s.macro);
    }
}

TEST(ShiftMaxIou, RecoversExactTranslation) {
    std::mt19937 rng(41);
    FloorPlan plan;
    plan.rooms.push_back({RoomType::Kitchen, bbox_from_footprint(100, 100, 139, 129)});
    plan.rooms.push_back({RoomType::Balcony, bbox_from_footprint(150, 100, 179, 119)});
    const RasterGrid gt = rasterize(plan);
    const RasterGrid pred = shift_grid(gt, 5, -3);
    const auto [scores, shift] = shift_max_iou(gt, pred, 8);
    EXPECT_DOUBLE_EQ(scores.micro, 1.0);
    EXPECT_EQ(shift, (Shift{-5, 3}));
}

TEST(ShiftMaxIou, ZeroWindowEqualsIou) {
    std::mt19937 rng(43);
    const RasterGrid a = random_grid(rng, 16, 16);
    const RasterGrid b = random_grid(rng, 16, 16);
    const auto [scores, shift] = shift_max_iou(a, b, 0);
    const IoUScores plain = iou(a, b);
    EXPECT_DOUBLE_EQ(scores.micro, plain.micro);
    EXPECT_DOUBLE_EQ(scores.macro, plain.macro);
    EXPECT_EQ(shift, (Shift{0, 0}));
}

TEST(ShiftMaxIou, MatchesExhaustiveOracle) {
    std::mt19937 rng(47);
    for (int i = 0; i < 60; ++i) {
        const RasterGrid a = random_grid(rng, 16, 16);
        const RasterGrid b = random_grid(rng, 16, 16);
        const int max_shift = 4;
        double best_micro = -1.0;
        Shift best;
        for (int dy = -max_shift; dy <= max_shift; ++dy) {
            for (int dx = -max_shift; dx <= max_shift; ++dx) {
                const double micro = oracle_iou(a, shift_grid(b, dx, dy)).micro;
                const bool better =
                    micro > best_micro ||
                    (micro == best_micro &&
                     (std::abs(dx) + std::abs(dy) < std::abs(best.dx) + std::abs(best.dy) ||
                      (std::abs(dx) + std::abs(dy) == std::abs(best.dx) + std::abs(best.dy) &&
                       std::pair(dx, dy) < std::pair(best.dx, best.dy))));
                if (better) {
                    best_micro = micro;
                    best = {dx, dy};
                }
            }
        }
        const auto [scores, shift] = shift_max_iou(a, b, max_shift);
        ASSERT_NEAR(scores.micro, best_micro, 1e-12);
        ASSERT_EQ(shift, best);

        // dominance over the unshifted score
        ASSERT_GE(scores.micro + 1e-12, iou(a, b).micro);
    }
}

TEST(Adjacent, Definition) {
    const BBox a = bbox_from_footprint(0, 0, 9, 9);
    // shares the full right edge
    EXPECT_TRUE(adjacent(a, bbox_from_footprint(10, 0, 19, 9), 0));
    // 10 px apart
    EXPECT_FALSE(adjacent(a, bbox_from_footprint(20, 0, 29, 9), 2));
    // 2 px apart with overlap
    EXPECT_TRUE(adjacent(a, bbox_from_footprint(12, 0, 19, 9), 2));
    EXPECT_FALSE(adjacent(a, bbox_from_footprint(12, 0, 19, 9), 1));
    // corner contact has no shared extent
    EXPECT_FALSE(adjacent(a, bbox_from_footprint(10, 10, 19, 19), 2));
    // outright overlap
    EXPECT_TRUE(adjacent(a, bbox_from_footprint(5, 5, 14, 14), 0));
    EXPECT_THROW(adjacent(a, a, -1), std::invalid_argument);
}
