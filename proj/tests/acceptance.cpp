// Acceptance suite: runs every criterion end to end and prints one
// PASS/FAIL/SKIP line each. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fpkit/fpkit.hpp"
#include "test_util.hpp"

using namespace fpkit;
namespace ft = fpkit::testing;

namespace {

struct Outcome {
    enum Kind { Pass, Fail, Skip } kind = Fail;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome fail(std::string detail) { return {Outcome::Fail, std::move(detail)}; }
Outcome pass(std::string detail) { return {Outcome::Pass, std::move(detail)}; }

Outcome codec_round_trip() {
    const auto start = std::chrono::steady_clock::now();
    const std::string reference =
        "[ Balcony | x coordinate = 87 | y coordinate = 66 | height = 18 | width = 23 ]";
    if (encode_room(RoomType::Balcony, BBox{87, 66, 18, 23}) != reference)
        return fail("reference sequence mismatch");

    std::mt19937 rng(1001);
    for (int i = 0; i < 1000; ++i) {
        const FloorPlan plan = ft::random_plan(rng, 1, 10);
        const DecodeReport report = decode_plan(encode_plan(plan), DecodeMode::Strict);
        if (!report.issues.empty() || !(report.plan.rooms == plan.rooms))
            return fail("round-trip mismatch on plan " + std::to_string(i));
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 5.0) return fail("too slow: " + std::to_string(elapsed) + "s");
    std::ostringstream detail;
    detail << "1000 plans exact, reference byte-for-byte, " << std::fixed << std::setprecision(2)
           << elapsed << "s";
    return pass(detail.str());
}

Outcome boundary_exactness() {
    const auto start = std::chrono::steady_clock::now();
    const BoundarySpec l = decompose(ft::l_shape_mask());
    if (l.exterior.size() != 1) return fail("L-shape produced " + std::to_string(l.exterior.size()) + " exterior boxes");

    std::mt19937 rng(2002);
    for (int i = 0; i < 1000; ++i) {
        const BoundaryMask mask = ft::random_rect_union_mask(rng);
        if (!(reconstruct(decompose(mask)) == mask))
            return fail("pixel diff on mask " + std::to_string(i));
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 10.0) return fail("too slow: " + std::to_string(elapsed) + "s");
    std::ostringstream detail;
    detail << "1000 masks exact, L-shape single box, " << std::fixed << std::setprecision(2)
           << elapsed << "s";
    return pass(detail.str());
}

Outcome iou_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(3003);
    for (int i = 0; i < 200; ++i) {
        const RasterGrid a = ft::random_grid(rng, 16, 16);
        const RasterGrid b = ft::random_grid(rng, 16, 16);
        const IoUScores mine = iou(a, b);
        const ft::OracleScores expect = ft::oracle_iou(a, b);
        if (std::abs(mine.micro - expect.micro) > 1e-12 ||
            std::abs(mine.macro - expect.macro) > 1e-12)
            return fail("iou diverges from oracle on grid " + std::to_string(i));

        const int window = 4;
        double best_micro = -1.0;
        Shift best;
        for (int dy = -window; dy <= window; ++dy) {
            for (int dx = -window; dx <= window; ++dx) {
                const double micro = ft::oracle_iou(a, ft::shift_grid(b, dx, dy)).micro;
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
        const auto [scores, shift] = shift_max_iou(a, b, window);
        if (std::abs(scores.micro - best_micro) > 1e-12 || !(shift == best))
            return fail("shift_max_iou diverges from oracle on grid " + std::to_string(i));
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 10.0) return fail("too slow: " + std::to_string(elapsed) + "s");
    std::ostringstream detail;
    detail << "200 grids within 1e-12, " << std::fixed << std::setprecision(2) << elapsed << "s";
    return pass(detail.str());
}

Outcome rasterizer_order() {
    FloorPlan plan;
    plan.rooms.push_back({RoomType::LivingRoom, bbox_from_footprint(10, 10, 59, 59)});
    plan.rooms.push_back({RoomType::Kitchen, bbox_from_footprint(40, 40, 89, 89)});
    const RasterGrid forward = rasterize(plan);
    if (forward.at(50, 50) != label_index(RoomType::Kitchen))
        return fail("overlap not painted as Kitchen");
    if (forward.at(20, 20) != label_index(RoomType::LivingRoom))
        return fail("living room body overwritten");

    FloorPlan reversed;
    reversed.rooms.push_back(plan.rooms[1]);
    reversed.rooms.push_back(plan.rooms[0]);
    if (!(rasterize(reversed) == forward)) return fail("output depends on room list order");
    return pass("overlap painted Kitchen in both constructions");
}

Outcome generate_parse_consistency() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(5005);
    for (int i = 0; i < 200; ++i) {
        const FloorPlan plan = ft::synthetic_plan(rng, 1 + static_cast<int>(rng() % 8), i % 2 == 1);
        const std::string text = generate(plan, ScaleConfig{}, static_cast<std::uint32_t>(i));
        const ConstraintReport report = check_constraints(plan, parse(text), ScaleConfig{});
        const bool ok = report.type_rate.value_or(0.0) == 1.0 &&
                        report.region_rate.value_or(1.0) == 1.0 &&
                        report.size_rate.value_or(1.0) == 1.0;
        if (!ok) {
            std::ostringstream detail;
            detail << "instance " << i << ": type=" << report.type_rate.value_or(-1)
                   << " region=" << report.region_rate.value_or(-1)
                   << " size=" << report.size_rate.value_or(-1);
            return fail(detail.str());
        }
    }
    std::ostringstream detail;
    detail << "200 plans at 100% type/region/size, " << std::fixed << std::setprecision(2)
           << seconds_since(start) << "s";
    return pass(detail.str());
}

Outcome solver_recovery() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(6006);
    std::vector<PlanRecord> records;
    for (int i = 0; i < 50; ++i) {
        const FloorPlan plan = ft::synthetic_plan(rng, 4 + static_cast<int>(rng() % 5), i % 2 == 1);
        PlanRecord record;
        std::ostringstream id;
        id << "synth" << std::setw(3) << std::setfill('0') << i;
        record.id = id.str();
        record.boundary = plan.boundary;
        record.rooms = plan.rooms;
        record.artificial_instruction = generate(plan, ScaleConfig{}, static_cast<std::uint32_t>(i));
        record.split = Split::Test;
        records.push_back(std::move(record));
    }

    PipelineOptions opts;
    opts.source = InstructionSource::Artificial;
    const PipelineResult first = run_pipeline(records, opts);
    const double elapsed = seconds_since(start);

    const PipelineResult second = run_pipeline(records, opts);
    if (first.plans.size() != 50) return fail("expected 50 scored plans");
    if (first.mean_macro != second.mean_macro || first.mean_micro != second.mean_micro)
        return fail("reruns with the same seeds disagree");
    for (std::size_t i = 0; i < first.plans.size(); ++i) {
        if (first.plans[i].scores.micro != second.plans[i].scores.micro ||
            first.plans[i].scores.macro != second.plans[i].scores.macro)
            return fail("per-plan scores not deterministic");
        if (!first.plans[i].error.empty())
            return fail(first.plans[i].id + ": " + first.plans[i].error);
    }

    std::ostringstream detail;
    detail << "mean macro IoU " << std::fixed << std::setprecision(3) << first.mean_macro
           << " (micro " << first.mean_micro << ") over 50 instances, deterministic, "
           << std::setprecision(1) << elapsed << "s";
    if (first.mean_macro < 0.5) return fail("mean macro IoU below 0.5: " + detail.str());
    if (elapsed >= 60.0) return fail("too slow: " + detail.str());
    return pass(detail.str());
}

Outcome dataset_statistics() {
    const char* path = std::getenv("FPKIT_T2D_DATA");
    if (!path || !*path) return {Outcome::Skip, "set FPKIT_T2D_DATA to the imported corpus JSONL"};

    const LoadResult corpus = load_corpus(path);
    const CorpusStats stats = compute_stats(corpus.records);
    const std::vector<std::pair<RoomType, long long>> expected = {
        {RoomType::LivingRoom, 80788}, {RoomType::Bathroom, 97113},
        {RoomType::Balcony, 86545},    {RoomType::CommonRoom, 100847},
        {RoomType::MasterRoom, 80466}, {RoomType::Kitchen, 77768},
        {RoomType::Storage, 3351},     {RoomType::DiningRoom, 1312},
    };
    for (const auto& [type, count] : expected) {
        if (stats.per_type_counts.at(type) != count) {
            return fail(std::string(camel_name(type)) + " count " +
                        std::to_string(stats.per_type_counts.at(type)) + " != " +
                        std::to_string(count));
        }
    }
    auto within5 = [](double actual, double target) {
        return std::abs(actual - target) <= 0.05 * target;
    };
    if (!within5(stats.human.avg_words_per_instance, 200.30))
        return fail("human avg words/instance " + std::to_string(stats.human.avg_words_per_instance));
    if (!within5(stats.human.avg_sentences_per_instance, 11.89))
        return fail("human avg sentences/instance " +
                    std::to_string(stats.human.avg_sentences_per_instance));
    return pass("room counts exact, human averages within 5%");
}

Outcome shift_recovery() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(8008);
    for (int i = 0; i < 10; ++i) {
        // rooms tile a rectangle with a >= 32 px margin on every side
        FloorPlan plan;
        const Footprint outer{40 + static_cast<int>(rng() % 20), 40 + static_cast<int>(rng() % 20),
                              0, 0};
        const Footprint area{outer.x0, outer.y0, outer.x0 + 120, outer.y0 + 120};
        plan.boundary.fill_footprint(area, true);
        for (const Footprint& part : ft::guillotine_split(rng, area, 4, 20))
            plan.rooms.push_back({kAllRoomTypes[rng() % 8u], bbox_from_footprint(part)});
        const RasterGrid gt = rasterize(plan);

        int dx, dy;
        if (i < 4) {  // exercise the window extremes
            dx = (i % 2 == 0) ? 32 : -32;
            dy = (i / 2 == 0) ? 32 : -32;
        } else {
            dx = static_cast<int>(rng() % 65) - 32;
            dy = static_cast<int>(rng() % 65) - 32;
        }
        const auto [scores, shift] = shift_max_iou(gt, ft::shift_grid(gt, dx, dy), kDefaultMaxShift);
        if (scores.micro != 1.0 || !(shift == Shift{-dx, -dy})) {
            std::ostringstream detail;
            detail << "translation (" << dx << "," << dy << ") recovered micro " << scores.micro
                   << " shift (" << shift.dx << "," << shift.dy << ")";
            return fail(detail.str());
        }
    }
    std::ostringstream detail;
    detail << "10 translations recovered exactly, " << std::fixed << std::setprecision(1)
           << seconds_since(start) << "s";
    return pass(detail.str());
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Outcome (*run)();
    };
    const Entry criteria[] = {
        {"codec-round-trip", codec_round_trip},
        {"boundary-exactness", boundary_exactness},
        {"iou-oracle-equivalence", iou_oracle_equivalence},
        {"rasterizer-order", rasterizer_order},
        {"generate-parse-consistency", generate_parse_consistency},
        {"solver-recovery", solver_recovery},
        {"dataset-statistics", dataset_statistics},
        {"shift-recovery", shift_recovery},
    };

    int failures = 0;
    int index = 0;
    for (const Entry& entry : criteria) {
        ++index;
        Outcome outcome;
        try {
            outcome = entry.run();
        } catch (const std::exception& e) {
            outcome = fail(std::string("exception: ") + e.what());
        }
        const char* verdict = outcome.kind == Outcome::Pass ? "PASS"
                              : outcome.kind == Outcome::Skip ? "SKIP"
                                                              : "FAIL";
        std::cout << "[" << index << "] " << std::left << std::setw(28) << entry.name << " "
                  << verdict << "  " << outcome.detail << "\n";
        if (outcome.kind == Outcome::Fail) ++failures;
    }
    return failures;
}
