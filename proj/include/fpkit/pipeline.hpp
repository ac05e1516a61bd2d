#pragma once

// End-to-end baseline over a corpus: per record, parse instructions into
// constraints, solve a layout inside the record's boundary, rasterize and
// score against the ground truth. Records run independently (optionally
// in parallel); results are ordered by record id regardless of scheduling.

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fpkit/dataset_io.hpp"
#include "fpkit/eval.hpp"
#include "fpkit/instruction.hpp"
#include "fpkit/solver.hpp"

namespace fpkit {

enum class InstructionSource { Auto, Human, Artificial };

struct PipelineOptions {
    ScaleConfig scale;
    ToleranceConfig tolerances;
    SolverConfig solver;
    CostWeights weights;
    InstructionSource source = InstructionSource::Auto;
    std::optional<Split> split;  // restrict to one split when set
    int shift_max = 0;
    MacroMode macro_mode = MacroMode::PresentOnly;
    bool parallel = true;
};

struct PlanScore {
    std::string id;
    IoUScores scores;
    Shift best_shift;
    int constraint_count = 0;
    std::string error;  // nonempty when the record could not be processed
};

struct PipelineResult {
    std::vector<PlanScore> plans;
    double mean_micro = 0.0;
    double mean_macro = 0.0;
};

namespace detail {

inline std::uint32_t fnv1a(std::string_view text) {
    std::uint32_t hash = 2166136261u;
    for (char c : text) {
        hash ^= static_cast<std::uint8_t>(c);
        hash *= 16777619u;
    }
    return hash;
}

inline const std::string* pick_instructions(const PlanRecord& record, InstructionSource source) {
    switch (source) {
        case InstructionSource::Human:
            return record.human_instruction ? &*record.human_instruction : nullptr;
        case InstructionSource::Artificial:
            return record.artificial_instruction ? &*record.artificial_instruction : nullptr;
        case InstructionSource::Auto:
            if (record.human_instruction) return &*record.human_instruction;
            return record.artificial_instruction ? &*record.artificial_instruction : nullptr;
    }
    return nullptr;
}

inline PlanScore score_record(const PlanRecord& record, const PipelineOptions& opts) {
    PlanScore out;
    out.id = record.id;
    try {
        const std::string* doc = pick_instructions(record, opts.source);
        if (!doc) throw std::runtime_error("no instructions available");
        if (record.boundary.empty()) throw std::runtime_error("empty boundary mask");

        const std::vector<RoomConstraint> constraints = parse(*doc);
        out.constraint_count = static_cast<int>(constraints.size());

        FloorPlan predicted;
        predicted.boundary = record.boundary;
        if (!constraints.empty()) {
            SolverConfig cfg = opts.solver;
            cfg.seed = mix_seed(cfg.seed, fnv1a(record.id));
            predicted = solve(constraints, decompose(record.boundary), cfg, opts.weights, opts.scale);
        }

        const FloorPlan truth{record.boundary, record.rooms};
        const RasterGrid gt = rasterize(truth);
        const RasterGrid pred = rasterize(predicted);
        if (opts.shift_max > 0) {
            auto [scores, shift] = shift_max_iou(gt, pred, opts.shift_max, opts.macro_mode);
            out.scores = std::move(scores);
            out.best_shift = shift;
        } else {
            out.scores = iou(gt, pred, opts.macro_mode);
        }
    } catch (const std::exception& e) {
        out.error = e.what();
        out.scores = IoUScores{0.0, 0.0, {}};
    }
    return out;
}

}  // namespace detail

inline PipelineResult run_pipeline(const std::vector<PlanRecord>& records,
                                   const PipelineOptions& opts = {}) {
    std::vector<const PlanRecord*> selected;
    for (const PlanRecord& record : records) {
        if (!opts.split || record.split == *opts.split) selected.push_back(&record);
    }

    PipelineResult result;
    result.plans.resize(selected.size());
    if (opts.parallel && selected.size() > 1) {
        const std::size_t workers =
            std::max<std::size_t>(1, std::thread::hardware_concurrency());
        for (std::size_t begin = 0; begin < selected.size(); begin += workers) {
            const std::size_t end = std::min(begin + workers, selected.size());
            std::vector<std::future<PlanScore>> batch;
            for (std::size_t i = begin; i < end; ++i) {
                batch.push_back(std::async(std::launch::async, detail::score_record,
                                           std::cref(*selected[i]), std::cref(opts)));
            }
            for (std::size_t i = begin; i < end; ++i)
                result.plans[i] = batch[i - begin].get();
        }
    } else {
        for (std::size_t i = 0; i < selected.size(); ++i)
            result.plans[i] = detail::score_record(*selected[i], opts);
    }

    std::sort(result.plans.begin(), result.plans.end(),
              [](const PlanScore& a, const PlanScore& b) { return a.id < b.id; });
    if (!result.plans.empty()) {
        for (const PlanScore& plan : result.plans) {
            result.mean_micro += plan.scores.micro;
            result.mean_macro += plan.scores.macro;
        }
        result.mean_micro /= static_cast<double>(result.plans.size());
        result.mean_macro /= static_cast<double>(result.plans.size());
    }
    return result;
}

inline Json pipeline_to_json(const PipelineResult& result, int shift_max = 0) {
    Json plans = Json::array();
    for (const PlanScore& plan : result.plans) {
        Json j{{"id", plan.id},
               {"micro", plan.scores.micro},
               {"macro", plan.scores.macro},
               {"constraints", plan.constraint_count}};
        Json per_type = Json::object();
        for (const auto& [type, px] : plan.scores.per_type) {
            per_type[std::string(camel_name(type))] =
                Json{{"intersection", px.intersection}, {"union", px.unions}};
        }
        j["per_type"] = std::move(per_type);
        if (shift_max > 0) j["best_shift"] = Json::array({plan.best_shift.dx, plan.best_shift.dy});
        if (!plan.error.empty()) j["error"] = plan.error;
        plans.push_back(std::move(j));
    }
    return Json{{"mean_micro", result.mean_micro},
                {"mean_macro", result.mean_macro},
                {"count", result.plans.size()},
                {"plans", std::move(plans)}};
}

}  // namespace fpkit
