#pragma once

// Constraint-driven layout baseline: simulated annealing over room boxes
// inside a boundary. The cost is a weighted sum of normalized terms, each
// in [0,1] before weighting; all geometry is exact box arithmetic, no
// rasterization in the inner loop.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "fpkit/boundary.hpp"
#include "fpkit/eval.hpp"
#include "fpkit/geometry.hpp"
#include "fpkit/instruction.hpp"

namespace fpkit {

struct CostWeights {
    double region = 2.0;
    double area = 1.0;
    double ratio = 0.5;
    double relation = 4.0;
    double overlap = 3.0;
    double outside = 4.0;
    double coverage = 2.0;
};

struct SolverConfig {
    std::uint32_t seed = 17;
    int iterations = 30000;
    double initial_temperature = 0.05;
    double cooling = 0.9992;  // multiplicative, per iteration
    int restarts = 4;
};

struct CostTerms {
    double region = 0.0;
    double area = 0.0;
    double ratio = 0.0;
    double relation = 0.0;
    double overlap = 0.0;
    double outside = 0.0;
    double coverage = 0.0;

    double total(const CostWeights& w) const {
        return w.region * region + w.area * area + w.ratio * ratio + w.relation * relation +
               w.overlap * overlap + w.outside * outside + w.coverage * coverage;
    }
};

namespace detail {

inline long long clipped_overlap(const Footprint& a, const Footprint& b) {
    const long long w = std::min(a.x1, b.x1) - std::max(a.x0, b.x0) + 1;
    const long long h = std::min(a.y1, b.y1) - std::max(a.y0, b.y0) + 1;
    return w > 0 && h > 0 ? w * h : 0;
}

inline Footprint intersect(const Footprint& a, const Footprint& b) {
    return Footprint{std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1),
                     std::min(a.y1, b.y1)};
}

struct BoundaryGeometry {
    BoundarySpec spec;
    Footprint enclosing;
    std::vector<Footprint> exterior;  // clipped to the enclosing footprint
    long long interior_area = 0;
    double diagonal = 1.0;

    explicit BoundaryGeometry(const BoundarySpec& bs) : spec(bs), enclosing(footprint(bs.enclosing)) {
        interior_area = enclosing.area();
        for (const BBox& box : bs.exterior) {
            const Footprint f = intersect(footprint(box), enclosing);
            if (f.x0 > f.x1 || f.y0 > f.y1) continue;
            exterior.push_back(f);
            interior_area -= f.area();
        }
        if (interior_area <= 0) throw std::invalid_argument("solver: boundary has no interior");
        diagonal = std::hypot(static_cast<double>(enclosing.width()),
                              static_cast<double>(enclosing.height()));
    }

    long long inside_area(const Footprint& f) const {
        long long inside = clipped_overlap(f, enclosing);
        for (const Footprint& x : exterior) inside -= clipped_overlap(f, x);
        return inside;
    }
};

/// Area of (union of room footprints) ∩ interior, by an x-sweep over the
/// strips induced by every vertical edge.
inline long long covered_interior_area(const std::vector<Footprint>& rooms,
                                       const BoundaryGeometry& geom) {
    std::vector<int> xs;
    xs.reserve(2 * rooms.size() + 2 * geom.exterior.size() + 2);
    xs.push_back(geom.enclosing.x0);
    xs.push_back(geom.enclosing.x1 + 1);
    auto add = [&](const Footprint& f) {
        xs.push_back(std::clamp(f.x0, geom.enclosing.x0, geom.enclosing.x1 + 1));
        xs.push_back(std::clamp(f.x1 + 1, geom.enclosing.x0, geom.enclosing.x1 + 1));
    };
    for (const Footprint& f : rooms) add(f);
    for (const Footprint& f : geom.exterior) add(f);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    long long covered = 0;
    std::vector<std::pair<int, int>> spans;
    for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
        const int a = xs[s], b = xs[s + 1];
        if (a >= b) continue;
        spans.clear();
        for (const Footprint& f : rooms) {
            if (f.x0 > a || f.x1 < b - 1) continue;
            const int y0 = std::max(f.y0, geom.enclosing.y0);
            const int y1 = std::min(f.y1, geom.enclosing.y1);
            if (y0 <= y1) spans.push_back({y0, y1});
        }
        if (spans.empty()) continue;
        std::sort(spans.begin(), spans.end());
        // merge the room spans, then subtract exterior spans strip-wise
        long long len = 0;
        int cur0 = spans[0].first, cur1 = spans[0].second;
        auto flush = [&](int y0, int y1) {
            long long seg = y1 - y0 + 1;
            for (const Footprint& x : geom.exterior) {
                if (x.x0 > a || x.x1 < b - 1) continue;
                const int o0 = std::max(y0, x.y0), o1 = std::min(y1, x.y1);
                if (o0 <= o1) seg -= o1 - o0 + 1;
            }
            len += seg;
        };
        for (std::size_t k = 1; k < spans.size(); ++k) {
            if (spans[k].first <= cur1 + 1) {
                cur1 = std::max(cur1, spans[k].second);
            } else {
                flush(cur0, cur1);
                cur0 = spans[k].first;
                cur1 = spans[k].second;
            }
        }
        flush(cur0, cur1);
        covered += len * (b - a);
    }
    return covered;
}

inline double point_to_rect_distance(double px, double py, const Footprint& f) {
    const double dx = std::max({static_cast<double>(f.x0) - px, 0.0, px - static_cast<double>(f.x1)});
    const double dy = std::max({static_cast<double>(f.y0) - py, 0.0, py - static_cast<double>(f.y1)});
    return std::hypot(dx, dy);
}

inline CostTerms cost_terms_matched(const std::vector<Room>& rooms,
                                    const std::vector<RoomConstraint>& constraints,
                                    const std::vector<std::optional<std::size_t>>& match,
                                    const BoundaryGeometry& geom, const ScaleConfig& scale) {
    CostTerms terms;
    const double fpp = scale.feet_per_pixel;

    int region_n = 0, area_n = 0, ratio_n = 0, relation_n = 0;
    double region_sum = 0, area_sum = 0, ratio_sum = 0, relation_sum = 0;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const RoomConstraint& c = constraints[i];
        const Room& room = rooms[*match[i]];
        if (c.region) {
            ++region_n;
            if (region_of(room.box, geom.enclosing) != *c.region) {
                const Footprint cell = region_cell(geom.enclosing, *c.region);
                region_sum += std::min(
                    1.0, point_to_rect_distance(room.box.x, room.box.y, cell) / geom.diagonal);
            }
        }
        if (const auto eff_area = effective_area_sqft(c)) {
            ++area_n;
            const double actual = room.box.h * static_cast<double>(room.box.w) * fpp * fpp;
            area_sum += std::min(1.0, std::abs(actual - *eff_area) / *eff_area);
        }
        if (const auto eff_ratio = effective_aspect_ratio(c)) {
            ++ratio_n;
            const double actual =
                static_cast<double>(std::max(room.box.w, room.box.h)) / std::min(room.box.w, room.box.h);
            const double spec = std::max(*eff_ratio, 1.0 / *eff_ratio);
            ratio_sum += std::min(1.0, std::abs(actual - spec) / spec);
        }
        for (const Relation& rel : c.relations) {
            ++relation_n;
            bool ok = true;
            std::vector<const Room*> targets;
            for (const RoomRef& ref : rel.targets) {
                const auto t = resolve_ref(rooms, ref);
                if (!t) ok = false;
                else targets.push_back(&rooms[*t]);
            }
            if (ok) {
                switch (rel.kind) {
                    case RelationKind::NextTo:
                        ok = adjacent(room.box, targets[0]->box);
                        break;
                    case RelationKind::Between:
                        ok = targets.size() == 2 && adjacent(room.box, targets[0]->box) &&
                             adjacent(room.box, targets[1]->box);
                        break;
                    case RelationKind::Opposite:
                        ok = opposite_boxes(room.box, targets[0]->box, kDefaultAdjacencyGap);
                        break;
                    case RelationKind::Inside:
                        ok = inside_box(room.box, targets[0]->box);
                        break;
                }
            }
            if (!ok) relation_sum += 1.0;
        }
    }
    if (region_n) terms.region = region_sum / region_n;
    if (area_n) terms.area = area_sum / area_n;
    if (ratio_n) terms.ratio = ratio_sum / ratio_n;
    if (relation_n) terms.relation = relation_sum / relation_n;

    std::vector<Footprint> feet;
    feet.reserve(rooms.size());
    for (const Room& room : rooms) feet.push_back(footprint(room.box));

    long long overlap_sum = 0;
    for (std::size_t i = 0; i < feet.size(); ++i)
        for (std::size_t j = i + 1; j < feet.size(); ++j)
            overlap_sum += clipped_overlap(feet[i], feet[j]);
    terms.overlap =
        std::min(1.0, static_cast<double>(overlap_sum) / static_cast<double>(geom.interior_area));

    if (!feet.empty()) {
        double outside_sum = 0;
        for (const Footprint& f : feet) {
            const long long inside = geom.inside_area(f);
            outside_sum += 1.0 - static_cast<double>(inside) / static_cast<double>(f.area());
        }
        terms.outside = outside_sum / static_cast<double>(feet.size());
    }

    const long long covered = covered_interior_area(feet, geom);
    terms.coverage = 1.0 - static_cast<double>(covered) / static_cast<double>(geom.interior_area);
    return terms;
}

inline std::uint32_t mix_seed(std::uint32_t seed, std::uint32_t salt) {
    std::uint64_t z = (static_cast<std::uint64_t>(seed) << 32) ^
                      (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(salt) + 1));
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return static_cast<std::uint32_t>(z);
}

}  // namespace detail

inline CostTerms cost_terms(const FloorPlan& plan, const std::vector<RoomConstraint>& constraints,
                            const BoundarySpec& bs, const ScaleConfig& scale) {
    const auto match = match_constraints(plan.rooms, constraints);
    for (std::size_t i = 0; i < match.size(); ++i) {
        if (!match[i]) {
            throw std::invalid_argument("cost: constraint " + std::to_string(i) +
                                        " has no matching room of type " +
                                        std::string(camel_name(constraints[i].room_type)));
        }
    }
    const detail::BoundaryGeometry geom(bs);
    return detail::cost_terms_matched(plan.rooms, constraints, match, geom, scale);
}

inline double cost(const FloorPlan& plan, const std::vector<RoomConstraint>& constraints,
                   const BoundarySpec& bs, const CostWeights& weights, const ScaleConfig& scale) {
    return cost_terms(plan, constraints, bs, scale).total(weights);
}

struct SolveTrace {
    std::vector<double> best_costs;  // per iteration of the last restart
};

/// Simulated annealing over moves {translate, resize one side, swap two
/// boxes}. Deterministic for a fixed config; the best plan across all
/// restarts is returned (ties to the lowest restart index), with the
/// reconstructed boundary attached.
inline FloorPlan solve(const std::vector<RoomConstraint>& constraints, const BoundarySpec& bs,
                       const SolverConfig& cfg = {}, const CostWeights& weights = {},
                       const ScaleConfig& scale = {}, SolveTrace* trace = nullptr) {
    if (constraints.empty()) throw std::invalid_argument("solve: empty constraint list");
    if (cfg.iterations < 1 || cfg.restarts < 1)
        throw std::invalid_argument("solve: iterations and restarts must be >= 1");
    if (!(cfg.cooling > 0.0 && cfg.cooling < 1.0) || cfg.initial_temperature <= 0.0)
        throw std::invalid_argument("solve: cooling must be in (0,1) and temperature positive");

    const detail::BoundaryGeometry geom(bs);
    const Footprint enc = geom.enclosing;
    const double fpp = scale.feet_per_pixel;
    const int enc_w = enc.width(), enc_h = enc.height();

    // initial layout: constrained sides, centered in the target region
    std::vector<Room> initial;
    initial.reserve(constraints.size());
    const double mean_area_px =
        static_cast<double>(geom.interior_area) / static_cast<double>(constraints.size());
    for (const RoomConstraint& c : constraints) {
        double w_px, h_px;
        if (c.width_ft && c.length_ft) {
            w_px = *c.width_ft / fpp;
            h_px = *c.length_ft / fpp;
        } else {
            const double area_px = effective_area_sqft(c) ? *effective_area_sqft(c) / (fpp * fpp)
                                                          : mean_area_px;
            const double r = c.aspect_ratio ? *c.aspect_ratio : 1.0;
            w_px = std::sqrt(area_px * r);
            h_px = std::sqrt(area_px / r);
        }
        int w = std::max(1, static_cast<int>(std::lround(w_px)));
        int h = std::max(1, static_cast<int>(std::lround(h_px)));
        if (c.width_ft || c.length_ft || c.area_sqft) {
            if (std::min(w, h) > std::min(enc_w, enc_h) || std::max(w, h) > std::max(enc_w, enc_h)) {
                throw std::invalid_argument("solve: room of type " +
                                            std::string(camel_name(c.room_type)) +
                                            " cannot fit inside the enclosing box");
            }
        }
        w = std::min(w, enc_w);
        h = std::min(h, enc_h);

        const Footprint cell = c.region ? region_cell(bs, *c.region) : enc;
        int cx = (cell.x0 + cell.x1) / 2;
        int cy = (cell.y0 + cell.y1) / 2;
        int x0 = std::clamp(cx - w / 2, enc.x0, enc.x1 - w + 1);
        int y0 = std::clamp(cy - h / 2, enc.y0, enc.y1 - h + 1);
        initial.push_back({c.room_type, bbox_from_footprint(x0, y0, x0 + w - 1, y0 + h - 1)});
    }

    std::vector<std::optional<std::size_t>> identity(constraints.size());
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
    auto total_cost = [&](const std::vector<Room>& rooms) {
        return detail::cost_terms_matched(rooms, constraints, identity, geom, scale).total(weights);
    };

    const double initial_cost = total_cost(initial);
    std::vector<Room> global_best = initial;
    double global_best_cost = initial_cost;

    static constexpr int kDeltas[5] = {1, 2, 4, 8, 16};
    const int n = static_cast<int>(constraints.size());

    for (int restart = 0; restart < cfg.restarts && global_best_cost > 0.0; ++restart) {
        std::mt19937 rng(detail::mix_seed(cfg.seed, static_cast<std::uint32_t>(restart)));
        auto uniform = [&rng]() { return rng() * (1.0 / 4294967296.0); };

        std::vector<Room> rooms = initial;
        double current = initial_cost;
        std::vector<Room> best = rooms;
        double best_cost = current;
        double temperature = cfg.initial_temperature;
        if (trace && restart == cfg.restarts - 1) trace->best_costs.clear();

        for (int iter = 0; iter < cfg.iterations; ++iter) {
            if (best_cost <= 0.0) break;
            // move scale anneals from the full set toward single pixels
            const int max_scale = std::max(1, 5 - (5 * iter) / cfg.iterations);
            const int delta = kDeltas[rng() % static_cast<unsigned>(max_scale)];
            const int which = static_cast<int>(rng() % 100u);
            const std::size_t r = rng() % static_cast<unsigned>(n);

            const int move_kind = which < 45 ? 0 : (which < 90 ? 1 : (n >= 2 ? 2 : 0));
            std::vector<Room> proposal = rooms;
            bool valid = true;
            if (move_kind == 0) {
                Footprint f = footprint(proposal[r].box);
                const int sign = (rng() % 2u) ? delta : -delta;
                if (rng() % 2u) {
                    f.x0 += sign;
                    f.x1 += sign;
                } else {
                    f.y0 += sign;
                    f.y1 += sign;
                }
                valid = f.in_grid();
                if (valid) proposal[r].box = bbox_from_footprint(f);
            } else if (move_kind == 1) {
                Footprint f = footprint(proposal[r].box);
                const int sign = (rng() % 2u) ? delta : -delta;
                switch (rng() % 4u) {
                    case 0: f.x0 += sign; break;
                    case 1: f.x1 += sign; break;
                    case 2: f.y0 += sign; break;
                    default: f.y1 += sign; break;
                }
                valid = f.x0 <= f.x1 && f.y0 <= f.y1 && f.width() <= 255 && f.height() <= 255 &&
                        f.in_grid();
                if (valid) proposal[r].box = bbox_from_footprint(f);
            } else {
                std::size_t other = rng() % static_cast<unsigned>(n);
                if (other == r) other = (other + 1) % n;
                std::swap(proposal[r].box, proposal[other].box);
            }

            if (valid) {
                const double proposed = total_cost(proposal);
                const double delta_cost = proposed - current;
                if (delta_cost <= 0.0 || uniform() < std::exp(-delta_cost / temperature)) {
                    rooms = std::move(proposal);
                    current = proposed;
                    if (current < best_cost) {
                        best_cost = current;
                        best = rooms;
                    }
                }
            }
            temperature *= cfg.cooling;
            if (trace && restart == cfg.restarts - 1) trace->best_costs.push_back(best_cost);
        }
        if (best_cost < global_best_cost) {
            global_best_cost = best_cost;
            global_best = best;
        }
    }

    FloorPlan plan;
    plan.boundary = reconstruct(bs, ReconstructMode::Lenient);
    plan.rooms = std::move(global_best);
    return plan;
}

}  // namespace fpkit
