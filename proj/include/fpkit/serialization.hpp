#pragma once

// JSON serialization for plans, constraints, scores and palettes.
// Schemas are documented in the README. Validation failures throw
// std::invalid_argument with a field-level message.

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fpkit/boundary.hpp"
#include "fpkit/eval.hpp"
#include "fpkit/geometry.hpp"
#include "fpkit/instruction.hpp"
#include "fpkit/png_io.hpp"
#include "fpkit/seq_codec.hpp"

namespace fpkit {

using Json = nlohmann::json;

inline Json bbox_to_json(const BBox& b) { return Json::array({b.x, b.y, b.h, b.w}); }

inline BBox bbox_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4 || !j[0].is_number_integer() || !j[1].is_number_integer() ||
        !j[2].is_number_integer() || !j[3].is_number_integer()) {
        throw std::invalid_argument("bbox must be an integer array [x, y, h, w]");
    }
    const BBox b{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
    if (!token_representable(b)) {
        throw std::invalid_argument("bbox values outside token range: x,y in [0,255], h,w in [1,255]");
    }
    return b;
}

inline Json room_to_json(const Room& room) {
    return Json{{"type", camel_name(room.type)}, {"bbox", bbox_to_json(room.box)}};
}

inline Room room_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j.contains("bbox")) {
        throw std::invalid_argument("room must be an object with \"type\" and \"bbox\"");
    }
    const auto type = room_type_from_name(j.at("type").get<std::string>());
    if (!type) throw std::invalid_argument("unknown room type \"" + j.at("type").get<std::string>() + "\"");
    return Room{*type, bbox_from_json(j.at("bbox"))};
}

/// Plan object: {"boundary": "+ x y h w - ...", "rooms": [...]}. The
/// boundary key is omitted for an empty mask and reconstructed from the
/// box-sequence text on load.
inline Json plan_to_json(const FloorPlan& plan) {
    Json j = Json::object();
    if (!plan.boundary.empty()) j["boundary"] = encode_boundary(decompose(plan.boundary));
    Json rooms = Json::array();
    for (const Room& room : plan.rooms) rooms.push_back(room_to_json(room));
    j["rooms"] = std::move(rooms);
    return j;
}

inline FloorPlan plan_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rooms") || !j.at("rooms").is_array()) {
        throw std::invalid_argument("plan must be an object with a \"rooms\" array");
    }
    FloorPlan plan;
    if (j.contains("boundary") && !j.at("boundary").is_null()) {
        plan.boundary = reconstruct(decode_boundary(j.at("boundary").get<std::string>()),
                                    ReconstructMode::Lenient);
    }
    for (const Json& room : j.at("rooms")) plan.rooms.push_back(room_from_json(room));
    return plan;
}

inline Json relation_to_json(const Relation& rel) {
    Json targets = Json::array();
    for (const RoomRef& ref : rel.targets) {
        Json t{{"room_type", camel_name(ref.type)}};
        if (!ref.instance_tag.empty()) t["instance_tag"] = ref.instance_tag;
        targets.push_back(std::move(t));
    }
    return Json{{"kind", to_string(rel.kind)}, {"targets", std::move(targets)}};
}

inline Relation relation_from_json(const Json& j) {
    Relation rel;
    const auto kind = relation_kind_from_name(j.at("kind").get<std::string>());
    if (!kind) throw std::invalid_argument("unknown relation kind \"" + j.at("kind").get<std::string>() + "\"");
    rel.kind = *kind;
    for (const Json& t : j.at("targets")) {
        const auto type = room_type_from_name(t.at("room_type").get<std::string>());
        if (!type) throw std::invalid_argument("unknown relation target room type");
        RoomRef ref{*type, t.value("instance_tag", std::string())};
        rel.targets.push_back(std::move(ref));
    }
    const std::size_t expect = rel.kind == RelationKind::Between ? 2 : 1;
    if (rel.targets.size() != expect) {
        throw std::invalid_argument("relation \"" + std::string(to_string(rel.kind)) + "\" needs " +
                                    std::to_string(expect) + " target(s)");
    }
    return rel;
}

inline Json constraint_to_json(const RoomConstraint& c) {
    Json j{{"room_type", camel_name(c.room_type)}};
    if (!c.instance_tag.empty()) j["instance_tag"] = c.instance_tag;
    if (c.region) j["region"] = compass_code(*c.region);
    if (c.area_sqft) j["area_sqft"] = *c.area_sqft;
    if (c.aspect_ratio) j["aspect_ratio"] = *c.aspect_ratio;
    if (c.width_ft) j["width_ft"] = *c.width_ft;
    if (c.length_ft) j["length_ft"] = *c.length_ft;
    Json relations = Json::array();
    for (const Relation& rel : c.relations) relations.push_back(relation_to_json(rel));
    j["relations"] = std::move(relations);
    return j;
}

inline RoomConstraint constraint_from_json(const Json& j) {
    RoomConstraint c;
    const auto type = room_type_from_name(j.at("room_type").get<std::string>());
    if (!type) throw std::invalid_argument("unknown room type in constraint");
    c.room_type = *type;
    c.instance_tag = j.value("instance_tag", std::string());
    if (j.contains("region") && !j.at("region").is_null()) {
        const auto region = compass_from_code(j.at("region").get<std::string>());
        if (!region) throw std::invalid_argument("unknown region code \"" + j.at("region").get<std::string>() + "\"");
        c.region = region;
    }
    auto positive = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
        const double v = j.at(key).get<double>();
        if (v <= 0) throw std::invalid_argument(std::string(key) + " must be strictly positive");
        return v;
    };
    c.area_sqft = positive("area_sqft");
    c.aspect_ratio = positive("aspect_ratio");
    c.width_ft = positive("width_ft");
    c.length_ft = positive("length_ft");
    if (j.contains("relations")) {
        for (const Json& rel : j.at("relations")) c.relations.push_back(relation_from_json(rel));
    }
    return c;
}

inline Json constraints_to_json(const ParseResult& result) {
    Json list = Json::array();
    for (const RoomConstraint& c : result.constraints) list.push_back(constraint_to_json(c));
    return Json{{"constraints", std::move(list)},
                {"skipped_sentences", result.skipped_sentences},
                {"total_sentences", result.total_sentences}};
}

inline std::vector<RoomConstraint> constraints_from_json(const Json& j) {
    const Json& list = j.is_array() ? j : j.at("constraints");
    std::vector<RoomConstraint> out;
    for (const Json& c : list) out.push_back(constraint_from_json(c));
    return out;
}

inline Json scores_to_json(const IoUScores& scores) {
    Json per_type = Json::object();
    for (const auto& [type, px] : scores.per_type) {
        per_type[std::string(camel_name(type))] =
            Json{{"intersection", px.intersection}, {"union", px.unions}};
    }
    return Json{{"micro", scores.micro}, {"macro", scores.macro}, {"per_type", std::move(per_type)}};
}

inline Json palette_to_json(const Palette& palette) {
    auto rgb = [](Rgb c) { return Json::array({c.r, c.g, c.b}); };
    Json rooms = Json::object();
    for (RoomType t : kAllRoomTypes)
        rooms[std::string(camel_name(t))] = rgb(palette.rooms[static_cast<int>(t)]);
    return Json{{"background", rgb(palette.background)}, {"rooms", std::move(rooms)}};
}

/// Palette entries may be [r,g,b] arrays or single gray values (v ≡ [v,v,v])
/// so upstream grayscale label maps can be described directly.
inline Palette palette_from_json(const Json& j) {
    auto rgb = [](const Json& v) -> Rgb {
        if (v.is_number_integer()) {
            const int g = v.get<int>();
            if (g < 0 || g > 255) throw std::invalid_argument("palette gray value out of range");
            const auto byte = static_cast<std::uint8_t>(g);
            return {byte, byte, byte};
        }
        if (!v.is_array() || v.size() != 3) {
            throw std::invalid_argument("palette color must be [r,g,b] or a gray value");
        }
        return {v[0].get<std::uint8_t>(), v[1].get<std::uint8_t>(), v[2].get<std::uint8_t>()};
    };
    Palette palette;
    palette.background = rgb(j.at("background"));
    const Json& rooms = j.at("rooms");
    for (RoomType t : kAllRoomTypes) {
        const std::string key(camel_name(t));
        if (!rooms.contains(key)) throw std::invalid_argument("palette missing room \"" + key + "\"");
        palette.rooms[static_cast<int>(t)] = rgb(rooms.at(key));
    }
    return palette;
}

}  // namespace fpkit
