#pragma once

// Constraint model bridging instruction text and geometry: a rule-based
// parser (room/compass/relation lexicons plus number+unit patterns), a
// seeded template generator, the 3x3 compass-region partition, and the
// constraint satisfaction checker.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fpkit/boundary.hpp"
#include "fpkit/eval.hpp"
#include "fpkit/geometry.hpp"

namespace fpkit {

enum class CompassRegion { N, NE, E, SE, S, SW, W, NW, Center };

inline constexpr std::array<CompassRegion, 9> kAllRegions = {
    CompassRegion::N, CompassRegion::NE, CompassRegion::E,
    CompassRegion::SE, CompassRegion::S, CompassRegion::SW,
    CompassRegion::W, CompassRegion::NW, CompassRegion::Center,
};

inline std::string_view compass_code(CompassRegion r) {
    switch (r) {
        case CompassRegion::N: return "N";
        case CompassRegion::NE: return "NE";
        case CompassRegion::E: return "E";
        case CompassRegion::SE: return "SE";
        case CompassRegion::S: return "S";
        case CompassRegion::SW: return "SW";
        case CompassRegion::W: return "W";
        case CompassRegion::NW: return "NW";
        case CompassRegion::Center: return "Center";
    }
    return "?";
}

inline std::optional<CompassRegion> compass_from_code(std::string_view code) {
    for (CompassRegion r : kAllRegions)
        if (code == compass_code(r)) return r;
    return std::nullopt;
}

/// Compass word as used in instruction text ("northeast", "center").
inline std::string_view compass_word(CompassRegion r) {
    switch (r) {
        case CompassRegion::N: return "north";
        case CompassRegion::NE: return "northeast";
        case CompassRegion::E: return "east";
        case CompassRegion::SE: return "southeast";
        case CompassRegion::S: return "south";
        case CompassRegion::SW: return "southwest";
        case CompassRegion::W: return "west";
        case CompassRegion::NW: return "northwest";
        case CompassRegion::Center: return "center";
    }
    return "?";
}

enum class RelationKind { NextTo, Between, Opposite, Inside };

inline std::string_view to_string(RelationKind k) {
    switch (k) {
        case RelationKind::NextTo: return "NextTo";
        case RelationKind::Between: return "Between";
        case RelationKind::Opposite: return "Opposite";
        case RelationKind::Inside: return "Inside";
    }
    return "?";
}

inline std::optional<RelationKind> relation_kind_from_name(std::string_view name) {
    for (RelationKind k : {RelationKind::NextTo, RelationKind::Between, RelationKind::Opposite,
                           RelationKind::Inside})
        if (name == to_string(k)) return k;
    return std::nullopt;
}

/// Reference to a room by type, optionally disambiguated by an ordinal
/// word ("first", "second") when a plan has several rooms of one type.
struct RoomRef {
    RoomType type = RoomType::CommonRoom;
    std::string instance_tag;

    friend bool operator==(const RoomRef&, const RoomRef&) = default;
};

struct Relation {
    RelationKind kind = RelationKind::NextTo;
    std::vector<RoomRef> targets;  // Between has 2 targets, others 1

    friend bool operator==(const Relation&, const Relation&) = default;
};

struct RoomConstraint {
    RoomType room_type = RoomType::CommonRoom;
    std::string instance_tag;
    std::optional<CompassRegion> region;
    std::optional<double> area_sqft;
    std::optional<double> aspect_ratio;  // width / height
    std::optional<double> width_ft;
    std::optional<double> length_ft;
    std::vector<Relation> relations;

    friend bool operator==(const RoomConstraint&, const RoomConstraint&) = default;
};

struct ScaleConfig {
    double feet_per_pixel = 0.25;
};

struct ToleranceConfig {
    double area_rel = 0.25;
    double ratio_rel = 0.25;
    int adjacency_gap = kDefaultAdjacencyGap;
};

/// Constraints carrying explicit sides but no area/ratio still pin both:
/// effective area = width*length, effective ratio = width/length.
inline std::optional<double> effective_area_sqft(const RoomConstraint& c) {
    if (c.area_sqft) return c.area_sqft;
    if (c.width_ft && c.length_ft) return *c.width_ft * *c.length_ft;
    return std::nullopt;
}

inline std::optional<double> effective_aspect_ratio(const RoomConstraint& c) {
    if (c.aspect_ratio) return c.aspect_ratio;
    if (c.width_ft && c.length_ft) return *c.width_ft / *c.length_ft;
    return std::nullopt;
}

/// 3x3 partition of an enclosing footprint into ceil-sized thirds;
/// returns the cell containing the box center (row 0 = N, column 0 = W).
/// Works on a bare footprint so a full-grid enclosing (span 256, not
/// token-representable as a BBox) still partitions as [0,86)[86,171)[171,256).
inline CompassRegion region_of(const BBox& box, const Footprint& enc) {
    const int width = enc.width(), height = enc.height();
    auto third = [](int offset, int span) {
        const int t1 = (span + 2) / 3;        // ceil(span/3)
        const int t2 = (2 * span + 2) / 3;    // ceil(2*span/3)
        const int o = std::clamp(offset, 0, span - 1);
        return o < t1 ? 0 : (o < t2 ? 1 : 2);
    };
    const int col = third(box.x - enc.x0, width);
    const int row = third(box.y - enc.y0, height);
    static constexpr CompassRegion table[3][3] = {
        {CompassRegion::NW, CompassRegion::N, CompassRegion::NE},
        {CompassRegion::W, CompassRegion::Center, CompassRegion::E},
        {CompassRegion::SW, CompassRegion::S, CompassRegion::SE},
    };
    return table[row][col];
}

inline CompassRegion region_of(const BBox& box, const BoundarySpec& bs) {
    return region_of(box, footprint(bs.enclosing));
}

/// Pixel rectangle of one cell of the 3x3 region partition.
inline Footprint region_cell(const Footprint& enc, CompassRegion region) {
    auto cuts = [](int start, int span) {
        const int t1 = (span + 2) / 3;
        const int t2 = (2 * span + 2) / 3;
        return std::array<int, 4>{start, start + t1, start + t2, start + span};
    };
    const auto cx = cuts(enc.x0, enc.width());
    const auto cy = cuts(enc.y0, enc.height());
    int row = 0, col = 0;
    switch (region) {
        case CompassRegion::NW: row = 0; col = 0; break;
        case CompassRegion::N: row = 0; col = 1; break;
        case CompassRegion::NE: row = 0; col = 2; break;
        case CompassRegion::W: row = 1; col = 0; break;
        case CompassRegion::Center: row = 1; col = 1; break;
        case CompassRegion::E: row = 1; col = 2; break;
        case CompassRegion::SW: row = 2; col = 0; break;
        case CompassRegion::S: row = 2; col = 1; break;
        case CompassRegion::SE: row = 2; col = 2; break;
    }
    return Footprint{cx[col], cy[row], cx[col + 1] - 1, cy[row + 1] - 1};
}

inline Footprint region_cell(const BoundarySpec& bs, CompassRegion region) {
    return region_cell(footprint(bs.enclosing), region);
}

namespace detail {

inline const std::array<std::string_view, 10> kOrdinals = {
    "first", "second", "third", "fourth", "fifth",
    "sixth", "seventh", "eighth", "ninth", "tenth",
};

inline std::optional<int> ordinal_index(std::string_view word) {
    for (std::size_t i = 0; i < kOrdinals.size(); ++i)
        if (word == kOrdinals[i]) return static_cast<int>(i);
    return std::nullopt;
}

inline std::string lowercase(std::string_view text) {
    std::string out(text);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

inline bool word_boundary(std::string_view text, std::size_t pos, std::size_t len) {
    const bool left = pos == 0 || !std::isalnum(static_cast<unsigned char>(text[pos - 1]));
    const bool right =
        pos + len >= text.size() || !std::isalnum(static_cast<unsigned char>(text[pos + len]));
    return left && right;
}

struct Mention {
    std::size_t pos = 0;
    std::size_t end = 0;
    RoomType type = RoomType::CommonRoom;
    std::string tag;  // ordinal word, or empty
};

/// Scans lowercase text for room-name mentions ("living room",
/// "livingroom"), longest match first, picking up a preceding ordinal
/// word as the instance tag.
inline std::vector<Mention> find_room_mentions(std::string_view lower) {
    struct Entry {
        std::string name;
        RoomType type;
    };
    static const std::vector<Entry> table = [] {
        std::vector<Entry> entries;
        for (RoomType t : kAllRoomTypes) {
            entries.push_back({std::string(display_name(t)), t});
            std::string compact;
            for (char c : display_name(t))
                if (c != ' ') compact.push_back(c);
            if (compact != display_name(t)) entries.push_back({compact, t});
        }
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.name.size() > b.name.size(); });
        return entries;
    }();

    std::vector<Mention> mentions;
    std::size_t pos = 0;
    while (pos < lower.size()) {
        if (!std::isalpha(static_cast<unsigned char>(lower[pos])) ||
            (pos > 0 && std::isalnum(static_cast<unsigned char>(lower[pos - 1])))) {
            ++pos;
            continue;
        }
        const Entry* hit = nullptr;
        for (const Entry& entry : table) {
            if (lower.compare(pos, entry.name.size(), entry.name) == 0 &&
                word_boundary(lower, pos, entry.name.size())) {
                hit = &entry;
                break;
            }
        }
        if (!hit) {
            while (pos < lower.size() && std::isalnum(static_cast<unsigned char>(lower[pos]))) ++pos;
            continue;
        }
        Mention m;
        m.pos = pos;
        m.end = pos + hit->name.size();
        m.type = hit->type;
        // preceding ordinal word, e.g. "the second common room"
        std::size_t back = pos;
        while (back > 0 && lower[back - 1] == ' ') --back;
        std::size_t word_start = back;
        while (word_start > 0 && std::isalpha(static_cast<unsigned char>(lower[word_start - 1])))
            --word_start;
        if (word_start < back) {
            const std::string_view word = lower.substr(word_start, back - word_start);
            if (ordinal_index(word)) m.tag = std::string(word);
        }
        pos = m.end;
        mentions.push_back(std::move(m));
    }
    return mentions;
}

struct CompassHit {
    std::size_t pos = 0;
    std::size_t end = 0;
    CompassRegion region = CompassRegion::Center;
};

inline std::optional<CompassHit> find_compass(std::string_view lower,
                                              const std::vector<Mention>& mentions) {
    struct Entry {
        std::string_view phrase;
        CompassRegion region;
    };
    static constexpr std::array<Entry, 29> table = {{
        {"northeastern", CompassRegion::NE}, {"north-eastern", CompassRegion::NE},
        {"north eastern", CompassRegion::NE}, {"northeast", CompassRegion::NE},
        {"north-east", CompassRegion::NE}, {"north east", CompassRegion::NE},
        {"southeastern", CompassRegion::SE}, {"south-eastern", CompassRegion::SE},
        {"south eastern", CompassRegion::SE}, {"southeast", CompassRegion::SE},
        {"south-east", CompassRegion::SE}, {"south east", CompassRegion::SE},
        {"southwestern", CompassRegion::SW}, {"south-western", CompassRegion::SW},
        {"south western", CompassRegion::SW}, {"southwest", CompassRegion::SW},
        {"south-west", CompassRegion::SW}, {"south west", CompassRegion::SW},
        {"northwestern", CompassRegion::NW}, {"north-western", CompassRegion::NW},
        {"north western", CompassRegion::NW}, {"northwest", CompassRegion::NW},
        {"north-west", CompassRegion::NW}, {"north west", CompassRegion::NW},
        {"northern", CompassRegion::N}, {"southern", CompassRegion::S},
        {"eastern", CompassRegion::E}, {"western", CompassRegion::W},
        {"central", CompassRegion::Center},
    }};
    static constexpr std::array<Entry, 8> singles = {{
        {"north", CompassRegion::N}, {"south", CompassRegion::S},
        {"east", CompassRegion::E}, {"west", CompassRegion::W},
        {"center", CompassRegion::Center}, {"centre", CompassRegion::Center},
        {"middle", CompassRegion::Center},
        {"heart", CompassRegion::Center},
    }};

    auto relative_usage = [&](std::size_t end) {
        // "north of the kitchen" names a relative position, not a region
        std::size_t p = end;
        while (p < lower.size() && lower[p] == ' ') ++p;
        if (lower.compare(p, 3, "of ") != 0) return false;
        for (const Mention& m : mentions)
            if (m.pos > p && m.pos <= p + 12) return true;
        return false;
    };

    std::optional<CompassHit> best;
    auto consider = [&](std::string_view phrase, CompassRegion region) {
        std::size_t from = 0;
        while (true) {
            const std::size_t pos = lower.find(phrase, from);
            if (pos == std::string_view::npos) return;
            if (word_boundary(lower, pos, phrase.size()) && !relative_usage(pos + phrase.size())) {
                if (!best || pos < best->pos ||
                    (pos == best->pos && phrase.size() > best->end - best->pos)) {
                    best = CompassHit{pos, pos + phrase.size(), region};
                }
                return;
            }
            from = pos + 1;
        }
    };
    for (const Entry& e : table) consider(e.phrase, e.region);
    for (const Entry& e : singles) consider(e.phrase, e.region);
    return best;
}

struct RelationHit {
    std::size_t pos = 0;
    std::size_t end = 0;
    RelationKind kind = RelationKind::NextTo;
};

inline std::vector<RelationHit> find_relation_keywords(std::string_view lower) {
    struct Entry {
        std::string_view phrase;
        RelationKind kind;
    };
    static constexpr std::array<Entry, 11> table = {{
        {"next to", RelationKind::NextTo},
        {"adjacent to", RelationKind::NextTo},
        {"right beside", RelationKind::NextTo},
        {"beside", RelationKind::NextTo},
        {"between", RelationKind::Between},
        {"opposite to", RelationKind::Opposite},
        {"opposite from", RelationKind::Opposite},
        {"across from", RelationKind::Opposite},
        {"opposite", RelationKind::Opposite},
        {"inside", RelationKind::Inside},
        {"within", RelationKind::Inside},
    }};
    std::vector<RelationHit> hits;
    for (const Entry& e : table) {
        std::size_t from = 0;
        while (true) {
            const std::size_t pos = lower.find(e.phrase, from);
            if (pos == std::string_view::npos) break;
            if (word_boundary(lower, pos, e.phrase.size())) {
                bool covered = false;
                for (const RelationHit& h : hits)
                    if (pos >= h.pos && pos < h.end) covered = true;
                if (!covered) hits.push_back({pos, pos + e.phrase.size(), e.kind});
            }
            from = pos + 1;
        }
    }
    std::sort(hits.begin(), hits.end(),
              [](const RelationHit& a, const RelationHit& b) { return a.pos < b.pos; });
    return hits;
}

/// Sentence boundaries: '.', '!' or '?' followed by whitespace or end.
inline std::vector<std::pair<std::size_t, std::size_t>> split_sentences(std::string_view text) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const bool terminal = (c == '.' || c == '!' || c == '?') &&
                              (i + 1 == text.size() ||
                               std::isspace(static_cast<unsigned char>(text[i + 1])));
        if (!terminal) continue;
        std::size_t s = start;
        while (s <= i && std::isspace(static_cast<unsigned char>(text[s]))) ++s;
        if (s <= i) out.push_back({s, i + 1});
        start = i + 1;
    }
    std::size_t s = start;
    while (s < text.size() && std::isspace(static_cast<unsigned char>(text[s]))) ++s;
    if (s < text.size()) out.push_back({s, text.size()});
    return out;
}

struct NumberAttributes {
    std::optional<double> area, ratio, width, length;
};

inline NumberAttributes find_numbers(const std::string& lower) {
    static const std::regex area_re(
        R"(([0-9]+(?:\.[0-9]+)?)\s*(?:sqft|sq\.?\s*ft\.?|square\s+(?:feet|foot)))");
    static const std::regex area_of_re(
        R"(area\s+of\s+([0-9]+(?:\.[0-9]+)?))");
    static const std::regex ratio_re(R"(aspect\s+ratio\s+of\s+([0-9]+(?:\.[0-9]+)?))");
    static const std::regex width_re(
        R"(([0-9]+(?:\.[0-9]+)?)\s*(?:feet|foot|ft\.?)\s+(?:wide|in\s+width))");
    static const std::regex length_re(
        R"(([0-9]+(?:\.[0-9]+)?)\s*(?:feet|foot|ft\.?)\s+(?:long|in\s+length))");

    NumberAttributes attrs;
    std::smatch m;
    if (std::regex_search(lower, m, area_re) || std::regex_search(lower, m, area_of_re)) {
        const double v = std::stod(m[1]);
        if (v > 0) attrs.area = v;
    }
    if (std::regex_search(lower, m, ratio_re)) {
        const double v = std::stod(m[1]);
        if (v > 0) attrs.ratio = v;
    }
    if (std::regex_search(lower, m, width_re)) {
        const double v = std::stod(m[1]);
        if (v > 0) attrs.width = v;
    }
    if (std::regex_search(lower, m, length_re)) {
        const double v = std::stod(m[1]);
        if (v > 0) attrs.length = v;
    }
    return attrs;
}

inline bool has_coreference(std::string_view lower) {
    for (std::string_view lead : {"it ", "it's", "its ", "this room", "the room"}) {
        if (lower.substr(0, lead.size()) == lead) return true;
    }
    return false;
}

/// Decimal formatting with trailing zeros trimmed; widens precision until
/// a strictly positive value does not print as zero.
inline std::string format_number(double value, int decimals = 2) {
    char buf[64];
    for (; decimals <= 9; ++decimals) {
        std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
        if (value <= 0 || std::stod(buf) > 0) break;
    }
    std::string s = buf;
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

}  // namespace detail

struct ParseResult {
    std::vector<RoomConstraint> constraints;
    int skipped_sentences = 0;
    int total_sentences = 0;
};

/// Deterministic rule-based extraction: one constraint per distinct room
/// mention, attributes merged across sentences (first value wins),
/// unrecognized sentences skipped and counted.
inline ParseResult parse_report(std::string_view text) {
    ParseResult result;
    std::vector<RoomConstraint>& constraints = result.constraints;

    // untagged mentions of a type bind to its most recent constraint
    std::vector<int> recent_by_type(kRoomTypeCount, -1);
    auto get_or_create = [&](RoomType type, const std::string& tag) {
        if (tag.empty()) {
            const int recent = recent_by_type[static_cast<int>(type)];
            if (recent >= 0) return recent;
        } else {
            for (std::size_t i = 0; i < constraints.size(); ++i)
                if (constraints[i].room_type == type && constraints[i].instance_tag == tag)
                    return static_cast<int>(i);
        }
        RoomConstraint c;
        c.room_type = type;
        c.instance_tag = tag;
        constraints.push_back(std::move(c));
        const int idx = static_cast<int>(constraints.size()) - 1;
        recent_by_type[static_cast<int>(type)] = idx;
        return idx;
    };

    int last_subject = -1;
    for (auto [begin, end] : detail::split_sentences(text)) {
        ++result.total_sentences;
        const std::string lower = detail::lowercase(text.substr(begin, end - begin));
        const std::vector<detail::Mention> mentions = detail::find_room_mentions(lower);
        const std::vector<detail::RelationHit> rel_hits = detail::find_relation_keywords(lower);
        const std::size_t first_rel =
            rel_hits.empty() ? std::string_view::npos : rel_hits.front().pos;

        int subject = -1;
        if (!mentions.empty() && mentions.front().pos < first_rel) {
            subject = get_or_create(mentions.front().type, mentions.front().tag);
        } else if (detail::has_coreference(lower) && last_subject >= 0) {
            subject = last_subject;
        }
        if (subject < 0) {
            ++result.skipped_sentences;
            continue;
        }
        RoomConstraint& c = constraints[subject];
        recent_by_type[static_cast<int>(c.room_type)] = subject;
        last_subject = subject;

        if (!c.region) {
            if (auto hit = detail::find_compass(lower, mentions)) c.region = hit->region;
        }
        const detail::NumberAttributes nums = detail::find_numbers(lower);
        if (nums.area && !c.area_sqft) c.area_sqft = nums.area;
        if (nums.ratio && !c.aspect_ratio) c.aspect_ratio = nums.ratio;
        if (nums.width && !c.width_ft) c.width_ft = nums.width;
        if (nums.length && !c.length_ft) c.length_ft = nums.length;

        for (const detail::RelationHit& hit : rel_hits) {
            std::vector<RoomRef> targets;
            for (const detail::Mention& m : mentions) {
                if (m.pos < hit.end) continue;
                targets.push_back({m.type, m.tag});
                if (targets.size() == (hit.kind == RelationKind::Between ? 2u : 1u)) break;
            }
            if (targets.size() != (hit.kind == RelationKind::Between ? 2u : 1u)) continue;
            bool self = false;
            for (const RoomRef& ref : targets) {
                if (ref.type == c.room_type && ref.instance_tag == c.instance_tag) self = true;
            }
            if (self) continue;
            Relation rel{hit.kind, std::move(targets)};
            if (std::find(c.relations.begin(), c.relations.end(), rel) == c.relations.end())
                c.relations.push_back(std::move(rel));
        }
    }
    return result;
}

inline std::vector<RoomConstraint> parse(std::string_view text) {
    return parse_report(text).constraints;
}

namespace detail {

/// Room name phrase used in generated text: "kitchen", "second common room".
inline std::string room_phrase(RoomType type, const std::string& tag) {
    std::string out;
    if (!tag.empty()) {
        out += tag;
        out += ' ';
    }
    out += display_name(type);
    return out;
}

inline std::string capitalize(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

}  // namespace detail

/// Template-based instruction generation. Every room gets sentences for
/// all three components: type+location, area+aspect ratio, sides, and
/// one sentence per adjacent neighbor (up to two). Deterministic for a
/// fixed seed; the output parses back consistently with the plan.
inline std::string generate(const FloorPlan& plan, const ScaleConfig& scale, std::uint32_t seed) {
    if (plan.rooms.empty()) return "";
    if (plan.boundary.empty()) throw std::invalid_argument("generate: empty boundary mask");
    for (const Room& room : plan.rooms) {
        if (!footprint_in_grid(room.box))
            throw std::invalid_argument("generate: room footprint outside the grid");
    }
    const BoundarySpec bs = decompose(plan.boundary);
    const double fpp = scale.feet_per_pixel;

    // ordinal tags for duplicate types, in plan order
    std::array<int, kRoomTypeCount> type_count{};
    for (const Room& room : plan.rooms) ++type_count[static_cast<int>(room.type)];
    std::array<int, kRoomTypeCount> type_seen{};
    std::vector<std::string> tags(plan.rooms.size());
    for (std::size_t i = 0; i < plan.rooms.size(); ++i) {
        const int t = static_cast<int>(plan.rooms[i].type);
        if (type_count[t] > 1) tags[i] = std::string(detail::kOrdinals[type_seen[t]]);
        ++type_seen[t];
    }

    std::mt19937 rng(seed);
    auto pick = [&rng](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

    std::string doc;
    for (std::size_t i = 0; i < plan.rooms.size(); ++i) {
        const Room& room = plan.rooms[i];
        const std::string name = detail::room_phrase(room.type, tags[i]);
        const std::string cap_name = detail::capitalize(name);
        const CompassRegion region = region_of(room.box, bs);
        const bool center = region == CompassRegion::Center;
        const std::string dir(compass_word(region));
        const std::string area =
            detail::format_number(room.box.h * static_cast<double>(room.box.w) * fpp * fpp);
        const double longer = std::max(room.box.w, room.box.h);
        const double shorter = std::min(room.box.w, room.box.h);
        const std::string ratio = detail::format_number(longer / shorter);
        const std::string width = detail::format_number(room.box.w * fpp);
        const std::string length = detail::format_number(room.box.h * fpp);

        std::string line;
        switch (pick(3)) {
            case 0:
                line += center ? "The " + name + " is at the center of the house."
                               : "The " + name + " is on the " + dir + " side of the house.";
                break;
            case 1:
                line += center ? "The " + name + " sits in the central part of the floor plan."
                               : "The " + name + " sits in the " + dir + " part of the floor plan.";
                break;
            default:
                line += center ? "Place the " + name + " in the middle of the home."
                               : "Place the " + name + " in the " + dir + " area of the home.";
                break;
        }
        switch (pick(3)) {
            case 0:
                line += " The " + name + " is " + area + " sqft with an aspect ratio of " + ratio + ".";
                break;
            case 1:
                line += " The " + name + " covers " + area + " square feet with an aspect ratio of " +
                        ratio + ".";
                break;
            default:
                line += " The " + name + " has an area of " + area + " sqft and an aspect ratio of " +
                        ratio + ".";
                break;
        }
        switch (pick(3)) {
            case 0:
                line += " It is " + width + " feet wide and " + length + " feet long.";
                break;
            case 1:
                line += " The " + name + " measures " + width + " feet in width and " + length +
                        " feet in length.";
                break;
            default:
                line += " This room is " + length + " feet long and " + width + " feet wide.";
                break;
        }
        int emitted = 0;
        for (std::size_t j = 0; j < plan.rooms.size() && emitted < 2; ++j) {
            if (j == i || !adjacent(room.box, plan.rooms[j].box)) continue;
            const std::string other = detail::room_phrase(plan.rooms[j].type, tags[j]);
            switch (pick(3)) {
                case 0:
                    line += " The " + name + " is next to the " + other + ".";
                    break;
                case 1:
                    line += " It is adjacent to the " + other + ".";
                    break;
                default:
                    line += " You can find the " + name + " beside the " + other + ".";
                    break;
            }
            ++emitted;
        }
        if (!doc.empty()) doc += '\n';
        doc += line;
    }
    return doc;
}

/// Per-constraint room assignment: within each type, ordinal-tagged
/// constraints claim that room index (plan order) and untagged ones fill
/// the remaining rooms in order. Unmatchable constraints get nullopt.
inline std::vector<std::optional<std::size_t>> match_constraints(
    const std::vector<Room>& rooms, const std::vector<RoomConstraint>& constraints) {
    std::vector<std::optional<std::size_t>> match(constraints.size());
    std::vector<bool> claimed(rooms.size(), false);
    std::array<std::vector<std::size_t>, kRoomTypeCount> rooms_by_type;
    for (std::size_t r = 0; r < rooms.size(); ++r)
        rooms_by_type[static_cast<int>(rooms[r].type)].push_back(r);

    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const auto& of_type = rooms_by_type[static_cast<int>(constraints[i].room_type)];
        const auto ord = detail::ordinal_index(constraints[i].instance_tag);
        if (!constraints[i].instance_tag.empty() && ord) {
            const std::size_t k = static_cast<std::size_t>(*ord);
            if (k < of_type.size() && !claimed[of_type[k]]) {
                claimed[of_type[k]] = true;
                match[i] = of_type[k];
            }
            // a tag pointing past the available rooms stays unmatched
        }
    }
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        if (match[i]) continue;
        if (!constraints[i].instance_tag.empty() &&
            detail::ordinal_index(constraints[i].instance_tag))
            continue;
        for (std::size_t r : rooms_by_type[static_cast<int>(constraints[i].room_type)]) {
            if (claimed[r]) continue;
            claimed[r] = true;
            match[i] = r;
            break;
        }
    }
    return match;
}

namespace detail {

inline bool ratio_matches(const BBox& box, double spec_ratio, double tol) {
    // orientation-agnostic: both ratios normalized to their >= 1 form
    const double room = static_cast<double>(std::max(box.w, box.h)) / std::min(box.w, box.h);
    const double spec = std::max(spec_ratio, 1.0 / spec_ratio);
    return std::abs(room - spec) <= tol * spec;
}

inline bool opposite_boxes(const BBox& a, const BBox& b, int gap) {
    const Footprint fa = footprint(a), fb = footprint(b);
    const int overlap_x = std::min(fa.x1, fb.x1) - std::max(fa.x0, fb.x0) + 1;
    const int overlap_y = std::min(fa.y1, fb.y1) - std::max(fa.y0, fb.y0) + 1;
    return (overlap_x >= 1 && -overlap_y > gap) || (overlap_y >= 1 && -overlap_x > gap);
}

inline bool inside_box(const BBox& inner, const BBox& outer) {
    const Footprint fi = footprint(inner), fo = footprint(outer);
    return fi.x0 >= fo.x0 && fi.y0 >= fo.y0 && fi.x1 <= fo.x1 && fi.y1 <= fo.y1;
}

/// Resolves a room reference against the plan: ordinal tag selects the
/// k-th room of the type in plan order, otherwise the first room.
inline std::optional<std::size_t> resolve_ref(const std::vector<Room>& rooms, const RoomRef& ref) {
    std::size_t seen = 0;
    const std::size_t want =
        ref.instance_tag.empty() ? 0 : static_cast<std::size_t>(ordinal_index(ref.instance_tag).value_or(0));
    for (std::size_t r = 0; r < rooms.size(); ++r) {
        if (rooms[r].type != ref.type) continue;
        if (seen == want) return r;
        ++seen;
    }
    return std::nullopt;
}

}  // namespace detail

struct ConstraintVerdict {
    bool type_ok = false;
    std::optional<std::size_t> room_index;
    std::optional<bool> region_ok;
    std::optional<bool> size_ok;
    std::optional<bool> relations_ok;
};

/// Per-constraint verdicts plus the four aggregate satisfaction rates
/// (types, locations, sizes, relationships). A rate is absent when no
/// constraint specifies that component.
struct ConstraintReport {
    std::vector<ConstraintVerdict> verdicts;
    std::optional<double> type_rate;
    std::optional<double> region_rate;
    std::optional<double> size_rate;
    std::optional<double> relation_rate;
};

inline ConstraintReport check_constraints(const FloorPlan& plan,
                                          const std::vector<RoomConstraint>& constraints,
                                          const ScaleConfig& scale,
                                          const ToleranceConfig& tol = {}) {
    ConstraintReport report;
    if (constraints.empty()) return report;

    std::optional<Footprint> enclosing;
    if (!plan.boundary.empty()) {
        enclosing = footprint(decompose(plan.boundary).enclosing);
    } else if (!plan.rooms.empty()) {
        // fall back to the extent of the rooms themselves
        int x0 = kGridSize, y0 = kGridSize, x1 = -1, y1 = -1;
        for (const Room& room : plan.rooms) {
            const Footprint f = footprint(room.box);
            x0 = std::min(x0, std::max(0, f.x0));
            y0 = std::min(y0, std::max(0, f.y0));
            x1 = std::max(x1, std::min(kGridSize - 1, f.x1));
            y1 = std::max(y1, std::min(kGridSize - 1, f.y1));
        }
        if (x1 >= x0 && y1 >= y0) enclosing = Footprint{x0, y0, x1, y1};
    }

    const auto match = match_constraints(plan.rooms, constraints);
    const double fpp = scale.feet_per_pixel;
    int type_n = 0, type_sat = 0, region_n = 0, region_sat = 0, size_n = 0, size_sat = 0;
    int rel_n = 0, rel_sat = 0;

    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const RoomConstraint& c = constraints[i];
        ConstraintVerdict v;
        v.type_ok = match[i].has_value();
        v.room_index = match[i];
        ++type_n;
        if (v.type_ok) ++type_sat;
        const Room* room = match[i] ? &plan.rooms[*match[i]] : nullptr;

        if (c.region) {
            ++region_n;
            const bool ok = room && enclosing && region_of(room->box, *enclosing) == *c.region;
            v.region_ok = ok;
            if (ok) ++region_sat;
        }

        const std::optional<double> eff_area = effective_area_sqft(c);
        const std::optional<double> eff_ratio = effective_aspect_ratio(c);
        if (eff_area || eff_ratio) {
            ++size_n;
            bool ok = room != nullptr;
            if (room && eff_area) {
                const double actual = room->box.h * static_cast<double>(room->box.w) * fpp * fpp;
                ok = ok && std::abs(actual - *eff_area) <= tol.area_rel * *eff_area;
            }
            if (room && eff_ratio) ok = ok && detail::ratio_matches(room->box, *eff_ratio, tol.ratio_rel);
            v.size_ok = ok;
            if (ok) ++size_sat;
        }

        if (!c.relations.empty()) {
            bool all_ok = true;
            for (const Relation& rel : c.relations) {
                ++rel_n;
                bool ok = room != nullptr;
                std::vector<const Room*> targets;
                for (const RoomRef& ref : rel.targets) {
                    const auto t = detail::resolve_ref(plan.rooms, ref);
                    if (!t) ok = false;
                    else targets.push_back(&plan.rooms[*t]);
                }
                if (ok) {
                    switch (rel.kind) {
                        case RelationKind::NextTo:
                            ok = adjacent(room->box, targets[0]->box, tol.adjacency_gap);
                            break;
                        case RelationKind::Between:
                            ok = targets.size() == 2 &&
                                 adjacent(room->box, targets[0]->box, tol.adjacency_gap) &&
                                 adjacent(room->box, targets[1]->box, tol.adjacency_gap);
                            break;
                        case RelationKind::Opposite:
                            ok = detail::opposite_boxes(room->box, targets[0]->box, tol.adjacency_gap);
                            break;
                        case RelationKind::Inside:
                            ok = detail::inside_box(room->box, targets[0]->box);
                            break;
                    }
                }
                if (ok) ++rel_sat;
                all_ok = all_ok && ok;
            }
            v.relations_ok = all_ok;
        }
        report.verdicts.push_back(v);
    }

    report.type_rate = type_n ? std::optional(static_cast<double>(type_sat) / type_n) : std::nullopt;
    if (region_n) report.region_rate = static_cast<double>(region_sat) / region_n;
    if (size_n) report.size_rate = static_cast<double>(size_sat) / size_n;
    if (rel_n) report.relation_rate = static_cast<double>(rel_sat) / rel_n;
    return report;
}

}  // namespace fpkit
