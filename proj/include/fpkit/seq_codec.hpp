#pragma once

// Token-sequence codec for floor plans and boundary outlines.
//
// Room grammar (single ASCII spaces, byte-exact):
//   "[" name "| x coordinate =" INT "| y coordinate =" INT
//       "| height =" INT "| width =" INT "]"
// A plan is its room blocks joined by single spaces, then " <eos>"
// (an empty plan is just "<eos>"). The room name is written in CamelCase;
// the decoder also accepts space-separated names, case-insensitively.
//
// Boundary grammar: "+ x y h w" for the enclosing box, then "- x y h w"
// per exterior box, space-separated decimal integers.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fpkit/boundary.hpp"
#include "fpkit/geometry.hpp"

namespace fpkit {

enum class DecodeIssueKind {
    TruncatedBlock,
    BadNumber,
    UnknownRoomType,
    MissingSeparator,
    ValueOutOfRange,
    MissingEos,
};

inline std::string_view to_string(DecodeIssueKind kind) {
    switch (kind) {
        case DecodeIssueKind::TruncatedBlock: return "truncated-block";
        case DecodeIssueKind::BadNumber: return "bad-number";
        case DecodeIssueKind::UnknownRoomType: return "unknown-room-type";
        case DecodeIssueKind::MissingSeparator: return "missing-separator";
        case DecodeIssueKind::ValueOutOfRange: return "value-out-of-range";
        case DecodeIssueKind::MissingEos: return "missing-eos";
    }
    return "unknown";
}

struct DecodeIssue {
    std::size_t position = 0;
    DecodeIssueKind kind = DecodeIssueKind::MissingSeparator;

    friend bool operator==(const DecodeIssue&, const DecodeIssue&) = default;
};

/// Rooms recovered from a sequence plus every deviation from the grammar.
/// issues is empty exactly when the input was strictly grammatical. The
/// recovered plan's boundary is empty and must be attached by the caller.
struct DecodeReport {
    FloorPlan plan;
    std::vector<DecodeIssue> issues;
};

enum class DecodeMode { Strict, Lenient };

class DecodeError : public std::runtime_error {
public:
    DecodeError(std::size_t position, DecodeIssueKind kind)
        : std::runtime_error("decode error at position " + std::to_string(position) + ": " +
                             std::string(to_string(kind))),
          position_(position),
          kind_(kind) {}

    std::size_t position() const { return position_; }
    DecodeIssueKind kind() const { return kind_; }

private:
    std::size_t position_;
    DecodeIssueKind kind_;
};

inline std::string encode_room(RoomType type, const BBox& box) {
    if (!token_representable(box)) {
        throw std::invalid_argument("encode_room: box values outside token range");
    }
    std::ostringstream out;
    out << "[ " << camel_name(type) << " | x coordinate = " << box.x << " | y coordinate = "
        << box.y << " | height = " << box.h << " | width = " << box.w << " ]";
    return out.str();
}

inline std::string encode_plan(const FloorPlan& plan) {
    std::string out;
    for (const Room& room : plan.rooms) {
        out += encode_room(room.type, room.box);
        out += ' ';
    }
    out += "<eos>";
    return out;
}

namespace detail {

inline constexpr std::string_view kEosToken = "<eos>";
inline constexpr std::string_view kFieldKeys[4] = {"x coordinate", "y coordinate", "height",
                                                   "width"};

inline bool ieq(char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
}

// Case-insensitive keyword match where any run of blanks in the text may
// stand for a single space in the keyword.
inline bool match_keyword(std::string_view text, std::size_t& pos, std::string_view keyword) {
    std::size_t p = pos;
    for (std::size_t k = 0; k < keyword.size(); ++k) {
        if (keyword[k] == ' ') {
            if (p >= text.size() || (text[p] != ' ' && text[p] != '\t')) return false;
            while (p < text.size() && (text[p] == ' ' || text[p] == '\t')) ++p;
        } else {
            if (p >= text.size() || !ieq(text[p], keyword[k])) return false;
            ++p;
        }
    }
    pos = p;
    return true;
}

inline void skip_blanks(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
}

struct BlockParse {
    std::optional<Room> room;
    std::optional<DecodeIssue> issue;   // first fatal deviation, if any
    std::size_t end = 0;                // position after the block (or after the error)
    bool canonical = false;             // source bytes match the strict surface form
};

// Parses one room block starting at text[start] == '['. Whitespace is
// flexible and keys are case-insensitive; canonical records whether the
// source was byte-exact strict grammar (with either accepted name form).
inline BlockParse parse_block(std::string_view text, std::size_t start) {
    BlockParse out;
    std::size_t pos = start + 1;
    auto fail = [&](std::size_t at, DecodeIssueKind kind) {
        out.issue = DecodeIssue{at, kind};
        out.end = pos;
        return out;
    };

    skip_blanks(text, pos);
    const std::size_t name_start = pos;
    std::size_t bar = text.find_first_of("|]", pos);
    if (bar == std::string_view::npos) return fail(start, DecodeIssueKind::TruncatedBlock);
    if (text[bar] == ']') return fail(bar, DecodeIssueKind::MissingSeparator);
    std::size_t name_end = bar;
    while (name_end > name_start && std::isspace(static_cast<unsigned char>(text[name_end - 1])))
        --name_end;
    const std::string_view name = text.substr(name_start, name_end - name_start);
    const std::optional<RoomType> type = room_type_from_name(name);
    if (name.empty() || !type) return fail(name_start, DecodeIssueKind::UnknownRoomType);
    pos = bar;

    int values[4] = {0, 0, 0, 0};
    std::size_t value_pos[4] = {0, 0, 0, 0};
    for (int field = 0; field < 4; ++field) {
        if (pos >= text.size()) return fail(start, DecodeIssueKind::TruncatedBlock);
        if (text[pos] != '|') return fail(pos, DecodeIssueKind::MissingSeparator);
        ++pos;
        skip_blanks(text, pos);
        if (pos >= text.size()) return fail(start, DecodeIssueKind::TruncatedBlock);
        if (!match_keyword(text, pos, kFieldKeys[field])) {
            // distinguish "ran out of input" from "different key"
            return text.size() - pos < kFieldKeys[field].size()
                       ? fail(start, DecodeIssueKind::TruncatedBlock)
                       : fail(pos, DecodeIssueKind::MissingSeparator);
        }
        skip_blanks(text, pos);
        if (pos >= text.size()) return fail(start, DecodeIssueKind::TruncatedBlock);
        if (text[pos] != '=') return fail(pos, DecodeIssueKind::MissingSeparator);
        ++pos;
        skip_blanks(text, pos);
        if (pos >= text.size()) return fail(start, DecodeIssueKind::TruncatedBlock);
        value_pos[field] = pos;
        std::size_t digits_end = pos;
        while (digits_end < text.size() && std::isdigit(static_cast<unsigned char>(text[digits_end])))
            ++digits_end;
        if (digits_end == pos) return fail(pos, DecodeIssueKind::BadNumber);
        if (digits_end - pos > 6) return fail(pos, DecodeIssueKind::ValueOutOfRange);
        int value = 0;
        std::from_chars(text.data() + pos, text.data() + digits_end, value);
        values[field] = value;
        pos = digits_end;
        skip_blanks(text, pos);
    }
    if (pos >= text.size()) return fail(start, DecodeIssueKind::TruncatedBlock);
    if (text[pos] != ']') return fail(pos, DecodeIssueKind::MissingSeparator);
    ++pos;

    // x,y must be single tokens in [0,255]; h,w in [1,255] (a zero extent
    // has no footprint, so it is rejected like an out-of-range token).
    for (int field = 0; field < 4; ++field) {
        const int lo = field < 2 ? 0 : 1;
        if (values[field] < lo || values[field] > 255)
            return fail(value_pos[field], DecodeIssueKind::ValueOutOfRange);
    }

    Room room;
    room.type = *type;
    room.box = BBox{values[0], values[1], values[2], values[3]};
    out.room = room;
    out.end = pos;

    std::ostringstream strict;
    strict << "[ " << name << " | x coordinate = " << values[0] << " | y coordinate = "
           << values[1] << " | height = " << values[2] << " | width = " << values[3] << " ]";
    out.canonical = text.substr(start, pos - start) == strict.str();
    return out;
}

}  // namespace detail

inline DecodeReport decode_plan(std::string_view text, DecodeMode mode) {
    DecodeReport report;
    std::vector<DecodeIssue>& issues = report.issues;
    auto raise = [&](std::size_t at, DecodeIssueKind kind) {
        if (mode == DecodeMode::Strict) throw DecodeError(at, kind);
        issues.push_back({at, kind});
    };

    constexpr std::size_t kNoGapCheck = std::string_view::npos;
    std::size_t pos = 0;
    std::size_t prev_end = 0;  // end of the previous token; npos after a resync
    bool eos = false;
    while (pos < text.size()) {
        const std::size_t token_start = text.find_first_not_of(' ', pos);
        if (token_start == std::string_view::npos) {
            raise(pos, DecodeIssueKind::MissingSeparator);  // trailing blanks
            pos = text.size();
            break;
        }
        // between tokens the strict grammar allows exactly one space
        const bool gap_ok = prev_end == kNoGapCheck ||
                            (prev_end == 0 ? token_start == 0 : token_start == prev_end + 1);

        if (text[token_start] == '[') {
            if (!gap_ok) raise(prev_end, DecodeIssueKind::MissingSeparator);
            detail::BlockParse block = detail::parse_block(text, token_start);
            if (block.room) {
                if (!block.canonical) raise(token_start, DecodeIssueKind::MissingSeparator);
                report.plan.rooms.push_back(*block.room);
                prev_end = block.end;
                pos = block.end;
            } else {
                raise(block.issue->position, block.issue->kind);
                // resynchronize at the next '[' after the failure point
                const std::size_t next = text.find('[', std::max(block.end, token_start + 1));
                pos = (next == std::string_view::npos) ? text.size() : next;
                prev_end = kNoGapCheck;
            }
        } else if (text.substr(token_start, detail::kEosToken.size()) == detail::kEosToken) {
            if (!gap_ok) raise(prev_end, DecodeIssueKind::MissingSeparator);
            eos = true;
            const std::size_t after = token_start + detail::kEosToken.size();
            if (after != text.size()) raise(after, DecodeIssueKind::MissingSeparator);
            pos = text.size();
        } else {
            raise(token_start, DecodeIssueKind::MissingSeparator);
            std::size_t next = text.find('[', token_start + 1);
            const std::size_t next_eos = text.find(detail::kEosToken, token_start + 1);
            next = std::min(next, next_eos);
            pos = (next == std::string_view::npos) ? text.size() : next;
            prev_end = kNoGapCheck;
        }
        if (eos) break;
    }
    if (!eos) raise(text.size(), DecodeIssueKind::MissingEos);
    return report;
}

inline std::string encode_boundary(const BoundarySpec& spec) {
    std::ostringstream out;
    out << "+ " << spec.enclosing.x << ' ' << spec.enclosing.y << ' ' << spec.enclosing.h << ' '
        << spec.enclosing.w;
    for (const BBox& box : spec.exterior) {
        out << " - " << box.x << ' ' << box.y << ' ' << box.h << ' ' << box.w;
    }
    return out.str();
}

inline BoundarySpec decode_boundary(std::string_view text) {
    std::vector<std::string> tokens;
    {
        std::istringstream in{std::string(text)};
        std::string tok;
        while (in >> tok) tokens.push_back(tok);
    }
    if (tokens.empty() || tokens[0] != "+") {
        throw std::invalid_argument("decode_boundary: missing \"+\" group");
    }
    auto parse_group = [&](std::size_t start) {
        int v[4];
        for (int k = 0; k < 4; ++k) {
            if (start + k >= tokens.size() || tokens[start + k] == "+" || tokens[start + k] == "-") {
                throw std::invalid_argument("decode_boundary: group not of length 4");
            }
            const std::string& tok = tokens[start + k];
            int value = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (ec != std::errc() || ptr != tok.data() + tok.size()) {
                throw std::invalid_argument("decode_boundary: non-integer token \"" + tok + "\"");
            }
            v[k] = value;
        }
        return BBox{v[0], v[1], v[2], v[3]};
    };

    BoundarySpec spec;
    spec.enclosing = parse_group(1);
    std::size_t pos = 5;
    while (pos < tokens.size()) {
        if (tokens[pos] != "-") {
            throw std::invalid_argument("decode_boundary: expected \"-\" before exterior group");
        }
        spec.exterior.push_back(parse_group(pos + 1));
        pos += 5;
    }
    return spec;
}

inline std::string build_model_input(std::string_view instructions, const BoundarySpec& spec) {
    std::string out(instructions);
    if (!out.empty()) out += ' ';
    out += encode_boundary(spec);
    return out;
}

}  // namespace fpkit
