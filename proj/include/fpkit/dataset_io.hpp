#pragma once

// Corpus persistence and statistics. Native format: one JSON-lines file
// (one record per line, boundary stored as the "+/-" box-sequence text)
// plus an optional directory of 256x256 label-map PNGs. When a record has
// no boundary field its mask is derived from the label map (interior =
// any nonbackground pixel); when both are present the PNG is only used to
// cross-check the JSON boxes.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpkit/geometry.hpp"
#include "fpkit/instruction.hpp"
#include "fpkit/png_io.hpp"
#include "fpkit/serialization.hpp"

namespace fpkit {

enum class Split { Warmup, Train, Test };

inline std::string_view to_string(Split s) {
    switch (s) {
        case Split::Warmup: return "warmup";
        case Split::Train: return "train";
        case Split::Test: return "test";
    }
    return "?";
}

inline std::optional<Split> split_from_name(std::string_view name) {
    for (Split s : {Split::Warmup, Split::Train, Split::Test})
        if (name == to_string(s)) return s;
    return std::nullopt;
}

struct PlanRecord {
    std::string id;
    BoundaryMask boundary;
    std::vector<Room> rooms;
    std::optional<std::string> human_instruction;
    std::optional<std::string> artificial_instruction;
    Split split = Split::Train;

    friend bool operator==(const PlanRecord&, const PlanRecord&) = default;
};

class LoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Json record_to_json(const PlanRecord& record) {
    Json j = Json::object();
    j["id"] = record.id;
    j["split"] = to_string(record.split);
    if (!record.boundary.empty()) j["boundary"] = encode_boundary(decompose(record.boundary));
    Json rooms = Json::array();
    for (const Room& room : record.rooms) rooms.push_back(room_to_json(room));
    j["rooms"] = std::move(rooms);
    if (record.human_instruction) j["human_instruction"] = *record.human_instruction;
    if (record.artificial_instruction) j["artificial_instruction"] = *record.artificial_instruction;
    return j;
}

inline PlanRecord record_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("record must be a JSON object");
    PlanRecord record;
    if (!j.contains("id") || !j.at("id").is_string())
        throw std::invalid_argument("record requires a string \"id\"");
    record.id = j.at("id").get<std::string>();
    if (j.contains("split")) {
        const auto split = split_from_name(j.at("split").get<std::string>());
        if (!split) throw std::invalid_argument("split must be warmup, train or test");
        record.split = *split;
    }
    if (j.contains("boundary") && !j.at("boundary").is_null()) {
        record.boundary = reconstruct(decode_boundary(j.at("boundary").get<std::string>()),
                                      ReconstructMode::Lenient);
    }
    if (!j.contains("rooms") || !j.at("rooms").is_array())
        throw std::invalid_argument("record requires a \"rooms\" array");
    for (const Json& room : j.at("rooms")) record.rooms.push_back(room_from_json(room));
    if (j.contains("human_instruction") && !j.at("human_instruction").is_null())
        record.human_instruction = j.at("human_instruction").get<std::string>();
    if (j.contains("artificial_instruction") && !j.at("artificial_instruction").is_null())
        record.artificial_instruction = j.at("artificial_instruction").get<std::string>();
    return record;
}

inline void save_corpus(const std::vector<PlanRecord>& records,
                        const std::filesystem::path& annotations_path) {
    std::ofstream out(annotations_path);
    if (!out) throw std::runtime_error("save_corpus: cannot write " + annotations_path.string());
    for (const PlanRecord& record : records) out << record_to_json(record).dump() << '\n';
}

namespace detail {

/// 4-connected components of one label; returns their bounding footprints
/// ordered by (top row, left column).
inline std::vector<Footprint> label_components(const RasterGrid& grid, int label) {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(grid.rows()) * grid.cols(), 0);
    auto idx = [&](int r, int c) { return static_cast<std::size_t>(r) * grid.cols() + c; };
    std::vector<Footprint> components;
    std::vector<std::pair<int, int>> stack;
    for (int r0 = 0; r0 < grid.rows(); ++r0) {
        for (int c0 = 0; c0 < grid.cols(); ++c0) {
            if (grid.at(r0, c0) != label || seen[idx(r0, c0)]) continue;
            Footprint f{c0, r0, c0, r0};
            stack.push_back({r0, c0});
            seen[idx(r0, c0)] = 1;
            while (!stack.empty()) {
                auto [r, c] = stack.back();
                stack.pop_back();
                f.x0 = std::min(f.x0, c);
                f.x1 = std::max(f.x1, c);
                f.y0 = std::min(f.y0, r);
                f.y1 = std::max(f.y1, r);
                const int dr[4] = {1, -1, 0, 0}, dc[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int nr = r + dr[k], nc = c + dc[k];
                    if (nr < 0 || nc < 0 || nr >= grid.rows() || nc >= grid.cols()) continue;
                    if (grid.at(nr, nc) != label || seen[idx(nr, nc)]) continue;
                    seen[idx(nr, nc)] = 1;
                    stack.push_back({nr, nc});
                }
            }
            components.push_back(f);
        }
    }
    std::sort(components.begin(), components.end(), [](const Footprint& a, const Footprint& b) {
        return a.y0 != b.y0 ? a.y0 < b.y0 : a.x0 < b.x0;
    });
    return components;
}

inline void cross_check_boxes(const PlanRecord& record, const RasterGrid& raster,
                              std::vector<std::string>& warnings) {
    for (RoomType type : kAllRoomTypes) {
        std::vector<const Room*> of_type;
        for (const Room& room : record.rooms)
            if (room.type == type) of_type.push_back(&room);
        if (of_type.empty()) continue;
        const auto components = label_components(raster, label_index(type));
        if (components.size() != of_type.size()) {
            warnings.push_back("record " + record.id + ": " + std::string(camel_name(type)) +
                               " has " + std::to_string(of_type.size()) + " box(es) but " +
                               std::to_string(components.size()) + " label-map region(s)");
        }
        for (const Room* room : of_type) {
            const Footprint f = footprint(room->box);
            const Footprint* best = nullptr;
            long long best_overlap = -1;
            for (const Footprint& comp : components) {
                const long long w = std::min(f.x1, comp.x1) - std::max(f.x0, comp.x0) + 1;
                const long long h = std::min(f.y1, comp.y1) - std::max(f.y0, comp.y0) + 1;
                const long long overlap = w > 0 && h > 0 ? w * h : 0;
                if (overlap > best_overlap) {
                    best_overlap = overlap;
                    best = &comp;
                }
            }
            if (!best) continue;
            const int diff = std::max({std::abs(f.x0 - best->x0), std::abs(f.y0 - best->y0),
                                       std::abs(f.x1 - best->x1), std::abs(f.y1 - best->y1)});
            if (diff > 2) {
                warnings.push_back("record " + record.id + ": " + std::string(camel_name(type)) +
                                   " box disagrees with its label map by " + std::to_string(diff) +
                                   " px");
            }
        }
    }
}

inline BoundaryMask mask_from_raster(const RasterGrid& raster) {
    BoundaryMask mask;
    const int rows = std::min(raster.rows(), kGridSize);
    const int cols = std::min(raster.cols(), kGridSize);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (raster.at(r, c) != 0) mask.set(r, c, true);
    return mask;
}

}  // namespace detail

struct LoadResult {
    std::vector<PlanRecord> records;
    std::vector<std::string> warnings;
};

inline LoadResult load_corpus(const std::filesystem::path& annotations_path,
                              const std::filesystem::path& images_dir = {},
                              const Palette& palette = default_palette()) {
    std::ifstream in(annotations_path);
    if (!in) throw LoadError("load_corpus: cannot open " + annotations_path.string());

    LoadResult result;
    std::set<std::string> ids;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        PlanRecord record;
        try {
            record = record_from_json(Json::parse(line));
        } catch (const std::exception& e) {
            throw LoadError("load_corpus: line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!ids.insert(record.id).second) {
            throw LoadError("load_corpus: duplicate record id \"" + record.id + "\"");
        }
        if (record.rooms.empty()) {
            throw LoadError("load_corpus: record \"" + record.id + "\" has no rooms");
        }
        if (!images_dir.empty()) {
            const std::filesystem::path png = images_dir / (record.id + ".png");
            if (std::filesystem::exists(png)) {
                RasterGrid raster;
                try {
                    raster = raster_from_image(read_png(png), palette);
                } catch (const std::exception& e) {
                    throw LoadError("load_corpus: record \"" + record.id + "\": " + e.what());
                }
                if (record.boundary.empty()) {
                    record.boundary = detail::mask_from_raster(raster);
                }
                detail::cross_check_boxes(record, raster, result.warnings);
            }
        }
        if (record.boundary.empty()) {
            throw LoadError("load_corpus: record \"" + record.id +
                            "\" has neither a boundary field nor a label map");
        }
        result.records.push_back(std::move(record));
    }
    return result;
}

/// Converts an upstream release (label-map PNGs in an arbitrary palette,
/// optional JSONL with instructions/splits/boxes keyed by id) into native
/// records. Boxes are taken from the annotations when given, otherwise
/// extracted as per-label connected components; footprints spanning the
/// full 256 pixels are shrunk by one pixel on the far edge with a warning.
inline LoadResult import_corpus(const std::filesystem::path& images_dir, const Palette& palette,
                                const std::filesystem::path& annotations_path = {},
                                Split default_split = Split::Train) {
    std::map<std::string, Json> extra;
    if (!annotations_path.empty()) {
        std::ifstream in(annotations_path);
        if (!in) throw LoadError("import_corpus: cannot open " + annotations_path.string());
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            Json j;
            try {
                j = Json::parse(line);
            } catch (const std::exception& e) {
                throw LoadError("import_corpus: annotations line " + std::to_string(line_no) + ": " +
                                e.what());
            }
            if (!j.is_object() || !j.contains("id"))
                throw LoadError("import_corpus: annotations line " + std::to_string(line_no) +
                                " lacks an id");
            extra[j.at("id").get<std::string>()] = std::move(j);
        }
    }

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(images_dir)) {
        if (entry.path().extension() == ".png") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    LoadResult result;
    for (const auto& file : files) {
        const std::string id = file.stem().string();
        PlanRecord record;
        record.id = id;
        record.split = default_split;
        RasterGrid raster;
        try {
            raster = raster_from_image(read_png(file), palette);
        } catch (const std::exception& e) {
            throw LoadError("import_corpus: record \"" + id + "\": " + e.what());
        }
        record.boundary = detail::mask_from_raster(raster);

        const auto it = extra.find(id);
        if (it != extra.end() && it->second.contains("rooms")) {
            for (const Json& room : it->second.at("rooms"))
                record.rooms.push_back(room_from_json(room));
        } else {
            for (RoomType type : kAllRoomTypes) {
                for (Footprint f : detail::label_components(raster, label_index(type))) {
                    if (f.width() > 255) {
                        --f.x1;
                        result.warnings.push_back("record " + id +
                                                  ": full-width box shrunk by one pixel");
                    }
                    if (f.height() > 255) {
                        --f.y1;
                        result.warnings.push_back("record " + id +
                                                  ": full-height box shrunk by one pixel");
                    }
                    record.rooms.push_back({type, bbox_from_footprint(f)});
                }
            }
        }
        if (it != extra.end()) {
            const Json& j = it->second;
            if (j.contains("human_instruction") && !j.at("human_instruction").is_null())
                record.human_instruction = j.at("human_instruction").get<std::string>();
            if (j.contains("artificial_instruction") && !j.at("artificial_instruction").is_null())
                record.artificial_instruction = j.at("artificial_instruction").get<std::string>();
            if (j.contains("split")) {
                const auto split = split_from_name(j.at("split").get<std::string>());
                if (!split) throw LoadError("import_corpus: record \"" + id + "\": bad split");
                record.split = *split;
            }
        }
        result.records.push_back(std::move(record));
    }
    return result;
}

struct DocumentStats {
    long long documents = 0;
    double avg_words_per_instance = 0.0;
    double avg_sentences_per_instance = 0.0;
    double avg_words_per_room = 0.0;
    double avg_sentences_per_room = 0.0;
};

struct CorpusStats {
    std::map<RoomType, long long> per_type_counts;
    std::map<int, long long> room_count_histogram;
    DocumentStats human;
    DocumentStats artificial;
};

namespace detail {

inline long long count_words(std::string_view text) {
    long long words = 0;
    bool in_word = false;
    for (char c : text) {
        const bool space = std::isspace(static_cast<unsigned char>(c));
        if (!space && !in_word) ++words;
        in_word = !space;
    }
    return words;
}

struct DocAccumulator {
    long long documents = 0;
    long long words = 0;
    long long sentences = 0;
    long long attributed_words = 0;
    long long attributed_sentences = 0;
    long long rooms = 0;

    // Sections (newline-separated blocks) attribute their sentences to the
    // block's first mentioned room; single-block documents attribute each
    // sentence by its own first mention.
    void add(const std::string& doc, std::size_t room_count) {
        ++documents;
        rooms += static_cast<long long>(room_count);
        words += count_words(doc);
        std::vector<std::pair<std::size_t, std::size_t>> blocks;
        std::size_t start = 0;
        while (start <= doc.size()) {
            std::size_t end = doc.find('\n', start);
            if (end == std::string::npos) end = doc.size();
            if (end > start) blocks.push_back({start, end});
            start = end + 1;
        }
        const bool sectioned = blocks.size() > 1;
        for (auto [b, e] : blocks) {
            const std::string_view block(doc.data() + b, e - b);
            const auto sents = split_sentences(block);
            sentences += static_cast<long long>(sents.size());
            bool block_attributed = false;
            if (sectioned) {
                block_attributed = !find_room_mentions(lowercase(block)).empty();
            }
            for (auto [sb, se] : sents) {
                const std::string_view sent = block.substr(sb, se - sb);
                const bool attributed =
                    sectioned ? block_attributed : !find_room_mentions(lowercase(sent)).empty();
                if (attributed) {
                    ++attributed_sentences;
                    attributed_words += count_words(sent);
                }
            }
        }
    }

    DocumentStats finish() const {
        DocumentStats stats;
        stats.documents = documents;
        if (documents > 0) {
            stats.avg_words_per_instance = static_cast<double>(words) / documents;
            stats.avg_sentences_per_instance = static_cast<double>(sentences) / documents;
        }
        if (rooms > 0) {
            stats.avg_words_per_room = static_cast<double>(attributed_words) / rooms;
            stats.avg_sentences_per_room = static_cast<double>(attributed_sentences) / rooms;
        }
        return stats;
    }
};

}  // namespace detail

inline CorpusStats compute_stats(const std::vector<PlanRecord>& records) {
    CorpusStats stats;
    for (RoomType t : kAllRoomTypes) stats.per_type_counts[t] = 0;
    detail::DocAccumulator human, artificial;
    for (const PlanRecord& record : records) {
        for (const Room& room : record.rooms) ++stats.per_type_counts[room.type];
        ++stats.room_count_histogram[static_cast<int>(record.rooms.size())];
        if (record.human_instruction) human.add(*record.human_instruction, record.rooms.size());
        if (record.artificial_instruction)
            artificial.add(*record.artificial_instruction, record.rooms.size());
    }
    stats.human = human.finish();
    stats.artificial = artificial.finish();
    return stats;
}

inline Json stats_to_json(const CorpusStats& stats) {
    Json per_type = Json::object();
    for (const auto& [type, count] : stats.per_type_counts)
        per_type[std::string(camel_name(type))] = count;
    Json histogram = Json::object();
    for (const auto& [rooms, count] : stats.room_count_histogram)
        histogram[std::to_string(rooms)] = count;
    auto doc = [](const DocumentStats& d) {
        return Json{{"documents", d.documents},
                    {"avg_words_per_instance", d.avg_words_per_instance},
                    {"avg_sentences_per_instance", d.avg_sentences_per_instance},
                    {"avg_words_per_room", d.avg_words_per_room},
                    {"avg_sentences_per_room", d.avg_sentences_per_room}};
    };
    return Json{{"per_type_counts", std::move(per_type)},
                {"room_count_histogram", std::move(histogram)},
                {"human", doc(stats.human)},
                {"artificial", doc(stats.artificial)}};
}

}  // namespace fpkit
