#include "ocrect/tags_io.hpp"

#include <fstream>
#include <string>

#include <json.hpp>

namespace ocrect {

namespace {

std::string loc(const std::filesystem::path& path, long line) {
    return path.string() + ":" + std::to_string(line);
}

}  // namespace

std::vector<TagSet> read_tags(const std::filesystem::path& path, const LabelSpace& ls) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open tags file: " + path.string());
    }

    std::vector<TagSet> result;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(loc(path, line_no) + ": parse error: " + e.what());
        }
        if (!obj.is_object() || !obj.contains("id") || !obj.contains("tags")) {
            throw ValidationError(loc(path, line_no) + ": expected object with \"id\" and \"tags\"");
        }
        if (!obj["id"].is_string()) {
            throw ValidationError(loc(path, line_no) + ": \"id\" must be a string");
        }
        if (!obj["tags"].is_array()) {
            throw ValidationError(loc(path, line_no) + ": \"tags\" must be an array");
        }
        std::vector<int> tags;
        for (const auto& t : obj["tags"]) {
            if (!t.is_number_integer()) {
                throw ValidationError(loc(path, line_no) + ": tags must be integers");
            }
            tags.push_back(t.get<int>());
        }
        try {
            result.push_back(make_tag_set(obj["id"].get<std::string>(), std::move(tags), ls));
        } catch (const ValidationError& e) {
            throw ValidationError(loc(path, line_no) + ": " + e.what());
        }
    }
    return result;
}

void write_tags(const std::vector<TagSet>& tag_sets, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open tags file for writing: " + path.string());
    }
    for (const TagSet& ts : tag_sets) {
        nlohmann::ordered_json obj;
        obj["id"] = ts.image_id;
        obj["tags"] = ts.tags;
        out << obj.dump() << "\n";
    }
    if (!out) {
        throw ValidationError("write failed: " + path.string());
    }
}

}  // namespace ocrect
