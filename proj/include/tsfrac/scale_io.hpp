#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsfrac/errors.hpp"
#include "tsfrac/timescale.hpp"

namespace tsfrac {

/// Time-scale file format:
///   {"segments": [{"type": "interval", "lo": 0.0, "hi": 1.0},
///                 {"type": "point", "t": 2.0}]}
/// Segment order does not matter; the result is canonicalized.
inline TimeScale parse_scale_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scale file: ") + e.what(), e.byte);
    }
    if (!doc.is_object() || !doc.contains("segments") || !doc["segments"].is_array())
        throw InvalidSegment("scale file needs a top-level \"segments\" array");

    std::vector<Segment> raw;
    for (const auto& item : doc["segments"]) {
        if (!item.is_object() || !item.contains("type") || !item["type"].is_string())
            throw InvalidSegment("each segment needs a string \"type\"");
        const std::string type = item["type"].get<std::string>();
        try {
            if (type == "interval") {
                if (!item.contains("lo") || !item.contains("hi") ||
                    !item["lo"].is_number() || !item["hi"].is_number())
                    throw InvalidSegment("interval segment needs numeric \"lo\" and \"hi\"");
                raw.push_back(Segment::interval(item["lo"].get<double>(),
                                                item["hi"].get<double>()));
            } else if (type == "point") {
                if (!item.contains("t") || !item["t"].is_number())
                    throw InvalidSegment("point segment needs a numeric \"t\"");
                raw.push_back(Segment::point(item["t"].get<double>()));
            } else {
                throw InvalidSegment("unknown segment type '" + type + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw InvalidSegment(std::string("bad segment: ") + e.what());
        }
    }
    return TimeScale(std::move(raw));
}

inline TimeScale load_scale(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scale file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scale_json(buf.str());
}

}  // namespace tsfrac
