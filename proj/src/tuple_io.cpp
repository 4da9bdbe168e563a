#include "latgal/tuple_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace latgal {

LoadedTuple parse_tuple_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw TupleParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("sets"))
        throw TupleParseError("tuple file needs an object with \"n\" and \"sets\"");
    if (!doc["n"].is_number_integer()) throw TupleParseError("\"n\" must be an integer");
    const int n = doc["n"].get<int>();
    if (n < 1 || n > 16) throw TupleParseError("\"n\" out of range");
    if (!doc["sets"].is_array() || doc["sets"].empty())
        throw TupleParseError("\"sets\" must be a nonempty array");

    LoadedTuple out;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw TupleParseError("\"name\" must be a string");
        out.name = doc["name"].get<std::string>();
    }
    std::vector<LatticeSet> sets;
    for (std::size_t i = 0; i < doc["sets"].size(); ++i) {
        const auto& raw = doc["sets"][i];
        if (!raw.is_array() || raw.empty())
            throw TupleParseError("each set must be a nonempty array of points");
        std::set<Point> seen;
        std::vector<Point> pts;
        for (const auto& rp : raw) {
            if (!rp.is_array() || rp.size() != static_cast<std::size_t>(n))
                throw TupleParseError("each point must have exactly n coordinates");
            Point p;
            for (const auto& c : rp) {
                if (!c.is_number_integer()) throw TupleParseError("coordinates must be integers");
                p.push_back(c.get<long long>());
            }
            if (!seen.insert(p).second) {
                std::ostringstream w;
                w << "set " << i << ": duplicate point dropped: [";
                for (std::size_t k = 0; k < p.size(); ++k)
                    w << (k ? "," : "") << p[k];
                w << "]";
                out.warnings.push_back(w.str());
                continue;
            }
            pts.push_back(std::move(p));
        }
        sets.emplace_back(n, std::move(pts));
    }
    out.tuple = LatticeTuple(n, std::move(sets));
    return out;
}

LoadedTuple load_tuple_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TupleParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tuple_json(buf.str());
}

std::string serialize_tuple(const LatticeTuple& t, const std::string& name) {
    nlohmann::ordered_json doc;
    doc["n"] = t.ambient_dim;
    if (!name.empty()) doc["name"] = name;
    doc["sets"] = nlohmann::ordered_json::array();
    for (const auto& s : t.sets) {
        nlohmann::ordered_json js = nlohmann::ordered_json::array();
        for (const auto& p : s.points) js.push_back(p);
        doc["sets"].push_back(js);
    }
    return doc.dump(2) + "\n";
}

}  // namespace latgal
