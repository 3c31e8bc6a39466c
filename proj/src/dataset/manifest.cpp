#include "solis/dataset/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "solis/util/errors.hpp"

namespace solis {

using nlohmann::ordered_json;

namespace {

BoundingBox bbox_from_json(const ordered_json& j) {
    if (!j.is_array() || j.size() != 4)
        throw ConfigError("gt_bbox must be [x_min, y_min, x_max, y_max]");
    BoundingBox b{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
    if (!b.well_formed()) throw ConfigError("gt_bbox is not a well-formed box");
    return b;
}

bool resolves_under(const std::filesystem::path& root, const std::filesystem::path& rel) {
    if (rel.is_absolute()) return false;
    const auto joined = (root / rel).lexically_normal();
    const auto base = root.lexically_normal();
    const auto mismatch = std::mismatch(base.begin(), base.end(), joined.begin(), joined.end());
    return mismatch.first == base.end();
}

}  // namespace

Manifest load_manifest(const std::filesystem::path& path, bool strict) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path.string());

    Manifest m;
    m.root = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

    std::unordered_set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const ordered_json::parse_error& e) {
            throw ConfigError("manifest line " + std::to_string(line_no) +
                              ": invalid JSON: " + e.what());
        }
        SampleRecord r;
        try {
            r.sample_id = j.at("sample_id").get<std::string>();
            r.image_path = j.at("image_path").get<std::string>();
            r.solute = j.value("solute", std::string{});
            r.solvent = j.value("solvent", std::string{});
            r.label = label_from_string(j.at("label").get<std::string>());
            if (j.contains("fold")) r.fold = j["fold"].get<int>();
            if (j.contains("timestamp")) r.timestamp = j["timestamp"].get<std::string>();
            if (j.contains("gt_bbox")) r.gt_bbox = bbox_from_json(j["gt_bbox"]);
        } catch (const ConfigError& e) {
            throw ConfigError("manifest line " + std::to_string(line_no) + ": " + e.what());
        } catch (const ordered_json::exception& e) {
            throw ConfigError("manifest line " + std::to_string(line_no) +
                              ": missing or malformed field: " + e.what());
        }
        if (!seen.insert(r.sample_id).second)
            throw ConfigError("duplicate sample_id \"" + r.sample_id + "\" in manifest (line " +
                              std::to_string(line_no) + ")");
        if (!resolves_under(m.root, r.image_path))
            throw ConfigError("manifest line " + std::to_string(line_no) + ": image_path \"" +
                              r.image_path + "\" does not resolve under the manifest root");
        m.records.push_back(std::move(r));
    }

    for (const auto& r : m.records) {
        if (!std::filesystem::exists(m.image_file(r))) {
            const std::string msg = "missing image file for sample \"" + r.sample_id + "\": " +
                                    m.image_file(r).string();
            if (strict) throw ConfigError(msg);
            m.warnings.push_back(msg);
        }
    }
    return m;
}

void save_manifest(const std::filesystem::path& path, const std::vector<SampleRecord>& records) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write manifest: " + path.string());
    for (const auto& r : records) {
        ordered_json j;
        j["sample_id"] = r.sample_id;
        j["image_path"] = r.image_path;
        j["solute"] = r.solute;
        j["solvent"] = r.solvent;
        j["label"] = to_string(r.label);
        if (r.fold >= 0) j["fold"] = r.fold;
        if (r.timestamp) j["timestamp"] = *r.timestamp;
        if (r.gt_bbox)
            j["gt_bbox"] = {r.gt_bbox->x_min, r.gt_bbox->y_min, r.gt_bbox->x_max,
                            r.gt_bbox->y_max};
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace solis
