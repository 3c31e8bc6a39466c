#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "solis/core/label.hpp"
#include "solis/segmentation/bbox.hpp"

namespace solis {

// One labeled image with its chemistry metadata. `fold` is -1 until a fold
// assignment is applied or when the manifest carries none.
struct SampleRecord {
    std::string sample_id;
    std::string image_path;  // relative to the manifest root
    std::string solute;
    std::string solvent;
    SolubilityLabel label = SolubilityLabel::Undissolved;
    int fold = -1;
    std::optional<std::string> timestamp;
    std::optional<BoundingBox> gt_bbox;  // synthetic samples only
};

struct Manifest {
    std::filesystem::path root;  // directory containing manifest.jsonl
    std::vector<SampleRecord> records;
    std::vector<std::string> warnings;  // non-strict mode: missing image files

    std::filesystem::path image_file(const SampleRecord& r) const { return root / r.image_path; }
};

// Parses a JSON-Lines manifest. Validates id uniqueness (error names the
// offending id), label strings (error carries the line number), and that
// image paths resolve under the manifest root. Missing image files are
// collected as warnings, or raise when `strict`.
Manifest load_manifest(const std::filesystem::path& path, bool strict = false);

// One record per line, fields in schema order.
void save_manifest(const std::filesystem::path& path, const std::vector<SampleRecord>& records);

}  // namespace solis
